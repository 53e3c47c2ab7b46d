"""Moment maps, fold conics, tangent lines and lattice identifications.

The moment coordinates are Hamiltonians of the torus generators
(d/dt1, d/dt2).  With tau_i the torus basis quadratics of the spec and
sigma_i the companion quadratics solving the cross-product equation
sigma_i x q = -tau_i (see ansatz.sigma_from_tau),

    mu_i^+ = -sigma_i(x, y) / q(x, y)
    mu_i^- = -tau_i(x, y) / (x - y)

which reproduces the classical displayed formulas in all three canonical
gauges.  Pairings of quadratics p _|_ q with the moment maps are realized
by per-sign coordinate vectors `identify_t(spec, p, sign)`; the two signs
differ by a reflection of the second basis direction, which is why a
single global convention (the '+' one, fixed by identify_t(1) = (1, 0) in
the hyperbolic gauge) is used for reporting while lattice-membership tests
record both the vector and its negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, hypot
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .quadratics import OO, ProjPoint, Quadratic, inner, rat
from .ansatz import (
    AnsatzSpec,
    Interval,
    LatticeMatrix,
    _solve_exact,
    lattice_contains,
)


class MomentError(ValueError):
    pass


@dataclass(frozen=True)
class MomentPoint:
    mu1: float
    mu2: float

    def as_tuple(self):
        return (self.mu1, self.mu2)


# ---------------------------------------------------------------------------
# the maps
# ---------------------------------------------------------------------------

def moment_map(spec: AnsatzSpec, sign: str, x, y) -> MomentPoint:
    """mu^sign at (x, y); exact when x, y are Fractions."""
    exact = isinstance(x, Fraction) and isinstance(y, Fraction)
    if sign == "+":
        den = spec.q.polarize(x, y)
        if den == 0:
            raise MomentError("mu+ pole: q(x, y) = 0")
        basis = spec.sigma_basis()
    elif sign == "-":
        den = x - y
        if den == 0:
            raise MomentError("mu- pole: x - y = 0")
        basis = spec.tau_basis
    else:
        raise ValueError("sign must be '+' or '-'")
    vals = [-b.polarize(x, y) / den for b in basis]
    if exact:
        return MomentPoint(vals[0], vals[1])
    return MomentPoint(float(vals[0]), float(vals[1]))


def moment_pairing(spec: AnsatzSpec, sign: str, p: Quadratic, x, y):
    """<mu^sign(x,y), identify_t(p, sign)>; equals -p(x,y)/q(x,y) for '+'
    (up to an additive constant in the degenerate parabolic case) and
    -p(x,y)/(x-y) for '-'."""
    v = identify_t(spec, p, sign)
    mp = moment_map(spec, sign, x, y)
    return v[0] * mp.mu1 + v[1] * mp.mu2


def identify_t(spec: AnsatzSpec, p: Quadratic, sign: str = "+") -> Tuple[Fraction, Fraction]:
    """Coordinates of the q-orthogonal quadratic p in the torus basis.

    Solves p = v1 * b1 + v2 * b2 (+ lambda * q) exactly, with b = sigma for
    sign '+' and b = tau for sign '-'.  In the parabolic '+' case constants
    are invisible to mu+ (they shift Hamiltonians), so the solve is done
    modulo the coefficient slot carrying q."""
    if inner(p, spec.q) != 0:
        raise MomentError("p is not orthogonal to q")
    b1, b2 = spec.sigma_basis() if sign == "+" else spec.tau_basis
    target = p.coeffs()
    cols = [b1.coeffs(), b2.coeffs(), spec.q.coeffs()]
    rows = [([cols[0][i], cols[1][i], cols[2][i]], target[i]) for i in range(3)]
    sol = _solve_exact(rows, 3)
    if sol is not None:
        return (sol[0], sol[1])
    # q lies in the span of the basis: drop lambda
    rows2 = [([cols[0][i], cols[1][i]], target[i]) for i in range(3)]
    sol = _solve_exact(rows2, 2)
    if sol is not None:
        return (sol[0], sol[1])
    # solve modulo the slot where q is supported (additive-constant freedom)
    j0 = next(i for i, c in enumerate(spec.q.coeffs()) if c != 0)
    rows3 = [([cols[0][i], cols[1][i]], target[i]) for i in range(3) if i != j0]
    sol = _solve_exact(rows3, 2)
    if sol is None:
        raise MomentError("identification system inconsistent")
    return (sol[0], sol[1])


# ---------------------------------------------------------------------------
# conics and lines
# ---------------------------------------------------------------------------

Num = Union[Fraction, float]


def _primitive(vec: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Scale a rational vector to a primitive integer one, first nonzero > 0."""
    vec = [rat(v) for v in vec]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    first = next((v for v in ints if v != 0), 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


@dataclass(frozen=True)
class Conic:
    """Symmetric 3x3 coefficient matrix Q in homogeneous (mu1, mu2, 1);
    a point (m1, m2) lies on the conic iff v^T Q v = 0 for v = (m1, m2, 1).
    Degenerate images (a point pair) carry the explicit point list."""

    matrix: Optional[Tuple[Tuple[Fraction, ...], ...]]
    degenerate: bool = False
    points: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def evaluate(self, m1, m2):
        Q = self.matrix
        v = (m1, m2, 1)
        if isinstance(m1, float) or isinstance(m2, float):
            Qf = [[float(c) for c in row] for row in Q]
            return sum(Qf[i][j] * float(v[i]) * float(v[j])
                       for i in range(3) for j in range(3))
        return sum(Q[i][j] * v[i] * v[j] for i in range(3) for j in range(3))


@dataclass(frozen=True)
class TangencyCertificate:
    """Double-root certificate: the line substituted into the conic gives a
    quadratic with the recorded leading coefficient and discriminant."""

    leading: Fraction
    discriminant: Fraction

    @property
    def ok(self) -> bool:
        # leading 0 with zero discriminant means the double intersection
        # sits at infinity (the line is an asymptote of the conic)
        return abs(float(self.discriminant)) < 1e-10


@dataclass(frozen=True)
class LineInTstar:
    """Line {normal . mu = offset}; the normal is stored primitive-integer
    whenever the data is rational."""

    normal: Tuple[Fraction, Fraction]
    offset: Fraction
    tangency: Optional[TangencyCertificate] = None
    degenerate_point: Optional[Tuple[Fraction, Fraction]] = None


def _nullspace_exact(rows: List[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Exact right-nullspace basis of the matrix given by `rows`."""
    mat = [list(r) for r in rows]
    m = len(mat)
    piv_cols = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, m):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def _fold_locus_samples(spec: AnsatzSpec, sign: str, n: int = 16
                        ) -> List[Tuple[Fraction, Fraction]]:
    """Exact rational points on Z_sign: {x = y} for '+', {q(x,y) = 0} for '-'.
    Sampled over a wide parameter range, not restricted to the box."""
    pts = []
    if sign == "+":
        for k in range(1, 4 * n):
            t = Fraction(k, 3) - 2
            if t == 0:
                continue
            pts.append((t, t))
            if len(pts) >= n:
                break
        return pts
    q = spec.q
    for k in range(1, 8 * n):
        x = Fraction(k, 3) - 3
        den = q.c0 * x + q.c1
        if den == 0:
            continue
        y = -(q.c1 * x + q.c2) / den
        if x == y:
            continue
        pts.append((x, y))
        if len(pts) >= n:
            break
    return pts


def fold_conic(spec: AnsatzSpec, sign: str) -> Conic:
    """The conic through mu^sign(Z_sign), fitted exactly from rational fold
    samples; a fold at infinity (q with no finite zero locus, the canonical
    parabolic '-' case) yields the degenerate limit point pair."""
    if sign == "-" and spec.q.c0 == 0 and spec.q.c1 == 0:
        # q constant: the negative fold sits at x - y = oo; mu- limits are
        # read off the linear coefficients of the tau basis
        t1, t2 = spec.tau_basis
        p_plus = (-t1.c1, -t2.c1)    # x -> +oo
        p_minus = (t1.c1, t2.c1)     # x -> -oo
        return Conic(matrix=None, degenerate=True, points=(p_minus, p_plus))
    samples = _fold_locus_samples(spec, sign)
    rows = []
    mus = []
    for x, y in samples:
        try:
            mp = moment_map(spec, sign, x, y)
        except MomentError:
            continue
        m1, m2 = mp.mu1, mp.mu2
        mus.append((m1, m2))
        rows.append([m1 * m1, m1 * m2, m2 * m2, m1, m2, Fraction(1)])
    if len(rows) < 8:
        raise MomentError("not enough fold samples for a conic fit")
    ker = _nullspace_exact(rows, 6)
    if len(ker) == 0:
        raise MomentError("fold image does not lie on a conic")
    if len(ker) > 1:
        uniq = sorted(set(mus))
        return Conic(matrix=None, degenerate=True, points=tuple(uniq[:4]))
    a, b, c, d, e, f = _primitive(ker[0])
    Q = ((a, b / 2, d / 2), (b / 2, c, e / 2), (d / 2, e / 2, f))
    return Conic(matrix=Q)


def _level_set_mu_samples(spec: AnsatzSpec, sign: str, axis: str,
                          gamma: ProjPoint, n: int = 9):
    """Exact mu samples along {x = gamma} (axis X) or {y = gamma} (axis Y);
    gamma may be OO, in which case leading-coefficient limits are used."""
    other = spec.y_interval if axis == "X" else spec.x_interval
    basis = spec.sigma_basis() if sign == "+" else spec.tau_basis
    out = []
    for s in other.rat_samples(3 * n):
        if gamma is OO:
            # mu_i = -(leading x-coeff of basis_i)/(leading x-coeff of denom)
            if sign == "+":
                den = spec.q.c0 * s + spec.q.c1
            else:
                den = Fraction(1)
            if den == 0:
                continue
            vals = []
            for b in basis:
                num = b.c0 * s + b.c1
                vals.append(-num / den)
            out.append(tuple(vals))
        else:
            g = rat(gamma)
            x, y = (g, s) if axis == "X" else (s, g)
            try:
                mp = moment_map(spec, sign, x, y)
            except MomentError:
                continue
            out.append((mp.mu1, mp.mu2))
        if len(out) >= n:
            break
    return out


def _fit_line(mus) -> LineInTstar:
    rows = [[m1, m2, Fraction(1)] for m1, m2 in mus]
    ker = _nullspace_exact(rows, 3)
    if len(ker) == 0:
        raise MomentError("samples are not collinear")
    if len(ker) > 1:
        return LineInTstar(normal=(Fraction(0), Fraction(0)), offset=Fraction(0),
                           degenerate_point=mus[0])
    n1, n2, c = _primitive(ker[0])
    if n1 == 0 and n2 == 0:
        raise MomentError("degenerate line fit")
    return LineInTstar(normal=(n1, n2), offset=-c)


def _tangency(line: LineInTstar, conic: Conic) -> Optional[TangencyCertificate]:
    if conic.matrix is None or line.degenerate_point is not None:
        return None
    n1, n2 = line.normal
    c = line.offset
    # a point on the line and its direction
    if n1 != 0:
        p0 = (c / n1, Fraction(0))
    else:
        p0 = (Fraction(0), c / n2)
    d = (-n2, n1)
    Q = conic.matrix

    def qform(u, v):
        return sum(Q[i][j] * u[i] * v[j] for i in range(3) for j in range(3))

    P = (p0[0], p0[1], Fraction(1))
    D = (d[0], d[1], Fraction(0))
    a = qform(D, D)
    b = 2 * qform(P, D)
    cc = qform(P, P)
    return TangencyCertificate(leading=a, discriminant=b * b - 4 * a * cc)


def level_set_line(spec: AnsatzSpec, sign: str, axis: str,
                   gamma: ProjPoint) -> LineInTstar:
    """Image line of the level set {axis = gamma} with tangency certificate
    against the fold conic (None when either object is degenerate)."""
    mus = _level_set_mu_samples(spec, sign, axis, gamma)
    if len(mus) < 3:
        raise MomentError("not enough level-set samples")
    line = _fit_line(mus)
    if line.degenerate_point is not None:
        return line
    conic = fold_conic(spec, sign)
    cert = _tangency(line, conic)
    return LineInTstar(normal=line.normal, offset=line.offset, tangency=cert)


def p_image_line(spec: AnsatzSpec, sign: str, p: Quadratic) -> LineInTstar:
    """Image line of the vanishing locus {p(x,y) = 0} for p _|_ q; its
    normal is parallel to identify_t(spec, p, sign)."""
    if inner(p, spec.q) != 0:
        raise MomentError("p is not orthogonal to q")
    if p.c0 == 0 and p.c1 == 0:
        raise MomentError("constant p has empty vanishing locus")
    mus = []
    for k in range(1, 200):
        x = Fraction(k, 3) - 3
        den = p.c0 * x + p.c1
        if den == 0:
            continue
        y = -(p.c1 * x + p.c2) / den
        try:
            mp = moment_map(spec, sign, x, y)
        except MomentError:
            continue
        mus.append((mp.mu1, mp.mu2))
        if len(mus) >= 9:
            break
    if len(mus) < 3:
        raise MomentError("empty or degenerate p-locus")
    return _fit_line(mus)


# ---------------------------------------------------------------------------
# polygons, Delzant condition, convexity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """Convex polygon in t*: ordered vertices with per-edge inward normals;
    edge i joins vertex i to vertex i+1."""

    vertices: Tuple[Tuple[float, float], ...]
    normals: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n != len(self.normals) or n < 3:
            raise ValueError("need matching vertex and normal counts, >= 3")

    def edge_check(self, tol: float = 1e-9) -> bool:
        """Normals are orthogonal to their edges and point inward."""
        n = len(self.vertices)
        cx = sum(v[0] for v in self.vertices) / n
        cy = sum(v[1] for v in self.vertices) / n
        for i in range(n):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % n]
            nx, ny = float(self.normals[i][0]), float(self.normals[i][1])
            if abs(nx * (bx - ax) + ny * (by - ay)) > tol * max(1.0, hypot(bx - ax, by - ay)):
                return False
            if nx * (cx - ax) + ny * (cy - ay) <= 0:
                return False
        return True


@dataclass(frozen=True)
class CornerVerdict:
    index: int
    normals: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    determinant: Optional[Fraction]
    ok: bool


def delzant_check(polygon: Polygon, lattice: LatticeMatrix) -> List[CornerVerdict]:
    """Each adjacent normal pair, expressed in the lattice basis, must be an
    integer matrix of determinant +-1."""
    (a, b), (c, d) = [[rat(v) for v in row] for row in lattice]
    det = a * d - b * c
    out = []
    n = len(polygon.normals)
    for i in range(n):
        n1 = polygon.normals[i]
        n2 = polygon.normals[(i + 1) % n]

        def in_basis(v):
            w0 = (d * v[0] - b * v[1]) / det
            w1 = (-c * v[0] + a * v[1]) / det
            return (w0, w1)

        w1, w2 = in_basis(n1), in_basis(n2)
        integral = all(w.denominator == 1 for w in (*w1, *w2))
        dd = w1[0] * w2[1] - w1[1] * w2[0] if integral else None
        ok = integral and dd in (1, -1)
        out.append(CornerVerdict(index=i, normals=(tuple(n1), tuple(n2)),
                                 determinant=dd, ok=ok))
    return out


def convexity_check(samples, spread: float = 2.5):
    """Decide whether the sample cloud fills its own convex hull.

    A convex moment image sampled on a grid leaves no hole: every point of
    the hull is within a couple of nearest-neighbour spacings of a sample.
    A folded image leaves a conic-shaped void inside the hull; the witness
    returned is a hull point far from every sample.  Collinear clouds are
    convex by convention."""
    pts = np.array([(s.mu1, s.mu2) if isinstance(s, MomentPoint) else tuple(s)
                    for s in samples], dtype=float)
    if len(pts) < 3:
        raise MomentError("need at least 3 samples")
    # collinearity / rank test
    centered = pts - pts.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv[-1] < 1e-9 * max(1.0, sv[0]):
        return True, None
    from scipy.spatial import ConvexHull, cKDTree

    hull = ConvexHull(pts)
    tree = cKDTree(pts)
    k = min(5, len(pts) - 1)
    knn = tree.query(pts, k=k + 1)[0][:, 1:]
    # per-sample local spacing copes with strongly nonuniform images
    local = np.median(knn, axis=1)
    scale = float(np.percentile(local, 90))
    # probe grid over the hull's bounding box
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    xs = np.linspace(lo[0], hi[0], 48)
    ys = np.linspace(lo[1], hi[1], 48)
    gx, gy = np.meshgrid(xs, ys)
    probes = np.column_stack([gx.ravel(), gy.ravel()])
    # keep probes strictly inside the hull (margin one spacing)
    eqs = hull.equations
    inside = np.all(probes @ eqs[:, :2].T + eqs[:, 2] <= -0.5 * scale, axis=1)
    probes = probes[inside]
    if len(probes) == 0:
        return True, None
    dists, idx = tree.query(probes)
    ratio = dists / np.maximum(local[idx], 1e-300)
    worst = int(np.argmax(ratio))
    if ratio[worst] > spread:
        return False, MomentPoint(*probes[worst])
    return True, None


def hamiltonian_residual(spec: AnsatzSpec, sign: str, K: Sequence[Fraction],
                         x: float, y: float, h: float = 1e-4) -> float:
    """|d mu_K + K -| omega| at (x, y) by central differences (test helper)."""
    from .tensors import eval_field, FramePoint

    Kv = np.array([0.0, 0.0, float(K[0]), float(K[1])])
    w = eval_field(spec, "omega" + sign, FramePoint(x, y)).components
    contraction = w @ Kv  # (K -| omega)_b = omega_ab K^a -> -w[b,a]K^a = (wK) with sign
    iKw = np.array([sum(w[a, b] * Kv[a] for a in range(4)) for b in range(4)])

    def muK(xx, yy):
        mp = moment_map(spec, sign, xx, yy)
        return float(K[0]) * mp.mu1 + float(K[1]) * mp.mu2

    dmu = np.array([
        (muK(x + h, y) - muK(x - h, y)) / (2 * h),
        (muK(x, y + h) - muK(x, y - h)) / (2 * h),
        0.0, 0.0,
    ])
    return float(np.max(np.abs(dmu + iKw)))
