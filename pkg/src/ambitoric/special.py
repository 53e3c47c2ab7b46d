"""Named constructions: Riemannian Kerr, the CSC/Einstein family built from
transvectant data, closed-form scalar curvatures, and the standard moment
polygons.

The Kerr family is the hyperbolic ansatz with

    A(x) = x^2 - 2 M x - alpha^2,   B(y) = alpha^2 - y^2,

Ricci-flat for the metric (x^2 - y^2) g0, i.e. gp with p = 1.  When
M^2 + alpha^2 is a rational square the horizon roots x+- are exact and the
box endpoints sit exactly on them; otherwise the endpoints are nudged to
nearby rationals inside the positivity region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .quadratics import Poly, Quadratic, Quartic, inner, rat, transvectant2
from .ansatz import (
    AnsatzSpec,
    Interval,
    LatticeMatrix,
    ValidationError,
    metric_gp,
    validate,
)
from .moment import LineInTstar, Polygon

EXTERIOR = "Exterior"
INTERIOR = "Interior"

_ID_LATTICE = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# Kerr
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KerrParams:
    M: Fraction
    alpha: Fraction

    def __init__(self, M, alpha):
        M, alpha = rat(M), rat(alpha)
        if M <= 0:
            raise ValidationError("Kerr mass must be positive")
        if abs(alpha) >= M:
            raise ValidationError("Kerr requires |alpha| < M")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "alpha", alpha)

    def horizon_roots(self) -> Tuple[Fraction, Fraction, bool]:
        """(x-, x+, exact).  Rational roots when M^2 + alpha^2 is a rational
        square; otherwise outward-rounded rational approximations."""
        s2 = self.M * self.M + self.alpha * self.alpha
        root = _rational_sqrt(s2)
        if root is not None:
            return self.M - root, self.M + root, True
        rf = Fraction(math.sqrt(float(s2))).limit_denominator(10 ** 9)

        def a_val(x):
            return x * x - 2 * self.M * x - self.alpha * self.alpha

        # nudge outward so (x-) is left of the true root and (x+) right of it
        lo = self.M - rf
        eps = Fraction(1, 10 ** 7)
        while a_val(lo) <= 0:
            lo = self.M - rf - eps
            eps *= 2
        hi = self.M + rf
        eps = Fraction(1, 10 ** 7)
        while a_val(hi) <= 0:
            hi = self.M + rf + eps
            eps *= 2
        return lo, hi, False


def _rational_sqrt(v: Fraction) -> Optional[Fraction]:
    if v < 0:
        return None
    n = math.isqrt(v.numerator)
    d = math.isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def kerr(params: KerrParams, region: str = EXTERIOR,
         lattice: Optional[LatticeMatrix] = None,
         x_interval: Optional[Interval] = None) -> AnsatzSpec:
    """Hyperbolic Kerr spec with metric gp, p = 1.

    Exterior: x in (x+, oo).  Interior: x in (-alpha, x-), the region left
    of the inner horizon bounded by the B roots; this box is a modeling
    default and can be overridden via x_interval."""
    M, a = params.M, params.alpha
    A = Poly([-a * a, -2 * M, Fraction(1)])
    B = Poly([a * a, 0, -1])
    xm, xp, _exact = params.horizon_roots()
    if x_interval is None:
        if region == EXTERIOR:
            x_interval = Interval(xp, None)
        elif region == INTERIOR:
            if -abs(a) >= xm:
                raise ValidationError("interior box empty for these parameters")
            x_interval = Interval(-abs(a), xm)
        else:
            raise ValueError(f"unknown Kerr region {region!r}")
    return AnsatzSpec(
        q=Quadratic(0, 1, 0),
        A=A,
        B=B,
        x_interval=x_interval,
        y_interval=Interval(-abs(a), abs(a)),
        lattice=lattice if lattice is not None else _ID_LATTICE,
        metric=metric_gp(Quadratic(0, 0, 1)),
    )


# ---------------------------------------------------------------------------
# CSC / Einstein family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CSCData:
    q: Quadratic
    p: Quadratic
    rho: Quadratic
    R: Quartic


@dataclass(frozen=True)
class CSCReport:
    einstein: bool
    csc: bool
    A: Poly
    B: Poly


def csc_construct(data: CSCData,
                  x_interval: Optional[Interval] = None,
                  y_interval: Optional[Interval] = None,
                  lattice: Optional[LatticeMatrix] = None
                  ) -> Tuple[AnsatzSpec, CSCReport]:
    """A = p rho + R, B = p rho - R, metric gp(p).

    Requires exactly: <p, q> = 0, <rho, p> = 0 and <(q,R)^(2), p> = 0.
    When no box is supplied, a positivity box is searched on a rational
    grid.  The report flags the Einstein case rho || q."""
    errs = []
    if inner(data.p, data.q) != 0:
        errs.append("p is not orthogonal to q")
    if inner(data.rho, data.p) != 0:
        errs.append("rho is not orthogonal to p")
    if inner(transvectant2(data.q, data.R), data.p) != 0:
        errs.append("(q, R)^(2) is not orthogonal to p")
    if errs:
        raise ValidationError("; ".join(errs))

    prho = data.p.as_poly() * data.rho.as_poly()
    A = prho + data.R.as_poly()
    B = prho - data.R.as_poly()
    if x_interval is None:
        x_interval = _positivity_box(A)
    if y_interval is None:
        y_interval = _positivity_box(B, avoid=x_interval)
    spec = AnsatzSpec(
        q=data.q, A=A, B=B,
        x_interval=x_interval, y_interval=y_interval,
        lattice=lattice if lattice is not None else _ID_LATTICE,
        metric=metric_gp(data.p),
    )
    report = CSCReport(einstein=data.rho.is_multiple_of(data.q),
                       csc=True, A=A, B=B)
    return spec, report


def _positivity_box(P: Poly, avoid: Optional[Interval] = None) -> Interval:
    """Longest run of a rational grid on which P > 0, preferring runs whose
    interior avoids the diagonal with `avoid`."""
    grid = [Fraction(k, 4) for k in range(-32, 33)]
    runs: List[Tuple[Fraction, Fraction]] = []
    start = None
    for t in grid:
        if P(t) > 0:
            if start is None:
                start = t
        else:
            if start is not None and t - Fraction(1, 4) > start:
                runs.append((start, t - Fraction(1, 4)))
            start = None
    if start is not None and grid[-1] > start:
        runs.append((start, grid[-1]))
    if not runs:
        raise ValidationError("no positivity region found on the search grid")

    def overlap(run):
        if avoid is None or avoid.lo is None or avoid.hi is None:
            return 0
        lo, hi = run
        return max(0, float(min(hi, avoid.hi)) - float(max(lo, avoid.lo)))

    runs.sort(key=lambda r: (overlap(r), -(r[1] - r[0])))
    lo, hi = runs[0]
    # shrink off the endpoints so the open box is strictly positive
    pad = (hi - lo) / 8
    return Interval(lo + pad, hi - pad)


# ---------------------------------------------------------------------------
# closed-form scalar curvatures
# ---------------------------------------------------------------------------

def _gen_transvectant(f1, df1, ddf1, P: Poly, z) -> float:
    """f1 f2'' - 3 f1' f2' + 6 f1'' f2 with f1 data supplied pointwise."""
    d1 = P.derivative()
    d2 = d1.derivative()
    return f1 * d2(z) - 3.0 * df1 * d1(z) + 6.0 * ddf1 * P(z)


def scalar_closed_form(spec: AnsatzSpec, sign: str, x: float, y: float) -> float:
    """Closed-form scalar curvature expression for g_sign, up to one global
    normalization constant (see the calibration test).

    For '-' the weight function is (x - y)^2 as a function of x (resp. y);
    for '+' it is q(x, y)^2.  Both are divided by (x - y) q(x, y)."""
    qv = spec.q.polarize(x, y)
    d = x - y
    if d == 0 or qv == 0:
        raise ZeroDivisionError("scalar closed form has a pole on the folds")
    if sign == "-":
        tA = _gen_transvectant(d * d, 2.0 * d, 2.0, spec.A, x)
        tB = _gen_transvectant(d * d, -2.0 * d, 2.0, spec.B, y)
    elif sign == "+":
        qx = spec.q.dx_polarize(y)   # d/dx of q(x, y)
        qy = spec.q.dx_polarize(x)   # d/dy of q(x, y)
        c0 = float(spec.q.c0)
        tA = _gen_transvectant(qv * qv, 2.0 * qv * qx,
                               2.0 * qx * qx + 2.0 * qv * c0, spec.A, x)
        tB = _gen_transvectant(qv * qv, 2.0 * qv * qy,
                               2.0 * qy * qy + 2.0 * qv * c0, spec.B, y)
    else:
        raise ValueError("sign must be '+' or '-'")
    return -(tA + tB) / (d * qv)


# ---------------------------------------------------------------------------
# standard polygons
# ---------------------------------------------------------------------------

def _intersect(l1: LineInTstar, l2: LineInTstar) -> Tuple[float, float]:
    a1, b1 = (float(v) for v in l1.normal)
    a2, b2 = (float(v) for v in l2.normal)
    det = a1 * b2 - a2 * b1
    c1, c2 = float(l1.offset), float(l2.offset)
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def standard_polygon(kind: str) -> Tuple[Polygon, LatticeMatrix]:
    """'cp2' or 'hirzebruch:k'.  Vertices are the pairwise intersections of
    tangent lines of the hyperbola 4 mu1 mu2 = -1; the Hirzebruch trapezoid
    uses the extra tangent with normal (-k-1, k) at offset -sqrt(k(k+1))."""
    if kind == "cp2":
        lines = [
            LineInTstar((Fraction(1), Fraction(0)), Fraction(0)),
            LineInTstar((Fraction(-1), Fraction(1)), Fraction(-1)),
            LineInTstar((Fraction(0), Fraction(-1)), Fraction(0)),
        ]
        verts = tuple(_intersect(lines[i - 1], lines[i]) for i in range(3))
        # verts[i] is the meet of edge i-1 and edge i; edge i runs v[i]->v[i+1]
        poly = Polygon(vertices=verts,
                       normals=tuple(l.normal for l in lines))
        return poly, _ID_LATTICE
    if kind.startswith("hirzebruch:"):
        k = int(kind.split(":", 1)[1])
        if k < 1:
            raise ValueError("Hirzebruch index must be >= 1")
        s = math.sqrt(k * (k + 1))
        lower = ((Fraction(-1), Fraction(1)), -1.0)     # mu2 = mu1 - 1
        right = ((Fraction(-k - 1), Fraction(k)), -s)
        upper = ((Fraction(1), Fraction(-1)), -1.0)     # mu2 = mu1 + 1
        left = ((Fraction(1), Fraction(0)), 0.0)        # mu1 = 0
        order = [lower, right, upper, left]

        def meet(l1, l2):
            (a1, b1), c1 = l1
            (a2, b2), c2 = l2
            det = float(a1) * float(b2) - float(a2) * float(b1)
            return ((c1 * float(b2) - c2 * float(b1)) / det,
                    (float(a1) * c2 - float(a2) * c1) / det)

        verts = tuple(meet(order[i - 1], order[i]) for i in range(4))
        poly = Polygon(vertices=verts, normals=tuple(n for n, _ in order))
        return poly, _ID_LATTICE
    raise ValueError(f"unknown polygon kind {kind!r}")


def hirzebruch_normal_sum(k: int) -> bool:
    """(1, 0) + (-k-1, k) = k (-1, 1), exactly."""
    return (1 - k - 1, 0 + k) == (-k, k)
