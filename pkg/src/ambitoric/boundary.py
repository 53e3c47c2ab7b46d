"""Boundary decomposition and metric-distance analysis.

The coordinate closure of a sign component decomposes into edges (level
sets of x or y at the interval endpoints), folds (segments of {x = y} and
{q(x,y) = 0} meeting the closure), corners, and for the diagonal-Ricci
metric the P-locus {p(x,y) = 0}.

Edge distance is decided exactly: with m the root multiplicity of A (or B)
at the endpoint and e the order of the metric's conformal scale along the
edge, the transverse length integral int dx / x^{(m-e)/2} diverges iff
m - e >= 2.  Proper folds are assigned the asymptotic gradient exponent r
of ||d phi||_g ~ phi^r along a transversal; the boundary piece is
infinitely distant iff r >= 1 (so proper folds never are, while the
P-locus with r = 1 always is).  A numerical least-squares estimate of r
backs the analytic table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .quadratics import OO, Mobius, Poly, ProjPoint, Quadratic, proj_eq, proj_rep, rat
from .ansatz import (
    G0,
    GMINUS,
    GP,
    GPLUS,
    AnsatzSpec,
    BoxComponent,
    Interval,
    MetricChoice,
    ValidationError,
    lattice_contains,
    mobius_transport,
)
from .moment import identify_t
from .tensors import metric_components

EDGE = "Edge"
FOLD = "Fold"
CORNER = "Corner"
PLOCUS = "PLocus"

FINITE = "Finite"
INFINITELY_DISTANT = "InfinitelyDistant"


@dataclass(frozen=True)
class BoundaryComponent:
    kind: str
    axis: Optional[str] = None                 # edges: "X" | "Y"
    gamma: Optional[ProjPoint] = None          # edges: the level value
    sign: Optional[str] = None                 # folds: "+" | "-"
    corner: Optional[Tuple[ProjPoint, ProjPoint]] = None
    is_fold_and_edge: bool = False
    proper: bool = False                       # folds: meets the open box
    on_positive_fold: bool = False             # corners
    on_negative_fold: bool = False
    on_p_locus: bool = False
    base_point: Optional[Tuple[float, float]] = None
    approach_sign: int = 0                     # side of the transversal

    def describe(self) -> str:
        if self.kind == EDGE:
            tag = " (fold-edge)" if self.is_fold_and_edge else ""
            g = "oo" if self.gamma is OO else str(self.gamma)
            return f"Edge {self.axis}={g}{tag}"
        if self.kind == FOLD:
            return f"Fold {self.sign}" + (" (proper)" if self.proper else "")
        if self.kind == PLOCUS:
            return "PLocus" + (" (proper)" if self.proper else "")
        gx, gy = self.corner
        fx = "oo" if gx is OO else str(gx)
        fy = "oo" if gy is OO else str(gy)
        flags = []
        if self.on_positive_fold:
            flags.append("on Z+")
        if self.on_negative_fold:
            flags.append("on Z-")
        if self.on_p_locus:
            flags.append("on P")
        extra = f" [{', '.join(flags)}]" if flags else ""
        return f"Corner ({fx}, {fy}){extra}"


@dataclass(frozen=True)
class DistanceStatus:
    metric: MetricChoice
    verdict: str
    r_exponent: Optional[float] = None
    r_estimate: Optional[float] = None
    integral_convergent: Optional[bool] = None
    compatible_normal: Optional[Tuple[Tuple[Fraction, Fraction], bool]] = None
    note: str = ""


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def _locus_curve_point(curve: Quadratic, x: Fraction) -> Optional[Fraction]:
    """y with curve(x, y) = 0 along the polarization, if the slice is
    nondegenerate."""
    den = curve.c0 * x + curve.c1
    if den == 0:
        return None
    return -(curve.c1 * x + curve.c2) / den


def _in_closure(comp: BoxComponent, x: float, y: float, tol: float = 0.0) -> bool:
    """Closure membership: signs may also vanish."""
    xr, yr = comp.x_range, comp.y_range
    if xr.lo is not None and x < float(xr.lo):
        return False
    if xr.hi is not None and x > float(xr.hi):
        return False
    if yr.lo is not None and y < float(yr.lo):
        return False
    if yr.hi is not None and y > float(yr.hi):
        return False
    d = x - y
    if d != 0 and (1 if d > 0 else -1) != comp.sign_xy:
        return False
    qv = comp.q.polarize(x, y)
    if qv != 0 and (1 if qv > 0 else -1) != comp.sign_q:
        return False
    return True


def _strict_interior_1d(iv: Interval, t) -> bool:
    tf = float(t)
    if iv.lo is not None and not tf > float(iv.lo):
        return False
    if iv.hi is not None and not tf < float(iv.hi):
        return False
    return True


def _curve_fold(spec: AnsatzSpec, comp: BoxComponent, curve: Quadratic,
                kind: str, sign: Optional[str], approach: int
                ) -> Optional[BoundaryComponent]:
    """Proper-fold detection for a conic locus {curve(x,y) = 0}: sample the
    curve over the open x-range and keep points interior to the box and in
    the component closure.  Degenerate (line-pair) loci fall to the caller."""
    hits = []
    for x in comp.x_range.rat_samples(240):
        y = _locus_curve_point(curve, x)
        if y is None:
            continue
        if not _strict_interior_1d(comp.y_range, y):
            continue
        if not _in_closure(comp, float(x), float(y)):
            continue
        hits.append((float(x), float(y)))
    if not hits:
        return None
    base = hits[len(hits) // 2]
    return BoundaryComponent(kind=kind, sign=sign, proper=True,
                             base_point=base, approach_sign=approach)


def decompose_boundary(spec: AnsatzSpec, comp: BoxComponent) -> List[BoundaryComponent]:
    """Edges, folds, corners and (under gp) P-locus segments of the
    component's coordinate closure."""
    out: List[BoundaryComponent] = []
    qdr = spec.q.double_root()

    # -- edges --------------------------------------------------------------
    for axis, iv in (("X", comp.x_range), ("Y", comp.y_range)):
        eps = iv.endpoints_proj()
        gammas = [eps[0]] if proj_eq(eps[0], eps[1]) else list(eps)
        for g in gammas:
            fe = qdr is not None and proj_eq(g, qdr)
            out.append(BoundaryComponent(kind=EDGE, axis=axis, gamma=g,
                                         is_fold_and_edge=fe))

    # -- corners ------------------------------------------------------------
    for gx in comp.x_range.endpoints_proj():
        for gy in comp.y_range.endpoints_proj():
            X, W = proj_rep(gx)
            Y, V = proj_rep(gy)
            pos = X * V - Y * W == 0
            neg = spec.q.polarize_hom(X, W, Y, V) == 0
            onp = (spec.metric.tag == GP
                   and spec.metric.p.polarize_hom(X, W, Y, V) == 0)
            out.append(BoundaryComponent(kind=CORNER, corner=(gx, gy),
                                         on_positive_fold=pos,
                                         on_negative_fold=neg,
                                         on_p_locus=onp))

    # -- positive fold {x = y} ---------------------------------------------
    diag_hits = []
    for t in comp.x_range.rat_samples(240):
        if not _strict_interior_1d(comp.y_range, t):
            continue
        if _in_closure(comp, float(t), float(t)):
            diag_hits.append(float(t))
    if diag_hits:
        t0 = diag_hits[len(diag_hits) // 2]
        out.append(BoundaryComponent(kind=FOLD, sign="+", proper=True,
                                     base_point=(t0, t0),
                                     approach_sign=comp.sign_xy))

    # -- negative fold {q(x,y) = 0} ----------------------------------------
    if qdr is None:
        f = _curve_fold(spec, comp, spec.q, FOLD, "-", comp.sign_q)
        if f is not None:
            out.append(f)
    elif qdr is not OO:
        # line pair {x = qdr} u {y = qdr}: interior lines are proper folds,
        # endpoint lines are the fold-edges flagged above
        for axis, iv, other in (("X", comp.x_range, comp.y_range),
                                ("Y", comp.y_range, comp.x_range)):
            if _strict_interior_1d(iv, qdr):
                s = float(rat(qdr))
                o = other.midpoint()
                base = (s, o) if axis == "X" else (o, s)
                if _in_closure(comp, *base):
                    out.append(BoundaryComponent(kind=FOLD, sign="-", proper=True,
                                                 base_point=base,
                                                 approach_sign=comp.sign_q))

    # -- P-locus ------------------------------------------------------------
    if spec.metric.tag == GP:
        p = spec.metric.p
        rep = comp.representative()
        pside = 1 if p.polarize(*rep) > 0 else -1
        pdr = p.double_root()
        if pdr is None:
            f = _curve_fold(spec, comp, p, PLOCUS, None, pside)
            if f is not None:
                out.append(f)
        elif pdr is not OO:
            for axis, iv, other in (("X", comp.x_range, comp.y_range),
                                    ("Y", comp.y_range, comp.x_range)):
                if _strict_interior_1d(iv, pdr):
                    s = float(rat(pdr))
                    o = other.midpoint()
                    base = (s, o) if axis == "X" else (o, s)
                    if _in_closure(comp, *base):
                        out.append(BoundaryComponent(kind=PLOCUS, proper=True,
                                                     base_point=base,
                                                     approach_sign=pside))
    return out


# ---------------------------------------------------------------------------
# edges
# ---------------------------------------------------------------------------

def _gauge_to_finite(spec: AnsatzSpec) -> Tuple[AnsatzSpec, Mobius]:
    """A Mobius map z -> 1/(z - s) with the pole s outside both closed
    intervals, sending infinity to 0."""
    finite = [e for iv in (spec.x_interval, spec.y_interval)
              for e in (iv.lo, iv.hi) if e is not None]
    candidates = []
    if all(iv.lo is not None for iv in (spec.x_interval, spec.y_interval)):
        candidates.append(min(e for e in finite) - 1)
    if all(iv.hi is not None for iv in (spec.x_interval, spec.y_interval)):
        candidates.append(max(e for e in finite) + 1)
    if not candidates:
        raise ValidationError("no common finite gauge for the edge at infinity")
    s = candidates[0]
    m = Mobius(0, 1, 1, -s)
    return mobius_transport(spec, m), m


def _scale_edge_order(spec: AnsatzSpec, metric: MetricChoice,
                      fold_edge: bool) -> int:
    """Vanishing order of the metric's conformal scale in the transverse
    coordinate along the edge.  Nonzero only for fold-edges, where q(x,y)
    vanishes to first order off the edge."""
    if not fold_edge or metric.tag == G0:
        return 0
    if metric.tag == GPLUS:
        return -1
    return 1  # g- and gp


def compatible_quadratic(q: Quadratic, gamma: Fraction) -> Quadratic:
    """p^(gamma)(x,y) = (x-gamma) q(y,gamma)/2 + q(x,gamma) (y-gamma)/2 as a
    quadratic; identically zero iff gamma is a double root of q."""
    g = rat(gamma)
    u = q.c0 * g + q.c1
    v = q.c1 * g + q.c2
    return Quadratic(u, (v - u * g) / 2, -v * g)


def edge_status(spec: AnsatzSpec, metric: MetricChoice,
                edge: BoundaryComponent) -> DistanceStatus:
    """Exact edge verdict; edges at infinity are gauge-transported first."""
    if edge.kind != EDGE:
        raise ValueError("edge_status needs an Edge component")
    if edge.gamma is OO:
        spec2, m = _gauge_to_finite(spec)
        qdr2 = spec2.q.double_root()
        g2 = m.apply(OO)
        edge2 = replace(edge, gamma=g2,
                        is_fold_and_edge=qdr2 is not None and proj_eq(g2, qdr2))
        st = edge_status(spec2, metric, edge2)
        return replace(st, note=(st.note + " (via gauge z -> 1/(z-s))").strip())

    g = rat(edge.gamma)
    P = spec.A if edge.axis == "X" else spec.B
    m_root = P.root_multiplicity(g) if P(g) == 0 else 0
    if not edge.is_fold_and_edge and m_root == 0:
        raise ValidationError(
            f"edge {edge.axis}={g}: endpoint is not a root of "
            f"{'A' if edge.axis == 'X' else 'B'}; not a true metric boundary")
    e = _scale_edge_order(spec, metric, edge.is_fold_and_edge)
    convergent = (m_root - e) < 2
    verdict = FINITE if convergent else INFINITELY_DISTANT

    normal = None
    note = ""
    if edge.is_fold_and_edge:
        note = "fold-edge: compatible normal degenerate"
    elif convergent:
        pg = compatible_quadratic(spec.q, g)
        D = P.derivative()(g)
        if D == 0:
            raise ValidationError("simple root with vanishing derivative?")
        v = identify_t(spec, pg, "-")
        s = Fraction(-2 if edge.axis == "X" else 2, 1) / D
        n = (s * v[0], s * v[1])
        normal = (n, lattice_contains(spec.lattice, n))
    return DistanceStatus(metric=metric, verdict=verdict,
                          integral_convergent=convergent,
                          compatible_normal=normal, note=note)


def improper_length_samples(P: Poly, gamma: Fraction, side: int,
                            outer: float, eps_list: Sequence[float]) -> List[float]:
    """Partial lengths int_{gamma+side*eps}^{gamma+side*outer} dx/sqrt|P|,
    the quadrature cross-check of the multiplicity rule."""
    from scipy.integrate import quad

    g = float(gamma)

    def f(x):
        return 1.0 / math.sqrt(abs(P(x)))

    out = []
    for eps in eps_list:
        a, b = g + side * eps, g + side * outer
        lo, hi = min(a, b), max(a, b)
        val, _ = quad(f, lo, hi, limit=200)
        out.append(val)
    return out


# ---------------------------------------------------------------------------
# folds
# ---------------------------------------------------------------------------

def _analytic_r(spec: AnsatzSpec, metric: MetricChoice,
                fold: BoundaryComponent) -> float:
    if fold.kind == PLOCUS:
        return 1.0
    if fold.sign == "+":
        table = {G0: 0.0, GPLUS: -0.5, GMINUS: 0.5, GP: -0.5}
    else:
        table = {G0: 0.0, GPLUS: 0.5, GMINUS: -0.5, GP: -0.5}
    if (metric.tag == GP and fold.sign == "-"
            and metric.p.is_multiple_of(spec.q)):
        # q-aligned p: the negative fold is simultaneously the P-locus
        return 1.0
    return table[metric.tag]


def _transversal_point(spec: AnsatzSpec, fold: BoundaryComponent,
                       phi: float) -> Tuple[float, float, np.ndarray]:
    """(x, y, d phi) at parameter phi along the transversal from the base."""
    x0, y0 = fold.base_point
    s = float(fold.approach_sign or 1)
    if fold.kind == FOLD and fold.sign == "+":
        x, y = x0 + s * phi / 2.0, y0 - s * phi / 2.0
        grad = np.array([1.0, -1.0, 0.0, 0.0])
        return x, y, grad
    curve = spec.q if fold.kind == FOLD else spec.metric.p
    gx = curve.dx_polarize(y0)
    gy = curve.dx_polarize(x0)
    n2 = gx * gx + gy * gy
    x = x0 + s * phi * gx / n2
    y = y0 + s * phi * gy / n2
    grad = np.array([curve.dx_polarize(y), curve.dx_polarize(x), 0.0, 0.0])
    return x, y, grad


def estimate_r(spec: AnsatzSpec, metric: MetricChoice, fold: BoundaryComponent,
               lo: float = 1e-6, hi: float = 1e-3, n: int = 30) -> float:
    """Least-squares slope of log ||d phi||_g against log phi along the
    transversal from the fold's base point."""
    phis = np.geomspace(lo, hi, n)
    logs = []
    for phi in phis:
        x, y, grad = _transversal_point(spec, fold, float(phi))
        g = metric_components(spec, metric, x, y)
        ginv = np.linalg.inv(g)
        # on components where the conformal factor is negative the scaled
        # metric is negative definite; the length scale is |g|
        norm = math.sqrt(abs(float(grad @ ginv @ grad)))
        logs.append(math.log(norm))
    slope = np.polyfit(np.log(phis), np.array(logs), 1)[0]
    return float(slope)


def fold_status(spec: AnsatzSpec, metric: MetricChoice,
                fold: BoundaryComponent, numeric: bool = True) -> DistanceStatus:
    """Analytic r-exponent verdict with an optional numerical confirmation."""
    if fold.kind not in (FOLD, PLOCUS):
        raise ValueError("fold_status needs a Fold or PLocus component")
    r = _analytic_r(spec, metric, fold)
    r_num = None
    if numeric and fold.base_point is not None:
        try:
            r_num = estimate_r(spec, metric, fold)
        except Exception:
            r_num = None
    verdict = INFINITELY_DISTANT if r >= 1.0 else FINITE
    return DistanceStatus(metric=metric, verdict=verdict, r_exponent=r,
                          r_estimate=r_num)


# ---------------------------------------------------------------------------
# corners
# ---------------------------------------------------------------------------

def corner_status(spec: AnsatzSpec, metric: MetricChoice,
                  corner: BoundaryComponent,
                  adjacent: Sequence[DistanceStatus]
                  ) -> Tuple[DistanceStatus, bool, str]:
    """Corner verdict from the adjacent edge/fold statuses, plus the
    admissibility rule: a finite corner on a fold needs the matching Kahler
    or diagonal-Ricci metric, and under gp must avoid the P-locus."""
    if corner.kind != CORNER:
        raise ValueError("corner_status needs a Corner component")
    infinitely = any(a.verdict == INFINITELY_DISTANT for a in adjacent)
    verdict = INFINITELY_DISTANT if infinitely else FINITE
    status = DistanceStatus(metric=metric, verdict=verdict)
    if infinitely:
        return status, True, "adjacent infinitely distant piece"
    if metric.tag == GP and corner.on_p_locus:
        return status, False, "finite corner on the P-locus under gp"
    if corner.on_positive_fold and metric.tag not in (GPLUS, GP):
        return status, False, "finite corner on the positive fold needs g+ or gp"
    if corner.on_negative_fold and metric.tag not in (GMINUS, GP):
        return status, False, "finite corner on the negative fold needs g- or gp"
    return status, True, "no fold condition triggered"
