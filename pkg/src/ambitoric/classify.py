"""Completability and completeness verdicts assembled from boundary data.

The four rules applied to a validated sign component:

  (i)   no proper folds;
  (ii)  every ordinary edge is either infinitely distant or carries a
        compatible normal lying in the lattice;
  (iii) a fold-edge at finite distance forces the metric to be g- or gp;
  (iv)  every finite corner satisfies the fold/P-locus admissibility rule.

The component extends to a complete ambitoric structure precisely when it
is completable and every fold-type piece (proper fold, fold-edge, fold
corner) is infinitely distant.  Verdicts are total: every rule is
evaluated and reported, nothing raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .quadratics import OO, Quadratic, proj_rep
from .ansatz import (
    GMINUS,
    GP,
    AnsatzSpec,
    BoxComponent,
    Interval,
    LatticeMatrix,
    MetricChoice,
    METRIC_G0,
    ValidationError,
    validate,
)
from .boundary import (
    CORNER,
    EDGE,
    FINITE,
    FOLD,
    INFINITELY_DISTANT,
    PLOCUS,
    BoundaryComponent,
    DistanceStatus,
    corner_status,
    decompose_boundary,
    edge_status,
    fold_status,
)

RULE_PROPER_FOLD = "i:no-proper-folds"
RULE_EDGE_NORMAL = "ii:edge-distant-or-normal"
RULE_FOLD_EDGE = "iii:fold-edge-metric"
RULE_CORNER = "iv:corner-admissible"
RULE_INFO = "info"


@dataclass(frozen=True)
class Report:
    component: BoundaryComponent
    status: Optional[DistanceStatus]
    rule: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "ok" if self.ok else "VIOLATED"
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.component.describe():32s} [{self.rule}] {mark}{extra}"


@dataclass(frozen=True)
class Verdict:
    completable: bool
    extends_ambitoric: bool
    reports: Tuple[Report, ...]

    def violations(self) -> List[Report]:
        return [r for r in self.reports if not r.ok]

    def to_dict(self) -> dict:
        def st(s: Optional[DistanceStatus]):
            if s is None:
                return None
            d = {"verdict": s.verdict}
            if s.r_exponent is not None:
                d["r"] = s.r_exponent
            if s.compatible_normal is not None:
                n, member = s.compatible_normal
                d["normal"] = [str(n[0]), str(n[1])]
                d["normal_in_lattice"] = member
            return d

        return {
            "completable": self.completable,
            "extends_ambitoric": self.extends_ambitoric,
            "reports": [
                {
                    "component": r.component.describe(),
                    "rule": r.rule,
                    "ok": r.ok,
                    "detail": r.detail,
                    "status": st(r.status),
                }
                for r in self.reports
            ],
        }


def _is_fold_piece(c: BoundaryComponent) -> bool:
    if c.kind == FOLD:
        return True
    if c.kind == EDGE and c.is_fold_and_edge:
        return True
    if c.kind == CORNER and (c.on_positive_fold or c.on_negative_fold):
        return True
    return False


def completability_verdict(spec: AnsatzSpec, metric: MetricChoice,
                           comp: BoxComponent,
                           numeric_folds: bool = True) -> Verdict:
    """Apply rules (i)-(iv) to one sign component and report everything."""
    pieces = decompose_boundary(spec, comp)
    reports: List[Report] = []
    edge_stat = {}

    for c in pieces:
        if c.kind != EDGE:
            continue
        try:
            st = edge_status(spec, metric, c)
        except ValidationError as err:
            reports.append(Report(c, None, RULE_EDGE_NORMAL, False, str(err)))
            edge_stat[(c.axis, c.gamma)] = None
            continue
        edge_stat[(c.axis, c.gamma)] = st
        if c.is_fold_and_edge:
            ok = (st.verdict == INFINITELY_DISTANT
                  or metric.tag in (GMINUS, GP))
            detail = st.verdict if ok else \
                f"finite fold-edge under {metric.tag}"
            reports.append(Report(c, st, RULE_FOLD_EDGE, ok, detail))
        else:
            member = st.compatible_normal is not None and st.compatible_normal[1]
            ok = st.verdict == INFINITELY_DISTANT or member
            if ok:
                detail = st.verdict if st.verdict == INFINITELY_DISTANT else \
                    f"normal {tuple(map(str, st.compatible_normal[0]))} in lattice"
            else:
                detail = "finite edge, compatible normal not in lattice"
            reports.append(Report(c, st, RULE_EDGE_NORMAL, ok, detail))

    for c in pieces:
        if c.kind == FOLD:
            st = fold_status(spec, metric, c, numeric=numeric_folds)
            ok = not c.proper
            detail = "" if ok else f"proper {c.sign} fold (r={st.r_exponent})"
            reports.append(Report(c, st, RULE_PROPER_FOLD, ok, detail))
        elif c.kind == PLOCUS:
            st = fold_status(spec, metric, c, numeric=numeric_folds)
            reports.append(Report(c, st, RULE_INFO, True,
                                  "P-locus infinitely distant under gp"))

    for c in pieces:
        if c.kind != CORNER:
            continue
        gx, gy = c.corner
        adj = [edge_stat.get(("X", gx)), edge_stat.get(("Y", gy))]
        adj = [a for a in adj if a is not None]
        st, admissible, reason = corner_status(spec, metric, c, adj)
        reports.append(Report(c, st, RULE_CORNER, admissible, reason))

    completable = all(r.ok for r in reports)
    extends = completable and all(
        r.status is not None and r.status.verdict == INFINITELY_DISTANT
        for r in reports if _is_fold_piece(r.component))
    return Verdict(completable=completable, extends_ambitoric=extends,
                   reports=tuple(reports))


def classify(spec: AnsatzSpec, numeric_folds: bool = True
             ) -> List[Tuple[BoxComponent, Verdict]]:
    """Verdicts for every sign component of the spec under its own metric."""
    return [(c, completability_verdict(spec, spec.metric, c, numeric_folds))
            for c in validate(spec)]


# ---------------------------------------------------------------------------
# global completeness of the barycentric metric
# ---------------------------------------------------------------------------

def complete_orbifold_check(q: Quadratic, x_interval: Interval,
                            y_interval: Interval, lattice: LatticeMatrix,
                            A, B) -> Tuple[bool, List[str]]:
    """Global g0-completeness of the quotient: the box must avoid both fold
    factors, every finite-distance endpoint must contribute its compatible
    normal to the lattice, and corners with two convergent integrals must
    stay off (x - y) q(x, y) = 0."""
    diags: List[str] = []
    try:
        spec = AnsatzSpec(q=q, A=A, B=B, x_interval=x_interval,
                          y_interval=y_interval, lattice=lattice,
                          metric=METRIC_G0)
        comps = validate(spec)
    except ValidationError as err:
        return False, [f"invalid ansatz data: {err}"]
    if len(comps) != 1:
        diags.append("(x - y) q(x, y) changes sign inside the box")
        return False, diags
    comp = comps[0]
    pieces = decompose_boundary(spec, comp)
    if any(c.kind in (FOLD, PLOCUS) for c in pieces):
        diags.append("fold locus meets the box interior")
        return False, diags

    ok = True
    edge_conv = {}
    for c in pieces:
        if c.kind != EDGE:
            continue
        try:
            st = edge_status(spec, METRIC_G0, c)
        except ValidationError as err:
            diags.append(f"{c.describe()}: {err}")
            ok = False
            edge_conv[(c.axis, c.gamma)] = False
            continue
        conv = bool(st.integral_convergent)
        edge_conv[(c.axis, c.gamma)] = conv
        if not conv:
            diags.append(f"{c.describe()}: integral divergent, condition vacuous")
            continue
        if st.compatible_normal is None:
            diags.append(f"{c.describe()}: convergent but no compatible normal")
            ok = False
        else:
            n, member = st.compatible_normal
            if member:
                diags.append(
                    f"{c.describe()}: normal ({n[0]}, {n[1]}) in lattice")
            else:
                diags.append(
                    f"{c.describe()}: normal ({n[0]}, {n[1]}) NOT in lattice")
                ok = False

    for c in pieces:
        if c.kind != CORNER:
            continue
        gx, gy = c.corner
        if edge_conv.get(("X", gx)) and edge_conv.get(("Y", gy)):
            X, W = proj_rep(gx)
            Y, V = proj_rep(gy)
            val = (X * V - Y * W) * q.polarize_hom(X, W, Y, V)
            if val == 0:
                diags.append(f"{c.describe()}: lies on (x - y) q(x, y) = 0")
                ok = False
    return ok, diags
