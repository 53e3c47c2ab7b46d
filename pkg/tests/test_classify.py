import random
from fractions import Fraction as F

import pytest

from ambitoric import (
    Interval,
    Mobius,
    Poly,
    Quadratic,
    classify,
    complete_orbifold_check,
    completability_verdict,
    mobius_transport,
    validate,
)
from ambitoric.ansatz import METRIC_G0, METRIC_GMINUS, metric_gp
from ambitoric.classify import (
    RULE_CORNER,
    RULE_EDGE_NORMAL,
    RULE_FOLD_EDGE,
    RULE_PROPER_FOLD,
)

from conftest import I2, make_spec


def _verdicts(spec, numeric=False):
    return classify(spec, numeric_folds=numeric)


def test_proper_fold_blocks_completability():
    spec = make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -3, -1],
                     (1, 2), (-3, 0))
    for _comp, v in _verdicts(spec):
        assert not v.completable
        assert any(r.rule == RULE_PROPER_FOLD for r in v.violations())


def test_accepting_box_completable(hyperbolic_spec):
    [(comp, v)] = _verdicts(hyperbolic_spec)
    assert v.completable
    assert v.extends_ambitoric
    assert not v.violations()


def test_fold_edge_metric_rule():
    spec = make_spec(Quadratic(0, 0, 1), [-1, 1, -1, 1], [-2, -3, -1],
                     (1, None), (-2, -1))
    [(_c, v0)] = _verdicts(spec)
    assert not v0.completable
    assert any(r.rule == RULE_FOLD_EDGE for r in v0.violations())
    [(_c, vm)] = _verdicts(spec.with_metric(METRIC_GMINUS))
    assert vm.completable
    assert not vm.extends_ambitoric   # the fold-edge stays finite under g-


def test_fold_corner_rule():
    spec = make_spec(Quadratic(0, 1, 0), [-3, 4, -1], [0, -1, -1],
                     (1, 3), (-1, 0))
    [(_c, v)] = _verdicts(spec)
    assert any(r.rule == RULE_CORNER for r in v.violations())
    [(_c, vm)] = _verdicts(spec.with_metric(METRIC_GMINUS))
    assert vm.completable and not vm.extends_ambitoric


def test_extends_implies_completable_and_distant_folds():
    cases = [
        make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -3, -1],
                  (1, 2), (-3, 0)),
        make_spec(Quadratic(0, 1, 0), [4, -12, 13, -6, 1],
                  [36, 60, 37, 10, 1], (1, 2), (-3, -2)),
        make_spec(Quadratic(0, 1, 0), [-3, 4, -1], [0, -1, -1],
                  (1, 3), (-1, 0), metric=METRIC_GMINUS),
    ]
    for spec in cases:
        for _comp, v in _verdicts(spec):
            if v.extends_ambitoric:
                assert v.completable
                from ambitoric.classify import _is_fold_piece
                for r in v.reports:
                    if _is_fold_piece(r.component):
                        assert r.status.verdict == "InfinitelyDistant"


def test_lattice_monotone():
    # refining the lattice can only help: superlattice accepts whenever
    # the sublattice accepts
    spec_fine = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                          (2, 3), (-1, 0),
                          lattice=((F(1, 2), F(0)), (F(0), F(1, 2))))
    spec_coarse = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                            (2, 3), (-1, 0))
    [(_, v_coarse)] = _verdicts(spec_coarse)
    [(_, v_fine)] = _verdicts(spec_fine)
    if v_coarse.completable:
        assert v_fine.completable


def test_coarse_lattice_rejects():
    lat = ((F(3), F(0)), (F(0), F(3)))
    spec = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 3), (-1, 0), lattice=lat)
    [(_, v)] = _verdicts(spec)
    assert not v.completable
    assert all(r.rule == RULE_EDGE_NORMAL for r in v.violations())


def test_verdict_gauge_invariant():
    spec = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 3), (-1, 0))
    rng = random.Random(3)
    done = 0
    while done < 5:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c == 0:
            continue
        try:
            spec2 = mobius_transport(spec, Mobius(a, b, c, d))
        except Exception:
            continue
        done += 1
        flags1 = [(v.completable, v.extends_ambitoric)
                  for _c, v in _verdicts(spec)]
        flags2 = [(v.completable, v.extends_ambitoric)
                  for _c, v in _verdicts(spec2)]
        assert flags1 == flags2


def test_p_locus_corner_rejected_under_gp():
    spec = make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -1, -1],
                     (1, 2), (-1, 0), metric=metric_gp(Quadratic(1, 0, 2)))
    [(_, v)] = _verdicts(spec)
    assert not v.completable
    bad = [r for r in v.violations() if r.rule == RULE_CORNER]
    assert bad and "P-locus" in bad[0].detail


def test_complete_orbifold_check_accepts(hyperbolic_spec):
    ok, diags = complete_orbifold_check(
        hyperbolic_spec.q, hyperbolic_spec.x_interval,
        hyperbolic_spec.y_interval, I2,
        hyperbolic_spec.A, hyperbolic_spec.B)
    assert ok, diags


def test_complete_orbifold_check_rejects_fold():
    ok, diags = complete_orbifold_check(
        Quadratic(0, 1, 0), Interval(1, 2), Interval(-3, 0), I2,
        Poly([-2, 3, -1]), Poly([0, -3, -1]))
    assert not ok
    assert any("fold" in d or "changes sign" in d for d in diags)
