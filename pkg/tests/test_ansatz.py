import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitoric import (
    AnsatzSpec,
    Interval,
    Mobius,
    Poly,
    Quadratic,
    ValidationError,
    conformal_factor,
    fibre_volume,
    mobius_transport,
    validate,
)
from ambitoric.ansatz import (
    METRIC_G0,
    METRIC_GMINUS,
    METRIC_GPLUS,
    lattice_contains,
    metric_gp,
)

from conftest import make_spec


def test_rejects_nonpositive_A():
    # A has a root at 3 inside the interval; caught at validation time
    spec = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 4), (-1, 0))
    with pytest.raises(ValidationError):
        validate(spec)


def test_rejects_degenerate_interval():
    with pytest.raises(ValidationError):
        Interval(F(2), F(2))


def test_validate_single_component(hyperbolic_spec):
    comps = validate(hyperbolic_spec)
    assert len(comps) == 1
    assert comps[0].sign_xy == 1 and comps[0].sign_q == 1


def test_validate_finds_fold_components():
    # q = x + y changes sign on (1,2) x (-3,0)
    spec = make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -3, -1],
                     (1, 2), (-3, 0))
    comps = validate(spec)
    assert {(c.sign_xy, c.sign_q) for c in comps} == {(1, 1), (1, -1)}


def test_validate_idempotent(any_spec):
    a = [(c.sign_xy, c.sign_q) for c in validate(any_spec)]
    b = [(c.sign_xy, c.sign_q) for c in validate(any_spec)]
    assert a == b


def test_conformal_factor_exact(hyperbolic_spec):
    # f = q(x,y)/(x-y) on rationals stays rational
    f = conformal_factor(hyperbolic_spec, F(5, 2), F(-1, 2))
    assert f == F(2) / F(3)


def test_fibre_volume_geometric_mean(any_spec):
    for x, y in validate(any_spec)[0].sample_points(4):
        v0 = fibre_volume(any_spec, METRIC_G0, x, y)
        vp = fibre_volume(any_spec, METRIC_GPLUS, x, y)
        vm = fibre_volume(any_spec, METRIC_GMINUS, x, y)
        assert abs(v0 * v0 - vp * vm) < 1e-9 * max(1.0, v0 * v0)


def test_lattice_membership():
    lat = ((F(2), F(1)), (F(0), F(1)))   # generators (2,0) and (1,1)
    assert lattice_contains(lat, (F(3), F(1)))
    assert not lattice_contains(lat, (F(1), F(0)))


def test_serialization_roundtrip(any_spec):
    d = any_spec.to_dict()
    json.dumps(d)   # must be JSON-clean
    back = AnsatzSpec.from_dict(d)
    assert back == any_spec


def test_serialization_infinite_interval():
    spec = make_spec(Quadratic(0, 0, 1), [-1, 1, -1, 1], [-2, -3, -1],
                     (1, None), (-2, -1))
    back = AnsatzSpec.from_dict(spec.to_dict())
    assert back.x_interval.hi is None
    assert back == spec


def test_gp_metric_requires_orthogonal_p(hyperbolic_spec):
    with pytest.raises(ValidationError):
        make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                  (2, 3), (-1, 0), metric=metric_gp(Quadratic(0, 1, 1)))


def test_mobius_transport_preserves_conformal_factor(hyperbolic_spec):
    m = Mobius(1, 1, 0, 1)   # z -> z + 1
    spec2 = mobius_transport(hyperbolic_spec, m)
    x, y = F(5, 2), F(-1, 2)
    assert conformal_factor(spec2, m.apply(x), m.apply(y)) == \
        conformal_factor(hyperbolic_spec, x, y)


def test_mobius_transport_rejects_pole_in_interval(hyperbolic_spec):
    with pytest.raises(ValidationError):
        mobius_transport(hyperbolic_spec, Mobius(0, 1, 1, F(-5, 2)))


mob_entries = st.integers(min_value=-4, max_value=4)


@given(st.tuples(mob_entries, mob_entries, mob_entries, mob_entries))
@settings(max_examples=40, deadline=None)
def test_transport_roundtrip_exact(abcd):
    spec = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 3), (-1, 0))
    a, b, c, d = abcd
    if a * d - b * c == 0:
        return
    m = Mobius(a, b, c, d)
    try:
        spec2 = mobius_transport(spec, m)
    except ValidationError:
        return   # pole inside an interval: correctly refused
    spec3 = mobius_transport(spec2, m.inverse())
    assert spec3.to_dict() == spec.to_dict()
