import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambitoric import (
    Interval,
    MomentError,
    Poly,
    Polygon,
    Quadratic,
    convexity_check,
    delzant_check,
    fold_conic,
    identify_t,
    level_set_line,
    moment_map,
    p_image_line,
    validate,
)
from ambitoric.moment import hamiltonian_residual, moment_pairing

from conftest import I2, make_spec


def test_moment_map_exact_on_rationals(hyperbolic_spec):
    mp = moment_map(hyperbolic_spec, "-", F(5, 2), F(-1, 2))
    assert isinstance(mp.mu1, F) and isinstance(mp.mu2, F)
    # tau = {1, z^2}: mu- = (-1/(x-y), -xy/(x-y))
    assert mp.mu1 == F(-1, 3)
    assert mp.mu2 == F(5, 12)


def test_moment_map_poles(hyperbolic_spec):
    with pytest.raises(MomentError):
        moment_map(hyperbolic_spec, "-", F(1), F(1))
    with pytest.raises(MomentError):
        moment_map(hyperbolic_spec, "+", F(1), F(-1))   # q(x,y) = x + y = 0


def test_identify_t_normal_forms(hyperbolic_spec):
    # q = 2z: the constant 1 sits at (1, 0), z^2 at (0, -1) in the '+' chart
    assert identify_t(hyperbolic_spec, Quadratic(0, 0, 1), "+") == (1, 0)
    assert identify_t(hyperbolic_spec, Quadratic(1, 0, 0), "+") == (0, -1)
    # and the '-' chart uses the tau basis directly
    assert identify_t(hyperbolic_spec, Quadratic(1, 0, 0), "-") == (0, 1)


def test_identify_t_rejects_non_orthogonal(hyperbolic_spec):
    with pytest.raises(MomentError):
        identify_t(hyperbolic_spec, Quadratic(0, 1, 0), "+")


@given(st.fractions(min_value=-5, max_value=5, max_denominator=8),
       st.fractions(min_value=-5, max_value=5, max_denominator=8))
@settings(max_examples=40, deadline=None)
def test_identify_t_linear(a, b):
    spec = make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 3), (-1, 0))
    p1, p2 = Quadratic(1, 0, 0), Quadratic(0, 0, 1)
    combo = Quadratic(a, 0, b)
    v = identify_t(spec, combo, "+")
    v1 = identify_t(spec, p1, "+")
    v2 = identify_t(spec, p2, "+")
    assert v[0] == a * v1[0] + b * v2[0]
    assert v[1] == a * v1[1] + b * v2[1]


def test_fold_conic_hyperbolic_displayed_form(hyperbolic_spec):
    # mu- image of {q = 0}: 4 mu1 mu2 = -1
    c = fold_conic(hyperbolic_spec, "-")
    assert c.matrix == ((F(0), F(2), F(0)),
                       (F(2), F(0), F(0)),
                       (F(0), F(0), F(1)))


def test_fold_conic_elliptic_circle(elliptic_spec):
    c = fold_conic(elliptic_spec, "-")
    m1, m2 = F(3, 5), F(-4, 5)
    assert c.evaluate(m1, m2) == 0
    assert c.evaluate(F(1), F(1)) != 0


def test_fold_conic_parabolic_cases(parabolic_spec):
    cp = fold_conic(parabolic_spec, "+")     # mu1^2 = 4 mu2
    assert cp.evaluate(F(2), F(1)) == 0
    cm = fold_conic(parabolic_spec, "-")
    assert cm.degenerate
    assert set(cm.points) == {(F(0), F(1, 2)), (F(0), F(-1, 2))}


def test_moment_pairing_vanishes_on_p_zero(hyperbolic_spec):
    # p = z^2 - 4 vanishes on xy = 4
    p = Quadratic(1, 0, -4)
    for x in (F(5, 2), F(8, 3), F(17, 6)):
        y = 4 / x
        val = moment_pairing(hyperbolic_spec, "+", p, x, y)
        assert val == 0


def test_p_image_line_normal_matches_identify_t(hyperbolic_spec):
    p = Quadratic(1, 0, -4)
    line = p_image_line(hyperbolic_spec, "+", p)
    v = identify_t(hyperbolic_spec, p, "+")
    # primitive normal is proportional to v
    assert line.normal[0] * v[1] == line.normal[1] * v[0]


def test_level_set_line_tangency(hyperbolic_spec):
    line = level_set_line(hyperbolic_spec, "-", "X", F(2))
    assert line.tangency is not None and line.tangency.ok
    # sampled points of the level set satisfy the line equation
    for y in (F(-1, 2), F(-1, 4), F(-3, 4)):
        mp = moment_map(hyperbolic_spec, "-", F(2), y)
        assert line.normal[0] * mp.mu1 + line.normal[1] * mp.mu2 == line.offset


def test_level_set_line_at_infinity():
    spec = make_spec(Quadratic(0, 0, 1), [-1, 1, -1, 1], [-2, -3, -1],
                     (1, None), (-2, -1))
    from ambitoric.quadratics import OO
    line = level_set_line(spec, "-", "X", OO)
    assert line.tangency is None or line.tangency.ok


def test_hamiltonian_property(hyperbolic_spec):
    pts = validate(hyperbolic_spec)[0].sample_points(4)
    for x, y in pts[:6]:
        for sign in ("+", "-"):
            for K in ((F(1), F(0)), (F(0), F(1)), (F(2), F(-3))):
                res = hamiltonian_residual(hyperbolic_spec, sign, K, x, y)
                assert res < 1e-6


def test_delzant_square():
    poly = Polygon(vertices=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)),
                   normals=((F(0), F(1)), (F(-1), F(0)),
                            (F(0), F(-1)), (F(1), F(0))))
    assert poly.edge_check()
    verdicts = delzant_check(poly, I2)
    assert all(v.ok for v in verdicts)


def test_delzant_fails_on_coarse_lattice():
    poly = Polygon(vertices=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)),
                   normals=((F(0), F(1)), (F(-1), F(0)),
                            (F(0), F(-1)), (F(1), F(0))))
    lat = ((F(2), F(0)), (F(0), F(1)))
    verdicts = delzant_check(poly, lat)
    assert not all(v.ok for v in verdicts)


def test_convexity_grid_and_annulus():
    grid = [(i / 10, j / 10) for i in range(11) for j in range(11)]
    ok, witness = convexity_check(grid)
    assert ok
    ring = [(math.cos(t) * r, math.sin(t) * r)
            for r in (1.0, 1.1, 1.2)
            for t in [k * math.pi / 40 for k in range(80)]]
    ok, witness = convexity_check(ring)
    assert not ok
    assert witness is not None
    # the witness sits in the hole
    assert math.hypot(witness.mu1, witness.mu2) < 1.0


def test_convexity_collinear_by_convention():
    pts = [(t, 2 * t) for t in [k / 20 for k in range(21)]]
    ok, _ = convexity_check(pts)
    assert ok
