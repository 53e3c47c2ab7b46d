import math
from fractions import Fraction as F

import numpy as np
import pytest

from ambitoric import (
    CSCData,
    FramePoint,
    Interval,
    KerrParams,
    Poly,
    Quadratic,
    Quartic,
    ValidationError,
    csc_construct,
    curvature,
    kerr,
    scalar_closed_form,
    standard_polygon,
    validate,
)
from ambitoric.ansatz import METRIC_GMINUS, METRIC_GPLUS
from ambitoric.moment import delzant_check
from ambitoric.quadratics import inner, transvectant2
from ambitoric.special import EXTERIOR, INTERIOR, hirzebruch_normal_sum
from ambitoric.tensors import metric_components


def test_kerr_params_validation():
    with pytest.raises(ValidationError):
        KerrParams(1, 1)
    with pytest.raises(ValidationError):
        KerrParams(0, 0)


def test_kerr_exact_horizon_roots():
    p = KerrParams(1, F(3, 4))    # M^2 + alpha^2 = 25/16
    xm, xp, exact = p.horizon_roots()
    assert exact
    assert (xm, xp) == (F(-1, 4), F(9, 4))


def test_kerr_approx_roots_bracket():
    p = KerrParams(1, F(1, 2))
    xm, xp, exact = p.horizon_roots()
    assert not exact
    A = Poly([-F(1, 4), -2, 1])
    assert A(xm) > 0 and A(xp) > 0    # nudged outward into positivity
    assert float(xp - xm) == pytest.approx(2 * math.sqrt(1.25), abs=1e-6)


def test_kerr_interior_has_fold_components():
    spec = kerr(KerrParams(1, F(3, 4)), INTERIOR)
    comps = validate(spec)
    assert len(comps) >= 2
    assert {(c.sign_xy, c.sign_q) for c in comps} == \
        {(-1, -1), (-1, 1), (1, -1)}


def test_csc_orthogonality_enforced():
    with pytest.raises(ValidationError):
        csc_construct(CSCData(q=Quadratic(0, 1, 0), p=Quadratic(0, 1, 0),
                              rho=Quadratic(0, 0, 1),
                              R=Quartic(1, 0, 0, 0, 0)))


def test_csc_polynomials_split_exactly():
    data = CSCData(q=Quadratic(0, 1, 0), p=Quadratic(1, 0, -4),
                   rho=Quadratic(1, 1, 4), R=Quartic(1, 4, 0, 1, 1))
    assert inner(data.p, data.q) == 0
    assert inner(data.rho, data.p) == 0
    assert inner(transvectant2(data.q, data.R), data.p) == 0
    spec, report = csc_construct(data)
    prho = data.p.as_poly() * data.rho.as_poly()
    assert (spec.A + spec.B).coeffs == (prho + prho).coeffs
    assert (spec.A - spec.B).coeffs == \
        (data.R.as_poly() + data.R.as_poly()).coeffs
    assert not report.einstein


def test_einstein_case_is_einstein():
    # rho = 2q gives Ric = lambda g
    data = CSCData(q=Quadratic(0, 1, 0), p=Quadratic(1, 0, -4),
                   rho=Quadratic(0, 2, 0), R=Quartic(1, 0, 1, 0, 1))
    spec, report = csc_construct(
        data, x_interval=Interval(-7, -1),
        y_interval=Interval(F(-43, 32), F(-13, 32)))
    assert report.einstein
    comp = validate(spec)[0]
    x, y = comp.representative()
    pack = curvature(spec, spec.metric, FramePoint(float(x), float(y)))
    g = metric_components(spec, spec.metric, float(x), float(y))
    lam = pack.scalar / 4.0
    assert np.max(np.abs(pack.ricci - lam * g)) < 1e-4 * max(1.0, abs(lam))


def test_scalar_closed_form_pole_guard(hyperbolic_spec):
    with pytest.raises(ZeroDivisionError):
        scalar_closed_form(hyperbolic_spec, "-", 2.5, 2.5)


def test_scalar_closed_form_constant_coefficients():
    # constant A, B: s_- reduces to -12 (A + B) / ((x - y) q(x, y))
    from conftest import make_spec
    spec = make_spec(Quadratic(0, 1, 0), [5], [3], (2, 3), (-1, 0))
    v = scalar_closed_form(spec, "-", 2.5, -0.5)
    assert v == pytest.approx(-12.0 * 8 / (3.0 * 2.0))


def test_cp2_polygon():
    poly, lattice = standard_polygon("cp2")
    assert poly.edge_check()
    assert all(v.ok for v in delzant_check(poly, lattice))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_hirzebruch_polygons(k):
    poly, lattice = standard_polygon(f"hirzebruch:{k}")
    assert poly.edge_check()
    assert all(v.ok for v in delzant_check(poly, lattice))
    assert hirzebruch_normal_sum(k)


def test_unknown_polygon_kind():
    with pytest.raises(ValueError):
        standard_polygon("dP3")
