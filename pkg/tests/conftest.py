"""Shared fixtures: normal-form specs on nice positivity boxes."""

from fractions import Fraction as F

import pytest

from ambitoric import AnsatzSpec, Interval, Poly, Quadratic
from ambitoric.ansatz import METRIC_G0

I2 = ((F(1), F(0)), (F(0), F(1)))


def make_spec(q, A, B, xr, yr, metric=METRIC_G0, lattice=I2):
    return AnsatzSpec(q=q, A=Poly(A), B=Poly(B),
                      x_interval=Interval(*xr), y_interval=Interval(*yr),
                      lattice=lattice, metric=metric)


@pytest.fixture
def hyperbolic_spec():
    # q(x,y) = x + y > 0 on (2,3) x (-1,0), A,B positive with simple roots
    return make_spec(Quadratic(0, 1, 0), [-12, 10, -2], [0, -2, -2],
                     (2, 3), (-1, 0))


@pytest.fixture
def parabolic_spec():
    return make_spec(Quadratic(0, 0, 1), [-2, 3, -1], [0, -3, -1],
                     (1, 2), (-3, -2))


@pytest.fixture
def elliptic_spec():
    # q(x,y) = xy + 1 > 0 on (1,2) x (0,1) minus nothing; x > y throughout
    return make_spec(Quadratic(1, 0, 1), [-2, 3, -1], [0, 1, -1],
                     (1, 2), (0, 1))


@pytest.fixture(params=["hyperbolic", "parabolic", "elliptic"])
def any_spec(request, hyperbolic_spec, parabolic_spec, elliptic_spec):
    return {"hyperbolic": hyperbolic_spec,
            "parabolic": parabolic_spec,
            "elliptic": elliptic_spec}[request.param]
