import numpy as np
import pytest

from ambitoric import FramePoint, curvature, eval_field, validate
from ambitoric.ansatz import METRIC_G0, METRIC_GMINUS, METRIC_GPLUS
from ambitoric.tensors import (
    SingularEvaluation,
    kaehler_volume_coefficient,
    metric_components,
    omega_top_coefficient,
    pfaffian4,
)


def _points(spec, n=3):
    return validate(spec)[0].sample_points(n)


def test_metric_symmetric_positive(any_spec):
    for x, y in _points(any_spec):
        g = metric_components(any_spec, METRIC_G0, x, y)
        assert np.allclose(g, g.T)
        assert np.all(np.linalg.eigvalsh(g) > 0)


def test_complex_structures_square_to_minus_id(any_spec):
    for x, y in _points(any_spec):
        pt = FramePoint(x, y)
        for name in ("J+", "J-"):
            J = eval_field(any_spec, name, pt).components
            assert np.max(np.abs(J @ J + np.eye(4))) < 1e-10


def test_structures_commute_opposite_orientation(any_spec):
    for x, y in _points(any_spec):
        pt = FramePoint(x, y)
        Jp = eval_field(any_spec, "J+", pt).components
        Jm = eval_field(any_spec, "J-", pt).components
        assert np.max(np.abs(Jp @ Jm - Jm @ Jp)) < 1e-10
        # opposite orientations: the products J+J- and J-J+ square to +Id
        K = Jp @ Jm
        assert np.max(np.abs(K @ K - np.eye(4))) < 1e-10


def test_kaehler_compatibility(any_spec):
    for x, y in _points(any_spec):
        pt = FramePoint(x, y)
        for s, met in (("+", METRIC_GPLUS), ("-", METRIC_GMINUS)):
            g = metric_components(any_spec, met, x, y)
            J = eval_field(any_spec, "J" + s, pt).components
            w = eval_field(any_spec, "omega" + s, pt).components
            assert np.max(np.abs(J.T @ g @ J - g)) < 1e-10
            assert np.max(np.abs(g @ J - w)) < 1e-10
            assert np.max(np.abs(w + w.T)) < 1e-12


def test_omega_closed(any_spec):
    # omega components depend on (x, y) only; check all dw_{ijk} numerically
    h = 1e-5
    for x, y in _points(any_spec, 2):
        def w(xx, yy, s):
            return eval_field(any_spec, "omega" + s,
                              FramePoint(xx, yy)).components

        for s in ("+", "-"):
            dw_x = (w(x + h, y, s) - w(x - h, y, s)) / (2 * h)
            dw_y = (w(x, y + h, s) - w(x, y - h, s)) / (2 * h)
            d = {0: dw_x, 1: dw_y, 2: np.zeros((4, 4)), 3: np.zeros((4, 4))}
            for i in range(4):
                for j in range(i + 1, 4):
                    for k in range(j + 1, 4):
                        val = d[i][j][k] - d[j][i][k] + d[k][i][j]
                        assert abs(val) < 1e-6


def test_pfaffian_convention():
    # dx^dy + dt1^dt2 has top power 2 dx^dy^dt1^dt2: Pf = 1
    w = np.zeros((4, 4))
    w[0, 1] = 1.0
    w[1, 0] = -1.0
    w[2, 3] = 1.0
    w[3, 2] = -1.0
    assert abs(pfaffian4(w) - 1.0) < 1e-14


def test_omega_top_vs_volume(any_spec):
    from ambitoric import conformal_factor
    for x, y in _points(any_spec, 2):
        f = float(conformal_factor(any_spec, x, y))
        AB = float(any_spec.A(x)) * float(any_spec.B(y))
        for s, ex in (("+", -2), ("-", 2)):
            lhs = omega_top_coefficient(any_spec, s, x, y)
            rhs = f ** ex / AB * kaehler_volume_coefficient(any_spec, s, x, y)
            assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(lhs))


def test_riemann_symmetries(hyperbolic_spec):
    x, y = _points(hyperbolic_spec, 3)[4]
    pack = curvature(hyperbolic_spec, METRIC_G0, FramePoint(x, y))
    R = pack.riemann
    scale = max(1.0, float(np.max(np.abs(R))))
    assert np.max(np.abs(R + np.swapaxes(R, 0, 1))) < 1e-4 * scale
    assert np.max(np.abs(R + np.swapaxes(R, 2, 3))) < 1e-4 * scale
    assert np.max(np.abs(R - np.transpose(R, (2, 3, 0, 1)))) < 1e-4 * scale
    # first Bianchi
    bianchi = R + np.transpose(R, (0, 2, 3, 1)) + np.transpose(R, (0, 3, 1, 2))
    assert np.max(np.abs(bianchi)) < 1e-3 * scale


def test_ricci_trace_matches_scalar(hyperbolic_spec):
    x, y = _points(hyperbolic_spec, 3)[4]
    pack = curvature(hyperbolic_spec, METRIC_G0, FramePoint(x, y))
    g = metric_components(hyperbolic_spec, METRIC_G0, x, y)
    s = float(np.trace(np.linalg.inv(g) @ pack.ricci))
    assert abs(s - pack.scalar) < 1e-6 * max(1.0, abs(s))


def test_curvature_refuses_points_near_the_fold():
    from conftest import make_spec
    from ambitoric import Quadratic
    spec = make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -3, -1],
                     (1, 2), (-3, 0))
    # q(x, y) = x + y vanishes next to this point
    with pytest.raises(SingularEvaluation):
        curvature(spec, METRIC_G0, FramePoint(1.5, -1.5001))
