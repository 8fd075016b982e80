from PLIM.maps import gen_beta, make_map, parse_map_spec, skew_tent
from PLIM.orbits import XiCurve, distortion_profile, param_window
from PLIM.utils import Mode
from PLIM.utils.errors import WindowUnderflowError

import numpy as np
import pytest


def test_exact_window_contains_parameter():
    m = make_map(parse_map_spec('genbeta:alpha=1/3,beta=multinacci(3)', Mode.EXACT))
    window = param_window(m, 6)
    assert window.exact
    assert window.lo.t <= m.alpha < window.hi.t
    assert window.lo.side == 'c+' and window.hi.side == 'c-'
    assert window.itinerary == XiCurve(m, 6).itinerary()
    for residual in window.endpoint_identities().values():
        assert residual is None or residual == 0


def test_window_image_spans_the_circle():
    m = make_map(parse_map_spec('genbeta:alpha=1/3,beta=multinacci(3)', Mode.EXACT))
    window = param_window(m, 6)
    lo, hi = window.lo, window.hi
    # At c+ edges xi_r reaches 0 and at c- edges 1
    if lo.r is not None:
        assert window.xi_inside(lo.t, lo.r) == 0
    if hi.r is not None:
        assert window.xi_inside(hi.t, hi.r) == 1
    assert window.q(window.lo.t) == 0.0 and window.q(window.hi.t) == 1.0


def test_bisection_agrees_with_affine_solution():
    m = gen_beta(0.3, 1.8)
    affine = param_window(m, 6, 'affine')
    bisect = param_window(m, 6, 'bisect')
    assert bisect.lo.t == pytest.approx(float(affine.lo.t), abs=1e-12)
    assert bisect.hi.t == pytest.approx(float(affine.hi.t), abs=1e-12)
    assert bisect.itinerary == affine.itinerary


def test_skew_tent_window_by_bisection():
    m = skew_tent(0.5, 0.9)
    window = param_window(m, 5)
    assert window.curve.varied == 'beta'
    assert window.lo.t < 0.9 < window.hi.t
    assert window.lo.side == 'c'


def test_window_underflow_on_boundary(tribonacci):
    # G^4(0) = 0 exactly at alpha = 1/2, so alpha sits on a window boundary
    m = gen_beta(0.5, tribonacci.generator.to_float())
    with pytest.raises(WindowUnderflowError):
        param_window(m, 6)


def test_window_rejects_small_n():
    with pytest.raises(ValueError):
        param_window(gen_beta(0.3, 1.8), 1)
    with pytest.raises(ValueError):
        param_window(skew_tent(0.5, 0.9), 5, 'affine')


def test_gen_beta_has_no_distortion():
    report = distortion_profile(gen_beta(0.3, 1.8), 8)
    assert list(report.ns) == [4, 5, 6, 7, 8]
    assert np.allclose(report.distortion, 0.0)
    # Windows of larger n nest inside those of smaller n
    assert np.all(np.diff(report.widths) <= 1e-15)
