from PLIM.maps import gen_beta, skew_tent
from PLIM.orbits import attractor, check_boundary, cover_time, density_profile, image_union
from PLIM.orbits.Attractor import core_interval
from PLIM.utils.errors import BoundaryOffOrbitError, FragmentationError, InvalidParametersError

import numpy as np
import pytest


def test_beta_transformation_fills_the_circle():
    cycle = attractor(gen_beta(0.0, 1.5))
    assert len(cycle.components) == 1
    assert cycle.components[0] == pytest.approx((0.0, 1.0))
    assert cycle.measure == pytest.approx(1.0)
    assert cycle.boundary_sources == {}
    assert cycle.contains(0.5)


def test_image_union_splits_at_breakpoints():
    m = gen_beta(0.0, 1.5)
    # [0, 1] maps onto [0, 1) through both branches
    assert image_union(m, [(0.0, 1.0)]) == pytest.approx([(0.0, 1.0)])
    assert image_union(m, [(0.0, 0.2)]) == pytest.approx([(0.0, 0.3)])


def test_cover_time():
    m = gen_beta(0.0, 1.5)
    cycle = attractor(m)
    assert cover_time(m, (0.0, 1.0), cycle=cycle) == 1
    steps = cover_time(m, (0.4, 0.41), cycle=cycle)
    assert steps is not None and steps > 1


def test_attractor_errors():
    with pytest.raises(InvalidParametersError):
        attractor(skew_tent(0.5, 0.9))
    with pytest.raises(FragmentationError):
        attractor(gen_beta(0.3, 1.8), cap=0)


def test_skew_tent_core():
    m = skew_tent(0.5, 0.9)
    assert core_interval(m) == pytest.approx([(0.18, 0.9)])
    profile = density_profile(m, 0.3, 5000, 0.01)
    assert profile.cells >= 72
    assert 0.0 < profile.fraction <= 1.0
    assert profile.origin == pytest.approx(0.18)


def test_density_of_tribonacci_orbit(tribonacci):
    m = gen_beta(0.4, tribonacci.generator.to_float())
    profile = density_profile(m, 0.0, 100_000, 0.01)
    assert profile.fraction >= 0.95
    stats = profile.quantiles()
    assert stats['median'] <= stats['q90'] <= stats['max']
    rows = profile.rows()
    assert len(rows) == profile.cells
    assert sum(1 for _, t in rows if t >= 0) == profile.visited


def test_first_visits_are_orbit_times():
    m = gen_beta(0.0, 1.5)
    profile = density_profile(m, 0.1, 200, 0.1)
    orbit = m.iterate_float(0.1, 200)
    for (left, t) in profile.rows():
        if t >= 0:
            assert left - 1e-12 <= orbit[t] < left + 0.1 + 1e-12
            assert not np.any((orbit[:t] >= left + 1e-12) & (orbit[:t] < left + 0.1 - 1e-12))


def test_density_rejects_bad_cells():
    with pytest.raises(ValueError):
        density_profile(gen_beta(0.0, 1.5), 0.1, 10, 0.0)


@pytest.mark.parametrize('alpha, beta', [(0.3, 1.1), (0.1, 1.2), (0.45, 1.05), (0.0, 1.3)])
def test_small_slopes_settle_on_one_component(alpha, beta):
    m = gen_beta(alpha, beta)
    cycle = attractor(m)
    assert cycle.components == pytest.approx([(0.0, 1.0)])
    assert cycle.boundary_sources == {}


@pytest.mark.parametrize('alpha, beta', [(0.3, 1.1), (0.1, 1.2)])
def test_small_slope_cycle_agrees_with_a_histogram(alpha, beta):
    m = gen_beta(alpha, beta)
    cycle = attractor(m)
    orbit = m.iterate_float(0.123, 200_000)[1000:]
    counts, _ = np.histogram(orbit, bins=20, range=(0.0, 1.0))
    assert np.all(counts > 0)
    assert all(cycle.contains(x) for x in orbit[::97])


def test_boundary_must_lie_on_critical_orbits():
    m = gen_beta(0.0, 1.5)
    # 1.5 * 1 - 1 = 0.5 is the first image of c-
    assert check_boundary(m, [(0.0, 0.5)]) == {0.5: ('c-', 1)}
    with pytest.raises(BoundaryOffOrbitError):
        check_boundary(m, [(0.0, 0.5), (0.6, 1.0)])
