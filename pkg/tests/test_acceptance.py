from PLIM.harness import SweepConfig, SweepRunner
from PLIM.maps import gen_beta, make_map, parse_map_spec, skew_tent
from PLIM.matching import flowchart_check, matching_index
from PLIM.orbits import distortion_profile, param_window, q_sequence
from PLIM.utils import Mode, Outcome

from fractions import Fraction
from pathlib import Path
import math
import mpmath
import pytest
import random

CONFIG = Path(__file__).with_name('tetrabonacci.cfg')


@pytest.mark.slow
def test_tetrabonacci_sweep_matches_almost_everywhere():
    cfg = SweepConfig.load(CONFIG).override(start='zero-one')
    first = SweepRunner(progress=False).sweep_matching(cfg)
    second = SweepRunner(progress=False).sweep_matching(cfg.override(workers=1))
    assert [r.to_dict() for r in first] == [r.to_dict() for r in second]
    assert sum(r.outcome == 'matched' for r in first) >= 95


@pytest.mark.slow
def test_tetrabonacci_config_has_four_curves():
    cfg = SweepConfig.load(CONFIG)
    starts = cfg.starts(cfg.build_field())
    assert [tag for tag, _, _ in starts][0] == 'zero-one'
    assert len(starts) == 4


def random_alphas(field, count, seed, denominator=100_003):
    """ Distinct rationals k/denominator strictly inside (2 - beta, 1/beta). """
    beta = field.generator.to_float()
    lo, hi = math.floor((2 - beta) * denominator) + 1, math.ceil(denominator / beta) - 1
    return [Fraction(k, denominator) for k in random.Random(seed).sample(range(lo, hi), count)]


@pytest.mark.slow
def test_tribonacci_matches_almost_everywhere(tribonacci):
    matched = 0
    for alpha in random_alphas(tribonacci, 1000, seed=3):
        result = matching_index(tribonacci, alpha)
        if result.outcome != Outcome.MATCHED:
            continue
        matched += 1
        report = flowchart_check(result, tribonacci)
        assert report.ok, (alpha, report.off_graph)
    assert matched >= 995


@pytest.mark.slow
def test_golden_mean_matches_almost_everywhere(golden):
    outcomes = [matching_index(golden, alpha).outcome for alpha in random_alphas(golden, 500, seed=5)]
    assert outcomes.count(Outcome.MATCHED) >= 498


def oracle_kappa(field, alpha, limit=1000):
    """ Matching index from a direct orbit of 0 and 1 at 4096 bits, or None when an orbit touches 0 = 1. """
    n = field.degree
    with mpmath.workprec(4096):
        beta = mpmath.findroot(lambda x: x ** n - sum(x ** i for i in range(n)), field.generator.to_float())
        coeffs = field.element(alpha).coeffs
        a = sum(mpmath.mpf(c.numerator) / c.denominator * beta ** i for i, c in enumerate(coeffs))
        tol = mpmath.mpf('1e-30')
        x, y = mpmath.mpf(0), mpmath.mpf(1)
        for step in range(1, limit + 1):
            x, y = beta * x + a, beta * y + a
            x, y = x - mpmath.floor(x), y - mpmath.floor(y)
            gap = abs(x - y)
            if gap < tol or gap > 1 - tol:
                return step
            if min(x, 1 - x, y, 1 - y) < tol:
                return None
    return None


@pytest.mark.slow
def test_tetrabonacci_curves_and_oracle():
    cfg = SweepConfig.load(CONFIG)
    field = cfg.build_field()
    records = SweepRunner(progress=False).sweep_matching(cfg)
    for tag, _, _ in cfg.starts(field):
        curve = [r for r in records if r.start == tag]
        assert len(curve) == 100
        assert sum(r.outcome == 'matched' for r in curve) >= 95, tag

    points = cfg.points(field)
    zero_one = {r.index: r for r in records if r.start == 'zero-one'}
    compared = 0
    for index in range(5, 100, 10):
        record = zero_one[index]
        expected = oracle_kappa(field, points[index])
        if expected is None or record.kappa is None:
            continue
        assert record.kappa == expected, index
        compared += 1
    assert compared >= 5


@pytest.mark.slow
def test_window_identities_along_the_orbit(tribonacci):
    m = make_map(parse_map_spec('genbeta:alpha=2/5,beta=multinacci(3)', Mode.EXACT))
    b = tribonacci.generator
    for n in range(10, 61):
        window = param_window(m, n)
        assert window.exact
        assert window.lo.t <= m.alpha < window.hi.t
        for residual in window.endpoint_identities().values():
            assert residual is None or residual == 0
        slope = float((b ** n - 1) / (b - 1))
        for t in (window.lo.t, m.alpha, window.hi.t):
            assert float(window.curve.derivative(t, window.itinerary)) == pytest.approx(slope, rel=1e-8)


@pytest.mark.slow
def test_q_sequences_and_distortion_decay():
    rng = random.Random(8)
    for _ in range(20):
        alpha = rng.uniform(0.4, 0.6)
        tent = skew_tent(alpha, rng.uniform(0.85, 0.99))
        assert q_sequence(tent, 40).rate < 1
        assert distortion_profile(tent, 14).rate < 1

        beta = rng.uniform(1.2, 1.95)
        report = q_sequence(gen_beta(rng.uniform(0.0, 1.0), beta), 40)
        assert report.rate < 1
        closed = [(beta ** n - 1) / (beta ** n * (beta - 1)) for n in range(1, 41)]
        assert report.values == pytest.approx(closed, abs=1e-12)
        assert distortion_profile(gen_beta(rng.uniform(0.05, 0.95), beta), 10).rate < 1
