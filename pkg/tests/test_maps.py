from PLIM.maps import gen_beta, make_map, parse_map_spec, skew_tent
from PLIM.utils import MapKind, Mode
from PLIM.utils.errors import (BreakpointAmbiguityError, ConfigError, InvalidParametersError, NoFixedPointError,
                               OutOfDomainError)

from fractions import Fraction
from hypothesis import assume, given, settings, strategies as st
import mpmath
import pytest

unit = st.fractions(min_value=0, max_value=1, max_denominator=200)


def test_parse_exact_spec(tribonacci):
    params = parse_map_spec('genbeta:alpha=1/2,beta=multinacci(3)', Mode.EXACT)
    assert params.kind == MapKind.GEN_BETA
    assert params.beta == tribonacci.generator
    assert params.alpha == Fraction(1, 2)
    assert params.to_spec() == 'genbeta:alpha=1/2,beta=multinacci(3)'
    float_params = parse_map_spec('genbeta:alpha=2-beta,beta=multinacci(4)')
    assert float_params.mode == Mode.FLOAT
    assert float_params.alpha == pytest.approx(2 - 1.9275619754829253)


def test_parse_errors():
    for text in ('circle:alpha=1/2,beta=2', 'genbeta', 'genbeta:alpha=1/2', 'skewtent:alpha=0.4,beta=0.9,gamma=1'):
        with pytest.raises(ConfigError):
            parse_map_spec(text)


def test_gen_beta_fixed_point(golden):
    m = make_map(parse_map_spec('genbeta:alpha=1/2,beta=multinacci(2)', Mode.EXACT))
    p = m.fixed_point()
    assert m.eval(p) == (p, 1)
    assert p == golden.generator / 2
    assert m.to_float(p) == pytest.approx(0.80902, abs=1e-5)


def test_gen_beta_one_sided_limits_at_breakpoint(golden):
    m = make_map(parse_map_spec('genbeta:alpha=1/2,beta=multinacci(2)', Mode.EXACT))
    c1 = m.breakpoints()[0]
    assert c1 == Fraction(1, 2) / golden.generator
    assert m.eval(c1) == (0, 1)
    assert m.eval_left(c1) == (1, 0)
    assert m.eval_right(c1) == (0, 1)
    assert m.eval_left(m.lift(1)) == (golden.generator + Fraction(1, 2) - 2, 2)


def test_gen_beta_float_guard_band():
    m = gen_beta(0.5, 1.618033988749895)
    c1 = (1 - 0.5) / 1.618033988749895
    with pytest.raises(BreakpointAmbiguityError):
        m.eval(c1 + 1e-14)
    assert m.eval(c1 + 1e-6)[1] == 1
    with pytest.raises(OutOfDomainError):
        m.eval(1.5)


def test_gen_beta_validation():
    with pytest.raises(InvalidParametersError):
        gen_beta(0.5, 0.9)
    with pytest.raises(InvalidParametersError):
        gen_beta(1.0, 1.5)
    with pytest.raises(NoFixedPointError):
        gen_beta(0.1, 1.5).fixed_point()


def test_gen_beta_geometry_and_inequalities(tribonacci):
    m = make_map(parse_map_spec('genbeta:alpha=1/2,beta=multinacci(3)', Mode.EXACT))
    geo = m.geometry()
    assert geo.ordering_ok
    assert geo.secondary['p_hat'] < geo.secondary['c1'] < geo.fixed_point < geo.secondary['c2']
    report = m.matching_inequalities()
    assert report['in_strip'] and report['pc1'] and report['pc2']


def test_exact_orbit_matches_mpmath(tribonacci):
    m = make_map(parse_map_spec('genbeta:alpha=1/3,beta=multinacci(3)', Mode.EXACT))
    exact = [m.to_float(x) for x, _ in m.orbit(0, 60)]
    with mpmath.workprec(400):
        beta = mpmath.findroot(lambda x: x ** 3 - x ** 2 - x - 1, 1.8)
        x, oracle = mpmath.mpf(0), [0.0]
        for _ in range(60):
            y = beta * x + mpmath.mpf(1) / 3
            x = y - mpmath.floor(y)
            oracle.append(float(x))
    assert max(abs(a - b) for a, b in zip(exact, oracle)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(unit, unit)
def test_gen_beta_symmetry(alpha, x):
    assume(alpha < 1 and 0 < x < 1)
    m = gen_beta(alpha, Fraction(3, 2), Mode.EXACT)
    conjugate = m.symmetry_conjugate()
    image = m.eval(1 - x)[0]
    assume(image != 0)
    assert image == 1 - conjugate.eval(x)[0]


def test_symmetric_reduction():
    m = gen_beta(Fraction(9, 10), Fraction(3, 2), Mode.EXACT)
    reduced, flipped = m.symmetric_reduction()
    assert flipped
    assert reduced.alpha == Fraction(3, 5)
    assert gen_beta(Fraction(1, 10), Fraction(3, 2), Mode.EXACT).symmetric_reduction()[1] is False


def test_skew_tent_geometry():
    m = skew_tent(Fraction(1, 2), Fraction(9, 10), Mode.EXACT)
    p = m.fixed_point()
    assert p == Fraction(9, 14)
    assert m.eval(p)[0] == p
    assert m.eval(Fraction(1, 2)) == (Fraction(9, 10), 'C')
    geo = m.geometry()
    assert geo.ordering_ok
    assert geo.secondary['second_image'] == Fraction(9, 50)


@settings(max_examples=50, deadline=None)
@given(unit)
def test_skew_tent_involution(x):
    m = skew_tent(Fraction(2, 5), Fraction(9, 10), Mode.EXACT)
    assume(x != m.alpha)
    x_hat = m.involution(x)
    assert m.eval(x_hat)[0] == m.eval(x)[0]


def test_skew_tent_validation():
    with pytest.raises(InvalidParametersError):
        skew_tent(0.3, 0.6)
    with pytest.raises(InvalidParametersError):
        skew_tent(0.0, 0.9)
    m = skew_tent(0.5, 0.9)
    with pytest.raises(BreakpointAmbiguityError):
        m.eval(0.5 + 1e-14)


def test_iterate_float_follows_eval():
    m = gen_beta(0.3, 1.9)
    orbit = m.iterate_float(0.0, 10)
    x = 0.0
    for j in range(1, 11):
        x = m.eval(x)[0]
        assert orbit[j] == pytest.approx(x, abs=1e-12)
