from PLIM.algebra import BetaField, FieldElement, make_multinacci, make_pisot
from PLIM.utils.errors import InvalidDegreeError, NoDominantRootError

from fractions import Fraction
import mpmath
import pytest


@pytest.mark.parametrize('n, guess', [(2, 1.6), (3, 1.8), (4, 1.9), (5, 1.96)])
def test_multinacci_root_matches_mpmath(n, guess):
    field = make_multinacci(n)
    with mpmath.workprec(200):
        root = mpmath.findroot(lambda x: x ** n - sum(x ** i for i in range(n)), guess)
    assert abs(field.generator.to_float() - float(root)) < 1e-14


def test_refine_shrinks_enclosure():
    field = BetaField([1, 1, 1])
    lo0, hi0 = field.enclosure
    field.refine(100)
    lo1, hi1 = field.enclosure
    assert lo0 <= lo1 < hi1 <= hi0
    assert hi1 - lo1 <= Fraction(1, 2 ** 100)
    assert field.precision_bits >= 100


def test_golden_identities(golden):
    b = golden.generator
    assert b * b == b + 1
    assert (b - 1) * b == 1
    assert golden.beta_power(-1) == b - 1
    assert golden.beta_power(-2).to_float() == pytest.approx(0.3819660113, abs=1e-10)


def test_pisot_certificate():
    field = make_pisot([-1, 3])
    assert field.pisot_verified
    assert field.generator.to_float() == pytest.approx(2.6180339887, abs=1e-10)
    assert make_multinacci(3).pisot_verified


def test_non_pisot_is_flagged():
    # x^2 - 2 has the conjugate -sqrt(2) outside the unit disk
    field = BetaField([2, 0])
    assert not field.pisot_verified
    assert field.generator.to_float() == pytest.approx(2 ** 0.5)


def test_degree_and_root_errors():
    with pytest.raises(InvalidDegreeError):
        BetaField([1])
    with pytest.raises(InvalidDegreeError):
        make_multinacci(1)
    # x^2 + x + 1 has no real roots
    with pytest.raises(NoDominantRootError):
        BetaField([-1, -1])


def test_multinacci_flag(tribonacci):
    assert tribonacci.is_multinacci
    assert tribonacci.degree == 3
    assert not make_pisot([-1, 3]).is_multinacci


def test_json_round_trip(tribonacci):
    assert BetaField.from_json(tribonacci.to_json()) == tribonacci
    x = tribonacci.element([Fraction(1, 3), -2, Fraction(5, 7)])
    assert FieldElement.from_json(x.to_json(), tribonacci) == x


@pytest.mark.parametrize('n', range(2, 9))
def test_multinacci_identities_are_exact(n):
    field = make_multinacci(n)
    b = field.generator
    total = sum((field.beta_power(-i) for i in range(1, n + 1)), field.zero)
    assert field.one - total == field.zero
    assert 2 - b - field.beta_power(-n) == field.zero
