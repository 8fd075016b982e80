from . import polynomial as poly
from ..utils.errors import DivisionByZeroError, FieldMismatchError, ReducibleFieldError

from fractions import Fraction
import math


class FieldElement:
    """ Exact element sum(c_i beta^i), 0 <= i < N, of a `BetaField`.

    Elements are immutable value objects. Arithmetic mixes freely with ints and Fractions; floats are refused
    so that an exact computation can never silently pick up a rounded value. Comparisons go through the
    certified sign of the difference.
    """
    __slots__ = ('field', 'coeffs')

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != field.degree:
            raise ValueError(f'expected {field.degree} coefficients, got {len(self.coeffs)}')

    def _check(self, field):
        if field is not self.field and field != self.field:
            raise FieldMismatchError(f'elements of {self.field!r} and {field!r} cannot be combined')

    def _coerce(self, other) -> 'FieldElement':
        if isinstance(other, FieldElement):
            other._check(self.field)
            return other
        if isinstance(other, float):
            raise FieldMismatchError(f'float {other!r} cannot enter exact arithmetic over {self.field!r}')
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    ########## RING OPERATIONS ##########
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, _reduce(self.field, poly.mul(list(self.coeffs), list(other.coeffs))))

    __rmul__ = __mul__

    def mul_beta(self) -> 'FieldElement':
        """ beta * self with a single reduction of the top coefficient. """
        top = self.coeffs[-1]
        shifted = [Fraction(0)] + list(self.coeffs[:-1])
        return FieldElement(self.field, [c + top * a for c, a in zip(shifted, self.field.coeffs)])

    def inverse(self) -> 'FieldElement':
        """ Multiplicative inverse through the extended Euclidean algorithm with P over the rationals.

        Raises:
            DivisionByZeroError: If the element is zero.
            ReducibleFieldError: If gcd(a, P) is not constant, which only happens for a reducible P.
        """
        if not self:
            raise DivisionByZeroError(f'zero has no inverse in {self.field!r}')
        r0, r1 = [Fraction(a) for a in self.field.poly], poly.trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = poly.divmod_poly(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly.sub(s0, poly.mul(q, s1))
        if poly.degree(r0) > 0:
            raise ReducibleFieldError(f'{self!r} shares a factor with the defining polynomial', poly=self.field.poly)
        return FieldElement(self.field, _reduce(self.field, poly.scale(s0, 1 / Fraction(r0[0]))))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZeroError('division by zero')
            return FieldElement(self.field, [a / other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** -k
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    ########## ORDER ##########
    def sign(self) -> int:
        return self.field.sign(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, float):
            return NotImplemented
        try:
            other = self._coerce(other)
        except FieldMismatchError:
            return False
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.field.coeffs, self.coeffs))

    def _compare(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign()

    def __lt__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s < 0

    def __le__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s <= 0

    def __gt__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s > 0

    def __ge__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self) -> int:
        guess = math.floor(self.to_float())
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def __ceil__(self) -> int:
        return -math.floor(-self)

    ########## CONVERSIONS ##########
    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_float(self) -> float:
        return self.field.to_float(self.coeffs)

    def __float__(self):
        return self.to_float()

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.field.interval(self.coeffs)

    def to_json(self) -> dict:
        return {
            **self.field.to_json(),
            'coeffs': [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, field=None) -> 'FieldElement':
        from .BetaField import BetaField
        if field is None:
            field = BetaField.from_json(data)
        elif [int(a) for a in data['poly']] != list(field.coeffs):
            raise FieldMismatchError(f'element of {data["poly"]} does not belong to {field!r}')
        return cls(field, [Fraction(int(num), int(den)) for num, den in data['coeffs']])

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f'{c}*b' if i == 1 else f'{c}*b^{i}')
        return f'FieldElement({" + ".join(terms) or "0"})'

    def __str__(self):
        return f'{self.to_float():.12g}'

    def __reduce__(self):
        return (FieldElement, (self.field, self.coeffs))


def _reduce(field, p: list) -> list:
    """ Reduces a coefficient list of any length modulo P, padding the result to length N. """
    p = [Fraction(c) for c in p]
    n = field.degree
    for k in range(len(p) - 1, n - 1, -1):
        top = p[k]
        if top:
            for i, a in enumerate(field.coeffs):
                if a:
                    p[k - n + i] += top * a
        p[k] = Fraction(0)
    p = p[:n]
    return p + [Fraction(0)] * (n - len(p))
