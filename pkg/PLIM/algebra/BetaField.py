from . import polynomial as poly
from ..utils.enumerators import DEFAULT_PRECISION_CAP_BITS, INITIAL_PRECISION_BITS
from ..utils.errors import InvalidDegreeError, NoDominantRootError, PrecisionExhaustedError, ReducibleFieldError
from ..utils.logger import get_logger

from fractions import Fraction
from math import lcm
import threading

# Radii 1 - 2**-k tried when certifying that every conjugate lies inside the unit disk
_PISOT_RADIUS_BITS = (4, 8, 16, 32, 64, 128)


class BetaField:
    """ The number field Q(beta) of the leading real root of P(x) = x^N - sum(a_i x^i).

    The field owns a dyadic enclosure [lo, hi] of beta stored as integers (L, H, e) with
    lo = L / 2**e and hi = H / 2**e. Refinement only ever shrinks the enclosure and is serialized by
    `self.lock`; elements of the field are immutable and can be shared freely.
    """

    def __init__(self, coeffs, precision_cap_bits=DEFAULT_PRECISION_CAP_BITS, debug=False):
        """ Isolates the dominant real root and certifies the Pisot property.

        Args:
            coeffs : Integers a_0..a_{N-1} of P(x) = x^N - (a_{N-1} x^{N-1} + ... + a_0).
            precision_cap_bits : Enclosure precision after which sign determination gives up.
            debug : Enables debug logging.

        Raises:
            InvalidDegreeError: If N < 2.
            NoDominantRootError: If P has no real root greater than 1.
        """
        self.coeffs = tuple(int(a) for a in coeffs)
        self.degree = len(self.coeffs)
        if self.degree < 2:
            raise InvalidDegreeError(f'defining polynomial must have degree >= 2, got {self.degree}', degree=self.degree)

        self.precision_cap_bits = precision_cap_bits
        self.debug = debug
        self.log = get_logger(__name__, debug)

        # x^N - sum a_i x^i, constant term first
        self.poly = [-a for a in self.coeffs] + [1]

        # Mutex lock guarding the enclosure
        self.lock = threading.Lock()
        self._bounds_cache = {}
        self._cache = {}

        self._isolate()
        self.refine(INITIAL_PRECISION_BITS)
        self.pisot_verified = self._verify_pisot()
        if not self.pisot_verified:
            self.log.warning(f'{self!r}: conjugates not certified inside the unit disk')

    @classmethod
    def multinacci(cls, n: int, **kwargs) -> 'BetaField':
        """ Field of the root in (1, 2) of x^N = x^{N-1} + ... + x + 1. """
        if n < 2:
            raise InvalidDegreeError(f'multinacci degree must be >= 2, got {n}', degree=n)
        return cls([1] * n, **kwargs)

    def __repr__(self):
        return f'BetaField({list(self.coeffs)})'

    def __eq__(self, other):
        return isinstance(other, BetaField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getstate__(self):
        state = self.__dict__.copy()
        del state['lock']
        del state['log']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.lock = threading.Lock()
        self.log = get_logger(__name__, self.debug)

    @property
    def is_multinacci(self) -> bool:
        return self.coeffs == (1,) * self.degree

    @property
    def enclosure(self) -> tuple[Fraction, Fraction]:
        with self.lock:
            return Fraction(self._lo, 1 << self._exp), Fraction(self._hi, 1 << self._exp)

    @property
    def precision_bits(self) -> int:
        """ Number of bits b with enclosure width <= 2**-b. """
        with self.lock:
            return self._exp - (self._hi - self._lo - 1).bit_length()

    ########## ELEMENTS ##########
    def element(self, value) -> 'FieldElement':
        """ Coerces an int, Fraction, decimal string, coefficient list or element into the field. """
        from .FieldElement import FieldElement
        if isinstance(value, FieldElement):
            value._check(self)
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.degree:
                raise ValueError(f'{len(value)} coefficients for a degree {self.degree} field')
            coeffs = [Fraction(c) for c in value] + [Fraction(0)] * (self.degree - len(value))
            return FieldElement(self, coeffs)
        return FieldElement(self, [Fraction(value)] + [Fraction(0)] * (self.degree - 1))

    @property
    def zero(self):
        return self._cached('zero', lambda: self.element(0))

    @property
    def one(self):
        return self._cached('one', lambda: self.element(1))

    @property
    def generator(self):
        return self._cached('beta', lambda: self.element([0, 1]))

    def beta_power(self, k: int):
        """ beta**k for any integer k, negative powers through the inverse. """
        return self._cached(('pow', k), lambda: self.generator ** k)

    def _cached(self, key, build):
        value = self._cache.get(key)
        if value is None:
            value = build()
            self._cache[key] = value
        return value

    ########## ROOT ISOLATION ##########
    def _isolate(self):
        """ Isolates the largest real root in (1, B] with B the Fujiwara bound.

        Bisects on Sturm counts, keeping the upper half whenever it still holds a root, until exactly one
        simple root separates the endpoints. A rational root hit by a midpoint gets a shrinking interval
        centred on it.
        """
        self._sturm = poly.sturm_sequence(self.poly)
        lo, hi, exp = 1, poly.fujiwara_bound(self.poly) + 1, 0

        def count(a, b, e):
            return poly.count_real_roots(self._sturm, Fraction(a, 1 << e), Fraction(b, 1 << e))

        if count(lo, hi, exp) == 0:
            raise NoDominantRootError(f'{self!r} has no real root greater than 1', poly=self.poly)

        while count(lo, hi, exp) != 1 or poly.sign_at(self.poly, lo, exp) == 0:
            lo, hi, exp = 2 * lo, 2 * hi, exp + 1
            mid = (lo + hi) // 2
            if count(mid, hi, exp) >= 1:
                lo = mid
            elif poly.sign_at(self.poly, mid, exp) == 0:
                lo, hi, exp = 2 * mid - 1, 2 * mid + 1, exp + 1
            else:
                hi = mid

        sign_lo, sign_hi = poly.sign_at(self.poly, lo, exp), poly.sign_at(self.poly, hi, exp)
        if sign_lo == sign_hi:
            raise ReducibleFieldError(f'{self!r}: dominant root is not simple', poly=self.poly)
        self._lo, self._hi, self._exp = lo, hi, exp
        self._sign_hi = sign_hi
        self.log.debug(f'{self!r}: isolated root in [{lo}/2^{exp}, {hi}/2^{exp}]')

    def refine(self, bits: int):
        """ Bisects the enclosure until its width is at most 2**-bits.

        The enclosure keeps P(lo) and P(hi) of opposite signs. A midpoint that is itself a root (possible
        only for reducible input) is stepped over by a quarter width so that the root stays interior.
        """
        with self.lock:
            lo, hi, exp = self._lo, self._hi, self._exp
            while (hi - lo) << bits > (1 << exp):
                lo, hi, exp = 2 * lo, 2 * hi, exp + 1
                mid = (lo + hi) // 2
                s = poly.sign_at(self.poly, mid, exp)
                if s == 0:
                    lo, hi, exp = 2 * lo, 2 * hi, exp + 1
                    mid = lo + hi - (lo + hi) // 2 + (hi - lo) // 4
                    s = poly.sign_at(self.poly, mid, exp)
                if s == self._sign_hi:
                    hi = mid
                else:
                    lo = mid
            self._lo, self._hi, self._exp = lo, hi, exp

    def _power_bounds(self):
        """ Integer bounds (lo_i, hi_i, scale) with lo_i / scale <= beta**i <= hi_i / scale, 0 <= i < N. """
        with self.lock:
            lo, hi, exp = self._lo, self._hi, self._exp
        cached = self._bounds_cache.get(exp)
        if cached is not None:
            return cached
        n = self.degree - 1
        lows = tuple(lo ** i << (exp * (n - i)) for i in range(self.degree))
        highs = tuple(hi ** i << (exp * (n - i)) for i in range(self.degree))
        bounds = (lows, highs, 1 << (exp * n))
        self._bounds_cache = {exp: bounds}
        return bounds

    def interval(self, coeffs) -> tuple[Fraction, Fraction]:
        """ Rational interval containing sum(c_i beta^i) at the current precision. """
        den = lcm(*(Fraction(c).denominator for c in coeffs))
        nums = [Fraction(c).numerator * (den // Fraction(c).denominator) for c in coeffs]
        lows, highs, scale = self._power_bounds()
        low = sum(n * (l if n > 0 else h) for n, l, h in zip(nums, lows, highs))
        high = sum(n * (h if n > 0 else l) for n, l, h in zip(nums, lows, highs))
        return Fraction(low, scale * den), Fraction(high, scale * den)

    def sign(self, coeffs) -> int:
        """ Certified sign of sum(c_i beta^i).

        Zero is decided on the coefficient vector. Otherwise the interval value is tightened by doubling
        the enclosure precision until it excludes zero.

        Raises:
            PrecisionExhaustedError: If the precision cap is reached first (reducible input only).
        """
        if not any(coeffs):
            return 0
        den = lcm(*(c.denominator for c in coeffs))
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        while True:
            lows, highs, _ = self._power_bounds()
            low = sum(n * (l if n > 0 else h) for n, l, h in zip(nums, lows, highs))
            if low > 0:
                return 1
            high = sum(n * (h if n > 0 else l) for n, l, h in zip(nums, lows, highs))
            if high < 0:
                return -1
            bits = self.precision_bits
            if bits >= self.precision_cap_bits:
                raise PrecisionExhaustedError(
                    f'{self!r}: sign undecided at {bits} bits', coeffs=[str(c) for c in coeffs])
            self.log.debug(f'{self!r}: refining enclosure to {min(2 * bits, self.precision_cap_bits)} bits')
            self.refine(min(2 * bits, self.precision_cap_bits))

    def to_float(self, coeffs) -> float:
        """ Float within 2**-50 of sum(c_i beta^i), refining when the interval is too wide. """
        if not any(coeffs):
            return 0.0
        while True:
            low, high = self.interval(coeffs)
            if high - low <= Fraction(1, 1 << 52) or self.precision_bits >= self.precision_cap_bits:
                return float((low + high) / 2)
            self.refine(min(2 * self.precision_bits, self.precision_cap_bits))

    ########## PISOT CERTIFICATE ##########
    def _verify_pisot(self) -> bool:
        """ Certifies that the N - 1 conjugates of beta lie strictly inside the unit disk.

        For radii rho = 1 - 2**-k the exact Schur-Cohn count of roots in |z| < rho is compared with N - 1;
        beta > 1 is the one root left outside.
        """
        for k in _PISOT_RADIUS_BITS:
            count = poly.count_roots_in_disk(self.poly, (1 << k) - 1, 1 << k)
            if count == self.degree - 1:
                self.log.debug(f'{self!r}: conjugates inside |z| < 1 - 2^-{k}')
                return True
        return False

    ########## SERIALIZATION ##########
    def to_json(self) -> dict:
        return {'poly': [str(a) for a in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict, **kwargs) -> 'BetaField':
        return cls([int(a) for a in data['poly']], **kwargs)


def make_multinacci(n: int, **kwargs) -> BetaField:
    """ Field of the multinacci number of degree n (golden mean for n = 2, tribonacci for n = 3). """
    return BetaField.multinacci(n, **kwargs)


def make_pisot(coeffs, **kwargs) -> BetaField:
    """ Field of the dominant root of x^N - sum(a_i x^i); `pisot_verified` records the certificate. """
    return BetaField(coeffs, **kwargs)
