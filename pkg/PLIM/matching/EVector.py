from ..utils.errors import MatchedStateError, NotMultinacciError, OffAlphabetError

from dataclasses import dataclass

_SIGNS = {1: '+', -1: '-', 0: '0'}


@dataclass(frozen=True)
class EVectorState:
    """ Digits e_1..e_N of d(n) = |G^n(0) - G^n(1)| = sum e_i beta^-i and sigma = sign(G^n(0) - G^n(1)).

    The digit vector is exact for multinacci slopes, where 1 = beta^-1 + ... + beta^-N makes the all-ones
    vector worth exactly 1. sigma is 0 exactly on the all-zero (matched) vector.
    """
    digits: tuple
    sigma: int
    n: int

    def __post_init__(self):
        if any(d not in (0, 1) for d in self.digits):
            raise OffAlphabetError(f'digits must be 0 or 1, got {self.digits}', digits=self.digits)
        if (self.sigma == 0) != (not any(self.digits)):
            raise ValueError(f'sign {self.sigma} does not fit the digits {self.digits}')

    @property
    def degree(self) -> int:
        return len(self.digits)

    @property
    def is_matched(self) -> bool:
        return self.sigma == 0

    @property
    def label(self) -> str:
        """ Flowchart code such as ``+011``. """
        return _SIGNS[self.sigma] + ''.join(str(d) for d in self.digits)

    def value(self, field):
        """ sum e_i beta^-i as an exact element of `field`. """
        total = field.zero
        for i, d in enumerate(self.digits, start=1):
            if d:
                total = total + field.beta_power(-i)
        return total

    def value_float(self, beta: float) -> float:
        return sum(beta ** -i for i, d in enumerate(self.digits, start=1) if d)

    def step(self, flip: bool) -> 'EVectorState':
        """ d(n + 1) from d(n): a shift, or a shift with complement and sign change.

        Raises:
            MatchedStateError: If the state is already matched.
        """
        if self.is_matched:
            raise MatchedStateError(f'state {self.label} at n={self.n} is matched', n=self.n)
        if flip:
            digits, sigma = tuple(1 - d for d in self.digits[1:]) + (1,), -self.sigma
        else:
            digits, sigma = self.digits[1:] + (0,), self.sigma
        if not any(digits):
            sigma = 0
        return EVectorState(digits, sigma, self.n + 1)

    def to_dict(self) -> dict:
        return {'n': self.n, 'sign': self.sigma, 'digits': ''.join(map(str, self.digits)), 'label': self.label}

    @classmethod
    def from_label(cls, label: str, n: int = 0) -> 'EVectorState':
        """ Parses ``+011``, ``-100`` or an unsigned digit string such as ``0110`` (taken positive). """
        sign, body = (label[0], label[1:]) if label[:1] in ('+', '-') else ('+', label)
        try:
            digits = tuple(int(c) for c in body)
        except ValueError:
            raise OffAlphabetError(f'{label!r} is not a digit string', label=label)
        sigma = 0 if not any(digits) else (-1 if sign == '-' else 1)
        return cls(digits, sigma, n)


def evector_init(field) -> EVectorState:
    """ State at n = 1 when alpha + beta > 2: d(1) = 2 - beta = beta^-N, so e = (0, ..., 0, 1) with sign +.

    Raises:
        NotMultinacciError: If the slope is not a multinacci number.
    """
    if not field.is_multinacci:
        raise NotMultinacciError(f'{field!r}: digit vectors need a multinacci slope')
    return EVectorState((0,) * (field.degree - 1) + (1,), 1, 1)


def all_ones(field, n: int = 0) -> EVectorState:
    """ State of the pair (0, 1) at n = 0: distance 1 with sign -. """
    if not field.is_multinacci:
        raise NotMultinacciError(f'{field!r}: digit vectors need a multinacci slope')
    return EVectorState((1,) * field.degree, -1, n)
