from ..maps import SkewTentMap
from ..utils.errors import BoundOrbitError

from dataclasses import dataclass
import numpy as np


class XiCurve:
    """ The n-th critical image as a function of the family parameter.

    For the skew tent family t = beta with alpha fixed and xi_n(t) = T^n(alpha); for the generalised
    beta-transformation t = alpha with beta fixed and xi_n(t) = G^n(0). Evaluation happens in the number
    type of the underlying map.
    """

    def __init__(self, m, n: int):
        """
        Args:
            m : Map whose parameters fix the family and supply the default parameter value.
            n : Iterate count, n >= 0.
        """
        if n < 0:
            raise ValueError(f'iterate count must be >= 0, got {n}')
        self.map = m
        self.n = n
        self.varied = 'beta' if isinstance(m, SkewTentMap) else 'alpha'

    def __repr__(self):
        return f'XiCurve({self.map!r}, n={self.n}, varied={self.varied})'

    @property
    def parameter(self):
        """ Current value of the varied parameter. """
        return getattr(self.map, self.varied)

    def at(self, t):
        """ Map of the family at parameter t. """
        if t is None:
            return self.map
        return self.map.derive(**{self.varied: t})

    ########## EVALUATION ##########
    def orbit(self, t=None, n: int | None = None) -> list[tuple]:
        m = self.at(t)
        return m.orbit(m.critical_start(), self.n if n is None else n)

    def eval(self, t=None):
        """ xi_n(t); the curve's own parameter when t is None. """
        return self.orbit(t)[-1][0]

    def itinerary(self, t=None) -> tuple:
        """ Branch symbols of xi_1 .. xi_{n-1}; constant exactly on the parameter windows of this n. """
        return tuple(symbol for _, symbol in self.orbit(t)[2:])

    def along(self, t, word: tuple, n: int | None = None):
        """ xi_n(t) continued along a fixed itinerary, i.e. the one-sided limit from inside a window.

        Args:
            t : Parameter value, possibly an endpoint of the window that owns `word`.
            word : Branch symbols of xi_1 .. xi_{n-1}.
            n : Evaluate xi_n for this n <= len(word) + 1 instead of the curve's own n.
        """
        m = self.at(t)
        x = m.critical_start()
        n = self.n if n is None else n
        if n == 0:
            return x
        x = m.apply(x, m.branch(x))
        for symbol in word[:n - 1]:
            x = m.apply(x, symbol)
        return x

    def derivative(self, t=None, word: tuple | None = None):
        """ d xi_n / dt by forward differentiation along the orbit.

        Args:
            t : Parameter value; the curve's own parameter when None.
            word : Fixed itinerary to follow instead of the branches chosen at t.

        Raises:
            BoundOrbitError: If the orbit hits the critical point before step n, where xi_n has two
                one-sided derivatives.
        """
        m = self.at(t)
        x = m.critical_start()
        if self.n == 0:
            return 0
        symbols = [m.branch(x)] + list(word if word is not None else self.itinerary(t))
        dx = 0
        for j, symbol in enumerate(symbols[:self.n]):
            if j and symbol == 'C':
                raise BoundOrbitError(f'{m!r}: critical orbit returns to the critical point at step {j}', step=j)
            dx = (m.slope(symbol) * dx if dx else 0) + m.d_param(x, symbol)
            x = m.apply(x, symbol)
        return dx


@dataclass
class QSequenceReport:
    """ Q_1 .. Q_n with their successive differences and a geometric fit of those differences. """
    values: np.ndarray
    differences: np.ndarray
    rate: float
    constant: float
    limit: float
    expansion: float
    limit_exact: float | None = None

    def to_dict(self) -> dict:
        return {
            'values': self.values.tolist(),
            'differences': self.differences.tolist(),
            'rate': self.rate,
            'constant': self.constant,
            'limit': self.limit,
            'expansion': self.expansion,
            'limit_exact': self.limit_exact,
        }


def q_sequence(m, n: int) -> QSequenceReport:
    """ The sequence Q_k = xi_k' / (T^k)'(alpha^-) of normalised parameter derivatives.

    Skew tent: Q_1 = alpha / beta and Q_k = d_beta T(xi_{k-1}) / (T^k)'(alpha^-) + Q_{k-1}. Generalised
    beta-transformation: Q_k = (beta^k - 1) / (beta^k (beta - 1)), converging to 1 / (beta - 1).

    Args:
        m : SkewTentMap or GenBetaMap.
        n : Number of terms, n >= 2.

    Raises:
        BoundOrbitError: If the critical orbit lands on the critical point before step n; the left and right
            derivatives at that step are attached.
    """
    if n < 2:
        raise ValueError(f'need at least two terms, got n={n}')
    beta, alpha = m.beta, m.alpha
    if isinstance(m, SkewTentMap):
        expansion = min(m.to_float(beta / alpha), m.to_float(beta / (1 - alpha)))
        orbit = m.orbit(m.critical_start(), n)
        deriv = m.slope('L')
        q = m.d_param(alpha, 'C') / deriv
        values, increments = [q], []
        for k in range(2, n + 1):
            x, symbol = orbit[k - 1][0], orbit[k][1]
            if symbol == 'C':
                raise BoundOrbitError(
                    f'{m!r}: critical orbit is bound at step {k - 1}', step=k - 1,
                    left=m.to_float(deriv * m.slope('L')), right=m.to_float(deriv * m.slope('R')))
            deriv = deriv * m.slope(symbol)
            increments.append(m.d_param(x, symbol) / deriv)
            q = q + increments[-1]
            values.append(q)
        values = np.array([m.to_float(v) for v in values])
        diffs = np.array([m.to_float(v) for v in increments])
        limit_exact = None
    else:
        b = m.to_float(beta)
        expansion = b
        if m.exact:
            values = np.array([m.to_float((beta ** k - 1) / (beta ** k * (beta - 1))) for k in range(1, n + 1)])
        else:
            values = (1.0 - b ** -np.arange(1, n + 1, dtype=np.float64)) / (b - 1.0)
        # Q_{k+1} - Q_k = beta^-(k+1), kept out of the cancellation in np.diff
        diffs = b ** -np.arange(2, n + 1, dtype=np.float64)
        limit_exact = 1.0 / (b - 1.0)

    rate, constant = _geometric_fit(diffs, expansion)
    last = diffs[-1] if len(diffs) else 0.0
    limit = float(values[-1] + last * rate / (1.0 - rate)) if rate < 1.0 else float(values[-1])
    return QSequenceReport(values=values, differences=diffs, rate=rate, constant=constant, limit=limit,
                           expansion=expansion, limit_exact=limit_exact)


def _geometric_fit(diffs: np.ndarray, expansion: float) -> tuple[float, float]:
    """ Rate r of |d_k| ~ r^k by least squares on log|d_k|, and the smallest C with |d_k| <= C expansion^-k. """
    mags = np.abs(diffs)
    ks = np.arange(1, len(mags) + 1, dtype=np.float64)
    mask = mags > 0
    if mask.sum() < 2:
        return 0.0, float(mags.max(initial=0.0))
    slope, _ = np.polyfit(ks[mask], np.log(mags[mask]), 1)
    constant = float(np.max(mags[mask] * expansion ** ks[mask]))
    return float(np.exp(slope)), constant
