from .XiCurve import XiCurve, _geometric_fit
from ..maps import GenBetaMap
from ..utils import Mode
from ..utils.errors import BreakpointAmbiguityError, WindowUnderflowError
from ..utils.parsing import format_exact

from dataclasses import dataclass, field
import numpy as np

# Parameter resolution of the float boundary search
RESOLUTION = 1e-14


@dataclass
class WindowEdge:
    """ One endpoint of a parameter window.

    `r` is the first iterate whose point reaches the discontinuity (generalised beta-transformation) or the
    critical point (skew tent) at the endpoint; None for an edge of the parameter domain that no iterate
    reaches. `side` is 'c+' when xi_r tends to 0 and 'c-' when it tends to 1 (skew tent edges carry 'c').
    """
    t: object
    r: int | None
    side: str


@dataclass
class ParamWindow:
    """ Maximal parameter interval around t0 on which the itinerary of xi_1 .. xi_{n-1} is constant. """
    curve: XiCurve
    n: int
    t0: object
    lo: WindowEdge
    hi: WindowEdge
    itinerary: tuple
    exact: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def width(self) -> float:
        return float(self.hi.t - self.lo.t)

    def xi_inside(self, t, n: int | None = None):
        """ xi_n continued along the window's itinerary, defined on the closed window. """
        return self.curve.along(t, self.itinerary, n)

    def q(self, t) -> float:
        """ xi_n on the window rescaled to map lo onto 0 and hi onto 1. """
        lo, hi = self.xi_inside(self.lo.t), self.xi_inside(self.hi.t)
        return float((self.xi_inside(t) - lo) / (hi - lo))

    def image_width(self) -> float:
        """ |xi_n(window)|, the length of the image interval of the window. """
        return abs(float(self.xi_inside(self.hi.t) - self.xi_inside(self.lo.t)))

    def boundary_value(self, edge: WindowEdge):
        """ The point xi_{n-r} at an endpoint, computed from the orbit the inside limit restarts on.

        Skew tent and c+ edges restart on the critical orbit; c- edges of the generalised
        beta-transformation restart on the left-continuous orbit of 1.
        """
        if edge.r is None:
            return None
        m = self.curve.at(edge.t)
        if edge.side == 'c-':
            return m.orbit(1, self.n - edge.r, left=True)[-1][0]
        return m.orbit(m.critical_start(), self.n - edge.r)[-1][0]

    def endpoint_identities(self) -> dict:
        """ Residuals xi_n(edge) - xi_{n-r}(edge) at both edges; exact zeros for exact windows. """
        out = {}
        for name, edge in (('lo', self.lo), ('hi', self.hi)):
            target = self.boundary_value(edge)
            out[name] = None if target is None else self.xi_inside(edge.t) - target
        return out

    def to_dict(self) -> dict:
        def edge(e):
            return {'t': float(e.t), 't_exact': format_exact(e.t) if self.exact else None, 'r': e.r, 'side': e.side}
        return {
            'n': self.n,
            'varied': self.curve.varied,
            't0': float(self.t0),
            'lo': edge(self.lo),
            'hi': edge(self.hi),
            'width': self.width,
            'itinerary': ''.join(str(s) for s in self.itinerary),
            'exact': self.exact,
            **self.diagnostics,
        }


def param_window(m, n: int, method: str | None = None) -> ParamWindow:
    """ Finds the window Z_n around the map's current parameter.

    The generalised beta-transformation solves the affine equations xi_j(alpha) = breakpoint in the map's own
    number type, so exact maps get exact endpoints. The skew tent (and `method='bisect'`) expands a float
    search outward from t0 and bisects on itinerary equality down to RESOLUTION.

    Args:
        m : SkewTentMap (parameter beta) or GenBetaMap (parameter alpha).
        n : Iterate count, n >= 4 by convention (n >= 2 is accepted).
        method : 'affine' or 'bisect'; defaults to 'affine' for the generalised beta-transformation.

    Raises:
        WindowUnderflowError: If the window collapses below the resolution, e.g. because t0 sits on a
            boundary within the guard band.
    """
    if n < 2:
        raise ValueError(f'windows need n >= 2, got {n}')
    if method is None:
        method = 'affine' if isinstance(m, GenBetaMap) else 'bisect'
    try:
        if method == 'affine':
            if not isinstance(m, GenBetaMap):
                raise ValueError('affine window equations exist for the generalised beta-transformation only')
            return _affine_window(m, n)
        return _bisect_window(m, n)
    except BreakpointAmbiguityError as e:
        raise WindowUnderflowError(f'{m!r}: parameter lies within the guard band of a window boundary for n={n}',
                                   **e.details) from e


def _affine_window(m, n: int) -> ParamWindow:
    """ On a window xi_j(a) = A_j a + B_j with A_j = (beta^j - 1)/(beta - 1); each branch constraint
    k_{j-1} <= beta xi_{j-1} + a < k_{j-1} + 1 bounds a from both sides. """
    beta, a0 = m.beta, m.alpha
    ks = [symbol for _, symbol in m.orbit(m.critical_start(), n)[1:]]
    lo, hi = WindowEdge(m.lift(0), 1, 'c+'), WindowEdge(m.lift(1), 1, 'c-')
    big_a, big_b = m.lift(1), m.lift(0)
    for j in range(2, n + 1):
        k = ks[j - 1]
        big_a, b_pre = beta * big_a + 1, beta * big_b
        lower, upper = (k - b_pre) / big_a, (k + 1 - b_pre) / big_a
        if lower > lo.t:
            lo = WindowEdge(lower, j, 'c+')
        if upper < hi.t:
            hi = WindowEdge(upper, j, 'c-')
        big_b = b_pre - k
    if hi.t == 1:
        hi = WindowEdge(hi.t, None, 'c-')
    curve = XiCurve(m, n)
    word = tuple(ks[1:n])
    window = ParamWindow(curve=curve, n=n, t0=a0, lo=lo, hi=hi, itinerary=word, exact=m.exact,
                         diagnostics={'slope': m.to_float(big_a)})
    m.log.debug(f'{m!r}: window n={n} is [{float(lo.t):.17g}, {float(hi.t):.17g}]')
    return window

    # The search evaluates right on the boundaries, so the guard band is lifted
def _bisect_window(m, n: int) -> ParamWindow:
    # Unguarded maps evaluate right on the boundaries, so the guard band is lifted
    unguarded = type(m)(m.params.with_mode(Mode.FLOAT), guard_band=0.0, debug=m.debug)
    curve = XiCurve(unguarded, n)
    t0 = float(getattr(unguarded, curve.varied))
    word = curve.itinerary(t0)
    if isinstance(m, GenBetaMap):
        domain = (0.0, 1.0 - RESOLUTION)
    else:
        domain = (max(unguarded.alpha, 1.0 - unguarded.alpha) + RESOLUTION, 1.0)

    edges = []
    for direction, bound in ((-1, domain[0]), (1, domain[1])):
        inside, h = t0, RESOLUTION
        while True:
            t = t0 + direction * h
            if direction * (t - bound) >= 0:
                t = bound
            other = curve.itinerary(t)
            if other != word:
                break
            inside = t
            if t == bound:
                break
            h *= 2
        if other == word:
            side = ('c+' if direction < 0 else 'c-') if isinstance(m, GenBetaMap) else 'c'
            edges.append(WindowEdge(bound, _domain_return(m, direction), side))
            continue
        outside = t
        while abs(outside - inside) > RESOLUTION:
            mid = 0.5 * (inside + outside)
            if curve.itinerary(mid) == word:
                inside = mid
            else:
                outside, other = mid, curve.itinerary(mid)
        # Position j holds the branch of xi_j: the skew tent changes it when xi_j crosses alpha, the
        # beta-transformation when xi_{j+1} crosses 0 = 1
        r = next(j for j, (a, b) in enumerate(zip(word, other), start=1) if a != b)
        if isinstance(m, GenBetaMap):
            r, side = r + 1, ('c+' if direction < 0 else 'c-')
        else:
            side = 'c'
        edges.append(WindowEdge(inside, r, side))

    lo, hi = edges
    if hi.t - lo.t < 2 * RESOLUTION:
        raise WindowUnderflowError(f'{m!r}: window for n={n} is narrower than {2 * RESOLUTION:g}', width=hi.t - lo.t)
    return ParamWindow(curve=curve, n=n, t0=t0, lo=lo, hi=hi, itinerary=word, exact=False)


def _domain_return(m, direction: int):
    # alpha = 0 makes xi_1 = 0; the other domain edges are reached by no iterate
    return 1 if isinstance(m, GenBetaMap) and direction < 0 else None


@dataclass
class DistortionReport:
    ns: np.ndarray
    distortion: np.ndarray
    rate: float
    widths: np.ndarray
    width_rate: float


def distortion_profile(m, n_max: int, n_min: int = 4, samples: int = 33) -> DistortionReport:
    """ max|xi_n'| / min|xi_n'| - 1 over the window of each n in [n_min, n_max], with geometric fits.

    The derivative is sampled at `samples` interior points along the window's own itinerary. Also fits the
    decay of the window widths |Z_n|.
    """
    if m.exact:
        m = type(m)(m.params.with_mode(Mode.FLOAT), guard_band=m.guard_band, debug=m.debug)
    ns, values, widths = [], [], []
    for n in range(n_min, n_max + 1):
        window = param_window(m, n)
        ts = np.linspace(float(window.lo.t), float(window.hi.t), samples + 2)[1:-1]
        ders = np.abs([float(window.curve.derivative(float(t), window.itinerary)) for t in ts])
        ns.append(n)
        values.append(ders.max() / ders.min() - 1.0)
        widths.append(window.width)
    values, widths = np.array(values), np.array(widths)
    rate, _ = _geometric_fit(values, 1.0)
    width_rate, _ = _geometric_fit(widths, 1.0)
    return DistortionReport(ns=np.array(ns), distortion=values, rate=rate, widths=widths, width_rate=width_rate)
