from ..maps import GenBetaMap, SkewTentMap
from ..utils import get_logger
from ..utils.enumerators import DEFAULT_ATTRACTOR_TOLERANCE, DEFAULT_COMPONENT_CAP
from ..utils.errors import BoundaryOffOrbitError, FragmentationError, InvalidParametersError

from dataclasses import dataclass, field
import numpy as np

log = get_logger(__name__)

# Iteration limit of the growth and cover loops
MAX_ITERATIONS = 10_000
# Bound on the fragments of a growing seed
MAX_FRAGMENTS = 1 << 16


@dataclass
class IntervalCycle:
    """ The smallest invariant union V of non-trivial intervals, as closed float components. """
    components: list
    iterations: int
    tol: float
    boundary_sources: dict = field(default_factory=dict)
    spec: str = ''

    @property
    def measure(self) -> float:
        return float(sum(b - a for a, b in self.components))

    def contains(self, x: float) -> bool:
        return any(a - self.tol <= x <= b + self.tol for a, b in self.components)

    def to_dict(self) -> dict:
        return {
            'map': self.spec,
            'components': [[a, b] for a, b in self.components],
            'iterations': self.iterations,
            'measure': self.measure,
            'boundary_sources': {repr(k): v for k, v in self.boundary_sources.items()},
        }


def attractor(m: GenBetaMap, tol: float = DEFAULT_ATTRACTOR_TOLERANCE, seed_width: float = 1e-6,
              cap: int = DEFAULT_COMPONENT_CAP) -> IntervalCycle:
    """ Estimates V by growing a seed around the discontinuity.

    Starting from [0, s] u [1 - s, 1], images are split at the breakpoints, mapped and unioned with the
    current set until the union changes by less than `tol`. V contains both one-sided neighbourhoods of
    c = 0 = 1, so for small s the union of forward images of the seed is V itself. While the seed spreads
    along the critical orbits the union may hold many short fragments; `cap` bounds the settled union only.
    Endpoints of V other than 0 and 1 must lie on the forward orbits of c^+ and c^-.

    Raises:
        InvalidParametersError: If the map is not a generalised beta-transformation.
        FragmentationError: If the settled union has more than `cap` components or the growth does not settle.
        BoundaryOffOrbitError: If an endpoint of V is on neither critical orbit.
    """
    if not isinstance(m, GenBetaMap):
        raise InvalidParametersError(f"{m!r}: the interval cycle is computed for generalised beta-transformations")
    alpha, beta = float(m.alpha), float(m.beta)
    cuts = [float(c) for c in m.breakpoints()]
    union = _merge([(0.0, seed_width), (1.0 - seed_width, 1.0)], tol)
    for iteration in range(1, MAX_ITERATIONS + 1):
        grown = _merge(union + _image(union, alpha, beta, cuts), tol)
        if len(grown) > MAX_FRAGMENTS:
            raise FragmentationError(f'{m!r}: {len(grown)} fragments while growing the seed', components=len(grown))
        if _close(grown, union, tol):
            break
        union = grown
    else:
        raise FragmentationError(f'{m!r}: union did not settle within {MAX_ITERATIONS} iterations')
    if len(union) > cap:
        raise FragmentationError(f'{m!r}: {len(union)} components exceed the cap of {cap}', components=len(union))

    log.debug(f'{m!r}: union settled after {iteration} iterations with {len(union)} components')
    sources = check_boundary(m, union, steps=iteration + 64, tol=10 * tol)
    return IntervalCycle(components=union, iterations=iteration, tol=tol, boundary_sources=sources,
                         spec=m.params.to_spec())


def check_boundary(m: GenBetaMap, components: list, steps: int = 256,
                   tol: float = 10 * DEFAULT_ATTRACTOR_TOLERANCE) -> dict:
    """ Source ('c+' or 'c-', j) of every endpoint in (0, 1), with the endpoint equal to G^j of that limit.

    Raises:
        BoundaryOffOrbitError: If some endpoint is within `tol` of neither orbit over `steps` iterates.
    """
    sources = _boundary_sources(components, float(m.alpha), float(m.beta), steps, tol)
    stray = [x for x, source in sources.items() if source is None]
    if stray:
        raise BoundaryOffOrbitError(f'{m!r}: endpoints {stray} are not on the orbits of c+ or c-', endpoints=stray)
    return sources


def image_union(m: GenBetaMap, components: list, tol: float = DEFAULT_ATTRACTOR_TOLERANCE) -> list:
    """ G of a union of closed intervals, merged. """
    return _merge(_image(components, float(m.alpha), float(m.beta), [float(c) for c in m.breakpoints()]), tol)


def cover_time(m: GenBetaMap, interval: tuple, tol: float = DEFAULT_ATTRACTOR_TOLERANCE,
               cycle: IntervalCycle | None = None) -> int | None:
    """ Smallest L with G^0(M) u ... u G^{L-1}(M) covering V up to `tol`; None if not reached. """
    cycle = cycle or attractor(m, tol)
    alpha, beta = float(m.alpha), float(m.beta)
    cuts = [float(c) for c in m.breakpoints()]
    union = [tuple(map(float, interval))]
    for length in range(1, MAX_ITERATIONS + 1):
        if _covers(union, cycle.components, tol):
            return length
        union = _merge(union + _image(union, alpha, beta, cuts), tol)
    return None


def core_interval(m: SkewTentMap) -> list:
    """ The dynamical core [T^2(alpha), T(alpha)] of a skew tent map. """
    c1 = float(m.beta)
    return [(float(m.apply(m.beta, 'R')), c1)]


@dataclass
class DensityProfile:
    """ Visits of an orbit to the eps-cells of the attractor. """
    fraction: float
    cells: int
    visited: int
    eps: float
    origin: float
    cell_index: np.ndarray
    first_visit: np.ndarray

    def quantiles(self) -> dict:
        times = self.first_visit[self.first_visit >= 0]
        if len(times) == 0:
            return {'median': None, 'q90': None, 'max': None}
        return {'median': float(np.median(times)), 'q90': float(np.quantile(times, 0.9)), 'max': int(times.max())}

    def rows(self) -> list[tuple]:
        """ (left edge of the cell, first visit time or -1) per attractor cell. """
        return [(self.origin + i * self.eps, int(t)) for i, t in zip(self.cell_index, self.first_visit)]


def density_profile(m, x0: float, n: int, eps: float, cycle: IntervalCycle | None = None) -> DensityProfile:
    """ Fraction of attractor cells visited by the orbit x0, ..., x_n and the first visit time of each cell.

    Cells are half-open [a + i eps, a + (i + 1) eps) aligned to the leftmost attractor endpoint a; only cells
    meeting the attractor count. The attractor is V for the generalised beta-transformation and the core
    [c_2, c_1] for the skew tent.
    """
    if eps <= 0:
        raise ValueError(f'cell width must be positive, got {eps}')
    if isinstance(m, SkewTentMap):
        components = core_interval(m)
    else:
        components = (cycle or attractor(m)).components
    origin = components[0][0]
    total = int(np.floor((components[-1][1] - origin) / eps)) + 1
    lefts = origin + eps * np.arange(total)
    valid = np.zeros(total, dtype=bool)
    for a, b in components:
        valid |= (lefts < b) & (lefts + eps > a)
    valid_index = np.flatnonzero(valid)

    orbit = m.iterate_float(float(x0), n)
    idx = np.floor((orbit - origin) / eps).astype(np.int64)
    inside = (idx >= 0) & (idx < total)
    inside[inside] = valid[idx[inside]]
    cells, first = np.unique(idx[inside], return_index=True)
    times = np.flatnonzero(inside)[first]

    first_visit = np.full(total, -1, dtype=np.int64)
    first_visit[cells] = times
    visited = len(cells)
    return DensityProfile(fraction=visited / len(valid_index), cells=len(valid_index), visited=visited, eps=eps,
                          origin=origin, cell_index=valid_index, first_visit=first_visit[valid_index])


########## INTERVAL HELPERS ##########
def _image(components: list, alpha: float, beta: float, cuts: list) -> list:
    out = []
    for a, b in components:
        points = [a] + [c for c in cuts if a < c < b] + [b]
        for lo, hi in zip(points, points[1:]):
            if hi <= lo:
                continue
            y = beta * (0.5 * (lo + hi)) + alpha
            k = 0
            while y >= k + 1:
                k += 1
            # Pieces starting or ending on a breakpoint map exactly to c+ = 0 or c- = 1
            start = 0.0 if lo in cuts else beta * lo + alpha - k
            end = 1.0 if hi in cuts else beta * hi + alpha - k
            out.append((min(max(start, 0.0), 1.0), min(max(end, 0.0), 1.0)))
    return out


def _merge(intervals: list, tol: float) -> list:
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1] + tol:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _close(u: list, v: list, tol: float) -> bool:
    return len(u) == len(v) and all(abs(a - c) <= tol and abs(b - d) <= tol for (a, b), (c, d) in zip(u, v))


def _covers(union: list, target: list, tol: float) -> bool:
    return all(any(a - tol <= c and d <= b + tol for a, b in union) for c, d in target)


def _boundary_sources(components: list, alpha: float, beta: float, steps: int, tol: float) -> dict:
    """ For each endpoint in (0, 1): ('c+', j) if it is G^j(c^+), ('c-', j) if it is G^j(c^-), else None. """
    plus, minus = [0.0], [1.0]
    for _ in range(steps):
        y = beta * plus[-1] + alpha
        while y >= 1.0:
            y -= 1.0
        plus.append(y)
        y = beta * minus[-1] + alpha
        while y > 1.0:
            y -= 1.0
        minus.append(y)
    plus, minus = np.array(plus), np.array(minus)
    out = {}
    for x in sorted({x for comp in components for x in comp if 0.0 < x < 1.0}):
        for name, orbit in (('c+', plus), ('c-', minus)):
            hits = np.flatnonzero(np.abs(orbit - x) <= tol)
            if len(hits):
                out[x] = (name, int(hits[0]))
                break
        else:
            out[x] = None
    return out
