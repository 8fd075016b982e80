from .SweepConfig import DensityConfig, SweepConfig
from ..maps import gen_beta
from ..matching import MatchingEngine
from ..orbits import attractor, density_profile
from ..utils import Outcome, Status, get_logger
from ..utils.errors import PLIMError
from ..utils.parsing import format_exact, parse_scalar

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial
from tqdm import tqdm


@dataclass
class SweepRecord:
    """ One grid point of one start mode of a matching sweep. """
    index: int
    start: str
    alpha: float
    alpha_exact: str | None
    outcome: str
    kappa: int | None = None
    period: int | None = None
    iterations: int = 0
    guard_hits: int = 0
    flagged: bool = False
    mode: str = ''
    status: str = Status.SUCCESS.name
    message: str = ''

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class DensityRecord:
    """ One grid point of a density sweep. """
    index: int
    alpha: float
    fraction: float | None = None
    cells: int = 0
    visited: int = 0
    median: float | None = None
    q90: float | None = None
    max: int | None = None
    components: int = 0
    status: str = Status.SUCCESS.name
    message: str = ''

    def to_dict(self) -> dict:
        return asdict(self)


class SweepRunner:
    """ Dispatches the grid points of a sweep to a thread pool and collects records in grid order.

    Per-point failures are stored in their record and never stop the sweep; `failures` counts them.
    """

    def __init__(self, progress=True, debug=False):
        self.progress = progress
        self.debug = debug
        self.log = get_logger(__name__, debug)
        self.failures = 0

    @property
    def status(self) -> Status:
        return Status.POINT_FAILURES if self.failures else Status.SUCCESS

    def map(self, fn, jobs: list, workers: int, description: str) -> list:
        """ fn over jobs with `workers` threads; results keep the order of `jobs`. """
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(tqdm(executor.map(fn, jobs), total=len(jobs), desc=description, disable=not self.progress))
        self.failures += sum(1 for r in results if r.status != Status.SUCCESS.name)
        return results

    ########## MATCHING ##########
    def sweep_matching(self, cfg: SweepConfig) -> list[SweepRecord]:
        """ Runs matching_index for every start mode and grid point, start modes in config order. """
        field = cfg.build_field()
        engine = MatchingEngine(field, cap=cfg.cap, guard_band=cfg.guard_band, keep_trace=False, debug=self.debug)
        points = cfg.points(field)
        records = []
        for tag, eps, state in cfg.starts(field):
            start = None if state is None else partial(engine.near_fixed_point_start, eps=eps, state=state)
            jobs = [(j, alpha) for j, alpha in enumerate(points)]
            records += self.map(partial(self._matching_point, engine, cfg, tag, start), jobs, cfg.workers, tag)
        self.log.info(f'{cfg.field}: {len(records)} records, {self.failures} failures')
        return records

    def _matching_point(self, engine: MatchingEngine, cfg: SweepConfig, tag: str, start, job) -> SweepRecord:
        index, alpha = job
        record = SweepRecord(index=index, start=tag, alpha=float(alpha), alpha_exact=format_exact(alpha),
                             outcome=Outcome.FAILED.value, mode=cfg.mode.value)
        try:
            result = engine.run(alpha, start=start, mode=cfg.mode)
        except PLIMError as e:
            record.status, record.message = e.status.name, str(e)
            self.log.debug(f'alpha={record.alpha!r}: {e}')
            return record
        record.outcome, record.kappa, record.period = result.outcome.value, result.kappa, result.period
        record.iterations, record.guard_hits = result.steps, result.guard_hits
        record.flagged = bool(result.diagnostics.get('flagged') or result.diagnostics.get('float_flagged'))
        return record

    ########## DENSITY ##########
    def sweep_density(self, cfg: DensityConfig) -> list[DensityRecord]:
        """ Visited fraction of the attractor cells by the orbit of x0 for every grid point. """
        beta = cfg.slope()
        x0 = float(parse_scalar(cfg.x0))
        jobs = list(enumerate(cfg.points()))
        return self.map(partial(self._density_point, cfg, beta, x0), jobs, cfg.workers, 'density')

    def _density_point(self, cfg: DensityConfig, beta: float, x0: float, job) -> DensityRecord:
        index, alpha = job
        record = DensityRecord(index=index, alpha=alpha)
        try:
            m = gen_beta(alpha, beta, debug=self.debug)
            cycle = attractor(m)
            profile = density_profile(m, x0, cfg.n, cfg.eps, cycle)
        except (PLIMError, ValueError) as e:
            record.status = e.status.name if isinstance(e, PLIMError) else Status.USAGE_ERROR.name
            record.message = str(e)
            return record
        stats = profile.quantiles()
        record.fraction, record.cells, record.visited = profile.fraction, profile.cells, profile.visited
        record.median, record.q90, record.max = stats['median'], stats['q90'], stats['max']
        record.components = len(cycle.components)
        return record


def sweep_matching(cfg: SweepConfig, progress=True, debug=False) -> list[SweepRecord]:
    return SweepRunner(progress=progress, debug=debug).sweep_matching(cfg)


def sweep_density(cfg: DensityConfig, progress=True, debug=False) -> list[DensityRecord]:
    return SweepRunner(progress=progress, debug=debug).sweep_density(cfg)
