from .MatchingEngine import MatchingResult
from ..utils import Regime, get_logger
from ..utils.errors import OffAlphabetError, OutsideRegimeError
from ..utils.parsing import parse_scalar

from dataclasses import dataclass, field

log = get_logger(__name__)

MATCH = 'match'

# Successors of the tribonacci codes +-e1e2e3 while one point sits next to the fixed point p, with the sign
# taken as sign(anchored point - other point). Edges out of +011, -001 and -010 depend on alpha, see edges_at.
FLOWCHART = {
    '+001': {'+010'},
    '+010': {'+100'},
    '+100': {MATCH},
    '+110': {'+100'},
    '+101': {'+010'},
    '+011': set(),
    '-001': set(),
    '-010': set(),
    '-100': {MATCH},
}

# Union over alpha
EDGES = {
    **FLOWCHART,
    '+011': {'-001', '+110', '+101'},
    '-001': {'-010', '+101'},
    '-010': {'-100', '+011'},
}
_CYCLE = {'+011', '-001', '-010'}

# Two readings of the +011 edge taken when p - c_1 > d(n)
_PROSE_EDGE = ('+011', '+110')
_DIAGRAM_EDGE = ('+011', '+101')

ANCHOR_CAP = 0.01
THRESHOLD_SLACK = 1e-12


@dataclass
class FlowchartReport:
    """ Transitions of a matching trace audited against the tribonacci flowchart.

    `steps` counts every unmatched transition of the trace, `audited` the anchored ones that were checked.
    `multi_step` holds (n, length, code) for each period-3 run that lost its anchor at step n and was picked
    up again `length` steps later at `code`.
    """
    steps: int = 0
    audited: int = 0
    off_graph: list = field(default_factory=list)
    readings: dict = field(default_factory=lambda: {'prose': 0, 'diagram': 0})
    anchor_width: float = 0.0
    labels: dict = field(default_factory=dict)
    multi_step: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.off_graph

    @property
    def coverage(self) -> float:
        return self.audited / self.steps if self.steps else 0.0

    def to_dict(self) -> dict:
        return {
            'steps': self.steps,
            'audited': self.audited,
            'off_graph': [list(t) for t in self.off_graph],
            'readings': dict(self.readings),
            'anchor_width': self.anchor_width,
            'labels': dict(self.labels),
            'multi_step': [list(t) for t in self.multi_step],
        }


def edges_at(field, alpha) -> dict:
    """ Flowchart edges an anchored step can take at translation alpha, for alpha < 1/beta.

    +011 moves to +110 (or +101 in the diagram reading) when p - c_1 >= d(011) and to -001 when
    p - c_1 <= d(011). -001 moves to -010 from (beta^2 - 2)/beta^2 upwards and to +101 below it. -010 moves
    to -100 above (3 beta - beta^2 - 1)/beta and back to +011, closing the period-3 cycle, below it. Both
    successors are kept at a threshold.
    """
    _require_tribonacci(field)
    alpha, beta = float(alpha), field.generator.to_float()
    lower, upper = (t.to_float() for t in _thresholds(field))
    gap = (1 - alpha) / (beta - 1) - (1 - alpha) / beta
    d011 = beta ** -2 + beta ** -3

    edges = {code: set(dst) for code, dst in FLOWCHART.items()}
    if gap >= d011 - THRESHOLD_SLACK:
        edges['+011'] |= {'+110', '+101'}
    if gap <= d011 + THRESHOLD_SLACK:
        edges['+011'].add('-001')
    if alpha >= lower - THRESHOLD_SLACK:
        edges['-001'].add('-010')
    if alpha <= lower + THRESHOLD_SLACK:
        edges['-001'].add('+101')
    if alpha >= upper - THRESHOLD_SLACK:
        edges['-010'].add('-100')
    if alpha <= upper + THRESHOLD_SLACK:
        edges['-010'].add('+011')
    return edges


def flowchart_check(result: MatchingResult, field) -> FlowchartReport:
    """ Checks that every transition leaving a state anchored at the fixed point is a flowchart edge at alpha.

    A step is anchored when one of the two points lies within eps_U of p, where eps_U is half the smallest
    distance from p or from one of the points p -+ value(e) to the breakpoints c_1 and c_2, capped at 0.01.
    Codes are normalised so that the sign compares the anchored point with the other one; the successor is
    read in the same orientation.

    Between (beta^2 - 2)/beta^2 and (3 beta - beta^2 - 1)/beta the pair can circle +011 -> -001 -> -010 -> +011
    while the anchored point slowly leaves p. When such a run loses its anchor, the next anchored step closes
    one multi-step edge; it follows the 3k+1 pattern when it arrives at +001 after 3k+1 steps.

    Raises:
        OutsideRegimeError: If the slope is not the tribonacci number.
        OffAlphabetError: If an anchored state is not a flowchart code.
    """
    _require_tribonacci(field)
    report = FlowchartReport()
    alpha, beta = float(result.alpha), field.generator.to_float()
    if alpha + beta <= 2 or not result.trace:
        return report
    p = (1 - alpha) / (beta - 1)
    cuts = ((1 - alpha) / beta, (2 - alpha) / beta)
    eps = _anchor_width(p, beta, cuts)
    report.anchor_width = eps
    edges = edges_at(field, alpha)
    entry = last = None

    for (state, (x, y)), nxt in zip(zip(result.trace, result.pairs), result.trace[1:]):
        if state.is_matched:
            continue
        report.steps += 1
        if abs(x - p) < eps:
            orientation = 1
        elif abs(y - p) < eps:
            orientation = -1
        else:
            continue
        src = _code(state, orientation)
        if src not in EDGES:
            raise OffAlphabetError(f'anchored state {src} at n={state.n} is not a flowchart code', n=state.n, label=src)
        if entry is not None and state.n > last + 1:
            length = state.n - entry
            report.multi_step.append((entry, length, src))
            if not (src == '+001' and length % 3 == 1):
                log.debug(f'alpha={alpha:.17g}: period-3 run from n={entry} resumes at {src} after {length} steps')
            entry = None

        dst = MATCH if nxt.is_matched else _code(nxt, orientation)
        report.audited += 1
        report.labels[src] = report.labels.get(src, 0) + 1
        if (src, dst) == _PROSE_EDGE:
            report.readings['prose'] += 1
        elif (src, dst) == _DIAGRAM_EDGE:
            report.readings['diagram'] += 1
        if dst not in edges[src]:
            report.off_graph.append((state.n, src, dst))
            log.warning(f'alpha={alpha:.17g}: off-graph transition {src} -> {dst} at n={state.n}')
        if (src, dst) == ('+011', '-001') and '-010' in edges['-001'] and '+011' in edges['-010']:
            entry = state.n
        elif dst not in _CYCLE:
            entry = None
        last = state.n
    if report.readings['prose'] or report.readings['diagram']:
        log.info(f'alpha={alpha:.17g}: +011 edge taken as {report.readings}')
    log.debug(f'alpha={alpha:.17g}: audited {report.audited} of {report.steps} steps')
    return report


def regime_classify(field, alpha) -> Regime:
    """ Which tribonacci regime alpha falls in, for beta^(1-N) < alpha < 1/beta.

    Returns:
        CASE_4I when alpha > (3 beta - beta^2 - 1)/beta, CASE_4II when (beta^2 - 2)/beta^2 <= alpha <=
        (3 beta - beta^2 - 1)/beta, OTHER below. Thresholds are exact elements of the field; float alpha
        is compared against their float values.

    Raises:
        OutsideRegimeError: If alpha leaves the strip or the slope is not the tribonacci number.
    """
    _require_tribonacci(field)
    b = field.generator
    lower, upper = _thresholds(field)
    strip = (b ** (1 - field.degree), 1 / b)
    if isinstance(alpha, float):
        lower, upper = lower.to_float(), upper.to_float()
        strip = tuple(s.to_float() for s in strip)
    elif isinstance(alpha, str):
        alpha = parse_scalar(alpha, field)
    else:
        alpha = field.element(alpha)
    if not strip[0] < alpha < strip[1]:
        raise OutsideRegimeError(f'alpha={float(alpha)} lies outside (beta^(1-N), 1/beta)', alpha=float(alpha))
    # upper is about 0.617 and 1/beta about 0.544, so no alpha of the strip reaches CASE_4I
    if alpha > upper:
        return Regime.CASE_4I
    if alpha >= lower:
        return Regime.CASE_4II
    return Regime.OTHER


########## HELPERS ##########
def _require_tribonacci(field):
    if not (field.is_multinacci and field.degree == 3):
        raise OutsideRegimeError(f'{field!r}: the flowchart describes the tribonacci slope only')


def _thresholds(field) -> tuple:
    b = field.generator
    return (b * b - 2) / (b * b), (3 * b - b * b - 1) / b


def _code(state, orientation: int) -> str:
    return {1: '+', -1: '-'}[state.sigma * orientation] + ''.join(map(str, state.digits))


def _anchor_width(p: float, beta: float, cuts: tuple) -> float:
    margins = [abs(p - c) for c in cuts]
    for code in EDGES:
        sign = 1 if code[0] == '+' else -1
        other = p - sign * sum(beta ** -i for i, d in enumerate(code[1:], start=1) if d == '1')
        if 0 <= other <= 1:
            margins.extend(abs(other - c) for c in cuts)
    margins = [m for m in margins if m > 0]
    return min([ANCHOR_CAP] + [m / 2 for m in margins])
