from .EVector import EVectorState, all_ones, evector_init
from ..algebra import FieldElement
from ..maps import GenBetaMap, MapParams
from ..utils import MapKind, Mode, Outcome, get_logger
from ..utils.enumerators import DEFAULT_CAP, DEFAULT_GUARD_BAND, FLOAT_MATCH_TOLERANCE, FLOAT_TRACE_TOLERANCE
from ..utils.errors import (BreakpointAmbiguityError, ConfigError, InvalidParametersError, NotMultinacciError,
                            OutsideRegimeError, PLIMError)
from ..utils.parsing import format_exact, parse_key_values, parse_scalar

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class MatchingResult:
    """ Outcome of following the orbits of c^+ = 0 and c^- = 1 (or an explicit start pair) until they meet.

    `trace` holds the e-vector state of every step, `pairs` the float positions of the two points at the same
    steps. Both are empty for non-multinacci slopes, which run on the orbit distance alone.
    """
    outcome: Outcome
    mode: Mode
    alpha: object
    kappa: int | None = None
    period: int | None = None
    steps: int = 0
    trace: list = field(default_factory=list)
    pairs: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def matched(self) -> bool:
        return self.outcome == Outcome.MATCHED

    @property
    def guard_hits(self) -> int:
        return len(self.diagnostics.get('guard_hits', ()))

    def to_dict(self, with_trace: bool = False) -> dict:
        out = {
            'outcome': self.outcome.value,
            'kappa': self.kappa,
            'period': self.period,
            'steps': self.steps,
            'mode': self.mode.value,
            'alpha': float(self.alpha),
            'alpha_exact': None if isinstance(self.alpha, float) else format_exact(self.alpha),
            'guard_hits': self.guard_hits,
            **{k: v for k, v in self.diagnostics.items() if k != 'guard_hits'},
        }
        if with_trace:
            out['trace'] = [s.label for s in self.trace]
        return out

    def trace_rows(self, field) -> list[tuple]:
        """ One row (n, sign, digits, d_float, d_exact) per step for CSV export. """
        rows = []
        for state, (x, y) in zip(self.trace, self.pairs):
            rows.append((state.n, state.sigma, ''.join(map(str, state.digits)), abs(x - y),
                         format_exact(state.value(field))))
        return rows


class _Escalation(Exception):
    pass


class MatchingEngine:
    """ Runs the two orbits of the discontinuity of G(x) = beta x + alpha (mod 1) in lockstep.

    For multinacci slopes the distance d(n) is carried as an e-vector whose update is driven by the branch
    integers of the two points: with j = sigma (k_x - k_y), j = e_1 shifts the digits and j = e_1 + 1 shifts
    and complements them. The orbit of 0 is evaluated right-continuously and the orbit of 1
    left-continuously, so both stay on the circle representatives the e-vector describes.

    Exact runs detect a repeated pair as a periodic obstruction. Float runs iterate both points freely and
    compare their distance with value(e) every step. Once the two drift apart by more than 1e-9 the run
    escalates to exact arithmetic when alpha is exact; otherwise the result is flagged and the second point is
    put back on the distance of the automaton.
    """

    def __init__(self, field, cap=DEFAULT_CAP, guard_band=DEFAULT_GUARD_BAND, keep_trace=True, debug=False):
        """
        Args:
            field : BetaField of the slope; the slope is its generator.
            cap : Maximum number of steps per run.
            guard_band : Float distance to a breakpoint under which a branch choice counts as ambiguous.
            keep_trace : Stores the per-step states and positions in the result.
            debug : Enables debug logging.
        """
        if cap < 1:
            raise ValueError(f'cap must be >= 1, got {cap}')
        self.field = field
        self.cap = cap
        self.guard_band = guard_band
        self.keep_trace = keep_trace
        self.debug = debug
        self.log = get_logger(__name__, debug)
        self.automaton = field.is_multinacci

    def __repr__(self):
        return f'MatchingEngine({self.field!r}, cap={self.cap})'

    ########## KEY FUNCTIONALITIES ##########
    def map_for(self, alpha, mode: Mode) -> GenBetaMap:
        """ The generalised beta-transformation with slope beta and translation alpha in `mode`. """
        if mode == Mode.EXACT:
            if isinstance(alpha, float):
                raise InvalidParametersError(f'float alpha {alpha!r} cannot run in exact mode')
            params = MapParams(MapKind.GEN_BETA, self.lift(alpha), self.field.generator, Mode.EXACT)
        else:
            alpha = self.lift(alpha) if isinstance(alpha, str) else alpha
            params = MapParams(MapKind.GEN_BETA, float(alpha), self.field.generator.to_float(), Mode.FLOAT)
        return GenBetaMap(params, guard_band=self.guard_band, debug=self.debug)

    def lift(self, value):
        if isinstance(value, str):
            return parse_scalar(value, self.field)
        return self.field.element(value)

    def run(self, alpha, start=None, mode: Mode | None = None) -> MatchingResult:
        """ Computes the matching index for translation `alpha`.

        Args:
            alpha : Exact (int, Fraction, FieldElement, text) or float translation in [0, 1).
            start : Optional (x0, y0, state) start pair, or a callable building it from the map of the run;
                `state` is the e-vector of the pair.
            mode : EXACT, FLOAT or BOTH; exact alpha defaults to EXACT, float alpha to FLOAT.

        Returns:
            MatchingResult with outcome MATCHED (kappa), NOT_MATCHED (cap reached) or PERIODIC (period).

        Raises:
            BreakpointAmbiguityError: In float mode, if the branch gap contradicts the e-vector.
        """
        exact_alpha = None if isinstance(alpha, float) else alpha
        if mode is None:
            mode = Mode.FLOAT if exact_alpha is None else Mode.EXACT

        match mode:
            case Mode.EXACT:
                return self._simulate(self.map_for(alpha, Mode.EXACT), start)
            case Mode.FLOAT:
                try:
                    return self._simulate(self.map_for(alpha, Mode.FLOAT), start, escalate=exact_alpha is not None)
                except _Escalation as e:
                    self.log.info(f"alpha={alpha}: {e}; escalating to exact mode")
                    result = self._simulate(self.map_for(alpha, Mode.EXACT), start)
                    result.diagnostics['escalated'] = True
                    return result
            case Mode.BOTH:
                exact = self._simulate(self.map_for(alpha, Mode.EXACT), start)
                try:
                    fast = self._simulate(self.map_for(alpha, Mode.FLOAT), start)
                except BreakpointAmbiguityError as e:
                    self.log.warning(f'alpha={alpha}: float run stopped: {e}')
                    fast = MatchingResult(outcome=Outcome.NOT_MATCHED, mode=Mode.FLOAT, alpha=exact.alpha,
                                          diagnostics={'flagged': True})
                exact.diagnostics['float_outcome'] = fast.outcome.value
                exact.diagnostics['float_kappa'] = fast.kappa
                exact.diagnostics['float_flagged'] = fast.diagnostics['flagged']
                exact.diagnostics['agree'] = (fast.outcome, fast.kappa) == (exact.outcome, exact.kappa)
                return exact
        raise ValueError(f'unknown mode {mode!r}')

    def default_start(self, m: GenBetaMap) -> tuple:
        """ (G(0), G(1), evector_init) when alpha + beta > 2, otherwise the pair (0, 1) at n = 0. """
        if not self.automaton:
            return m.lift(0), m.lift(1), None
        if m.alpha + m.beta > 2:
            return m.eval(m.lift(0))[0], m.eval_left(m.lift(1))[0], evector_init(self.field)
        return m.lift(0), m.lift(1), all_ones(self.field)

    def near_fixed_point_start(self, m: GenBetaMap, eps, state: EVectorState) -> tuple:
        """ The pair (p - eps, p - eps - value(e)) with positive sign at n = 0.

        Raises:
            InvalidParametersError: If the pair leaves [0, 1] or the e-vector has the wrong length.
        """
        if state.degree != self.field.degree:
            raise InvalidParametersError(f'{state.label} has {state.degree} digits, the slope needs {self.field.degree}')
        p = m.fixed_point()
        x = p - m.lift(eps)
        distance = state.value(self.field) if m.exact else state.value_float(m.to_float(m.beta))
        y = x - distance
        if x < 0 or y < 0:
            raise InvalidParametersError(f'{m!r}: start pair ({m.to_float(x)}, {m.to_float(y)}) leaves [0, 1]')
        return x, y, EVectorState(state.digits, 1 if any(state.digits) else 0, 0)

    ########## HELPERS ##########
    def _simulate(self, m: GenBetaMap, start=None, escalate=False) -> MatchingResult:
        if start is None:
            x, y, state = self.default_start(m)
        else:
            x, y, state = start(m) if callable(start) else start
            x, y = m.lift(x), m.lift(y)
            if not self.automaton:
                state = None
            elif state is None:
                raise NotMultinacciError('an explicit start pair on a multinacci slope needs its e-vector')
        unguarded = GenBetaMap(m.params, guard_band=0.0, debug=self.debug)
        beta = m.to_float(m.beta)
        mode = Mode.EXACT if m.exact else Mode.FLOAT
        n0 = n = state.n if state is not None else 0

        trace, pairs, seen = [], [], {}
        diagnostics = {'guard_hits': [], 'max_deviation': 0.0, 'boundary': False, 'flagged': False}
        result = MatchingResult(outcome=Outcome.NOT_MATCHED, mode=mode, alpha=m.params.alpha, trace=trace,
                                pairs=pairs, diagnostics=diagnostics)
        self._record(result, state, m, x, y)
        if state is not None and state.is_matched:
            result.outcome, result.kappa = Outcome.MATCHED, n
            return result
        if m.exact:
            seen[self._key(x, y)] = n

        while n - n0 < self.cap:
            try:
                (x1, kx), (y1, ky) = m.eval(x), m.eval_left(y)
            except BreakpointAmbiguityError as e:
                if escalate:
                    raise _Escalation(str(e))
                diagnostics['guard_hits'].append(n)
                (x1, kx), (y1, ky) = unguarded.eval(x), unguarded.eval_left(y)
            n += 1

            if state is not None:
                state = state.step(self._flip(state, kx, ky, n, diagnostics, escalate))
                if not m.exact and not state.is_matched and self._drifted(state, x1, y1, beta, diagnostics, escalate):
                    y1 = min(max(x1 - state.sigma * state.value_float(beta), 0.0), 1.0)
                matched = state.is_matched
            else:
                matched = self._same_point(m, x1, y1)
            x, y = x1, y1
            self._record(result, state, m, x, y)

            if matched:
                result.outcome, result.kappa, result.steps = Outcome.MATCHED, n, n - n0
                if m.exact:
                    diagnostics['verified'] = self._same_point(m, x, y)
                    if not diagnostics['verified']:
                        self.log.error(f'{m!r}: automaton matched at n={n} but the points differ')
                self.log.debug(f'{m!r}: matching at n={n}')
                return result
            if m.exact:
                key = self._key(x, y)
                if key in seen:
                    result.outcome, result.period, result.steps = Outcome.PERIODIC, n - seen[key], n - n0
                    self.log.debug(f'{m!r}: pair repeats with period {result.period} at n={n}')
                    return result
                seen[key] = n

        result.steps = n - n0
        return result

    def _flip(self, state: EVectorState, kx: int, ky: int, n: int, diagnostics: dict, escalate: bool) -> bool:
        j, e1 = state.sigma * (kx - ky), state.digits[0]
        if j == e1:
            return False
        if j == e1 + 1:
            return True
        if j == e1 - 1 and not any(state.digits[1:]):
            # beta d(n) = 1: the images are 0 and 1, the same point of the circle
            diagnostics['boundary'] = True
            return False
        message = f'branch gap {j} contradicts state {state.label} at n={n}'
        if escalate:
            raise _Escalation(message)
        raise BreakpointAmbiguityError(message, n=n, state=state.label)

    def _drifted(self, state: EVectorState, x: float, y: float, beta: float, diagnostics: dict, escalate: bool) -> bool:
        """ True when the freely iterated float pair no longer carries the distance value(e).

        Raises:
            _Escalation: If the drift exceeds the trace tolerance and the run may switch to exact mode.
        """
        deviation = abs(state.sigma * (x - y) - state.value_float(beta))
        diagnostics['max_deviation'] = max(diagnostics['max_deviation'], deviation)
        if deviation <= FLOAT_TRACE_TOLERANCE:
            return False
        message = f'float distance deviates from the e-vector by {deviation:.3g} at n={state.n}'
        if escalate:
            raise _Escalation(message)
        if not diagnostics['flagged']:
            self.log.warning(f'{message}; later steps follow the automaton')
        diagnostics['flagged'] = True
        diagnostics['deviations'] = diagnostics.get('deviations', 0) + 1
        return True

    def _record(self, result: MatchingResult, state, m, x, y):
        if self.keep_trace and state is not None:
            result.trace.append(state)
            result.pairs.append((m.to_float(x), m.to_float(y)))

    def _key(self, x, y) -> tuple:
        return (x.coeffs, y.coeffs) if isinstance(x, FieldElement) else (x, y)

    def _same_point(self, m, x, y) -> bool:
        """ Equality on the circle, where 0 and 1 coincide. """
        if m.exact:
            return x == y or abs(x - y) == 1
        d = abs(x - y)
        return d < FLOAT_MATCH_TOLERANCE or abs(1.0 - d) < FLOAT_MATCH_TOLERANCE


def matching_index(field, alpha, cap=DEFAULT_CAP, start=None, mode: Mode | None = None,
                   guard_band=DEFAULT_GUARD_BAND, debug=False) -> MatchingResult:
    """ Matching index kappa with G^kappa(0) = G^kappa(1), or why there is none within `cap` steps. """
    return MatchingEngine(field, cap=cap, guard_band=guard_band, debug=debug).run(alpha, start=start, mode=mode)


def two_branch_matching(field, alpha, debug=False) -> MatchingResult:
    """ Verifies matching at step N when 0 < alpha <= 2 - beta.

    Along the first N steps both orbits stay on the lowest branch after their first image:
    G^n(0) = alpha (beta^n - 1)/(beta - 1) and G^n(1) = G^n(0) + beta^n - (beta^n - 1)/(beta - 1), and the
    gap closes at n = N because beta^N = (beta^N - 1)/(beta - 1). At alpha = 2 - beta both points reach the
    discontinuity at step N, which the result flags as `boundary`.

    Raises:
        NotMultinacciError: If the slope is not a multinacci number.
        OutsideRegimeError: If alpha is not in (0, 2 - beta].
        PLIMError: If an orbit leaves the closed forms.
    """
    if not field.is_multinacci:
        raise NotMultinacciError(f'{field!r}: two-branch matching at step N needs a multinacci slope')
    exact = not isinstance(alpha, float)
    engine = MatchingEngine(field, cap=field.degree, debug=debug)
    m = engine.map_for(alpha, Mode.EXACT if exact else Mode.FLOAT)
    a, b, big_n = m.alpha, m.beta, field.degree
    if not 0 < a <= 2 - b:
        raise OutsideRegimeError(f'alpha={m.to_float(a)} lies outside (0, 2 - beta]', alpha=m.to_float(a))

    def close(u, v):
        return u == v if exact else abs(u - v) <= FLOAT_TRACE_TOLERANCE

    x, y = m.lift(0), m.lift(1)
    for n in range(1, big_n + 1):
        x, y = m.eval(x)[0], m.eval_left(y)[0]
        geometric = (b ** n - 1) / (b - 1)
        expected_x, expected_y = a * geometric, a * geometric + b ** n - geometric
        if n < big_n:
            if not (close(x, expected_x) and close(y, expected_y) and x <= y):
                raise PLIMError(f'{m!r}: orbits leave the lowest branch at n={n}', n=n)
        elif not (close(expected_x, expected_y) and engine._same_point(m, x, y)):
            raise PLIMError(f'{m!r}: no matching at step {big_n}', n=n)
    boundary = a == 2 - b if exact else abs(a - (2 - b)) <= FLOAT_TRACE_TOLERANCE
    return MatchingResult(outcome=Outcome.MATCHED, mode=Mode.EXACT if exact else Mode.FLOAT, alpha=m.params.alpha,
                          kappa=big_n, steps=big_n, diagnostics={'boundary': boundary})


def no_change_windows(result: MatchingResult) -> dict:
    """ Audits the trace for runs of N steps without a sign change that do not end in matching.

    Every unmatched state opens a window of N further steps; the window is violated when the sign stays
    constant throughout and no state in it is matched.
    """
    trace = result.trace
    if not trace:
        return {'windows': 0, 'violations': []}
    big_n = trace[0].degree
    windows, violations = 0, []
    for i, state in enumerate(trace):
        if state.is_matched:
            continue
        window = trace[i + 1:i + big_n + 1]
        kept = 0
        while kept < len(window) and window[kept].sigma == state.sigma:
            kept += 1
        if kept == len(window) == big_n:
            windows += 1
            violations.append(state.n)
        elif kept < len(window) and window[kept].is_matched:
            windows += 1
    return {'windows': windows, 'violations': violations}


def parse_start(text: str) -> tuple[Fraction | None, EVectorState | None]:
    """ Parses ``near:eps=0.01,e=0110`` into (eps, e-vector); ``zero-one`` gives (None, None). """
    if text.strip() in ('', 'zero-one', 'from-zero-and-one'):
        return None, None
    kind, _, rest = text.partition(':')
    if kind.strip() != 'near':
        raise ConfigError(f'unknown start mode {text!r}; expected zero-one or near:eps=...,e=...')
    values = parse_key_values(rest)
    if set(values) != {'eps', 'e'}:
        raise ConfigError(f'start mode {text!r} needs eps and e')
    return parse_scalar(values['eps']), EVectorState.from_label(values['e'])
