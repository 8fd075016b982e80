from PLIM.matching import (EDGES, EVectorState, MatchingEngine, MatchingResult, edges_at, flowchart_check,
                           matching_index, regime_classify)
from PLIM.matching.Flowchart import MATCH
from PLIM.utils import Mode, Outcome, Regime
from PLIM.utils.errors import OffAlphabetError, OutsideRegimeError

from fractions import Fraction
import pytest

ALPHA = Fraction(1, 2)


def fixed_point(field, alpha=ALPHA):
    beta = field.generator.to_float()
    return (1 - float(alpha)) / (beta - 1)


def anchored(field, labels, alpha=ALPHA, free=()):
    """ A result whose first point sits on the fixed point at every step except those in `free`. """
    p = fixed_point(field, alpha)
    trace = [EVectorState.from_label(label, n) for n, label in enumerate(labels)]
    pairs = [(0.0, 1.0) if n in free else (p, 0.0) for n in range(len(trace))]
    return MatchingResult(outcome=Outcome.NOT_MATCHED, mode=Mode.EXACT, alpha=alpha, trace=trace, pairs=pairs)


def test_period_three_cycle_is_on_the_graph(tribonacci):
    engine = MatchingEngine(tribonacci)
    m = engine.map_for(ALPHA, Mode.EXACT)
    state = EVectorState.from_label('+011')
    p = m.fixed_point()
    result = engine.run(ALPHA, start=(p, p - state.value(tribonacci), state))
    report = flowchart_check(result, tribonacci)
    assert report.ok
    assert report.audited == 3
    assert report.labels == {'+011': 1, '-001': 1, '-010': 1}
    assert 0 < report.anchor_width <= 0.01


def test_graph_edges(tribonacci):
    assert flowchart_check(anchored(tribonacci, ['+110', '+100', '000']), tribonacci).ok
    report = flowchart_check(anchored(tribonacci, ['+001', '+100']), tribonacci)
    assert not report.ok
    assert report.off_graph == [(0, '+001', '+100')]
    assert MATCH in EDGES['+100']


def test_both_readings_of_the_011_edge(tribonacci):
    low = Fraction(1, 4)
    report = flowchart_check(anchored(tribonacci, ['+011', '+110', '+100', '000'], low), tribonacci)
    assert report.ok and report.readings == {'prose': 1, 'diagram': 0}
    report = flowchart_check(anchored(tribonacci, ['+011', '+101', '+010', '+100'], low), tribonacci)
    assert report.ok and report.readings == {'prose': 0, 'diagram': 1}


def test_unknown_anchored_state(tribonacci):
    with pytest.raises(OffAlphabetError):
        flowchart_check(anchored(tribonacci, ['+111', '+110']), tribonacci)


def test_two_branch_traces_are_not_audited(tribonacci):
    result = MatchingEngine(tribonacci).run(Fraction(1, 10))
    assert flowchart_check(result, tribonacci).audited == 0


def test_flowchart_needs_tribonacci(golden):
    with pytest.raises(OutsideRegimeError):
        flowchart_check(anchored(golden, ['+01', '+10']), golden)


def test_regime_classification(tribonacci):
    assert regime_classify(tribonacci, Fraction(1, 2)) == Regime.CASE_4II
    assert regime_classify(tribonacci, '1/2') == Regime.CASE_4II
    assert regime_classify(tribonacci, Fraction(3, 10)) == Regime.OTHER
    assert regime_classify(tribonacci, 0.3) == Regime.OTHER
    b = tribonacci.generator
    assert regime_classify(tribonacci, (b * b - 2) / (b * b)) == Regime.CASE_4II
    for alpha in (Fraction(1, 10), Fraction(3, 5)):
        with pytest.raises(OutsideRegimeError):
            regime_classify(tribonacci, alpha)


def test_edges_follow_the_regime(tribonacci):
    cycle = edges_at(tribonacci, Fraction(1, 2))
    assert cycle['+011'] == {'-001'}
    assert cycle['-001'] == {'-010'} and cycle['-010'] == {'+011'}
    below = edges_at(tribonacci, Fraction(7, 20))
    assert below['-001'] == {'+101'}
    low = edges_at(tribonacci, Fraction(1, 4))
    assert low['+011'] == {'+110', '+101'}
    assert MATCH in below['-100'] and '+001' not in EDGES['-100']


def test_extra_edges_are_off_graph_outside_their_regime(tribonacci):
    report = flowchart_check(anchored(tribonacci, ['+011', '-001', '+101', '+010']), tribonacci)
    assert report.off_graph == [(1, '-001', '+101')]
    report = flowchart_check(anchored(tribonacci, ['-010', '+011'], Fraction(7, 20)), tribonacci)
    assert report.ok


def near_start(engine, label, eps=Fraction(1, 10 ** 6)):
    return lambda m: engine.near_fixed_point_start(m, eps, EVectorState.from_label(label))


def test_engine_trace_circles_near_the_fixed_point(tribonacci):
    engine = MatchingEngine(tribonacci, cap=2000)
    result = engine.run(ALPHA, start=near_start(engine, '+011'))
    report = flowchart_check(result, tribonacci)
    assert report.ok
    # the anchored point leaves p at rate beta and stays within 0.01 for 16 steps
    assert report.audited >= 16
    assert report.steps >= report.audited
    assert [s.label for s in result.trace[:7]] == ['+011', '-001', '-010', '+011', '-001', '-010', '+011']


def test_engine_trace_below_the_cycle_regime(tribonacci):
    engine = MatchingEngine(tribonacci, cap=2000)
    alpha = Fraction(7, 20)
    result = engine.run(alpha, start=near_start(engine, '+011'))
    assert result.outcome == Outcome.MATCHED and result.kappa == 5
    report = flowchart_check(result, tribonacci)
    assert report.ok
    assert report.audited == report.steps == 5
    assert report.labels == {'+011': 1, '-001': 1, '+101': 1, '+010': 1, '+100': 1}


def test_period_three_run_closes_a_multi_step_edge(tribonacci):
    labels = ['+011', '-001', '-010', '+011', '-001', '-010', '+011', '+001', '+010', '+100', '000']
    report = flowchart_check(anchored(tribonacci, labels, free={4, 5, 6}), tribonacci)
    assert report.ok
    assert report.steps == 10 and report.audited == 7
    assert report.multi_step == [(3, 4, '+001')]
    assert report.to_dict()['multi_step'] == [[3, 4, '+001']]


def test_default_start_traces_stay_on_the_graph(tribonacci):
    for k in range(17, 28):
        alpha = Fraction(k, 50)
        report = flowchart_check(matching_index(tribonacci, alpha, cap=5000), tribonacci)
        assert report.ok, alpha
        assert report.audited <= report.steps


def test_case_4i_lies_beyond_the_strip(tribonacci):
    beta = tribonacci.generator.to_float()
    upper = (3 * beta - beta ** 2 - 1) / beta
    assert upper > 1 / beta
    assert regime_classify(tribonacci, 1 / beta - 1e-9) == Regime.CASE_4II
    assert '-100' in edges_at(tribonacci, 0.65)['-010']
