from .EVector import EVectorState, evector_init, all_ones
from .MatchingEngine import MatchingEngine, MatchingResult, matching_index, two_branch_matching, no_change_windows, parse_start
from .Flowchart import FlowchartReport, flowchart_check, edges_at, regime_classify, EDGES
