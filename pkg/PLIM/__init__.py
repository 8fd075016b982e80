from .algebra import BetaField, FieldElement, make_multinacci, make_pisot
from .maps import MapParams, SkewTentMap, GenBetaMap, parse_map_spec, make_map, skew_tent, gen_beta
from .matching import matching_index, two_branch_matching
