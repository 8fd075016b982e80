from .MapInterface import MapInterface, MapGeometry
from .SkewTentMap import SkewTentMap
from .GenBetaMap import GenBetaMap
from .params import MapParams, parse_map_spec, make_map, skew_tent, gen_beta
