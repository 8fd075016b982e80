from enum import Enum, IntEnum

DEFAULT_GUARD_BAND = 1e-12
DEFAULT_CAP = 100_000
DEFAULT_PRECISION_CAP_BITS = 4096
INITIAL_PRECISION_BITS = 32
DEFAULT_EPSILON = 0.01
FLOAT_TRACE_TOLERANCE = 1e-9
FLOAT_MATCH_TOLERANCE = 1e-13
DEFAULT_COMPONENT_CAP = 64
DEFAULT_ATTRACTOR_TOLERANCE = 1e-9

class Status(IntEnum):
    SUCCESS = 0,
    POINT_FAILURES = 1,
    USAGE_ERROR = 2,
    INVALID_DEGREE = -1,
    NO_DOMINANT_ROOT = -2,
    FIELD_MISMATCH = -3,
    DIVISION_BY_ZERO = -4,
    PRECISION_EXHAUSTED = -5,
    REDUCIBLE_FIELD = -6,
    OUT_OF_DOMAIN = -7,
    INVALID_PARAMETERS = -8,
    BREAKPOINT_AMBIGUITY = -9,
    NO_FIXED_POINT = -10,
    BOUND_ORBIT = -11,
    WINDOW_UNDERFLOW = -12,
    FRAGMENTATION = -13,
    NOT_MULTINACCI = -14,
    MATCHED_STATE = -15,
    OFF_ALPHABET = -16,
    OUTSIDE_REGIME = -17,
    CONFIG_ERROR = -18,
    BOUNDARY_OFF_ORBIT = -19

class MapKind(str, Enum):
    SKEW_TENT = 'skewtent'
    GEN_BETA = 'genbeta'

class Mode(str, Enum):
    FLOAT = 'float'
    EXACT = 'exact'
    BOTH = 'both'

class Outcome(str, Enum):
    MATCHED = 'matched'
    NOT_MATCHED = 'not_matched'
    PERIODIC = 'periodic'
    FAILED = 'failed'

class Regime(str, Enum):
    CASE_4I = '4i'
    CASE_4II = '4ii'
    OTHER = 'other'
