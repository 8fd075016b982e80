from .enumerators import Status, MapKind, Mode, Outcome, Regime
from .logger import get_logger
