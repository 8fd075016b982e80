from .BetaField import BetaField, make_multinacci, make_pisot
from .FieldElement import FieldElement
