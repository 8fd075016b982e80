from .GenBetaMap import GenBetaMap
from .SkewTentMap import SkewTentMap
from ..algebra import FieldElement
from ..utils import MapKind, Mode
from ..utils.enumerators import DEFAULT_GUARD_BAND, DEFAULT_PRECISION_CAP_BITS
from ..utils.errors import ConfigError
from ..utils.parsing import field_spec, format_exact, is_field_spec, parse_field_spec, parse_key_values, parse_scalar

from dataclasses import dataclass, replace
from fractions import Fraction

_MAP_CLASSES = {MapKind.SKEW_TENT: SkewTentMap, MapKind.GEN_BETA: GenBetaMap}


@dataclass(frozen=True)
class MapParams:
    """ A parameterised map instance.

    In float mode `alpha` and `beta` are floats. In exact mode they are Fractions or FieldElements of one
    shared field; the field generator itself is a valid slope.
    """
    kind: MapKind
    alpha: object
    beta: object
    mode: Mode = Mode.FLOAT

    @property
    def field(self):
        for value in (self.alpha, self.beta):
            if isinstance(value, FieldElement):
                return value.field
        return None

    def to_spec(self) -> str:
        """ Text form accepted by `parse_map_spec`. """
        field = self.field
        parts = [f'alpha={format_exact(self.alpha) if self.mode == Mode.EXACT else repr(float(self.alpha))}']
        if field is not None and self.beta == field.generator:
            parts.append(f'beta={field_spec(field)}')
        else:
            if field is not None:
                parts.append(f'field={field_spec(field)}')
            parts.append(f'beta={format_exact(self.beta) if self.mode == Mode.EXACT else repr(float(self.beta))}')
        return f'{self.kind.value}:{",".join(parts)}'

    def with_mode(self, mode: Mode) -> 'MapParams':
        """ Float copy of exact parameters, or the same parameters when no conversion is needed. """
        if mode == self.mode:
            return self
        if mode == Mode.FLOAT:
            return replace(self, alpha=float(self.alpha), beta=float(self.beta), mode=Mode.FLOAT)
        raise ConfigError('float parameters cannot be promoted to exact ones')


def parse_map_spec(text: str, mode: Mode = Mode.FLOAT, precision_cap_bits=DEFAULT_PRECISION_CAP_BITS,
                   debug=False) -> MapParams:
    """ Parses ``kind:alpha=...,beta=...[,field=...]``.

    `beta` may name a field (``multinacci(3)``, ``pisot(...)``), in which case the slope is that field's
    generator. In exact mode every value is parsed exactly over the field, in float mode the same text is
    evaluated to floats.

    Examples:
        ``skewtent:alpha=0.4,beta=0.9``, ``genbeta:alpha=1/2,beta=multinacci(3)``,
        ``genbeta:alpha=2-beta,beta=multinacci(4)``

    Raises:
        ConfigError: If the text is malformed or names an unknown family.
    """
    kind_text, sep, rest = text.partition(':')
    try:
        kind = MapKind(kind_text.strip().lower())
    except ValueError:
        raise ConfigError(f'unknown map family {kind_text!r}; expected one of {[k.value for k in MapKind]}')
    if not sep:
        raise ConfigError(f'map specification {text!r} lacks parameters')
    values = parse_key_values(rest)
    unknown = set(values) - {'alpha', 'beta', 'field'}
    if unknown or 'alpha' not in values or 'beta' not in values:
        raise ConfigError(f'map specification {text!r} needs alpha and beta, got {sorted(values)}')

    field = None
    if 'field' in values:
        field = parse_field_spec(values['field'], precision_cap_bits, debug)
    if is_field_spec(values['beta']):
        beta_field = parse_field_spec(values['beta'], precision_cap_bits, debug)
        if field is not None and field != beta_field:
            raise ConfigError(f'beta={values["beta"]} contradicts field={values["field"]}')
        field = beta_field
        beta = field.generator
    else:
        beta = parse_scalar(values['beta'], field)
    alpha = parse_scalar(values['alpha'], field)

    if mode == Mode.EXACT:
        return MapParams(kind, alpha, beta, Mode.EXACT)
    return MapParams(kind, float(alpha), float(beta), Mode.FLOAT)


def make_map(params: MapParams, guard_band=DEFAULT_GUARD_BAND, debug=False):
    """ Builds the SkewTentMap or GenBetaMap evaluating `params`. """
    return _MAP_CLASSES[params.kind](params, guard_band=guard_band, debug=debug)


def skew_tent(alpha, beta, mode: Mode = Mode.FLOAT, **kwargs) -> SkewTentMap:
    return make_map(MapParams(MapKind.SKEW_TENT, _number(alpha, mode), _number(beta, mode), mode), **kwargs)


def gen_beta(alpha, beta, mode: Mode = Mode.FLOAT, **kwargs) -> GenBetaMap:
    return make_map(MapParams(MapKind.GEN_BETA, _number(alpha, mode), _number(beta, mode), mode), **kwargs)


def _number(value, mode: Mode):
    if mode == Mode.EXACT:
        return Fraction(value) if isinstance(value, (int, str)) else value
    return float(value)
