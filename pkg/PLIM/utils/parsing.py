""" Text forms of fields, exact scalars and key=value lists shared by map specs, configs and the CLI.

Scalars accept integers, rationals ``p/q``, decimals (read exactly), powers of the field generator
``beta^k`` (``b`` is an alias, negative k allowed), sums and products of those (``2-beta``,
``1/2*beta^-1``) and raw coefficient vectors ``[c_0, c_1, ...]`` meaning sum(c_i beta^i).
Fields are written ``multinacci(N)``, ``pisot(a_0, ..., a_{N-1})`` or ``[a_0, ..., a_{N-1}]``.
"""
from .enumerators import DEFAULT_PRECISION_CAP_BITS
from .errors import ConfigError

from fractions import Fraction
from functools import lru_cache
import re

_TOKEN = re.compile(
    r'\s*(?:'
    r'(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?(?:/\d+)?)'
    r'|(?P<beta>beta|b)(?:\s*\^\s*\(?\s*(?P<exp>[-+]?\d+)\s*\)?)?'
    r'|(?P<op>[-+*])'
    r')'
)
_FIELD = re.compile(r'^\s*(?P<name>multinacci|pisot)\s*\((?P<args>[^)]*)\)\s*$')


def split_top_level(text: str, sep: str = ',') -> list[str]:
    """ Splits on `sep` outside of brackets and parentheses. """
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in '([':
            depth += 1
        elif ch in ')]':
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i].strip())
            start = i + 1
    parts.append(text[start:].strip())
    return [p for p in parts if p]


def parse_key_values(text: str) -> dict[str, str]:
    """ Parses ``key=value,key=value`` with bracket-aware splitting. """
    out = {}
    for item in split_top_level(text):
        key, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(f'expected key=value, got {item!r}')
        out[key.strip().lower()] = value.strip()
    return out


def is_field_spec(text: str) -> bool:
    return bool(_FIELD.match(text))


def parse_field_spec(text: str, precision_cap_bits: int = DEFAULT_PRECISION_CAP_BITS, debug: bool = False):
    """ Builds the `BetaField` named by `text`.

    Raises:
        ConfigError: If the text is not a field specification.
    """
    text = text.strip()
    match = _FIELD.match(text)
    try:
        if match and match['name'] == 'multinacci':
            return _field(tuple([1] * int(match['args'])), precision_cap_bits, debug)
        if match:
            return _field(tuple(int(a) for a in split_top_level(match['args'])), precision_cap_bits, debug)
        if text.startswith('[') and text.endswith(']'):
            return _field(tuple(int(a) for a in split_top_level(text[1:-1])), precision_cap_bits, debug)
    except ValueError as e:
        if hasattr(e, 'status'):
            raise
        raise ConfigError(f'malformed field specification {text!r}: {e}') from e
    raise ConfigError(f'unknown field specification {text!r}')


@lru_cache(maxsize=32)
def _field(coeffs: tuple, precision_cap_bits: int, debug: bool):
    from ..algebra import BetaField
    return BetaField(coeffs, precision_cap_bits=precision_cap_bits, debug=debug)


def field_spec(field) -> str:
    """ Inverse of `parse_field_spec`. """
    if field.is_multinacci:
        return f'multinacci({field.degree})'
    return f'pisot({",".join(str(a) for a in field.coeffs)})'


def parse_scalar(text: str, field=None):
    """ Parses an exact scalar.

    Args:
        text : Scalar expression, see the module docstring.
        field : Field used for ``beta`` and coefficient vectors; None restricts the input to rationals.

    Returns:
        A Fraction, or a FieldElement when `field` is given.

    Raises:
        ConfigError: If the expression is malformed or needs a field that was not given.
    """
    text = str(text).strip()
    if text.startswith('[') and text.endswith(']'):
        if field is None:
            raise ConfigError(f'coefficient vector {text!r} needs a field')
        try:
            return field.element([Fraction(c) for c in split_top_level(text[1:-1])])
        except ValueError as e:
            raise ConfigError(f'malformed coefficient vector {text!r}: {e}') from e

    total, term, sign, pos = Fraction(0), None, 1, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ConfigError(f'cannot parse {text!r} at position {pos}')
        pos = match.end()
        if match['op'] == '*':
            if term is None:
                raise ConfigError(f'dangling "*" in {text!r}')
        elif match['op']:
            step = 1 if match['op'] == '+' else -1
            if term is not None:
                total, term, sign = total + sign * term, None, step
            else:
                sign *= step
        else:
            if match['num']:
                try:
                    factor = Fraction(match['num'])
                except ValueError as e:
                    raise ConfigError(f'malformed number {match["num"]!r} in {text!r}') from e
            elif field is None:
                raise ConfigError(f'{text!r} refers to beta but no field is given')
            else:
                factor = field.beta_power(int(match['exp'] or 1))
            term = factor if term is None else term * factor
    if term is None:
        raise ConfigError(f'empty or incomplete expression {text!r}')
    total = total + sign * term
    return field.element(total) if field is not None else total


def format_exact(value) -> str:
    """ Text form readable by `parse_scalar`: ``p/q`` for rationals, a coefficient vector otherwise. """
    from ..algebra import FieldElement
    if isinstance(value, FieldElement):
        if value.is_rational:
            return str(value.coeffs[0])
        return '[' + ','.join(str(c) for c in value.coeffs) + ']'
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return repr(float(value))
