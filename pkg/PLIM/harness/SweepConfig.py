""" Sweep configurations as flat ``key = value`` files or YAML mappings.

Flat files hold one ``key = value`` pair per line; ``#`` starts a comment and blank lines are ignored.
Several start modes are separated by ``;``. Files ending in ``.yaml`` or ``.yml`` are read with PyYAML
into the same keys. Matching sweeps (`SweepConfig`) know

    field, alpha_lo, alpha_hi, grid, sampling, seed, start, cap, mode, guard_band,
    precision_cap_bits, workers, out, format

and density sweeps (`DensityConfig`)

    beta, alpha_lo, alpha_hi, grid, sampling, seed, n, eps, x0, workers, out, format

Alpha endpoints are exact scalar expressions over the field (``beta^-3``, ``1/2``, ``2-beta``).
"""
from ..matching import parse_start
from ..utils import Mode
from ..utils.enumerators import DEFAULT_CAP, DEFAULT_EPSILON, DEFAULT_GUARD_BAND, DEFAULT_PRECISION_CAP_BITS
from ..utils.errors import ConfigError
from ..utils.parsing import is_field_spec, parse_field_spec, parse_scalar

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
import numpy as np
import yaml

SAMPLINGS = ('grid', 'random')

# Denominator of randomly sampled rational parameters
RANDOM_DENOMINATOR = 1 << 20


class _FlatConfig:
    """ Parsing, validation and serialization shared by the sweep configurations. """

    @classmethod
    def parse(cls, text: str):
        values = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition('=')
            if not sep:
                raise ConfigError(f'line {number}: expected key = value, got {line!r}')
            values[key.strip().lower()] = value.strip()
        return cls.from_mapping(values)

    @classmethod
    def load(cls, path):
        path = Path(path)
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigError(f'cannot read config {path}: {e}') from e
        if path.suffix in ('.yaml', '.yml'):
            try:
                data = yaml.safe_load(text) or {}
            except yaml.YAMLError as e:
                raise ConfigError(f'{path}: {e}') from e
            if not isinstance(data, dict):
                raise ConfigError(f'{path}: expected a mapping at the top level')
            return cls.from_mapping(data)
        return cls.parse(text)

    @classmethod
    def from_mapping(cls, data: dict):
        known = {f.name: f for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ConfigError(f'unknown config keys {sorted(unknown)} for {cls.__name__}')
        kwargs = {}
        for key, value in data.items():
            try:
                kwargs[key] = cls._convert(key, value)
            except (TypeError, ValueError) as e:
                if isinstance(e, ConfigError):
                    raise
                raise ConfigError(f'bad value {value!r} for {key}: {e}') from e
        return cls(**kwargs)

    def serialize(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = '; '.join(value)
            elif isinstance(value, Mode):
                value = value.value
            elif value is None:
                value = 'none'
            lines.append(f'{f.name} = {value}')
        return '\n'.join(lines) + '\n'

    def override(self, **changes):
        """ Copy with the non-None values of `changes` applied, as CLI flags do. """
        changes = {k: self._convert(k, v) for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    @classmethod
    def _convert(cls, key: str, value):
        if isinstance(value, str) and value.strip().lower() == 'none' and key in ('out', 'seed'):
            return None
        match key:
            case 'grid' | 'cap' | 'workers' | 'precision_cap_bits' | 'n' | 'seed':
                return int(value)
            case 'guard_band' | 'eps':
                return float(value)
            case 'mode':
                return Mode(str(value).strip().lower())
            case 'start':
                if isinstance(value, (list, tuple)):
                    return tuple(str(v).strip() for v in value)
                return tuple(s.strip() for s in str(value).split(';') if s.strip())
            case _:
                return str(value).strip()

    def _check_common(self):
        if self.grid < 1:
            raise ConfigError(f'grid must be >= 1, got {self.grid}')
        if self.sampling not in SAMPLINGS:
            raise ConfigError(f'sampling must be one of {SAMPLINGS}, got {self.sampling!r}')
        if self.format not in ('csv', 'json'):
            raise ConfigError(f'format must be csv or json, got {self.format!r}')
        if self.workers < 1:
            raise ConfigError(f'workers must be >= 1, got {self.workers}')

    def _alphas(self, field) -> list:
        """ Exact parameter points: the grid lo + j (hi - lo)/(g - 1) or seeded random rationals in [lo, hi]. """
        lo, hi = parse_scalar(self.alpha_lo, field), parse_scalar(self.alpha_hi, field)
        if not 0 <= lo <= hi < 1:
            raise ConfigError(f'alpha range [{self.alpha_lo}, {self.alpha_hi}] must satisfy 0 <= lo <= hi < 1')
        if self.sampling == 'random':
            rng = np.random.default_rng(self.seed)
            first = int(np.ceil(float(lo) * RANDOM_DENOMINATOR))
            last = int(np.floor(float(hi) * RANDOM_DENOMINATOR))
            ks = rng.integers(first, last + 1, size=self.grid)
            return [Fraction(int(k), RANDOM_DENOMINATOR) for k in ks]
        if self.grid == 1:
            return [lo]
        step = (hi - lo) / (self.grid - 1)
        return [lo + j * step for j in range(self.grid)]


@dataclass(frozen=True)
class SweepConfig(_FlatConfig):
    """ A matching sweep over translations alpha at the slope of `field`, one curve per start mode. """
    field: str = 'multinacci(3)'
    alpha_lo: str = 'beta^-2'
    alpha_hi: str = 'beta^-1'
    grid: int = 100
    sampling: str = 'grid'
    seed: int = 0
    start: tuple = ('zero-one',)
    cap: int = DEFAULT_CAP
    mode: Mode = Mode.EXACT
    guard_band: float = DEFAULT_GUARD_BAND
    precision_cap_bits: int = DEFAULT_PRECISION_CAP_BITS
    workers: int = 1
    out: str | None = None
    format: str = 'csv'

    def __post_init__(self):
        self._check_common()
        if not self.start:
            raise ConfigError('at least one start mode is needed')
        for start in self.start:
            parse_start(start)

    def build_field(self):
        return parse_field_spec(self.field, self.precision_cap_bits)

    def starts(self, field) -> list[tuple]:
        """ (tag, eps, e-vector) per start mode; eps and e-vector are None for the pair (0, 1).

        Raises:
            ConfigError: If an e-vector does not have N digits.
        """
        out = []
        for start in self.start:
            eps, state = parse_start(start)
            if state is not None and state.degree != field.degree:
                raise ConfigError(f'start {start!r}: e-vector needs {field.degree} digits for {self.field}')
            out.append((start, eps, state))
        return out

    def points(self, field) -> list:
        return self._alphas(field)


@dataclass(frozen=True)
class DensityConfig(_FlatConfig):
    """ Visited fractions of attractor cells by the orbit of x0 over a range of translations. """
    beta: str = 'multinacci(3)'
    alpha_lo: str = '0'
    alpha_hi: str = '1/2'
    grid: int = 100
    sampling: str = 'grid'
    seed: int = 0
    n: int = 100_000
    eps: float = DEFAULT_EPSILON
    x0: str = '0'
    workers: int = 1
    out: str | None = None
    format: str = 'csv'

    def __post_init__(self):
        self._check_common()
        if self.n < 0:
            raise ConfigError(f'n must be >= 0, got {self.n}')
        if self.eps <= 0:
            raise ConfigError(f'eps must be positive, got {self.eps}')

    def build_field(self):
        return parse_field_spec(self.beta) if is_field_spec(self.beta) else None

    def slope(self) -> float:
        field = self.build_field()
        return field.generator.to_float() if field is not None else float(parse_scalar(self.beta))

    def points(self) -> list[float]:
        return [float(a) for a in self._alphas(self.build_field())]
