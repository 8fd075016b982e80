from PLIM.harness import DensityConfig, SweepConfig, SweepRunner, sweep_matching, write_records
from PLIM.utils import Mode, Status
from PLIM.utils.errors import ConfigError

from fractions import Fraction
import pytest

TWO_BRANCH = """
# golden mean slope, alpha below 2 - beta
field = multinacci(2)
alpha_lo = 1/10
alpha_hi = 3/10
grid = 3
start = zero-one
"""


def test_parse_flat_config():
    cfg = SweepConfig.parse(TWO_BRANCH)
    assert cfg.field == 'multinacci(2)'
    assert cfg.grid == 3 and cfg.start == ('zero-one',)
    assert cfg.mode == Mode.EXACT
    assert SweepConfig.parse(cfg.serialize()) == cfg


def test_yaml_config(tmp_path):
    path = tmp_path / 'sweep.yaml'
    path.write_text('field: multinacci(4)\nalpha_lo: beta^-3\nalpha_hi: beta^-1\ngrid: 5\n'
                    'start:\n  - zero-one\n  - near:eps=1/100,e=0110\n')
    cfg = SweepConfig.load(path)
    assert cfg.start == ('zero-one', 'near:eps=1/100,e=0110')
    field = cfg.build_field()
    points = cfg.points(field)
    assert points[0] == field.beta_power(-3) and points[-1] == field.beta_power(-1)
    assert len(cfg.starts(field)) == 2


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        SweepConfig.parse('colour = blue')
    with pytest.raises(ConfigError):
        SweepConfig.parse('grid = 0')
    with pytest.raises(ConfigError):
        SweepConfig.parse('grid')
    with pytest.raises(ConfigError):
        SweepConfig.parse('start = near:eps=1/100')
    with pytest.raises(ConfigError):
        SweepConfig.load(tmp_path / 'missing.cfg')
    cfg = SweepConfig(start=('near:eps=1/100,e=0110',))
    with pytest.raises(ConfigError):
        cfg.starts(cfg.build_field())
    with pytest.raises(ConfigError):
        SweepConfig(alpha_lo='1/2', alpha_hi='3/2').points(SweepConfig().build_field())


def test_grid_points():
    cfg = SweepConfig(field='multinacci(2)', alpha_lo='0', alpha_hi='1/2', grid=3)
    assert cfg.points(cfg.build_field()) == [0, Fraction(1, 4), Fraction(1, 2)]
    single = cfg.override(grid=1)
    assert single.points(single.build_field()) == [0]


def test_random_points_are_seeded():
    cfg = SweepConfig(sampling='random', seed=7, grid=20, alpha_lo='1/4', alpha_hi='1/2')
    field = cfg.build_field()
    points = cfg.points(field)
    assert points == cfg.points(field)
    assert all(Fraction(1, 4) <= a <= Fraction(1, 2) for a in points)
    assert points != cfg.override(seed=8).points(field)


def test_matching_sweep_two_branch():
    records = sweep_matching(SweepConfig.parse(TWO_BRANCH), progress=False)
    assert [r.kappa for r in records] == [2, 2, 2]
    assert [r.alpha_exact for r in records] == ['1/10', '1/5', '3/10']
    assert all(r.status == Status.SUCCESS.name and r.outcome == 'matched' for r in records)


def test_sweep_is_deterministic_across_workers():
    cfg = SweepConfig.parse(TWO_BRANCH).override(field='multinacci(3)', alpha_lo='1/100', alpha_hi='3/20', grid=6)
    serial = SweepRunner(progress=False).sweep_matching(cfg)
    threaded = SweepRunner(progress=False).sweep_matching(cfg.override(workers=3))
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in threaded]


def test_failures_are_recorded():
    cfg = SweepConfig(field='multinacci(3)', alpha_lo='1/2', alpha_hi='1/2', grid=1,
                      start=('near:eps=1/100,e=011', 'near:eps=1,e=011'), cap=50)
    runner = SweepRunner(progress=False)
    records = runner.sweep_matching(cfg)
    assert len(records) == 2
    assert records[1].status == Status.INVALID_PARAMETERS.name
    assert runner.status == Status.POINT_FAILURES


def test_density_sweep():
    cfg = DensityConfig(beta='multinacci(3)', alpha_lo='3/10', alpha_hi='2/5', grid=2, n=2000, eps=0.05)
    records = SweepRunner(progress=False).sweep_density(cfg)
    assert [r.index for r in records] == [0, 1]
    assert records[0].alpha == pytest.approx(0.3)
    assert all(r.status == Status.SUCCESS.name and 0 < r.fraction <= 1 for r in records)
    assert DensityConfig(beta='1.5').slope() == 1.5


def test_write_records_csv(tmp_path):
    records = sweep_matching(SweepConfig.parse(TWO_BRANCH), progress=False)
    path = tmp_path / 'out.csv'
    write_records(records, path, 'csv')
    lines = path.read_text().splitlines()
    assert lines[0].startswith('index,start,alpha,alpha_exact,outcome,kappa')
    assert len(lines) == 4
