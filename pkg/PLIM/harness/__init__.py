from .SweepConfig import SweepConfig, DensityConfig
from .SweepRunner import SweepRunner, SweepRecord, DensityRecord, sweep_matching, sweep_density
from .output import write_records, write_rows, write_object
