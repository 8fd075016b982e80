from .XiCurve import XiCurve, QSequenceReport, q_sequence
from .ParamWindow import ParamWindow, WindowEdge, DistortionReport, param_window, distortion_profile
from .CuttingTimes import Arm, CuttingTimes, closest_approach_times
from .Attractor import IntervalCycle, DensityProfile, attractor, check_boundary, cover_time, density_profile, image_union
