"""Simulation and analysis of coherence de Broglie waves in coupled Mach-Zehnder chains."""

from .chain import (ArmSpec, Chain, CouplingSection, MziStage, canonical_cascade, chain_matrix,
                    monitor_matrices, path_sum_oracle, set_path, single_mzi, validate_chain)
from .errors import (CBWError, InvalidArgument, NoModulation, UndefinedVisibility, UnsupportedSize,
                     ValidationError, WindowTooShort)
from .fringes import (PeriodEstimate, WavelengthQuery, effective_wavelength, estimate_period,
                      frequency_component, visibility)
from .imaging import FringeImage, bar_fringe_image, newton_ring_image, pgm_encode
from .optics import (apply, attenuation_matrix, bs_matrix, coupling_matrix, intensity, is_unitary,
                     matmul, mzi_matrix, phase_matrix)
from .scenario_io import parse_scenario, preset, serialize_scenario
from .timesim import Event, Scenario, TimeSeries, arm_phase, event_timeline, simulate

__version__ = "0.1.0"
