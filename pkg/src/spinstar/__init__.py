"""Exact solver for the spin-star Heisenberg XX model."""

from .analytic import (
    EigenLevel,
    alpha_field_window,
    alpha_state,
    beta_state,
    eigenstate,
    ground_states_zero_field,
    level_energy,
    oscillation_amplitude,
    pair_concurrence_analytic,
    spectrum,
    xx_correlation_analytic,
)
from .angular import HalfInt, SectorTable, dicke, lowering_coeff, sectors, state_count
from .errors import DomainError, MeasurementError, ResourceError, SpinStarError, StructureError
from .params import ModelParams

__version__ = "0.1.0"
