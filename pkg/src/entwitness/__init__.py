"""Dissipative two-qubit dynamics with an entropic entanglement witness.

Simulates two two-level atoms, each coupled to an independent zero-temperature
reservoir with a Lorentzian spectrum, through a second-order time-local master
equation, and derives the quantum-memory-assisted entropic uncertainty bound,
the Wootters concurrence, and witness reports from the sampled evolution.
"""

from .errors import (EmptyTrajectory, EntwitnessError, IntegrationDiverged,
                     NoConvergence, NotDensityMatrix, NotHermitian, NotXState,
                     ParseError, QuadratureUnconverged, ValidationError)
from .linalg import (general_eigenvalue_moduli, hermitian_eigenvalues,
                     matrix_entropy, rk4_step)
from .dynamics import (Regime, ReservoirParams, SystemState, Trajectory,
                       TrajectorySample, bell_initial, classify_regime,
                       correlation_f, correlation_f_quadrature,
                       liouvillian_apply, propagate)
from .information import (SX_BASIS, SY_BASIS, MeasurementBasis,
                          UncertaintyRecord, conditional_entropy,
                          partial_trace, post_measurement_state,
                          uncertainty_record)
from .witness import (WitnessReport, concurrence, concurrence_x_state,
                      entanglement_death_time, witness_report)
from .scenario import (PRESETS, ScenarioConfig, SweepRow, emit_csv,
                       parse_config, run_scenario, sweep)

__version__ = "0.1.0"

__all__ = [
    "EmptyTrajectory", "EntwitnessError", "IntegrationDiverged", "NoConvergence",
    "NotDensityMatrix", "NotHermitian", "NotXState", "ParseError",
    "QuadratureUnconverged", "ValidationError",
    "general_eigenvalue_moduli", "hermitian_eigenvalues", "matrix_entropy", "rk4_step",
    "Regime", "ReservoirParams", "SystemState", "Trajectory", "TrajectorySample",
    "bell_initial", "classify_regime", "correlation_f", "correlation_f_quadrature",
    "liouvillian_apply", "propagate",
    "SX_BASIS", "SY_BASIS", "MeasurementBasis", "UncertaintyRecord",
    "conditional_entropy", "partial_trace", "post_measurement_state",
    "uncertainty_record",
    "WitnessReport", "concurrence", "concurrence_x_state",
    "entanglement_death_time", "witness_report",
    "PRESETS", "ScenarioConfig", "SweepRow", "emit_csv", "parse_config",
    "run_scenario", "sweep",
    "__version__",
]
