"""Thermal quantum discord and entanglement for a two-qubit Josephson
charge-qubit device: control maps, Gibbs states, correlation measures,
parameter sweeps and critical-point searches."""

from .correlations import (
    CorrelationReport,
    Measurement,
    binary_entropy,
    classical_correlation,
    concurrence,
    conditional_entropy,
    discord_grid_oracle,
    eof,
    eof_from_concurrence,
    ground_state_discord_analytic,
    measurement_projector,
    mutual_information,
    quantum_discord,
    von_neumann_entropy,
)
from .device import (
    CONSTANTS,
    DeviceParams,
    EffectiveParams,
    PhysicalConstants,
    ThermalSpec,
    build_hamiltonian,
    charge_energy,
    closed_form_thermal,
    effective_params,
    epsilon_from_voltage,
    gibbs_state,
    interbit_coupling,
    intrabit_coupling,
    thermal_state,
)
from .errors import (
    BracketError,
    ConfigError,
    DimensionError,
    DomainError,
    InvalidParameterError,
    NotAStateError,
    NotHermitianError,
    SpecValidationError,
    UnsupportedRegimeError,
)
from .qmath import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Spectrum,
    frobenius_distance,
    hermitian_eigen,
    kron,
    matrix_function,
    partial_trace,
)
from .sweep import (
    FIGURES,
    MEASURES,
    VARIABLES,
    CriticalPoint,
    SweepRow,
    SweepSpec,
    esd_temperature,
    figure_preset,
    optimal_ratio,
    sweep_1d,
    sweep_2d,
)

__version__ = "0.1.0"
