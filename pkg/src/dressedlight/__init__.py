"""Collective dressed-state optics of two laser-driven two-level ensembles.

Evaluates the thermal-like dressed steady state of two driven atomic
species damped by a common vacuum, the weak-probe susceptibility of the
medium with its refractive and group indices, and cross-checks both against
a dense master-equation oracle in the symmetric collective-spin basis.
"""

from ._version import __version__
from .core import (
    DegenerateParametersError,
    DressedSteadyState,
    EnsembleParams,
    InvalidRegimeError,
    RegimeChecks,
    SampleGeometry,
    SecularReport,
    generalized_rabi,
    mixing_angle,
    secular_validity_check,
)
from .oracle import (
    CollectiveOperators,
    DegenerateSteadyStateError,
    OracleModel,
    OracleSizeError,
    build_liouvillian,
    build_operators,
    dressed_inversion_operator,
    oracle_dressed_inversion,
    regression_spectrum,
    steady_rho,
)
from .response import (
    DampingRates,
    ProbePoint,
    ResponseSample,
    SingularIndexError,
    chi_prime_derivative,
    damping_rates,
    find_zero_absorption,
    group_index,
    kramers_kronig_real,
    refractive_index,
    susceptibility,
    susceptibility_terms,
    switching_time,
)
from .steady_state import (
    dressed_inversion,
    inversion_exponent,
    log_partition,
    solve_ensemble,
)
from .sweeps import (
    CSV_COLUMNS,
    FIGURES,
    ConfigError,
    OracleBlock,
    OracleReport,
    SweepConfig,
    SweepResult,
    compare_oracle,
    evaluate_point,
    figure_configs,
    load_config,
    parse_config,
    read_dataset,
    run_figure,
    run_sweep,
    write_dataset,
)

__all__ = [
    "__version__",
    "CSV_COLUMNS",
    "CollectiveOperators",
    "ConfigError",
    "DampingRates",
    "DegenerateParametersError",
    "DegenerateSteadyStateError",
    "DressedSteadyState",
    "EnsembleParams",
    "FIGURES",
    "InvalidRegimeError",
    "OracleBlock",
    "OracleModel",
    "OracleReport",
    "OracleSizeError",
    "ProbePoint",
    "RegimeChecks",
    "ResponseSample",
    "SampleGeometry",
    "SecularReport",
    "SingularIndexError",
    "SweepConfig",
    "SweepResult",
    "build_liouvillian",
    "build_operators",
    "chi_prime_derivative",
    "compare_oracle",
    "damping_rates",
    "dressed_inversion",
    "dressed_inversion_operator",
    "evaluate_point",
    "figure_configs",
    "find_zero_absorption",
    "generalized_rabi",
    "group_index",
    "inversion_exponent",
    "kramers_kronig_real",
    "load_config",
    "log_partition",
    "mixing_angle",
    "oracle_dressed_inversion",
    "parse_config",
    "read_dataset",
    "refractive_index",
    "regression_spectrum",
    "run_figure",
    "run_sweep",
    "secular_validity_check",
    "solve_ensemble",
    "steady_rho",
    "susceptibility",
    "susceptibility_terms",
    "switching_time",
    "write_dataset",
]
