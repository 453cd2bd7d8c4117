"""Affinity-based geometric quantum discord for bipartite states.

Closed forms for pure states and for a two-level measured party, a spectral
lower bound from the square-root correlation matrix, brute-force
optimization over projective measurements, and analytic formulas for the
Bell-diagonal, Werner, and isotropic families.
"""

from .correlation import (
    CorrelationMatrix,
    GammaPartition,
    OperatorBasis,
    closed_form_2xn,
    correlation_matrix,
    gamma_partition,
    gell_mann_basis,
    lower_bound,
    lower_bound_clamped,
)
from .errors import (
    DimensionMismatchError,
    InvalidBlochVectorError,
    InvalidProbabilitiesError,
    NonHermitianError,
    NonSquareError,
    NotPSDError,
    NotUnitTraceError,
    OutOfRangeError,
    UnknownFamilyError,
    UnsupportedDimensionError,
    ValidationError,
    WrongDimensionError,
)
from .families import (
    BellDiagonalSqrtData,
    SweepRow,
    bell_diagonal_discord,
    bell_diagonal_hs_discord,
    bell_diagonal_sqrt_data,
    isotropic_discords,
    sweep,
    sweep_to_csv,
    werner_general_discords,
    werner_two_qubit_discords,
)
from .linalg import (
    EigenDecomposition,
    frobenius_norm_sq,
    haar_unitary,
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    partial_trace,
)
from .measures import (
    AncillaReport,
    DiscordResult,
    MeasurementBasis,
    affinity,
    affinity_discord_at,
    affinity_metric,
    affinity_to_measured,
    ancilla_behavior_report,
    hs_discord_at,
    optimize_affinity_discord,
    optimize_hs_discord,
    post_measurement,
    pure_discord,
    remedied_hs_discord,
)
from .states import (
    BipartiteState,
    PureState,
    append_ancilla,
    bell_diagonal,
    bell_state,
    classical_quantum,
    isotropic,
    load_state,
    maximally_entangled,
    product_state,
    random_density,
    random_pure_state,
    random_state,
    save_state,
    schmidt_spectrum,
    state_from_json,
    state_to_json,
    swap_operator,
    validate,
    werner_general,
    werner_two_qubit,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .verification import CHECK_NAMES, CheckResult, run_checks

__version__ = "0.1.0"
