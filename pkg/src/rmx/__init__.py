"""Quantum R-matrices and numerical verification of their identity hierarchy.

The package builds the rational (Yang) and elliptic (Baxter-Belavin type)
quantum R-matrices in the fundamental representation of gl(N), together
with the scalar special functions they degenerate to, and checks the
ladder of cyclic-product identities they satisfy: unitarity, the quantum
and associative Yang-Baxter equations, the n-th order cyclic sums, the
classical expansion, and two applications (block Lax trace powers and
flatness of the induced classical connection).
"""

from .errors import (
    BudgetExceeded,
    ContourHitsPole,
    DegenerateArguments,
    DimensionMismatch,
    ExpansionFailed,
    IndexOutOfRange,
    NonEllipticKind,
    PoleProximity,
    QuadratureNotConverged,
    RmxError,
    SeriesNotConverged,
    SizeCapExceeded,
    UnsupportedDerivOrder,
    UsageError,
    ZeroArgument,
)
from .special_functions import (
    FunctionKind,
    LatticeParams,
    MAX_WP_DERIV_ORDER,
    eisenstein_e1,
    fay_check,
    kronecker_phi,
    kronecker_phi_deta,
    scalar_cyclic_sum,
    theta,
    weierstrass_p,
)
from .tensor_ops import (
    DEFAULT_SIZE_CAP,
    TensorOperator,
    embed_two_site,
    frobenius_distance,
    identity_operator,
    is_scalar_operator,
    permutation_operator,
)
from .rmatrix import (
    ClassicalPair,
    HbarDerivative,
    RMatrixKind,
    RMatrixSpec,
    belavin_r,
    classical_closed_form,
    classical_expansion,
    r_deriv_hbar,
    r_matrix,
    r_same_site,
    same_site_closed_form,
    structure_phase,
    t_basis,
    yang_r,
)
from .identities import (
    IdentityReport,
    check_aybe,
    check_nth_order,
    check_outer_index_independence,
    check_qybe,
    check_skew_symmetry,
    check_unitarity,
    cyclic_product_sum,
    default_tolerance,
    term_sequences,
)
from .applications import (
    CalogeroConfig,
    block_matrix_power,
    check_hbar_order_relation,
    check_kzb_flatness,
    check_trace_power_guess,
    lax_krichever,
    lax_rmatrix,
)
from .cli import run_suites

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RmxError",
    "NonEllipticKind",
    "SeriesNotConverged",
    "PoleProximity",
    "UnsupportedDerivOrder",
    "DegenerateArguments",
    "IndexOutOfRange",
    "DimensionMismatch",
    "SizeCapExceeded",
    "ZeroArgument",
    "ContourHitsPole",
    "QuadratureNotConverged",
    "ExpansionFailed",
    "BudgetExceeded",
    "UsageError",
    "FunctionKind",
    "LatticeParams",
    "MAX_WP_DERIV_ORDER",
    "theta",
    "eisenstein_e1",
    "weierstrass_p",
    "kronecker_phi",
    "kronecker_phi_deta",
    "fay_check",
    "scalar_cyclic_sum",
    "TensorOperator",
    "DEFAULT_SIZE_CAP",
    "identity_operator",
    "permutation_operator",
    "embed_two_site",
    "is_scalar_operator",
    "frobenius_distance",
    "RMatrixKind",
    "RMatrixSpec",
    "t_basis",
    "structure_phase",
    "yang_r",
    "belavin_r",
    "r_matrix",
    "r_same_site",
    "same_site_closed_form",
    "r_deriv_hbar",
    "HbarDerivative",
    "classical_expansion",
    "classical_closed_form",
    "ClassicalPair",
    "IdentityReport",
    "default_tolerance",
    "term_sequences",
    "cyclic_product_sum",
    "check_nth_order",
    "check_unitarity",
    "check_qybe",
    "check_aybe",
    "check_skew_symmetry",
    "check_outer_index_independence",
    "CalogeroConfig",
    "lax_rmatrix",
    "lax_krichever",
    "block_matrix_power",
    "check_trace_power_guess",
    "check_kzb_flatness",
    "check_hbar_order_relation",
    "run_suites",
]
