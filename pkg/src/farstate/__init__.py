"""States far from every eigenstate of any non-trivial local Hamiltonian.

Build quantum code states whose Pauli orbits are orthonormal, evaluate the
parameter-counting formulas and existence conditions that guarantee such
states exist, and certify the resulting eigenstate-distance lower bounds by
exact diagonalization at desk scale (n <= 12 qubits).
"""

from .bounds import (
    bound_coarse,
    bound_generic,
    bound_intrinsic,
    coeff_ratio,
    gv_exists,
    gv_rate,
    gv_threshold_k0,
    minimizing_shift,
    param_count,
    param_count_closed,
    param_count_upper,
)
from .codes import (
    FarStateReport,
    StabilizerCode,
    codeword,
    max_passing_locality,
    preset_code,
    verify_far_state,
)
from .hamiltonian import (
    CoefficientVector,
    LocalHamiltonian,
    coefficients,
    decompose_dense,
    preset_hamiltonian,
    random_local,
    shift,
    to_dense,
)
from .pauli import (
    PauliString,
    StateVector,
    apply,
    commutes,
    enumerate_weight_at_most,
    expectation,
    format_pauli,
    inner,
    multiply,
    parse_pauli,
    weight,
)
from .spectra import (
    BoundReport,
    EigenDecomposition,
    Eigenspace,
    eig_hermitian,
    eigenspace_distance,
    group_eigenspaces,
    operator_norm,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "PauliString",
    "StateVector",
    "StabilizerCode",
    "LocalHamiltonian",
    "CoefficientVector",
    "FarStateReport",
    "BoundReport",
    "EigenDecomposition",
    "Eigenspace",
    "weight",
    "multiply",
    "commutes",
    "parse_pauli",
    "format_pauli",
    "enumerate_weight_at_most",
    "apply",
    "inner",
    "expectation",
    "codeword",
    "verify_far_state",
    "max_passing_locality",
    "preset_code",
    "to_dense",
    "decompose_dense",
    "shift",
    "coefficients",
    "random_local",
    "preset_hamiltonian",
    "param_count",
    "param_count_closed",
    "param_count_upper",
    "gv_exists",
    "gv_rate",
    "gv_threshold_k0",
    "coeff_ratio",
    "bound_intrinsic",
    "bound_generic",
    "bound_coarse",
    "minimizing_shift",
    "eig_hermitian",
    "group_eigenspaces",
    "eigenspace_distance",
    "operator_norm",
    "verify_theorem",
    "__version__",
]
