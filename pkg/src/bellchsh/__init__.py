"""Numerics for Bell-CHSH violations of singlets, squeezed states and
the accelerated vacuum.

The package builds CHSH operator quadruples from phase-flip
constructions on finite and truncated-Fock spaces, evaluates the
correlator both in closed form and through the explicit matrices, and
parametrizes the field-theory violation by the Unruh temperature.
"""

from .chsh import (
    AngleSet,
    ChshQuadruple,
    ClosedFormCorrelator,
    TSIRELSON_BOUND,
    ValidationReport,
    chsh_operator,
    chsh_value,
    optimize_angles,
    validate_quadruple,
    wrap_angle,
)
from .errors import (
    CapacityError,
    ConfigError,
    ConsistencyError,
    DegenerateInputError,
    DomainError,
    PreconditionError,
    PrecisionError,
    ShapeError,
)
from .fock import (
    BogoliubovPair,
    FockSpace,
    MAX_VIOLATION_ANGLES,
    SqueezedState,
    bogoliubov_pair,
    chsh_closed,
    chsh_matrix,
    correlator_closed,
    fock_quadruple,
    ladder_matrices,
    pair_flip,
    squeezed_closed_form,
    squeezed_hamiltonian,
    squeezed_state,
    violation_window,
)
from .kleingordon import (
    GaussianPacket,
    NormEstimate,
    ShellQuadrature,
    normalize,
    shell_inner_product,
    sigma_chsh,
    test_norm,
)
from .linalg import (
    DenseOperator,
    Ket,
    MAX_TENSOR_DIM,
    STRUCTURE_TOL,
    adjoint,
    expectation,
    tensor,
    tensor_ket,
)
from .rindler import (
    RindlerModeSet,
    ScanRow,
    mode_squeezing,
    rindler_chsh,
    tau,
    tau_exponential_form,
    temperature_scan,
    unruh_temperature,
)
from .spin import (
    SPIN_HALF,
    SPIN_ONE,
    SPIN_ONE_VIOLATION_ANGLES,
    SingletState,
    SpinBasisLabel,
    TSIRELSON_ANGLES,
    flip_operator,
    singlet,
    spin_half_chsh_closed,
    spin_half_pair_correlator,
    spin_hamiltonian,
    spin_matrices,
    spin_one_chsh_closed,
    spin_one_closed_form,
    spin_quadruple,
    total_spin_squared,
)

__version__ = "0.1.0"
