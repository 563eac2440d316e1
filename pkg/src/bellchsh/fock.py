"""Truncated two-mode Fock space: squeezed states and their CHSH physics.

The two bosonic modes are truncated to ``cutoff`` levels each (total
dimension ``cutoff**2``).  The cutoff must be even so the parity-pair
flip operators, which swap levels ``2n <-> 2n+1``, close on the
truncated space and square exactly to the identity.

The two-mode squeezed state with parameter ``eta`` has amplitudes
proportional to ``eta**n`` on the diagonal pair states |n, n>.  For an
even cutoff the renormalized truncated state reproduces the closed-form
pair correlator

    <A(alpha) B(beta)> = 2 eta / (1 + eta^2) * cos(alpha + beta)

exactly (every flip pair lies inside the cutoff), so closed form and
matrix evaluation differ only by float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chsh import AngleSet, ChshQuadruple, ClosedFormCorrelator
from .errors import ConsistencyError, DomainError
from .linalg import DenseOperator, Ket, tensor

#: Phase choice turning the squeezed closed form into 2 * (2 sqrt(2) eta
#: / (1 + eta^2)): the cosine combination saturates at 2 sqrt(2).
MAX_VIOLATION_ANGLES = AngleSet(0.0, math.pi / 2, -math.pi / 4, math.pi / 4)

#: Default per-mode cutoff: eta**(2*40) <= 1e-7 up to eta ~ 0.82 while the
#: product space stays a manageable 1600 dimensions.
DEFAULT_CUTOFF = 40


@dataclass(frozen=True)
class FockSpace:
    """Two bosonic modes truncated to ``cutoff`` levels each."""

    cutoff: int

    def __post_init__(self):
        if self.cutoff < 4:
            raise DomainError(f"cutoff must be >= 4, got {self.cutoff}")
        if self.cutoff % 2 != 0:
            raise DomainError(
                f"cutoff must be even so flip pairs (2n, 2n+1) close, got {self.cutoff}"
            )

    @property
    def dim(self) -> int:
        return self.cutoff * self.cutoff

    def diagonal_index(self, n: int) -> int:
        """Composite index of the pair state |n, n>."""
        return n * self.cutoff + n


def _check_eta(eta: float) -> float:
    if not 0.0 < eta < 1.0:
        raise DomainError(f"squeezing parameter must lie in (0, 1), got {eta}")
    return float(eta)


def _mode_lowering(cutoff: int) -> np.ndarray:
    m = np.zeros((cutoff, cutoff), dtype=complex)
    n = np.arange(1, cutoff)
    m[n - 1, n] = np.sqrt(n)
    return m


def ladder_matrices(space: FockSpace) -> tuple[DenseOperator, DenseOperator,
                                               DenseOperator, DenseOperator]:
    """Truncated ladder operators (a, a_dag, b, b_dag) on the full space.

    Within the cutoff they satisfy the canonical algebra; the only
    truncation artifact sits on the top level of each mode, where
    ``[a, a_dag]`` picks up the diagonal entry ``1 - cutoff`` instead
    of 1.  Cross-mode commutators such as ``[a, b_dag]`` vanish exactly.
    """
    low = _mode_lowering(space.cutoff)
    eye = np.eye(space.cutoff)
    a = DenseOperator(np.kron(low, eye))
    b = DenseOperator(np.kron(eye, low))
    return a, a.adjoint(), b, b.adjoint()


@dataclass(frozen=True, eq=False)
class SqueezedState:
    """Normalized truncated two-mode squeezed state."""

    eta: float
    space: FockSpace
    ket: Ket


def squeezed_state(eta: float, space: FockSpace) -> SqueezedState:
    """Two-mode squeezed state with diagonal amplitudes ~ eta**n.

    Before renormalization the amplitudes are sqrt(1 - eta^2) * eta**n
    on |n, n>, whose truncated squared norm is 1 - eta**(2*cutoff); the
    returned ket is renormalized to norm 1 exactly.
    """
    eta = _check_eta(eta)
    n = space.cutoff
    amp = np.zeros(space.dim, dtype=complex)
    amp[np.arange(n) * n + np.arange(n)] = math.sqrt(1.0 - eta * eta) * eta ** np.arange(n)
    return SqueezedState(eta=eta, space=space, ket=Ket(amp).normalize())


@dataclass(frozen=True, eq=False)
class BogoliubovPair:
    """Mixed-mode annihilation operators whose vacuum is the squeezed state.

    alpha = (a - eta * b_dag) / sqrt(1 - eta^2)
    beta  = (b - eta * a_dag) / sqrt(1 - eta^2)

    On the sub-block with both modes below the top level they satisfy
    the same canonical commutation relations as (a, b); the truncation
    residue of ``[alpha, alpha_dag] - 1`` and ``[alpha, beta]`` is
    confined to the top Fock level.
    """

    eta: float
    alpha: DenseOperator
    beta: DenseOperator


def bogoliubov_pair(eta: float, space: FockSpace) -> BogoliubovPair:
    """Build the mixed-mode pair (alpha, beta) for the given squeezing."""
    eta = _check_eta(eta)
    a, a_dag, b, b_dag = ladder_matrices(space)
    scale = 1.0 / math.sqrt(1.0 - eta * eta)
    return BogoliubovPair(
        eta=eta,
        alpha=scale * (a - eta * b_dag),
        beta=scale * (b - eta * a_dag),
    )


def squeezed_hamiltonian(eta: float, space: FockSpace) -> DenseOperator:
    """Quadratic Hamiltonian whose ground state is the squeezed state.

    H = (1+eta^2)/(1-eta^2) (a_dag a + b_dag b)
        - 2 eta/(1-eta^2) (a_dag b_dag + a b)
        + 2 eta^2/(1-eta^2)

    The constant term is fixed by H = alpha_dag alpha + beta_dag beta,
    which makes H |eta> vanish up to the cutoff residue.  Built from
    per-mode factors, so no large matrix products are formed.
    """
    eta = _check_eta(eta)
    n = space.cutoff
    low = _mode_lowering(n)
    raz = low.conj().T
    num = np.diag(np.arange(n)).astype(complex)
    eye = np.eye(n)
    one_minus = 1.0 - eta * eta
    h = ((1.0 + eta * eta) / one_minus) * (np.kron(num, eye) + np.kron(eye, num))
    h -= (2.0 * eta / one_minus) * (np.kron(raz, raz) + np.kron(low, low))
    h += (2.0 * eta * eta / one_minus) * np.eye(space.dim)
    return DenseOperator(h, hermitian=True)


def pair_flip(space: FockSpace, side: str, phase: float) -> DenseOperator:
    """Parity-pair flip operator on one mode, identity on the other.

    On the designated mode it maps |2n> -> e^{i phase} |2n+1> and
    |2n+1> -> e^{-i phase} |2n>, so the matrix element
    <2n+1|F|2n> equals e^{i phase}.  Hermitian and an exact involution
    (the even cutoff leaves no dangling level).
    """
    if side not in ("A", "B"):
        raise DomainError(f"side must be 'A' or 'B', got {side!r}")
    n = space.cutoff
    if n % 2 != 0:
        raise DomainError("pair flip requires an even cutoff")
    local = np.zeros((n, n), dtype=complex)
    up = complex(np.exp(1j * phase))
    evens = np.arange(0, n, 2)
    local[evens + 1, evens] = up
    local[evens, evens + 1] = up.conjugate()
    local_op = DenseOperator(local, hermitian=True)
    eye = DenseOperator.identity(n)
    if side == "A":
        return tensor(local_op, eye)
    return tensor(eye, local_op)


def fock_quadruple(space: FockSpace, angles: AngleSet) -> ChshQuadruple:
    """Phase-flip CHSH quadruple on the truncated two-mode space."""
    return ChshQuadruple(
        a1=pair_flip(space, "A", angles.alpha1),
        a2=pair_flip(space, "A", angles.alpha2),
        b1=pair_flip(space, "B", angles.beta1),
        b2=pair_flip(space, "B", angles.beta2),
        angles=angles,
    )


def correlator_closed(eta: float, alpha_k: float, beta_i: float) -> float:
    """Closed-form pair correlator 2 eta/(1+eta^2) * cos(alpha_k + beta_i)."""
    eta = _check_eta(eta)
    return 2.0 * eta / (1.0 + eta * eta) * math.cos(alpha_k + beta_i)


def squeezed_closed_form(eta: float) -> ClosedFormCorrelator:
    """Squeezed-state CHSH closed form as an optimizable descriptor."""
    eta = _check_eta(eta)
    return ClosedFormCorrelator(
        prefactor=2.0 * eta / (1.0 + eta * eta),
        signs=(1.0, 1.0, 1.0, -1.0),
    )


def chsh_closed(eta: float, angles: AngleSet) -> float:
    """Closed-form squeezed-state CHSH value.

    At ``MAX_VIOLATION_ANGLES`` this equals 2 * (2 sqrt(2) eta /
    (1 + eta^2)): exactly 2 at eta = sqrt(2) - 1 and approaching
    2 sqrt(2) as eta -> 1.
    """
    return squeezed_closed_form(eta).value(angles)


def violation_window(tol: float = 1e-10) -> tuple[float, float]:
    """Squeezing interval on which the CHSH bound 2 is exceeded.

    Returns (sqrt(2) - 1, 1).  The lower endpoint is additionally
    recovered by bisecting ``chsh_closed(., MAX_VIOLATION_ANGLES) - 2``;
    a disagreement beyond ``tol`` raises ``ConsistencyError``.
    """
    analytic = math.sqrt(2.0) - 1.0

    def excess(eta: float) -> float:
        return chsh_closed(eta, MAX_VIOLATION_ANGLES) - 2.0

    lo, hi = 0.01, 0.99
    if not excess(lo) < 0.0 < excess(hi):
        raise ConsistencyError("violation-window bracket lost its sign change")
    while hi - lo > 0.25 * tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    if abs(root - analytic) > tol:
        raise ConsistencyError(
            f"bisection endpoint {root!r} deviates from sqrt(2)-1 by more than {tol}"
        )
    return analytic, 1.0


@lru_cache(maxsize=4)
def _pair_shift_matrices(cutoff: int) -> tuple[np.ndarray, np.ndarray,
                                               np.ndarray, np.ndarray]:
    """Full-space raising parts of the flips: (K, K_dag, L, L_dag).

    K moves mode A from |2n> to |2n+1| (identity on mode B), L does the
    same on mode B, so any flip operator is e^{i phase} K + e^{-i phase}
    K_dag.  Cached because cutoff 40 matrices weigh ~40 MB each.
    """
    up = np.zeros((cutoff, cutoff), dtype=complex)
    evens = np.arange(0, cutoff, 2)
    up[evens + 1, evens] = 1.0
    eye = np.eye(cutoff)
    shift_a = np.kron(up, eye)
    shift_b = np.kron(eye, up)
    return shift_a, shift_a.conj().T, shift_b, shift_b.conj().T


def chsh_matrix(eta: float, space: FockSpace, angles: AngleSet) -> float:
    """CHSH value of the squeezed state from the explicit flip matrices.

    Matrix route, independent of the closed form: the four shift
    matrices act once on the state vector and the four pair
    expectations <A_k psi | B_i psi> are assembled by linearity in the
    phases.  Cost is four dim^2 matrix-vector products per call, which
    keeps cutoff-40 sweeps cheap.
    """
    psi = squeezed_state(eta, space).ket.amplitudes
    shift_a, shift_a_dag, shift_b, shift_b_dag = _pair_shift_matrices(space.cutoff)
    x_up, x_dn = shift_a @ psi, shift_a_dag @ psi
    y_up, y_dn = shift_b @ psi, shift_b_dag @ psi

    def a_side(alpha: float) -> np.ndarray:
        return np.exp(1j * alpha) * x_up + np.exp(-1j * alpha) * x_dn

    def b_side(beta: float) -> np.ndarray:
        return np.exp(1j * beta) * y_up + np.exp(-1j * beta) * y_dn

    a1, a2 = a_side(angles.alpha1), a_side(angles.alpha2)
    b1, b2 = b_side(angles.beta1), b_side(angles.beta2)
    value = (np.vdot(a1, b1) + np.vdot(a2, b1)
             + np.vdot(a1, b2) - np.vdot(a2, b2))
    if abs(value.imag) > 1e-10:
        raise ConsistencyError(
            f"matrix CHSH value has imaginary residue {value.imag:.3e}"
        )
    return float(value.real)
