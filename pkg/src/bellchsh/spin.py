"""Spin-1/2 and spin-1 singlets and their phase-flip CHSH quadruples.

Basis conventions, fixed once:

* spin 1/2: |+> -> index 0, |-> -> index 1;
* spin 1:   m = 1, 0, -1 -> indices 0, 1, 2 (S_z eigenbasis ordering).

The side-A flip operator swaps a fixed pair of levels with opposite
phases ``e^{+i phi}`` / ``e^{-i phi}`` and leaves the remaining level
alone; side B swaps the mirrored pair.  Each flip is hermitian and an
involution, so any two phases per side form a valid CHSH quadruple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chsh import AngleSet, ChshQuadruple
from .errors import DomainError
from .linalg import DenseOperator, Ket, tensor

SPIN_HALF = "half"
SPIN_ONE = "one"

_LEVELS = {SPIN_HALF: 2, SPIN_ONE: 3}

#: Phases recovering the Tsirelson bound 2*sqrt(2) on the spin-1/2 singlet.
TSIRELSON_ANGLES = AngleSet(0.0, math.pi / 2, math.pi / 4, -math.pi / 4)

#: Phases giving the spin-1 violation 2*(2 + sqrt(2))/3 ~ 2.2761
#: (a feasible choice, not the optimum of the closed form).
SPIN_ONE_VIOLATION_ANGLES = AngleSet(math.pi / 2, 0.0, 3 * math.pi / 4, 0.0)


def _check_spin(spin: str) -> int:
    if spin not in _LEVELS:
        raise DomainError(f"spin must be one of {sorted(_LEVELS)}, got {spin!r}")
    return _LEVELS[spin]


@dataclass(frozen=True)
class SpinBasisLabel:
    """A single-particle basis label |s, m> and its vector index."""

    spin: str
    m: float

    def __post_init__(self):
        levels = _check_spin(self.spin)
        s = (levels - 1) / 2.0
        allowed = [s - k for k in range(levels)]
        if not any(abs(self.m - a) < 1e-12 for a in allowed):
            raise DomainError(f"m = {self.m} not in {allowed} for spin {self.spin}")

    @property
    def index(self) -> int:
        s = (_LEVELS[self.spin] - 1) / 2.0
        return int(round(s - self.m))


@dataclass(frozen=True, eq=False)
class SingletState:
    """Total-spin-zero two-particle state on the product space."""

    spin: str
    ket: Ket


def spin_matrices(spin: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Single-particle (Sx, Sy, Sz) in the fixed basis ordering."""
    levels = _check_spin(spin)
    s = (levels - 1) / 2.0
    m = s - np.arange(levels)
    raise_elem = np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1))
    sp = np.zeros((levels, levels), dtype=complex)
    sp[np.arange(levels - 1), np.arange(1, levels)] = raise_elem
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    sz = np.diag(m).astype(complex)
    return sx, sy, sz


def singlet(spin: str) -> SingletState:
    """The singlet state of two spin-1/2 or two spin-1 particles.

    Spin 1/2: (|+,-> - |-,+>)/sqrt(2).
    Spin 1:   (|1,-1> - |0,0> + |-1,1>)/sqrt(3).
    """
    levels = _check_spin(spin)
    amp = np.zeros(levels * levels, dtype=complex)
    if spin == SPIN_HALF:
        amp[0 * 2 + 1] = 1.0 / math.sqrt(2.0)
        amp[1 * 2 + 0] = -1.0 / math.sqrt(2.0)
    else:
        amp[0 * 3 + 2] = 1.0 / math.sqrt(3.0)
        amp[1 * 3 + 1] = -1.0 / math.sqrt(3.0)
        amp[2 * 3 + 0] = 1.0 / math.sqrt(3.0)
    return SingletState(spin=spin, ket=Ket(amp, normalized=True))


def total_spin_squared(spin: str) -> DenseOperator:
    """(S_A + S_B)^2 on the product space; annihilates the singlet."""
    levels = _check_spin(spin)
    eye = np.eye(levels)
    out = np.zeros((levels * levels, levels * levels), dtype=complex)
    for si in spin_matrices(spin):
        tot = np.kron(si, eye) + np.kron(eye, si)
        out += tot @ tot
    return DenseOperator(out, hermitian=True)


def spin_hamiltonian() -> DenseOperator:
    """The 9x9 spin-1 coupling S_A . S_B = (S_A + S_B)^2 / 2 - 2.

    The singlet is its ground state with eigenvalue -2.
    """
    sx, sy, sz = spin_matrices(SPIN_ONE)
    h = sum(np.kron(si, si) for si in (sx, sy, sz))
    return DenseOperator(h, hermitian=True)


def flip_operator(spin: str, side: str, phase: float) -> DenseOperator:
    """Phase-flip measurement operator embedded in the product space.

    Spin 1/2 (either side): |+> <-> |-> with phases e^{+-i phase}.
    Spin 1, side A: |-1> <-> |0> with phases, |1> fixed.
    Spin 1, side B: |1> <-> |0> with phases, |-1> fixed.

    The matrix element of the raising direction carries ``e^{i phase}``
    (for spin 1, side A: <0|A|-1> = e^{i phase}).
    """
    levels = _check_spin(spin)
    if side not in ("A", "B"):
        raise DomainError(f"side must be 'A' or 'B', got {side!r}")
    local = np.zeros((levels, levels), dtype=complex)
    up = complex(np.exp(1j * phase))
    if spin == SPIN_HALF:
        local[1, 0] = up
        local[0, 1] = up.conjugate()
    elif side == "A":
        local[0, 0] = 1.0           # |1> fixed
        local[1, 2] = up            # |-1> -> e^{i phase} |0>
        local[2, 1] = up.conjugate()
    else:
        local[2, 2] = 1.0           # |-1> fixed
        local[1, 0] = up            # |1> -> e^{i phase} |0>
        local[0, 1] = up.conjugate()
    local_op = DenseOperator(local, hermitian=True)
    eye = DenseOperator.identity(levels)
    if side == "A":
        return tensor(local_op, eye)
    return tensor(eye, local_op)


def spin_quadruple(spin: str, angles: AngleSet) -> ChshQuadruple:
    """Build the phase-flip CHSH quadruple for the given phases."""
    return ChshQuadruple(
        a1=flip_operator(spin, "A", angles.alpha1),
        a2=flip_operator(spin, "A", angles.alpha2),
        b1=flip_operator(spin, "B", angles.beta1),
        b2=flip_operator(spin, "B", angles.beta2),
        angles=angles,
    )


def spin_one_closed_form():
    """Closed-form spin-1 singlet correlator as an optimizable descriptor.

    <C> = (2/3) (1 - cos(a1+b1) - cos(a2+b1) - cos(a1+b2) + cos(a2+b2))
    """
    from .chsh import ClosedFormCorrelator

    return ClosedFormCorrelator(
        prefactor=2.0 / 3.0,
        signs=(-1.0, -1.0, -1.0, 1.0),
        constant=1.0,
    )


def spin_one_chsh_closed(angles: AngleSet) -> float:
    """Evaluate the spin-1 closed form at the given phases."""
    return spin_one_closed_form().value(angles)


def spin_half_pair_correlator(alpha: float, beta: float) -> float:
    """Per-pair singlet correlator <A(alpha) B(beta)> = -cos(alpha - beta).

    The sign and the relative phase are fixed by the matrix computation
    on the spin-1/2 singlet (the flip phases enter Alice's and Bob's
    raising directions with the same orientation, so they subtract).
    """
    return -math.cos(alpha - beta)


def spin_half_chsh_closed(angles: AngleSet) -> float:
    """Spin-1/2 singlet CHSH value assembled from the pair correlators."""
    a1, a2, b1, b2 = angles.as_tuple()
    return (spin_half_pair_correlator(a1, b1)
            + spin_half_pair_correlator(a2, b1)
            + spin_half_pair_correlator(a1, b2)
            - spin_half_pair_correlator(a2, b2))
