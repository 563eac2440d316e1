"""Dense complex linear algebra for finite-dimensional quantum states.

Kets are complex vectors, operators are dense complex square matrices.
Bipartite systems use the row-major composite index convention

    index = i_left * dim_right + i_right

(the left factor is the slow index), which is exactly the ordering
produced by ``numpy.kron``.  Every object is immutable after
construction, so all operations are pure functions and safe to evaluate
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ShapeError

#: Entrywise tolerance for structural checks (hermiticity, unitarity,
#: normalization): about 100x double-precision epsilon accumulation at
#: the matrix sizes in scope.
STRUCTURE_TOL = 1e-12

#: Largest composite dimension ``tensor`` will produce by default.
MAX_TENSOR_DIM = 16384


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Ket:
    """A state vector on an explicit finite-dimensional space.

    Parameters
    ----------
    amplitudes : array_like
        Complex amplitudes; coerced to a read-only 1-D complex array.
    normalized : bool, optional
        Declare the vector normalized.  When True, construction fails
        unless ``| ||psi|| - 1 | <= STRUCTURE_TOL``.
    """

    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = np.array(self.amplitudes, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ShapeError("a ket must be a non-empty 1-D amplitude vector")
        object.__setattr__(self, "amplitudes", _readonly(arr))
        if self.normalized and abs(self.norm - 1.0) > STRUCTURE_TOL:
            raise ValueError(
                f"ket flagged normalized but ||psi|| = {self.norm!r}"
            )

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "Ket":
        """Return the unit-norm rescaling of this ket."""
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Ket(self.amplitudes / n, normalized=True)

    def overlap(self, other: "Ket") -> complex:
        """Inner product <self|other> (antilinear in self)."""
        if self.dim != other.dim:
            raise ShapeError(f"ket dims differ: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A dense complex square matrix acting on a ``Ket`` of equal dim.

    Parameters
    ----------
    entries : array_like
        Square complex matrix; coerced to a read-only 2-D complex array.
    hermitian : bool, optional
        Declare the operator hermitian.  When True, construction fails
        unless ``max|M - M^dag| <= STRUCTURE_TOL`` entrywise.
    """

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeError(f"operator entries must be square, got {arr.shape}")
        object.__setattr__(self, "entries", _readonly(arr))
        if self.hermitian:
            dev = self.hermiticity_deviation
            if dev > STRUCTURE_TOL:
                raise ValueError(
                    f"operator flagged hermitian but max|M - M^dag| = {dev:.3e}"
                )

    @classmethod
    def identity(cls, dim: int) -> "DenseOperator":
        return cls(np.eye(dim, dtype=complex), hermitian=True)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def hermiticity_deviation(self) -> float:
        return float(np.abs(self.entries - self.entries.conj().T).max())

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.entries.conj().T)

    def apply(self, psi: Ket) -> Ket:
        """Matrix-vector action M|psi> (result is not renormalized)."""
        if self.dim != psi.dim:
            raise ShapeError(f"operator dim {self.dim} vs ket dim {psi.dim}")
        return Ket(self.entries @ psi.amplitudes)

    # Operator arithmetic stays in matrix land; results carry no flags.
    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if self.dim != other.dim:
            raise ShapeError(f"operator dims differ: {self.dim} vs {other.dim}")
        return DenseOperator(self.entries @ other.entries)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        if self.dim != other.dim:
            raise ShapeError(f"operator dims differ: {self.dim} vs {other.dim}")
        return DenseOperator(self.entries + other.entries)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        if self.dim != other.dim:
            raise ShapeError(f"operator dims differ: {self.dim} vs {other.dim}")
        return DenseOperator(self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "DenseOperator":
        return DenseOperator(self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "DenseOperator":
        return DenseOperator(-self.entries)


def tensor(a: DenseOperator, b: DenseOperator,
           max_dim: int = MAX_TENSOR_DIM) -> DenseOperator:
    """Kronecker product ``a (x) b`` in the fixed composite-index order.

    Satisfies ``(a (x) b)(u (x) v) = (a u) (x) (b v)`` with the left
    factor as the slow index.

    Parameters
    ----------
    a, b : DenseOperator
        Factors; the result acts on the ``a.dim * b.dim`` product space.
    max_dim : int, optional
        Capacity guard; a product dimension beyond it raises
        ``CapacityError`` instead of allocating.
    """
    total = a.dim * b.dim
    if total > max_dim:
        raise CapacityError(
            f"tensor product dim {a.dim}x{b.dim} = {total} exceeds budget {max_dim}"
        )
    return DenseOperator(np.kron(a.entries, b.entries))


def tensor_ket(u: Ket, v: Ket, max_dim: int = MAX_TENSOR_DIM) -> Ket:
    """Product state ``u (x) v`` in the same composite-index order."""
    total = u.dim * v.dim
    if total > max_dim:
        raise CapacityError(
            f"tensor product dim {u.dim}x{v.dim} = {total} exceeds budget {max_dim}"
        )
    return Ket(np.kron(u.amplitudes, v.amplitudes))


def adjoint(m: DenseOperator) -> DenseOperator:
    """Conjugate transpose."""
    return m.adjoint()


def expectation(psi: Ket, m: DenseOperator) -> complex:
    """Expectation value <psi|M|psi> for a normalized state.

    Parameters
    ----------
    psi : Ket
        State vector; must be normalized to within 1e-9.
    m : DenseOperator
        Operator of matching dimension.

    Returns
    -------
    complex
        <psi|M|psi>.  For hermitian ``m`` the imaginary part is a
        float-level residue (below ~1e-12 at the sizes in scope).
    """
    if psi.dim != m.dim:
        raise ShapeError(f"ket dim {psi.dim} vs operator dim {m.dim}")
    if abs(psi.norm - 1.0) > 1e-9:
        raise ValueError(f"expectation requires a normalized state, ||psi|| = {psi.norm!r}")
    return complex(np.vdot(psi.amplitudes, m.entries @ psi.amplitudes))
