"""Shared test oracles, independent of the library code paths they check."""

import numpy as np

from bellchsh import ChshQuadruple, DenseOperator, Ket


def power_iteration_norm(matrix: np.ndarray, iters: int = 2000,
                         tol: float = 1e-13) -> float:
    """Largest |eigenvalue| of a hermitian matrix by power iteration.

    Iterates with M^2 (applied as two matrix-vector products) so the
    symmetric +-lambda spectrum of CHSH operators cannot make the
    iteration oscillate.
    """
    dim = matrix.shape[0]
    # deterministic start with all symmetry sectors populated
    vec = np.ones(dim, dtype=complex) + 1e-3 * np.arange(dim)
    vec /= np.linalg.norm(vec)
    last = 0.0
    for _ in range(iters):
        squared = matrix @ (matrix @ vec)
        norm = np.linalg.norm(squared)
        if norm == 0.0:
            return 0.0
        vec = squared / norm
        lam_sq = np.vdot(vec, matrix @ (matrix @ vec)).real
        lam = np.sqrt(max(lam_sq, 0.0))
        if abs(lam - last) < tol:
            return lam
        last = lam
    return last


def random_state(rng: np.random.Generator, dim: int) -> Ket:
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return Ket(vec / np.linalg.norm(vec), normalized=True)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    gauss = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(gauss)
    # fix the phase convention so the factorization is unique
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_involution_quadruple(rng: np.random.Generator, dim_a: int,
                                dim_b: int) -> ChshQuadruple:
    """A generic valid quadruple: conjugated sign matrices on each side.

    U diag(+-1) U^dag is hermitian and squares to the identity for any
    unitary U, and A (x) I commutes with I (x) B, so the quadruple
    satisfies the CHSH axioms without being a phase-flip construction.
    """

    def side(dim: int) -> np.ndarray:
        u = random_unitary(rng, dim)
        signs = rng.choice([-1.0, 1.0], size=dim)
        if np.all(signs == signs[0]):
            signs[0] = -signs[0]  # avoid the trivial +-identity
        return u @ np.diag(signs) @ u.conj().T

    eye_a, eye_b = np.eye(dim_a), np.eye(dim_b)
    ops = {}
    for name in ("a1", "a2"):
        ops[name] = DenseOperator(np.kron(side(dim_a), eye_b))
    for name in ("b1", "b2"):
        ops[name] = DenseOperator(np.kron(eye_a, side(dim_b)))
    return ChshQuadruple(**ops)


def series_squeezed_state(eta: float, cutoff: int) -> np.ndarray:
    """Exponential-series construction of the squeezed state.

    Applies the truncated pair-creation matrix term by term to the
    two-mode vacuum and renormalizes; independent of the closed-form
    amplitude construction in the library.
    """
    low = np.zeros((cutoff, cutoff))
    n = np.arange(1, cutoff)
    low[n - 1, n] = np.sqrt(n)
    raise_pair = np.kron(low.T, low.T)  # a_dag b_dag
    vec = np.zeros(cutoff * cutoff)
    vec[0] = 1.0
    total = vec.copy()
    term = vec.copy()
    for k in range(1, cutoff + 2):
        term = (eta / k) * (raise_pair @ term)
        total = total + term
        if np.linalg.norm(term) == 0.0:
            break
    return total / np.linalg.norm(total)
