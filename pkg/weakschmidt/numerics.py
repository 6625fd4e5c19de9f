"""
Dense complex linear algebra used throughout weakschmidt.

Matrices are ``numpy.ndarray`` of dtype ``complex128``. Hermitian
eigendecomposition runs a cyclic complex Jacobi sweep for small orders and
hands larger orders to LAPACK. The SVD, the joint diagonalization of
commuting Hermitian families and every predicate are built on that kernel.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import TolLike, as_tolerance
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidInput,
    NonSquare,
    NotCommuting,
    NotHermitian,
)

JACOBI_MAX_ORDER = 16
JACOBI_MAX_SWEEPS = 60
# Off-diagonal mass (relative to ||H||_F) at which a Jacobi run is converged.
JACOBI_OFF_TOL = 1e-14
# Eigenvalue (or singular value) clustering, relative to max(1, ||M||_2).
CLUSTER_GAP = 1e-6


def as_matrix(value, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex128 array or raise InvalidInput."""
    try:
        M = np.array(value, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidInput(f"{name} is not a numeric array: {e}") from e
    if M.ndim != 2:
        raise InvalidInput(f"{name} must be 2-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInput(f"{name} contains NaN or Inf entries")
    return M


def require_square(M: np.ndarray, name: str = "matrix") -> int:
    if M.shape[0] != M.shape[1]:
        raise NonSquare(f"{name} must be square, got shape {M.shape}")
    return M.shape[0]


def fro(M: np.ndarray) -> float:
    return float(np.linalg.norm(M))


def dagger(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def frobenius_offdiag(M: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part of M."""
    M = np.asarray(M)
    return float(np.linalg.norm(M - np.diag(np.diag(M))))


def make_rng(seed: Optional[int] = 0) -> np.random.Generator:
    """The PCG64 stream behind every seeded operation."""
    return np.random.Generator(np.random.PCG64(seed))


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal phases folded back."""
    Q, R = np.linalg.qr(ginibre(rng, n, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    G = ginibre(rng, n, n)
    return (G + dagger(G)) / 2.0


def complete_unitary(columns: np.ndarray, positions: Sequence[int], m: int) -> np.ndarray:
    """
    Build an m x m unitary whose column positions[i] is columns[:, i].

    The given columns must be orthonormal; the remaining columns are an
    orthonormal completion taken from a complete QR factorization.
    """
    columns = np.asarray(columns, dtype=np.complex128)
    if columns.ndim == 1:
        columns = columns[:, None]
    r = columns.shape[1]
    if len(positions) != r:
        raise DimensionMismatch(f"{r} columns but {len(positions)} target positions")
    if r == 0:
        return np.eye(m, dtype=np.complex128)
    Q, _ = np.linalg.qr(columns, mode="complete")
    T = np.zeros((m, m), dtype=np.complex128)
    T[:, list(positions)] = columns
    free = [i for i in range(m) if i not in set(positions)]
    T[:, free] = Q[:, r:]
    return T


def _check_hermitian(H: np.ndarray, tol, name: str = "matrix") -> None:
    gap = fro(H - dagger(H))
    if gap > tol.threshold(fro(H)):
        raise NotHermitian(f"{name} is not Hermitian: ||H - H^dagger||_F = {gap:.3e}")


def _jacobi_eigh(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi on a Hermitian copy of A."""
    A = A.copy()
    n = A.shape[0]
    Q = np.eye(n, dtype=np.complex128)
    scale = fro(A)
    if scale == 0.0 or n == 1:
        return np.real(np.diag(A)).copy(), Q

    negligible = 1e-18 * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        if frobenius_offdiag(A) <= JACOBI_OFF_TOL * scale:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= negligible:
                    continue
                rotated = True
                phase = apq / mag
                app, aqq = A[p, p].real, A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c

                # A <- A G with G = [[c, s*phase], [-s*conj(phase), c]] on (p, q)
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * np.conj(phase) * col_q
                A[:, q] = s * phase * col_p + c * col_q
                # A <- G^dagger A
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * phase * row_q
                A[q, :] = s * np.conj(phase) * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                A[p, p] = app - t * mag
                A[q, q] = aqq + t * mag

                qp, qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * qp - s * np.conj(phase) * qq
                Q[:, q] = s * phase * qp + c * qq
        if not rotated:
            break
    else:
        if frobenius_offdiag(A) > JACOBI_OFF_TOL * scale:
            raise ConvergenceFailure(
                f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps "
                f"(off-diagonal mass {frobenius_offdiag(A):.3e})"
            )
    return np.real(np.diag(A)).copy(), Q


def _hermitian_eigh(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of an already symmetrized matrix, eigenvalues ascending."""
    if A.shape[0] > JACOBI_MAX_ORDER:
        w, Q = np.linalg.eigh(A)
        return w, Q
    w, Q = _jacobi_eigh(A)
    order = np.argsort(w, kind="stable")
    return w[order], Q[:, order]


def eigh(H, tol: TolLike = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        H: square Hermitian matrix.
        tol: tolerance for the Hermiticity check.

    Returns:
        (eigenvalues ascending, Q unitary) with H Q = Q diag(eigenvalues).

    Raises:
        NonSquare, NotHermitian, ConvergenceFailure
    """
    tol = as_tolerance(tol)
    H = as_matrix(H, "H")
    require_square(H, "H")
    _check_hermitian(H, tol, "H")
    return _hermitian_eigh((H + dagger(H)) / 2.0)


def svd(A, tol: TolLike = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Singular value decomposition in the U A V^t = diag(s) convention.

    V^t comes from the eigenvectors of A^dagger A (descending); the left
    factor comes from a QR factorization of A V^t, whose orthonormal columns
    pair each right singular vector with its left partner even inside
    degenerate or zero clusters. Phases are folded so the diagonal is real
    and nonnegative.

    Returns:
        (U, V, s) with s descending.
    """
    tol = as_tolerance(tol)
    A = as_matrix(A, "A")
    n = require_square(A, "A")
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.complex128)
        return empty, empty, np.zeros(0)
    _, X = _hermitian_eigh(dagger(A) @ A)
    X = X[:, ::-1]
    W, R = np.linalg.qr(A @ X)
    r = np.diag(R)
    mag = np.abs(r)
    phases = np.where(mag > 0, r / np.where(mag > 0, mag, 1.0), 1.0)
    W = W * phases
    order = np.argsort(-mag, kind="stable")
    U = dagger(W)[order, :]
    V = X.T[order, :]
    return U, V, mag[order]


def cluster_indices(values: np.ndarray, gap: float) -> List[List[int]]:
    """Group consecutive (sorted) values whose neighbours differ by at most gap."""
    groups: List[List[int]] = []
    for i, v in enumerate(values):
        if groups and abs(v - values[groups[-1][-1]]) <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _refine(members: List[np.ndarray], basis: np.ndarray) -> np.ndarray:
    if not members or basis.shape[1] <= 1:
        return basis
    M = members[0]
    sub = dagger(basis) @ M @ basis
    w, R = _hermitian_eigh((sub + dagger(sub)) / 2.0)
    rotated = basis @ R
    gap = CLUSTER_GAP * max(1.0, float(np.linalg.norm(M, 2)))
    blocks = []
    for group in cluster_indices(w, gap):
        block = rotated[:, group]
        if len(group) > 1:
            block = _refine(members[1:], block)
        blocks.append(block)
    return np.hstack(blocks)


def joint_diag_hermitian(family, tol: TolLike = None) -> np.ndarray:
    """
    Common eigenbasis of pairwise commuting Hermitian matrices.

    Diagonalizes the first member, then splits each degenerate eigenspace
    using the remaining members in turn.

    Raises:
        NotHermitian, NotCommuting, NonSquare, DimensionMismatch
    """
    tol = as_tolerance(tol)
    members = [as_matrix(M, f"family[{i}]") for i, M in enumerate(family)]
    if not members:
        raise InvalidInput("joint_diag_hermitian needs at least one matrix")
    n = require_square(members[0], "family[0]")
    for i, M in enumerate(members):
        require_square(M, f"family[{i}]")
        if M.shape[0] != n:
            raise DimensionMismatch(f"family[{i}] has order {M.shape[0]}, expected {n}")
        _check_hermitian(M, tol, f"family[{i}]")
    members = [(M + dagger(M)) / 2.0 for M in members]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            X, Y = members[i], members[j]
            gap = fro(X @ Y - Y @ X)
            if gap > tol.threshold(fro(X), fro(Y)):
                raise NotCommuting(f"family[{i}] and family[{j}] do not commute (residual {gap:.3e})")
    return _refine(members, np.eye(n, dtype=np.complex128))


def is_unitary(M, tol: TolLike = None) -> bool:
    tol = as_tolerance(tol)
    M = as_matrix(M)
    n = require_square(M)
    return fro(dagger(M) @ M - np.eye(n)) <= tol.threshold(fro(M))


def is_diagonal(M, tol: TolLike = None) -> bool:
    tol = as_tolerance(tol)
    M = as_matrix(M)
    require_square(M)
    return frobenius_offdiag(M) <= tol.threshold(fro(M))


def is_normal(M, tol: TolLike = None) -> bool:
    """True when ||M M^dagger - M^dagger M||_F is within tolerance."""
    tol = as_tolerance(tol)
    M = as_matrix(M)
    require_square(M)
    return fro(M @ dagger(M) - dagger(M) @ M) <= tol.threshold(fro(M), fro(M))
