"""
Simultaneous diagonalization in weak SVD.

A family {A_k} is diagonalized in weak SVD by unitaries (U, V) when every
U A_k V^t is diagonal with (possibly complex) entries. check_weak and
check_weak_alt are two equivalent algebraic criteria for this;
check_strong is the classical simultaneous-SVD test, which additionally
forces the diagonals to be real and nonnegative.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .config import TolLike, as_tolerance
from .errors import (
    ConstructionFailure,
    DimensionMismatch,
    InvalidInput,
    NotCommuting,
    NotSimultaneouslyDiagonalizable,
)
from .numerics import (
    CLUSTER_GAP,
    as_matrix,
    cluster_indices,
    complete_unitary,
    dagger,
    fro,
    frobenius_offdiag,
    ginibre,
    joint_diag_hermitian,
    make_rng,
    require_square,
    svd,
)
from .states import Ensemble, PureState, matrix_rep

MAX_DRAWS = 8
ACCEPT_REL = 1e-7


@dataclass(frozen=True, eq=False)
class WeakSVDResult:
    """
    Witness (U, V) with U A_k V^t = diag(diagonals[k]) for every input matrix.

    residual is the largest off-diagonal Frobenius mass over the family,
    measured when the witness was built.
    """
    U: np.ndarray
    V: np.ndarray
    diagonals: Tuple[np.ndarray, ...]
    residual: float = 0.0

    @property
    def alpha(self) -> np.ndarray:
        """n x K matrix whose column k is the diagonal of U A_k V^t."""
        return np.stack(self.diagonals, axis=1)

    def rotate(self, A) -> np.ndarray:
        return self.U @ as_matrix(A) @ self.V.T


def as_family(items) -> List[np.ndarray]:
    """Matrices from a list of arrays or PureStates, or from an Ensemble."""
    if isinstance(items, Ensemble):
        items = items.states
    family = []
    for i, item in enumerate(items):
        M = matrix_rep(item) if isinstance(item, PureState) else as_matrix(item, f"A[{i}]")
        require_square(M, f"A[{i}]")
        family.append(M)
    if not family:
        raise InvalidInput("the matrix family is empty")
    n = family[0].shape[0]
    for i, M in enumerate(family):
        if M.shape[0] != n:
            raise DimensionMismatch(f"A[{i}] has order {M.shape[0]}, expected {n}")
    return family


def strong_violation(As) -> float:
    """Largest scaled residual of A_i A_j^dagger = A_j A_i^dagger and A_i^dagger A_j = A_j^dagger A_i."""
    family = as_family(As)
    worst = 0.0
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            X, Y = family[i], family[j]
            scale = max(1.0, fro(X) * fro(Y))
            left = fro(X @ dagger(Y) - Y @ dagger(X))
            right = fro(dagger(X) @ Y - dagger(Y) @ X)
            worst = max(worst, left / scale, right / scale)
    return worst


def weak_violation(As) -> float:
    """Largest scaled residual of A_j A_k^dagger A_l = A_l A_k^dagger A_j over all ordered triples."""
    family = as_family(As)
    stack = np.stack(family)
    norms = np.array([fro(M) for M in family])
    worst = 0.0
    for k in range(len(family)):
        left = stack @ dagger(family[k])
        T = np.einsum("jab,lbc->jlac", left, stack)
        diff = np.linalg.norm(T - T.transpose(1, 0, 2, 3), axis=(2, 3))
        scale = np.maximum(1.0, np.outer(norms, norms) * norms[k])
        worst = max(worst, float(np.max(diff / scale)))
    return worst


def weak_alt_violation(As) -> float:
    """
    Largest scaled residual of the normality-plus-quadruple criterion:
    every A_k^dagger A_l normal, and A_j A_k^dagger A_k A_l^dagger = A_k A_l^dagger A_j A_k^dagger.
    """
    family = as_family(As)
    norms = [fro(M) for M in family]
    K = len(family)
    worst = 0.0
    gram = {}
    for k in range(K):
        for l in range(K):
            P = dagger(family[k]) @ family[l]
            scale = max(1.0, (norms[k] * norms[l]) ** 2)
            worst = max(worst, fro(P @ dagger(P) - dagger(P) @ P) / scale)
            gram[k, l] = family[k] @ dagger(family[l])
    for j in range(K):
        for k in range(K):
            for l in range(K):
                G1, G2 = gram[j, k], gram[k, l]
                scale = max(1.0, norms[j] * norms[k] ** 2 * norms[l])
                worst = max(worst, fro(G1 @ G2 - G2 @ G1) / scale)
    return worst


def check_strong(As, tol: TolLike = None) -> bool:
    return strong_violation(As) <= as_tolerance(tol).eps


def check_weak(As, tol: TolLike = None) -> bool:
    return weak_violation(As) <= as_tolerance(tol).eps


def check_weak_alt(As, tol: TolLike = None) -> bool:
    return weak_alt_violation(As) <= as_tolerance(tol).eps


def residual(As, result: WeakSVDResult) -> float:
    """Largest off-diagonal Frobenius mass of U A_k V^t."""
    family = as_family(As)
    n = result.U.shape[0]
    if family[0].shape[0] != n or result.V.shape[0] != n:
        raise DimensionMismatch(f"witness has order {n}, family has order {family[0].shape[0]}")
    return max(frobenius_offdiag(result.U @ A @ result.V.T) for A in family)


def _split_cluster(blocks: List[np.ndarray], tol) -> Tuple[np.ndarray, np.ndarray]:
    """
    Left rotation Q and right rotation T with Q^dagger B_k T diagonal for
    every block B_k of one degenerate singular-value cluster.
    """
    m = blocks[0].shape[0]
    hermitian_parts = []
    for k in range(len(blocks)):
        for l in range(k, len(blocks)):
            G = blocks[k] @ dagger(blocks[l])
            hermitian_parts.append((G + dagger(G)) / 2.0)
            hermitian_parts.append((G - dagger(G)) / 2.0j)
    Q = joint_diag_hermitian(hermitian_parts, tol)

    rows = np.stack([dagger(Q) @ B for B in blocks])
    scale = max(1.0, max(fro(B) for B in blocks))
    positions, columns = [], []
    for i in range(m):
        norms = np.linalg.norm(rows[:, i, :], axis=1)
        k = int(np.argmax(norms))
        if norms[k] <= 1e-12 * scale:
            continue
        positions.append(i)
        columns.append(rows[k, i, :].conj() / norms[k])
    if columns:
        C = np.stack(columns, axis=1)
        C, R = np.linalg.qr(C)
        d = np.diag(R)
        C = C * (d / np.abs(d))
    else:
        C = np.zeros((m, 0), dtype=np.complex128)
    return Q, complete_unitary(C, positions, m)


def _attempt(family: List[np.ndarray], weights: np.ndarray, tol) -> Tuple[np.ndarray, np.ndarray]:
    M = sum(w * A for w, A in zip(weights, family))
    U, V, s = svd(M, tol)
    gap = CLUSTER_GAP * max(1.0, float(s[0]) if len(s) else 1.0)
    for group in cluster_indices(s, gap):
        if len(group) == 1:
            continue
        idx = np.ix_(group, group)
        blocks = [(U @ A @ V.T)[idx] for A in family]
        Q, T = _split_cluster(blocks, tol)
        U[group, :] = dagger(Q) @ U[group, :]
        V[group, :] = T.T @ V[group, :]
    return U, V


def diagonalize(As, tol: TolLike = None, seed: int = 0) -> WeakSVDResult:
    """
    Construct a weak-SVD witness for a family that passes check_weak.

    The SVD of a random complex combination sum_k w_k A_k fixes (U, V) up
    to rotations inside degenerate singular-value clusters; each cluster is
    then split by jointly diagonalizing the commuting normal products
    B_k B_l^dagger and reading the right vectors off the rotated rows.

    Raises:
        NotSimultaneouslyDiagonalizable: the family fails check_weak.
        ConstructionFailure: no draw met the acceptance residual.
    """
    tol = as_tolerance(tol)
    family = as_family(As)
    violation = weak_violation(family)
    if violation > tol.eps:
        raise NotSimultaneouslyDiagonalizable(
            f"family violates A_j A_k^dagger A_l = A_l A_k^dagger A_j (scaled residual {violation:.3e})"
        )
    rng = make_rng(seed)
    accept = ACCEPT_REL * max(1.0, max(fro(A) for A in family))
    best = np.inf
    for _ in range(MAX_DRAWS):
        weights = ginibre(rng, len(family), 1)[:, 0]
        try:
            U, V = _attempt(family, weights, tol)
        except NotCommuting:
            continue
        diagonals = tuple(np.diag(U @ A @ V.T).copy() for A in family)
        result = WeakSVDResult(U=U, V=V, diagonals=diagonals)
        res = residual(family, result)
        best = min(best, res)
        if res <= accept:
            return WeakSVDResult(U=U, V=V, diagonals=diagonals, residual=res)
    raise ConstructionFailure(
        f"weak-SVD construction failed after {MAX_DRAWS} draws (best residual {best:.3e}, needed {accept:.3e})"
    )


def diagonal_family(diagonals: Sequence, U=None, V=None) -> List[np.ndarray]:
    """Matrices U^dagger diag(d_k) conj(V), i.e. the family a witness (U, V) maps to diag(d_k)."""
    diags = [np.asarray(d, dtype=np.complex128) for d in diagonals]
    n = diags[0].shape[0]
    U = np.eye(n) if U is None else as_matrix(U, "U")
    V = np.eye(n) if V is None else as_matrix(V, "V")
    return [dagger(U) @ np.diag(d) @ V.conj() for d in diags]
