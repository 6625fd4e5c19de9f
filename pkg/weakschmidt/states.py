"""
Bipartite states on C^n (x) C^n.

Amplitude |jl> (1-based j, l) sits at position (j-1)*n + (l-1) of the state
vector, so the matrix representation of a pure state is simply its
amplitude vector reshaped row-major to n x n.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import TolLike, as_tolerance
from .errors import DimensionMismatch, InvalidState, NotIsometry
from .numerics import (
    as_matrix,
    dagger,
    eigh,
    fro,
    ginibre,
    require_square,
    svd,
)

STATE_NORM_TOL = 1e-8
PROB_SUM_TOL = 1e-8
SPECTRAL_CUTOFF = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


def _local_dim(length: int, what: str) -> int:
    n = math.isqrt(length)
    if n < 1 or n * n != length:
        raise InvalidState(f"{what} of size {length} is not a square n^2")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized bipartite pure state with local dimension dim."""
    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.dim * self.dim:
            raise InvalidState(f"expected {self.dim * self.dim} amplitudes for n={self.dim}, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise InvalidState("state amplitudes contain NaN or Inf")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise InvalidState(f"state is not normalized: ||psi|| = {norm:.12g}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_vector(cls, vector, n: Optional[int] = None, normalize: bool = False) -> "PureState":
        vec = np.asarray(vector, dtype=np.complex128).reshape(-1)
        if n is None:
            n = _local_dim(vec.shape[0], "state vector")
        if normalize:
            norm = np.linalg.norm(vec)
            if norm == 0:
                raise InvalidState("cannot normalize the zero vector")
            vec = vec / norm
        return cls(dim=n, amplitudes=vec)

    @classmethod
    def from_matrix(cls, A, normalize: bool = False) -> "PureState":
        A = as_matrix(A, "state matrix")
        n = require_square(A, "state matrix")
        return cls.from_vector(A.reshape(-1), n=n, normalize=normalize)

    def canonical(self) -> "PureState":
        """Same ray, rotated so the largest-magnitude amplitude is real positive."""
        k = int(np.argmax(np.abs(self.amplitudes)))
        pivot = self.amplitudes[k]
        return PureState(self.dim, self.amplitudes * (np.conj(pivot) / abs(pivot)))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """
    Schmidt decomposition sum_m sqrt(lambda_m) |e_m> (x) |f_m>.

    basis_A / basis_B hold the vectors e_m / f_m as columns.
    """
    coefficients: np.ndarray
    basis_A: np.ndarray
    basis_B: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.coefficients.shape[0])

    def reconstruct(self) -> PureState:
        weights = np.sqrt(np.clip(self.coefficients, 0.0, None))
        vec = np.einsum("m,jm,lm->jl", weights, self.basis_A, self.basis_B).reshape(-1)
        return PureState.from_vector(vec, n=self.dim)

    def schmidt_rank(self, tol: TolLike = None) -> int:
        tol = as_tolerance(tol)
        return int(np.sum(self.coefficients > tol.eps))


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted pure states {p_k, |psi_k>} with p_k > 0 summing to one."""
    probs: np.ndarray
    states: Tuple[PureState, ...] = field(default_factory=tuple)

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        states = tuple(self.states)
        if len(states) == 0:
            raise InvalidState("an ensemble needs at least one state")
        if probs.shape[0] != len(states):
            raise DimensionMismatch(f"{probs.shape[0]} probabilities for {len(states)} states")
        if np.any(probs <= 0) or not np.all(np.isfinite(probs)):
            raise InvalidState("ensemble probabilities must be finite and > 0")
        if abs(float(probs.sum()) - 1.0) > PROB_SUM_TOL:
            raise InvalidState(f"ensemble probabilities sum to {probs.sum():.12g}, expected 1")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatch(f"ensemble mixes local dimensions {sorted(dims)}")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)

    def matrices(self) -> List[np.ndarray]:
        return [matrix_rep(s) for s in self.states]

    def weighted_columns(self) -> np.ndarray:
        """n^2 x K array whose column k is sqrt(p_k) |psi_k>."""
        cols = np.stack([s.amplitudes for s in self.states], axis=1)
        return cols * np.sqrt(self.probs)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Bipartite density matrix of order n^2.

    The plain constructor only checks the shape; use from_array for
    untrusted input (Hermitian, unit trace and PSD are verified there).
    """
    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=np.complex128)
        order = self.dim * self.dim
        if M.shape != (order, order):
            raise InvalidState(f"density matrix for n={self.dim} must be {order}x{order}, got {M.shape}")
        object.__setattr__(self, "matrix", _frozen(M))

    @classmethod
    def from_array(cls, matrix, tol: TolLike = None, n: Optional[int] = None) -> "DensityMatrix":
        tol = as_tolerance(tol)
        M = as_matrix(matrix, "rho")
        order = require_square(M, "rho")
        if n is None:
            n = _local_dim(order, "density matrix")
        if order != n * n:
            raise InvalidState(f"density matrix order {order} does not match n={n}")
        bound = tol.threshold(fro(M))
        if fro(M - dagger(M)) > bound:
            raise InvalidState("density matrix is not Hermitian")
        trace = np.trace(M)
        if abs(trace - 1.0) > bound:
            raise InvalidState(f"density matrix trace is {trace.real:.12g}, expected 1")
        M = (M + dagger(M)) / 2.0
        w, _ = eigh(M, tol)
        if w[0] < -bound:
            raise InvalidState(f"density matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
        return cls(dim=n, matrix=M)


def matrix_rep(psi: PureState) -> np.ndarray:
    """Amplitude matrix A with A[j, l] = <jl|psi>."""
    return np.array(psi.amplitudes.reshape(psi.dim, psi.dim))


def overlap(a: PureState, b: PureState) -> complex:
    if a.dim != b.dim:
        raise DimensionMismatch(f"states have local dimensions {a.dim} and {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def product_state(a, b) -> PureState:
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.shape != b.shape:
        raise DimensionMismatch(f"local factors have lengths {a.shape[0]} and {b.shape[0]}")
    return PureState.from_vector(np.kron(a, b), n=a.shape[0], normalize=True)


def schmidt_decompose(psi: PureState, tol: TolLike = None) -> SchmidtForm:
    """
    Schmidt coefficients and local bases from the SVD of the amplitude matrix.

    With U A V^t = diag(s): lambda = s^2, e_m is column m of U^dagger and
    f_m is the complex conjugate of row m of V.
    """
    U, V, s = svd(matrix_rep(psi), tol)
    return SchmidtForm(coefficients=s ** 2, basis_A=dagger(U), basis_B=dagger(V))


def mix(ens: Ensemble) -> DensityMatrix:
    cols = ens.weighted_columns()
    return DensityMatrix(dim=ens.dim, matrix=cols @ dagger(cols))


def spectral_ensemble(rho: DensityMatrix, tol: TolLike = None) -> Ensemble:
    """Eigen-ensemble of rho: eigenvalues above the numerical floor, largest first."""
    w, Q = eigh(rho.matrix, tol)
    keep = [i for i in range(len(w) - 1, -1, -1) if w[i] > SPECTRAL_CUTOFF]
    probs = w[keep]
    states = [PureState.from_vector(Q[:, i], n=rho.dim, normalize=True) for i in keep]
    return Ensemble(probs=probs / probs.sum(), states=tuple(states))


def mixture_transform(ens: Ensemble, W, tol: TolLike = None) -> Ensemble:
    """
    New ensemble of the same mixed state from an S x K isometry W.

    |phi_s> is proportional to sum_k W[s, k] sqrt(p_k) |psi_k>, with weight
    q_s its squared norm; rows with q_s at or below tol are dropped.
    """
    tol = as_tolerance(tol)
    W = as_matrix(W, "W")
    S, K = W.shape
    if K != len(ens):
        raise DimensionMismatch(f"W has {K} columns but the ensemble has {len(ens)} states")
    gap = fro(dagger(W) @ W - np.eye(K))
    if gap > tol.threshold(fro(W)):
        raise NotIsometry(f"W^dagger W differs from the identity by {gap:.3e}")
    Phi = ens.weighted_columns() @ W.T
    q = np.sum(np.abs(Phi) ** 2, axis=0)
    keep = [s for s in range(S) if q[s] > tol.eps]
    states = [PureState.from_vector(Phi[:, s] / np.sqrt(q[s]), n=ens.dim) for s in keep]
    probs = q[keep]
    return Ensemble(probs=probs / probs.sum(), states=tuple(states))


def _density_array(rho) -> Tuple[int, np.ndarray]:
    if isinstance(rho, DensityMatrix):
        return rho.dim, np.asarray(rho.matrix)
    M = as_matrix(rho, "rho")
    order = require_square(M, "rho")
    return _local_dim(order, "density matrix"), M


def partial_transpose_B(rho) -> np.ndarray:
    """Transpose on the second factor: entry ((i,j),(k,l)) <- ((i,l),(k,j))."""
    n, M = _density_array(rho)
    return M.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n).copy()


def is_ppt(rho, tol: TolLike = None) -> Tuple[bool, float]:
    """PPT verdict and the smallest eigenvalue of the partial transpose."""
    tol = as_tolerance(tol)
    pt = partial_transpose_B(rho)
    w, _ = eigh(pt, tol)
    min_eig = float(w[0])
    return min_eig >= -tol.threshold(fro(pt)), min_eig


def reduced_density_B(psi: PureState) -> np.ndarray:
    A = matrix_rep(psi)
    return A.T @ A.conj()


def reduced_density_A(psi: PureState) -> np.ndarray:
    A = matrix_rep(psi)
    return A @ dagger(A)


def apply_local_unitaries(rho: DensityMatrix, U0, V0) -> DensityMatrix:
    """(U0 (x) V0) rho (U0 (x) V0)^dagger."""
    U0 = as_matrix(U0, "U0")
    V0 = as_matrix(V0, "V0")
    if U0.shape != (rho.dim, rho.dim) or V0.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(f"local unitaries must be {rho.dim}x{rho.dim}")
    L = np.kron(U0, V0)
    return DensityMatrix(dim=rho.dim, matrix=L @ rho.matrix @ dagger(L))


def random_pure_state(n: int, rng: np.random.Generator) -> PureState:
    return PureState.from_vector(ginibre(rng, n * n, 1)[:, 0], n=n, normalize=True)


def random_density_matrix(n: int, rank: int, rng: np.random.Generator) -> DensityMatrix:
    """Induced-measure mixed state G G^dagger / tr with G of shape n^2 x rank."""
    if not 1 <= rank <= n * n:
        raise DimensionMismatch(f"rank must be in 1..{n * n}, got {rank}")
    G = ginibre(rng, n * n, rank)
    M = G @ dagger(G)
    return DensityMatrix(dim=n, matrix=M / np.trace(M).real)


def uniform_ensemble(states: Sequence[PureState]) -> Ensemble:
    states = tuple(states)
    return Ensemble(probs=np.full(len(states), 1.0 / len(states)), states=states)
