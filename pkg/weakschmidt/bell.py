"""
Generalized Bell bases from complex Hadamard matrices.

For shift s and phase column l (both 1-based),

    |psi_l^s> = 1/sqrt(n) sum_j Phi^s[j, l] |j, j+s-1 mod n>

where Phi^s is the Hadamard matrix assigned to shift s. The n^2 states are
ordered with s outer and l inner. With every Phi^s = F_n this is the Weyl
operator basis.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from .config import TolLike, as_tolerance
from .errors import DimensionMismatch, InvalidInput, InvalidState, NotHadamard, OrderMismatch, WrongCount
from .hadamard import HadamardCandidate, fourier, hadamard_array, is_hadamard
from .numerics import dagger, fro
from .states import DensityMatrix, PureState, reduced_density_A, reduced_density_B


@dataclass(frozen=True, eq=False)
class BellBasis:
    n: int
    hadamards: Tuple[np.ndarray, ...]
    states: Tuple[PureState, ...]

    def state(self, shift: int, phase: int) -> PureState:
        """|psi_phase^shift>, both indices 1-based."""
        if not (1 <= shift <= self.n and 1 <= phase <= self.n):
            raise InvalidInput(f"Bell indices must lie in 1..{self.n}, got shift={shift}, phase={phase}")
        return self.states[(shift - 1) * self.n + (phase - 1)]

    def matrix(self) -> np.ndarray:
        """n^2 x n^2 matrix whose columns are the basis states in (s outer, l inner) order."""
        return np.stack([s.amplitudes for s in self.states], axis=1)


def _hadamard_list(hadamards) -> List[np.ndarray]:
    if isinstance(hadamards, HadamardCandidate):
        single = hadamards.matrix
        return [np.array(single) for _ in range(single.shape[0])]
    if isinstance(hadamards, np.ndarray) and hadamards.ndim == 2:
        return [np.array(hadamards, dtype=np.complex128) for _ in range(hadamards.shape[0])]
    return [hadamard_array(H) for H in hadamards]


def bell_basis(hadamards: Union[HadamardCandidate, np.ndarray, Sequence], tol: TolLike = None) -> BellBasis:
    """
    Bell basis from one Hadamard matrix per shift.

    A single matrix is replicated across all n shifts.

    Raises:
        WrongCount, NotHadamard, OrderMismatch
    """
    tol = as_tolerance(tol)
    mats = _hadamard_list(hadamards)
    if not mats:
        raise WrongCount("at least one Hadamard matrix is required")
    n = mats[0].shape[0]
    for s, H in enumerate(mats, start=1):
        if H.shape[0] != n:
            raise OrderMismatch(f"Hadamard matrix for shift {s} has order {H.shape[0]}, expected {n}")
    if len(mats) != n:
        raise WrongCount(f"order-{n} Bell basis needs {n} Hadamard matrices, got {len(mats)}")
    for s, H in enumerate(mats, start=1):
        if not is_hadamard(H, tol):
            raise NotHadamard(f"matrix for shift {s} is not a complex Hadamard matrix")

    states = []
    rows = np.arange(n)
    for s in range(n):
        for l in range(n):
            vec = np.zeros(n * n, dtype=np.complex128)
            vec[rows * n + (rows + s) % n] = mats[s][:, l] / np.sqrt(n)
            states.append(PureState.from_vector(vec, n=n))
    for H in mats:
        H.setflags(write=False)
    return BellBasis(n=n, hadamards=tuple(mats), states=tuple(states))


def weyl_basis(n: int) -> BellBasis:
    return bell_basis(fourier(n))


def weyl_operator(n: int, shift: int, phase: int) -> np.ndarray:
    """X^shift Z^phase with X|j> = |j+1 mod n> and Z|j> = omega^j |j>."""
    X = np.roll(np.eye(n, dtype=np.complex128), 1, axis=0)
    Z = np.diag(np.exp(2j * np.pi * ((np.arange(n) * phase) % n) / n))
    return np.linalg.matrix_power(X, shift % n) @ Z


def maximally_entangled_state(n: int) -> PureState:
    vec = np.zeros(n * n, dtype=np.complex128)
    vec[np.arange(n) * (n + 1)] = 1.0 / np.sqrt(n)
    return PureState.from_vector(vec, n=n)


def gram_residual(basis: BellBasis) -> float:
    B = basis.matrix()
    return fro(dagger(B) @ B - np.eye(basis.n * basis.n))


def max_entanglement_residual(psi: PureState) -> float:
    target = np.eye(psi.dim) / psi.dim
    return max(fro(reduced_density_A(psi) - target), fro(reduced_density_B(psi) - target))


def verify_max_entangled(psi: PureState, tol: TolLike = None) -> bool:
    """Both reduced states equal I/n within tolerance."""
    return max_entanglement_residual(psi) <= as_tolerance(tol).eps


@dataclass(frozen=True, eq=False)
class BellDecomposition:
    """
    Coefficients <psi_l^k| rho |psi_m^j> of rho in a Bell basis.

    coefficients[a, b] uses the basis ordering a = (k-1) n + (l-1),
    b = (j-1) n + (m-1).
    """
    basis: BellBasis
    coefficients: np.ndarray

    def coefficient(self, l: int, k: int, m: int, j: int) -> complex:
        n = self.basis.n
        return complex(self.coefficients[(k - 1) * n + (l - 1), (j - 1) * n + (m - 1)])

    def reconstruct(self) -> DensityMatrix:
        B = self.basis.matrix()
        return DensityMatrix(dim=self.basis.n, matrix=B @ self.coefficients @ dagger(B))

    def table(self) -> List[dict]:
        """Flat rows {l, k, m, j, re, im} with 1-based indices."""
        n = self.basis.n
        rows = []
        for a in range(n * n):
            k, l = divmod(a, n)
            for b in range(n * n):
                j, m = divmod(b, n)
                c = self.coefficients[a, b]
                rows.append({"l": l + 1, "k": k + 1, "m": m + 1, "j": j + 1, "re": float(c.real), "im": float(c.imag)})
        return rows


def decompose(rho: DensityMatrix, basis: BellBasis) -> BellDecomposition:
    if rho.dim != basis.n:
        raise DimensionMismatch(f"state has local dimension {rho.dim}, basis has order {basis.n}")
    B = basis.matrix()
    return BellDecomposition(basis=basis, coefficients=dagger(B) @ rho.matrix @ B)


def fixed_shift_mixture(basis: BellBasis, shift: int, probs) -> DensityMatrix:
    """sum_l probs[l] |psi_l^shift><psi_l^shift| for a 1-based shift."""
    n = basis.n
    if not 1 <= shift <= n:
        raise InvalidInput(f"shift must lie in 1..{n}, got {shift}")
    probs = np.asarray(probs, dtype=np.float64).reshape(-1)
    if probs.shape[0] != n:
        raise DimensionMismatch(f"expected {n} probabilities, got {probs.shape[0]}")
    if np.any(probs < 0) or abs(float(probs.sum()) - 1.0) > 1e-9:
        raise InvalidState("probabilities must be nonnegative and sum to 1")
    cols = np.stack([basis.state(shift, l).amplitudes for l in range(1, n + 1)], axis=1)
    weighted = cols * np.sqrt(probs)
    return DensityMatrix(dim=n, matrix=weighted @ dagger(weighted))
