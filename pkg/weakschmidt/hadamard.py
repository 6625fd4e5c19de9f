"""
Complex Hadamard matrices: constructors, verification, dephasing and
equivalence testing.

H is a complex Hadamard matrix of order n when every |H_jk| = 1 and
H H^dagger = n I. H1 and H2 are equivalent when H1 = D1 P1 H2 P2 D2 for
diagonal unitaries D1, D2 and permutation matrices P1, P2.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .config import TolLike, as_tolerance
from .errors import InvalidInput, NotHadamard, OrderMismatch
from .numerics import as_matrix, dagger, fro, require_square

# Exhaustive permutation search is only attempted up to this order.
MAX_EXACT_ORDER = 6
MATCH_TOL = 1e-6
WITNESS_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class HadamardCandidate:
    """A square matrix that may or may not pass is_hadamard."""
    matrix: np.ndarray

    def __post_init__(self):
        M = as_matrix(self.matrix, "H")
        require_square(M, "H")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def hadamard_array(H) -> np.ndarray:
    if isinstance(H, HadamardCandidate):
        return np.array(H.matrix)
    M = as_matrix(H, "H")
    require_square(M, "H")
    return M


def is_hadamard(H, tol: TolLike = None) -> bool:
    tol = as_tolerance(tol)
    M = hadamard_array(H)
    n = M.shape[0]
    if np.any(np.abs(np.abs(M) - 1.0) > tol.eps):
        return False
    return fro(M @ dagger(M) - n * np.eye(n)) <= tol.eps * n


def _require_hadamard(H, tol, name: str = "H") -> np.ndarray:
    M = hadamard_array(H)
    if not is_hadamard(M, tol):
        raise NotHadamard(f"{name} is not a complex Hadamard matrix")
    return M


def fourier(n: int) -> HadamardCandidate:
    """F_n with entries exp(2 pi i (j-1)(k-1) / n)."""
    if n < 1:
        raise InvalidInput(f"Fourier order must be >= 1, got {n}")
    j, k = np.indices((n, n))
    return HadamardCandidate(np.exp(2j * np.pi * ((j * k) % n) / n))


def family_n4(a: float) -> HadamardCandidate:
    """One-parameter order-4 family; a = 0 is equivalent to F_4."""
    z = 1j * np.exp(1j * a)
    return HadamardCandidate(np.array([
        [1, 1, 1, 1],
        [1, z, -1, -z],
        [1, -1, 1, -1],
        [1, -z, -1, z],
    ], dtype=np.complex128))


def to_angles(H) -> np.ndarray:
    """Entry phases in (-pi, pi]."""
    return np.angle(hadamard_array(H))


def from_angles(theta) -> HadamardCandidate:
    theta = np.asarray(theta, dtype=np.float64)
    return HadamardCandidate(np.exp(1j * theta))


def permutation_matrix(perm) -> np.ndarray:
    """P with P[i, perm[i]] = 1, so (P X)[i] = X[perm[i]]."""
    n = len(perm)
    P = np.zeros((n, n), dtype=np.complex128)
    P[np.arange(n), list(perm)] = 1.0
    return P


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """Matrices with H1 = D1 P1 H2 P2 D2."""
    D1: np.ndarray
    P1: np.ndarray
    P2: np.ndarray
    D2: np.ndarray

    def apply(self, H2) -> np.ndarray:
        return self.D1 @ self.P1 @ hadamard_array(H2) @ self.P2 @ self.D2

    def residual(self, H1, H2) -> float:
        return fro(hadamard_array(H1) - self.apply(H2))

    def inverse(self) -> "EquivalenceWitness":
        """Witness of the reverse relation H2 = D1' P1' H1 P2' D2'."""
        D1_inv = np.diag(1.0 / np.diag(self.D1))
        D2_inv = np.diag(1.0 / np.diag(self.D2))
        return EquivalenceWitness(
            D1=self.P1.T @ D1_inv @ self.P1,
            P1=self.P1.T.copy(),
            P2=self.P2.T.copy(),
            D2=self.P2 @ D2_inv @ self.P2.T,
        )

    def compose(self, other: "EquivalenceWitness") -> "EquivalenceWitness":
        """If self maps H2 -> H1 and other maps H3 -> H2, the result maps H3 -> H1."""
        return EquivalenceWitness(
            D1=self.D1 @ self.P1 @ other.D1 @ self.P1.T,
            P1=self.P1 @ other.P1,
            P2=other.P2 @ self.P2,
            D2=self.P2.T @ other.D2 @ self.P2 @ self.D2,
        )


class EquivalenceStatus(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    status: EquivalenceStatus
    witness: Optional[EquivalenceWitness] = None
    residual: Optional[float] = None


def dephase_witness(H, tol: TolLike = None) -> Tuple[HadamardCandidate, EquivalenceWitness]:
    """
    Dephased form K = D1 H D2 with unit first row and column, plus the
    witness (P1 = P2 = I) relating K to H.
    """
    M = _require_hadamard(H, tol)
    n = M.shape[0]
    D1 = np.diag(1.0 / M[:, 0])
    D2 = np.diag(M[0, 0] / M[0, :])
    K = D1 @ M @ D2
    K[:, 0] = 1.0
    K[0, :] = 1.0
    identity = np.eye(n, dtype=np.complex128)
    return HadamardCandidate(K), EquivalenceWitness(D1=D1, P1=identity, P2=identity.copy(), D2=D2)


def dephase(H, tol: TolLike = None) -> HadamardCandidate:
    return dephase_witness(H, tol)[0]


def random_diagonal_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * rng.random(n)))


def dress(H, rng: np.random.Generator) -> Tuple[np.ndarray, EquivalenceWitness]:
    """Random D1 P1 H P2 D2 together with its witness."""
    M = hadamard_array(H)
    n = M.shape[0]
    witness = EquivalenceWitness(
        D1=random_diagonal_unitary(n, rng),
        P1=permutation_matrix(rng.permutation(n)),
        P2=permutation_matrix(rng.permutation(n)),
        D2=random_diagonal_unitary(n, rng),
    )
    return witness.apply(M), witness


def _multiset_match(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Entries of a and b agree as multisets within tol."""
    unused = list(range(len(b)))
    for x in a:
        for pos, idx in enumerate(unused):
            if abs(x - b[idx]) <= tol:
                del unused[pos]
                break
        else:
            return False
    return True


def _match_columns(K1: np.ndarray, K2: np.ndarray, tol: float) -> Optional[List[int]]:
    """tau with K1[:, k] = K2[:, tau[k]], or None."""
    n = K1.shape[1]
    free = list(range(n))
    tau = []
    for k in range(n):
        for pos, c in enumerate(free):
            if np.max(np.abs(K1[:, k] - K2[:, c])) <= tol:
                tau.append(c)
                del free[pos]
                break
        else:
            return None
    return tau


def _row_permutations(K1: np.ndarray, K2: np.ndarray, tol: float) -> Iterator[List[int]]:
    """
    Row maps sigma with sigma[0] = 0 and matching row-entry multisets,
    pruned on the multiset of partial column tuples.
    """
    n = K1.shape[0]
    compatible = [
        [r for r in range(1, n) if _multiset_match(K1[i], K2[r], tol)] for i in range(n)
    ]

    def extend(sigma: List[int], used: set) -> Iterator[List[int]]:
        i = len(sigma)
        if i == n:
            yield list(sigma)
            return
        for r in compatible[i]:
            if r in used:
                continue
            sigma.append(r)
            if _match_columns(K1[: i + 1], K2[sigma], tol) is not None:
                used.add(r)
                yield from extend(sigma, used)
                used.discard(r)
            sigma.pop()

    yield from extend([0], {0})


def _moving_first(n: int, first: int) -> List[int]:
    return [first] + [i for i in range(n) if i != first]


def equivalent(H1, H2, tol: TolLike = None) -> EquivalenceResult:
    """
    Decide H1 = D1 P1 H2 P2 D2 by exhaustive search over dephased forms.

    For every choice of the row and column of H2 that lands first, H2 is
    dephased and row permutations fixing the first row are enumerated; the
    column permutation then follows by matching columns. YES carries a
    verified witness; NO means the search was exhaustive. Orders above
    MAX_EXACT_ORDER return UNKNOWN.

    Raises:
        NotHadamard, OrderMismatch
    """
    tol = as_tolerance(tol)
    A = _require_hadamard(H1, tol, "H1")
    B = _require_hadamard(H2, tol, "H2")
    n = A.shape[0]
    if B.shape[0] != n:
        raise OrderMismatch(f"H1 has order {n}, H2 has order {B.shape[0]}")
    if n > MAX_EXACT_ORDER:
        return EquivalenceResult(status=EquivalenceStatus.UNKNOWN)

    K1_c, w1 = dephase_witness(A, tol)
    K1 = K1_c.matrix
    back1_D1 = np.linalg.inv(w1.D1)
    back1_D2 = np.linalg.inv(w1.D2)
    for r in range(n):
        Pr = permutation_matrix(_moving_first(n, r))
        for c in range(n):
            Pc = permutation_matrix(_moving_first(n, c)).T
            K2_c, w2 = dephase_witness(Pr @ B @ Pc, tol)
            K2 = K2_c.matrix
            for sigma in _row_permutations(K1, K2, MATCH_TOL):
                tau = _match_columns(K1, K2[sigma], MATCH_TOL)
                if tau is None:
                    continue
                Ps = permutation_matrix(sigma)
                Pt = permutation_matrix(tau).T
                # K1 = Ps K2 Pt, K2 = F1 (Pr B Pc) F2, A = E1^-1 K1 E2^-1
                witness = EquivalenceWitness(
                    D1=back1_D1 @ Ps @ w2.D1 @ Ps.T,
                    P1=Ps @ Pr,
                    P2=Pc @ Pt,
                    D2=Pt.T @ w2.D2 @ Pt @ back1_D2,
                )
                res = witness.residual(A, B)
                if res <= WITNESS_TOL * n:
                    return EquivalenceResult(status=EquivalenceStatus.YES, witness=witness, residual=res)
    return EquivalenceResult(status=EquivalenceStatus.NO)
