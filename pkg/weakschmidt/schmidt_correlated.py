"""
Schmidt-correlated states

    rho = sum_{j,l} C_jl |e_j f_j><e_l f_l|

for orthonormal bases {e_j}, {f_j}. A mixed state has this form exactly when
the members of (any, hence its spectral) ensemble are simultaneously
diagonalizable in weak SVD; the witness (U, V) of that diagonalization
gives e_j = U^dagger[:, j], f_j = V^dagger[:, j] and
C = sum_k p_k alpha_k alpha_k^dagger.

For such states separability, positivity of the partial transpose, a
diagonal C and orthogonality of the ensemble's diagonal vectors all coincide.
"""
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .config import TolLike, as_tolerance
from .errors import DimensionMismatch, InvalidInput, NotDiagonalInBasis, NotSchmidtCorrelated
from .numerics import (
    as_matrix,
    dagger,
    fro,
    frobenius_offdiag,
    ginibre,
    make_rng,
    random_unitary,
)
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    is_ppt,
    mixture_transform,
    partial_transpose_B,
    spectral_ensemble,
)
from .weak_svd import ACCEPT_REL, diagonalize, weak_violation

# Assumption checks for the phase criterion.
PROB_UNIFORM_TOL = 1e-9
MODULUS_SPREAD_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class SchmidtCorrelatedForm:
    """
    Local basis witness (U, V) and coefficient matrix C.

    residual is ||reconstruct() - rho||_F for the state the form was
    detected from (0 for constructed forms).
    """
    dim: int
    U: np.ndarray
    V: np.ndarray
    C: np.ndarray
    residual: float = 0.0

    @property
    def e_basis(self) -> np.ndarray:
        return dagger(self.U)

    @property
    def f_basis(self) -> np.ndarray:
        return dagger(self.V)

    def rotated_density(self) -> np.ndarray:
        """sum C_jl |jj><ll| in the computational basis."""
        n = self.dim
        diag_idx = np.arange(n) * (n + 1)
        M = np.zeros((n * n, n * n), dtype=np.complex128)
        M[np.ix_(diag_idx, diag_idx)] = self.C
        return M

    def reconstruct(self) -> DensityMatrix:
        L = np.kron(self.e_basis, self.f_basis)
        return DensityMatrix(dim=self.dim, matrix=L @ self.rotated_density() @ dagger(L))


@dataclass(frozen=True, eq=False)
class PhaseDecomposition:
    """alpha_jk = moduli[j] * phases[j, k] for an ensemble of diagonal states."""
    moduli: np.ndarray
    phases: np.ndarray
    probs: np.ndarray
    spread: float

    def reconstruct(self) -> np.ndarray:
        return self.moduli[:, None] * self.phases


def _rotate(rho: DensityMatrix, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    L = np.kron(U, V)
    return L @ rho.matrix @ dagger(L)


def detect(rho: DensityMatrix, tol: TolLike = None, seed: int = 0) -> Optional[SchmidtCorrelatedForm]:
    """
    Schmidt-correlated form of rho, or None.

    Only the spectral ensemble is examined. A Schmidt-correlated state is
    supported on span{|e_j f_j>}, so ranks above n are rejected at once.
    """
    tol = as_tolerance(tol)
    form, _ = detect_spectral(rho, spectral_ensemble(rho, tol), tol, seed)
    return form


def detect_spectral(
    rho: DensityMatrix, ens: Ensemble, tol: TolLike = None, seed: int = 0
) -> Tuple[Optional[SchmidtCorrelatedForm], float]:
    """detect() on an already computed spectral ensemble; also returns the weak-criterion violation."""
    tol = as_tolerance(tol)
    family = ens.matrices()
    violation = weak_violation(family)
    if len(ens) > rho.dim or violation > tol.eps:
        return None, violation
    result = diagonalize(family, tol, seed)
    alpha = result.alpha
    C = (alpha * ens.probs) @ dagger(alpha)
    C = (C + dagger(C)) / 2.0
    form = SchmidtCorrelatedForm(dim=rho.dim, U=result.U, V=result.V, C=C)
    res = fro(form.reconstruct().matrix - rho.matrix)
    return SchmidtCorrelatedForm(dim=rho.dim, U=result.U, V=result.V, C=C, residual=res), violation


def is_separable_sc(form: SchmidtCorrelatedForm, tol: TolLike = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """
    Separable iff every off-diagonal |C_jl| is within tolerance.

    Otherwise the 1-based pair (j, l), j < l, of the largest off-diagonal
    entry is returned; the partial transpose has the principal minor
    -|C_jl|^2 on that pair.
    """
    tol = as_tolerance(tol)
    upper = np.triu(np.abs(form.C), k=1)
    if upper.size == 0 or float(upper.max()) <= tol.eps:
        return True, None
    j, l = np.unravel_index(int(np.argmax(upper)), upper.shape)
    return False, (int(j) + 1, int(l) + 1)


def max_offdiag_coefficient(form: SchmidtCorrelatedForm) -> float:
    upper = np.triu(np.abs(form.C), k=1)
    return float(upper.max()) if upper.size else 0.0


def ensemble_alpha(ens: Ensemble, U=None, V=None, tol: TolLike = None, slack: float = 0.0) -> np.ndarray:
    """
    n x K diagonals of U A_k V^t; raises NotDiagonalInBasis if any is not
    diagonal. slack widens the diagonality threshold for numerically built bases.
    """
    tol = as_tolerance(tol)
    n = ens.dim
    U = np.eye(n) if U is None else as_matrix(U, "U")
    V = np.eye(n) if V is None else as_matrix(V, "V")
    if U.shape != (n, n) or V.shape != (n, n):
        raise DimensionMismatch(f"local bases must be {n}x{n}")
    columns = []
    for k, A in enumerate(ens.matrices()):
        D = U @ A @ V.T
        off = frobenius_offdiag(D)
        if off > tol.threshold(fro(A)) + slack:
            raise NotDiagonalInBasis(f"state {k + 1} is not diagonal in the given basis (off-diagonal mass {off:.3e})")
        columns.append(np.diag(D))
    return np.stack(columns, axis=1)


def orthogonality_check(ens: Ensemble, U=None, V=None, tol: TolLike = None, slack: float = 0.0) -> bool:
    """
    sum_k p_k alpha_jk conj(alpha_lk) = 0 for every j != l, where alpha_k is
    the diagonal of state k in the (U, V) basis (identity when omitted).
    """
    tol = as_tolerance(tol)
    alpha = ensemble_alpha(ens, U, V, tol, slack)
    G = (alpha * ens.probs) @ dagger(alpha)
    upper = np.triu(np.abs(G), k=1)
    return upper.size == 0 or float(upper.max()) <= tol.eps


def cross_outcome_mass(rho: DensityMatrix, form: SchmidtCorrelatedForm) -> float:
    """Probability that local measurements in the witness bases give different outcomes."""
    n = rho.dim
    diag = np.real(np.diag(_rotate(rho, form.U, form.V))).reshape(n, n)
    return float(diag.sum() - np.trace(diag))


def pt_principal_minor(rho: DensityMatrix, form: SchmidtCorrelatedForm, j: int, l: int) -> float:
    """Order-two principal minor of the rotated partial transpose on |jl>, |lj> (1-based)."""
    n = rho.dim
    if not (1 <= j <= n and 1 <= l <= n) or j == l:
        raise InvalidInput(f"minor indices must be distinct and in 1..{n}, got ({j}, {l})")
    pt = partial_transpose_B(_rotate(rho, form.U, form.V))
    a, b = (j - 1) * n + (l - 1), (l - 1) * n + (j - 1)
    block = pt[np.ix_([a, b], [a, b])]
    return float(np.real(np.linalg.det(block)))


def separability_report(rho: DensityMatrix, form: SchmidtCorrelatedForm, tol: TolLike = None) -> Dict[str, Any]:
    """Off-diagonal C, PPT and ensemble orthogonality verdicts side by side."""
    tol = as_tolerance(tol)
    by_coefficients, witness = is_separable_sc(form, tol)
    ppt, min_eig = is_ppt(rho, tol)
    ens = spectral_ensemble(rho, tol)
    orthogonal = orthogonality_check(ens, form.U, form.V, tol, slack=ACCEPT_REL)
    minor = pt_principal_minor(rho, form, *witness) if witness else None
    return {
        "separable": by_coefficients,
        "witness": list(witness) if witness else None,
        "minor": minor,
        "max_offdiag_C": max_offdiag_coefficient(form),
        "off_diagonal_C": by_coefficients,
        "ppt": ppt,
        "ppt_min_eigenvalue": min_eig,
        "orthogonality": orthogonal,
        "agree": by_coefficients == ppt == orthogonal,
    }


def phase_decompose(ens: Ensemble, tol: TolLike = None) -> PhaseDecomposition:
    """Moduli and unit phases of an ensemble of diagonal states."""
    alpha = ensemble_alpha(ens, tol=tol)
    mags = np.abs(alpha)
    moduli = np.sqrt(np.mean(mags ** 2, axis=1))
    phases = np.where(mags > 0, alpha / np.where(mags > 0, mags, 1.0), 1.0)
    spread = float(np.max(mags.max(axis=1) - mags.min(axis=1)))
    return PhaseDecomposition(moduli=moduli, phases=phases, probs=np.array(ens.probs), spread=spread)


def phase_separability(ens: Ensemble, tol: TolLike = None) -> Tuple[bool, Optional[bool], Optional[np.ndarray]]:
    """
    Separability through the phase matrix.

    Applicable when there are n diagonal states with probabilities 1/n whose
    row moduli |alpha_jk| = a_j do not depend on k and are nonzero. Then the
    state is separable iff the phase matrix is a complex Hadamard matrix.

    The verdict is read from C_jl = a_j a_l (Theta Theta^dagger)_jl / n, the
    quantity the partial transpose sees, on the threshold is_ppt uses.

    Returns:
        (applicable, verdict or None, phase matrix or None)
    """
    tol = as_tolerance(tol)
    pd = phase_decompose(ens, tol)
    n = ens.dim
    applicable = (
        len(ens) == n
        and bool(np.all(np.abs(pd.probs - 1.0 / n) <= PROB_UNIFORM_TOL))
        and pd.spread <= MODULUS_SPREAD_TOL
        and float(pd.moduli.min()) > tol.eps
    )
    if not applicable:
        return False, None, None
    alpha = ensemble_alpha(ens, tol=tol)
    C = (alpha * pd.probs) @ dagger(alpha)
    upper = np.triu(np.abs(C), k=1)
    return True, float(upper.max()) <= tol.threshold(fro(C)), pd.phases


def assumption_ensemble(moduli, phase_matrix) -> Ensemble:
    """n diagonal states diag(a * Theta[:, k]) with uniform probabilities."""
    a = np.abs(np.asarray(moduli, dtype=np.float64).reshape(-1))
    a = a / np.linalg.norm(a)
    theta = as_matrix(phase_matrix, "phase_matrix")
    n = a.shape[0]
    if theta.shape != (n, n):
        raise DimensionMismatch(f"phase matrix must be {n}x{n}, got {theta.shape}")
    theta = theta / np.abs(theta)
    states = tuple(PureState.from_matrix(np.diag(a * theta[:, k])) for k in range(n))
    return Ensemble(probs=np.full(n, 1.0 / n), states=states)


def canonical_coefficients(C, tol: TolLike = None) -> np.ndarray:
    """
    Gauge-fixed C for comparisons: indices sorted by descending C_jj, then
    diagonal phases chosen so each significant entry reached from the
    smallest index of its component is real positive.
    """
    tol = as_tolerance(tol)
    C = as_matrix(C, "C")
    order = np.argsort(-np.real(np.diag(C)), kind="stable")
    C = C[np.ix_(order, order)]
    n = C.shape[0]
    phase = np.zeros(n, dtype=np.complex128)
    for root in range(n):
        if phase[root] != 0:
            continue
        phase[root] = 1.0
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if phase[j] == 0 and abs(C[i, j]) > tol.eps:
                    phase[j] = phase[i] * C[i, j] / abs(C[i, j])
                    queue.append(j)
    D = np.diag(phase)
    return D @ C @ dagger(D)


def random_schmidt_correlated(
    n: int, rank: int, seed: int = 0, diagonal: bool = False
) -> Tuple[DensityMatrix, SchmidtCorrelatedForm]:
    """
    Random Schmidt-correlated state with a coefficient matrix of the given
    rank, rotated by Haar-random local unitaries. Returns the state and the
    form it was built from.
    """
    if not 1 <= rank <= n:
        raise InvalidInput(f"rank must lie in 1..{n}, got {rank}")
    rng = make_rng(seed)
    if diagonal:
        weights = np.zeros(n)
        weights[:rank] = rng.random(rank) + 0.1
        weights = rng.permutation(weights)
        C = np.diag(weights / weights.sum()).astype(np.complex128)
    else:
        G = ginibre(rng, n, rank)
        C = G @ dagger(G)
        C = C / np.trace(C).real
    U0 = random_unitary(n, rng)
    V0 = random_unitary(n, rng)
    truth = SchmidtCorrelatedForm(dim=n, U=dagger(U0), V=dagger(V0), C=C)
    return truth.reconstruct(), truth


def all_ensembles_property_check(
    rho: DensityMatrix,
    trials: int = 20,
    seed: int = 0,
    tol: TolLike = None,
    common_basis: bool = False,
) -> bool:
    """
    Every ensemble of a Schmidt-correlated state is weak-SVD diagonalizable.

    Random ensembles are produced from the spectral ensemble by S x K
    isometries (S = K, K+1 or K+2). With common_basis, each must also be
    diagonal in the spectral witness basis.

    Raises:
        NotSchmidtCorrelated: rho is not Schmidt-correlated.
    """
    tol = as_tolerance(tol)
    form = detect(rho, tol, seed)
    if form is None:
        raise NotSchmidtCorrelated("state is not Schmidt-correlated")
    ens = spectral_ensemble(rho, tol)
    K = len(ens)
    rng = make_rng(seed)
    for _ in range(trials):
        S = K + int(rng.integers(0, 3))
        W = random_unitary(S, rng)[:, :K]
        other = mixture_transform(ens, W, tol)
        if weak_violation(other.matrices()) > tol.eps:
            return False
        if common_basis:
            for A in other.matrices():
                if frobenius_offdiag(form.U @ A @ form.V.T) > tol.threshold(fro(A)) + ACCEPT_REL:
                    return False
    return True
