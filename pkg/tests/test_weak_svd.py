import numpy as np
import pytest

from weakschmidt.errors import DimensionMismatch, InvalidInput, NotSimultaneouslyDiagonalizable
from weakschmidt.numerics import dagger, ginibre, is_unitary, make_rng, random_unitary
from weakschmidt.weak_svd import (
    as_family,
    check_strong,
    check_weak,
    check_weak_alt,
    diagonal_family,
    diagonalize,
    residual,
    strong_violation,
    weak_violation,
)


def test_cycle_states_are_weak_but_not_strong(cycle_states):
    assert not check_strong(cycle_states)
    assert check_weak(cycle_states)
    assert check_weak_alt(cycle_states)


def test_cycle_states_diagonalize(cycle_states):
    result = diagonalize(cycle_states)
    assert residual(cycle_states, result) <= 1e-9
    assert is_unitary(result.U, 1e-10) and is_unitary(result.V, 1e-10)
    alpha = result.alpha
    np.testing.assert_allclose(np.abs(alpha), np.full((3, 3), 1 / np.sqrt(3)), atol=1e-9)
    # columns are Fourier-type vectors: rows of alpha are orthonormal
    np.testing.assert_allclose(alpha @ dagger(alpha), np.eye(3), atol=1e-9)


def test_rotating_cycle_states_by_fourier_diagonalizes_them(cycle_states, omega):
    F = np.array([[omega ** (j * k) for k in range(3)] for j in range(3)])
    U = dagger(F) / np.sqrt(3)
    for psi in cycle_states:
        D = U @ as_family([psi])[0]
        assert np.allclose(D, np.diag(np.diag(D)), atol=1e-12)
        np.testing.assert_allclose(np.abs(np.diag(D)), np.full(3, 1 / np.sqrt(3)), atol=1e-12)


def test_complex_diagonal_pair_is_weak_but_not_strong(omega):
    family = [np.diag([1, omega, omega ** 2]), np.diag([1, omega ** 2, omega])]
    assert strong_violation(family) > 0.5
    assert not check_strong(family)
    assert check_weak(family)
    result = diagonalize(family)
    assert residual(family, result) <= 1e-12


@pytest.mark.parametrize("n,K", [(2, 1), (2, 3), (3, 2), (4, 4), (5, 3), (6, 2)])
def test_diagonalize_random_weak_families(n, K):
    rng = make_rng(100 * n + K)
    diags = [ginibre(rng, n, 1)[:, 0] for _ in range(K)]
    family = diagonal_family(diags, random_unitary(n, rng), random_unitary(n, rng))
    assert check_weak(family)
    assert check_weak_alt(family)
    result = diagonalize(family, seed=n)
    assert residual(family, result) <= 1e-9 * max(1.0, max(np.linalg.norm(A) for A in family))
    for A, d in zip(family, result.diagonals):
        np.testing.assert_allclose(result.rotate(A), np.diag(d), atol=1e-8)


def test_diagonalize_shared_degenerate_block():
    rng = make_rng(7)
    n = 4
    diags = []
    for _ in range(3):
        d = ginibre(rng, n, 1)[:, 0]
        d[1] = d[0]
        diags.append(d)
    family = diagonal_family(diags, random_unitary(n, rng), random_unitary(n, rng))
    result = diagonalize(family)
    assert residual(family, result) <= 1e-8


def test_diagonalize_rank_deficient_family():
    rng = make_rng(9)
    n = 5
    diags = []
    for _ in range(3):
        d = ginibre(rng, n, 1)[:, 0]
        d[3:] = 0.0
        diags.append(d)
    family = diagonal_family(diags, random_unitary(n, rng), random_unitary(n, rng))
    result = diagonalize(family)
    assert residual(family, result) <= 1e-8


def test_generic_family_fails_both_criteria():
    rng = make_rng(13)
    family = [ginibre(rng, 3, 3) for _ in range(2)]
    assert not check_weak(family)
    assert not check_weak_alt(family)
    assert weak_violation(family) > 1e-3
    with pytest.raises(NotSimultaneouslyDiagonalizable):
        diagonalize(family)


def test_strong_implies_weak():
    rng = make_rng(17)
    U, V = random_unitary(3, rng), random_unitary(3, rng)
    real_diags = [np.abs(ginibre(rng, 3, 1)[:, 0]) for _ in range(3)]
    family = diagonal_family(real_diags, U, V)
    assert check_strong(family)
    assert check_weak(family)


def test_single_matrix_is_plain_svd():
    A = ginibre(make_rng(19), 4, 4)
    result = diagonalize([A])
    assert residual([A], result) <= 1e-10 * np.linalg.norm(A)


def test_as_family_validation(bell_state):
    with pytest.raises(InvalidInput):
        as_family([])
    with pytest.raises(DimensionMismatch):
        as_family([np.eye(2), np.eye(3)])
    assert as_family([bell_state])[0].shape == (2, 2)


def _sandwich(seed, n, K):
    """U^dagger diag(d_k) conj(V) for Haar U, V; every fifth seed repeats a diagonal entry."""
    rng = make_rng(seed)
    diags = []
    for _ in range(K):
        d = ginibre(rng, n, 1)[:, 0]
        if seed % 5 == 0:
            d[1] = d[0]
        diags.append(d)
    return diagonal_family(diags, random_unitary(n, rng), random_unitary(n, rng)), rng


def test_seeded_sandwich_families_diagonalize():
    for seed in range(500):
        n = 2 + seed % 9
        K = 1 + (seed // 9) % n
        family, _ = _sandwich(seed, n, K)
        assert check_weak(family), (seed, n, K)
        result = diagonalize(family, seed=seed)
        scale = max(1.0, max(np.linalg.norm(A) for A in family))
        assert residual(family, result) <= 1e-7 * scale, (seed, n, K)


def test_weak_criteria_agree_on_seeded_families():
    positives = negatives = 0
    for seed in range(1000):
        n = 2 + seed % 9
        K = 2 + (seed // 9) % (n - 1) if seed % 2 else 1 + (seed // 9) % n
        family, rng = _sandwich(10_000 + seed, n, K)
        expected = seed % 2 == 0
        if not expected:
            if seed % 4 == 1:
                family[-1] = family[-1] + 1e-3 * ginibre(rng, n, n)
            else:
                family = [ginibre(rng, n, n) for _ in range(K)]
        weak, alt = check_weak(family), check_weak_alt(family)
        assert weak == alt == expected, (seed, n, K, weak, alt)
        positives += expected
        negatives += not expected
    assert positives == negatives == 500
