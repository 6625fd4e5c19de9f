import numpy as np
import pytest

from weakschmidt.config import Tolerance, as_tolerance
from weakschmidt.errors import InvalidInput, NonSquare, NotCommuting, NotHermitian
from weakschmidt.numerics import (
    cluster_indices,
    complete_unitary,
    dagger,
    eigh,
    fro,
    ginibre,
    is_diagonal,
    is_normal,
    is_unitary,
    joint_diag_hermitian,
    make_rng,
    random_hermitian,
    random_unitary,
    svd,
)


def test_eigh_reconstruction_on_seeded_instances():
    rng = make_rng(11)
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        H = random_hermitian(n, rng)
        w, Q = eigh(H)
        assert np.all(np.diff(w) >= 0)
        assert is_unitary(Q, 1e-10)
        assert fro(H @ Q - Q * w) <= 1e-10 * max(1.0, fro(H))


def test_svd_reconstruction_on_seeded_instances():
    rng = make_rng(12)
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        A = ginibre(rng, n, n)
        U, V, s = svd(A)
        assert np.all(s >= 0)
        assert np.all(np.diff(s) <= 0)
        assert is_unitary(U, 1e-10) and is_unitary(V, 1e-10)
        rebuilt = dagger(U) @ np.diag(s) @ V.conj()
        assert fro(rebuilt - A) <= 1e-10 * max(1.0, fro(A))


def test_svd_rank_deficient_keeps_unitary_factors():
    rng = make_rng(5)
    G = ginibre(rng, 6, 2)
    A = G @ ginibre(rng, 2, 6)
    U, V, s = svd(A)
    assert np.all(s[2:] <= 1e-10 * s[0])
    assert is_unitary(U, 1e-10) and is_unitary(V, 1e-10)
    assert fro(U @ A @ V.T - np.diag(s)) <= 1e-10 * fro(A)


def test_eigh_large_order_uses_lapack_path():
    H = random_hermitian(20, make_rng(3))
    w, Q = eigh(H)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(H), atol=1e-10)
    assert fro(H @ Q - Q * w) <= 1e-10 * fro(H)


def test_eigh_degenerate_spectrum():
    rng = make_rng(4)
    Q0 = random_unitary(5, rng)
    H = Q0 @ np.diag([1.0, 1.0, 1.0, -2.0, -2.0]) @ dagger(Q0)
    w, Q = eigh(H)
    np.testing.assert_allclose(w, [-2, -2, 1, 1, 1], atol=1e-12)
    assert fro(H @ Q - Q * w) <= 1e-12


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_eigh_rejects_non_square():
    with pytest.raises(NonSquare):
        eigh(np.zeros((2, 3)))


@pytest.mark.parametrize("bad", [[[np.nan, 0.0], [0.0, 1.0]], [[np.inf, 0.0], [0.0, 1.0]], [1.0, 2.0]])
def test_invalid_matrices_rejected(bad):
    with pytest.raises(InvalidInput):
        eigh(bad)


def test_joint_diag_splits_shared_degeneracy():
    rng = make_rng(8)
    Q0 = random_unitary(4, rng)
    H1 = Q0 @ np.diag([1.0, 1.0, 2.0, 2.0]) @ dagger(Q0)
    H2 = Q0 @ np.diag([3.0, 4.0, 3.0, 4.0]) @ dagger(Q0)
    B = joint_diag_hermitian([H1, H2])
    assert is_unitary(B, 1e-10)
    for H in (H1, H2):
        assert is_diagonal(dagger(B) @ H @ B, 1e-9)


def test_joint_diag_rejects_non_commuting():
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.array([[1, 0], [0, -1]], dtype=complex)
    with pytest.raises(NotCommuting):
        joint_diag_hermitian([X, Z])


def test_complete_unitary_places_columns():
    rng = make_rng(2)
    Q = random_unitary(5, rng)
    cols = Q[:, :2]
    T = complete_unitary(cols, [3, 1], 5)
    assert is_unitary(T, 1e-12)
    np.testing.assert_allclose(T[:, 3], cols[:, 0])
    np.testing.assert_allclose(T[:, 1], cols[:, 1])
    np.testing.assert_allclose(complete_unitary(np.zeros((3, 0)), [], 3), np.eye(3))


def test_cluster_indices_groups_neighbours():
    assert cluster_indices(np.array([3.0, 3.0 + 1e-9, 2.0, 1e-12, 0.0]), 1e-6) == [[0, 1], [2], [3, 4]]


def test_predicates():
    assert is_normal(np.array([[1, 1j], [1j, 1]]))
    assert not is_normal(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert is_diagonal(np.diag([1.0, 2.0]))
    assert not is_unitary(2 * np.eye(2))


def test_make_rng_is_reproducible():
    a = make_rng(7).standard_normal(4)
    b = make_rng(7).standard_normal(4)
    np.testing.assert_array_equal(a, b)


def test_tolerance_threshold_modes():
    rel = Tolerance(eps=1e-6)
    assert rel.threshold() == 1e-6
    assert rel.threshold(0.5) == 1e-6
    assert rel.threshold(10.0, 2.0) == pytest.approx(2e-5)
    assert Tolerance(eps=1e-6, scale_mode="absolute").threshold(100.0) == 1e-6


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eps=0.0)
    with pytest.raises(ValueError):
        Tolerance(scale_mode="spectral")
    with pytest.raises(TypeError):
        as_tolerance(True)
    assert as_tolerance(None) == Tolerance()
    assert as_tolerance(1e-5).eps == 1e-5
