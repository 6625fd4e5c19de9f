import numpy as np
import pytest

from weakschmidt.config import Tolerance
from weakschmidt.errors import InvalidInput, NotSchmidtCorrelated
from weakschmidt.hadamard import family_n4, fourier
from weakschmidt.numerics import fro, make_rng, random_unitary
from weakschmidt.schmidt_correlated import (
    all_ensembles_property_check,
    assumption_ensemble,
    canonical_coefficients,
    cross_outcome_mass,
    detect,
    detect_spectral,
    is_separable_sc,
    orthogonality_check,
    phase_decompose,
    phase_separability,
    pt_principal_minor,
    random_schmidt_correlated,
    separability_report,
)
from weakschmidt.states import (
    DensityMatrix,
    Ensemble,
    apply_local_unitaries,
    is_ppt,
    mix,
    random_density_matrix,
    spectral_ensemble,
)
from weakschmidt.weak_svd import weak_violation

TOL = Tolerance(eps=1e-7)


def _sc_cases(count):
    """(seed, n, rank, diagonal) spread over n = 2..8 and every rank."""
    cases = []
    for seed in range(count):
        n = 2 + seed % 7
        rank = 1 + (seed // 7) % n
        cases.append((seed, n, rank, seed % 3 == 0))
    return cases


def test_detects_seeded_schmidt_correlated_states():
    for seed, n, rank, diagonal in _sc_cases(200):
        rho, truth = random_schmidt_correlated(n, rank, seed=seed, diagonal=diagonal)
        form = detect(rho, TOL, seed=seed)
        assert form is not None, (seed, n, rank)
        assert form.residual <= 1e-7
        assert cross_outcome_mass(rho, form) <= 1e-9


def test_every_random_ensemble_passes_weak_criterion():
    for seed, n, rank, diagonal in _sc_cases(200):
        rho, _ = random_schmidt_correlated(n, rank, seed=seed, diagonal=diagonal)
        assert all_ensembles_property_check(rho, trials=20, seed=seed, tol=TOL)


def test_common_basis_variant():
    rho, _ = random_schmidt_correlated(3, 2, seed=4)
    assert all_ensembles_property_check(rho, trials=5, seed=1, tol=TOL, common_basis=True)


def test_rejects_seeded_dense_states():
    for seed in range(200):
        n = 2 + seed % 7
        rank = 2 + (seed // 7) % (n * n - 1)
        rho = random_density_matrix(n, rank, make_rng(1000 + seed))
        assert detect(rho, TOL, seed=seed) is None, (seed, n, rank)


def test_negative_verdict_survives_local_unitaries():
    rng = make_rng(77)
    for seed in range(30):
        n = 2 + seed % 4
        rho = random_density_matrix(n, 2 + seed % 3, make_rng(2000 + seed))
        assert detect(rho, TOL, seed=seed) is None, seed
        moved = apply_local_unitaries(rho, random_unitary(n, rng), random_unitary(n, rng))
        assert detect(moved, TOL, seed=seed) is None, seed


def test_detect_spectral_returns_the_weak_residual():
    rho, _ = random_schmidt_correlated(3, 2, seed=12)
    ens = spectral_ensemble(rho, TOL)
    form, violation = detect_spectral(rho, ens, TOL, seed=12)
    assert form is not None
    assert violation == weak_violation(ens.matrices())
    assert violation <= TOL.eps
    np.testing.assert_allclose(form.C, detect(rho, TOL, seed=12).C, atol=1e-12)

    dense = random_density_matrix(3, 2, make_rng(5))
    form, violation = detect_spectral(dense, spectral_ensemble(dense, TOL), TOL)
    assert form is None
    assert violation > TOL.eps


def test_uniform_cycle_mixture_has_identity_coefficients(cycle_ensemble):
    rho = mix(cycle_ensemble)
    form = detect(rho, TOL)
    assert form is not None
    assert form.residual <= 1e-7
    np.testing.assert_allclose(form.C, np.eye(3) / 3, atol=1e-7)
    assert is_separable_sc(form, TOL) == (True, None)


def test_rejects_noisy_bell_state():
    n = 3
    phi = np.zeros(n * n, dtype=np.complex128)
    phi[np.arange(n) * (n + 1)] = 1 / np.sqrt(n)
    rho = DensityMatrix(n, 0.7 * np.outer(phi, phi.conj()) + 0.3 * np.eye(n * n) / (n * n))
    assert detect(rho, TOL) is None


def test_dense_state_property_check_raises():
    rho = random_density_matrix(2, 2, make_rng(3))
    with pytest.raises(NotSchmidtCorrelated):
        all_ensembles_property_check(rho, trials=1, tol=TOL)


def test_separability_battery_agrees():
    for seed, n, rank, diagonal in _sc_cases(200):
        rho, _ = random_schmidt_correlated(n, rank, seed=seed, diagonal=diagonal)
        form = detect(rho, TOL, seed=seed)
        report = separability_report(rho, form, TOL)
        assert report["agree"], (seed, n, rank, report)
        assert report["separable"] == diagonal
        if report["witness"] is not None:
            j, l = report["witness"]
            c = abs(form.C[j - 1, l - 1])
            assert report["minor"] <= -c ** 2 + 1e-9
            assert report["ppt_min_eigenvalue"] < 0


def test_is_separable_sc_witness_is_largest_entry():
    rho, truth = random_schmidt_correlated(4, 3, seed=21)
    verdict, witness = is_separable_sc(truth, TOL)
    assert not verdict
    j, l = witness
    upper = np.triu(np.abs(truth.C), k=1)
    assert abs(truth.C[j - 1, l - 1]) == upper.max()
    assert pt_principal_minor(rho, truth, j, l) == pytest.approx(-abs(truth.C[j - 1, l - 1]) ** 2, abs=1e-12)


def test_pt_principal_minor_rejects_bad_indices():
    rho, truth = random_schmidt_correlated(3, 2, seed=2)
    with pytest.raises(InvalidInput):
        pt_principal_minor(rho, truth, 1, 1)
    with pytest.raises(InvalidInput):
        pt_principal_minor(rho, truth, 0, 2)


def test_detected_coefficients_match_construction_up_to_gauge():
    for seed in range(5):
        rho, truth = random_schmidt_correlated(4, 4, seed=seed)
        form = detect(rho, TOL, seed=seed)
        np.testing.assert_allclose(
            canonical_coefficients(form.C, TOL), canonical_coefficients(truth.C, TOL), atol=1e-7
        )


def test_reconstruct_round_trip():
    rho, truth = random_schmidt_correlated(5, 3, seed=6)
    assert fro(truth.reconstruct().matrix - rho.matrix) <= 1e-14
    assert np.trace(rho.matrix).real == pytest.approx(1.0)


def test_orthogonality_in_computational_basis():
    a = np.array([0.6, 0.8])
    ens = assumption_ensemble(a, fourier(2).matrix)
    assert orthogonality_check(ens)
    skewed = assumption_ensemble(a, np.array([[1, 1], [1, 1j]]))
    assert not orthogonality_check(skewed)


def _phase_cases(count):
    rng = make_rng(77)
    cases = []
    for i in range(count):
        if i % 4 == 3:
            theta = family_n4(float(rng.uniform(0, np.pi))).matrix
        else:
            theta = fourier(2 + i % 7).matrix
        moduli = rng.random(theta.shape[0]) + 0.1
        cases.append((moduli, np.array(theta), rng))
    return cases


def test_hadamard_phase_matrices_give_separable_states():
    for moduli, theta, _ in _phase_cases(100):
        ens = assumption_ensemble(moduli, theta)
        applicable, verdict, phases = phase_separability(ens)
        assert applicable
        assert verdict
        ppt, min_eig = is_ppt(mix(ens))
        assert ppt and min_eig >= -1e-9


def test_perturbed_phase_gives_entangled_states():
    for moduli, theta, rng in _phase_cases(100):
        n = theta.shape[0]
        j, k = int(rng.integers(0, n)), int(rng.integers(0, n))
        theta = theta.copy()
        theta[j, k] *= np.exp(1j * rng.uniform(0.1, 1.0))
        ens = assumption_ensemble(moduli, theta)
        applicable, verdict, _ = phase_separability(ens)
        ppt, _ = is_ppt(mix(ens))
        assert applicable
        assert verdict is False
        assert not ppt


@pytest.mark.parametrize("scale", [1.0, 1e-2, 1e-4, 1e-5, 1e-6])
def test_phase_verdict_matches_ppt_for_small_moduli(scale):
    # rows 3 and 4 coincide, so theta is not a Hadamard matrix
    theta = np.array([
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, 1, -1, -1],
    ], dtype=np.complex128)
    ens = assumption_ensemble([1.0, 1.0, scale, scale], theta)
    applicable, verdict, _ = phase_separability(ens)
    ppt, _ = is_ppt(mix(ens))
    assert applicable
    assert verdict == ppt
    # only C_34 = scale^2 / (2 + 2 scale^2) is off-diagonal
    assert verdict is (scale <= 1e-5)


def test_phase_criterion_not_applicable_for_unequal_weights():
    base = assumption_ensemble([1.0, 1.0], fourier(2).matrix)
    skewed = Ensemble(probs=[0.25, 0.75], states=base.states)
    assert phase_separability(skewed) == (False, None, None)


def test_phase_decompose_recovers_moduli():
    a = np.array([0.2, 0.5, 0.9])
    ens = assumption_ensemble(a, fourier(3).matrix)
    dec = phase_decompose(ens)
    np.testing.assert_allclose(dec.moduli, a / np.linalg.norm(a), atol=1e-12)
    assert dec.spread <= 1e-12
    np.testing.assert_allclose(np.abs(dec.phases), 1.0)


def test_random_schmidt_correlated_validates_rank():
    with pytest.raises(InvalidInput):
        random_schmidt_correlated(3, 4)
