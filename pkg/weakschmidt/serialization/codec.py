"""
Encoders and decoders between JSON documents and domain objects.

Complex scalars are [re, im] pairs; vectors and matrices nest them.
Decoders assume the payload already passed utils.schema.validate_document
and raise InputError subclasses for semantic violations.
"""
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from ..bell import BellBasis, BellDecomposition, bell_basis
from ..config import TolLike
from ..errors import InvalidInput
from ..hadamard import EquivalenceWitness, HadamardCandidate, from_angles, hadamard_array, to_angles
from ..numerics import as_matrix
from ..schmidt_correlated import PhaseDecomposition, SchmidtCorrelatedForm
from ..states import DensityMatrix, Ensemble, PureState, SchmidtForm
from ..weak_svd import WeakSVDResult


def encode_complex(z: complex) -> List[float]:
    return [float(np.real(z)), float(np.imag(z))]


def decode_complex(pair: Sequence[float]) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def encode_array(values) -> Any:
    """Nested lists of [re, im] pairs for any-rank complex array."""
    arr = np.asarray(values, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def decode_array(payload, ndim: int) -> np.ndarray:
    arr = np.asarray(payload, dtype=np.float64)
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise InvalidInput(f"expected a rank-{ndim} array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def encode_state(psi: PureState) -> Dict[str, Any]:
    return {"n": psi.dim, "vec": encode_array(psi.amplitudes)}


def decode_state(payload: Dict[str, Any]) -> PureState:
    vec = decode_array(payload["vec"], 1)
    return PureState.from_vector(vec, n=payload.get("n"))


def encode_density(rho: DensityMatrix) -> Dict[str, Any]:
    return {"n": rho.dim, "rho": encode_array(rho.matrix)}


def decode_density(payload: Dict[str, Any], tol: TolLike = None) -> DensityMatrix:
    M = as_matrix(decode_array(payload["rho"], 2), "rho")
    return DensityMatrix.from_array(M, tol, n=payload.get("n"))


def encode_ensemble(ens: Ensemble) -> Dict[str, Any]:
    return {"probs": [float(p) for p in ens.probs], "states": [encode_state(s) for s in ens.states]}


def decode_ensemble(payload: Dict[str, Any]) -> Ensemble:
    states = tuple(decode_state(s) for s in payload["states"])
    return Ensemble(probs=np.asarray(payload["probs"], dtype=np.float64), states=states)


def encode_hadamard(H, angles: bool = False) -> Dict[str, Any]:
    M = hadamard_array(H)
    if angles:
        return {"n": M.shape[0], "theta": to_angles(M).tolist()}
    return {"n": M.shape[0], "H": encode_array(M)}


def decode_hadamard(payload: Dict[str, Any]) -> HadamardCandidate:
    if "theta" in payload:
        candidate = from_angles(payload["theta"])
    else:
        candidate = HadamardCandidate(decode_array(payload["H"], 2))
    n = payload.get("n")
    if n is not None and candidate.n != n:
        raise InvalidInput(f"declared n={n} but the matrix has order {candidate.n}")
    return candidate


def encode_bell_basis(basis: BellBasis, angles: bool = False) -> Dict[str, Any]:
    return {"n": basis.n, "hadamards": [encode_hadamard(H, angles) for H in basis.hadamards]}


def decode_bell_basis(payload: Dict[str, Any], tol: TolLike = None) -> BellBasis:
    mats = [decode_hadamard(h) for h in payload["hadamards"]]
    basis = bell_basis(mats, tol)
    n = payload.get("n")
    if n is not None and basis.n != n:
        raise InvalidInput(f"declared n={n} but the Hadamard matrices have order {basis.n}")
    return basis


def decode_family(payload: Dict[str, Any]) -> Union[Ensemble, List[np.ndarray]]:
    """Either an Ensemble document or {"matrices": [...]}."""
    if "matrices" in payload:
        return [as_matrix(decode_array(m, 2), f"A[{i}]") for i, m in enumerate(payload["matrices"])]
    return decode_ensemble(payload)


def encode_schmidt_form(form: SchmidtForm) -> Dict[str, Any]:
    return {
        "lambda": [float(x) for x in form.coefficients],
        "basis_A": encode_array(form.basis_A),
        "basis_B": encode_array(form.basis_B),
    }


def encode_weak_svd(result: WeakSVDResult) -> Dict[str, Any]:
    return {
        "U": encode_array(result.U),
        "V": encode_array(result.V),
        "diagonals": [encode_array(d) for d in result.diagonals],
    }


def encode_sc_form(form: SchmidtCorrelatedForm) -> Dict[str, Any]:
    return {
        "U": encode_array(form.U),
        "V": encode_array(form.V),
        "C": encode_array(form.C),
    }


def encode_phase_decomposition(dec: PhaseDecomposition) -> Dict[str, Any]:
    return {
        "moduli": [float(a) for a in dec.moduli],
        "phases": encode_array(dec.phases),
        "probs": [float(p) for p in dec.probs],
        "spread": float(dec.spread),
    }


def encode_witness(witness: EquivalenceWitness) -> Dict[str, Any]:
    return {
        "D1": encode_array(np.diag(witness.D1)),
        "P1": [int(i) for i in np.argmax(np.abs(witness.P1), axis=1)],
        "P2": [int(i) for i in np.argmax(np.abs(witness.P2), axis=1)],
        "D2": encode_array(np.diag(witness.D2)),
    }


def encode_bell_decomposition(dec: BellDecomposition) -> Dict[str, Any]:
    return {"n": dec.basis.n, "coefficients": dec.table()}

