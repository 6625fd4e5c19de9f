"""
Schmidt Analyzer
================

:class:`SchmidtAnalyzer` is the coordination layer between the command line
and the numerical modules. Every command:

1. runs the relevant analysis with the tolerance and seed from its
   :class:`~weakschmidt.config.RunConfig`;
2. records one structured event per step (spectral rank, criterion
   residuals, construction residual, verdict) through
   :func:`~weakschmidt.utils.logging.record_analysis_event`;
3. closes the command with a complete trace on the
   :class:`~weakschmidt.logging.TraceLogger`;
4. returns an :class:`~weakschmidt.models.report.AnalysisReport` whose
   residuals justify the verdict.

Typical Usage
-------------
>>> from weakschmidt import WeakSchmidt
>>> analyzer = WeakSchmidt(tol=1e-9, seed=0)
>>> report = analyzer.hadamard_fourier(3)
>>> report.result["hadamard"]
True
"""
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .bell import (
    BellBasis,
    decompose,
    gram_residual,
    max_entanglement_residual,
    weyl_basis,
)
from .config import RunConfig
from .errors import InvalidInput
from .hadamard import dephase_witness, equivalent, family_n4, fourier, hadamard_array, is_hadamard
from .logging import TraceLogger
from .models.report import AnalysisReport
from .numerics import dagger, fro, make_rng
from .schmidt_correlated import (
    cross_outcome_mass,
    detect,
    detect_spectral,
    phase_decompose,
    phase_separability,
    random_schmidt_correlated,
    separability_report,
)
from .serialization import codec
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    is_ppt,
    mix,
    random_density_matrix,
    schmidt_decompose,
    spectral_ensemble,
)
from .utils.logging import record_analysis_event
from .weak_svd import as_family, check_strong, diagonalize, strong_violation, weak_violation

GENERATE_KINDS = ("schmidt-correlated", "dense")


def _hadamard_residuals(H) -> Dict[str, float]:
    M = hadamard_array(H)
    n = M.shape[0]
    return {
        "unitarity": fro(M @ dagger(M) - n * np.eye(n)),
        "modulus": float(np.max(np.abs(np.abs(M) - 1.0))),
    }


class SchmidtAnalyzer:
    """
    Runs the analyses behind each CLI command and returns reports.

    Typically instantiated via the `WeakSchmidt()` factory.
    """
    def __init__(self, config: Optional[RunConfig] = None, logger: Optional[TraceLogger] = None):
        self.config = config or RunConfig()
        self.logger = logger
        self._history: List[Dict[str, Any]] = []
        self._last_report: Optional[AnalysisReport] = None

    @property
    def tol(self):
        return self.config.tolerance

    def _record(self, op: str, **payload):
        record_analysis_event(self._history, op, payload, self.logger)

    def _finish(self, report: AnalysisReport) -> AnalysisReport:
        if self.logger:
            self.logger.log_complete_trace({
                "command": report.command,
                "config": self.config.to_dict(),
                "residuals": report.residuals,
            })
        self._last_report = report
        return report

    def get_last_report(self) -> Optional[AnalysisReport]:
        return self._last_report

    def get_history(self) -> List[Dict[str, Any]]:
        return list(self._history)

    def export_traces(self, filepath: Optional[str] = None) -> int:
        """Persist accumulated traces; returns the number written (0 without a logger)."""
        if not self.logger:
            return 0
        return self.logger.save_all_traces(filepath)

    # --- states -------------------------------------------------------------

    def schmidt(self, psi: PureState) -> AnalysisReport:
        form = schmidt_decompose(psi, self.tol)
        res = fro(form.reconstruct().amplitudes - psi.amplitudes)
        rank = form.schmidt_rank(self.tol)
        self._record("schmidt_decompose", schmidt_rank=rank, reconstruction=res)
        result = codec.encode_schmidt_form(form)
        result["schmidt_rank"] = rank
        return self._finish(AnalysisReport("schmidt", result, {"reconstruction": res}))

    def detect(self, rho: DensityMatrix) -> AnalysisReport:
        ens = spectral_ensemble(rho, self.tol)
        self._record("spectral_ensemble", rank=len(ens), n=rho.dim)
        form, violation = detect_spectral(rho, ens, self.tol, self.config.seed)
        self._record("weak_criterion", residual=violation)
        residuals = {"weak_criterion": violation}
        if form is None:
            self._record("verdict", schmidt_correlated=False)
            result = {"schmidt_correlated": False, "rank": len(ens), "U": None, "V": None, "C": None}
            return self._finish(AnalysisReport("detect", result, residuals))
        residuals["reconstruction"] = form.residual
        residuals["cross_outcome_mass"] = cross_outcome_mass(rho, form)
        self._record("verdict", schmidt_correlated=True, reconstruction=form.residual)
        result = {"schmidt_correlated": True, "rank": len(ens), **codec.encode_sc_form(form)}
        return self._finish(AnalysisReport("detect", result, residuals))

    def separable(self, rho: DensityMatrix) -> AnalysisReport:
        form = detect(rho, self.tol, self.config.seed)
        if form is None:
            ppt, min_eig = is_ppt(rho, self.tol)
            self._record("ppt", ppt=ppt, min_eigenvalue=min_eig)
            result = {
                "schmidt_correlated": False,
                "separable": False if not ppt else None,
                "ppt": ppt,
                "necessary_condition_only": True,
            }
            return self._finish(AnalysisReport("separable", result, {"ppt_min_eigenvalue": min_eig}))

        battery = separability_report(rho, form, self.tol)
        self._record("separability_battery", **battery)
        result = {
            "schmidt_correlated": True,
            "separable": battery["separable"],
            "witness": battery["witness"],
            "off_diagonal_C": battery["off_diagonal_C"],
            "ppt": battery["ppt"],
            "orthogonality": battery["orthogonality"],
            "agree": battery["agree"],
            "necessary_condition_only": False,
            **codec.encode_sc_form(form),
        }
        residuals = {
            "reconstruction": form.residual,
            "max_offdiag_C": battery["max_offdiag_C"],
            "ppt_min_eigenvalue": battery["ppt_min_eigenvalue"],
        }
        if battery["minor"] is not None:
            residuals["minor"] = battery["minor"]
        return self._finish(AnalysisReport("separable", result, residuals))

    # --- weak SVD -----------------------------------------------------------

    def weak_svd(self, items: Union[Ensemble, List[np.ndarray]]) -> AnalysisReport:
        family = as_family(items)
        strong = strong_violation(family)
        weak = weak_violation(family)
        self._record("criteria", strong=strong, weak=weak, size=len(family))
        residuals = {"strong_criterion": strong, "weak_criterion": weak}
        if weak > self.tol.eps:
            result = {"diagonalizable": False, "strong": check_strong(family, self.tol)}
            return self._finish(AnalysisReport("weak-svd", result, residuals))
        witness = diagonalize(family, self.tol, self.config.seed)
        self._record("construction", residual=witness.residual)
        residuals["construction"] = witness.residual
        result = {
            "diagonalizable": True,
            "strong": strong <= self.tol.eps,
            **codec.encode_weak_svd(witness),
        }
        return self._finish(AnalysisReport("weak-svd", result, residuals))

    # --- Hadamard -----------------------------------------------------------

    def hadamard_verify(self, H) -> AnalysisReport:
        verdict = is_hadamard(H, self.tol)
        residuals = _hadamard_residuals(H)
        self._record("is_hadamard", verdict=verdict, **residuals)
        result = {"hadamard": verdict, "n": hadamard_array(H).shape[0]}
        return self._finish(AnalysisReport("hadamard verify", result, residuals))

    def _emit_hadamard(self, command: str, H, angles: bool) -> AnalysisReport:
        residuals = _hadamard_residuals(H)
        self._record("construct", command=command, **residuals)
        result = {"hadamard": is_hadamard(H, self.tol), "matrix": codec.encode_hadamard(H, angles)}
        return self._finish(AnalysisReport(command, result, residuals))

    def hadamard_fourier(self, n: int, angles: bool = False) -> AnalysisReport:
        return self._emit_hadamard("hadamard fourier", fourier(n), angles)

    def hadamard_family_n4(self, a: float, angles: bool = False) -> AnalysisReport:
        return self._emit_hadamard("hadamard family-n4", family_n4(a), angles)

    def hadamard_equiv(self, H1, H2) -> AnalysisReport:
        outcome = equivalent(H1, H2, self.tol)
        self._record("equivalence", status=outcome.status.value, residual=outcome.residual)
        result = {
            "status": outcome.status.value,
            "witness": codec.encode_witness(outcome.witness) if outcome.witness else None,
        }
        residuals = {"witness": outcome.residual} if outcome.residual is not None else {}
        return self._finish(AnalysisReport("hadamard equiv", result, residuals))

    def hadamard_dephase(self, H, angles: bool = False) -> AnalysisReport:
        K, witness = dephase_witness(H, self.tol)
        res = witness.residual(K, H)
        self._record("dephase", residual=res)
        result = {"matrix": codec.encode_hadamard(K, angles), "witness": codec.encode_witness(witness)}
        return self._finish(AnalysisReport("hadamard dephase", result, {"witness": res}))

    # --- Bell bases ---------------------------------------------------------

    def _emit_basis(self, command: str, basis: BellBasis) -> AnalysisReport:
        gram = gram_residual(basis)
        entanglement = max(max_entanglement_residual(s) for s in basis.states)
        self._record("bell_basis", n=basis.n, gram=gram, max_entanglement=entanglement)
        states = []
        for s in range(1, basis.n + 1):
            for l in range(1, basis.n + 1):
                states.append({"shift": s, "phase": l, **codec.encode_state(basis.state(s, l))})
        result = {"n": basis.n, "states": states}
        return self._finish(AnalysisReport(command, result, {"gram": gram, "max_entanglement": entanglement}))

    def bell_gen(self, basis: BellBasis) -> AnalysisReport:
        return self._emit_basis("bell gen", basis)

    def bell_weyl(self, n: int) -> AnalysisReport:
        return self._emit_basis("bell weyl", weyl_basis(n))

    def bell_decompose(self, rho: DensityMatrix, basis: BellBasis) -> AnalysisReport:
        dec = decompose(rho, basis)
        res = fro(dec.reconstruct().matrix - rho.matrix)
        self._record("bell_decompose", n=basis.n, reconstruction=res)
        return self._finish(AnalysisReport("bell decompose", codec.encode_bell_decomposition(dec), {"reconstruction": res}))

    # --- phase criterion ----------------------------------------------------

    def phase(self, ens: Ensemble) -> AnalysisReport:
        applicable, verdict, _ = phase_separability(ens, self.tol)
        dec = phase_decompose(ens, self.tol)
        ppt, min_eig = is_ppt(mix(ens), self.tol)
        self._record("phase_criterion", applicable=applicable, verdict=verdict, ppt=ppt)
        result = {
            "applicable": applicable,
            "separable": verdict,
            "ppt": ppt,
            "agree": None if verdict is None else verdict == ppt,
            **codec.encode_phase_decomposition(dec),
        }
        residuals = {"ppt_min_eigenvalue": min_eig, "modulus_spread": dec.spread}
        return self._finish(AnalysisReport("phase", result, residuals))

    # --- generators ---------------------------------------------------------

    def generate(self, kind: str, n: int, rank: int) -> AnalysisReport:
        if kind not in GENERATE_KINDS:
            raise InvalidInput(f"unknown generator '{kind}', expected one of {GENERATE_KINDS}")
        if n < 1 or not 1 <= rank <= (n if kind == "schmidt-correlated" else n * n):
            raise InvalidInput(f"invalid generator sizes n={n}, rank={rank}")
        if kind == "schmidt-correlated":
            rho, _ = random_schmidt_correlated(n, rank, self.config.seed)
        else:
            rho = random_density_matrix(n, rank, make_rng(self.config.seed))
        self._record("generate", kind=kind, n=n, rank=rank)
        trace = float(np.real(np.trace(rho.matrix)))
        return self._finish(AnalysisReport(f"generate {kind}", {"state": codec.encode_density(rho)}, {"trace": abs(trace - 1.0)}))
