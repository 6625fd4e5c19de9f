"""
weakschmidt - weak Schmidt decomposition, Schmidt-correlated states,
complex Hadamard matrices and generalized Bell bases.
"""
from typing import Optional

from .analyzer import SchmidtAnalyzer
from .config import ITolerance, RunConfig, Tolerance, as_tolerance
from .errors import InputError, NumericError, WeakSchmidtError
from .loaders import load_document
from .logging import TraceLogger
from .models.report import AnalysisReport

__all__ = [
    'SchmidtAnalyzer',
    'WeakSchmidt',
    'RunConfig',
    'Tolerance',
    'ITolerance',
    'as_tolerance',
    'TraceLogger',
    'AnalysisReport',
    'load_document',
    'WeakSchmidtError',
    'InputError',
    'NumericError',
]


def WeakSchmidt(
    tol: float = 1e-9,
    seed: int = 0,
    output: str = "json",
    trace: bool = True,
    trace_dir: Optional[str] = None,
    verbose: bool = False,
) -> SchmidtAnalyzer:
    """
    Factory function to create and configure a SchmidtAnalyzer instance.

    Args:
        tol: Relative tolerance for every verdict (> 0).
        seed: Seed of the PCG64 stream used by randomized steps.
        output: 'json' (compact) or 'pretty'.
        trace: Enable/disable analysis tracing.
        trace_dir: Directory where export_traces() writes by default.
        verbose: Echo analysis events to stderr.

    Returns:
        An initialized SchmidtAnalyzer instance.

    Raises:
        ValueError: If the configuration is invalid.
    """
    config = RunConfig(tol=tol, seed=seed, output=output, trace_dir=trace_dir, verbose=verbose)
    logger = TraceLogger(trace_dir=trace_dir, verbose=verbose) if trace else None
    return SchmidtAnalyzer(config=config, logger=logger)
