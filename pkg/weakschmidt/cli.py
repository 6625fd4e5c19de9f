#!/usr/bin/env python3
"""
weakschmidt Command Line Interface (CLI)

Reads states and matrices from JSON files, runs the analyses and prints one
JSON envelope {command, config, result, residuals} on stdout. Diagnostics go
to stderr. Exit codes: 0 when the analysis ran (the verdict is in the JSON),
2 on input errors, 3 on numeric failures.
"""

import argparse
import sys
from typing import List, Optional

from . import WeakSchmidt
from .analyzer import GENERATE_KINDS, SchmidtAnalyzer
from .errors import InputError, NumericError
from .loaders import load_document
from .models.report import AnalysisReport
from .serialization.helpers import dumps_canonical

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

# Helper functions

def _build_analyzer(args) -> SchmidtAnalyzer:
    """Handles common analyzer creation logic and errors."""
    try:
        return WeakSchmidt(
            tol=args.tol,
            seed=args.seed,
            output=args.output,
            trace=True,
            trace_dir=args.trace_dir,
            verbose=args.verbose,
        )
    except (ValueError, TypeError) as e:
        print(f"[ERROR] Invalid configuration: {e}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _emit(analyzer: SchmidtAnalyzer, report: AnalysisReport) -> None:
    pretty = analyzer.config.output == "pretty"
    print(dumps_canonical(report.envelope(analyzer.config), pretty=pretty))
    if analyzer.config.trace_dir:
        count = analyzer.export_traces()
        if analyzer.logger:
            analyzer.logger.info(f"Saved {count} trace(s) to {analyzer.config.trace_dir}")

# --- Command Functions ---

def schmidt_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    """Schmidt decomposition of a pure state."""
    psi = load_document(args.state_file, "state", analyzer.tol)
    return analyzer.schmidt(psi)


def detect_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    """Schmidt-correlated detection."""
    rho = load_document(args.rho_file, "density", analyzer.tol)
    return analyzer.detect(rho)


def separable_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    rho = load_document(args.rho_file, "density", analyzer.tol)
    return analyzer.separable(rho)


def weak_svd_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    family = load_document(args.family_file, "family", analyzer.tol)
    return analyzer.weak_svd(family)


def hadamard_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    """Dispatches the hadamard actions."""
    if args.action == "verify":
        return analyzer.hadamard_verify(load_document(args.file, "hadamard", analyzer.tol))
    if args.action == "fourier":
        return analyzer.hadamard_fourier(args.n, angles=args.angles)
    if args.action == "family-n4":
        return analyzer.hadamard_family_n4(args.a, angles=args.angles)
    if args.action == "equiv":
        H1 = load_document(args.file1, "hadamard", analyzer.tol)
        H2 = load_document(args.file2, "hadamard", analyzer.tol)
        return analyzer.hadamard_equiv(H1, H2)
    if args.action == "dephase":
        return analyzer.hadamard_dephase(load_document(args.file, "hadamard", analyzer.tol), angles=args.angles)
    print(f"[ERROR] Unknown hadamard action: {args.action}", file=sys.stderr)
    sys.exit(EXIT_INPUT)


def bell_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    """Dispatches the bell actions."""
    if args.action == "gen":
        return analyzer.bell_gen(load_document(args.basis_file, "bell_basis", analyzer.tol))
    if args.action == "weyl":
        return analyzer.bell_weyl(args.n)
    if args.action == "decompose":
        rho = load_document(args.rho_file, "density", analyzer.tol)
        basis = load_document(args.basis_file, "bell_basis", analyzer.tol)
        return analyzer.bell_decompose(rho, basis)
    print(f"[ERROR] Unknown bell action: {args.action}", file=sys.stderr)
    sys.exit(EXIT_INPUT)


def phase_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    ens = load_document(args.ensemble_file, "ensemble", analyzer.tol)
    return analyzer.phase(ens)


def generate_command(args, analyzer: SchmidtAnalyzer) -> AnalysisReport:
    """Seeded state generators; --out also writes the bare density document."""
    report = analyzer.generate(args.kind, args.n, args.rank)
    if args.out:
        try:
            with open(args.out, "w") as f:
                f.write(dumps_canonical(report.result["state"]) + "\n")
        except OSError as e:
            print(f"[ERROR] Could not write {args.out}: {e}", file=sys.stderr)
            sys.exit(EXIT_INPUT)
        print(f"[INFO] Wrote state to {args.out}", file=sys.stderr)
    return report


def _run(args) -> int:
    analyzer = _build_analyzer(args)
    try:
        report = args.func(args, analyzer)
    except (InputError, ValueError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        sys.exit(EXIT_INPUT)
    except NumericError as e:
        print(f"[ERROR] Numeric failure: {e}", file=sys.stderr)
        sys.exit(EXIT_NUMERIC)
    _emit(analyzer, report)
    return EXIT_OK

# --- Argument Parser Setup ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakschmidt",
        description="weakschmidt: weak SVD, Schmidt-correlated states, Hadamard matrices and Bell bases",
        formatter_class=argparse.RawTextHelpFormatter
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run", required=True)

    # --- Common arguments ---
    common_parser = argparse.ArgumentParser(add_help=False)
    common_parser.add_argument("--tol", type=float, default=1e-9, help="Tolerance for every verdict (default: 1e-9)")
    common_parser.add_argument("--seed", type=int, default=0, help="Seed of the PCG64 stream (default: 0)")
    common_parser.add_argument("--output", choices=["json", "pretty"], default="json", help="Output format (default: json)")
    common_parser.add_argument("--trace-dir", help="Directory to store analysis traces (disabled if omitted)")
    common_parser.add_argument("--verbose", "-v", action="store_true", help="Print analysis events on stderr")

    angles_parser = argparse.ArgumentParser(add_help=False)
    angles_parser.add_argument("--angles", action="store_true", help="Emit the Hadamard matrix as phase angles {theta}")

    # --- State commands ---
    schmidt_parser = subparsers.add_parser("schmidt", help="Schmidt decomposition of a pure state", parents=[common_parser])
    schmidt_parser.add_argument("state_file", help="PureState JSON file")
    schmidt_parser.set_defaults(func=schmidt_command)

    detect_parser = subparsers.add_parser("detect", help="Decide whether a density matrix is Schmidt-correlated", parents=[common_parser])
    detect_parser.add_argument("rho_file", help="DensityMatrix JSON file")
    detect_parser.set_defaults(func=detect_command)

    separable_parser = subparsers.add_parser("separable", help="Separability verdict (full battery when Schmidt-correlated)", parents=[common_parser])
    separable_parser.add_argument("rho_file", help="DensityMatrix JSON file")
    separable_parser.set_defaults(func=separable_command)

    weak_svd_parser = subparsers.add_parser("weak-svd", help="Simultaneous weak SVD of a matrix family", parents=[common_parser])
    weak_svd_parser.add_argument("family_file", help="Ensemble JSON file or {\"matrices\": [...]}")
    weak_svd_parser.set_defaults(func=weak_svd_command)

    phase_parser = subparsers.add_parser("phase", help="Separability of a diagonal ensemble through its phase matrix", parents=[common_parser])
    phase_parser.add_argument("ensemble_file", help="Ensemble JSON file")
    phase_parser.set_defaults(func=phase_command)

    # --- Hadamard command ---
    hadamard_parser = subparsers.add_parser("hadamard", help="Complex Hadamard matrices")
    hadamard_subparsers = hadamard_parser.add_subparsers(dest="action", help="Hadamard action", required=True)
    verify_parser = hadamard_subparsers.add_parser("verify", help="Check the Hadamard conditions", parents=[common_parser])
    verify_parser.add_argument("file", help="Hadamard JSON file")
    fourier_parser = hadamard_subparsers.add_parser("fourier", help="Fourier matrix F_n", parents=[common_parser, angles_parser])
    fourier_parser.add_argument("n", type=int, help="Order")
    family_parser = hadamard_subparsers.add_parser("family-n4", help="Order-4 one-parameter family", parents=[common_parser, angles_parser])
    family_parser.add_argument("a", type=float, help="Family parameter (radians)")
    equiv_parser = hadamard_subparsers.add_parser("equiv", help="Decide H1 = D1 P1 H2 P2 D2", parents=[common_parser])
    equiv_parser.add_argument("file1", help="Hadamard JSON file for H1")
    equiv_parser.add_argument("file2", help="Hadamard JSON file for H2")
    dephase_parser = hadamard_subparsers.add_parser("dephase", help="Dephased form with unit first row and column", parents=[common_parser, angles_parser])
    dephase_parser.add_argument("file", help="Hadamard JSON file")
    hadamard_parser.set_defaults(func=hadamard_command)

    # --- Bell command ---
    bell_parser = subparsers.add_parser("bell", help="Generalized Bell bases")
    bell_subparsers = bell_parser.add_subparsers(dest="action", help="Bell action", required=True)
    gen_parser = bell_subparsers.add_parser("gen", help="Basis states from n Hadamard matrices", parents=[common_parser])
    gen_parser.add_argument("basis_file", help="BellBasis JSON file")
    weyl_parser = bell_subparsers.add_parser("weyl", help="Weyl operator basis (all Fourier)", parents=[common_parser])
    weyl_parser.add_argument("n", type=int, help="Local dimension")
    decompose_parser = bell_subparsers.add_parser("decompose", help="Coefficients of a state in a Bell basis", parents=[common_parser])
    decompose_parser.add_argument("rho_file", help="DensityMatrix JSON file")
    decompose_parser.add_argument("basis_file", help="BellBasis JSON file")
    bell_parser.set_defaults(func=bell_command)

    # --- Generate command ---
    generate_parser = subparsers.add_parser("generate", help="Seeded random density matrices", parents=[common_parser])
    generate_parser.add_argument("kind", choices=list(GENERATE_KINDS), help="Generator")
    generate_parser.add_argument("--n", type=int, required=True, help="Local dimension")
    generate_parser.add_argument("--rank", type=int, required=True, help="Rank of the state (of C for schmidt-correlated)")
    generate_parser.add_argument("--out", help="Also write the DensityMatrix document to this file")
    generate_parser.set_defaults(func=generate_command)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entrypoint using argparse."""
    parser = build_parser()
    args = parser.parse_args(argv)
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
