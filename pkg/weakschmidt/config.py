from dataclasses import dataclass
from typing import Any, Dict, Optional, Protocol, Union

SCALE_MODES = ("absolute", "frobenius-relative")
OUTPUT_MODES = ("json", "pretty")
DEFAULT_EPS = 1e-9


class ITolerance(Protocol):
    """
    Interface for the tolerance policy consumed by every numerical predicate.

    A tolerance turns the norms of the operands into an acceptance threshold:
      - eps: absolute floor (always > 0)
      - scale_mode: "absolute" (threshold = eps) or "frobenius-relative"
        (threshold = eps * max(1, product of norms))
    """
    eps: float
    scale_mode: str

    def threshold(self, *norms: float) -> float:
        ...


@dataclass(frozen=True)
class Tolerance:
    """
    Default tolerance policy.

    Example:
        tol = Tolerance(eps=1e-7)
        tol.threshold(np.linalg.norm(M))   # 1e-7 * max(1, ||M||_F)
    """
    eps: float = DEFAULT_EPS
    scale_mode: str = "frobenius-relative"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"Tolerance eps must be > 0, got {self.eps}")
        if self.scale_mode not in SCALE_MODES:
            raise ValueError(f"Unknown scale_mode '{self.scale_mode}'. Available: {', '.join(SCALE_MODES)}")

    def threshold(self, *norms: float) -> float:
        if self.scale_mode == "absolute" or not norms:
            return self.eps
        scale = 1.0
        for norm in norms:
            scale *= float(norm)
        return self.eps * max(1.0, scale)

    def to_dict(self) -> Dict[str, Any]:
        return {"eps": self.eps, "scale_mode": self.scale_mode}


TolLike = Union[None, float, int, Tolerance]


def as_tolerance(tol: TolLike) -> Tolerance:
    """Normalize a call-site tolerance argument (None, a bare float, or a Tolerance)."""
    if tol is None:
        return Tolerance()
    if isinstance(tol, Tolerance):
        return tol
    if isinstance(tol, bool):
        raise TypeError("tol must be a float or Tolerance, not bool")
    if isinstance(tol, (int, float)):
        return Tolerance(eps=float(tol))
    raise TypeError(f"tol must be None, a float or a Tolerance, got {type(tol).__name__}")


@dataclass
class RunConfig:
    """
    Per-run configuration shared by the CLI and the analyzer.

      - tol (float): tolerance floor used for every verdict.
      - seed (int): seed for the PCG64 stream behind every randomized step.
      - output (str): "json" (compact, one line) or "pretty" (indented).
      - trace_dir (Optional[str]): where analysis traces are written; None disables saving.
      - verbose (bool): emit [DEBUG] lines on stderr.

    Example:
        config = RunConfig(tol=1e-7, seed=42, output="pretty")
    """
    tol: float = DEFAULT_EPS
    seed: int = 0
    output: str = "json"
    trace_dir: Optional[str] = None
    verbose: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.output not in OUTPUT_MODES:
            raise ValueError(f"Unknown output mode '{self.output}'. Available: {', '.join(OUTPUT_MODES)}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(eps=self.tol)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to the dict embedded in every CLI envelope.
        trace_dir and verbose are left out so stdout does not depend on them.
        """
        return {"tol": self.tol, "seed": self.seed, "output": self.output}
