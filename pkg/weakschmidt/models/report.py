from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class AnalysisReport:
    """
    Result of one analyzer command.

    result carries the verdict and witness; residuals carries the numbers
    that justify it, so a consumer can re-verify without rerunning.
    """
    command: str
    result: Dict[str, Any]
    residuals: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "result": self.result,
            "residuals": self.residuals,
        }

    def envelope(self, config: Any) -> Dict[str, Any]:
        """Uniform CLI output {command, config, result, residuals}."""
        payload = self.to_dict()
        payload["config"] = config.to_dict() if hasattr(config, "to_dict") else dict(config)
        return payload

    def __repr__(self):
        return f"AnalysisReport(command={self.command}, keys={sorted(self.result)})"
