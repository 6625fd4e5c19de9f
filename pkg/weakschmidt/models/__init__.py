from .report import AnalysisReport

__all__ = ["AnalysisReport"]
