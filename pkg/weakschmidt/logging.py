from typing import Dict, Any, List, Optional
import datetime
import json
import os
import sys
import uuid

from .serialization.helpers import json_serializer_default


class TraceLogger:
    """
    Logger for structured analysis events and per-command traces.

    Events (spectral rank, criterion residuals, construction residuals,
    verdicts) accumulate until a command finishes; log_complete_trace then
    folds them into one trace stamped with a timestamp and the run id.
    Nothing here writes to stdout, so command output stays byte-stable.
    """
    def __init__(self, trace_dir: Optional[str] = None, verbose: bool = False):
        self.events: List[Dict[str, Any]] = []
        self.complete_traces: List[Dict[str, Any]] = []
        self.trace_dir = str(trace_dir) if trace_dir is not None else None
        self.verbose = verbose
        self.run_id = uuid.uuid4().hex

    def log_event(self, event: Dict[str, Any]):
        """
        Append a structured event to the internal events list.
        These events are aggregated into the next complete trace.
        """
        self.events.append(event)

    def debug(self, message: str, **kwargs):
        """Print a debug line to stderr when verbose."""
        if self.verbose:
            print(f"[DEBUG] {message}", file=sys.stderr)

    def info(self, message: str, **kwargs):
        print(f"[INFO] {message}", file=sys.stderr)

    def warning(self, message: str, **kwargs):
        print(f"[WARN] {message}", file=sys.stderr)

    def error(self, message: str, **kwargs):
        print(f"[ERROR] {message}", file=sys.stderr)

    def log_complete_trace(self, trace_data: Dict[str, Any]):
        """
        Log a complete analysis trace.
        The trace_data dictionary is augmented with a timestamp, the run id and
        any accumulated events, then stored.

        Args:
            trace_data: Dictionary containing the primary trace information.
        """
        trace_with_meta = {
            "timestamp": datetime.datetime.now().isoformat(),
            "run_id": self.run_id,
            **trace_data,
        }
        if self.events:
            trace_with_meta["events"] = self.events.copy()
            self.events.clear()
        self.complete_traces.append(trace_with_meta)

    def get_current_traces(self) -> List[Dict[str, Any]]:
        """
        Get a copy of all accumulated traces from the current session.

        Returns:
            List[Dict[str, Any]]: A list of trace dictionaries.
        """
        return self.complete_traces.copy()

    def save_all_traces(self, filepath: Optional[str] = None) -> int:
        """
        Save all accumulated traces to a file.
        Defaults to a timestamped .jsonl file in trace_dir.

        Args:
            filepath: Optional path to save the traces. If None, a default is used.

        Returns:
            Number of traces written.
        """
        if not self.complete_traces:
            self.debug("No analysis traces to save.")
            return 0

        if filepath is None:
            if self.trace_dir is None:
                raise ValueError("No trace_dir configured and no filepath given.")
            os.makedirs(self.trace_dir, exist_ok=True)
            timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
            filepath = os.path.join(self.trace_dir, f"traces_{timestamp}.jsonl")

        abs_filepath = os.path.abspath(filepath)
        os.makedirs(os.path.dirname(abs_filepath), exist_ok=True)

        is_jsonl = filepath.endswith(".jsonl")
        mode = "a" if is_jsonl else "w"  # Append for .jsonl, overwrite for .json

        with open(abs_filepath, mode) as f:
            if is_jsonl:
                for trace in self.complete_traces:
                    f.write(json.dumps(trace, default=json_serializer_default) + "\n")
            else:
                json.dump(self.complete_traces, f, indent=2, default=json_serializer_default)

        self.debug(f"Saved {len(self.complete_traces)} analysis traces to {abs_filepath}")
        return len(self.complete_traces)
