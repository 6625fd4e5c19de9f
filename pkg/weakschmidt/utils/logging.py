from typing import List, Dict, Any, Optional


def record_analysis_event(
    history: List[Dict[str, Any]],
    op: str,
    payload: Dict[str, Any],
    logger: Optional[Any],
    metadata: Optional[Dict[str, Any]] = None
) -> None:
    """
    Append an analysis step to the local history list and delegate
    to the logger (if provided) with optional metadata.
    """
    event = {"op": op, "payload": payload}
    if metadata:
        event["metadata"] = metadata

    history.append(event)
    if logger:
        logger.log_event(event)
        logger.debug(f"{op}: {payload}")
