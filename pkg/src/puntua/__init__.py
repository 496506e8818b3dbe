"""Hybrid acoustic/lexical punctuation restoration for Spanish ASR transcripts."""

from puntua.align import EditScript, align_tokens, transfer_marks
from puntua.consolidate import ConsolidationOutcome, Source, consolidate_sequence, consolidate_token
from puntua.errors import (
    ConfigurationError,
    EndpointError,
    ParseError,
    PuntuaError,
    StructuralError,
    ValidationError,
)
from puntua.labels import (
    AcousticPrediction,
    MarkLabel,
    Thresholds,
    TokenPrediction,
    Utterance,
    attach_marks,
    strip_marks,
)
from puntua.metrics import (
    EvalReport,
    MarkConfusion,
    check_reliability,
    compute_wer,
    score_marks,
    summarize_latency,
)
from puntua.pipeline import Mode, evaluate, restore_utterance
from puntua.repair import PairScanResult, apply_heuristics, pair_scan
from puntua.tuning import GridSpec, Objective, tune_thresholds

__version__ = "0.1.0"

__all__ = [
    "AcousticPrediction",
    "ConfigurationError",
    "ConsolidationOutcome",
    "EditScript",
    "EndpointError",
    "EvalReport",
    "GridSpec",
    "MarkConfusion",
    "MarkLabel",
    "Mode",
    "Objective",
    "PairScanResult",
    "ParseError",
    "PuntuaError",
    "Source",
    "StructuralError",
    "Thresholds",
    "TokenPrediction",
    "Utterance",
    "ValidationError",
    "align_tokens",
    "apply_heuristics",
    "attach_marks",
    "check_reliability",
    "compute_wer",
    "consolidate_sequence",
    "consolidate_token",
    "evaluate",
    "pair_scan",
    "restore_utterance",
    "score_marks",
    "strip_marks",
    "summarize_latency",
    "transfer_marks",
    "tune_thresholds",
]
