"""Encode gate sequences mined from proteinoid voltage recordings as digit
strings and QR symbols, and rebuild canonical traces from them."""

from .errors import CodecError
from .grammar import ByGate, ByLight, ByProteinoid, Schema, infer_schema, message_from_analysis, parse, serialize
from .retrieval import RetrievalParams, reconstruct
from .signal_model import (
    GateKind,
    LightCondition,
    ProteinoidKind,
    SpikeTemplate,
    StimulusSchedule,
    UnknownProteinoid,
    VoltageTrace,
    synthesize_trace,
)
from .spike_gates import DetectionParams, analyze_trace, estimate_period_s

__version__ = "0.1.0"
