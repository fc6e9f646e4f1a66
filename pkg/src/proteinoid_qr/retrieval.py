"""Rebuild canonical voltage traces from a decoded message.

Only the discretised content survives encoding, so the rebuilt waveform is the
canonical synthetic rendering of each gate sequence rather than the original
recording.  Re-analysing it yields the same gates exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import GrammarError
from .grammar import ByGate, ByLight, Message
from .signal_model import (
    DEFAULT_BASELINE_MV,
    DEFAULT_WINDOW_S,
    GateKind,
    LightCondition,
    Proteinoid,
    SpikeTemplate,
    StimulusSchedule,
    VoltageTrace,
    synthesize_trace,
    write_trace_csv,
)

TraceKey = tuple[LightCondition | None, Proteinoid | None]


@dataclass(frozen=True)
class RetrievalParams:
    template: SpikeTemplate = field(default_factory=SpikeTemplate)
    sample_rate_hz: float = 1.0
    window_len_s: float = DEFAULT_WINDOW_S
    baseline: bool = True

    def __post_init__(self):
        if not (self.sample_rate_hz > 0 and self.window_len_s > 0):
            raise ValueError("sample rate and window length must be positive")


def gate_sequences(message: Message) -> dict[TraceKey, list[GateKind]]:
    """Gate sequence per (light, proteinoid); repeated keys are joined in block order."""
    if isinstance(message, ByGate):
        raise GrammarError("schema carries no reconstructable sequence")
    out: dict[TraceKey, list[GateKind]] = {}
    for block in message.blocks:
        if isinstance(message, ByLight):
            key = (message.light, block.proteinoid)
        else:
            key = (block.light, message.proteinoid)
        out.setdefault(key, []).extend(block.gates)
    return out


def reconstruct(message: Message, params: RetrievalParams = RetrievalParams()) -> dict[TraceKey, VoltageTrace]:
    """One noiseless trace per (light, proteinoid), windows glued end to end."""
    traces = {}
    for (light, proteinoid), gates in gate_sequences(message).items():
        schedule = StimulusSchedule(params.window_len_s, light or StimulusSchedule().light)
        traces[light, proteinoid] = synthesize_trace(
            proteinoid,
            schedule,
            gates,
            params.template,
            params.sample_rate_hz,
            noise_rms_mv=0.0,
            baseline_mv=DEFAULT_BASELINE_MV if params.baseline else 0.0,
        )
    return traces


def trace_filename(message: Message, key: TraceKey) -> str:
    light, proteinoid = key

    def code(x):
        return "none" if x is None else x.code

    return f"{message.schema.value}_{code(message.subject)}_{code(light)}_{code(proteinoid)}.csv"


def write_reconstruction(message: Message, out_dir: str | Path, params: RetrievalParams = RetrievalParams()) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for key, trace in reconstruct(message, params).items():
        path = out_dir / trace_filename(message, key)
        write_trace_csv(trace, path)
        written.append(path)
    return written
