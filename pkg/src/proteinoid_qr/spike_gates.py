"""Analog-side analysis: period estimation, windowing, spike detection and
classification of each window's response into a two-input gate."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.ndimage import uniform_filter1d

from .errors import InsufficientDataError
from .signal_model import (
    EPOCH_INPUTS,
    GATE_TRUTH_ROWS,
    GateKind,
    SpikeTrain,
    StimulusSchedule,
    VoltageTrace,
)

TruthRow = tuple[int, int, int, int]

_GATE_BY_ROW: dict[TruthRow, GateKind] = {
    row: gate for gate, row in GATE_TRUTH_ROWS.items() if gate is not GateKind.NO_GATE
}
# NOT is a one-input gate; negating B is just as much a NOT as negating A.
_GATE_BY_ROW[(1, 0, 1, 0)] = GateKind.NOT

# Normal-consistent scale factor for the median absolute deviation.
_MAD_TO_SIGMA = 1.4826


@dataclass(frozen=True)
class DetectionParams:
    """Spike detection settings.

    The threshold is ``max(mean + threshold_sigma * std, median + noise_sigma * mad_sigma)``
    over the (detrended) window.  The first term follows the spikes, the second
    keeps Gaussian noise from crossing it when a window holds few or no spikes.
    """

    threshold_sigma: float = 2.0
    refractory_s: float = 60.0
    detrend: bool = True
    noise_sigma: float = 5.0

    def __post_init__(self):
        if not self.threshold_sigma > 0:
            raise ValueError("threshold_sigma must be positive")
        if self.refractory_s < 0:
            raise ValueError("refractory_s must be non-negative")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


@dataclass(frozen=True)
class WindowAnalysis:
    window_index: int
    truth_row: TruthRow
    gate: GateKind
    spike_counts: tuple[int, int, int, int]

    def to_json(self) -> dict:
        return {
            "index": self.window_index,
            "truth_row": "".join(map(str, self.truth_row)),
            "gate": self.gate.code,
            "spike_counts": list(self.spike_counts),
        }


def truth_table_to_gate(row: Sequence[int]) -> GateKind:
    """Total map from a 4-bit output row to a gate; unnamed rows are NO_GATE."""
    return _GATE_BY_ROW.get(tuple(int(b) for b in row), GateKind.NO_GATE)


def all_truth_rows() -> list[TruthRow]:
    return list(itertools.product((0, 1), repeat=len(EPOCH_INPUTS)))


def estimate_period_s(trace: VoltageTrace) -> float:
    x = trace.samples
    if x.size < 16:
        raise InsufficientDataError("insufficient samples")
    x = x - x.mean()
    spectrum = np.abs(np.fft.rfft(x))
    spectrum[0] = 0.0
    k = int(np.argmax(spectrum))
    if k == 0 or spectrum[k] <= 1e-12 * max(1.0, float(np.abs(trace.samples).max())) * x.size:
        raise InsufficientDataError("no oscillation")
    freq = k * trace.sample_rate_hz / x.size
    return 1.0 / freq


def segment_windows(trace: VoltageTrace, window_len_s: float) -> list[VoltageTrace]:
    """Contiguous full windows from the start of the trace; a partial tail is dropped."""
    if not window_len_s > 0:
        raise ValueError("window length must be positive")
    count = int(math.floor(trace.duration_s / window_len_s + 1e-9))
    fs = trace.sample_rate_hz
    bounds = [int(round(k * window_len_s * fs)) for k in range(count + 1)]
    return [trace.slice_samples(a, b) for a, b in zip(bounds, bounds[1:])]


def moving_average_detrend(samples: np.ndarray, width: int) -> np.ndarray:
    width = max(1, int(width))
    return samples - uniform_filter1d(samples, size=width, mode="nearest")


def detection_threshold(x: np.ndarray, params: DetectionParams) -> float:
    spread = x.mean() + params.threshold_sigma * x.std()
    median = np.median(x)
    mad = np.median(np.abs(x - median)) * _MAD_TO_SIGMA
    return float(max(spread, median + params.noise_sigma * mad))


def _find_spike_indices(x: np.ndarray, params: DetectionParams, fs: float) -> list[int]:
    if x.size < 3:
        return []
    thr = detection_threshold(x, params)
    interior = x[1:-1]
    is_peak = (interior > x[:-2]) & (interior >= x[2:]) & (interior > thr)
    candidates = np.flatnonzero(is_peak) + 1
    accepted: list[int] = []
    min_gap = params.refractory_s * fs
    for i in candidates:
        if not accepted or i - accepted[-1] >= min_gap - 1e-9:
            accepted.append(int(i))
    return accepted


def detect_spikes(
    span: VoltageTrace, params: DetectionParams = DetectionParams(), *, detrend_width_s: float | None = None
) -> SpikeTrain:
    """Threshold-crossing local maxima separated by at least the refractory period.

    Detrending subtracts a centred moving average whose width defaults to a
    tenth of the span.
    """
    fs = span.sample_rate_hz
    x = span.samples
    if params.detrend and x.size:
        width_s = span.duration_s / 10 if detrend_width_s is None else detrend_width_s
        x = moving_average_detrend(x, round(width_s * fs))
    idx = _find_spike_indices(x, params, fs)
    end = span.t0_s + span.duration_s
    return SpikeTrain(tuple(span.t0_s + i / fs for i in idx), (span.t0_s, end))


def classify_gate(
    spikes: SpikeTrain, schedule: StimulusSchedule, window_index: int = 0
) -> WindowAnalysis:
    """An epoch reads as 1 when at least one spike falls inside it."""
    start = spikes.source_span_s[0]
    epoch = schedule.epoch_len_s
    n_epochs = len(EPOCH_INPUTS)
    counts = [0] * n_epochs
    for t in spikes.spike_times_s:
        k = int((t - start) // epoch)
        counts[min(max(k, 0), n_epochs - 1)] += 1
    row = tuple(int(c > 0) for c in counts)
    return WindowAnalysis(window_index, row, truth_table_to_gate(row), tuple(counts))


def analyze_trace(
    trace: VoltageTrace,
    schedule: StimulusSchedule = StimulusSchedule(),
    params: DetectionParams = DetectionParams(),
) -> list[WindowAnalysis]:
    """Segment, detect and classify every full window of ``trace``.

    The moving-average baseline is removed over the whole trace before it is
    cut into windows so that window edges carry no filter artefacts.
    """
    if params.detrend and len(trace):
        width = round(schedule.window_len_s / 10 * trace.sample_rate_hz)
        trace = VoltageTrace(
            trace.sample_rate_hz, moving_average_detrend(trace.samples, width), trace.t0_s
        )
        params = replace(params, detrend=False)
    return [
        classify_gate(detect_spikes(span, params), schedule, k)
        for k, span in enumerate(segment_windows(trace, schedule.window_len_s))
    ]
