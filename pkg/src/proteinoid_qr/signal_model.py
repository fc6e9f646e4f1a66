"""Domain types for voltage traces and the three symbol alphabets.

The alphabets are disjoint by construction: gate codes use only the digits
2, 4 and 6, proteinoid codes only 3, 5 and 7, and light codes are built from
0 and 1.  That is what lets a digit string be split into typed two-digit units
without any context.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import TraceError, TraceFormatError

PROTEINOID_DIGITS = frozenset("357")
GATE_DIGITS = frozenset("246")
LIGHT_CODES = ("01", "10", "11")

#: Boolean input pairs (A, B) presented in each window, in presentation order.
EPOCH_INPUTS = ((0, 0), (0, 1), (1, 0), (1, 1))

DEFAULT_WINDOW_S = 3000.0
BASELINE_PERIOD_S = 3500.0
PHE_BASELINE_PERIOD_S = 2200.0
DEFAULT_BASELINE_MV = 0.2


class ProteinoidKind(enum.Enum):
    GLU_PHE_HIS = "33"
    GLU_PHE = "35"
    PHE_LYS = "37"
    PHE = "55"
    ASP = "57"

    @property
    def code(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class UnknownProteinoid:
    """A proteinoid unit outside the named table, kept verbatim (e.g. ``"77"``)."""

    code: str

    def __post_init__(self):
        if len(self.code) != 2 or not set(self.code) <= PROTEINOID_DIGITS:
            raise TraceError(f"not a proteinoid code: {self.code!r}")
        if self.code in _PROTEINOID_BY_CODE:
            raise TraceError(f"{self.code!r} is a named proteinoid code")

    @property
    def name(self) -> str:
        return f"UNKNOWN_{self.code}"


Proteinoid = Union[ProteinoidKind, UnknownProteinoid]

_PROTEINOID_BY_CODE = {k.value: k for k in ProteinoidKind}


def proteinoid_from_code(code: str) -> Proteinoid:
    """Map a two-digit code to its kind, preserving unnamed codes."""
    try:
        return _PROTEINOID_BY_CODE[code]
    except KeyError:
        return UnknownProteinoid(code)


class GateKind(enum.Enum):
    AND = "42"
    OR = "44"
    NOT = "22"
    XOR = "24"
    NAND = "64"
    XNOR = "66"
    NOR = "62"
    NO_GATE = "26"

    @property
    def code(self) -> str:
        return self.value

    @property
    def truth_row(self) -> tuple[int, int, int, int]:
        """Output bits for inputs 00, 01, 10, 11 (NOT negates input A)."""
        return GATE_TRUTH_ROWS[self]


GATE_TRUTH_ROWS = {
    GateKind.AND: (0, 0, 0, 1),
    GateKind.OR: (0, 1, 1, 1),
    GateKind.XOR: (0, 1, 1, 0),
    GateKind.NAND: (1, 1, 1, 0),
    GateKind.NOR: (1, 0, 0, 0),
    GateKind.XNOR: (1, 0, 0, 1),
    GateKind.NOT: (1, 1, 0, 0),
    GateKind.NO_GATE: (0, 0, 0, 0),
}


class LightCondition(enum.Enum):
    """Pair of lights acting as Boolean inputs A and B (on = 1)."""

    BLACK_AND_BLACK_WHITE = "01"
    WHITE_AND_BLACK = "10"
    BLACK_AND_WHITE = "11"

    @property
    def code(self) -> str:
        return self.value


@dataclass(frozen=True)
class StimulusSchedule:
    window_len_s: float = DEFAULT_WINDOW_S
    light: LightCondition = LightCondition.WHITE_AND_BLACK

    def __post_init__(self):
        if not self.window_len_s > 0:
            raise TraceError("window length must be positive")

    @property
    def epoch_len_s(self) -> float:
        return self.window_len_s / len(EPOCH_INPUTS)

    def epoch_midpoints_s(self) -> list[float]:
        """Offsets of the epoch centres from the start of a window."""
        return [(k + 0.5) * self.epoch_len_s for k in range(len(EPOCH_INPUTS))]


@dataclass(frozen=True)
class SpikeTemplate:
    """Biexponential pulse whose peak value equals ``amplitude_mv``."""

    amplitude_mv: float = 1.0
    rise_s: float = 5.0
    decay_s: float = 20.0

    def __post_init__(self):
        if not (self.amplitude_mv > 0 and self.rise_s > 0 and self.decay_s > self.rise_s):
            raise TraceError("template needs amplitude > 0 and 0 < rise < decay")

    @property
    def time_to_peak_s(self) -> float:
        r, d = self.rise_s, self.decay_s
        return r * d / (d - r) * math.log(d / r)

    @property
    def support_s(self) -> float:
        return 40.0 * self.decay_s

    def waveform(self, t: np.ndarray) -> np.ndarray:
        """Pulse value at times ``t`` measured from onset (zero before onset)."""
        t = np.asarray(t, dtype=float)
        tp = self.time_to_peak_s
        norm = math.exp(-tp / self.decay_s) - math.exp(-tp / self.rise_s)
        tc = np.clip(t, 0.0, None)
        out = (np.exp(-tc / self.decay_s) - np.exp(-tc / self.rise_s)) / norm
        return np.where(t >= 0, self.amplitude_mv * out, 0.0)


@dataclass(frozen=True, eq=False)
class VoltageTrace:
    """Uniformly sampled voltage series; sample i sits at ``t0_s + i / sample_rate_hz``."""

    sample_rate_hz: float
    samples: np.ndarray
    t0_s: float = 0.0

    def __post_init__(self):
        if not self.sample_rate_hz > 0:
            raise TraceError("bad sample rate")
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 1:
            raise TraceError("samples must be one-dimensional")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    def __eq__(self, other):
        if not isinstance(other, VoltageTrace):
            return NotImplemented
        return (
            self.sample_rate_hz == other.sample_rate_hz
            and self.t0_s == other.t0_s
            and np.array_equal(self.samples, other.samples)
        )

    __hash__ = None

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz

    def times(self) -> np.ndarray:
        return self.t0_s + np.arange(self.samples.size) / self.sample_rate_hz

    def slice_samples(self, start: int, stop: int) -> "VoltageTrace":
        return VoltageTrace(
            self.sample_rate_hz,
            self.samples[start:stop],
            self.t0_s + start / self.sample_rate_hz,
        )


@dataclass(frozen=True)
class SpikeTrain:
    spike_times_s: tuple[float, ...]
    source_span_s: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "spike_times_s", tuple(float(t) for t in self.spike_times_s))
        lo, hi = self.source_span_s
        times = self.spike_times_s
        if any(b <= a for a, b in zip(times, times[1:])):
            raise TraceError("spike times must be strictly increasing")
        if times and (times[0] < lo or times[-1] > hi):
            raise TraceError("spike outside the searched span")

    def __len__(self) -> int:
        return len(self.spike_times_s)


def trace_duration_s(trace: VoltageTrace) -> float:
    return trace.duration_s


def baseline_period_s(kind: Proteinoid | None) -> float:
    """Slow oscillation period: 2200 s for L-Phe, 3500 s for everything else."""
    return PHE_BASELINE_PERIOD_S if kind is ProteinoidKind.PHE else BASELINE_PERIOD_S


def synthesize_trace(
    kind: Proteinoid | None,
    schedule: StimulusSchedule,
    gates: Sequence[GateKind],
    template: SpikeTemplate = SpikeTemplate(),
    sample_rate_hz: float = 1.0,
    noise_rms_mv: float = 0.0,
    seed: int = 0,
    *,
    baseline_mv: float = DEFAULT_BASELINE_MV,
    t0_s: float = 0.0,
) -> VoltageTrace:
    """Render a gate program as a voltage trace.

    Window k lasts ``schedule.window_len_s`` and carries one pulse, peaking at
    the epoch midpoint, for every input pair whose output under ``gates[k]``
    is 1.  A sinusoidal baseline of amplitude ``baseline_mv`` and Gaussian
    noise of rms ``noise_rms_mv`` (drawn from ``seed``) are added on top.
    """
    gates = list(gates)
    if not gates:
        raise TraceError("empty program")
    if not sample_rate_hz > 0:
        raise TraceError("bad sample rate")
    if noise_rms_mv < 0:
        raise TraceError("negative noise level")

    n = int(round(len(gates) * schedule.window_len_s * sample_rate_hz))
    t = np.arange(n) / sample_rate_hz
    x = baseline_mv * np.sin(2 * np.pi * t / baseline_period_s(kind))

    onset_shift = template.time_to_peak_s
    support = template.support_s
    for k, gate in enumerate(gates):
        w0 = k * schedule.window_len_s
        for bit, mid in zip(gate.truth_row, schedule.epoch_midpoints_s()):
            if not bit:
                continue
            onset = w0 + mid - onset_shift
            lo = max(0, int(math.ceil(onset * sample_rate_hz)))
            hi = min(n, int(math.ceil((onset + support) * sample_rate_hz)))
            x[lo:hi] += template.waveform(t[lo:hi] - onset)

    if noise_rms_mv > 0:
        x = x + np.random.default_rng(seed).normal(0.0, noise_rms_mv, n)
    return VoltageTrace(sample_rate_hz, x, t0_s)


# -- CSV ---------------------------------------------------------------------

CSV_HEADER = ("time_s", "voltage_mv")
UNIFORM_RTOL = 1e-6


def format_trace_csv(trace: VoltageTrace) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for t, v in zip(trace.times(), trace.samples):
        buf.write(f"{float(t)!r},{float(v)!r}\n")
    return buf.getvalue()


def write_trace_csv(trace: VoltageTrace, path: str | Path) -> None:
    Path(path).write_text(format_trace_csv(trace), encoding="utf-8", newline="\n")


def parse_trace_csv(lines: Iterable[str]) -> VoltageTrace:
    """Read ``time_s,voltage_mv`` rows; the time column fixes the sample rate."""
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise TraceFormatError(f"expected header {','.join(CSV_HEADER)}")
    times, values = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise TraceFormatError(f"line {lineno}: expected 2 columns, got {len(row)}")
        try:
            times.append(float(row[0]))
            values.append(float(row[1]))
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from None
    if len(times) < 2:
        raise TraceFormatError("need at least two samples to infer the sample rate")
    t = np.array(times)
    v = np.array(values)
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
        raise TraceFormatError("non-finite value")
    dt = np.diff(t)
    step = (t[-1] - t[0]) / (len(t) - 1)
    if step <= 0 or np.max(np.abs(dt - step)) > UNIFORM_RTOL * step:
        raise TraceFormatError("time column is not uniformly sampled")
    rate = 1.0 / step
    if rate >= 1 and abs(rate - round(rate)) <= 1e-9 * rate:
        rate = float(round(rate))
    return VoltageTrace(rate, v, float(t[0]))


def read_trace_csv(path: str | Path) -> VoltageTrace:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return parse_trace_csv(fh)
    except (OSError, UnicodeDecodeError) as exc:
        raise TraceFormatError(str(exc)) from None
