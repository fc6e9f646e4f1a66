"""Clean module matrix back to payload.

The input is an axis-aligned bitmap with one element per module, such as a
PBM file; locating a symbol in a photograph is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DecodeError, FormatInfoError, UncorrectableError, UnsupportedModeError
from .gf256 import rs_correct
from .matrix import (
    QrMatrix,
    apply_mask,
    data_coordinates,
    format_positions,
    format_word,
    function_patterns,
)
from .tables import (
    BLOCKS,
    EC_LEVEL_BY_FORMAT_BITS,
    MODE_BYTE,
    MODE_NUMERIC,
    MODE_TERMINATOR,
    EcLevel,
    char_count_bits,
    version_for_size,
)

MAX_FORMAT_ERRORS = 3

_FORMAT_TABLE = [(format_word(level, mask), level, mask) for level in EcLevel for mask in range(8)]


@dataclass(frozen=True)
class DecodeResult:
    version: int
    ec_level: EcLevel
    mask_id: int
    segments: tuple[tuple[int, bytes | str], ...]
    corrected_codewords: int

    @property
    def text(self) -> str:
        return "".join(p if isinstance(p, str) else p.decode("utf-8", "replace") for _, p in self.segments)


def strip_quiet_zone(bitmap: np.ndarray) -> np.ndarray:
    """Crop to the bounding box of dark modules."""
    m = np.asarray(bitmap).astype(bool)
    if m.ndim != 2 or not m.any():
        raise DecodeError("no symbol found")
    rows = np.flatnonzero(m.any(axis=1))
    cols = np.flatnonzero(m.any(axis=0))
    return m[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1]


def read_format(modules: np.ndarray) -> tuple[EcLevel, int]:
    """Nearest valid format word over both copies, within 3 bit errors."""
    words = []
    for block in format_positions(modules.shape[0]):
        words.append(sum(int(modules[r, c]) << bit for bit, (r, c) in enumerate(block)))
    best = min(
        (bin(w ^ cand).count("1"), level, mask)
        for w in words
        for cand, level, mask in _FORMAT_TABLE
    )
    if best[0] > MAX_FORMAT_ERRORS:
        raise FormatInfoError("bad format information")
    return best[1], best[2]


def read_codewords(unmasked: np.ndarray, version: int, n_codewords: int) -> list[int]:
    coords = data_coordinates(version)
    out = []
    for i in range(n_codewords):
        byte = 0
        for r, c in coords[8 * i : 8 * i + 8]:
            byte = (byte << 1) | int(unmasked[r, c])
        out.append(byte)
    return out


def deinterleave(codewords: list[int], version: int, level: EcLevel) -> list[list[int]]:
    """Split the interleaved sequence back into per-block (data + parity) codewords."""
    layout = BLOCKS[version, level]
    lengths = layout.data_lengths
    blocks: list[list[int]] = [[] for _ in lengths]
    pos = 0
    for i in range(max(lengths)):
        for b, n in enumerate(lengths):
            if i < n:
                blocks[b].append(codewords[pos])
                pos += 1
    for _ in range(layout.ec_per_block):
        for b in range(len(lengths)):
            blocks[b].append(codewords[pos])
            pos += 1
    return blocks


class _BitReader:
    def __init__(self, data: list[int]):
        self.bits = [(b >> (7 - k)) & 1 for b in data for k in range(8)]
        self.pos = 0

    def remaining(self) -> int:
        return len(self.bits) - self.pos

    def read(self, width: int) -> int:
        if width > self.remaining():
            raise DecodeError("truncated bit stream")
        value = 0
        for b in self.bits[self.pos : self.pos + width]:
            value = (value << 1) | b
        self.pos += width
        return value


def parse_segments(data: list[int], version: int) -> list[tuple[int, bytes | str]]:
    reader = _BitReader(data)
    segments: list[tuple[int, bytes | str]] = []
    while reader.remaining() >= 4:
        mode = reader.read(4)
        if mode == MODE_TERMINATOR:
            break
        if mode == MODE_NUMERIC:
            count = reader.read(char_count_bits(MODE_NUMERIC, version))
            digits = []
            for start in range(0, count, 3):
                n = min(3, count - start)
                value = reader.read((0, 4, 7, 10)[n])
                if value >= 10**n:
                    raise DecodeError("invalid numeric group")
                digits.append(str(value).zfill(n))
            segments.append((mode, "".join(digits)))
        elif mode == MODE_BYTE:
            count = reader.read(char_count_bits(MODE_BYTE, version))
            segments.append((mode, bytes(reader.read(8) for _ in range(count))))
        else:
            raise UnsupportedModeError("unsupported mode")
    return segments


def decode(bitmap: np.ndarray | QrMatrix) -> DecodeResult:
    if isinstance(bitmap, QrMatrix):
        bitmap = bitmap.modules
    modules = strip_quiet_zone(bitmap)
    size = modules.shape[0]
    version = version_for_size(size) if modules.shape[1] == size else None
    if version is None:
        raise FormatInfoError("bad format information")

    level, mask_id = read_format(modules)
    _, func = function_patterns(version)
    layout = BLOCKS[version, level]
    unmasked = apply_mask(modules, func, mask_id)
    blocks = deinterleave(read_codewords(unmasked, version, layout.total_codewords), version, level)

    data: list[int] = []
    corrected = 0
    for block in blocks:
        fixed, n_err = rs_correct(block, layout.ec_per_block)
        corrected += n_err
        data.extend(fixed[: len(block) - layout.ec_per_block])
    try:
        segments = parse_segments(data, version)
    except UnsupportedModeError:
        raise
    except DecodeError as exc:
        raise UncorrectableError(f"uncorrectable: {exc}") from None
    return DecodeResult(version, level, mask_id, tuple(segments), corrected)


def decode_matrix(bitmap: np.ndarray | QrMatrix) -> str:
    """Digit payload of a numeric-mode symbol."""
    result = decode(bitmap)
    if not result.segments or any(mode != MODE_NUMERIC for mode, _ in result.segments):
        raise UnsupportedModeError("unsupported mode")
    return "".join(p for _, p in result.segments)


def decode_text(bitmap: np.ndarray | QrMatrix) -> str:
    return decode(bitmap).text
