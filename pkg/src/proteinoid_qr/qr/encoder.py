"""Payload to module matrix."""

from __future__ import annotations

from typing import Iterable

from ..errors import CapacityError, PayloadError
from .gf256 import rs_parity
from .matrix import QrMatrix, apply_mask, choose_mask, draw_format, function_patterns, place_bits
from .tables import (
    BLOCKS,
    MAX_VERSION,
    MODE_BYTE,
    MODE_NUMERIC,
    EcLevel,
    char_count_bits,
    numeric_bit_length,
)

PAD_BYTES = (0xEC, 0x11)


class BitStream:
    """Append-only bit buffer."""

    def __init__(self):
        self._bits: list[int] = []

    def __len__(self) -> int:
        return len(self._bits)

    def __iter__(self):
        return iter(self._bits)

    def append(self, value: int, width: int) -> None:
        if width < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        self._bits.extend((value >> i) & 1 for i in range(width - 1, -1, -1))

    def to_bytes(self) -> list[int]:
        if len(self._bits) % 8:
            raise ValueError("bit stream is not byte aligned")
        out = []
        for i in range(0, len(self._bits), 8):
            byte = 0
            for b in self._bits[i : i + 8]:
                byte = (byte << 1) | b
            out.append(byte)
        return out


def _check_numeric(digits: str) -> None:
    if not digits or not digits.isascii() or not digits.isdigit():
        raise PayloadError("not numeric")


def append_numeric(stream: BitStream, digits: str, version: int) -> None:
    stream.append(MODE_NUMERIC, 4)
    stream.append(len(digits), char_count_bits(MODE_NUMERIC, version))
    for i in range(0, len(digits), 3):
        group = digits[i : i + 3]
        stream.append(int(group), (0, 4, 7, 10)[len(group)])


def append_bytes(stream: BitStream, data: bytes, version: int) -> None:
    stream.append(MODE_BYTE, 4)
    stream.append(len(data), char_count_bits(MODE_BYTE, version))
    for byte in data:
        stream.append(byte, 8)


def pad_to_codewords(stream: BitStream, data_codewords: int) -> list[int]:
    capacity = data_codewords * 8
    if len(stream) > capacity:
        raise CapacityError("payload too large")
    stream.append(0, min(4, capacity - len(stream)))
    stream.append(0, (-len(stream)) % 8)
    out = stream.to_bytes()
    for i in range(data_codewords - len(out)):
        out.append(PAD_BYTES[i % 2])
    return out


def split_blocks(data: list[int], version: int, level: EcLevel) -> list[list[int]]:
    blocks, pos = [], 0
    for n in BLOCKS[version, level].data_lengths:
        blocks.append(data[pos : pos + n])
        pos += n
    return blocks


def interleave(data: list[int], version: int, level: EcLevel) -> list[int]:
    """Data codewords column-wise across blocks, then the parity codewords likewise."""
    layout = BLOCKS[version, level]
    blocks = split_blocks(data, version, level)
    parity = [rs_parity(b, layout.ec_per_block) for b in blocks]
    out = []
    for i in range(max(len(b) for b in blocks)):
        out.extend(b[i] for b in blocks if i < len(b))
    for i in range(layout.ec_per_block):
        out.extend(p[i] for p in parity)
    return out


def _bits_of(codewords: Iterable[int]) -> list[int]:
    return [(cw >> (7 - k)) & 1 for cw in codewords for k in range(8)]


def build_matrix(data_codewords: list[int], version: int, level: EcLevel, mask_id: int | None = None) -> QrMatrix:
    _, func = function_patterns(version)
    unmasked = place_bits(version, _bits_of(interleave(data_codewords, version, level)))
    if mask_id is None:
        mask_id = choose_mask(unmasked, func, level)
    modules = apply_mask(unmasked, func, mask_id)
    draw_format(modules, level, mask_id)
    modules.flags.writeable = False
    func.flags.writeable = False
    return QrMatrix(version, level, mask_id, modules, func)


def smallest_numeric_version(n_digits: int, level: EcLevel) -> int:
    for version in range(1, MAX_VERSION + 1):
        if numeric_bit_length(n_digits, version) <= BLOCKS[version, level].data_codewords * 8:
            return version
    raise CapacityError("payload too large")


def encode_numeric(
    digits: str, ec_level: EcLevel | str = EcLevel.M, version: int | None = None, mask_id: int | None = None
) -> QrMatrix:
    """Encode a decimal string in numeric mode.

    With ``version=None`` the smallest version that fits is used; ``mask_id``
    overrides penalty-based mask selection.
    """
    _check_numeric(digits)
    level = EcLevel(ec_level)
    if version is None:
        version = smallest_numeric_version(len(digits), level)
    elif not 1 <= version <= MAX_VERSION:
        raise PayloadError(f"unsupported version {version}")
    stream = BitStream()
    append_numeric(stream, digits, version)
    data = pad_to_codewords(stream, BLOCKS[version, level].data_codewords)
    return build_matrix(data, version, level, mask_id)


def encode_bytes(
    data: bytes | str, ec_level: EcLevel | str = EcLevel.M, version: int | None = None, mask_id: int | None = None
) -> QrMatrix:
    """Byte-mode encoding for arbitrary text (UTF-8 for ``str``)."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    if not data:
        raise PayloadError("empty payload")
    level = EcLevel(ec_level)
    versions = range(1, MAX_VERSION + 1) if version is None else [version]
    for v in versions:
        if not 1 <= v <= MAX_VERSION:
            raise PayloadError(f"unsupported version {v}")
        needed = 4 + char_count_bits(MODE_BYTE, v) + 8 * len(data)
        if needed <= BLOCKS[v, level].data_codewords * 8:
            stream = BitStream()
            append_bytes(stream, data, v)
            return build_matrix(pad_to_codewords(stream, BLOCKS[v, level].data_codewords), v, level, mask_id)
    raise CapacityError("payload too large")
