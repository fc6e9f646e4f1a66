"""Version, error-correction and capacity tables for QR versions 1-10."""

from __future__ import annotations

import enum
from dataclasses import dataclass

MAX_VERSION = 10


class EcLevel(str, enum.Enum):
    L = "L"
    M = "M"
    Q = "Q"
    H = "H"

    @property
    def format_bits(self) -> int:
        return _FORMAT_BITS[self]


_FORMAT_BITS = {EcLevel.L: 0b01, EcLevel.M: 0b00, EcLevel.Q: 0b11, EcLevel.H: 0b10}
EC_LEVEL_BY_FORMAT_BITS = {v: k for k, v in _FORMAT_BITS.items()}


@dataclass(frozen=True)
class BlockLayout:
    ec_per_block: int
    groups: tuple[tuple[int, int], ...]  # (block count, data codewords per block)

    @property
    def data_lengths(self) -> list[int]:
        return [n for count, n in self.groups for _ in range(count)]

    @property
    def num_blocks(self) -> int:
        return sum(count for count, _ in self.groups)

    @property
    def data_codewords(self) -> int:
        return sum(count * n for count, n in self.groups)

    @property
    def total_codewords(self) -> int:
        return self.data_codewords + self.num_blocks * self.ec_per_block


def _b(ec: int, *groups: tuple[int, int]) -> BlockLayout:
    return BlockLayout(ec, tuple(groups))


# ISO/IEC 18004 table 9, versions 1-10.
BLOCKS: dict[tuple[int, EcLevel], BlockLayout] = {
    (1, EcLevel.L): _b(7, (1, 19)),
    (1, EcLevel.M): _b(10, (1, 16)),
    (1, EcLevel.Q): _b(13, (1, 13)),
    (1, EcLevel.H): _b(17, (1, 9)),
    (2, EcLevel.L): _b(10, (1, 34)),
    (2, EcLevel.M): _b(16, (1, 28)),
    (2, EcLevel.Q): _b(22, (1, 22)),
    (2, EcLevel.H): _b(28, (1, 16)),
    (3, EcLevel.L): _b(15, (1, 55)),
    (3, EcLevel.M): _b(26, (1, 44)),
    (3, EcLevel.Q): _b(18, (2, 17)),
    (3, EcLevel.H): _b(22, (2, 13)),
    (4, EcLevel.L): _b(20, (1, 80)),
    (4, EcLevel.M): _b(18, (2, 32)),
    (4, EcLevel.Q): _b(26, (2, 24)),
    (4, EcLevel.H): _b(16, (4, 9)),
    (5, EcLevel.L): _b(26, (1, 108)),
    (5, EcLevel.M): _b(24, (2, 43)),
    (5, EcLevel.Q): _b(18, (2, 15), (2, 16)),
    (5, EcLevel.H): _b(22, (2, 11), (2, 12)),
    (6, EcLevel.L): _b(18, (2, 68)),
    (6, EcLevel.M): _b(16, (4, 27)),
    (6, EcLevel.Q): _b(24, (4, 19)),
    (6, EcLevel.H): _b(28, (4, 15)),
    (7, EcLevel.L): _b(20, (2, 78)),
    (7, EcLevel.M): _b(18, (4, 31)),
    (7, EcLevel.Q): _b(18, (2, 14), (4, 15)),
    (7, EcLevel.H): _b(26, (4, 13), (1, 14)),
    (8, EcLevel.L): _b(24, (2, 97)),
    (8, EcLevel.M): _b(22, (2, 38), (2, 39)),
    (8, EcLevel.Q): _b(22, (4, 18), (2, 19)),
    (8, EcLevel.H): _b(26, (4, 14), (2, 15)),
    (9, EcLevel.L): _b(30, (2, 116)),
    (9, EcLevel.M): _b(22, (3, 36), (2, 37)),
    (9, EcLevel.Q): _b(20, (4, 16), (4, 17)),
    (9, EcLevel.H): _b(24, (4, 12), (4, 13)),
    (10, EcLevel.L): _b(18, (2, 68), (2, 69)),
    (10, EcLevel.M): _b(26, (4, 43), (1, 44)),
    (10, EcLevel.Q): _b(24, (6, 19), (2, 20)),
    (10, EcLevel.H): _b(28, (6, 15), (2, 16)),
}

ALIGNMENT_CENTERS = {
    1: (),
    2: (6, 18),
    3: (6, 22),
    4: (6, 26),
    5: (6, 30),
    6: (6, 34),
    7: (6, 22, 38),
    8: (6, 24, 42),
    9: (6, 26, 46),
    10: (6, 28, 50),
}

MODE_NUMERIC = 0b0001
MODE_BYTE = 0b0100
MODE_TERMINATOR = 0b0000


def symbol_size(version: int) -> int:
    return 4 * version + 17


def version_for_size(size: int) -> int | None:
    v, rem = divmod(size - 17, 4)
    return v if rem == 0 and 1 <= v <= MAX_VERSION else None


def char_count_bits(mode: int, version: int) -> int:
    if mode == MODE_NUMERIC:
        return 10 if version <= 9 else 12
    if mode == MODE_BYTE:
        return 8 if version <= 9 else 16
    raise ValueError(f"unsupported mode {mode:#06b}")


def numeric_bit_length(n_digits: int, version: int) -> int:
    q, r = divmod(n_digits, 3)
    return 4 + char_count_bits(MODE_NUMERIC, version) + 10 * q + (0, 4, 7)[r]


def numeric_capacity(version: int, level: EcLevel) -> int:
    """Largest digit count that fits the symbol."""
    bits = BLOCKS[version, level].data_codewords * 8
    n = 0
    while numeric_bit_length(n + 1, version) <= bits:
        n += 1
    return n
