"""Module matrix layout: function patterns, format/version information, data
placement, masking and mask penalty scoring.

Coordinates are ``(row, col)`` with ``(0, 0)`` in the top-left corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .tables import ALIGNMENT_CENTERS, MAX_VERSION, EcLevel, symbol_size

FORMAT_GENERATOR = 0x537
FORMAT_XOR_MASK = 0b101010000010010
VERSION_GENERATOR = 0x1F25


@dataclass(frozen=True, eq=False)
class QrMatrix:
    version: int
    ec_level: EcLevel
    mask_id: int
    modules: np.ndarray  # bool, True = dark
    function_map: np.ndarray  # bool, True = function module

    @property
    def size(self) -> int:
        return self.modules.shape[0]

    def __eq__(self, other):
        if not isinstance(other, QrMatrix):
            return NotImplemented
        return (
            (self.version, self.ec_level, self.mask_id) == (other.version, other.ec_level, other.mask_id)
            and np.array_equal(self.modules, other.modules)
        )

    __hash__ = None


# -- BCH codes -----------------------------------------------------------------


def _bch_remainder(value: int, generator: int, n_bits: int) -> int:
    gen_degree = generator.bit_length() - 1
    rem = value << gen_degree
    for shift in range(n_bits - 1, -1, -1):
        if rem & (1 << (shift + gen_degree)):
            rem ^= generator << shift
    return rem


def format_word(level: EcLevel, mask_id: int) -> int:
    """15-bit format information: BCH(15,5) codeword XOR 101010000010010."""
    data = (level.format_bits << 3) | mask_id
    return ((data << 10) | _bch_remainder(data, FORMAT_GENERATOR, 5)) ^ FORMAT_XOR_MASK


def version_word(version: int) -> int:
    """18-bit version information (versions 7 and up)."""
    return (version << 12) | _bch_remainder(version, VERSION_GENERATOR, 6)


def format_positions(size: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Module coordinates of the two format copies, indexed by bit (0 = LSB)."""
    first = [(i, 8) for i in range(6)] + [(7, 8), (8, 8), (8, 7)] + [(8, 14 - i) for i in range(9, 15)]
    second = [(8, size - 1 - i) for i in range(8)] + [(size - 15 + i, 8) for i in range(8, 15)]
    return first, second


def version_positions(size: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Bottom-left and top-right version blocks, indexed by bit (0 = LSB)."""
    bottom_left = [(size - 11 + i % 3, i // 3) for i in range(18)]
    top_right = [(c, r) for r, c in bottom_left]
    return bottom_left, top_right


# -- function patterns -----------------------------------------------------------


@lru_cache(maxsize=None)
def _template(version: int) -> tuple[np.ndarray, np.ndarray]:
    if not 1 <= version <= MAX_VERSION:
        raise ValueError(f"unsupported version {version}")
    size = symbol_size(version)
    dark = np.zeros((size, size), dtype=bool)
    func = np.zeros((size, size), dtype=bool)

    for i in range(size):
        for r, c in ((6, i), (i, 6)):
            func[r, c] = True
            dark[r, c] = i % 2 == 0

    for r0, c0 in ((0, 0), (0, size - 7), (size - 7, 0)):
        for dr in range(-1, 8):
            for dc in range(-1, 8):
                r, c = r0 + dr, c0 + dc
                if 0 <= r < size and 0 <= c < size:
                    func[r, c] = True
                    ring = max(abs(dr - 3), abs(dc - 3))
                    dark[r, c] = ring != 2 and ring != 4

    centers = ALIGNMENT_CENTERS[version]
    last = len(centers) - 1
    for i, r0 in enumerate(centers):
        for j, c0 in enumerate(centers):
            if (i, j) in ((0, 0), (0, last), (last, 0)):
                continue
            for dr in range(-2, 3):
                for dc in range(-2, 3):
                    func[r0 + dr, c0 + dc] = True
                    dark[r0 + dr, c0 + dc] = max(abs(dr), abs(dc)) != 1

    first, second = format_positions(size)
    for r, c in first + second:
        func[r, c] = True
    func[size - 8, 8] = True
    dark[size - 8, 8] = True

    if version >= 7:
        word = version_word(version)
        for block in version_positions(size):
            for bit, (r, c) in enumerate(block):
                func[r, c] = True
                dark[r, c] = bool((word >> bit) & 1)

    dark.flags.writeable = False
    func.flags.writeable = False
    return dark, func


def function_patterns(version: int) -> tuple[np.ndarray, np.ndarray]:
    """Fixed modules (format area still light) and the function-module map."""
    dark, func = _template(version)
    return dark.copy(), func.copy()


@lru_cache(maxsize=None)
def data_coordinates(version: int) -> tuple[tuple[int, int], ...]:
    """Data modules in zigzag placement order, two columns at a time from the right."""
    _, func = _template(version)
    size = func.shape[0]
    coords = []
    right = size - 1
    while right >= 1:
        if right == 6:
            right = 5
        upward = ((right + 1) & 2) == 0
        for vert in range(size):
            row = size - 1 - vert if upward else vert
            for col in (right, right - 1):
                if not func[row, col]:
                    coords.append((row, col))
        right -= 2
    return tuple(coords)


def place_bits(version: int, bits: list[int]) -> np.ndarray:
    """Fixed patterns plus ``bits`` in placement order; leftover modules stay light."""
    dark, _ = function_patterns(version)
    coords = data_coordinates(version)
    if len(bits) > len(coords):
        raise ValueError("more bits than data modules")
    for (r, c), b in zip(coords, bits):
        dark[r, c] = bool(b)
    return dark


def draw_format(modules: np.ndarray, level: EcLevel, mask_id: int) -> None:
    word = format_word(level, mask_id)
    for block in format_positions(modules.shape[0]):
        for bit, (r, c) in enumerate(block):
            modules[r, c] = bool((word >> bit) & 1)


# -- masking -------------------------------------------------------------------


def mask_pattern(mask_id: int, size: int) -> np.ndarray:
    i, j = np.indices((size, size))
    if mask_id == 0:
        m = (i + j) % 2 == 0
    elif mask_id == 1:
        m = i % 2 == 0
    elif mask_id == 2:
        m = j % 3 == 0
    elif mask_id == 3:
        m = (i + j) % 3 == 0
    elif mask_id == 4:
        m = (i // 2 + j // 3) % 2 == 0
    elif mask_id == 5:
        m = (i * j) % 2 + (i * j) % 3 == 0
    elif mask_id == 6:
        m = ((i * j) % 2 + (i * j) % 3) % 2 == 0
    elif mask_id == 7:
        m = ((i + j) % 2 + (i * j) % 3) % 2 == 0
    else:
        raise ValueError(f"mask id out of range: {mask_id}")
    return m


def apply_mask(modules: np.ndarray, function_map: np.ndarray, mask_id: int) -> np.ndarray:
    """XOR the mask onto data modules only (self-inverse)."""
    flip = mask_pattern(mask_id, modules.shape[0]) & ~function_map
    return modules ^ flip


_FINDER_LIKE = (
    np.array([1, 0, 1, 1, 1, 0, 1, 0, 0, 0, 0], dtype=bool),
    np.array([0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 1], dtype=bool),
)


def _run_penalty(m: np.ndarray) -> int:
    rows, cols = m.shape
    padded = np.full((rows, cols + 1), 2, dtype=np.int8)
    padded[:, :cols] = m
    flat = padded.ravel()
    edges = np.flatnonzero(np.diff(flat) != 0) + 1
    starts = np.concatenate(([0], edges))
    lengths = np.diff(np.concatenate((starts, [flat.size])))
    values = flat[starts]
    runs = lengths[(values != 2) & (lengths >= 5)]
    return int(np.sum(runs - 2))


def _finder_penalty(m: np.ndarray) -> int:
    windows = sliding_window_view(m, 11, axis=1)
    return sum(int(np.all(windows == p, axis=2).sum()) for p in _FINDER_LIKE)


def penalty_breakdown(modules: np.ndarray) -> tuple[int, int, int, int]:
    """Scores for the four rules: runs, 2x2 blocks, finder-like patterns, dark balance."""
    m = modules.astype(bool)
    n1 = _run_penalty(m) + _run_penalty(m.T)
    a = m[:-1, :-1]
    same = (a == m[1:, :-1]) & (a == m[:-1, 1:]) & (a == m[1:, 1:])
    n2 = 3 * int(same.sum())
    n3 = 40 * (_finder_penalty(m) + _finder_penalty(m.T))
    total = m.size
    dark = int(m.sum())
    n4 = 10 * (abs(20 * dark - 10 * total) // total)
    return n1, n2, n3, n4


def penalty(modules: np.ndarray) -> int:
    return sum(penalty_breakdown(modules))


def choose_mask(unmasked: np.ndarray, function_map: np.ndarray, level: EcLevel) -> int:
    """Mask with the lowest penalty; ties go to the lowest id."""
    scores = []
    for mask_id in range(8):
        candidate = apply_mask(unmasked, function_map, mask_id)
        draw_format(candidate, level, mask_id)
        scores.append(penalty(candidate))
    return int(np.argmin(scores))
