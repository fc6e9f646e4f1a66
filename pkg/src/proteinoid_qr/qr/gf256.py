"""GF(2^8) arithmetic and Reed-Solomon coding as used by QR symbols.

Field: reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator 2.
Polynomials are lists of coefficients, highest degree first, matching the
order in which codewords are transmitted.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..errors import UncorrectableError

PRIMITIVE = 0x11D

EXP = [0] * 512
LOG = [0] * 256
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= PRIMITIVE
for _i in range(255, 512):
    EXP[_i] = EXP[_i - 255]
del _x, _i


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a] + LOG[b]]


def div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(256)")
    if a == 0:
        return 0
    return EXP[(LOG[a] - LOG[b]) % 255]


def inverse(a: int) -> int:
    return div(1, a)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] ^= mul(a, b)
    return out


def poly_eval(p: Sequence[int], x: int) -> int:
    y = 0
    for c in p:
        y = mul(y, x) ^ c
    return y


@lru_cache(maxsize=None)
def generator_poly(degree: int) -> tuple[int, ...]:
    """prod_{i < degree} (x - 2^i)."""
    g = [1]
    for i in range(degree):
        g = poly_mul(g, [1, EXP[i]])
    return tuple(g)


def rs_parity(data: Sequence[int], parity_len: int) -> list[int]:
    """Remainder of ``data * x^parity_len`` modulo the generator polynomial."""
    if parity_len < 1:
        raise ValueError("parity_len must be at least 1")
    if not data:
        raise ValueError("data must be non-empty")
    gen = generator_poly(parity_len)
    rem = [0] * parity_len
    for byte in data:
        factor = byte ^ rem[0]
        rem = rem[1:] + [0]
        if factor:
            lf = LOG[factor]
            for j in range(parity_len):
                g = gen[j + 1]
                if g:
                    rem[j] ^= EXP[lf + LOG[g]]
    return rem


def syndromes(codeword: Sequence[int], parity_len: int) -> list[int]:
    return [poly_eval(codeword, EXP[j]) for j in range(parity_len)]


def _berlekamp_massey(synd: Sequence[int]) -> list[int]:
    """Error locator, lowest degree first (locator[0] == 1)."""
    loc, prev = [1], [1]
    length, shift, last_d = 0, 1, 1
    for k, s in enumerate(synd):
        d = s
        for i in range(1, length + 1):
            if i < len(loc):
                d ^= mul(loc[i], synd[k - i])
        if d == 0:
            shift += 1
            continue
        coef = div(d, last_d)
        update = [0] * shift + [mul(coef, c) for c in prev]
        new = loc + [0] * max(0, len(update) - len(loc))
        for i, u in enumerate(update):
            new[i] ^= u
        if 2 * length <= k:
            prev, last_d = loc, d
            length = k + 1 - length
            shift = 1
        else:
            shift += 1
        loc = new
    while len(loc) > 1 and loc[-1] == 0:
        loc.pop()
    if len(loc) - 1 != length:
        raise UncorrectableError("uncorrectable")
    return loc


def _eval_low_first(p: Sequence[int], x: int) -> int:
    y = 0
    for c in reversed(p):
        y = mul(y, x) ^ c
    return y


def rs_correct(codeword: Sequence[int], parity_len: int) -> tuple[list[int], int]:
    """Correct up to ``parity_len // 2`` byte errors.

    Returns the corrected codeword and the number of bytes changed.  Raises
    :class:`UncorrectableError` when the errors cannot be located or the
    corrected word fails the syndrome re-check.
    """
    word = list(codeword)
    n = len(word)
    synd = syndromes(word, parity_len)
    if not any(synd):
        return word, 0
    loc = _berlekamp_massey(synd)
    n_err = len(loc) - 1
    if n_err == 0 or 2 * n_err > parity_len:
        raise UncorrectableError("uncorrectable")

    # Position i carries power n-1-i; it is in error when loc(2^-(n-1-i)) == 0.
    positions = [i for i in range(n) if _eval_low_first(loc, EXP[(255 - (n - 1 - i)) % 255]) == 0]
    if len(positions) != n_err:
        raise UncorrectableError("uncorrectable")

    # Forney with first consecutive root 2^0: e = X * omega(X^-1) / loc'(X^-1).
    omega = [0] * parity_len
    for i, s in enumerate(synd):
        if s:
            for j, l in enumerate(loc):
                if i + j < parity_len:
                    omega[i + j] ^= mul(s, l)
    dloc = [loc[i] if i % 2 == 1 else 0 for i in range(1, len(loc))]
    for i in positions:
        x = EXP[(n - 1 - i) % 255]
        x_inv = inverse(x)
        denom = _eval_low_first(dloc, x_inv)
        if denom == 0:
            raise UncorrectableError("uncorrectable")
        word[i] ^= mul(x, div(_eval_low_first(omega, x_inv), denom))

    if any(syndromes(word, parity_len)):
        raise UncorrectableError("uncorrectable")
    return word, n_err
