import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proteinoid_qr.errors import UncorrectableError
from proteinoid_qr.qr.gf256 import EXP, LOG, div, generator_poly, mul, rs_correct, rs_parity, syndromes


def slow_mul(a, b):
    """Carry-less multiply with reduction by 0x11D, no tables."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11D
        b >>= 1
    return r


def slow_pow2(k):
    r = 1
    for _ in range(k):
        r = slow_mul(r, 2)
    return r


def slow_generator(n):
    g = [1]
    for i in range(n):
        root = slow_pow2(i)
        out = [0] * (len(g) + 1)
        for j, c in enumerate(g):
            out[j] ^= c
            out[j + 1] ^= slow_mul(c, root)
        g = out
    return g


def slow_parity(data, n):
    """Schoolbook long division of data * x^n by the generator."""
    g = slow_generator(n)
    work = list(data) + [0] * n
    for i in range(len(data)):
        coef = work[i]
        if coef:
            for j, gj in enumerate(g):
                work[i + j] ^= slow_mul(coef, gj)
    return work[-n:]


def test_tables_match_slow_arithmetic():
    for a in range(256):
        for b in range(0, 256, 7):
            assert mul(a, b) == slow_mul(a, b)
    assert len(set(EXP[:255])) == 255
    assert all(EXP[LOG[x]] == x for x in range(1, 256))


def test_div_inverts_mul():
    for a in range(256):
        for b in range(1, 256, 11):
            assert div(mul(a, b), b) == a


@pytest.mark.parametrize("n", [1, 7, 10, 17, 30])
def test_generator_poly(n):
    assert list(generator_poly(n)) == slow_generator(n)


def test_known_generator_degree_7():
    # alpha exponents of the degree-7 generator: 0, 87, 229, 146, 149, 238, 102, 21
    assert [LOG[c] for c in generator_poly(7)] == [0, 87, 229, 146, 149, 238, 102, 21]


def test_zero_data_zero_parity():
    for n in (1, 5, 13):
        assert rs_parity([0] * 9, n) == [0] * n


def test_single_byte_parity_len_one():
    for byte in range(256):
        assert rs_parity([byte], 1) == [byte]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=60), st.integers(1, 30))
def test_parity_matches_long_division(data, n):
    assert rs_parity(data, n) == slow_parity(data, n)


def test_codeword_has_zero_syndromes():
    rnd = random.Random(3)
    data = [rnd.randrange(256) for _ in range(19)]
    assert not any(syndromes(data + rs_parity(data, 7), 7))


def test_iso_worked_example_parity():
    # "01234567" in version 1-M: data codewords and parity from the ISO 18004 annex
    data = [0x10, 0x20, 0x0C, 0x56, 0x61, 0x80, 0xEC, 0x11, 0xEC, 0x11, 0xEC, 0x11, 0xEC, 0x11, 0xEC, 0x11]
    assert rs_parity(data, 10) == [0xA5, 0x24, 0xD4, 0xC1, 0xED, 0x36, 0xC7, 0x87, 0x2C, 0x55]


def test_corrects_five_errors_in_1000_trials():
    rnd = random.Random(11)
    for _ in range(1000):
        data = [rnd.randrange(256) for _ in range(16)]
        word = data + rs_parity(data, 10)
        bad = list(word)
        for pos in rnd.sample(range(len(word)), rnd.randint(0, 5)):
            bad[pos] ^= rnd.randrange(1, 256)
        fixed, _ = rs_correct(bad, 10)
        assert fixed == word


def test_beyond_capacity_never_silently_wrong():
    rnd = random.Random(12)
    outcomes = {"error": 0, "original": 0}
    for _ in range(1000):
        data = [rnd.randrange(256) for _ in range(16)]
        word = data + rs_parity(data, 10)
        bad = list(word)
        for pos in rnd.sample(range(len(word)), 6):
            bad[pos] ^= rnd.randrange(1, 256)
        try:
            fixed, _ = rs_correct(bad, 10)
        except UncorrectableError:
            outcomes["error"] += 1
            continue
        # any accepted result must be a genuine codeword
        assert not any(syndromes(fixed, 10))
        assert fixed == word
        outcomes["original"] += 1
    assert outcomes["error"] > 990
