import random

import pytest
from hypothesis import given, strategies as st

from eqtransform.packed_string import PackedString, bits_per_symbol
from oracles import horner

SIGMAS = (2, 3, 4, 5, 16, 26, 200, 256, 1000)


@st.composite
def strings(draw):
    sigma = draw(st.sampled_from(SIGMAS))
    sy = draw(st.lists(st.integers(0, sigma - 1), max_size=200))
    return sy, sigma


@given(strings())
def test_symbols_roundtrip(case):
    sy, sigma = case
    s = PackedString.from_symbols(sy, sigma)
    assert s.to_symbols() == sy
    assert [s[i] for i in range(len(sy))] == sy
    assert len(s.data) == (len(sy) * bits_per_symbol(sigma) + 7) // 8


@given(strings(), st.integers(1, 40))
def test_blocks_are_base_sigma_values(case, tau):
    sy, sigma = case
    s = PackedString.from_symbols(sy, sigma)
    s.reserve_padding(tau)
    padded = sy + [0] * s.pad
    blocks = len(padded) // tau
    for b in range(blocks):
        assert s.get_block(b, tau) == horner(padded[b * tau:(b + 1) * tau], sigma)
    if blocks:
        assert s.get_blocks(0, blocks, tau) == [s.get_block(b, tau) for b in range(blocks)]


def test_set_block_and_release_padding():
    rng = random.Random(3)
    for sigma in SIGMAS:
        for tau in (1, 2, 3, 7, 16, 33):
            sy = [rng.randrange(sigma) for _ in range(50)]
            s = PackedString.from_symbols(sy, sigma)
            s.reserve_padding(tau)
            for b in range(s.padded_length // tau):
                v = rng.randrange(sigma ** tau)
                s.set_block(b, tau, v)
                assert s.get_block(b, tau) == v
            s.release_padding()
            assert s.padded_length == 50


def test_errors():
    s = PackedString.from_symbols([1, 2, 3], 4)
    with pytest.raises(IndexError):
        s.get(3)
    with pytest.raises(ValueError):
        s.set(0, 4)
    with pytest.raises(ValueError):
        s.set_block(0, 2, 16)
    with pytest.raises(IndexError):
        s.get_block(2, 2)
    with pytest.raises(ValueError):
        PackedString(1, 5)
    with pytest.raises(ValueError):
        PackedString.from_bytes(b"\x05", 4)


def test_from_bytes_and_text():
    raw = bytes(range(256))
    s = PackedString.from_bytes(raw, 256)
    assert s.to_text_bytes() == raw
    s4 = PackedString.from_bytes(b"\x00\x03\x01", 4)
    assert s4.to_symbols() == [0, 3, 1]
    assert s4.to_text_bytes() == b"\x00\x03\x01"


def test_packed_bytes_excludes_padding():
    s = PackedString.from_symbols([1] * 5, 2)
    before = s.packed_bytes()
    s.reserve_padding(4)
    assert s.packed_bytes() == before
    assert len(s.packed_bytes(with_padding=True)) == 1
