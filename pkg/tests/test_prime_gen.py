from collections import Counter

import pytest

from eqtransform.prime_gen import (IntervalExhausted, RandomSource, ZTauInterval, ceil_log,
                                   min_prime_tau, miller_rabin, rounds_for, sample_prime,
                                   uniform_int, z_tau_interval)
from oracles import is_prime

def test_z_tau_interval_worked_example():
    iv = z_tau_interval(4, 4, 8, strict=False)
    assert (iv.lo, iv.hi) == (64, 73)
    assert [m for m in range(iv.lo, iv.hi + 1) if is_prime(m)] == [67, 71, 73]

def test_strict_interval_bound():
    tau = min_prime_tau(2, 1000)
    z_tau_interval(2, tau, 1000)
    with pytest.raises(ValueError):
        z_tau_interval(2, tau - 1, 1000)
    with pytest.raises(ValueError):
        z_tau_interval(2, 10, 2)

def test_ceil_log():
    assert ceil_log(2, 1) == 0
    assert ceil_log(2, 1024) == 10
    assert ceil_log(2, 1025) == 11
    assert ceil_log(10, 1000) == 3

def test_miller_rabin_against_trial_division():
    rng = RandomSource(1)
    for m in range(1, 5000):
        assert miller_rabin(m, 20, rng) == is_prime(m), m

def test_carmichael_numbers_rejected():
    rng = RandomSource(2)
    for m in (561, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265):
        assert not miller_rabin(m, rounds_for(10 ** 4), rng)

def test_sampler_returns_primes():
    rng = RandomSource(3)
    for sigma, tau, n in ((2, 30, 100), (4, 12, 50), (26, 6, 20), (256, 3, 40)):
        iv = z_tau_interval(sigma, tau, n, strict=False)
        for _ in range(20):
            q = sample_prime(iv, rounds_for(n), rng)
            assert iv.lo <= q <= iv.hi and is_prime(q)

def test_sampler_exhaustion():
    with pytest.raises(IntervalExhausted):
        sample_prime(ZTauInterval(24, 28, 5, 3), 4, RandomSource(4))

def test_sampler_uniform_on_small_interval():
    rng = RandomSource(5)
    iv = z_tau_interval(4, 4, 8, strict=False)
    counts = Counter(sample_prime(iv, 10, rng) for _ in range(1500))
    assert set(counts) == {67, 71, 73}
    for v in counts.values():
        assert abs(v / 1500 - 1 / 3) < 0.06

def test_uniform_int_range():
    rng = RandomSource(6)
    vals = [uniform_int(rng, 3, 9) for _ in range(2000)]
    assert min(vals) == 3 and max(vals) == 9
    with pytest.raises(ValueError):
        uniform_int(rng, 5, 4)

def test_rounds_for():
    assert rounds_for(10 ** 4, 1) == 14
    assert rounds_for(2, 1) == 1

def test_random_source_is_deterministic():
    a, b = RandomSource(9), RandomSource(9)
    assert [a.next_uniform_bits(70) for _ in range(5)] == [b.next_uniform_bits(70) for _ in range(5)]
