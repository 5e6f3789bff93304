"""Uniform random primes from the interval [sigma^(tau-1), sigma^(tau-1) * n/(n-1)].

Everything here runs with a constant number of integer registers: the
sampler draws one candidate at a time and the primality test keeps only the
current power, the base and the modulus.
"""

import math
import random
from dataclasses import dataclass

from .wide_arith import gcd, mod_pow

# candidates sharing a factor with this are rejected before Miller-Rabin
_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_SMALL_PRODUCT = math.prod(_SMALL_PRIMES)


class IntervalExhausted(RuntimeError):
    """Raised when the sampler hits its draw cap without finding a prime."""


class RandomSource:
    """Seedable source of uniform random bits.

    Anything with a ``next_uniform_bits(count)`` method can stand in for it.
    """

    def __init__(self, seed=None):
        self._rng = random.Random(seed)

    def next_uniform_bits(self, count):
        return self._rng.getrandbits(count) if count > 0 else 0


def uniform_int(rng, lo, hi):
    """Uniform integer in [lo, hi], by rejection from the next power of two."""
    if hi < lo:
        raise ValueError("empty range")
    span = hi - lo
    bits = span.bit_length()
    while True:
        r = rng.next_uniform_bits(bits)
        if r <= span:
            return lo + r


def ceil_log(sigma, n):
    """Smallest k with sigma**k >= n, i.e. ceil(log_sigma n) for n >= 1."""
    k = 0
    p = 1
    while p < n:
        p *= sigma
        k += 1
    return k


def min_prime_tau(sigma, n):
    """ceil((12/5) * log_sigma n) + 1, evaluated exactly."""
    # smallest k with sigma**(5k) >= n**12
    k = 0
    target = n ** 12
    p = 1
    step = sigma ** 5
    while p < target:
        p *= step
        k += 1
    return k + 1


@dataclass(frozen=True)
class ZTauInterval:
    lo: int
    hi: int
    sigma: int
    tau: int

    @property
    def size(self):
        return self.hi - self.lo + 1


def z_tau_interval(sigma, tau, n, strict=True):
    """The closed interval [sigma^(tau-1), floor(sigma^(tau-1) * n / (n-1))].

    With ``strict`` the block length must be large enough for the interval
    to provably contain primes; invertibility experiments that only need
    some q from the interval pass ``strict=False``.
    """
    if n < 3:
        raise ValueError("interval needs n >= 3")
    if sigma < 2:
        raise ValueError("sigma must be at least 2")
    if tau < 1:
        raise ValueError("tau must be positive")
    if strict and tau < min_prime_tau(sigma, n):
        raise ValueError("tau=%d below the prime-density bound %d" % (tau, min_prime_tau(sigma, n)))
    lo = sigma ** (tau - 1)
    hi = lo * n // (n - 1)
    return ZTauInterval(lo, hi, sigma, tau)


def rounds_for(n, c=1):
    """Miller-Rabin rounds giving error at most n^-(c+1)."""
    c2 = c + 1
    return max(1, -(-(c2 * max(1, math.ceil(math.log2(max(n, 2))))) // 2))


def _is_witness(b, m):
    """Rabin's compositeness condition W_m(b).

    b is a witness if b^(m-1) != 1 (mod m), or if for some i >= 1 with
    2^i | m-1 the value gcd(b^((m-1)/2^i) - 1, m) is a proper divisor of m.
    """
    d = m - 1
    s = 0
    while not d & 1:
        d >>= 1
        s += 1
    # x runs through b^(d*2^j) = b^((m-1)/2^(s-j)) for j = 0 .. s-1
    x = mod_pow(b, d, m)
    for _ in range(s):
        g = gcd((x - 1) % m, m)
        if 1 < g < m:
            return True
        x = x * x % m
    return x != 1


def miller_rabin(m, k, rng):
    """False if any of k uniform bases in [1, m-1] witnesses that m is composite."""
    m = int(m)
    if m < 2:
        return False
    if m < 4:
        return True
    if not m & 1:
        return False
    for _ in range(k):
        if _is_witness(uniform_int(rng, 1, m - 1), m):
            return False
    return True


def draw_cap(interval):
    size = interval.size
    if size < 1 << 20:
        return 64 * size
    return 64 * interval.tau * bits_for_sigma(interval.sigma) * 64


def bits_for_sigma(sigma):
    return max(1, (sigma - 1).bit_length())


def sample_prime(interval, k, rng):
    """A q in the interval that passed k Miller-Rabin rounds.

    Each prime of the interval is returned with equal probability.
    """
    if interval.size < 1:
        raise IntervalExhausted("empty interval")
    cap = draw_cap(interval)
    for _ in range(cap):
        m = uniform_int(rng, interval.lo, interval.hi)
        if not m & 1:
            continue
        if m <= _SMALL_PRIMES[-1]:
            if m in _SMALL_PRIMES:
                return m
            continue
        if math.gcd(m, _SMALL_PRODUCT) != 1:
            continue
        if miller_rabin(m, k, rng):
            return m
    raise IntervalExhausted(
        "no prime found in [%d, %d] after %d draws" % (interval.lo, interval.hi, cap))
