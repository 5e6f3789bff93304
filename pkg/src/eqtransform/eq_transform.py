"""In-place eq-transform of a packed string.

Block b of the transform (0-based, tau symbols) holds, from the most
significant digit down:

    digit 0        B_b div q        (B_b = original block b as an integer)
    digits 1..tau-1  P_{b+1} = (S[0 .. (b+1)*tau - 1] + seed) mod q

which is only lossless when every such P fits in tau-1 digits.  Given two
neighbouring blocks the original block comes back as
B = D*q + ((y - seed) - (x - seed) * sigma^tau mod q), so any block, any
prefix fingerprint and therefore any substring fingerprint can be read off
a constant number of blocks.
"""

from dataclasses import dataclass, field

from ._bits import read_bits, write_bits
from .packed_string import PackedString
from .prime_gen import (RandomSource, ceil_log, min_prime_tau, rounds_for, sample_prime,
                        uniform_int, z_tau_interval)
from .wide_arith import capacity_bits

# consecutive invertibility failures tolerated before the block length grows
RETRY_LIMIT = 64

ATTACHED = object()


class NotInvertible(Exception):
    """The chosen (q, seed) leaves some prefix fingerprint with tau digits.

    The string has already been restored when this is raised.
    """


@dataclass
class TransformParams:
    sigma: int
    n: int
    tau: int
    q: int
    seed: int
    c_prime: int = 2
    exact: bool = False

    def validate(self):
        if self.sigma < 2:
            raise ValueError("sigma must be at least 2")
        if self.tau < 2:
            raise ValueError("tau must be at least 2")
        if not self.sigma ** (self.tau - 1) <= self.q < self.sigma ** self.tau:
            raise ValueError("q must have exactly tau base-sigma digits")
        if not 0 <= self.seed < self.q:
            raise ValueError("seed must lie in [0, q)")
        if 2 * self.q.bit_length() > capacity_bits(self.sigma, self.tau):
            raise ValueError("q too wide for the transform's word size")


@dataclass
class PowerTable:
    """sigma^(2^i) mod q for i = 0..floor(log2 n) and sigma^l mod q for l = 0..tau."""

    q: int
    pow2: list = field(default_factory=list)
    small: list = field(default_factory=list)

    def sigma_pow(self, length):
        if length < len(self.small):
            return self.small[length]
        r = 1
        i = 0
        q = self.q
        while length:
            if length & 1:
                r = r * self.pow2[i] % q
            length >>= 1
            i += 1
        return r


def choose_tau(sigma, n, c_prime=2):
    """Default block length (9 + c') * ceil(log_sigma n), kept above the prime-density bound."""
    return max((9 + c_prime) * ceil_log(sigma, n), min_prime_tau(sigma, n), 2)


def param_length(n):
    # the interval n/(n-1) is undefined below 3; tiny strings borrow n = 3
    return max(n, 3)


def build_power_table(params):
    q, sigma = params.q, params.sigma
    pow2 = [sigma % q]
    for _ in range(max(params.n, 1).bit_length() - 1):
        pow2.append(pow2[-1] * pow2[-1] % q)
    small = [1 % q]
    for _ in range(params.tau):
        small.append(small[-1] * sigma % q)
    return PowerTable(q, pow2, small)


class EqTransform:
    """A packed string currently holding the transform of some text S.

    Queries answer questions about S.  ``block_reads`` counts transform
    blocks touched, for locality checks.
    """

    def __init__(self, params, data, powers=None):
        self.params = params
        self.data = data
        self.powers = powers
        self.block_reads = 0
        self.attempts = 1
        self._sigma = params.sigma
        self._tau = params.tau
        self._q = params.q
        self._seed = params.seed
        self._top = params.sigma ** (params.tau - 1)
        self._shift = pow(params.sigma, params.tau, params.q)
        self.n = params.n
        self.nblocks = -(-params.n // params.tau)
        self._span = params.tau * data.bits_per_symbol
        self._span_mask = (1 << self._span) - 1
        self._value = data._codec.value
        self._sigma_pows = [params.sigma ** k for k in range(2 * params.tau + 1)]

    def __repr__(self):
        p = self.params
        return "EqTransform(sigma=%d, n=%d, tau=%d, q=%d, exact=%s)" % (p.sigma, p.n, p.tau, p.q, p.exact)

    # -- block level -------------------------------------------------------

    def _restore(self, d, x, y):
        q, seed = self._q, self._seed
        return d * q + ((y - seed) - (x - seed) * self._shift) % q

    def _pair(self, b):
        """(P stored in block b-1 or the seed, D of block b, P of block b)."""
        tau = self._tau
        if b == 0:
            self.block_reads += 1
            d, y = divmod(self.data.get_block(0, tau), self._top)
            return self._seed, d, y
        self.block_reads += 2
        prev, cur = self.data.get_blocks(b - 1, 2, tau)
        d, y = divmod(cur, self._top)
        return prev % self._top, d, y

    def extract_block(self, b):
        """Original block b of S, read from transform blocks b-1 and b."""
        if not 0 <= b < self.nblocks:
            raise IndexError("block %d out of range [0, %d)" % (b, self.nblocks))
        x, d, y = self._pair(b)
        return self._restore(d, x, y)

    def access(self, i):
        if not 0 <= i < self.n:
            raise IndexError("position %d out of range [0, %d)" % (i, self.n))
        b, r = divmod(i, self._tau)
        return self.extract_block(b) // self._sigma ** (self._tau - 1 - r) % self._sigma

    def window(self, i, length):
        """S[i .. i+length-1] as a base-sigma integer, for 1 <= length <= tau."""
        tau = self._tau
        if not 1 <= length <= tau or i < 0 or i + length > self.n:
            raise IndexError("window [%d, %d) out of range" % (i, i + length))
        b, r = divmod(i, tau)
        count = (i + length - 1) // tau - b + 1
        top, span, mask, value = self._top, self._span, self._span_mask, self._value
        q, seed, shift = self._q, self._seed, self._shift
        if b == 0:
            raw = read_bits(self.data.data, 0, count * span)
            prev = seed
        else:
            raw = read_bits(self.data.data, (b - 1) * span, (count + 1) * span)
            prev = value(raw & mask, tau) % top
            raw >>= span
        self.block_reads += count + (b > 0)
        pw = self._sigma_pows
        v = 0
        for _ in range(count):
            d, y = divmod(value(raw & mask, tau), top)
            v = v * pw[tau] + d * q + ((y - seed) - (prev - seed) * shift) % q
            prev = y
            raw >>= span
        return v // pw[count * tau - r - length] % pw[length]

    # -- fingerprints ------------------------------------------------------

    def _pow(self, length, powers):
        if powers is ATTACHED:
            powers = self.powers
        if powers is not None:
            return powers.sigma_pow(length)
        # slow mode: square sigma once per bit of the length
        q = self._q
        r = 1
        sq = self._sigma % q
        while length:
            if length & 1:
                r = r * sq % q
            length >>= 1
            if length:
                sq = sq * sq % q
        return r

    def prefix_fp(self, j, powers=ATTACHED):
        """Karp-Rabin fingerprint of S[0 .. j-1]."""
        if not 0 <= j <= self.n:
            raise IndexError("prefix end %d out of range [0, %d]" % (j, self.n))
        if powers is ATTACHED:
            powers = self.powers
        return self._prefix(j, powers)

    def _prefix(self, j, powers):
        # hot path: one raw read covering blocks b-1 and b, no range checks
        if j == 0:
            return 0
        q, seed, tau, top = self._q, self._seed, self._tau, self._top
        b, ell = divmod(j, tau)
        span = self._span
        value = self._value
        if ell == 0:
            self.block_reads += 1
            return (value(read_bits(self.data.data, (b - 1) * span, span), tau) % top - seed) % q
        if b == 0:
            self.block_reads += 1
            x = seed
            cur = value(read_bits(self.data.data, 0, span), tau)
        else:
            self.block_reads += 2
            raw = read_bits(self.data.data, (b - 1) * span, 2 * span)
            x = value(raw & self._span_mask, tau) % top
            cur = value(raw >> span, tau)
        d, y = divmod(cur, top)
        p = (d * q + ((y - seed) - (x - seed) * self._shift) % q) // self._sigma ** (tau - ell)
        return ((x - seed) * self._pow(ell, powers) + p) % q

    def substring_fp(self, i, length, powers=ATTACHED):
        if i < 0 or length < 0 or i + length > self.n:
            raise IndexError("substring [%d, %d) out of range" % (i, i + length))
        if length == 0:
            return 0
        if powers is ATTACHED:
            powers = self.powers
        hi = self._prefix(i + length, powers)
        lo = self._prefix(i, powers)
        return (hi - lo * self._pow(length, powers)) % self._q

    def pow2_pair(self, i, length, powers=ATTACHED):
        """Fingerprints of the longest power-of-two prefix and suffix of S[i .. i+length-1]."""
        if length < 1:
            raise ValueError("pow2_pair needs a non-empty substring")
        if i < 0 or i + length > self.n:
            raise IndexError("substring [%d, %d) out of range" % (i, i + length))
        ell = 1 << (length.bit_length() - 1)
        head = self.substring_fp(i, ell, powers)
        if ell == length:
            return head, head
        return head, self.substring_fp(i + length - ell, ell, powers)

    def substring_eq(self, i, j, length, powers=ATTACHED):
        if length < 0 or i < 0 or j < 0 or i + length > self.n or j + length > self.n:
            raise IndexError("substring query out of range")
        if length == 0:
            return True
        return self.pow2_pair(i, length, powers) == self.pow2_pair(j, length, powers)

    def lce(self, i, j, powers=ATTACHED):
        """Length of the longest common prefix of the suffixes at i and j."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError("suffix out of range")
        if i == j:
            return n - i
        if powers is ATTACHED:
            powers = self.powers
        limit = n - max(i, j)
        # Only power-of-two lengths are ever compared, so an exact transform
        # gives exact answers.  Double while the first 2^k symbols agree,
        # then extend the agreed prefix by halving steps.
        q = self._q
        prefix = self._prefix
        pi, pj = prefix(i, powers), prefix(j, powers)
        sq = self._sigma % q
        k, ln = 0, 1
        while ln <= limit:
            if (prefix(i + ln, powers) - pi * sq) % q != (prefix(j + ln, powers) - pj * sq) % q:
                break
            k, ln, sq = k + 1, ln << 1, sq * sq % q
        if k == 0:
            return 0
        lo = ln >> 1
        pi, pj = prefix(i + lo, powers), prefix(j + lo, powers)
        for e in range(k - 2, -1, -1):
            step = 1 << e
            if lo + step > limit:
                continue
            sp = self._pow(step, powers)
            xi, xj = prefix(i + lo + step, powers), prefix(j + lo + step, powers)
            if (xi - pi * sp) % q == (xj - pj * sp) % q:
                lo += step
                pi, pj = xi, xj
        return lo

def _undo(s, params, upto):
    """Invert blocks upto-1 .. 0 of a partially built transform."""
    tau, q, seed = params.tau, params.q, params.seed
    top = params.sigma ** (tau - 1)
    shift = pow(params.sigma, tau, q)
    span = tau * s.bits_per_symbol
    buf = s.data
    value, bits = s._codec.value, s._codec.bits
    if upto > 0:
        cur = value(read_bits(buf, (upto - 1) * span, span), tau)
    for b in range(upto - 1, -1, -1):
        d, y = divmod(cur, top)
        if b:
            cur = value(read_bits(buf, (b - 1) * span, span), tau)
            x = cur % top
        else:
            x = seed
        write_bits(buf, b * span, span, bits(d * q + ((y - seed) - (x - seed) * shift) % q, tau))


def build_in_place(s, params, powers=None):
    """Overwrite s with its eq-transform under params.

    Raises NotInvertible (with s restored) if some prefix fingerprint needs
    all tau digits.
    """
    params.validate()
    if s.sigma != params.sigma or s.n != params.n:
        raise ValueError("string does not match the transform parameters")
    tau, q, seed = params.tau, params.q, params.seed
    top = params.sigma ** (tau - 1)
    shift = pow(params.sigma, tau, q)
    s.reserve_padding(tau)
    nblocks = s.padded_length // tau
    span = tau * s.bits_per_symbol
    buf = s.data
    value, bits = s._codec.value, s._codec.bits
    p = seed
    for b in range(nblocks):
        block = value(read_bits(buf, b * span, span), tau)
        p = ((p - seed) * shift + block + seed) % q
        if p >= top:
            _undo(s, params, b)
            s.release_padding()
            raise NotInvertible("prefix fingerprint of block %d has tau digits" % b)
        write_bits(buf, b * span, span, bits((block // q) * top + p, tau))
    return EqTransform(params, s, powers)


def invert_in_place(t):
    """Turn the transform back into the original string; returns the string."""
    s = t.data
    _undo(s, t.params, s.padded_length // t.params.tau)
    s.release_padding()
    return s


def build(s, c=1, rng=None, tau=None, c_prime=None, with_powers=False):
    """Sample (q, seed) and build until the transform is invertible.

    Both q and the seed are redrawn after every failure; after RETRY_LIMIT
    consecutive failures tau grows by ceil(log_sigma n).  An explicit tau
    below the prime-density bound is accepted; the sampler then raises
    IntervalExhausted if the interval holds no prime.
    """
    if s.n < 1:
        raise ValueError("cannot transform an empty string")
    if rng is None:
        rng = RandomSource()
    if c_prime is None:
        c_prime = c + 1
    n_par = param_length(s.n)
    strict = tau is None
    if strict:
        tau = choose_tau(s.sigma, n_par, c_prime)
    grow = max(1, ceil_log(s.sigma, n_par))
    rounds = rounds_for(n_par, c_prime - 1)
    attempts = 0
    failures = 0
    while True:
        interval = z_tau_interval(s.sigma, tau, n_par, strict)
        q = sample_prime(interval, rounds, rng)
        seed = uniform_int(rng, 0, q - 1)
        params = TransformParams(s.sigma, s.n, tau, q, seed, c_prime)
        attempts += 1
        try:
            t = build_in_place(s, params)
        except NotInvertible:
            failures += 1
            if failures >= RETRY_LIMIT:
                tau += grow
                failures = 0
            continue
        if with_powers:
            t.powers = build_power_table(params)
        t.attempts = attempts
        return t


def transform(symbols, sigma, **kw):
    """Convenience: pack a symbol sequence and build its transform."""
    return build(PackedString.from_symbols(symbols, sigma), **kw)

