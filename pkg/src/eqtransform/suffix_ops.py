"""Suffix sorting, LCP arrays and suffix selection on top of LCE queries.

Everything works in place on PositionArray entries plus O(1) words.  The
fast LCE path needs a table of sigma^(2^i) mod q; it is stored in bits freed
by compressing a sorted slice of the very array being processed.
"""

from ._inplace import heapsort, merge_in_place
from .derandomize import build_exact
from .eq_transform import build_in_place, invert_in_place, TransformParams
from .positions import PositionArray
from .prime_gen import RandomSource, uniform_int


def log2_ceil(n):
    return max(1, (n - 1).bit_length())


# -- comparison ------------------------------------------------------------

def _head(t, i):
    """(i, value, length) of the first min(tau, n-i) symbols of suffix i."""
    length = min(t.params.tau, t.n - i)
    return i, t.window(i, length), length


def _cmp_heads(t, a, b, powers=None):
    i, wi, li = a
    j, wj, lj = b
    if i == j:
        return 0
    span = min(li, lj)
    sigma = t.params.sigma
    if li > span:
        wi //= sigma ** (li - span)
    if lj > span:
        wj //= sigma ** (lj - span)
    if wi != wj:
        return -1 if wi < wj else 1
    if span == li < t.params.tau:
        return -1
    if span == lj < t.params.tau:
        return 1
    # the heads agree on a full block length: fall back to an LCE query
    n = t.n
    ell = t.lce(i, j, powers)
    if i + ell == n:
        return -1
    if j + ell == n:
        return 1
    x, y = t.access(i + ell), t.access(j + ell)
    if x == y:
        # only reachable when a fingerprint collision fooled the LCE
        return -1 if i > j else 1
    return -1 if x < y else 1


def suffix_compare(t, i, j, powers=None):
    """-1, 0 or 1 as suffix i sorts before, equal to or after suffix j.

    ``powers`` selects the LCE flavour: None squares sigma per query (slow),
    anything with ``sigma_pow`` reads a table (fast).  A head of up to tau
    symbols usually settles the order without any LCE query.
    """
    n = t.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("suffix out of range")
    if i == j:
        return 0
    return _cmp_heads(t, _head(t, i), _head(t, j), powers)


# -- integer-sequence compression -----------------------------------------

class CompressedSequence:
    """A sorted slice of a PositionArray stored with its top bit removed.

    Entries lo..lo+k-1 shrink to width-1 bits each, packed from the start
    of the slice, so its last k bits are free; ``pivot`` is the first index
    whose top bit was set.
    """

    def __init__(self, arr, lo, k, pivot):
        self.arr = arr
        self.lo = lo
        self.k = k
        self.pivot = pivot

    @property
    def payload_bits(self):
        return self.k * (self.arr.width - 1)

    @property
    def free_offset(self):
        """Bit offset of the k freed bits inside the array's buffer."""
        return self.lo * self.arr.width + self.payload_bits

    @property
    def free_bits(self):
        return self.k

    def stripped(self, j):
        w = self.arr.width - 1
        return self.arr.read_bits(self.lo * self.arr.width + j * w, w)

    def value(self, j):
        return self.stripped(j) | ((j >= self.pivot) << (self.arr.width - 1))


def compression_threshold(n, c=1):
    return 2 * (10 + c) * log2_ceil(n) ** 2


def _cmp_int(a, b):
    return (a > b) - (a < b)


def compress_integer_sequence(arr, lo, k, c=1, check=True):
    """Sort arr[lo:lo+k], strip each entry's top bit and pack the rest to the front."""
    if check and k < compression_threshold(arr.n, c):
        raise ValueError("compression needs at least %d entries, got %d"
                         % (compression_threshold(arr.n, c), k))
    if lo < 0 or lo + k > len(arr):
        raise IndexError("slice out of range")
    heapsort(arr, lo, lo + k, _cmp_int)
    w = arr.width
    top = 1 << (w - 1)
    a, b = lo, lo + k
    while a < b:
        h = (a + b) >> 1
        if arr[h] & top:
            b = h
        else:
            a = h + 1
    pivot = a - lo
    # left to right: the write for entry j ends before entry j+1 starts
    base = lo * w
    for j in range(k):
        v = arr.read_bits(base + j * w, w)
        arr.write_bits(base + j * (w - 1), w - 1, v & (top - 1))
    arr.write_bits(base + k * (w - 1), k, 0)
    return CompressedSequence(arr, lo, k, pivot)


def decompress_integer_sequence(cs):
    """Put the top bits back; the slice holds the sorted entries again."""
    arr, k = cs.arr, cs.k
    w = arr.width
    base = cs.lo * w
    top = 1 << (w - 1)
    # right to left: entries beyond j are already expanded
    for j in range(k - 1, -1, -1):
        v = arr.read_bits(base + j * (w - 1), w - 1)
        if j >= cs.pivot:
            v |= top
        arr.write_bits(base + j * w, w, v)
    return arr


class SlicePowerTable:
    """sigma^(2^i) mod q, i = 0..floor(log2 n), written into freed bits."""

    def __init__(self, arr, offset, q, count):
        self.arr = arr
        self.offset = offset
        self.q = q
        self.width = q.bit_length()
        self.count = count

    @staticmethod
    def bits_needed(t):
        return t.n.bit_length() * t.params.q.bit_length()

    @classmethod
    def store(cls, t, cs):
        q = t.params.q
        count = t.n.bit_length()
        need = count * q.bit_length()
        if need > cs.free_bits:
            raise ValueError("power table needs %d bits, only %d free" % (need, cs.free_bits))
        table = cls(cs.arr, cs.free_offset, q, count)
        p = t.params.sigma % q
        for i in range(count):
            cs.arr.write_bits(table.offset + i * table.width, table.width, p)
            p = p * p % q
        return table

    def entry(self, i):
        return self.arr.read_bits(self.offset + i * self.width, self.width)

    def sigma_pow(self, length):
        q = self.q
        r = 1 % q
        i = 0
        while length:
            if length & 1:
                r = r * self.entry(i) % q
            length >>= 1
            i += 1
        return r


def fast_split(t, b, n_div, c=1):
    """Size of the slow-sorted, compressed prefix; b itself means no fast phase."""
    n = t.n
    k = max(n_div, compression_threshold(n, c), SlicePowerTable.bits_needed(t))
    return k if b > k else b


# -- sparse suffix sorting -------------------------------------------------

def sparse_suffix_sort(t, arr, c=1, lo=0, hi=None):
    """Sort the suffix starts in arr[lo:hi] lexicographically, in place."""
    if hi is None:
        hi = len(arr)
    n = t.n
    for k in range(lo, hi):
        if arr[k] >= n:
            raise IndexError("position %d out of range [0, %d)" % (arr[k], n))
    b = hi - lo
    if b < 2:
        return
    L = log2_ceil(n)
    k = fast_split(t, b, n // L ** 4, c)

    def slow(x, y):
        return suffix_compare(t, x, y)

    if k == b:
        heapsort(arr, lo, hi, slow)
        return
    cs = compress_integer_sequence(arr, lo, k, c)
    table = SlicePowerTable.store(t, cs)

    def fast(x, y):
        return suffix_compare(t, x, y, table)

    heapsort(arr, lo + k, hi, fast)
    decompress_integer_sequence(cs)
    heapsort(arr, lo, lo + k, slow)
    merge_in_place(arr, lo, lo + k, hi, slow)


def ssa_to_slcp(t, arr, powers=None, lo=0, hi=None):
    """Replace sorted suffix starts by LCPs of neighbours; entry lo becomes 0."""
    if hi is None:
        hi = len(arr)
    for k in range(hi - 1, lo, -1):
        arr[k] = t.lce(arr[k - 1], arr[k], powers)
    if hi > lo:
        arr[lo] = 0


# -- full LCP array ---------------------------------------------------------

def full_lcp(s, out, rng=None, c=1):
    """Write the LCP array of s into out (n entries); s ends up holding an exact transform.

    ``out`` is also the derandomisation workspace and the suffix array.
    Returns the transform.
    """
    n = s.n
    if len(out) != n:
        raise ValueError("out must have exactly n entries")
    if n == 0:
        return None
    if rng is None:
        rng = RandomSource()
    t = build_exact(s, c, rng, workspace=out)
    p = t.params
    q, seed, tau, c_prime = p.q, p.seed, p.tau, p.c_prime
    if n == 1:
        out[0] = 0
        return t
    # restore the text, then rebuild with the recorded (q, seed)
    invert_in_place(t)
    t = build_in_place(s, TransformParams(s.sigma, n, tau, q, seed, c_prime, exact=True))

    def slow(x, y):
        return suffix_compare(t, x, y)

    for k in range(n):
        out[k] = k
    heapsort(out, 0, n, slow)

    L = log2_ceil(n)
    k = fast_split(t, n, n // L ** 2, c)
    if k == n:
        ssa_to_slcp(t, out)
        return t
    cs = compress_integer_sequence(out, 0, k, c)
    table = SlicePowerTable.store(t, cs)
    # out[k] keeps its position until its left neighbour is back in place
    ssa_to_slcp_tail(t, out, k, table)
    decompress_integer_sequence(cs)
    heapsort(out, 0, k, slow)
    out[k] = t.lce(out[k - 1], out[k])
    ssa_to_slcp(t, out, None, 0, k)
    return t


def ssa_to_slcp_tail(t, arr, k, powers):
    for j in range(len(arr) - 1, k, -1):
        arr[j] = t.lce(arr[j - 1], arr[j], powers)


# -- suffix selection -----------------------------------------------------

def suffix_select(t, rank, rng=None):
    """Text position of the suffix with the given lexicographic rank.

    Quickselect over the suffixes between two bounding suffixes lo and hi;
    a pivot split is only accepted once the side holding the rank has at
    most 3/4 of the candidates.  Only the heads of lo, hi, the pivot and
    its neighbours are kept.
    """
    n = t.n
    if not 0 <= rank < n:
        raise IndexError("rank %d out of range [0, %d)" % (rank, n))
    if rng is None:
        rng = RandomSource()
    cmp = _cmp_heads
    lo = hi = _head(t, 0)
    for p in range(1, n):
        h = _head(t, p)
        if cmp(t, h, lo) < 0:
            lo = h
        elif cmp(t, h, hi) > 0:
            hi = h
    m = n
    while True:
        if rank == 0:
            return lo[0]
        if rank == m - 1:
            return hi[0]
        whole = m == n
        while True:
            r = uniform_int(rng, 0, m - 1)
            # the r-th candidate in text order
            seen = 0
            for p in range(n):
                h = _head(t, p)
                if whole or (cmp(t, h, lo) >= 0 and cmp(t, h, hi) <= 0):
                    if seen == r:
                        pick = h
                        break
                    seen += 1
            below = 0
            pred = succ = None
            for p in range(n):
                h = _head(t, p)
                if not whole and (cmp(t, h, lo) < 0 or cmp(t, h, hi) > 0):
                    continue
                o = cmp(t, h, pick)
                if o < 0:
                    below += 1
                    if pred is None or cmp(t, h, pred) > 0:
                        pred = h
                elif o > 0 and (succ is None or cmp(t, h, succ) < 0):
                    succ = h
            if below == rank:
                return pick[0]
            size = below if rank < below else m - below - 1
            if 4 * size <= 3 * m:
                break
        if rank < below:
            hi, m = pred, below
        else:
            lo, m, rank = succ, m - below - 1, rank - below - 1


__all__ = [
    "PositionArray", "CompressedSequence", "SlicePowerTable", "suffix_compare",
    "compress_integer_sequence", "decompress_integer_sequence", "sparse_suffix_sort",
    "ssa_to_slcp", "full_lcp", "suffix_select", "compression_threshold",
]
