"""Bit-packed mutable strings over the alphabet [0, sigma-1]."""

from functools import lru_cache

from ._bits import nbytes, read_bits, write_bits

# symbols per lookup chunk are chosen so one chunk spans at most this many bits
_CHUNK_BITS = 16


def bits_per_symbol(sigma):
    return max(1, (sigma - 1).bit_length())


class _Codec:
    """Conversion between packed symbol bits and base-sigma integers.

    Packed bits hold symbol 0 in the lowest bits, whereas the integer value
    of a block has symbol 0 as its most significant digit.  Blocks are
    converted a chunk of ``per`` symbols at a time through two lookup tables.
    """

    def __init__(self, sigma):
        w = bits_per_symbol(sigma)
        self.sigma = sigma
        self.w = w
        self.per = per = max(1, _CHUNK_BITS // w)
        self.chunk_mask = (1 << (per * w)) - 1
        self.chunk_base = sigma ** per
        # sigma = 2^w with w | 8: digit order reversal is a byte reversal
        # plus reversing the symbols inside each byte
        self.byte_table = None
        if sigma == 1 << w and 8 % w == 0:
            k = 8 // w
            m = (1 << w) - 1
            self.byte_table = bytes(
                sum(((x >> (j * w)) & m) << ((k - 1 - j) * w) for j in range(k))
                for x in range(256))
            return
        if per == 1:
            self.to_val = None
            self.to_bits = None
            return
        sym_mask = (1 << w) - 1
        to_val = []
        for bits in range(1 << (per * w)):
            v = 0
            for k in range(per):
                v = v * sigma + ((bits >> (k * w)) & sym_mask)
            to_val.append(v)
        to_bits = [0] * self.chunk_base
        for v in range(self.chunk_base):
            bits = 0
            x = v
            for k in range(per - 1, -1, -1):
                x, d = divmod(x, sigma)
                bits |= d << (k * w)
            to_bits[v] = bits
        self.to_val = to_val
        self.to_bits = to_bits

    def value(self, x, count):
        """Integer value of ``count`` packed symbols held in ``x``."""
        per, w = self.per, self.w
        if self.byte_table is not None:
            nb = (count * w + 7) >> 3
            raw = x.to_bytes(nb, "little").translate(self.byte_table)
            return int.from_bytes(raw, "big") >> (nb * 8 - count * w)
        if per == 1:
            v = 0
            mask = (1 << w) - 1
            sigma = self.sigma
            for k in range(count):
                v = v * sigma + ((x >> (k * w)) & mask)
            return v
        full, rest = divmod(count, per)
        to_val, cmask, base = self.to_val, self.chunk_mask, self.chunk_base
        step = per * w
        v = 0
        for j in range(full):
            v = v * base + to_val[(x >> (j * step)) & cmask]
        if rest:
            tail = to_val[(x >> (full * step)) & cmask]
            v = v * self.sigma ** rest + tail // self.sigma ** (per - rest)
        return v

    def bits(self, v, count):
        """Packed bits of the ``count``-digit base-sigma value ``v``."""
        per, w = self.per, self.w
        if self.byte_table is not None:
            nb = (count * w + 7) >> 3
            raw = (v << (nb * 8 - count * w)).to_bytes(nb, "big").translate(self.byte_table)
            return int.from_bytes(raw, "little")
        if per == 1:
            x = 0
            sigma = self.sigma
            for k in range(count - 1, -1, -1):
                v, d = divmod(v, sigma)
                x |= d << (k * w)
            return x
        full, rest = divmod(count, per)
        to_bits, base = self.to_bits, self.chunk_base
        step = per * w
        x = 0
        if rest:
            v, d = divmod(v, self.sigma ** rest)
            x = to_bits[d * self.sigma ** (per - rest)] << (full * step)
        for j in range(full - 1, -1, -1):
            v, d = divmod(v, base)
            x |= to_bits[d] << (j * step)
        return x


@lru_cache(maxsize=32)
def codec(sigma):
    return _Codec(sigma)


class PackedString:
    """A string of ``n`` symbols packed at ceil(log2 sigma) bits each.

    Symbol i occupies bits [i*b, (i+1)*b) of the stream.  A transform whose
    block length does not divide n materialises up to tau-1 extra zero
    symbols after position n (the padding tail); they are reachable through
    the block accessors only.
    """

    def __init__(self, sigma, n, data=None):
        if sigma < 2:
            raise ValueError("sigma must be at least 2 (sigma=1 strings are trivial)")
        if n < 0:
            raise ValueError("negative length")
        self.sigma = sigma
        self.n = n
        self.bits_per_symbol = bits_per_symbol(sigma)
        self.pad = 0
        size = nbytes(n * self.bits_per_symbol)
        if data is None:
            self.data = bytearray(size)
        else:
            if len(data) < size:
                raise ValueError("packed data too short for %d symbols" % n)
            self.data = bytearray(data[:size])
            self._clear_slack()
        self._codec = codec(sigma)

    @classmethod
    def from_symbols(cls, symbols, sigma):
        symbols = list(symbols)
        s = cls(sigma, len(symbols))
        b = s.bits_per_symbol
        x = 0
        for i, v in enumerate(symbols):
            if not 0 <= v < sigma:
                raise ValueError("symbol %r at %d outside [0, %d)" % (v, i, sigma))
            x |= v << (i * b)
        s.data[:] = x.to_bytes(len(s.data), "little")
        return s

    @classmethod
    def from_bytes(cls, raw, sigma):
        """One symbol per input byte (the CLI text convention)."""
        if sigma == 256:
            return cls(256, len(raw), bytes(raw))
        if raw and max(raw) >= sigma:
            raise ValueError("input byte %d is not a symbol of sigma=%d" % (max(raw), sigma))
        return cls.from_symbols(raw, sigma)

    def to_symbols(self):
        b = self.bits_per_symbol
        x = int.from_bytes(self.data, "little")
        mask = (1 << b) - 1
        return [(x >> (i * b)) & mask for i in range(self.n)]

    def to_text_bytes(self):
        if self.sigma > 256:
            raise ValueError("only sigma <= 256 maps to one byte per symbol")
        if self.sigma == 256:
            return bytes(self.data[: self.n])
        return bytes(self.to_symbols())

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, PackedString):
            return NotImplemented
        return (self.sigma, self.n) == (other.sigma, other.n) and self.packed_bytes() == other.packed_bytes()

    def __repr__(self):
        head = self.to_symbols()[:16] if self.n <= 4096 else "..."
        return "PackedString(sigma=%d, n=%d, %s)" % (self.sigma, self.n, head)

    def _clear_slack(self):
        used = (self.n + self.pad) * self.bits_per_symbol
        if used & 7:
            self.data[-1] &= (1 << (used & 7)) - 1

    # -- padding -----------------------------------------------------------

    def reserve_padding(self, tau):
        """Materialise zero symbols so the length becomes a multiple of tau."""
        pad = -self.n % tau
        if pad == self.pad:
            return pad
        total = nbytes((self.n + pad) * self.bits_per_symbol)
        if pad > self.pad:
            self.data.extend(bytes(total - len(self.data)))
            b = self.bits_per_symbol
            write_bits(self.data, (self.n + self.pad) * b, (pad - self.pad) * b, 0)
        else:
            del self.data[total:]
        self.pad = pad
        self._clear_slack()
        return pad

    def release_padding(self):
        if self.pad:
            self.pad = 0
            del self.data[nbytes(self.n * self.bits_per_symbol):]
            self._clear_slack()

    @property
    def padded_length(self):
        return self.n + self.pad

    def packed_bytes(self, with_padding=False):
        if with_padding:
            return bytes(self.data)
        size = nbytes(self.n * self.bits_per_symbol)
        out = bytearray(self.data[:size])
        used = self.n * self.bits_per_symbol
        if used & 7:
            out[-1] &= (1 << (used & 7)) - 1
        return bytes(out)

    # -- symbol access -----------------------------------------------------

    def get(self, i):
        if not 0 <= i < self.n:
            raise IndexError("position %d out of range [0, %d)" % (i, self.n))
        b = self.bits_per_symbol
        return read_bits(self.data, i * b, b)

    def set(self, i, v):
        if not 0 <= i < self.n:
            raise IndexError("position %d out of range [0, %d)" % (i, self.n))
        if not 0 <= v < self.sigma:
            raise ValueError("symbol %d outside [0, %d)" % (v, self.sigma))
        b = self.bits_per_symbol
        write_bits(self.data, i * b, b, v)

    __getitem__ = get
    __setitem__ = set

    # -- block access ------------------------------------------------------

    def _check_block(self, b, tau):
        if tau < 1:
            raise ValueError("block length must be positive")
        if b < 0 or (b + 1) * tau > self.n + self.pad:
            raise IndexError("block %d of length %d out of range" % (b, tau))

    def get_block(self, b, tau):
        """Integer whose base-sigma digits are symbols b*tau .. b*tau+tau-1.

        The first symbol is the most significant digit.
        """
        self._check_block(b, tau)
        w = self.bits_per_symbol
        return self._codec.value(read_bits(self.data, b * tau * w, tau * w), tau)

    def set_block(self, b, tau, v):
        self._check_block(b, tau)
        if not 0 <= v < self.sigma ** tau:
            raise ValueError("block value does not fit in %d digits" % tau)
        w = self.bits_per_symbol
        write_bits(self.data, b * tau * w, tau * w, self._codec.bits(v, tau))

    def get_blocks(self, b, count, tau):
        """Values of ``count`` consecutive blocks starting at b, read in one pass."""
        self._check_block(b + count - 1, tau)
        w = self.bits_per_symbol
        x = read_bits(self.data, b * tau * w, count * tau * w)
        span = tau * w
        mask = (1 << span) - 1
        value = self._codec.value
        return [value((x >> (k * span)) & mask, tau) for k in range(count)]
