"""Bit-packed arrays of text positions (or LCP values) over a text of length n."""

import struct

from ._bits import nbytes, read_bits, write_bits


class PositionArray:
    """``count`` unsigned entries of ``width`` bits each, packed back to back.

    The default width is the bit length of n, enough for any position < n
    and for LCE values up to n.
    """

    def __init__(self, count, n, width=None):
        if width is None:
            width = max(1, n.bit_length())
        self.count = count
        self.n = n
        self.width = width
        self.buf = bytearray(nbytes(count * width))

    @classmethod
    def from_list(cls, values, n, width=None):
        values = list(values)
        arr = cls(len(values), n, width)
        w = arr.width
        x = 0
        for k, v in enumerate(values):
            if not 0 <= v < 1 << w:
                raise ValueError("entry %d does not fit in %d bits" % (v, w))
            x |= v << (k * w)
        arr.buf[:] = x.to_bytes(len(arr.buf), "little")
        return arr

    def to_list(self):
        w = self.width
        x = int.from_bytes(self.buf, "little")
        mask = (1 << w) - 1
        return [(x >> (k * w)) & mask for k in range(self.count)]

    def __len__(self):
        return self.count

    def __getitem__(self, k):
        if not 0 <= k < self.count:
            raise IndexError("entry %d out of range" % k)
        w = self.width
        return read_bits(self.buf, k * w, w)

    def __setitem__(self, k, v):
        if not 0 <= k < self.count:
            raise IndexError("entry %d out of range" % k)
        w = self.width
        if not 0 <= v < 1 << w:
            raise ValueError("entry %d does not fit in %d bits" % (v, w))
        write_bits(self.buf, k * w, w, v)

    def __repr__(self):
        return "PositionArray(%r)" % (self.to_list() if self.count <= 64 else "%d entries" % self.count)

    @property
    def footprint_bits(self):
        return self.count * self.width

    def read_bits(self, pos, nbits):
        return read_bits(self.buf, pos, nbits)

    def write_bits(self, pos, nbits, value):
        write_bits(self.buf, pos, nbits, value)

    # -- positions-file format: u64 LE count, then count u64 LE entries ------

    def to_file_bytes(self):
        values = self.to_list()
        return struct.pack("<Q%dQ" % len(values), len(values), *values)

    @classmethod
    def from_file_bytes(cls, raw, n):
        if len(raw) < 8:
            raise ValueError("positions file too short")
        (count,) = struct.unpack_from("<Q", raw)
        if len(raw) != 8 + 8 * count:
            raise ValueError("positions file length does not match its count")
        values = struct.unpack_from("<%dQ" % count, raw, 8)
        return cls.from_list(values, n)
