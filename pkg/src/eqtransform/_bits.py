"""Raw bit-stream access over a bytearray.

Stream bit k lives in bit (k mod 8) of byte k // 8, so a value written at
bit offset ``pos`` with ``nbits`` bits has its least significant bit at
``pos``.
"""


def read_bits(buf, pos, nbits):
    if nbits <= 0:
        return 0
    lo = pos >> 3
    hi = (pos + nbits + 7) >> 3
    return (int.from_bytes(buf[lo:hi], "little") >> (pos & 7)) & ((1 << nbits) - 1)


def write_bits(buf, pos, nbits, value):
    if nbits <= 0:
        return
    lo = pos >> 3
    hi = (pos + nbits + 7) >> 3
    shift = pos & 7
    mask = ((1 << nbits) - 1) << shift
    word = int.from_bytes(buf[lo:hi], "little")
    word = (word & ~mask) | ((value << shift) & mask)
    buf[lo:hi] = word.to_bytes(hi - lo, "little")


def nbytes(nbits):
    return (nbits + 7) >> 3
