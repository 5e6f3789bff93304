"""The EQX container: transform parameters followed by the packed transform.

Layout (all integers little-endian):

    "EQX1"  version:u8=1  flags:u8 (bit0 exact, bit1 power table)
    n:u64  sigma:u64  tau:u32  c_prime:u8
    q_len:u16  q[q_len]  s_len:u16  seed[s_len]
    if bit1: count:u16, count pow2 entries, then tau+1 small-power entries,
             each q_len bytes
    payload: tau*ceil(n/tau) packed symbols, zero-padded to a byte
"""

import struct

from .eq_transform import EqTransform, PowerTable, TransformParams, build_power_table
from .packed_string import PackedString
from ._bits import nbytes

MAGIC = b"EQX1"
VERSION = 1
FLAG_EXACT = 1
FLAG_POWERS = 2

_FIXED = struct.Struct("<4sBBQQIB")


class FormatError(ValueError):
    pass


def _int_bytes(x):
    return x.to_bytes(max(1, (x.bit_length() + 7) // 8), "little")


def dumps(t):
    p = t.params
    flags = (FLAG_EXACT if p.exact else 0) | (FLAG_POWERS if t.powers is not None else 0)
    qb = _int_bytes(p.q)
    sb = _int_bytes(p.seed)
    out = bytearray(_FIXED.pack(MAGIC, VERSION, flags, p.n, p.sigma, p.tau, p.c_prime))
    out += struct.pack("<H", len(qb)) + qb
    out += struct.pack("<H", len(sb)) + sb
    if t.powers is not None:
        out += struct.pack("<H", len(t.powers.pow2))
        for v in list(t.powers.pow2) + list(t.powers.small):
            out += v.to_bytes(len(qb), "little")
    s = t.data
    out += s.packed_bytes(with_padding=True)
    return bytes(out)


def loads(raw):
    raw = memoryview(bytes(raw))
    if len(raw) < _FIXED.size:
        raise FormatError("file too short for an EQX header")
    magic, version, flags, n, sigma, tau, c_prime = _FIXED.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError("not an EQX file")
    if version != VERSION:
        raise FormatError("unsupported EQX version %d" % version)
    pos = _FIXED.size

    def take(size):
        nonlocal pos
        if pos + size > len(raw):
            raise FormatError("truncated EQX file")
        chunk = bytes(raw[pos:pos + size])
        pos += size
        return chunk

    q_len = struct.unpack("<H", take(2))[0]
    q = int.from_bytes(take(q_len), "little")
    s_len = struct.unpack("<H", take(2))[0]
    seed = int.from_bytes(take(s_len), "little")
    params = TransformParams(sigma, n, tau, q, seed, c_prime, bool(flags & FLAG_EXACT))
    try:
        params.validate()
    except ValueError as e:
        raise FormatError("bad transform parameters: %s" % e) from None
    powers = None
    if flags & FLAG_POWERS:
        count = struct.unpack("<H", take(2))[0]
        vals = [int.from_bytes(take(q_len), "little") for _ in range(count + tau + 1)]
        powers = PowerTable(q, vals[:count], vals[count:])
        if powers != build_power_table(params):
            raise FormatError("stored power table does not match q")
    s = PackedString(sigma, n)
    s.reserve_padding(tau)
    payload = take(nbytes(s.padded_length * s.bits_per_symbol))
    if pos != len(raw):
        raise FormatError("trailing bytes after the payload")
    s.data[:] = payload
    s._clear_slack()
    return EqTransform(params, s, powers)


def save(t, path):
    with open(path, "wb") as f:
        f.write(dumps(t))


def load(path):
    with open(path, "rb") as f:
        return loads(f.read())
