"""Fixed-width unsigned integers made of 32-bit limbs.

A transform over alphabet sigma with block length tau only ever needs
numbers of at most 2*tau*ceil(log2 sigma) bits (products of two tau-digit
values), so every value in one transform shares a single limb count chosen
up front.

The module-level operations accept either :class:`WideUint` values or plain
Python ints.  With ints they fall through to the native operators, which is
what the hot paths of the transform use; the limb routines exist so the
arithmetic contract can be exercised (and checked) at the word level.
"""

import math

try:
    from gmpy2 import powmod as _powmod
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _powmod = pow

LIMB_BITS = 32
LIMB_MASK = (1 << LIMB_BITS) - 1
_BASE = 1 << LIMB_BITS


def capacity_bits(sigma, tau):
    """Bits needed to hold any product of two tau-digit base-sigma values."""
    return 2 * tau * max(1, (sigma - 1).bit_length()) + 2


def limbs_for(sigma, tau):
    return -(-capacity_bits(sigma, tau) // LIMB_BITS)


class WideUint:
    """Unsigned integer stored as a fixed number of little-endian limbs.

    ``width`` is the bit capacity (a whole number of limbs).  Instances are
    immutable; all arithmetic returns new values of the same width.
    """

    __slots__ = ("limbs", "width")

    def __init__(self, value=0, width=64):
        nlimbs = -(-width // LIMB_BITS)
        width = nlimbs * LIMB_BITS
        value = int(value)
        if value < 0:
            raise ValueError("WideUint is unsigned")
        assert value.bit_length() <= width, "value does not fit in %d bits" % width
        self.limbs = tuple((value >> (LIMB_BITS * i)) & LIMB_MASK for i in range(nlimbs))
        self.width = width

    @classmethod
    def from_limbs(cls, limbs, width):
        obj = cls.__new__(cls)
        nlimbs = width // LIMB_BITS
        limbs = list(limbs)
        for extra in limbs[nlimbs:]:
            assert extra == 0, "overflow beyond %d bits" % width
        limbs = limbs[:nlimbs] + [0] * (nlimbs - len(limbs))
        obj.limbs = tuple(limbs)
        obj.width = width
        return obj

    @classmethod
    def for_transform(cls, value, sigma, tau):
        return cls(value, limbs_for(sigma, tau) * LIMB_BITS)

    def __int__(self):
        v = 0
        for limb in reversed(self.limbs):
            v = (v << LIMB_BITS) | limb
        return v

    __index__ = __int__

    def __repr__(self):
        return "WideUint(%d, width=%d)" % (int(self), self.width)

    def __hash__(self):
        return hash(int(self))

    def __eq__(self, other):
        if isinstance(other, WideUint):
            return self.limbs == other.limbs if self.width == other.width else int(self) == int(other)
        if isinstance(other, int):
            return int(self) == other
        return NotImplemented

    def __lt__(self, other):
        return _cmp(self, other) < 0

    def __le__(self, other):
        return _cmp(self, other) <= 0

    def __gt__(self, other):
        return _cmp(self, other) > 0

    def __ge__(self, other):
        return _cmp(self, other) >= 0

    def __bool__(self):
        return any(self.limbs)

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return div_rem(self, other)

    def __floordiv__(self, other):
        return div_rem(self, other)[0]

    def __mod__(self, other):
        return div_rem(self, other)[1]

    def bit_length(self):
        for i in range(len(self.limbs) - 1, -1, -1):
            if self.limbs[i]:
                return i * LIMB_BITS + self.limbs[i].bit_length()
        return 0

    def bit(self, i):
        return (self.limbs[i // LIMB_BITS] >> (i % LIMB_BITS)) & 1


def _coerce(a, b):
    if isinstance(a, WideUint) and isinstance(b, WideUint):
        assert a.width == b.width, "mixed widths"
        return a, b
    if isinstance(a, WideUint):
        return a, WideUint(b, a.width)
    return WideUint(a, b.width), b


def _cmp(a, b):
    if isinstance(b, int) and not isinstance(a, int):
        x, y = int(a), b
        return (x > y) - (x < y)
    a, b = _coerce(a, b)
    for x, y in zip(reversed(a.limbs), reversed(b.limbs)):
        if x != y:
            return -1 if x < y else 1
    return 0


def _trim(limbs):
    n = len(limbs)
    while n > 1 and limbs[n - 1] == 0:
        n -= 1
    return limbs[:n]


def add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    a, b = _coerce(a, b)
    out = []
    carry = 0
    for x, y in zip(a.limbs, b.limbs):
        t = x + y + carry
        out.append(t & LIMB_MASK)
        carry = t >> LIMB_BITS
    assert carry == 0, "add overflows %d bits" % a.width
    return WideUint.from_limbs(out, a.width)


def mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    a, b = _coerce(a, b)
    x = _trim(list(a.limbs))
    y = _trim(list(b.limbs))
    out = [0] * (len(x) + len(y))
    # schoolbook
    for i, xi in enumerate(x):
        if not xi:
            continue
        carry = 0
        for j, yj in enumerate(y):
            t = out[i + j] + xi * yj + carry
            out[i + j] = t & LIMB_MASK
            carry = t >> LIMB_BITS
        k = i + len(y)
        while carry:
            t = out[k] + carry
            out[k] = t & LIMB_MASK
            carry = t >> LIMB_BITS
            k += 1
    return WideUint.from_limbs(out, a.width)


def _divmod_small(u, d):
    q = [0] * len(u)
    r = 0
    for i in range(len(u) - 1, -1, -1):
        cur = (r << LIMB_BITS) | u[i]
        q[i], r = divmod(cur, d)
    return q, [r]


def _divmod_knuth(u, v):
    """Knuth's algorithm D on limb lists; v has >= 2 limbs, top limb nonzero."""
    n = len(v)
    m = len(u) - n
    s = LIMB_BITS - v[-1].bit_length()
    vv = int_from(v) << s
    uu = int_from(u) << s
    vn = [(vv >> (LIMB_BITS * i)) & LIMB_MASK for i in range(n)]
    un = [(uu >> (LIMB_BITS * i)) & LIMB_MASK for i in range(m + n + 1)]
    q = [0] * (m + 1)
    vtop, vnext = vn[n - 1], vn[n - 2]
    for j in range(m, -1, -1):
        num = (un[j + n] << LIMB_BITS) | un[j + n - 1]
        qhat, rhat = divmod(num, vtop)
        while qhat >= _BASE or qhat * vnext > ((rhat << LIMB_BITS) | un[j + n - 2]):
            qhat -= 1
            rhat += vtop
            if rhat >= _BASE:
                break
        borrow = 0
        carry = 0
        for i in range(n):
            p = qhat * vn[i] + carry
            carry = p >> LIMB_BITS
            t = un[i + j] - (p & LIMB_MASK) - borrow
            un[i + j] = t & LIMB_MASK
            borrow = 1 if t < 0 else 0
        t = un[j + n] - carry - borrow
        un[j + n] = t & LIMB_MASK
        if t < 0:
            # qhat was one too large: add the divisor back
            qhat -= 1
            c = 0
            for i in range(n):
                t = un[i + j] + vn[i] + c
                un[i + j] = t & LIMB_MASK
                c = t >> LIMB_BITS
            un[j + n] = (un[j + n] + c) & LIMB_MASK
        q[j] = qhat
    rem = int_from(un[:n]) >> s
    return q, [(rem >> (LIMB_BITS * i)) & LIMB_MASK for i in range(n)]


def int_from(limbs):
    v = 0
    for limb in reversed(limbs):
        v = (v << LIMB_BITS) | limb
    return v


def div_rem(a, q):
    """Return (a // q, a % q)."""
    if isinstance(a, int) and isinstance(q, int):
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return divmod(a, q)
    a, q = _coerce(a, q)
    v = _trim(list(q.limbs))
    if v == [0]:
        raise ZeroDivisionError("division by zero")
    u = _trim(list(a.limbs))
    if _cmp(a, q) < 0:
        return WideUint(0, a.width), a
    if len(v) == 1:
        quo, rem = _divmod_small(u, v[0])
    else:
        quo, rem = _divmod_knuth(u, v)
    return WideUint.from_limbs(quo, a.width), WideUint.from_limbs(rem, a.width)


def _bit_length(y):
    return y.bit_length()


def _bit(y, i):
    if isinstance(y, WideUint):
        return y.bit(i)
    return (y >> i) & 1


def mod_pow_ladder(b, y, m):
    """b**y mod m by left-to-right square-and-multiply.

    With y_1..y_k the bits of y from the most significant one:
    t_1 = b**y_1 and t_{i+1} = t_i**2 * b**y_{i+1} mod m.  Only t, b and m
    are live at any time.
    """
    if not m:
        raise ZeroDivisionError("modulus is zero")
    one = div_rem(1 if isinstance(m, int) else WideUint(1, m.width), m)[1]
    k = _bit_length(y)
    if k == 0:
        return one
    b = div_rem(b, m)[1]
    t = b
    for i in range(k - 2, -1, -1):
        t = div_rem(mul(t, t), m)[1]
        if _bit(y, i):
            t = div_rem(mul(t, b), m)[1]
    return t


def mod_pow(b, y, m):
    if isinstance(b, int) and isinstance(y, int) and isinstance(m, int):
        if m == 0:
            raise ZeroDivisionError("modulus is zero")
        # GMP runs the same left-to-right ladder in C, several times faster than pow
        return int(_powmod(b, y, m))
    return mod_pow_ladder(b, y, m)


def gcd(a, b):
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    if isinstance(a, int) and isinstance(b, int):
        return math.gcd(a, b)
    while b:
        a, b = b, div_rem(a, b)[1]
    return a


def mod_sub(a, b, q):
    """(a - b) mod q computed as (a + q - b mod q) mod q."""
    b = div_rem(b, q)[1]
    return div_rem(add(a, _sub_from(q, b)), q)[1]


def _sub_from(q, b):
    # q - b for b <= q, at the limb level when needed
    if isinstance(q, int) and isinstance(b, int):
        return q - b
    q, b = _coerce(q, b)
    out = []
    borrow = 0
    for x, y in zip(q.limbs, b.limbs):
        t = x - y - borrow
        out.append(t & LIMB_MASK)
        borrow = 1 if t < 0 else 0
    assert borrow == 0, "negative result"
    return WideUint.from_limbs(out, q.width)
