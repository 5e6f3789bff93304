"""Turning a probabilistic transform into an exact one.

A transform is exact when its fingerprint is collision-free among equal
substrings whose length is a power of two; every equality and LCE answer
then holds deterministically.  Checking this needs one position array of n
entries as working space.
"""

from .eq_transform import build, invert_in_place
from ._inplace import heapsort_by_key
from .positions import PositionArray
from .prime_gen import RandomSource


class _LevelPowers:
    """sigma^(2^e) and sigma^(2^(e-1)) mod q held in two registers.

    Other lengths (the partial blocks of a prefix) fall back to squaring.
    """

    def __init__(self, t):
        self.t = t
        q = t.params.q
        self.half_len = 1
        self.half = t.params.sigma % q
        self.full_len = 2
        self.full = self.half * self.half % q

    def advance(self):
        q = self.t.params.q
        self.half_len, self.half = self.full_len, self.full
        self.full_len <<= 1
        self.full = self.full * self.full % q

    def sigma_pow(self, length):
        if length == self.full_len:
            return self.full
        if length == self.half_len:
            return self.half
        return self.t._pow(length, None)


def verify_pow2_collision_free(t, workspace=None):
    """True iff equal fingerprints imply equal substrings at every length 2^e <= n."""
    n = t.n
    if workspace is None:
        workspace = PositionArray(n, n)
    if len(workspace) < n:
        raise ValueError("workspace needs %d entries" % n)
    if n < 2:
        return True
    regs = _LevelPowers(t)
    fp = t.substring_fp
    while regs.full_len <= n:
        length = regs.full_len
        half = regs.half_len
        count = n - length + 1
        for k in range(count):
            workspace[k] = k

        def key(i):
            return fp(i, length, regs)

        heapsort_by_key(workspace, 0, count, key)
        prev = workspace[0]
        kp = key(prev)
        for k in range(1, count):
            cur = workspace[k]
            kc = key(cur)
            if kc == kp:
                if half == 1:
                    same = t.access(prev) == t.access(cur) and t.access(prev + 1) == t.access(cur + 1)
                else:
                    # exact at the previous level, so half fingerprints decide
                    same = (fp(prev, half, regs) == fp(cur, half, regs)
                            and fp(prev + half, half, regs) == fp(cur + half, half, regs))
                if not same:
                    return False
            prev, kp = cur, kc
        regs.advance()
    return True


def build_exact(s, c=1, rng=None, workspace=None):
    """Build transforms until one verifies; the string ends up holding it.

    ``attempts`` on the result counts every (q, seed) draw and
    ``verify_rounds`` the number of verified transforms tried.
    """
    if rng is None:
        rng = RandomSource()
    attempts = 0
    rounds = 0
    while True:
        t = build(s, c=c, rng=rng)
        attempts += t.attempts
        rounds += 1
        ws = workspace if workspace is not None else PositionArray(s.n, s.n)
        ok = verify_pow2_collision_free(t, ws)
        del ws
        if ok:
            t.params.exact = True
            t.attempts = attempts
            t.verify_rounds = rounds
            return t
        invert_in_place(t)
