"""Command-line front end: ``eqtransform <command> ...``.

Exit status is 0 on success, 1 on runtime or IO failure and 2 when the
arguments or parameters are rejected.
"""

import argparse
import json
import sys

from . import eqx
from .derandomize import build_exact, verify_pow2_collision_free
from .eq_transform import build, build_power_table, invert_in_place
from .packed_string import PackedString
from .positions import PositionArray
from .prime_gen import IntervalExhausted, RandomSource
from .suffix_ops import full_lcp, sparse_suffix_sort, ssa_to_slcp, suffix_select


class UsageError(Exception):
    pass


def _read(path):
    with open(path, "rb") as f:
        return f.read()


def _write(path, data):
    with open(path, "wb") as f:
        f.write(data)


def _text(path, sigma):
    if sigma < 1:
        raise UsageError("sigma must be positive")
    if sigma == 1:
        raise UsageError("sigma=1: all strings of equal length are equal (trivial equality), "
                         "there is nothing to transform")
    if sigma > 256:
        raise UsageError("input files carry one symbol per byte, so sigma must be at most 256")
    raw = _read(path)
    if not raw:
        raise UsageError("input is empty")
    try:
        return PackedString.from_bytes(raw, sigma)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _bool(x):
    return "true" if x else "false"


def _index(*xs):
    for x in xs:
        if x < 0:
            raise UsageError("negative index %d" % x)


def cmd_build(args):
    s = _text(args.input, args.sigma)
    rng = RandomSource(args.seed_rng)
    if args.exact:
        t = build_exact(s, c=args.c, rng=rng)
    else:
        t = build(s, c=args.c, rng=rng)
    if args.powers:
        t.powers = build_power_table(t.params)
    eqx.save(t, args.output)
    p = t.params
    print(json.dumps({"tau": p.tau, "q": p.q, "seed": p.seed, "attempts": t.attempts,
                      "verified": p.exact}))
    return 0


def cmd_invert(args):
    t = eqx.load(args.transform)
    s = invert_in_place(t)
    if s.sigma > 256:
        _write(args.output, s.packed_bytes())
    else:
        _write(args.output, s.to_text_bytes())
    return 0


def cmd_query(args):
    t = eqx.load(args.transform)
    v = args.values
    try:
        if args.kind == "eq":
            if len(v) not in (3, 4):
                raise UsageError("eq takes i1 i2 len [len2]")
            i, j, length = v[:3]
            _index(*v)
            if len(v) == 4 and v[3] != length:
                print("false")
            else:
                print(_bool(t.substring_eq(i, j, length)))
        elif args.kind == "lce":
            if len(v) != 2:
                raise UsageError("lce takes i j")
            _index(*v)
            print(t.lce(*v))
        else:
            if len(v) != 1:
                raise UsageError("access takes i")
            _index(*v)
            print(t.access(v[0]))
    except IndexError as e:
        raise UsageError(str(e)) from None
    return 0


def _positions(path, n):
    try:
        return PositionArray.from_file_bytes(_read(path), n)
    except ValueError as e:
        raise UsageError("positions file: %s" % e) from None


def _check_positions(arr, n):
    for k in range(len(arr)):
        if arr[k] >= n:
            raise UsageError("position %d out of range [0, %d)" % (arr[k], n))


def cmd_ssort(args):
    t = eqx.load(args.transform)
    arr = _positions(args.positions, t.n)
    _check_positions(arr, t.n)
    sparse_suffix_sort(t, arr, c=t.params.c_prime - 1)
    if args.lcp:
        ssa_to_slcp(t, arr, t.powers)
    _write(args.output or args.positions, arr.to_file_bytes())
    return 0


def cmd_lcp(args):
    s = _text(args.input, args.sigma)
    out = PositionArray(s.n, s.n)
    full_lcp(s, out, RandomSource(args.seed_rng), c=args.c)
    _write(args.output, out.to_file_bytes())
    return 0


def cmd_select(args):
    t = eqx.load(args.transform)
    if not 0 <= args.rank < t.n:
        raise UsageError("rank %d out of range [0, %d)" % (args.rank, t.n))
    print(suffix_select(t, args.rank, RandomSource(args.seed_rng)))
    return 0


def cmd_verify(args):
    t = eqx.load(args.transform)
    print(_bool(verify_pow2_collision_free(t)))
    return 0


def make_parser():
    ap = argparse.ArgumentParser(prog="eqtransform", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def text_args(p):
        p.add_argument("input")
        p.add_argument("--sigma", type=int, default=256)
        p.add_argument("--c", type=int, default=1, help="failure constant (default 1)")
        p.add_argument("--seed-rng", type=int, default=None)

    p = sub.add_parser("build", help="transform a file into an EQX file")
    text_args(p)
    p.add_argument("output")
    p.add_argument("--exact", action="store_true", help="verify collision-freeness")
    p.add_argument("--powers", action="store_true", help="store the power table (fast queries)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invert", help="recover the original file")
    p.add_argument("transform")
    p.add_argument("output")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("query", help="eq i1 i2 len [len2] | lce i j | access i")
    p.add_argument("transform")
    p.add_argument("kind", choices=("eq", "lce", "access"))
    p.add_argument("values", type=int, nargs="+")
    p.set_defaults(func=cmd_query)

    for name, lcp, helptext in (("ssort", False, "sort a positions file by suffix"),
                                ("slcp", True, "sparse LCP array of a positions file")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("transform")
        p.add_argument("positions")
        p.add_argument("-o", "--output", help="write here instead of rewriting the positions file")
        p.set_defaults(func=cmd_ssort, lcp=lcp)

    p = sub.add_parser("lcp", help="full LCP array of a file")
    text_args(p)
    p.add_argument("output")
    p.set_defaults(func=cmd_lcp)

    p = sub.add_parser("select", help="text position of the suffix of a given rank")
    p.add_argument("transform")
    p.add_argument("rank", type=int)
    p.add_argument("--seed-rng", type=int, default=None)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("verify", help="check collision-freeness at power-of-two lengths")
    p.add_argument("transform")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print("eqtransform: %s" % e, file=sys.stderr)
        return 2
    except eqx.FormatError as e:
        print("eqtransform: %s" % e, file=sys.stderr)
        return 1
    except (OSError, IntervalExhausted) as e:
        print("eqtransform: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
