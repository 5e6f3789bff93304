import json
import os
import random
import struct
import subprocess
import sys
from pathlib import Path

import pytest

from eqtransform import eqx
from eqtransform.cli import main
from eqtransform.eq_transform import build
from eqtransform.packed_string import PackedString
from eqtransform.prime_gen import RandomSource
from oracles import naive_lce, naive_sorted_suffixes

FIXTURES = Path(__file__).parent / "fixtures"


def positions_file(path, values):
    path.write_bytes(struct.pack("<Q%dQ" % len(values), len(values), *values))


def read_positions(path):
    raw = path.read_bytes()
    (count,) = struct.unpack_from("<Q", raw)
    return list(struct.unpack_from("<%dQ" % count, raw, 8))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_invert_zero_file(tmp_path, capsys):
    src = tmp_path / "z.bin"
    src.write_bytes(bytes(1024))
    code, out, _ = run(capsys, "build", src, tmp_path / "z.eqx", "--seed-rng", 1)
    assert code == 0
    info = json.loads(out)
    assert set(info) == {"tau", "q", "seed", "attempts", "verified"} and info["verified"] is False
    assert run(capsys, "invert", tmp_path / "z.eqx", tmp_path / "z.out")[0] == 0
    assert (tmp_path / "z.out").read_bytes() == bytes(1024)


def test_build_exact_random_file(tmp_path, capsys):
    # 4 KiB keeps verification (n log^2 n fingerprints) within a unit-test budget
    rng = random.Random(1)
    data = bytes(rng.randrange(256) for _ in range(4 * 1024))
    src = tmp_path / "r.bin"
    src.write_bytes(data)
    code, out, _ = run(capsys, "build", src, tmp_path / "r.eqx", "--exact", "--powers", "--seed-rng", 2)
    assert code == 0 and json.loads(out)["verified"] is True
    t = eqx.load(tmp_path / "r.eqx")
    assert t.params.exact and t.powers is not None
    assert run(capsys, "invert", tmp_path / "r.eqx", tmp_path / "r.out")[0] == 0
    assert (tmp_path / "r.out").read_bytes() == data


def test_sigma_one_rejected(tmp_path, capsys):
    src = tmp_path / "a.bin"
    src.write_bytes(b"\x00\x00\x00")
    code, _, err = run(capsys, "build", src, tmp_path / "a.eqx", "--sigma", 1)
    assert code == 2 and "trivial" in err


def test_bad_inputs(tmp_path, capsys):
    src = tmp_path / "a.bin"
    src.write_bytes(b"\x00\x07")
    assert run(capsys, "build", src, tmp_path / "a.eqx", "--sigma", 4)[0] == 2
    assert run(capsys, "build", tmp_path / "missing", tmp_path / "a.eqx")[0] == 1
    (tmp_path / "junk.eqx").write_bytes(b"nope")
    assert run(capsys, "query", tmp_path / "junk.eqx", "access", 0)[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_queries(tmp_path, capsys):
    rng = random.Random(3)
    sy = [rng.randrange(4) for _ in range(300)]
    (tmp_path / "s.bin").write_bytes(bytes(sy))
    run(capsys, "build", tmp_path / "s.bin", tmp_path / "s.eqx", "--sigma", 4, "--exact", "--seed-rng", 3)
    f = tmp_path / "s.eqx"
    assert run(capsys, "query", f, "eq", 3, 9, 0)[1] == "true\n"
    assert run(capsys, "query", f, "eq", 3, 3, 5, 6)[1] == "false\n"
    for _ in range(20):
        i, j = rng.randrange(300), rng.randrange(300)
        ell = rng.randint(1, 300 - max(i, j))
        assert run(capsys, "query", f, "eq", i, j, ell)[1].strip() == str(sy[i:i + ell] == sy[j:j + ell]).lower()
        assert run(capsys, "query", f, "lce", i, j)[1] == "%d\n" % naive_lce(sy, i, j)
        assert run(capsys, "query", f, "access", i)[1] == "%d\n" % sy[i]
    assert run(capsys, "query", f, "access", 300)[0] == 2
    assert run(capsys, "query", f, "lce", 1)[0] == 2
    assert run(capsys, "verify", f)[1] == "true\n"


def test_ssort_slcp_select_consistency(tmp_path, capsys):
    rng = random.Random(4)
    sy = [rng.randrange(2) for _ in range(200)]
    (tmp_path / "s.bin").write_bytes(bytes(sy))
    f = tmp_path / "s.eqx"
    run(capsys, "build", tmp_path / "s.bin", f, "--sigma", 2, "--exact", "--seed-rng", 4)
    pos = tmp_path / "p.bin"
    positions_file(pos, list(range(200)))
    assert run(capsys, "ssort", f, pos)[0] == 0
    sa = read_positions(pos)
    assert sa == naive_sorted_suffixes(sy)
    code, out, _ = run(capsys, "select", f, 0, "--seed-rng", 9)
    assert code == 0 and int(out) == sa[0]
    assert int(run(capsys, "select", f, 137, "--seed-rng", 9)[1]) == sa[137]
    assert run(capsys, "select", f, 200)[0] == 2
    B = [rng.randrange(200) for _ in range(50)]
    positions_file(pos, B)
    assert run(capsys, "slcp", f, pos, "-o", tmp_path / "l.bin")[0] == 0
    ssa = naive_sorted_suffixes(sy, B)
    assert read_positions(tmp_path / "l.bin") == [0] + [naive_lce(sy, a, b) for a, b in zip(ssa, ssa[1:])]
    positions_file(pos, [5, 200])
    assert run(capsys, "ssort", f, pos)[0] == 2


def test_deterministic_given_seed(tmp_path, capsys):
    (tmp_path / "s.bin").write_bytes(bytes(random.Random(5).randrange(256) for _ in range(500)))
    outs = [run(capsys, "build", tmp_path / "s.bin", tmp_path / ("%d.eqx" % k), "--seed-rng", 11)[1]
            for k in range(2)]
    assert outs[0] == outs[1]
    assert (tmp_path / "0.eqx").read_bytes() == (tmp_path / "1.eqx").read_bytes()


def test_lcp_matches_fixture(tmp_path, capsys):
    code = run(capsys, "lcp", FIXTURES / "text4k.bin", tmp_path / "out.lcp", "--sigma", 4, "--seed-rng", 1)[0]
    assert code == 0
    assert (tmp_path / "out.lcp").read_bytes() == (FIXTURES / "text4k.lcp").read_bytes()


def test_eqx_layout():
    t = build(PackedString.from_symbols([3, 2, 1, 0, 0, 0, 0, 1, 2], 4), rng=RandomSource(6), with_powers=True)
    raw = eqx.dumps(t)
    assert raw[:4] == b"EQX1" and raw[4] == 1 and raw[5] == 2
    n, sigma, tau, c_prime = struct.unpack_from("<QQIB", raw, 6)
    assert (n, sigma, tau, c_prime) == (9, 4, t.params.tau, 2)
    back = eqx.loads(raw)
    assert back.params == t.params and back.powers == t.powers
    assert back.data.packed_bytes(with_padding=True) == t.data.packed_bytes(with_padding=True)
    # payload covers tau * ceil(n / tau) symbols at 2 bits each
    assert raw.endswith(t.data.packed_bytes(with_padding=True))
    assert len(t.data.packed_bytes(with_padding=True)) == (tau * -(-9 // tau) * 2 + 7) // 8
    with pytest.raises(eqx.FormatError):
        eqx.loads(raw + b"\x00")
    with pytest.raises(eqx.FormatError):
        eqx.loads(raw[:-1])


def test_console_script_entry_point(tmp_path):
    src = tmp_path / "a.bin"
    src.write_bytes(b"abc")
    r = subprocess.run([sys.executable, "-m", "eqtransform", "build", str(src), str(tmp_path / "a.eqx"),
                        "--sigma", "1"], capture_output=True, text=True, env=dict(os.environ))
    assert r.returncode == 2 and "trivial" in r.stderr
