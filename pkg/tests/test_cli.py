import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from dirconv.cli import main
from dirconv import textio
from oracles import brute_inverse, tau

GOLDEN = Path(__file__).parent / "golden"


def run(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_convolve_gives_divisor_counts(capsys):
    code, out, _ = run(["convolve", GOLDEN / "one.fn", GOLDEN / "one.fn"], capsys)
    assert code == 0
    f = textio.read_function(out)
    assert all(f[n] == tau(n) for n in range(1, 31))


def test_invert_unit_is_unit(capsys):
    code, out, _ = run(["invert", GOLDEN / "e.fn"], capsys)
    assert code == 0 and out == (GOLDEN / "e.fn").read_text()


def test_invert_matches_oracle(capsys):
    code, out, _ = run(["invert", GOLDEN / "a.fn"], capsys)
    a = textio.read_function((GOLDEN / "a.fn").read_text())
    expected = brute_inverse(dict(a.items()), set(range(1, 41)), 40)
    assert code == 0 and dict(textio.read_function(out).items()) == expected


def test_encode_decode(capsys):
    code, out, _ = run(["encode", "--caps", "4,3", GOLDEN / "g.fn"], capsys)
    assert code == 0 and out.splitlines()[1:] == ["0,0 1", "0,3 -2", "1,0 -1", "1,1 4", "2,1 5"]


@pytest.mark.parametrize("args,golden", [
    (["convolve", "one.fn", "one.fn"], "convolve_one_one.out"),
    (["invert", "a.fn"], "invert_a.out"),
    (["encode", "--caps", "4,3", "g.fn"], "encode_g.out"),
])
def test_golden_files_are_stable(args, golden, capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run([args[0], *[GOLDEN / a if a.endswith(".fn") else a for a in args[1:]]], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == (GOLDEN / golden).read_text()


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "mu.fn"
    code, out, _ = run(["invert", GOLDEN / "one.fn", "--out", target], capsys)
    assert code == 0 and out == ""
    mu = textio.read_function(target.read_text())
    assert mu[30] == -1 and mu[4] == 0


def test_norm(capsys, tmp_path):
    code, out, _ = run(["norm", GOLDEN / "a.fn"], capsys)
    assert (code, out) == (0, "1\n")
    z = tmp_path / "z.fn"
    z.write_text("monoid=nstar ring=Q bound=10\n")
    code, out, _ = run(["norm", z], capsys)
    assert (code, out) == (0, "0\n")


def test_twist_and_derive(capsys, tmp_path):
    char = tmp_path / "L.fn"
    char.write_text("monoid=nstar ring=Q bound=30\n2 -1\n")
    code, out, _ = run(["twist", "--char", char, GOLDEN / "one.fn"], capsys)
    f = textio.read_function(out)
    # primes missing from the file are zeros of L
    assert code == 0 and dict(f.items()) == {1: 1, 2: -1, 4: 1, 8: -1, 16: 1}
    code, out, _ = run(["derive", "--kind", "p", "--p", "2", GOLDEN / "one.fn"], capsys)
    f = textio.read_function(out)
    assert code == 0 and f.bound == 15 and (f[1], f[2], f[3]) == (1, 2, 1)
    code, out, _ = run(["derive", "--kind", "lift", GOLDEN / "one.fn"], capsys)
    assert code == 0 and textio.read_function(out)[12] == 3


def test_ext_commands(capsys, tmp_path):
    code, out, _ = run(["ext-embed", GOLDEN / "a.fn"], capsys)
    assert code == 0 and "denominator=1" in out.splitlines()[0]
    half = tmp_path / "half.efn"
    half.write_text("monoid=nstar ring=Q bound=20 denominator=2\n1 1\n")
    three = tmp_path / "three.efn"
    three.write_text("monoid=nstar ring=Q bound=20\n3 1\n")
    code, out, _ = run(["ext-convolve", half, three], capsys)
    a = textio.read_ext_function(out)
    assert code == 0 and a.support() == [Fraction(3, 2)]


def test_eval(capsys, tmp_path):
    f = tmp_path / "d2.fn"
    f.write_text("monoid=nstar ring=Poly:2 bound=10\n2 1,0,0\n")
    code, out, _ = run(["eval", f, "--z", "1+0i", "--check-derivative"], capsys)
    z, value, disc = out.split()
    assert code == 0 and z == "1+0i" and value == "0.5+0i" and float(disc) < 1e-6


def test_check(capsys):
    code, out, _ = run(["check", GOLDEN / "a.fn"], capsys)
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(["check", GOLDEN / "a.fn", GOLDEN / "one.fn"], capsys)
    assert code == 0 and all(line.startswith("PASS") for line in out.splitlines())


def test_selftest(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    assert out.splitlines() and all(line.startswith("PASS") for line in out.splitlines())


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.fn"
    bad.write_text("monoid=nstar ring=Q bound=10\n1 x/y\n")
    code, _, err = run(["invert", bad], capsys)
    assert code == 1 and "bad.fn" in err and len(err.strip().splitlines()) == 1
    code, _, err = run(["invert", tmp_path / "missing.fn"], capsys)
    assert code == 1 and "missing.fn" in err


def test_semantic_error_exit_code(capsys, tmp_path):
    z = tmp_path / "z.fn"
    z.write_text("monoid=nstar ring=Z bound=30\n1 1\n")
    code, _, err = run(["convolve", GOLDEN / "one.fn", z], capsys)
    assert code == 2 and "z.fn" in err
    nonunit = tmp_path / "n.fn"
    nonunit.write_text("monoid=nstar ring=Z bound=30\n1 2\n")
    code, _, err = run(["invert", nonunit], capsys)
    assert code == 2 and "n.fn" in err
    code, _, err = run(["encode", GOLDEN / "one.fn"], capsys)
    assert code == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dirconv.cli", "invert", str(GOLDEN / "e.fn")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == (GOLDEN / "e.fn").read_text()
