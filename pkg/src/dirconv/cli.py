"""Command-line front end: ``dirconv <verb> [options] files...``.

Exit status is 0 on success, 1 on parse errors and 2 on semantic errors
(incompatible rings or monoids, non-units, failed checks).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import textio
from .arith import ArithFunction, ZeroUpToBound, fn_add, fn_convolve, fn_invert, fn_norm, fn_twist, unit
from .derivations import (
    POLY_DERIVATIVE,
    ZERO,
    DerivationSpec,
    holo_derivation,
    lift_derivation,
    log_derivation,
    omega_character,
    p_derivation,
)
from .errors import DirconvError, ParseError, SemanticError
from .grothendieck import ext_convolve, ext_embed
from .monoid import PrimeGenerated, parse_monoid
from .powerseries import LaurentSeries, iso_decode, iso_encode, laurent_decode
from .rings import ComplexField, PolynomialRing, parse_ring
from .selftest import run_selftest
from .series_eval import check_derivative_identity, eval_F


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"dirconv: error: {message}", file=sys.stderr)
        raise SystemExit(1)


class _InputError(Exception):
    """Wraps a library error with the path of the input that caused it."""

    def __init__(self, path, err):
        super().__init__(f"{path}: {err}")
        self.err = err


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError(path, ParseError(exc.strerror or str(exc))) from None


def _defaults(args) -> dict:
    out = {}
    try:
        if args.ring is not None:
            out["ring"] = parse_ring(args.ring)
        if args.monoid is not None:
            out["monoid"] = parse_monoid(args.monoid)
    except DirconvError as exc:
        raise _InputError("command line", exc) from None
    if args.bound is not None:
        if args.bound < 1:
            raise _InputError("command line", ParseError("--bound must be positive"))
        out["bound"] = args.bound
    return out


def _load(path: str, args, reader=textio.read_function):
    """Read an input file; header fields win, flags fill gaps and must agree."""
    text = _read(path)
    defaults = _defaults(args)
    try:
        obj = reader(text, defaults)
    except DirconvError as exc:
        raise _InputError(path, exc) from None
    except (ValueError, TypeError) as exc:
        raise _InputError(path, ParseError(str(exc))) from None
    core = getattr(obj, "core", obj)
    if "ring" in defaults and core.ring != defaults["ring"]:
        raise _InputError(path, SemanticError(f"ring {core.ring} conflicts with --ring {defaults['ring']}"))
    if "monoid" in defaults and core.spec != defaults["monoid"]:
        raise _InputError(path, SemanticError(f"monoid {core.spec} conflicts with --monoid {defaults['monoid']}"))
    if "bound" in defaults and isinstance(obj, ArithFunction) and obj.bound > defaults["bound"]:
        obj = obj.truncate(defaults["bound"])
    return obj


def _pair(args, reader=textio.read_function):
    a = _load(args.files[0], args, reader)
    b = _load(args.files[1], args, reader)
    return a, b


def _guard(paths, fn, *xs):
    try:
        return fn(*xs)
    except DirconvError as exc:
        raise _InputError(" ".join(paths), exc) from None


def cmd_convolve(args):
    a, b = _pair(args)
    return textio.write_function(_guard(args.files, fn_convolve, a, b))


def cmd_add(args):
    a, b = _pair(args)
    return textio.write_function(_guard(args.files, fn_add, a, b))


def cmd_invert(args):
    a = _load(args.file, args)
    return textio.write_function(_guard([args.file], fn_invert, a))


def cmd_norm(args):
    a = _load(args.file, args)
    n = fn_norm(a)
    return "0\n" if n is ZeroUpToBound else f"{n}\n"


def cmd_twist(args):
    char = _load(args.char, args)
    a = _load(args.file, args)
    L = _guard([args.char], textio.character_from_function, char)
    return textio.write_function(_guard([args.char, args.file], fn_twist, L, a))


def cmd_derive(args):
    a = _load(args.file, args)
    paths = [args.file]
    base = POLY_DERIVATIVE if args.base == "poly" else ZERO
    if args.kind == "lift":
        if args.delta:
            delta_fn = _load(args.delta, args)
            paths.append(args.delta)
            delta = _guard([args.delta], textio.additive_character_from_function, delta_fn)
        else:
            delta = omega_character(a.ring)
        dspec = _guard(paths, DerivationSpec, delta, base)
        return textio.write_function(_guard(paths, lift_derivation, dspec, a).to_function())
    if args.kind == "p":
        if args.p is None:
            raise _InputError("command line", ParseError("--kind p needs --p"))
        return textio.write_function(_guard(paths, p_derivation, args.p, a, base))
    if args.kind == "log":
        return textio.write_function(_guard(paths, log_derivation, a))
    return textio.write_function(_guard(paths, holo_derivation, a))


def cmd_ext_embed(args):
    a = _load(args.file, args)
    return textio.write_ext_function(ext_embed(a))


def cmd_ext_convolve(args):
    a, b = _pair(args, textio.read_ext_function)
    return textio.write_ext_function(_guard(args.files, ext_convolve, a, b))


def _parse_caps(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise _InputError("command line", ParseError(f"bad --caps {text!r}")) from None


def cmd_encode(args):
    a = _load(args.file, args)
    return textio.write_series(_guard([args.file], iso_encode, a, _parse_caps(args.caps)))


def cmd_decode(args):
    try:
        s = textio.read_series(_read(args.file))
    except DirconvError as exc:
        raise _InputError(args.file, exc) from None
    if isinstance(s, LaurentSeries):
        spec = PrimeGenerated(s.nvars)
        return textio.write_ext_function(_guard([args.file], laurent_decode, s, spec))
    return textio.write_function(_guard([args.file], iso_decode, s))


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def cmd_eval(args):
    a = _load(args.file, args)
    if not (isinstance(a.ring, ComplexField) or isinstance(a.ring, PolynomialRing)):
        raise _InputError(args.file, SemanticError(f"eval needs ring C or Poly:k, got {a.ring}"))
    out = []
    for lit in args.z:
        try:
            z = ComplexField().parse(lit)
        except DirconvError as exc:
            raise _InputError("command line", exc) from None
        value = _guard([args.file], eval_F, a, z).value
        line = f"{_fmt_complex(z)} {_fmt_complex(value)}"
        if args.check_derivative:
            if not isinstance(a.ring, PolynomialRing):
                raise _InputError(args.file, SemanticError("--check-derivative needs a Poly:k ring"))
            line += f" {check_derivative_identity(a, z, args.h).discrepancy:.12g}"
        out.append(line)
    return "\n".join(out) + "\n"


def cmd_check(args):
    """Identity report: a * a^-1 = e for one file; commutativity and
    norm multiplicativity for two."""
    a = _load(args.files[0], args)
    lines, ok = [], True
    if len(args.files) == 1:
        try:
            prod = fn_convolve(a, fn_invert(a))
            passed = prod.equals(unit(a.spec, a.ring, a.bound))
        except DirconvError:
            passed = False
        lines.append(f"{'PASS' if passed else 'FAIL'} a * a^-1 = e")
        ok &= passed
    else:
        b = _load(args.files[1], args)
        ab = _guard(args.files, fn_convolve, a, b)
        passed = ab.equals(fn_convolve(b, a))
        lines.append(f"{'PASS' if passed else 'FAIL'} a * b = b * a")
        ok &= passed
        if a.ring.is_domain:
            na, nb, nab = fn_norm(a), fn_norm(b), fn_norm(ab)
            if ZeroUpToBound not in (na, nb, nab):
                passed = nab == na * nb
                lines.append(f"{'PASS' if passed else 'FAIL'} N(a * b) = N(a) N(b)")
                ok &= passed
    text = "\n".join(lines) + "\n"
    if not ok:
        raise _CheckFailed(text)
    return text


class _CheckFailed(Exception):
    pass


def cmd_selftest(args):
    ok, lines = run_selftest()
    text = "\n".join(lines) + "\n"
    if not ok:
        raise _CheckFailed(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Q, Z, Zmod:m, C or Poly:k (default Q)")
    common.add_argument("--bound", type=int, help="truncation bound (default 1024)")
    common.add_argument("--monoid", help="nstar, gamma(k), gen(a,b,...) or affine[...]@primes(...)")
    common.add_argument("--out", help="write the result here instead of stdout")

    parser = _Parser(prog="dirconv", description="Dirichlet convolution rings over submonoids of N*.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    verb("convolve", cmd_convolve, "Dirichlet product of two functions").add_argument("files", nargs=2)
    verb("add", cmd_add, "sum of two functions").add_argument("files", nargs=2)
    verb("invert", cmd_invert, "convolution inverse").add_argument("file")
    verb("norm", cmd_norm, "smallest n with a nonzero value (0 if none)").add_argument("file")
    p = verb("twist", cmd_twist, "n -> L(n) a(n) for totally multiplicative L")
    p.add_argument("--char", required=True, help="function file giving L at primes")
    p.add_argument("file")
    p = verb("derive", cmd_derive, "apply a derivation")
    p.add_argument("--kind", choices=["lift", "p", "log", "holo"], required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--delta", help="function file giving the additive character at primes (default 1)")
    p.add_argument("--base", choices=["zero", "poly"], default="zero")
    p.add_argument("file")
    verb("ext-embed", cmd_ext_embed, "extend by zero to the Grothendieck group").add_argument("file")
    verb("ext-convolve", cmd_ext_convolve, "product in the extension ring").add_argument("files", nargs=2)
    p = verb("encode", cmd_encode, "power series of a gamma(k) function")
    p.add_argument("--caps", help="comma-separated exponent caps")
    p.add_argument("file")
    verb("decode", cmd_decode, "function from a (Laurent) series file").add_argument("file")
    p = verb("eval", cmd_eval, "evaluate the Dirichlet series")
    p.add_argument("--z", action="append", required=True, help="complex point a+bi (repeatable)")
    p.add_argument("--check-derivative", action="store_true")
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("file")
    verb("check", cmd_check, "identity checks on one or two functions").add_argument("files", nargs="+")
    verb("selftest", cmd_selftest, "built-in identity suite")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except _CheckFailed as exc:
        _emit(str(exc), args.out)
        return 2
    except _InputError as exc:
        print(f"dirconv: error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc.err, ParseError) else 2
    except DirconvError as exc:
        print(f"dirconv: error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc, ParseError) else 2
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
