"""Command-line interface.

Exit codes: 0 success, 1 ``contains`` said no, 2/3 ``verify`` rejected /
malformed, 64 usage, 65 bad data, 66 missing file, 70 guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .classify import enumerate_boundary
from .config import FactorKind, generator
from .containment import contains
from .errors import (ConfigurationError, FormatError, GraphError, GuardExceeded,
                     MalformedCertificate)
from .forb import forb_exact
from .hardness import parse_dimacs, reduction_matrix
from .xcompute import verify_certificate, x_of

EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_SOFTWARE = 64, 65, 66, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    return p.read_text()


def _load(path: str, fmt: str | None):
    return formats.parse_config(_read(path), fmt or formats.guess_format(path))


def _emit(text: str, out: str | None, stdout):
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)


def cmd_x(args, stdout):
    F = _load(args.file, args.format)
    res = x_of(F, jobs=args.jobs)
    stdout.write(f"X = {res.x_value}\n")
    stdout.write("avoider: " + " ".join(map(str, res.avoiding_shape)) + "\n")
    if args.certificate:
        Path(args.certificate).write_text(formats.format_certificate(res.certificate))
    return 0


def cmd_contains(args, stdout):
    F = _load(args.f_file, args.format)
    A = _load(args.a_file, args.format)
    e = contains(F, A)
    if e is None:
        stdout.write("no\n")
        return 1
    stdout.write("yes\n")
    stdout.write("rows: " + " ".join(map(str, e.row_map)) + "\n")
    return 0


def cmd_forb(args, stdout):
    F = _load(args.f_file, args.format)
    res = forb_exact(args.m, F)
    stdout.write(f"forb = {res.value}\n")
    stdout.write(formats.format_config(res.witness, args.format or "dense"))
    return 0


def cmd_reduce(args, stdout):
    G = parse_dimacs(_read(args.graph))
    F = reduction_matrix(G, args.M)
    _emit(formats.format_config(F, args.format or "dense"), args.out, stdout)
    return 0


def cmd_verify(args, stdout):
    F = _load(args.f_file, args.format)
    cert = formats.parse_certificate(_read(args.cert_file))
    try:
        ok = verify_certificate(F, cert)
    except MalformedCertificate as e:
        stdout.write(f"malformed: {e}\n")
        return 3
    stdout.write("accept\n" if ok else "reject\n")
    return 0 if ok else 2


def cmd_classify(args, stdout):
    report = enumerate_boundary(args.s, args.k, args.max_cols)
    _emit(formats.format_report(report), args.out, stdout)
    return 0


def cmd_gen(args, stdout):
    kind = FactorKind(args.kind)
    _emit(formats.format_config(generator(kind, args.r), args.format or "dense"), args.out, stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="forbconf", description="Exact tools for forbidden configurations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=["dense", "mult"], default=None,
                        help="file format (default: by extension, .fcm = mult)")

    sp = sub.add_parser("x", help="compute X(F)")
    sp.add_argument("file")
    sp.add_argument("--certificate", metavar="OUT")
    sp.add_argument("--jobs", type=int, default=1)
    fmt(sp)
    sp.set_defaults(func=cmd_x)

    sp = sub.add_parser("contains", help="decide F < A")
    sp.add_argument("f_file")
    sp.add_argument("a_file")
    fmt(sp)
    sp.set_defaults(func=cmd_contains)

    sp = sub.add_parser("forb", help="exact forb(m, F) for m <= 5")
    sp.add_argument("m", type=int)
    sp.add_argument("f_file")
    fmt(sp)
    sp.set_defaults(func=cmd_forb)

    sp = sub.add_parser("reduce", help="build F(G) from a DIMACS graph")
    sp.add_argument("graph")
    sp.add_argument("--M", type=int, default=None)
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("verify", help="check an X-CERT certificate")
    sp.add_argument("f_file")
    sp.add_argument("cert_file")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="boundary configurations with X = K on S rows")
    sp.add_argument("s", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--max-cols", type=int, default=6)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("gen", help="print I_R, I^c_R or T_R")
    sp.add_argument("kind", choices=["identity", "identityc", "tower"])
    sp.add_argument("r", type=int)
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_gen)
    return p


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args, stdout)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EX_USAGE
    except FileNotFoundError as e:
        stderr.write(f"no such file: {e.filename or e}\n")
        return EX_NOINPUT
    except GuardExceeded as e:
        stderr.write(f"guard exceeded: {e}\n")
        return EX_SOFTWARE
    except (FormatError, ConfigurationError, GraphError) as e:
        stderr.write(f"bad input: {e}\n")
        return EX_DATAERR
    except MalformedCertificate as e:
        stderr.write(f"malformed certificate: {e}\n")
        return 3


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
