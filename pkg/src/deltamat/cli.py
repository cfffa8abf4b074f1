"""Command-line interface.

Exit codes: 0 affirmative, 1 negative verdict, 2 input error, 3 the two
binary tests disagree.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import core
from .binary import find_excluded_minor, has_minor, is_binary_matrix_method, enumerate_minors
from .census import MAX_CENSUS_N, enumerate_classes, write_catalog
from .core import DeltaMatroidError, ExchangeViolation, check_symmetric_exchange, format_set
from .formats import (
    DmSyntaxError,
    format_dm,
    format_set_arg,
    parse_dm,
    parse_set_arg,
    parse_set_system,
)
from .gf2 import format_graph
from .twistpoly import characterize_monomial, make_free, make_odd_complete, twist_polynomial

OK, NEGATIVE, INPUT_ERROR, DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load(path: str):
    try:
        return parse_dm(_read(path))
    except (DmSyntaxError, DeltaMatroidError) as e:
        raise InputError(f"{path}: {e}") from None


def _emit(args, d) -> None:
    sys.stdout.write(format_dm(d, args.format))


def cmd_check(args) -> int:
    try:
        s = parse_set_system(_read(args.file))
    except DmSyntaxError as e:
        raise InputError(f"{args.file}: {e}") from None
    if s.word == 0:
        print("NOT-DELTA-MATROID: empty family")
        return NEGATIVE
    w = check_symmetric_exchange(s)
    if w is not None:
        print(f"NOT-DELTA-MATROID: {w}")
        return NEGATIVE
    print("OK")
    return OK


def cmd_op(args) -> int:
    d = _load(args.file)
    if args.op == "dual":
        _emit(args, core.dual(d))
        return OK
    if args.args is None:
        raise InputError(f"op {args.op} needs --args")
    try:
        a = parse_set_arg(args.args, d.n)
    except ValueError as e:
        raise InputError(str(e)) from None
    fn = {
        "twist": core.twist,
        "delete": core.delete_set,
        "contract": core.contract_set,
        "restrict": core.restrict,
    }[args.op]
    _emit(args, fn(d, a))
    return OK


def cmd_sum(args) -> int:
    _emit(args, core.direct_sum(_load(args.file1), _load(args.file2)))
    return OK


def cmd_width(args) -> int:
    print(core.width(_load(args.file)))
    return OK


def cmd_poly(args) -> int:
    print(twist_polynomial(_load(args.file)))
    return OK


def cmd_monomial(args) -> int:
    d = _load(args.file)
    poly = twist_polynomial(d)
    if not poly.is_monomial:
        print(f"NOT-MONOMIAL {poly}")
        return NEGATIVE
    print(f"MONOMIAL {poly}")
    if core.is_normal(d):
        part = characterize_monomial(d)
        if part is not None:
            print(f"free: {format_set(part.free_part)}")
            for b in part.odd_blocks:
                print(f"block: {format_set(b)}")
    return OK


def cmd_binary(args) -> int:
    d = _load(args.file)
    verdicts = {}
    if args.method in ("matrix", "both"):
        w = is_binary_matrix_method(d)
        verdicts["matrix"] = w is not None
        if w is not None:
            print(f"matrix: BINARY twist={format_set_arg(w.twist_set)}")
        else:
            print("matrix: NOT-BINARY")
    if args.method in ("minor", "both"):
        hit = find_excluded_minor(d)
        verdicts["minor"] = hit is None
        if hit is None:
            print("minor: BINARY")
        else:
            i, w = hit
            print(f"minor: NOT-BINARY excluded-minor={i + 1} {w}")
    if len(set(verdicts.values())) > 1:
        print("methods disagree", file=sys.stderr)
        return DISAGREE
    return OK if all(verdicts.values()) else NEGATIVE


def cmd_graph(args) -> int:
    w = is_binary_matrix_method(_load(args.file))
    if w is None:
        print("NOT-BINARY")
        return NEGATIVE
    print(f"twist: {format_set_arg(w.twist_set)}")
    sys.stdout.write(format_graph(w.matrix))
    return OK


def cmd_minors(args) -> int:
    d = _load(args.file)
    minors = sorted(enumerate_minors(d), key=lambda m: (m.n, m.word))
    for m in minors:
        sys.stdout.write(format_dm(m, "compact"))
    print(f"{len(minors)} minors up to isomorphism", file=sys.stderr)
    return OK


def cmd_find_minor(args) -> int:
    d = _load(args.file)
    target = _load(args.target)
    w = has_minor(d, target)
    if w is None:
        print("NONE")
        return NEGATIVE
    print(w)
    return OK


def cmd_census(args) -> int:
    if not 1 <= args.n <= MAX_CENSUS_N:
        raise InputError(f"census supports 1 <= n <= {MAX_CENSUS_N}")
    records = enumerate_classes(args.n, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_catalog(records, fh, args.n)
    else:
        write_catalog(records, sys.stdout, args.n)
    binary = sum(r.binary for r in records)
    monomial = sum(r.monomial for r in records)
    print(f"n={args.n} classes={len(records)} binary={binary} monomial={monomial}", file=sys.stderr)
    return OK


def cmd_gen(args) -> int:
    try:
        d = make_odd_complete(args.size) if args.family == "odd-complete" else make_free(args.size)
    except DeltaMatroidError as e:
        raise InputError(str(e)) from None
    _emit(args, d)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltamat", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("block", "compact"), default="block",
                   help="output style for delta-matroids")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="test the symmetric exchange axiom")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("op", help="twist / delete / contract / restrict / dual")
    s.add_argument("op", choices=("twist", "delete", "contract", "restrict", "dual"))
    s.add_argument("--args", help="1-based comma list, 0 for the empty set")
    s.add_argument("file")
    s.set_defaults(func=cmd_op)

    s = sub.add_parser("sum", help="direct sum")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_sum)

    for name, fn, text in (
        ("width", cmd_width, "width"),
        ("poly", cmd_poly, "twist polynomial"),
        ("monomial", cmd_monomial, "twist monomial test"),
        ("graph", cmd_graph, "representing looped simple graph"),
        ("minors", cmd_minors, "all minors up to isomorphism"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("binary", help="binary test")
    s.add_argument("--method", choices=("matrix", "minor", "both"), default="matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_binary)

    s = sub.add_parser("find-minor", help="search for a minor isomorphic to a target")
    s.add_argument("file")
    s.add_argument("target")
    s.set_defaults(func=cmd_find_minor)

    s = sub.add_parser("census", help="enumerate classes up to isomorphism and twisting")
    s.add_argument("n", type=int)
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("gen", help="generate odd-complete or free families")
    s.add_argument("family", choices=("odd-complete", "free"))
    s.add_argument("size", type=int)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (DeltaMatroidError, ExchangeViolation) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
