"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage errors,
malformed input files, or exceeded size guards.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraFormatError, load_algebra, validate
from .arith import format_scalar
from .determinant import build_det_data, check_sE
from .ideal import ideal_M_generators, variable_names, variety_points, homomorphism_points
from .loday import TruncatedMorphism, check_functoriality, loday_map
from .multilinear import BudgetError, ShapeError, multi_indices
from .naturality import (
    check_all_squares,
    counterexample_algebras,
    counterexample_morphism,
    is_natural,
    perp_test,
    solve_hom_space,
)
from .omega import Surjection
from .polys import buchberger, format_polynomial
from .theorem import summary_lines, theorem_report


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    print(line)


def _idx(idx) -> str:
    return "(" + ",".join(str(x + 1) for x in idx) + ")" if idx else "()"


def _surjection(text: str) -> Surjection:
    try:
        return Surjection.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad surjection {text!r}: {exc}") from exc


def cmd_algebra_validate(args) -> int:
    a = load_algebra(args.file)
    rep = validate(a)
    _out(f"algebra {a.name} (dim {a.dim})")
    for line in rep.lines():
        _out(line)
    return 0 if rep.ok else 1


def cmd_loday_map(args) -> int:
    a = load_algebra(args.A)
    h = _surjection(args.h)
    t = loday_map(a, h)
    srcs = list(multi_indices(a.dim, h.domain_size))
    dsts = list(multi_indices(a.dim, h.codomain_size))
    _out(f"L_{a.name}({h}): {len(dsts)}x{len(srcs)} matrix")
    _out("cols: " + " ".join(_idx(s) for s in srcs))
    for d in dsts:
        _out(f"{_idx(d)}: " + " ".join(format_scalar(t[d, s]) for s in srcs))
    return 0


def cmd_loday_check(args) -> int:
    a = load_algebra(args.A)
    checked, failures = check_functoriality(a, args.max_domain)
    if failures:
        f = failures[0]
        _out(f"FAIL: L({f.h}∘{f.g}) != L({f.h})∘L({f.g}) ({len(failures)} failures)")
        return 1
    _out(f"PASS: functorial on {checked} identities and composable pairs "
         f"(domain <= {args.max_domain})")
    return 0


def cmd_nat_solve(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    space = solve_hom_space(a, b, args.N)
    _out(f"truncated morphism space {a.name} -> {b.name}, N = {args.N}: dimension {space.dimension}")
    for k, vec in enumerate(space.vectors):
        terms = []
        for c, v in vec.items():
            n, dst, src = space.layout.unrank(c)
            terms.append(f"s{n}[{_idx(dst)},{_idx(src)}]={format_scalar(v)}")
        _out(f"basis {k + 1}: " + " ".join(terms))
    if args.output:
        data = [m.to_json() for m in space.morphisms()]
        Path(args.output).write_text(json.dumps(data) + "\n", encoding="utf-8")
    return 0


def cmd_nat_verify(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    s = TruncatedMorphism.load(args.s)
    rep = is_natural(a, b, s)
    for line in rep.lines():
        _out(line)
    squares = check_all_squares(a, b, s)
    _out(f"{'PASS' if squares.ok else 'FAIL'}: direct naturality on {squares.checked} surjection squares"
         + ("" if squares.ok else f", first failure at {squares.failures[0]}"))
    ok = rep.ok and squares.ok
    if not rep.non_equivariant_levels:
        perp = perp_test(a, b, s)
        for line in perp.lines():
            _out(line)
        ok = ok and perp.ok
    return 0 if ok else 1


def cmd_nat_counterexample(args) -> int:
    a, b = counterexample_algebras()
    s = counterexample_morphism(args.N)
    rep = is_natural(a, b, s)
    squares = check_all_squares(a, b, s)
    inv = s.invertible_levels()
    if args.output:
        s.save(args.output)
    if rep.ok and squares.ok and all(inv):
        _out(f"PASS: natural at all {squares.checked} surjection squares, all levels invertible")
        return 0
    for line in rep.lines():
        _out(line)
    _out(f"FAIL: {len(squares.failures)} failing squares, invertible levels {inv}")
    return 1


def cmd_ideal_groebner(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    names = variable_names(a.dim, b.dim)
    gb = buchberger(ideal_M_generators(a, b), "grevlex", a.dim * b.dim)
    for g in gb.polys:
        _out(format_polynomial(g, names))
    if not gb.polys:
        _out("0")
    return 0


def cmd_ideal_points(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    pts = variety_points(a, b, args.p)
    direct = homomorphism_points(a, b, args.p)
    _out(f"{len(pts)} zeros of M over F_{args.p}")
    for u in pts:
        _out(json.dumps([[int(x) for x in row] for row in u]))
    same = pts == direct
    _out(f"{'PASS' if same else 'FAIL'}: zeros of M coincide with homomorphisms")
    return 0 if same else 1


def cmd_det_identity(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    s = TruncatedMorphism.load(args.s)
    data = build_det_data(a, b)
    chk = check_sE(data, s, args.r)
    def show(t):
        return " + ".join(f"{format_scalar(v)}*{_idx(k)}" for k, v in sorted(t.coords.items())) or "0"
    _out(f"left  s_{data.m * args.r}(E^{args.r}) = {show(chk.left)}")
    _out(f"right <xi(s), det^{args.r}> F^{args.r} = {show(chk.right)}")
    _out("PASS" if chk.ok else "FAIL")
    return 0 if chk.ok else 1


def cmd_theorem(args) -> int:
    a, b = load_algebra(args.A), load_algebra(args.B)
    try:
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"bad prime list {args.primes!r}") from exc
    s = TruncatedMorphism.load(args.s) if args.s else None
    report = theorem_report(a, b, args.N, args.rmax, primes, s)
    if args.json:
        _out(json.dumps(report, indent=1, ensure_ascii=False))
    else:
        for line in summary_lines(report):
            _out(line)
    return 0 if report["consistent"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omegarep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    alg = sub.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    v = alg.add_parser("validate")
    v.add_argument("file")
    v.set_defaults(func=cmd_algebra_validate)

    lod = sub.add_parser("loday").add_subparsers(dest="cmd", required=True)
    m = lod.add_parser("map", add_help=False)
    m.add_argument("--help", action="help", help="show this help message and exit")
    m.add_argument("-A", required=True)
    m.add_argument("-h", "--surjection", dest="h", required=True)
    m.set_defaults(func=cmd_loday_map)
    c = lod.add_parser("check")
    c.add_argument("-A", required=True)
    c.add_argument("--max-domain", type=int, default=4)
    c.set_defaults(func=cmd_loday_check)

    nat = sub.add_parser("nat").add_subparsers(dest="cmd", required=True)
    s = nat.add_parser("solve")
    s.add_argument("-A", required=True)
    s.add_argument("-B", required=True)
    s.add_argument("-N", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_nat_solve)
    s = nat.add_parser("verify")
    s.add_argument("-A", required=True)
    s.add_argument("-B", required=True)
    s.add_argument("-s", required=True)
    s.set_defaults(func=cmd_nat_verify)
    s = nat.add_parser("counterexample")
    s.add_argument("-N", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_nat_counterexample)

    idl = sub.add_parser("ideal").add_subparsers(dest="cmd", required=True)
    g = idl.add_parser("groebner")
    g.add_argument("-A", required=True)
    g.add_argument("-B", required=True)
    g.set_defaults(func=cmd_ideal_groebner)
    g = idl.add_parser("points")
    g.add_argument("-A", required=True)
    g.add_argument("-B", required=True)
    g.add_argument("-p", type=int, required=True)
    g.set_defaults(func=cmd_ideal_points)

    det = sub.add_parser("det").add_subparsers(dest="cmd", required=True)
    d = det.add_parser("identity")
    d.add_argument("-A", required=True)
    d.add_argument("-B", required=True)
    d.add_argument("-s", required=True)
    d.add_argument("-r", type=int, required=True)
    d.set_defaults(func=cmd_det_identity)

    t = sub.add_parser("theorem")
    t.add_argument("-A", required=True)
    t.add_argument("-B", required=True)
    t.add_argument("-N", type=int, default=3)
    t.add_argument("--rmax", type=int, default=10)
    t.add_argument("--primes", default="3,5,7")
    t.add_argument("-s", help="optional truncated morphism file")
    t.add_argument("--json", action="store_true", help="emit the report as JSON")
    t.set_defaults(func=cmd_theorem)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, AlgebraFormatError, ShapeError, BudgetError, OSError,
            ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
