"""Command-line interface: `persalg <subcommand> ...`."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional, Sequence

from . import catalog
from .complexes import (FreeComplex, be_diagram_check, be_multipliers, generic_complex_ring,
                        rank_conditions)
from .determinantal import Presentation, RankLocus, fitting_ideal
from .persistence import (Bifiltration, flag_bifiltration, grid_points, homology_dim,
                          presentation_of_homology, rank_invariant, rank_invariant_table, top)
from .polymatrix import PolyMatrix, exterior_power, generic_matrix, matmul, minors, rank
from .polyring import RingCtx
from .selftest import run_selftest
from .tableaux import Bitableau, FormalSum, pluecker_relations, straighten
from .varieties import RankedFormat, enumerate_standard, format_multitableau, hilbert_function_oracle, tableau_of


class UsageError(Exception):
    """Bad combination of arguments detected after parsing."""


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _degrees(text: str) -> List[int]:
    m = re.fullmatch(r"(\d+)-(\d+)", text.strip())
    if m:
        return list(range(int(m.group(1)), int(m.group(2)) + 1))
    return _int_list(text)


def _var_sort_key(name: str):
    m = re.fullmatch(r"(.*?)(\d+)", name)
    return (m.group(1), int(m.group(2))) if m else (name, -1)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _ring_for(datas: Sequence[dict], modulus: int = 0, names: Optional[Sequence[str]] = None) -> RingCtx:
    """A ring containing every variable named in the given matrix JSON documents."""
    if names:
        return RingCtx(list(names), modulus)
    found = set()
    for data in datas:
        found.update(data.get("variables", []))
        for row in data.get("entries", []):
            for entry in row:
                found.update(re.findall(r"[A-Za-z]\w*", str(entry)))
    if not found:
        found = {"x"}
    return RingCtx(sorted(found, key=_var_sort_key), modulus)


def _load_matrices(paths: Sequence[str], modulus: int = 0, names=None) -> List[PolyMatrix]:
    datas = [_load_json(p) for p in paths]
    ring = _ring_for(datas, modulus, names)
    return [PolyMatrix.from_json(ring, d) for d in datas]


def _emit_matrix(m: PolyMatrix, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(m.to_json()) + "\n")
    else:
        out.write(m.format("m2") + "\n")


def _emit_polys(polys, fmt: str, out, empty: str = "zero ideal"):
    polys = list(polys)
    if fmt == "json":
        out.write(json.dumps([p.format("m2") for p in polys]) + "\n")
    elif not polys:
        out.write(empty + "\n")
    else:
        for p in polys:
            out.write(p.format("m2") + "\n")


# -- subcommands -----------------------------------------------------------------


def cmd_generic_matrix(args, out):
    ring = RingCtx.from_blocks([(args.prefix, args.vars)], args.modulus)
    if args.rows * args.cols + args.start - 1 > args.vars:
        raise ValueError("not enough variables for the requested matrix")
    _emit_matrix(generic_matrix(ring, args.start - 1, args.rows, args.cols), args.format, out)


def cmd_matmul(args, out):
    a, b = _load_matrices([args.a, args.b], args.modulus)
    _emit_matrix(matmul(a, b), args.format, out)


def cmd_extpower(args, out):
    (m,) = _load_matrices([args.matrix], args.modulus)
    _emit_matrix(exterior_power(args.k, m), args.format, out)


def cmd_minors(args, out):
    (m,) = _load_matrices([args.matrix], args.modulus)
    polys = minors(args.k, m)
    if args.format == "text" and polys:
        out.write(PolyMatrix(m.ring, [polys], len(polys)).format("m2") + "\n")
    else:
        _emit_polys(polys, args.format, out)


def cmd_rank(args, out):
    (m,) = _load_matrices([args.matrix], args.modulus)
    out.write(f"{rank(m, seed=args.seed)}\n")


def cmd_fitting(args, out):
    (m,) = _load_matrices([args.matrix], args.modulus)
    gens = fitting_ideal(Presentation(m), args.j)
    if len(gens) == 1 and gens[0] == m.ring.one():
        out.write("unit ideal\n" if args.format == "text" else json.dumps(["1"]) + "\n")
        return
    _emit_polys([g for g in gens if not g.is_zero()], args.format, out)


def _load_complex(args) -> FreeComplex:
    if args.example:
        return {"two-generator": catalog.two_generator_complex,
                "hilbert-burch": catalog.hilbert_burch_complex,
                "resolution": catalog.minors_resolution}[args.example]()
    if not args.complex:
        raise UsageError("give --complex FILE or --example NAME")
    data = _load_json(args.complex)
    ring = _ring_for(data.get("matrices", []), args.modulus, data.get("variables"))
    return FreeComplex.from_json(ring, data)


def cmd_be_multipliers(args, out):
    c = _load_complex(args)
    table = be_multipliers(c, args.ranks) if args.ranks else be_multipliers(c)
    ok = be_diagram_check(c, table)
    if args.format == "json":
        out.write(json.dumps({"ranks": table.ranks, "check": ok,
                              "levels": {str(k): {",".join(map(str, a)): v.format("m2")
                                                  for a, v in sorted(table.values[k].items())}
                                         for k in sorted(table.values)}}) + "\n")
        return
    out.write(f"r = {','.join(map(str, table.ranks))}\n")
    for k in sorted(table.values):
        if k > c.length:
            continue
        for a, v in sorted(table.values[k].items()):
            out.write(f"<{','.join(map(str, a))}>_{k} = {v.format('m2')}\n")
    out.write(f"diagram check: {'pass' if ok else 'FAIL'}\n")
    if not ok:
        raise ArithmeticError("multiplier diagram check failed")


def cmd_rank_conditions(args, out):
    out.write("r = " + ",".join(map(str, rank_conditions(args.betti))) + "\n")


def cmd_generic_complex(args, out):
    gc = generic_complex_ring(args.betti, args.prefix, args.modulus)
    blocks = gc.products()
    chosen = [args.block] if args.block is not None else range(1, len(blocks) + 1)
    for k in chosen:
        if not 1 <= k <= len(blocks):
            raise ValueError(f"block index must lie in 1..{len(blocks)}")
        if args.format == "text":
            out.write(f"D_{k} D_{k + 1} =\n")
        _emit_matrix(blocks[k - 1], args.format, out)


def _format_of(args) -> RankedFormat:
    return RankedFormat(tuple(args.dims), tuple(args.ranks))


def cmd_standard_monomials(args, out):
    fmt = _format_of(args)
    mons = list(enumerate_standard(fmt, args.degree, exclude_vmax=args.exclude_vmax))
    if args.count:
        out.write(f"{len(mons)}\n")
        return
    if args.format == "json":
        out.write(json.dumps([[repr(s) for s in m] for m in mons]) + "\n")
        return
    for m in mons:
        text = " ".join(repr(s) for s in m) or "1"
        out.write(f"{text} {format_multitableau(tableau_of(m, fmt))}\n")


_BITABLEAU = re.compile(r"\(\s*([^|()]*)\|([^|()]*)\)")


def _parse_tableau(text: str):
    rows = []
    for row in text.strip().split("/"):
        row = row.strip()
        rows.append([int(x) for x in row.split(",")] if "," in row else [int(ch) for ch in row])
    return rows


def cmd_straighten(args, out):
    total = FormalSum()
    text = args.bitableau.strip()
    pos = 0
    for m in re.finditer(r"([+-]?\s*\d*)\s*" + _BITABLEAU.pattern, text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        coeff = m.group(1).replace(" ", "")
        coeff = int(coeff + "1") if coeff in ("", "+", "-") else int(coeff)
        total.add(Bitableau(_parse_tableau(m.group(2)), _parse_tableau(m.group(3))), coeff)
    if pos != len(text) or pos == 0:
        raise ValueError(f"cannot parse bitableau sum {text!r}")
    result = straighten(total, args.rows, args.cols)
    if args.format == "json":
        out.write(json.dumps([[c, repr(t)] for t, c in result.items()]) + "\n")
        return
    if not result:
        out.write("0\n")
    for t, c in result.items():
        out.write(f"{c:+d} {t!r}\n")


def cmd_plucker(args, out):
    _, rels = pluecker_relations(args.r, args.k, args.modulus)
    _emit_polys(rels, args.format, out, empty="no relations")


def cmd_hilbert(args, out):
    if args.locus:
        m, n, r = args.locus
        values = RankLocus(m, n, r).hilbert_function(args.degrees, args.modulus)
    elif args.dims:
        values = hilbert_function_oracle(_format_of(args), args.degrees, args.modulus)
    else:
        raise UsageError("give --locus M,N,R or --dims/--ranks")
    if args.format == "json":
        out.write(json.dumps(dict(zip(map(str, args.degrees), values))) + "\n")
    else:
        for d, v in zip(args.degrees, values):
            out.write(f"{d} {v}\n")


def cmd_bifiltration(args, out):
    if args.action == "build":
        data = _load_json(args.snapshots)
        snaps = data["snapshots"] if isinstance(data, dict) else data
        b = flag_bifiltration(snaps, args.thresholds, max_dim=args.max_dim)
        out.write(json.dumps(b.to_json()) + "\n")
        for w in b.warnings:
            print(f"warning: {w}", file=sys.stderr)
        return
    if not args.bifiltration:
        raise UsageError("give --bifiltration FILE")
    b = Bifiltration.from_json(_load_json(args.bifiltration))
    if args.action == "rank-invariant":
        degrees = [args.degree] if args.degree is not None else None
        if args.u is not None and args.v is not None:
            val = rank_invariant(b, args.degree or 0, args.u, args.v, args.prime)
            out.write(f"{val}\n")
            return
        table = rank_invariant_table(b, degrees, args.prime)
        if args.format == "json":
            out.write(json.dumps([{"i": i, "u": list(u), "v": list(v), "rank": r}
                                  for (i, u, v), r in table.items()]) + "\n")
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["i", "u", "v", "rank"])
            for (i, u, v), r in table.items():
                writer.writerow([i, ",".join(map(str, u)), ",".join(map(str, v)), r])
            out.write(buf.getvalue())
        return
    f = presentation_of_homology(b, args.degree or 0, args.prime)
    gens = top(f, b.grid, args.prime)
    report = {"degree": args.degree or 0,
              "generators": [list(g) for g in f.target.basis_grades],
              "relations": [list(g) for g in f.source.basis_grades],
              "top": [[list(g), m] for g, m in gens],
              "matrix": f.matrix.to_json()["entries"],
              "dimensions": {",".join(map(str, u)): homology_dim(b, args.degree or 0, u, args.prime)
                             for u in grid_points(b.grid)}}
    if args.format == "json":
        out.write(json.dumps(report) + "\n")
    else:
        out.write("generators: " + " ".join(str(tuple(g)) for g in report["generators"]) + "\n")
        out.write("relations: " + " ".join(str(tuple(g)) for g in report["relations"]) + "\n")
        out.write(f.matrix.format("m2") + "\n" if f.matrix.ncols and f.matrix.nrows else "")


def cmd_selftest(args, out):
    results = run_selftest(args.filter, args.golden_dir)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.group}/{r.name}"
        if r.detail:
            line += f": {r.detail}"
        out.write(line + "\n")
        failed += not r.passed
    out.write(f"{len(results) - failed}/{len(results)} passed\n")
    if failed:
        raise AssertionError(f"{failed} selftest case(s) failed")


# -- parser ----------------------------------------------------------------------------


def _add_format(p, choices=("text", "json")):
    p.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="persalg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generic-matrix", help="generic matrix filled column by column")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--start", type=int, default=1, help="index of the first variable used")
    p.add_argument("--prefix", default="x")
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_generic_matrix)

    p = sub.add_parser("matmul", help="product of two matrices given as JSON")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_matmul)

    for name, func, help_text in (("extpower", cmd_extpower, "k-th exterior power"),
                                  ("minors", cmd_minors, "k x k minors in colex order")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--matrix", required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--modulus", type=int, default=0)
        _add_format(p)
        p.set_defaults(func=func)

    p = sub.add_parser("rank", help="rank of a polynomial matrix over the fraction field")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--modulus", type=int, default=0)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("fitting", help="Fitting ideal of a presentation matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_fitting)

    p = sub.add_parser("be-multipliers", help="Buchsbaum-Eisenbud multipliers of a complex")
    p.add_argument("--complex")
    p.add_argument("--example", choices=["two-generator", "hilbert-burch", "resolution"])
    p.add_argument("--ranks", type=_int_list, help="expected ranks r_1,...,r_n (default: computed)")
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_be_multipliers)

    p = sub.add_parser("rank-conditions", help="expected ranks from Betti numbers")
    p.add_argument("--betti", type=_int_list, required=True)
    p.set_defaults(func=cmd_rank_conditions)

    p = sub.add_parser("generic-complex", help="product blocks of the generic complex ring")
    p.add_argument("--betti", type=_int_list, required=True)
    p.add_argument("--block", type=int)
    p.add_argument("--prefix", default="y")
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_generic_complex)

    p = sub.add_parser("standard-monomials", help="standard monomials of a variety of complexes")
    p.add_argument("--dims", type=_int_list, required=True)
    p.add_argument("--ranks", type=_int_list, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--exclude-vmax", action="store_true",
                   help="also drop monomials containing maximal-size symbols (not a basis)")
    _add_format(p)
    p.set_defaults(func=cmd_standard_monomials)

    p = sub.add_parser("straighten", help="straighten a sum of bitableaux, e.g. '(12/3|14/2)'")
    p.add_argument("--bitableau", required=True)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("plucker", help="Pluecker relations of Gr(r, k)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_plucker)

    p = sub.add_parser("hilbert", help="Hilbert function of a rank locus or variety of complexes")
    p.add_argument("--locus", type=_int_list)
    p.add_argument("--dims", type=_int_list)
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--degrees", type=_degrees, default=list(range(5)))
    p.add_argument("--modulus", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("bifiltration", help="flag bifiltrations, rank invariants and presentations")
    p.add_argument("action", choices=["build", "rank-invariant", "presentation"])
    p.add_argument("--snapshots")
    p.add_argument("--thresholds", type=lambda s: [float(x) for x in s.split(",")])
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--bifiltration")
    p.add_argument("--degree", type=int)
    p.add_argument("--u", type=_int_list)
    p.add_argument("--v", type=_int_list)
    p.add_argument("--prime", type=int, default=0)
    _add_format(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_bifiltration)

    p = sub.add_parser("selftest", help="golden-file and property checks")
    p.add_argument("--filter")
    p.add_argument("--golden-dir")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "bifiltration" and args.action == "build" and not args.snapshots:
        parser.print_usage(sys.stderr)
        print("persalg: error: build needs --snapshots", file=sys.stderr)
        return 2
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"persalg: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError, OSError, AssertionError) as exc:
        print(f"persalg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
