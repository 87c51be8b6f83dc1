"""Command-line front end.

Subcommands: coeff, bracket, verify, table, serre-check, oracle-diff.
Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage error, 3 semantic error (mixing generator families).

Table exports are deterministic: generators are enumerated in canonical
order and records are emitted in that order, so output bytes are
identical across runs and across worker counts.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .base_algebra import builtin_algebra
from .coupling import structure_coeff
from .elements import (
    CCentral, CircleT, D, D1, D2, Element, FamilyMixError, K, K1, K2,
    LCircle, LSphere, LTorus, SphereE, SphereH, SphereT,
    TorusE, TorusH, TorusT, genid_text,
)
from .gkm import SphereAlgebra, TorusAlgebra
from .oracle import gaunt_project
from .presentations import build_caff_from_css, css_presentation, verify_relations
from .verify import RunConfig, run_suite
from .virasoro import CircleVirasoro, SphereVirasoro, TorusVirasoro

USAGE_ERROR = 2
SEMANTIC_ERROR = 3


class DescriptorError(ValueError):
    pass


def parse_descriptor(text: str, manifold: str):
    """Generator descriptors: "T:a=1,m=1,n=0", "L:l=0,m=0", "d1", "k", ...

    E roots are dot-separated simple-root coordinates, e.g. "E:root=1.1,m=0,n=0".
    """
    bare = {"d": D(), "d1": D1(), "d2": D2(), "k": K(), "k1": K1(), "k2": K2(),
            "c": CCentral()}
    if text in bare:
        return bare[text]
    if ":" not in text:
        raise DescriptorError(f"cannot parse generator descriptor {text!r}")
    kind, _, fieldtext = text.partition(":")
    fields = {}
    try:
        for item in fieldtext.split(","):
            name, _, value = item.partition("=")
            if name == "root":
                fields[name] = tuple(int(c) for c in value.split("."))
            else:
                fields[name] = int(value)
    except ValueError as exc:
        raise DescriptorError(f"cannot parse generator descriptor {text!r}: {exc}")
    try:
        if kind == "T":
            if manifold == "circle":
                return CircleT(fields["a"], fields["m"])
            if manifold == "sphere":
                return SphereT(fields["a"], fields["l"], fields["m"])
            return TorusT(fields["a"], fields["m"], fields["n"])
        if kind == "H":
            if manifold == "sphere":
                return SphereH(fields["i"], fields["l"], fields["m"])
            return TorusH(fields["i"], fields["m"], fields["n"])
        if kind == "E":
            if manifold == "sphere":
                return SphereE(fields["root"], fields["l"], fields["m"])
            return TorusE(fields["root"], fields["m"], fields["n"])
        if kind == "L":
            if manifold == "circle":
                return LCircle(fields["m"])
            if manifold == "sphere":
                return LSphere(fields["l"], fields["m"])
            return LTorus(fields["m"], fields["n"])
    except (KeyError, ValueError) as exc:
        raise DescriptorError(f"bad fields in descriptor {text!r}: {exc}")
    raise DescriptorError(f"unknown generator kind {kind!r}")


_VIR_KINDS = (LCircle, LTorus, LSphere, CCentral, CircleT)


def _bracket_family(manifold: str, algebra_name: str, gids):
    base = builtin_algebra(algebra_name)
    vir = any(isinstance(g, _VIR_KINDS) for g in gids) or any(
        isinstance(g, K) for g in gids) and manifold == "torus"
    if manifold == "circle":
        return CircleVirasoro(base)
    if manifold == "torus":
        return TorusVirasoro(base) if vir else TorusAlgebra(base)
    return SphereVirasoro(base) if vir else SphereAlgebra(base)


def cmd_coeff(args) -> int:
    try:
        exact = structure_coeff(args.l1, args.m1, args.l2, args.m2, args.l3)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    value = exact.to_float()
    oracle = gaunt_project(args.l1, args.m1, args.l2, args.m2, args.l3)
    if args.format == "json":
        print(json.dumps({
            "exact": exact.to_json_obj(), "text": exact.text(),
            "float": value, "oracle": oracle, "abs_diff": abs(value - oracle),
        }, sort_keys=True))
    else:
        print(f"{exact.text()} ~ {value!r} (oracle {oracle!r}, |diff| {abs(value - oracle):.3e})")
    return 0


def cmd_bracket(args) -> int:
    try:
        g1 = parse_descriptor(args.lhs, args.manifold)
        g2 = parse_descriptor(args.rhs, args.manifold)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    family = _bracket_family(args.manifold, args.algebra, (g1, g2))
    try:
        out = family.bracket(Element.of(g1), Element.of(g2))
    except FamilyMixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SEMANTIC_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.format == "json":
        print(json.dumps(out.to_json_obj(), sort_keys=True))
    else:
        print(out.text())
    return 0


def cmd_verify(args) -> int:
    cfg = RunConfig(algebra=args.algebra, manifold=args.manifold,
                    lmax=args.lmax, mmax=args.mmax, nmax=args.nmax,
                    cutoff=args.cutoff, tol=args.tol, vir=args.vir)
    try:
        report = run_suite(args.suite, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(report.summary())
    payload = json.dumps(report.to_json_obj(), sort_keys=True, default=str, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    elif not report.passed:
        print(payload)
    return 0 if report.passed else 1


# --- table export ---------------------------------------------------------------

def _table_generators(manifold: str, base, lmax: int, mmax: int, nmax: int):
    if manifold == "torus":
        gens = [TorusT(a, m, n) for a in range(1, base.dim + 1)
                for m in range(-mmax, mmax + 1) for n in range(-nmax, nmax + 1)]
        return gens + [D1(), D2(), K1(), K2()]
    if manifold == "sphere":
        gens = [SphereT(a, l, m) for a in range(1, base.dim + 1)
                for l in range(lmax + 1) for m in range(-l, l + 1)]
        return gens + [D(), K()]
    gens = [CircleT(a, m) for a in range(1, base.dim + 1)
            for m in range(-mmax, mmax + 1)]
    return gens + [LCircle(m) for m in range(-mmax, mmax + 1)] + [CCentral(), K()]


def _pair_index_bounds(n: int):
    # pairs (i, j) with i <= j, enumerated row by row
    return n * (n + 1) // 2


def _pair_from_flat(flat: int, n: int):
    # row-major unrank of the upper triangle including the diagonal
    i = 0
    row = n
    while flat >= row:
        flat -= row
        i += 1
        row -= 1
    return i, i + flat


def _table_chunk(spec) -> list[str]:
    manifold, algebra_name, lmax, mmax, nmax, start, stop = spec
    base = builtin_algebra(algebra_name)
    gens = _table_generators(manifold, base, lmax, mmax, nmax)
    if manifold == "torus":
        family = TorusAlgebra(base)
    elif manifold == "sphere":
        family = SphereAlgebra(base)
    else:
        family = CircleVirasoro(base)
    n = len(gens)
    rows = []
    i, j = _pair_from_flat(start, n)
    for _ in range(start, stop):
        out = family.bracket(Element.of(gens[i]), Element.of(gens[j]))
        record = {"lhs": genid_text(gens[i]), "rhs": genid_text(gens[j]),
                  "result": out.to_json_obj()["terms"]}
        rows.append(json.dumps(record, sort_keys=True, separators=(",", ":")))
        j += 1
        if j == n:
            i += 1
            j = i
    return rows


def cmd_table(args) -> int:
    base = builtin_algebra(args.algebra)
    gens = _table_generators(args.manifold, base, args.lmax, args.mmax, args.nmax)
    total = _pair_index_bounds(len(gens))
    workers = max(1, args.workers)
    if workers == 1:
        chunks = [_table_chunk((args.manifold, args.algebra, args.lmax,
                                args.mmax, args.nmax, 0, total))]
    else:
        step = (total + workers - 1) // workers
        specs = [(args.manifold, args.algebra, args.lmax, args.mmax, args.nmax,
                  lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_table_chunk, specs))
    rows = [row for chunk in chunks for row in chunk]
    if args.format == "csv":
        lines = ["lhs,rhs,gen,i,coeff"]
        for row in rows:
            rec = json.loads(row)
            for term in rec["result"]:
                gen = json.dumps(term["gen"], sort_keys=True, separators=(",", ":"))
                coeff = ";".join(
                    f"{t['num']}/{t['den']}*sqrt({t['rad']})" for t in term["coeff"]["terms"])
                lines.append(f"\"{rec['lhs']}\",\"{rec['rhs']}\",\"{gen}\",{term['i']},\"{coeff}\"")
        payload = "\n".join(lines) + "\n"
    else:
        header = json.dumps({
            "algebra": args.algebra, "manifold": args.manifold,
            "lmax": args.lmax, "mmax": args.mmax, "nmax": args.nmax,
            "pairs": total,
        }, sort_keys=True, separators=(",", ":"))
        payload = header + "\n" + "\n".join(rows) + "\n"
    try:
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_serre_check(args) -> int:
    base = builtin_algebra(args.algebra)
    css = css_presentation(base)
    reports = [verify_relations(css, args.cutoff)]
    reports.append(verify_relations(build_caff_from_css(css), args.cutoff))
    failures = [f for rep in reports for f in rep.failures]
    checked = sum(rep.checked for rep in reports)
    payload = json.dumps({
        "algebra": args.algebra, "cutoff": args.cutoff,
        "checked": checked, "failures": failures,
    }, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    print(f"serre-check: {'PASS' if not failures else 'FAIL'}, "
          f"{checked} relation instances, {len(failures)} failures")
    if failures and not args.out:
        print(payload)
    return 0 if not failures else 1


def cmd_oracle_diff(args) -> int:
    lines = ["l1,m1,l2,m2,l3,exact,oracle,abs_diff"]
    worst = 0.0
    for l1 in range(args.lmax + 1):
        for m1 in range(-l1, l1 + 1):
            for l2 in range(args.lmax + 1):
                for m2 in range(-l2, l2 + 1):
                    for l3 in range(abs(l1 - l2), l1 + l2 + 1):
                        exact = structure_coeff(l1, m1, l2, m2, l3).to_float()
                        oracle = gaunt_project(l1, m1, l2, m2, l3)
                        diff = abs(exact - oracle)
                        worst = max(worst, diff)
                        lines.append(
                            f"{l1},{m1},{l2},{m2},{l3},{exact!r},{oracle!r},{diff:.3e}")
    payload = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    print(f"max |exact - oracle| = {worst:.3e}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkmalg",
        description="Exact Kac-Moody and Virasoro algebras on the two-torus and two-sphere",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, manifold=True):
        p.add_argument("--algebra", default="su2", choices=["su2", "su3"])
        if manifold:
            p.add_argument("--manifold", default="torus",
                           choices=["circle", "torus", "sphere"])
        p.add_argument("--format", default="text", choices=["text", "json", "csv"])

    p = sub.add_parser("coeff", help="sphere structure coefficient, exact and numeric")
    p.add_argument("l1", type=int)
    p.add_argument("m1", type=int)
    p.add_argument("l2", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("l3", type=int)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("bracket", help="bracket of two generators")
    common(p)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(fn=cmd_bracket)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["jacobi", "cocycle", "grading", "affine",
                                     "serre", "orth", "oracle"])
    common(p)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--vir", action="store_true",
                   help="use the Virasoro-extended family")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table", help="export the structure-constant table")
    common(p)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("serre-check", help="verify both Chevalley-Serre presentations")
    p.add_argument("--algebra", default="su3", choices=["su2", "su3"])
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_serre_check)

    p = sub.add_parser("oracle-diff", help="CSV of exact vs quadrature coefficients")
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_oracle_diff)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
