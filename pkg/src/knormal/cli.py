"""Command-line interface: ``knormal <command> --q Q --m M [...]``.

Exit codes: 0 success, 1 oracle mismatch, 2 invalid input, 3 size guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg
from .census import census
from .classify import classify
from .counting import bound_rows, count_k_normal_formula, existence_verdict, render_decimal
from .errors import FormulaCensusMismatch, InternalInconsistency, MethodDisagreement, SizeGuardExceeded
from .normal_basis import build_normal_basis, mult_table
from .polyring import factor_xm_minus_1
from .primes import prime_power
from .search import find_k_normal, find_order_normal, primitive_target, q1_primitive_target
from .tables import write_golden
from .tower import build_tower, parse_poly

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _field_args(p: argparse.ArgumentParser, need_m=True):
    p.add_argument("--q", type=int, help="field size q (decomposed as p^s)")
    p.add_argument("--p", type=int, help="characteristic (use with --s)")
    p.add_argument("--s", type=int, help="degree of F_q over F_p (use with --p)")
    p.add_argument("--m", type=int, required=need_m, help="extension degree of F_{q^m} over F_q")
    p.add_argument("--f", help="modulus of F_q over F_p, e.g. [1,0,1]")
    p.add_argument("--g", help="modulus of F_{q^m} over F_q, as F_q indices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knormal", description="k-normal elements of finite fields")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tower", help="build and print the field tower")
    _field_args(p)

    p = sub.add_parser("factor", help="factor x^m - 1 over F_q")
    _field_args(p)

    p = sub.add_parser("census", help="classify every element of F_{q^m}")
    _field_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed time and worker count in JSON")

    p = sub.add_parser("count", help="number of k-normal elements by the divisor-sum formula")
    _field_args(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("bounds", help="formula counts and lower bounds for every k")
    _field_args(p)

    p = sub.add_parser("exists", help="sufficient conditions for existence of k-normal elements")
    _field_args(p)

    p = sub.add_parser("find", help="smallest-index k-normal element or normal element of given order")
    _field_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--order", help="N, 'primitive' or 'q1-primitive'")
    p.add_argument("--mode", choices=("fast", "verify"), default="verify")

    p = sub.add_parser("normal-basis", help="normal basis matrix and multiplication table")
    _field_args(p)
    p.add_argument("--element", type=int, help="canonical index of the generator (default: first normal element)")

    p = sub.add_parser("tables", help="regenerate the golden files for the eight published tables")
    p.add_argument("--out", default="golden")
    p.add_argument("--workers", type=int, default=1)
    return parser


def _resolve_field(args):
    if args.q is not None and (args.p is not None or args.s is not None):
        raise UsageError("give either --q or --p/--s, not both")
    if args.q is not None:
        try:
            p, s = prime_power(args.q)
        except ValueError:
            raise UsageError(f"{args.q} is not a prime power") from None
    elif args.p is not None:
        p, s = args.p, args.s or 1
    else:
        raise UsageError("a field is required: --q or --p/--s")
    if args.m is None or args.m < 1:
        raise UsageError("--m must be a positive integer")
    f = parse_poly(args.f) if args.f else None
    g = parse_poly(args.g) if args.g else None
    return p, s, args.m, f, g


def _tower(args, census_mode=False):
    p, s, m, f, g = _resolve_field(args)
    return build_tower(p, s, m, f, g, seed=args.seed, census=census_mode)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _table(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def cmd_tower(args) -> str:
    T = _tower(args)
    return _dump({**T.to_dict(), "q": T.q, "field_size": T.size})


def cmd_factor(args) -> str:
    T = _tower(args)
    fact = factor_xm_minus_1(T.fq, T.m)
    return f"{fact}\n{json.dumps(fact.to_json())}\n"


def cmd_census(args) -> str:
    T = _tower(args, census_mode=True)
    report = census(T, factor_xm_minus_1(T.fq, T.m), workers=args.workers)
    if args.format == "json":
        return report.to_json(timing=args.timing)
    if args.format == "csv":
        return report.to_csv()
    return report.to_markdown()


def cmd_count(args) -> str:
    T = _tower(args)
    fact = factor_xm_minus_1(T.fq, T.m)
    count = count_k_normal_formula(fact, args.k)
    if args.format == "json":
        return _dump({"q": T.q, "m": T.m, "k": args.k, "count": count})
    return f"{count}\n"


def cmd_bounds(args) -> str:
    T = _tower(args)
    rows = bound_rows(factor_xm_minus_1(T.fq, T.m))
    if args.format == "json":
        return _dump(
            [
                {
                    "k": r.k,
                    "count": r.formula_count,
                    "bound_num": r.lower_bound_num,
                    "bound_den": r.lower_bound_den,
                    "divisor_count": r.divisor_count,
                    "saygi_count": r.saygi_count,
                }
                for r in rows
            ]
        )
    body = [(r.k, r.formula_count, f"{r.lower_bound_num}/{r.lower_bound_den}", render_decimal(r.bound), r.divisor_count) for r in rows]
    if args.format == "csv":
        return "k,count,bound_fraction,bound,divisor_count\n" + "".join(",".join(map(str, b)) + "\n" for b in body)
    return _table(["k", "count", "Φ_q(x^m-1)/q^k", "rounded", "divisors of degree m-k"], body)


def cmd_exists(args) -> str:
    p, s, m, _, _ = _resolve_field(args)
    v = existence_verdict(p**s, m)
    guaranteed = v.guaranteed_ks()
    if args.format == "json":
        return _dump({"q": v.q, "m": v.m, **v.to_dict(), "guaranteed": guaranteed})
    lines = [f"q={v.q}, m={m}: d = gcd(q^m-1, m) = {v.d}, b = {v.b}"]
    if v.divides:
        lines.append("m divides q^m-1: k-normal elements exist for every k")
    elif v.gcd_threshold is not None:
        lines.append(f"sqrt(m) < d: k-normal elements exist for every k >= {v.gcd_threshold}")
    if v.reis:
        lines.append("every prime divisor of m divides p(q-1): k-normal elements exist for every k")
    lines.append("guaranteed k: " + ", ".join(f"{k} ({tag})" for k, tag in enumerate(v.per_k) if k in guaranteed))
    return "\n".join(lines) + "\n"


def _target_order(T, spec: str) -> int:
    if spec == "primitive":
        return primitive_target(T)
    if spec == "q1-primitive":
        return q1_primitive_target(T)
    try:
        return int(spec)
    except ValueError:
        raise UsageError(f"bad --order {spec!r}") from None


def cmd_find(args) -> str:
    T = _tower(args, census_mode=True)
    fact = factor_xm_minus_1(T.fq, T.m)
    if args.k is not None:
        alpha = find_k_normal(T, args.k, fact)
        what = {"k": args.k}
        desc = f"{args.k}-normal element"
    else:
        target = _target_order(T, args.order)
        alpha = find_order_normal(T, target, fact)
        what = {"k": 0, "order": target}
        desc = f"normal element of multiplicative order {target}"
    if alpha is None:
        result = {"found": False, **what}
        text = f"no {desc} exists in F_{T.size} over F_{T.q} (exhaustive search)\n"
    else:
        report = classify(T, alpha, fact, mode=args.mode)
        result = {
            "found": True,
            **what,
            "index": T.index(alpha),
            "coords": list(alpha),
            "verified_k": report.k,
            "multiplicative_order": T.multiplicative_order(alpha) if alpha != T.zero else None,
        }
        text = f"index {result['index']} coords {list(alpha)} k={report.k} order={result['multiplicative_order']}\n"
    return _dump(result) if args.format == "json" else text


def cmd_normal_basis(args) -> str:
    T = _tower(args, census_mode=True)
    if args.element is not None:
        alpha = T.element(args.element)
    else:
        alpha = find_k_normal(T, 0, factor_xm_minus_1(T.fq, T.m))
    nb = build_normal_basis(T, alpha)
    table = mult_table(nb)
    if args.format == "json":
        return _dump(
            {
                "generator": T.index(alpha),
                "basis_matrix": [list(r) for r in nb.basis_matrix],
                "mult_table": [list(r) for r in table.t],
                "density": table.density,
                "density_reference_2m_minus_1": 2 * T.m - 1,
            }
        )
    cols = [f"c{i}" for i in range(T.m)]
    check = linalg.mat_mul(T.fq, nb.basis_matrix, nb.inverse_matrix) == linalg.identity(T.fq, T.m)
    return (
        f"generator index {T.index(alpha)} (coords {list(alpha)}), basis invertible: {check}\n\n"
        "basis matrix (column i = generator^(q^i)):\n\n"
        + _table(cols, nb.basis_matrix)
        + "\nmultiplication table (row i = generator * generator^(q^i)):\n\n"
        + _table(cols, table.t)
        + f"\ndensity: {table.density} (reference 2m-1 = {2 * T.m - 1})\n"
    )


def cmd_tables(args) -> int:
    paths, unexpected = write_golden(args.out, workers=args.workers)
    for path in paths:
        print(path)
    if unexpected:
        print(f"unexpected disagreement with published cells: {sorted(unexpected, key=str)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


COMMANDS = {
    "tower": cmd_tower,
    "factor": cmd_factor,
    "census": cmd_census,
    "count": cmd_count,
    "bounds": cmd_bounds,
    "exists": cmd_exists,
    "find": cmd_find,
    "normal-basis": cmd_normal_basis,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "tables":
            return cmd_tables(args)
        text = COMMANDS[args.command](args)
    except SizeGuardExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FormulaCensusMismatch, MethodDisagreement, InternalInconsistency) as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
