"""Command-line front end: analyze, check, audit, export, search.

Verdicts are data: a run that completes prints its findings and exits 0
whether or not the property holds.  Exit code 1 is reserved for audit
runs that found an invariant-violating exception, 2 for usage, parse,
or budget errors.  Output for a fixed configuration is byte-identical
across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from .core import (
    BudgetExceeded,
    GbentError,
    BooleanFunction,
    GeneralizedBooleanFunction,
    algebraic_degree,
    components,
    dec,
    format_gbf,
    parse_expression,
    read_gbf,
)
from .cyclotomic import CyclotomicInteger
from .graph import (
    ALL_VERTICES,
    CONVENTIONS,
    EXCLUDE_ENDPOINTS,
    butson_check,
    counting_identity_check,
    export_graph,
    local_srg_check,
    srg_check,
    strength,
    weighted_regularity,
)
from .theorems import (
    EXHAUSTIVE_BUDGET,
    audit,
    gb4_check,
    gbent_fixtures,
    necessary_condition_check,
    _batch_gbent,
    _exhaustive_tables,
)
from .transform import (
    gwht_fast,
    is_bent,
    is_gbent,
    spectrum_to_json,
    wht,
)

SCHEMA_VERSION = 1


def _fmt_complex(c: complex) -> str:
    return f"{c.real:.12g}{c.imag:+.12g}i"


def _cyclo_json(x: Optional[CyclotomicInteger]):
    return None if x is None else x.to_json_dict()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_set(text: Optional[str]):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(tok) for tok in text.replace(",", " ").split())


def _load_function(args) -> GeneralizedBooleanFunction:
    sources = [s for s in (args.expr, args.file, args.table) if s is not None]
    if len(sources) != 1:
        raise ValueError("give exactly one input: -e/--expr, -f/--file, or -t/--table")
    if args.expr is not None:
        if args.n is None or args.k is None:
            raise ValueError("-e/--expr needs -n and -k")
        return parse_expression(args.expr, args.n, args.k)
    if args.file is not None:
        return read_gbf(args.file)
    if args.n is None or args.k is None:
        raise ValueError("-t/--table needs -n and -k")
    values = [int(tok) for tok in args.table.replace(",", " ").split()]
    return GeneralizedBooleanFunction(args.n, args.k, values)


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-e", "--expr", help="function expression, e.g. 'x1*x2 + 2*x1'")
    p.add_argument("-f", "--file", help="path to a .gbf truth-table file")
    p.add_argument("-t", "--table", help="inline truth table, e.g. '0,0,2,3'")
    p.add_argument("-n", type=int, default=None, help="number of variables")
    p.add_argument("-k", type=int, default=None, help="output bits (q = 2**k)")


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _analyze_report(f: GeneralizedBooleanFunction, butson_cap: int) -> dict:
    spec = gwht_fast(f)
    verdict = is_gbent(f)
    wr = weighted_regularity(f)
    parts = components(f)
    try:
        butson = butson_check(f, autocorr_cap=butson_cap)
        butson_field = {
            "ok": butson.ok,
            "method": butson.method,
            "witness_entry": list(butson.witness_entry)
            if butson.witness_entry
            else None,
            "witness_value": _cyclo_json(butson.witness_value),
        }
    except GbentError as exc:
        butson_field = {"skipped": str(exc)}
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "analyze",
        "n": f.n,
        "k": f.k,
        "table": [int(v) for v in f.table],
        "components": [[int(v) for v in p.table] for p in parts],
        "component_degrees": [algebraic_degree(p) for p in parts],
        "spectrum": spectrum_to_json(spec),
        "spectrum_complex": [_fmt_complex(c) for c in spec.to_complex()],
        "gbent": {
            "ok": verdict.ok,
            "witness_u": verdict.witness_u,
            "witness_norm_squared": _cyclo_json(verdict.witness_norm_squared),
        },
        "weighted_regularity": {
            "v": wr.v,
            "r": list(wr.r),
            "loop_weight": wr.loop_weight,
        },
        "strength": strength(f),
        "butson": butson_field,
    }


def _analyze_text(report: dict) -> str:
    lines = [
        f"function: n={report['n']} k={report['k']} q={1 << report['k']}",
        f"table:    {' '.join(str(v) for v in report['table'])}",
    ]
    for i, (comp, deg) in enumerate(
        zip(report["components"], report["component_degrees"])
    ):
        lines.append(
            f"a{i}:       {' '.join(str(v) for v in comp)}  (degree {deg})"
        )
    lines.append("spectrum:")
    values = report["spectrum"]["values"]
    norms = report["spectrum"]["norms"]
    cx = report["spectrum_complex"]
    n = report["n"]
    for u, (val, norm, c) in enumerate(zip(values, norms, cx)):
        bits = "".join(str(b) for b in dec(u, n))
        exact = str(CyclotomicInteger(report["k"], val["coeffs"]))
        lines.append(f"  u={bits}  H={exact}  |H|^2={norm}  complex={c}")
    g = report["gbent"]
    if g["ok"]:
        lines.append("gbent:    true")
    else:
        lines.append(
            f"gbent:    false (witness u={g['witness_u']}, "
            f"|H|^2={CyclotomicInteger(report['k'], g['witness_norm_squared']['coeffs'])})"
        )
    wr = report["weighted_regularity"]
    lines.append(
        f"weighted regularity: v={wr['v']} r={tuple(wr['r'])} "
        f"loop_weight={wr['loop_weight']}"
    )
    lines.append(f"strength: {report['strength']}")
    b = report["butson"]
    if "skipped" in b:
        lines.append(f"butson:   skipped ({b['skipped']})")
    else:
        lines.append(f"butson:   {'true' if b['ok'] else 'false'} ({b['method']})")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    f = _load_function(args)
    report = _analyze_report(f, args.butson_cap)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _emit(_analyze_text(report), args.out)
    return 0


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

CHECKS = (
    "gbent",
    "bent",
    "butson",
    "srg",
    "gb4",
    "necessary",
    "local-srg",
    "counting-identity",
)


def cmd_check(args) -> int:
    f = _load_function(args)
    which = args.which
    doc: dict = {"schema_version": SCHEMA_VERSION, "kind": "check", "check": which}

    if which == "gbent":
        v = is_gbent(f)
        doc.update(
            ok=v.ok,
            witness_u=v.witness_u,
            witness_norm_squared=_cyclo_json(v.witness_norm_squared),
        )
    elif which == "bent":
        if f.k != 1:
            raise ValueError("bent check needs k = 1 input")
        g = BooleanFunction(f.n, f.table)
        doc.update(ok=is_bent(g), wht=[int(v) for v in wht(g)])
    elif which == "butson":
        v = butson_check(f)
        doc.update(
            ok=v.ok,
            method=v.method,
            witness_entry=list(v.witness_entry) if v.witness_entry else None,
            witness_value=_cyclo_json(v.witness_value),
        )
    elif which == "srg":
        if args.x is None or args.y is None:
            raise ValueError("srg check needs --x and --y")
        rep = srg_check(f, _parse_set(args.x), _parse_set(args.y), args.convention)
        doc.update(ok=rep.certified, report=rep.to_json_dict())
    elif which == "gb4":
        rep = gb4_check(f, args.convention)
        doc.update(
            ok=rep.passed,
            cond_i={
                "ok": rep.cond_i.ok,
                "constant": rep.cond_i.constant,
                "witness": rep.cond_i.witness.to_json_dict()
                if rep.cond_i.witness
                else None,
            },
            cond_ii={
                "ok": rep.cond_ii.ok,
                "constant": rep.cond_ii.constant,
                "witness": rep.cond_ii.witness.to_json_dict()
                if rep.cond_ii.witness
                else None,
            },
        )
    elif which == "necessary":
        rep = necessary_condition_check(f, args.convention)
        doc.update(
            ok=rep.passed,
            fc_all_bent=rep.fc_all_bent,
            entries=[
                {
                    "c": list(e.c),
                    "x1": sorted(e.x1),
                    "uniform_ok": e.uniform_ok,
                    "constant": e.constant,
                    "srg_e_eq_d_ok": e.srg_e_eq_d_ok,
                    "fc_bent": e.fc_bent,
                }
                for e in rep.entries
            ],
        )
    elif which == "local-srg":
        rep = local_srg_check(f)
        doc.update(
            ok=rep.certified,
            v=rep.v,
            weight_set=list(rep.weight_set),
            k_params={str(a): v for a, v in sorted(rep.k.items())},
            lam={",".join(map(str, key)): v for key, v in sorted(rep.lam.items())},
            mu={",".join(map(str, key)): v for key, v in sorted(rep.mu.items())},
            mu_vacuous=rep.mu_vacuous,
            witness=rep.witness,
        )
    elif which == "counting-identity":
        if args.x is None:
            raise ValueError("counting-identity check needs --x")
        xs = _parse_set(args.x)
        rep = srg_check(f, xs, xs, EXCLUDE_ENDPOINTS)
        wr = weighted_regularity(f)
        if rep.certified:
            doc.update(
                ok=counting_identity_check(rep, wr),
                certified=True,
                report=rep.to_json_dict(),
            )
        else:
            doc.update(ok=None, certified=False, report=rep.to_json_dict())
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown check {which!r}")

    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(f"{which}: {doc.get('ok')}\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

def cmd_audit(args) -> int:
    if args.n is None or args.k is None:
        raise ValueError("audit needs -n and -k")
    budget = int(os.environ.get("GBENT_AUDIT_BUDGET", args.budget))
    if args.exhaustive:
        report = audit(
            args.n, args.k, scope="exhaustive", budget=budget,
            conventions=(args.convention,),
        )
    elif args.random is not None:
        report = audit(
            args.n, args.k, scope="random", count=args.random, seed=args.seed,
            budget=budget, conventions=(args.convention,),
            include_fixtures=not args.no_fixtures,
        )
    elif args.fixtures:
        report = audit(
            args.n, args.k, scope="fixtures", budget=budget,
            conventions=(args.convention,),
        )
    else:
        raise ValueError("audit needs --exhaustive, --random COUNT, or --fixtures")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2)
            fh.write("\n")
    sys.stdout.write(report.summary_text())
    if args.format == "json" and not args.out:
        sys.stdout.write(json.dumps(report.to_json_dict(), indent=2) + "\n")
    return 1 if report.invariant_violations else 0


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def cmd_export(args) -> int:
    f = _load_function(args)
    text = export_graph(f, args.format, args.variant)
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(args) -> int:
    if args.n is None or args.k is None:
        raise ValueError("search needs -n and -k")
    n, k = args.n, args.k
    budget = int(os.environ.get("GBENT_AUDIT_BUDGET", args.budget))
    out_lines = []
    found = 0
    scanned = 0

    if args.construct:
        fixtures = gbent_fixtures(n, k, count=args.limit or 8)
        scanned = len(fixtures)
        for f in fixtures:
            found += 1
            out_lines.append(f"# gbent {found}")
            out_lines.append(format_gbf(f).rstrip("\n"))
    else:
        if args.exhaustive:
            tables = _exhaustive_tables(n, k, budget)
        elif args.random is not None:
            rng = np.random.Generator(np.random.PCG64(args.seed))
            tables = rng.integers(0, 1 << k, size=(args.random, 1 << n), dtype=np.uint8)
        else:
            raise ValueError(
                "search needs --exhaustive, --random COUNT, or --construct"
            )
        scanned = tables.shape[0]
        mask = _batch_gbent(tables, n, k)
        for i in np.nonzero(mask)[0]:
            found += 1
            if args.limit and found > args.limit:
                found -= 1
                break
            out_lines.append(f"# gbent {found}")
            out_lines.append(
                f"n={n} k={k}\n" + " ".join(str(int(v)) for v in tables[i])
            )

    out_lines.append(f"# found {found} gbent functions (scanned {scanned})")
    _emit("\n".join(out_lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gbent",
        description="generalized Boolean functions, exact spectra, and "
        "strongly regular Cayley graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full report for one function")
    _add_input_args(pa)
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument("--out", default=None)
    pa.add_argument("--butson-cap", type=int, default=14)
    pa.set_defaults(func=cmd_analyze)

    pc = sub.add_parser("check", help="run a single named check")
    pc.add_argument("which", choices=CHECKS)
    _add_input_args(pc)
    pc.add_argument("--x", default=None, help="comma list, e.g. 0,1")
    pc.add_argument("--y", default=None, help="comma list, e.g. 2,3")
    pc.add_argument("--convention", choices=CONVENTIONS, default=ALL_VERTICES)
    pc.add_argument("--format", choices=("text", "json"), default="json")
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_check)

    pu = sub.add_parser("audit", help="equivalence audit over many functions")
    pu.add_argument("-n", type=int, default=None)
    pu.add_argument("-k", type=int, default=None)
    pu.add_argument("--exhaustive", action="store_true")
    pu.add_argument("--random", type=int, default=None, metavar="COUNT")
    pu.add_argument("--fixtures", action="store_true")
    pu.add_argument("--seed", type=int, default=0)
    pu.add_argument("--budget", type=int, default=EXHAUSTIVE_BUDGET)
    pu.add_argument("--no-fixtures", action="store_true")
    pu.add_argument("--convention", choices=CONVENTIONS, default=ALL_VERTICES)
    pu.add_argument("--format", choices=("text", "json"), default="text")
    pu.add_argument("--out", default=None, help="write the JSON report here")
    pu.set_defaults(func=cmd_audit)

    pe = sub.add_parser("export", help="write the Cayley graph")
    _add_input_args(pe)
    pe.add_argument("--format", choices=("dot", "graphml", "json"), default="dot")
    pe.add_argument("--variant", choices=("full", "modified"), default="full")
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_export)

    ps = sub.add_parser("search", help="stream gbent functions")
    ps.add_argument("-n", type=int, default=None)
    ps.add_argument("-k", type=int, default=None)
    ps.add_argument("--exhaustive", action="store_true")
    ps.add_argument("--random", type=int, default=None, metavar="COUNT")
    ps.add_argument("--construct", action="store_true")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--limit", type=int, default=0, help="stop after this many")
    ps.add_argument("--budget", type=int, default=EXHAUSTIVE_BUDGET)
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=cmd_search)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GbentError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
