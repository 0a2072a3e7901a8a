"""Command-line interface: verify, classify, enumerate and tables.

Examples:
    clifproj verify --scenarios standard
    clifproj verify --space "gf(3):diag(1,1)" --suite theorems --rescale 2
    clifproj classify --space "gf(3):diag(1,1)"
    clifproj enumerate --space "gf(2):hyperbolic2" --what G
    clifproj tables --scenarios standard
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from .lipschitz import enumerate_G, enumerate_H, enumerate_M
from .ortho import enumerate_O_weak, project_to_PO_weak
from .projective import classify_scenario
from .runner import render_records, render_text, run
from .scenarios import (
    BASE_SUITES,
    Scenario,
    ValidationError,
    load_scenario_file,
    load_scenarios,
    parse_field_and_space,
)

BUNDLED = {"standard": "standard_suite.scen"}


def _load_bundled(name):
    text = resources.files("clifproj.data").joinpath(BUNDLED[name]).read_text("utf-8")
    return load_scenarios(text.splitlines(), source=name)


def _scenarios_from_args(args):
    if getattr(args, "space", None):
        field, space = parse_field_and_space(args.space)
        suites = tuple(args.suite) if getattr(args, "suite", None) else BASE_SUITES
        rescale = tuple(field.parse_scalar(c) for c in getattr(args, "rescale", []) or [])
        return [Scenario("cli", field, space, suites, rescale)]
    name = getattr(args, "scenarios", None) or "standard"
    if name in BUNDLED:
        scenarios = _load_bundled(name)
    else:
        scenarios = load_scenario_file(name)
    if getattr(args, "suite", None):
        wanted = tuple(args.suite)
        for sc in scenarios:
            sc.suites = tuple(s for s in sc.suites if s in wanted)
    return scenarios


def _add_common(p):
    p.add_argument("--scenarios", help="scenario file path, or the bundled name 'standard'")
    p.add_argument("--space", help="ad-hoc scenario, e.g. gf(3):diag(1,1)")
    p.add_argument("--budget", type=int, help="enumeration budget override")


def main(argv=None):
    parser = argparse.ArgumentParser(prog="clifproj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    _add_common(p_verify)
    p_verify.add_argument("--suite", action="append", choices=list(BASE_SUITES))
    p_verify.add_argument("--rescale", action="append", metavar="C", help="add a rescale suite")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("text", "records"), default="text")
    p_verify.add_argument("--timing", action="store_true", help="include wall times in the output")

    p_classify = sub.add_parser("classify", help="print the kernel-shape case and table")
    _add_common(p_classify)

    p_enum = sub.add_parser("enumerate", help="dump an enumerated point set or group")
    _add_common(p_enum)
    p_enum.add_argument(
        "--what", default="G", choices=("M", "M0", "M1", "H", "H0", "H1", "G", "G0", "G1", "O", "PO")
    )

    p_tables = sub.add_parser("tables", help="emit the table classification for all scenarios")
    _add_common(p_tables)
    p_tables.add_argument("--format", choices=("text", "records"), default="text")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ValidationError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def _dispatch(args):
    if args.command == "verify":
        scenarios = _scenarios_from_args(args)
        report = run(scenarios, jobs=args.jobs, budget=args.budget)
        render = render_records if args.format == "records" else render_text
        print(render(report, show_timing=args.timing))
        return 0 if report.passed else 1

    if args.command == "classify":
        for sc in _scenarios_from_args(args):
            cls = classify_scenario(sc.space)
            table = "Table %s" % cls.table if cls.table else "no table"
            prefix = "" if sc.id == "cli" else "%s: " % sc.id
            print("%s%s, %s" % (prefix, cls.label, table))
        return 0

    if args.command == "enumerate":
        for sc in _scenarios_from_args(args):
            _enumerate_one(sc, args.what, args.budget)
        return 0

    if args.command == "tables":
        scenarios = _scenarios_from_args(args)
        rows = []
        for sc in scenarios:
            cls = classify_scenario(sc.space)
            rows.append(
                (
                    sc.id,
                    cls.label,
                    str(cls.radical_dim),
                    "!=0" if cls.q_radical_nonzero else "=0",
                    str(cls.dim),
                    str(cls.characteristic),
                    "Table %s" % cls.table if cls.table else "-",
                )
            )
        if args.format == "records":
            import json

            for r in rows:
                print(
                    json.dumps(
                        {
                            "scenario": r[0],
                            "case": r[1],
                            "radical_dim": r[2],
                            "q_on_radical": r[3],
                            "dim": r[4],
                            "char": r[5],
                            "table": r[6],
                        },
                        sort_keys=True,
                    )
                )
        else:
            header = ("scenario", "case", "rad", "Q(rad)", "dim", "char", "table")
            widths = [max(len(header[i]), max((len(r[i]) for r in rows), default=0)) for i in range(7)]
            fmt = "  ".join("%%-%ds" % w for w in widths)
            print(fmt % header)
            for r in rows:
                print(fmt % r)
        return 0
    raise ValueError("unknown command %r" % args.command)


def _enumerate_one(sc, what, budget):
    space = sc.space
    if sc.id != "cli":
        print("# scenario %s" % sc.id)
    if what in ("O", "PO"):
        O = enumerate_O_weak(space, budget=budget)
        table = O if what == "O" else project_to_PO_weak(space, O)
        print("# %s order %d" % (what, len(table)))
        for m in table.elements:
            print("; ".join(", ".join(str(e) for e in row) for row in m))
        return
    base = what[0]
    ps = {"M": enumerate_M, "H": enumerate_H, "G": enumerate_G}[base](space, budget=budget)
    rays = ps.rays
    if what.endswith("0"):
        rays = ps.even()
    elif what.endswith("1"):
        rays = ps.odd()
    print("# %s: %d rays" % (what, len(rays)))
    for r in sorted(rays, key=lambda r: r.sort_key()):
        print(str(r))


if __name__ == "__main__":
    sys.exit(main())
