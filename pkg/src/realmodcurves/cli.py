"""Command line: compute graphs, generate and verify tables, run invariant suites.

Exit codes: 0 ok, 1 mismatch or failed property, 2 usage error,
3 element budget exceeded, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import DEFAULT_MAX, SUITES
from .document import GraphDocument
from .errors import BudgetExceeded, InvariantViolation
from .gold import GOLD_FILES
from .groups import Conjugation, Family, Mat2, custom_group, family_group
from .modgraph import verify_cyclic
from .tables import TABLE_FAMILIES, compute_rows, render_csv, render_md, verify_family
from .xicore import build_xi

EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 1, 2, 3, 4

FAMILY_CHOICES = ["gamma", "gamma-minus", "gamma1", "gamma0", "split", "full", "custom"]
_FAMILY_OF = {"gamma": Family.GAMMA, "gamma-minus": Family.GAMMA, "gamma1": Family.GAMMA1,
              "gamma0": Family.GAMMA0, "split": Family.SPLIT, "full": Family.FULL}


class UsageError(ValueError):
    pass


def _parse_conjugation(value, n: int) -> Conjugation:
    if isinstance(value, str):
        return Conjugation.named(value, n)
    return Conjugation(Mat2.of(value, n), "custom")


def load_group_file(path: str):
    """Read {"level", "conjugation", "generators"}; entries are reduced mod level."""
    try:
        data = json.loads(Path(path).read_text())
        n = int(data["level"])
        gens = data["generators"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read group file {path}: {exc}") from exc
    if n < 1:
        raise UsageError("group file level must be positive")
    try:
        conj = _parse_conjugation(data.get("conjugation", "std"), n)
        spec = custom_group(n, gens, conj, description=str(path))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad group file {path}: {exc}") from exc
    return n, spec, conj


def resolve_group(args):
    """(level, spec, conj, group name) from compute arguments."""
    if args.family == "custom":
        if not args.group_file:
            raise UsageError("--family custom needs --group-file")
        n, spec, conj = load_group_file(args.group_file)
        if args.level is not None and args.level != n:
            raise UsageError(f"--level {args.level} disagrees with group file level {n}")
        return n, spec, conj, "custom"
    if args.level is None or args.level < 1:
        raise UsageError("--level must be a positive integer")
    n = args.level
    default = "inv" if args.family == "gamma-minus" else "std"
    conj = Conjugation.named(args.conjugation or default, n)
    spec = family_group(_FAMILY_OF[args.family], n)
    if not spec.is_c_stable(conj):
        raise UsageError(f"{args.family}({n}) is not stable under the {conj.name} conjugation")
    return n, spec, conj, args.family


def cmd_compute(args) -> int:
    n, spec, conj, name = resolve_group(args)
    g = build_xi(spec, conj)
    verify_cyclic(g)
    doc = GraphDocument.from_graph(g, n, name, conj.name)
    render = {"text": doc.to_text, "json": doc.to_json, "dot": doc.to_dot}[args.format]
    print(render())
    return 0


def cmd_table(args) -> int:
    if args.family not in TABLE_FAMILIES:
        raise UsageError(f"no table layout for {args.family}; use one of {sorted(TABLE_FAMILIES)}")
    if args.min < 1 or args.max < args.min:
        raise UsageError("need 1 <= --min <= --max")
    rows = compute_rows(args.family, args.min, args.max, args.jobs)
    out = render_csv(args.family, rows) if args.format == "csv" else render_md(args.family, rows)
    sys.stdout.write(out)
    return 0


def cmd_verify(args) -> int:
    families = list(GOLD_FILES) if args.family == "all" else [args.family]
    if args.gold and len(families) != 1:
        raise UsageError("--gold needs a single --family")
    failed = 0
    for fam in families:
        if fam not in GOLD_FILES:
            raise UsageError(f"no gold table for {fam}")
        count, bad = verify_family(fam, args.max, args.jobs, args.gold)
        for m in bad:
            print(m)
        failed += len(bad)
        print(f"{fam}: {count} rows, {len(bad)} mismatched cells", file=sys.stderr)
    return EXIT_MISMATCH if failed else 0


def cmd_check(args) -> int:
    max_n = args.max if args.max is not None else DEFAULT_MAX[args.suite]
    report = SUITES[args.suite](max_n)
    print(json.dumps(report.as_dict(), indent=2))
    return 0 if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realmodcurves",
                                description="Real components of modular curves from finite group data.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="build the graph for one group")
    c.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    c.add_argument("--level", type=int)
    c.add_argument("--conjugation", choices=["std", "inv"])
    c.add_argument("--group-file")
    c.add_argument("--format", choices=["text", "json", "dot"], default="text")
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("table", help="tabulate g, pi0, p, e over a range of levels")
    t.add_argument("--family", required=True)
    t.add_argument("--min", type=int, default=1)
    t.add_argument("--max", type=int, required=True)
    t.add_argument("--format", choices=["csv", "md"], default="csv")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="recompute the gold tables and diff")
    v.add_argument("--family", default="all", choices=["all", *GOLD_FILES])
    v.add_argument("--max", type=int)
    v.add_argument("--gold", help="alternative gold CSV (single family)")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("check", help="run an invariant suite")
    k.add_argument("--suite", choices=sorted(SUITES), required=True)
    k.add_argument("--max", type=int)
    k.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        for key, val in exc.details.items():
            print(f"  {key}: {val}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
