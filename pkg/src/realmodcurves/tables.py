"""Table rows in the gold CSV layout, and diffs against the gold tables."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .families import genus
from .gold import GoldRow, load_gold
from .groups import Conjugation, Family, family_group
from .modgraph import ELLIPTIC, PARABOLIC, component_stats
from .xicore import build_xi

TABLE_FAMILIES = {"gamma0": Family.GAMMA0, "gamma1": Family.GAMMA1, "gamma": Family.GAMMA,
                  "split": Family.SPLIT, "full": Family.FULL}
# the gold tables leave e blank for these
NO_E_COLUMN = {"gamma0", "gamma1"}
PLUS_MINUS_HEADER = ["family", "N", "g", "pi0", "p_plus", "p_minus"]
PLAIN_HEADER = ["family", "N", "g", "pi0", "p", "e"]


def header(family: str) -> list[str]:
    return PLUS_MINUS_HEADER if family == "gamma" else PLAIN_HEADER


def _counts(spec, conj_name):
    n = spec.n
    g = build_xi(spec, Conjugation.named(conj_name, n))
    return len(component_stats(g)), g.count(PARABOLIC), g.count(ELLIPTIC)


def compute_row(family: str, n: int) -> GoldRow:
    """One table row computed from scratch."""
    if family not in TABLE_FAMILIES:
        raise ValueError(f"no table layout for family {family!r}")
    spec = family_group(TABLE_FAMILIES[family], n)
    g = genus(spec).g
    if family == "gamma":
        pi0, p_plus, _ = _counts(spec, "std")
        _, p_minus, _ = _counts(spec, "inv")
        return GoldRow(family, n, g, pi0, p_plus=p_plus, p_minus=p_minus)
    pi0, p, e = _counts(spec, "std")
    return GoldRow(family, n, g, pi0, p=p, e=None if family in NO_E_COLUMN else e)


def _row_job(args):
    return compute_row(*args)


def compute_rows(family: str, lo: int, hi: int, jobs: int = 1) -> list[GoldRow]:
    """Rows lo..hi in ascending N, whatever the completion order."""
    work = [(family, n) for n in range(lo, hi + 1)]
    if jobs <= 1:
        return [_row_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row_job, work))


def row_cells(row: GoldRow) -> list[str]:
    vals = {"family": row.family, "N": row.n, "g": row.g, "pi0": row.pi0, "p": row.p,
            "e": row.e, "p_plus": row.p_plus, "p_minus": row.p_minus}
    return ["" if vals[c] is None else str(vals[c]) for c in header(row.family)]


def render_csv(family: str, rows: list[GoldRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header(family))
    for row in rows:
        w.writerow(row_cells(row))
    return buf.getvalue()


def render_md(family: str, rows: list[GoldRow]) -> str:
    cols = header(family)
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(row_cells(r)) + " |" for r in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Mismatch:
    family: str
    n: int
    column: str
    expected: int
    got: object

    def __str__(self):
        return f"{self.family},{self.n},{self.column},{self.expected},{self.got}"


def diff_rows(gold: list[GoldRow], computed: list[GoldRow]) -> list[Mismatch]:
    by_n = {r.n: r for r in computed}
    out = []
    for ref in gold:
        row = by_n.get(ref.n)
        for col, want in ref.columns().items():
            got = None if row is None else getattr(row, col)
            if got != want:
                out.append(Mismatch(ref.family, ref.n, col, want, got))
    return out


def verify_family(family: str, max_n: int | None = None, jobs: int = 1,
                  gold_path=None) -> tuple[int, list[Mismatch]]:
    """(rows checked, mismatches) of the gold table for ``family``."""
    gold = load_gold(family, gold_path)
    if max_n is not None:
        gold = [r for r in gold if r.n <= max_n]
    if not gold:
        return 0, []
    computed = compute_rows(family, min(r.n for r in gold), max(r.n for r in gold), jobs)
    return len(gold), diff_rows(gold, computed)
