"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Gold values are the appendix tables shipped with the package.  Where a table cell
disagrees with every independent computation the criterion is reported FAIL and
the test is an expected failure; see the notes next to each such test.
"""

import time
from functools import lru_cache

import pytest

from conftest import ACCEPTANCE_LINES
from realmodcurves.checks import (suite_count_identity, suite_crt, suite_cycles, suite_odd_regular,
                                  suite_oracle, suite_preimage, suite_rho, suite_shortcut)
from realmodcurves.families import genus, predict
from realmodcurves.gold import load_gold
from realmodcurves.groups import Conjugation, Family, custom_group, family_group
from realmodcurves.modgraph import ELLIPTIC, PARABOLIC, component_stats, is_regular
from realmodcurves.xicore import build_xi, classify_edges, compute_xi

FAMILY = {"gamma0": Family.GAMMA0, "gamma1": Family.GAMMA1, "gamma": Family.GAMMA,
          "split": Family.SPLIT}


def report(k, ok, detail):
    ACCEPTANCE_LINES.append(f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


class Row:
    __slots__ = ("g", "std", "inv", "classes_ok", "regular_ok")


@lru_cache(maxsize=None)
def sweep(family):
    """Everything the table criteria need, for every gold row; returns (rows, seconds)."""
    start = time.perf_counter()
    rows = {}
    for gold in load_gold(family):
        n = gold.n
        spec = family_group(FAMILY[family], n)
        row = Row()
        row.g = genus(spec).g
        row.classes_ok, row.regular_ok = True, True
        row.std = row.inv = None
        for name in ("std", "inv") if family == "gamma" else ("std",):
            data = compute_xi(spec, Conjugation.named(name, n))
            g = data.graph
            stats = (len(component_stats(g)), g.count(PARABOLIC), g.count(ELLIPTIC))
            setattr(row, name, stats)
            row.classes_ok &= data.num_geodesic_classes == g.num_vertices
            if n % 2:
                row.regular_ok &= is_regular(g)
        rows[n] = row
    return rows, time.perf_counter() - start


def table_mismatches(family, columns):
    rows, _ = sweep(family)
    bad = []
    for gold in load_gold(family):
        row = rows[gold.n]
        got = {"g": row.g, "pi0": row.std[0], "p": row.std[1], "e": row.std[2],
               "p_plus": row.std[1], "p_minus": row.inv[1] if row.inv else None}
        for col in columns:
            want = getattr(gold, col)
            if want is not None and got[col] != want:
                bad.append(f"N={gold.n} {col} gold {want} computed {got[col]}")
        if family == "gamma" and row.std[0] != row.inv[0]:
            bad.append(f"N={gold.n} pi0 differs between conjugations")
    return bad


def table_criterion(k, family, columns, limit):
    bad = table_mismatches(family, columns)
    secs = sweep(family)[1]
    n = len(load_gold(family))
    ok = not bad and secs < limit
    report(k, ok, f"{family} {n} rows, {len(bad)} mismatched cells, {secs:.1f}s (limit {limit}s)"
           + (f"; {'; '.join(bad)}" if bad else ""))
    assert not bad, bad
    assert secs < limit


def test_criterion_01_gamma0_table():
    table_criterion(1, "gamma0", ("pi0", "p"), 120)


def test_criterion_02_gamma1_table():
    table_criterion(2, "gamma1", ("pi0", "p"), 180)


# The table lists p+ = 2 at N = 2.  Gamma(2) has the three cusps 0, 1, oo; c0 sends
# 1 to -1, which Gamma(2) identifies with 1, so all three are real.  The graph
# (and its lift to levels 6, 10, 14) has 3 parabolic vertices.
@pytest.mark.xfail(strict=True, reason="gold p_plus(2) = 2 contradicts the 3 real cusps of X(2)")
def test_criterion_03_gamma_pm_table():
    table_criterion(3, "gamma", ("pi0", "p_plus", "p_minus"), 180)


# Cells at N = 13, 79 (g) and N = 24, 48, 96 (pi0, p) disagree with the computation.
# g: the coset count and the multiplicative nu formulas agree with each other and
# give 3 and 234, the genus of the split Cartan normalizer at p = 13, 79.
# pi0, p: the brute-force oracle, the CRT product of the (matching) rows 8 and 3,
# and a count of conjugation-fixed cusps all give p = 8, 12, 20.
@pytest.mark.xfail(strict=True, reason="five split table cells contradict independent counts")
def test_criterion_04_split_table():
    table_criterion(4, "split", ("g", "pi0", "p", "e"), 300)


# Fails only through the split genus cells at N = 13 and 79 (see criterion 4).
@pytest.mark.xfail(strict=True, reason="split genus cells at N = 13, 79")
def test_criterion_05_genus_columns():
    bad = []
    for fam in FAMILY:
        bad += [f"{fam} {m}" for m in table_mismatches(fam, ("g",))]
    report(5, not bad, f"genus over all four tables, {len(bad)} mismatches"
           + (f"; {'; '.join(bad)}" if bad else ""))
    assert not bad, bad


# predict() follows the closed forms verbatim, including p = 2 for X+(2); the
# computed graph has 3 real cusps there (see criterion 3).
@pytest.mark.xfail(strict=True, reason="closed form for X+(2) cusps contradicts the computation")
def test_criterion_06_predictors():
    bad, checked = [], 0
    for fam, tags in (("gamma0", ("gamma0",)), ("gamma1", ("gamma1",)),
                      ("gamma", ("gamma", "gamma-minus"))):
        rows, _ = sweep(fam)
        for n, row in rows.items():
            for tag in tags:
                stats = row.inv if tag == "gamma-minus" else row.std
                pr = predict(tag, n)
                checked += 1
                if (pr.pi0, pr.p, pr.e) != stats:
                    bad.append(f"{tag}({n}) predicted {(pr.pi0, pr.p, pr.e)} computed {stats}")
    report(6, not bad, f"{checked} predictions, {len(bad)} disagree"
           + (f"; {'; '.join(bad)}" if bad else ""))
    assert not bad, bad


def test_criterion_07_oracle():
    start = time.perf_counter()
    rep = suite_oracle(12)
    secs = time.perf_counter() - start
    ok = rep.ok and secs < 60
    report(7, ok, f"{rep.cases} (group, conjugation) pairs at N <= 12, "
                  f"{len(rep.failures)} differ, {secs:.1f}s")
    assert rep.ok, rep.failures
    assert secs < 60


def test_criterion_08_structure():
    rho = suite_rho(20, samples=10_000)
    cyc = suite_cycles(60)
    reg = suite_odd_regular(60)
    count = suite_count_identity(60)
    gold_range = [f"{fam} N={n}" for fam in FAMILY for n, row in sweep(fam)[0].items()
                  if not (row.classes_ok and row.regular_ok)]
    fails = rho.failures + cyc.failures + reg.failures + count.failures + gold_range
    report(8, not fails, f"rho {rho.cases} triples, cycles {cyc.cases} graphs, odd regularity "
                         f"{reg.cases}, class counts {count.cases} + all gold rows, "
                         f"{len(fails)} failures")
    assert not fails, fails[:10]


def test_criterion_09_crt():
    rep = suite_crt(60)
    report(9, rep.ok, f"{rep.cases} coprime products over gamma0, split, full")
    assert rep.ok, rep.failures


def test_criterion_10_preimage():
    rep = suite_preimage(60)
    report(10, rep.ok, f"{rep.cases} lifts from N0 = 5..12 by 2, 3, 5")
    assert rep.ok, rep.failures


def test_criterion_11_spot_findings():
    def stats(n):
        return component_stats(build_xi(family_group(Family.SPLIT, n), Conjugation.std(n)))

    s10, s26 = stats(10), stats(26)
    start = time.perf_counter()
    s255 = stats(255)
    secs = time.perf_counter() - start
    conj = Conjugation.std(2)
    g = build_xi(custom_group(2, [[[1, 1], [1, 0]]], conj), conj)
    checks = {
        "split(10) one 9-vertex cycle": len(s10) == 1 and s10[0][0] + s10[0][1] == 9,
        "split(26) one 17-vertex cycle": len(s26) == 1 and s26[0][0] + s26[0][1] == 17,
        "split(255) has 30P+18E": any(c[:2] == (30, 18) for c in s255) and secs < 60,
        "type 1b loop": component_stats(g) == [(1, 0, (1,))] and classify_edges(g) == {0: "T1b"},
    }
    ok = all(checks.values())
    report(11, ok, ", ".join(f"{k}: {'ok' if v else 'NO'}" for k, v in checks.items())
           + f" (split(255) in {secs:.1f}s)")
    assert ok, checks


def test_criterion_12_shortcut():
    rep = suite_shortcut(99)
    report(12, rep.ok, f"{rep.cases} odd (family, N) cases up to 99")
    assert rep.ok, rep.failures
