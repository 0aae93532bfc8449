"""Invariant suites shared by the CLI ``check`` command and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from .errors import InvariantViolation
from .families import shortcut_components
from .groups import (Conjugation, Family, Vec2, custom_group, family_group, preimage_group)
from .modgraph import ELLIPTIC, component_stats, is_regular, isomorphic, product, verify_cyclic
from .oracle import build_xi_oracle
from .xicore import GeodesicTriple, build_xi, compute_xi, rho

BUILTIN = (Family.FULL, Family.GAMMA, Family.GAMMA1, Family.GAMMA0, Family.SPLIT)

# Three fixed groups given by generators; C-conjugates are added on construction.
CUSTOM_FIXTURES = {
    "order6": [[[1, 1], [-1, 0]]],
    "sanov": [[[1, 2], [0, 1]], [[1, 0], [2, 1]]],
    "hyperbolic": [[[2, 1], [1, 1]]],
}


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": self.suite, "cases": self.cases, "ok": self.ok, "failures": self.failures}


def stable_pairs(n: int, families=BUILTIN):
    """(label, spec, conj) for built-in families under every conjugation fixing them."""
    for fam in families:
        spec = family_group(fam, n)
        for name in ("std", "inv"):
            conj = Conjugation.named(name, n)
            if spec.is_c_stable(conj):
                yield f"{fam.value}({n},{name})", spec, conj


def custom_pairs(n: int):
    for key, gens in CUSTOM_FIXTURES.items():
        for name in ("std", "inv"):
            conj = Conjugation.named(name, n)
            yield f"{key}({n},{name})", custom_group(n, gens, conj, description=key), conj


def random_triple(n: int, rng: random.Random) -> GeodesicTriple:
    """A uniformly-ish random triple satisfying conditions (a) and (b)."""
    while True:
        x = Vec2(rng.randrange(n), rng.randrange(n), n)
        if not x.is_basis():
            continue
        # complete x to a basis by brute force
        u = next(Vec2(s, t, n) for s in range(n) for t in range(n)
                 if (x.x1 * t - x.x2 * s) % n == 1 % n)
        w = rng.choice((1, 2))
        y = u.scale(w) + x.scale(rng.randrange(n))
        if w == 1:
            zs = [x + y]
        else:
            zs = [z for z in (Vec2(a, b, n) for a in range(n) for b in range(n))
                  if z.scale(2) == x + y and x.pair(z) == 1 % n]
        t = GeodesicTriple(x, y, rng.choice(zs), w) if zs else None
        if t is not None and t.check_triple():
            return t


def suite_rho(max_n: int, samples: int = 10_000, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("rho")
    rng = random.Random(seed)
    levels = list(range(3, max(max_n, 3) + 1))
    for i in range(samples):
        t = random_triple(levels[i % len(levels)], rng)
        imgs = [t]
        for _ in range(8):
            imgs.append(rho(imgs[-1]))
        rep.cases += 1
        if imgs[8] != t or imgs[4] != -t:
            rep.failures.append(f"rho order fails on {t}")
        if any(not s.check_triple() for s in imgs):
            rep.failures.append(f"rho leaves the triples at {t}")
        if any(imgs[k + 1].w != 3 - imgs[k].w for k in range(8)):
            rep.failures.append(f"rho does not swap weights at {t}")
        r2 = GeodesicTriple(t.y, -t.x, t.z - t.x.scale(3 - t.w), t.w)
        if imgs[2] != r2:
            rep.failures.append(f"rho^2 differs from [y,-x;z-w'x] at {t}")
    return rep


def _each_graph(max_n, body, rep, odd_only=False, min_n=1):
    for n in range(min_n, max_n + 1):
        if odd_only and n % 2 == 0:
            continue
        for label, spec, conj in stable_pairs(n):
            rep.cases += 1
            try:
                msg = body(n, spec, conj)
            except InvariantViolation as exc:
                msg = f"{type(exc).__name__}: {exc}"
            if msg:
                rep.failures.append(f"{label}: {msg}")
    return rep


def suite_cycles(max_n: int) -> SuiteReport:
    def body(n, spec, conj):
        g = build_xi(spec, conj)
        verify_cyclic(g)
        return None if component_stats(g) else "empty graph"
    return _each_graph(max_n, body, SuiteReport("cycles"))


def suite_odd_regular(max_n: int) -> SuiteReport:
    def body(n, spec, conj):
        return None if is_regular(build_xi(spec, conj)) else "not regular"
    return _each_graph(max_n, body, SuiteReport("odd-regular"), odd_only=True)


def suite_count_identity(max_n: int) -> SuiteReport:
    def body(n, spec, conj):
        data = compute_xi(spec, conj)
        k, v = data.num_geodesic_classes, data.graph.num_vertices
        return None if k == v else f"{k} geodesic classes vs {v} vertices"
    return _each_graph(max_n, body, SuiteReport("count-identity"))


def suite_oracle(max_n: int) -> SuiteReport:
    rep = SuiteReport("oracle")
    for n in range(1, min(max_n, 16) + 1):
        for label, spec, conj in [*stable_pairs(n), *custom_pairs(n)]:
            rep.cases += 1
            if not isomorphic(build_xi(spec, conj), build_xi_oracle(spec, conj)):
                rep.failures.append(f"{label}: optimized and brute-force graphs differ")
    return rep


def suite_crt(max_n: int, families=(Family.GAMMA0, Family.SPLIT, Family.FULL)) -> SuiteReport:
    rep = SuiteReport("crt")
    cache = {}

    def xi(fam, n):
        if (fam, n) not in cache:
            cache[fam, n] = build_xi(family_group(fam, n), Conjugation.std(n))
        return cache[fam, n]

    for fam in families:
        for n1 in range(2, max_n + 1):
            for n2 in range(n1 + 1, max_n // n1 + 1):
                if gcd(n1, n2) != 1:
                    continue
                rep.cases += 1
                if not isomorphic(xi(fam, n1 * n2), product(xi(fam, n1), xi(fam, n2))):
                    rep.failures.append(f"{fam.value}: {n1}*{n2} is not the product")
    return rep


def suite_preimage(max_n: int = 60, multipliers=(2, 3, 5)) -> SuiteReport:
    rep = SuiteReport("preimage")
    for n0 in range(5, 13):
        for m in multipliers:
            n = n0 * m
            if n > max_n:
                continue
            for label, g0, conj0 in stable_pairs(n0):
                rep.cases += 1
                g = preimage_group(g0, n)
                conj = Conjugation.named(conj0.name, n)
                if not isomorphic(build_xi(g, conj), build_xi(g0, conj0)):
                    rep.failures.append(f"{label} lifted to level {n} changes the graph")
    return rep


def suite_shortcut(max_n: int) -> SuiteReport:
    rep = SuiteReport("shortcut")
    fams = (Family.GAMMA, Family.GAMMA1, Family.GAMMA0, Family.SPLIT)
    for n in range(3, max_n + 1, 2):
        for fam in fams:
            spec, conj = family_group(fam, n), Conjugation.std(n)
            data = compute_xi(spec, conj)
            if data.graph.count(ELLIPTIC):
                continue
            rep.cases += 1
            got = shortcut_components(spec, conj, data)
            want = len(component_stats(data.graph))
            if got != want:
                rep.failures.append(f"{fam.value}({n}): shortcut {got}, graph {want}")
    return rep


SUITES: dict[str, Callable[[int], SuiteReport]] = {
    "rho": suite_rho,
    "cycles": suite_cycles,
    "odd-regular": suite_odd_regular,
    "oracle": suite_oracle,
    "crt": suite_crt,
    "preimage": suite_preimage,
    "shortcut": suite_shortcut,
    "count-identity": suite_count_identity,
}

DEFAULT_MAX = {"rho": 20, "cycles": 60, "odd-regular": 60, "oracle": 12, "crt": 60,
               "preimage": 60, "shortcut": 99, "count-identity": 60}
