"""Modular graphs: typed vertices, weighted darts paired by an involution.

Every graph here is meant to be a disjoint union of cycles, which makes
isomorphism a comparison of canonical cycle signatures.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvariantViolation, ValenceError

PARABOLIC = "P"
ELLIPTIC = "E"


@dataclass(frozen=True)
class ModularGraph:
    kinds: tuple[str, ...]
    source: tuple[int, ...]
    weight: tuple[int, ...]
    tau: tuple[int, ...]
    labels: tuple[Optional[str], ...] = ()
    verified_cyclic: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", (None,) * len(self.kinds))
        nd = len(self.source)
        if not (len(self.weight) == len(self.tau) == nd):
            raise ValueError("dart arrays have mismatched lengths")
        for d in range(nd):
            e = self.tau[d]
            if e == d or self.tau[e] != d:
                raise InvariantViolation(f"tau is not a fixed-point-free involution at dart {d}")
            if self.weight[d] != self.weight[e]:
                raise InvariantViolation(f"paired darts {d}, {e} have different weights")
            if self.weight[d] not in (1, 2):
                raise InvariantViolation(f"dart {d} has weight {self.weight[d]}")
            if self.kinds[self.source[d]] == ELLIPTIC and self.kinds[self.source[e]] == ELLIPTIC:
                raise InvariantViolation(f"edge ({d}, {e}) joins two elliptic vertices")

    @classmethod
    def from_edges(cls, kinds: Sequence[str], edges, labels=()) -> "ModularGraph":
        """Build from undirected edges (u, v, weight); edge i becomes darts 2i, 2i+1."""
        source, weight, tau = [], [], []
        for i, (u, v, w) in enumerate(edges):
            source += [u, v]
            weight += [w, w]
            tau += [2 * i + 1, 2 * i]
        return cls(tuple(kinds), tuple(source), tuple(weight), tuple(tau), tuple(labels))

    @property
    def num_vertices(self) -> int:
        return len(self.kinds)

    def target(self, d: int) -> int:
        return self.source[self.tau[d]]

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges as (u, v, weight), one per tau-pair."""
        return [(self.source[d], self.target(d), self.weight[d])
                for d in range(len(self.source)) if d < self.tau[d]]

    def darts_at(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.kinds]
        for d, v in enumerate(self.source):
            out[v].append(d)
        return out

    def count(self, kind: str) -> int:
        return sum(1 for k in self.kinds if k == kind)


@dataclass(frozen=True, order=True)
class CycleSignature:
    """Cyclic sequence of (vertex kind, weight of the edge leaving it)."""

    steps: tuple[tuple[str, int], ...]

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        kinds = "\u2013".join(k for k, _ in self.steps)
        weights = ",".join(str(w) for _, w in self.steps)
        return f"cycle {kinds}, weights {weights}"


def _min_rotation(seq):
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def canonical_signature(steps) -> CycleSignature:
    steps = list(steps)
    n = len(steps)
    kinds = [k for k, _ in steps]
    ws = [w for _, w in steps]
    back = [(kinds[0], ws[n - 1])] + [(kinds[n - i], ws[n - i - 1]) for i in range(1, n)]
    return CycleSignature(min(_min_rotation(steps), _min_rotation(back)))


def _check_valence(g: ModularGraph):
    at = g.darts_at()
    for v, ds in enumerate(at):
        if len(ds) != 2:
            raise ValenceError(v, len(ds))
    return at


def cycles(g: ModularGraph) -> list[list[tuple[int, int]]]:
    """Each cycle as a list of (vertex, outgoing dart); raises ValenceError."""
    at = _check_valence(g)
    seen = [False] * len(g.source)
    out = []
    for v in range(g.num_vertices):
        d0 = at[v][0]
        if seen[d0] or seen[g.tau[d0]]:
            continue
        cyc = []
        d = d0
        while True:
            seen[d] = True
            cyc.append((g.source[d], d))
            back = g.tau[d]
            seen[back] = True
            u = g.source[back]
            a, b = at[u]
            d = b if a == back else a
            if d == d0:
                break
            if seen[d]:
                raise InvariantViolation(f"walk from dart {d0} did not close", vertex=u)
        out.append(cyc)
    return out


def verify_cyclic(g: ModularGraph) -> list[CycleSignature]:
    """Sorted multiset of cycle signatures; raises ValenceError on a bad vertex."""
    sigs = [canonical_signature([(g.kinds[v], g.weight[d]) for v, d in cyc]) for cyc in cycles(g)]
    object.__setattr__(g, "verified_cyclic", True)
    return sorted(sigs)


def is_regular(g: ModularGraph) -> bool:
    at = _check_valence(g)
    for v, (d1, d2) in enumerate(at):
        if g.target(d1) == v and g.tau[d1] == d2:
            return False
        if {g.weight[d1], g.weight[d2]} != {1, 2}:
            return False
    return True


def isomorphic(g1: ModularGraph, g2: ModularGraph) -> bool:
    return verify_cyclic(g1) == verify_cyclic(g2)


def component_stats(g: ModularGraph) -> list[tuple[int, int, tuple[int, ...]]]:
    """Per cycle: (parabolic count, elliptic count, sorted edge weights)."""
    out = []
    for cyc in cycles(g):
        kinds = [g.kinds[v] for v, _ in cyc]
        out.append((kinds.count(PARABOLIC), kinds.count(ELLIPTIC),
                    tuple(sorted(g.weight[d] for _, d in cyc))))
    return sorted(out)


def identity_graph() -> ModularGraph:
    """One parabolic and one elliptic vertex joined by an edge of each weight."""
    return ModularGraph.from_edges([PARABOLIC, ELLIPTIC], [(0, 1, 1), (0, 1, 2)])


def disjoint_union(*graphs: ModularGraph) -> ModularGraph:
    kinds, labels, source, weight, tau = [], [], [], [], []
    for g in graphs:
        voff, doff = len(kinds), len(source)
        kinds += g.kinds
        labels += g.labels
        source += [v + voff for v in g.source]
        weight += g.weight
        tau += [d + doff for d in g.tau]
    return ModularGraph(tuple(kinds), tuple(source), tuple(weight), tuple(tau), tuple(labels))


def relabel(g: ModularGraph, vperm: Sequence[int], dperm: Sequence[int]) -> ModularGraph:
    """Rename vertex v -> vperm[v] and dart d -> dperm[d]."""
    nv, nd = g.num_vertices, len(g.source)
    kinds = [None] * nv
    labels = [None] * nv
    for v in range(nv):
        kinds[vperm[v]] = g.kinds[v]
        labels[vperm[v]] = g.labels[v]
    source, weight, tau = [0] * nd, [0] * nd, [0] * nd
    for d in range(nd):
        source[dperm[d]] = vperm[g.source[d]]
        weight[dperm[d]] = g.weight[d]
        tau[dperm[d]] = dperm[g.tau[d]]
    return ModularGraph(tuple(kinds), tuple(source), tuple(weight), tuple(tau), tuple(labels))


class ProductPrecondition(ValueError):
    pass


def product(g1: ModularGraph, g2: ModularGraph) -> ModularGraph:
    """The fiber-like product of two modular graphs, one of which must be regular."""
    if not (is_regular(g1) or is_regular(g2)):
        raise ProductPrecondition("product needs at least one regular factor")
    vid: dict[tuple[int, int], int] = {}
    kinds, labels = [], []
    for kind in (PARABOLIC, ELLIPTIC):
        for v1 in range(g1.num_vertices):
            if g1.kinds[v1] != kind:
                continue
            for v2 in range(g2.num_vertices):
                if g2.kinds[v2] == kind:
                    vid[(v1, v2)] = len(kinds)
                    kinds.append(kind)
                    labels.append(f"({g1.labels[v1] or v1},{g2.labels[v2] or v2})")

    def kind_of(g, v):
        return g.kinds[v]

    darts: dict[tuple[int, int], int] = {}
    partner: dict[tuple[int, int], tuple[int, int]] = {}
    for e1 in range(len(g1.source)):
        s1, t1 = g1.source[e1], g1.target(e1)
        for e2 in range(len(g2.source)):
            if g1.weight[e1] != g2.weight[e2]:
                continue
            s2, t2 = g2.source[e2], g2.target(e2)
            ks1, kt1, ks2, kt2 = kind_of(g1, s1), kind_of(g1, t1), kind_of(g2, s2), kind_of(g2, t2)
            if ks1 == ks2 and kt1 == kt2:
                partner[(e1, e2)] = (g1.tau[e1], g2.tau[e2])
            elif ks1 == ks2 == PARABOLIC and {kt1, kt2} == {PARABOLIC, ELLIPTIC}:
                if kt1 == PARABOLIC:
                    partner[(e1, e2)] = (g1.tau[e1], e2)
                else:
                    partner[(e1, e2)] = (e1, g2.tau[e2])
            else:
                continue
            darts[(e1, e2)] = len(darts)
    source, weight, tau = [], [], []
    for (e1, e2), i in darts.items():
        source.append(vid[(g1.source[e1], g2.source[e2])])
        weight.append(g1.weight[e1])
        tau.append(darts[partner[(e1, e2)]])
    out = ModularGraph(tuple(kinds), tuple(source), tuple(weight), tuple(tau), tuple(labels))
    verify_cyclic(out)
    return out
