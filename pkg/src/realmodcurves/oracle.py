"""Brute-force construction of the quotient graph, for cross-checking.

Builds the full graph on all basis vectors and all triples, then quotients by
explicit orbits.  Deliberately shares nothing with ``xicore`` except the
matrix/vector types and the group's membership predicate.
"""

from __future__ import annotations

from math import gcd

from .groups import Conjugation, Mat2, SubgroupSpec, Vec2
from .modgraph import ELLIPTIC, PARABOLIC, ModularGraph

ORACLE_MAX_LEVEL = 16
ORACLE_MAX_ORDER = 100_000


class OracleGuard(ValueError):
    pass


def _elements(spec: SubgroupSpec):
    n = spec.n
    one = Mat2.identity(n)
    if spec.generators is not None:
        gens = list(spec.generators)
        seen = {one}
        todo = [one]
        while todo:
            m = todo.pop()
            for g in gens:
                h = m @ g
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
                    if len(seen) > ORACLE_MAX_ORDER:
                        raise OracleGuard("group too large for the oracle")
        return seen, gens
    seen = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c) % n == 1 % n:
                        m = Mat2(a, b, c, d, n)
                        if spec.membership(m):
                            seen.add(m)
    # greedy generating set
    gens, span = [], {one}
    for m in sorted(seen):
        if m in span:
            continue
        gens.append(m)
        span = {one}
        todo = [one]
        while todo:
            x = todo.pop()
            for g in gens:
                h = x @ g
                if h not in span:
                    span.add(h)
                    todo.append(h)
    return seen, gens


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _pm(v: Vec2):
    return min(v, -v)


def _pairing(u: Vec2, v: Vec2) -> int:
    return (u.x1 * v.x2 - u.x2 * v.x1) % u.n


def _rank_one(coeff, x: Vec2, y: Vec2) -> Mat2:
    """Matrix of v -> coeff * <v, x> * y, computed entrywise on e1, e2."""
    n = x.n
    e1, e2 = Vec2(1 % n, 0, n), Vec2(0, 1 % n, n)
    c1 = coeff * _pairing(e1, x)
    c2 = coeff * _pairing(e2, x)
    return Mat2(c1 * y.x1 % n, c2 * y.x1 % n, c1 * y.x2 % n, c2 * y.x2 % n, n)


def _add(m: Mat2, k: Mat2) -> Mat2:
    n = m.n
    return Mat2((m.a + k.a) % n, (m.b + k.b) % n, (m.c + k.c) % n, (m.d + k.d) % n, n)


def _rho(t):
    x, y, z, w = t
    wc = 3 - w
    return (z, (z - x.scale(wc)), y, wc)


def _geo_key(t):
    orbit = [t]
    for _ in range(3):
        orbit.append(_rho(_rho(orbit[-1])))
    return min(orbit)


def _act(h: Mat2, t):
    x, y, z, w = t
    return (h @ x, h @ y, h @ z, w)


def build_xi_oracle(spec: SubgroupSpec, conj: Conjugation) -> ModularGraph:
    n = spec.n
    elements, gens = _elements(spec)
    if n > ORACLE_MAX_LEVEL and len(elements) > ORACLE_MAX_ORDER:
        raise OracleGuard(f"level {n} with |G| = {len(elements)} is beyond the oracle guard")
    C = conj.matrix
    one = Mat2.identity(n)
    V = [Vec2(a, b, n) for a in range(n) for b in range(n) if gcd(gcd(a, b), n) == 1]
    Vset = set(V)

    cg_of = {}
    for g in elements:
        cg = C @ g
        if cg @ cg == one:
            cg_of[cg] = g
    parabolic = {_pm(x) for x in V for cg in cg_of if cg @ x == x}

    halves: dict[Vec2, list[Vec2]] = {}
    for z in V:
        halves.setdefault(z.scale(2), []).append(z)

    triples = set()
    for x in V:
        for y in V:
            p = _pairing(x, y)
            for w in (1, 2):
                if p != w % n:
                    continue
                zs = [x + y] if w == 1 else halves.get(x + y, [])
                for z in zs:
                    if z in Vset and _pairing(x, z) == 1 % n and _pairing(z, y) == 1 % n:
                        triples.add((x, y, z, w))

    def cond_c(t):
        x, y, z, w = t
        wc = 3 - w
        target = _add(one, _rank_one(wc, x, y))
        g = cg_of.get(target)
        if g is None:
            return False
        return _add(C @ g, one) == _rank_one(wc, y, x)

    geos = {_geo_key(t) for t in triples if cond_c(t)}
    partner = {}
    for t in geos:
        r = _geo_key(_rho(t))
        if r in geos:
            partner[t] = r
    ell = {frozenset((t, r)) for t, r in partner.items()}

    # edges of the big graph
    big_edges = []
    for t in geos:
        x, y, _, w = t
        if t in partner:
            p = frozenset((t, partner[t]))
            big_edges.append((("e", t, _pm(x)), ("P", _pm(x)), ("E", p), w))
            big_edges.append((("e", t, _pm(y)), ("P", _pm(y)), ("E", p), w))
        else:
            big_edges.append((("e", t), ("P", _pm(x)), ("P", _pm(y)), w))

    for _, u, v, _ in big_edges:
        for end in (u, v):
            if end[0] == "P" and end[1] not in parabolic:
                raise AssertionError(f"geodesic endpoint {end[1]} is not parabolic")

    def act_obj(h, obj):
        tag = obj[0]
        if tag == "P":
            return ("P", _pm(h @ obj[1]))
        if tag == "E":
            return ("E", frozenset(_geo_key(_act(h, t)) for t in obj[1]))
        if len(obj) == 2:
            return ("e", _geo_key(_act(h, obj[1])))
        return ("e", _geo_key(_act(h, obj[1])), _pm(h @ obj[2]))

    uf = _UF()
    objects = [("P", x) for x in parabolic] + [("E", p) for p in ell] + [e[0] for e in big_edges]
    for obj in objects:
        for h in gens:
            img = act_obj(h, obj)
            uf.union(_sortable(obj), _sortable(img))

    vclass: dict = {}
    kinds, labels = [], []
    for obj in sorted((("P", x) for x in parabolic), key=_sortable):
        r = uf.find(_sortable(obj))
        if r not in vclass:
            vclass[r] = len(kinds)
            kinds.append(PARABOLIC)
            labels.append(repr(obj[1]))
    for obj in sorted((("E", p) for p in ell), key=_sortable):
        r = uf.find(_sortable(obj))
        if r not in vclass:
            vclass[r] = len(kinds)
            kinds.append(ELLIPTIC)
            labels.append("e")

    seen_edges = set()
    edges = []
    for e, u, v, w in sorted(big_edges, key=lambda q: _sortable(q[0])):
        r = uf.find(_sortable(e))
        if r in seen_edges:
            continue
        seen_edges.add(r)
        edges.append((vclass[uf.find(_sortable(u))], vclass[uf.find(_sortable(v))], w))
    return ModularGraph.from_edges(kinds, edges, labels)


def _sortable(obj):
    """Hashable, totally ordered stand-in for a big-graph object."""
    tag = obj[0]
    if tag == "P":
        return ("P", obj[1].key())
    if tag == "E":
        return ("E", tuple(sorted(_tkey(t) for t in obj[1])))
    return ("e",) + tuple(_tkey(o) if isinstance(o, tuple) and len(o) == 4 else o.key()
                          for o in obj[1:])


def _tkey(t):
    x, y, z, w = t
    return (x.key(), y.key(), z.key(), w)
