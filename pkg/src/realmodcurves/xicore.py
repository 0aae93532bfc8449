"""The graph of parabolic vertices, geodesics and elliptic vertices of a real subgroup.

Geodesics are triples [x, y; z] up to rho^2.  The optimized construction
anchors x at one representative per parabolic class and deduplicates
geodesics by building the candidate equivalence h on the basis (x, z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvariantViolation
from .groups import (Conjugation, Mat2, SubgroupSpec, Vec2, map_on_basis, orbit_partition,
                     pairing_matrix_of)
from .modgraph import ELLIPTIC, PARABOLIC, ModularGraph, verify_cyclic


def complement(w: int) -> int:
    return 3 - w


@dataclass(frozen=True)
class GeodesicTriple:
    """[x, y; z] of weight w, with the element g of condition (c) when known."""

    x: Vec2
    y: Vec2
    z: Vec2
    w: int
    witness: Optional[Mat2] = field(default=None, compare=False, hash=False)

    def key(self):
        return (self.x.x1, self.x.x2, self.y.x1, self.y.x2, self.z.x1, self.z.x2, self.w)

    def __lt__(self, other):
        return self.key() < other.key()

    def __neg__(self):
        return GeodesicTriple(-self.x, -self.y, -self.z, self.w)

    def __repr__(self):
        return f"[{self.x!r},{self.y!r};{self.z!r}]_{self.w}"

    def check_triple(self) -> bool:
        """Conditions (a) and (b)."""
        x, y, z, w = self.x, self.y, self.z, self.w
        n = x.n
        return (x.is_basis() and y.is_basis() and z.is_basis()
                and x.pair(z) == 1 % n and z.pair(y) == 1 % n
                and x + y == z.scale(w) and x.pair(y) == w % n)

    def act(self, h: Mat2) -> "GeodesicTriple":
        return GeodesicTriple(h @ self.x, h @ self.y, h @ self.z, self.w)


def rho(t: GeodesicTriple) -> GeodesicTriple:
    wc = complement(t.w)
    return GeodesicTriple(t.z, t.z - t.x.scale(wc), t.y, wc)


def rho2_orbit(t: GeodesicTriple) -> list[GeodesicTriple]:
    out = [t]
    for _ in range(3):
        out.append(rho(rho(out[-1])))
    return out


@dataclass(frozen=True)
class GeodesicClass:
    """A rho^2-orbit, stored as its lexicographically least member."""

    rep: GeodesicTriple

    @classmethod
    def of(cls, t: GeodesicTriple) -> "GeodesicClass":
        return cls(min(rho2_orbit(t)))

    @property
    def members(self):
        return rho2_orbit(self.rep)

    @property
    def weight(self):
        return self.rep.w


def witness_matrix(x: Vec2, y: Vec2, w: int, conj: Conjugation) -> Mat2:
    """The g with Cg = 1 + w' <-, x> y, i.e. v -> Cv + w' <v, x> Cy."""
    n = x.n
    m = pairing_matrix_of(x, y, complement(w))
    one = Mat2.identity(n)
    cg = Mat2((one.a + m.a) % n, m.b, m.c, (one.d + m.d) % n, n)
    return conj.matrix @ cg


def satisfies_c(t: GeodesicTriple, spec: SubgroupSpec, conj: Conjugation) -> Optional[Mat2]:
    g = witness_matrix(t.x, t.y, t.w, conj)
    return g if g in spec else None


def complement_vector(x: Vec2) -> Vec2:
    """Some u with <x, u> = 1."""
    n = x.n
    if n == 1:
        return Vec2(0, 0, 1)
    # search the smallest coefficients; x is a basis vector so a solution exists
    for s in range(n):
        for t in range(n):
            if (x.x1 * t - x.x2 * s) % n == 1:
                return Vec2(s, t, n)
    raise ValueError(f"{x} is not a basis vector")


def parabolic_witness(x: Vec2, spec: SubgroupSpec, conj: Conjugation) -> Optional[Mat2]:
    """An admissible g in G with Cgx = x, or None.

    Any involution fixing x has the form x -> x, u -> -u + a x in a basis (x, u),
    so only N candidates need testing.
    """
    n = x.n
    u = complement_vector(x)
    # candidates are affine in a: M_a = M_0 + a (M_1 - M_0)
    m0 = conj.matrix @ map_on_basis(x, u, x, -u)
    m1 = conj.matrix @ map_on_basis(x, u, x, (-u) + x)
    a = np.arange(n, dtype=np.int64)
    cand = [(p + a * (q - p)) % n for p, q in zip(m0[:4], m1[:4])]
    hits = np.flatnonzero(spec.contains_np(*cand))
    if len(hits) == 0:
        return None
    k = int(hits[0])
    return Mat2(*(int(c[k]) for c in cand), n)


def is_parabolic(x: Vec2, spec: SubgroupSpec, conj: Conjugation) -> bool:
    return parabolic_witness(x, spec, conj) is not None


def _half_solutions(x: Vec2, u: Vec2, s: int):
    """All z = u + k x with 2z = 2u + (s+1) x."""
    n = x.n
    return [u + x.scale(k) for k in range(n) if (2 * k - s - 1) % n == 0]


def geodesics_at(x: Vec2, spec: SubgroupSpec, conj: Conjugation) -> list[GeodesicTriple]:
    """All triples [x, y; z] with first component exactly x satisfying (a)-(c)."""
    n = x.n
    u = complement_vector(x)
    out = []
    for w in (1, 2):
        for s in range(n):
            y = u.scale(w) + x.scale(s)
            if not y.is_basis() or x.pair(y) != w % n:
                continue
            g = witness_matrix(x, y, w, conj)
            if g not in spec:
                continue
            if w == 1:
                zs = [x + y]
            else:
                zs = _half_solutions(x, u, s)
            for z in zs:
                t = GeodesicTriple(x, y, z, w, g)
                if z.is_basis() and x.pair(z) == 1 % n:
                    out.append(t)
    return out


def sigma_of(t: GeodesicTriple) -> Mat2:
    """The map x -> -y, z -> z - w'y."""
    return map_on_basis(t.x, t.z, -t.y, t.z - t.y.scale(complement(t.w)))


def intersects(cls: GeodesicClass | GeodesicTriple, spec: SubgroupSpec) -> Optional[GeodesicClass]:
    """The geodesic meeting this one at an elliptic vertex, if any."""
    t = cls.rep if isinstance(cls, GeodesicClass) else cls
    sigma = sigma_of(t)
    n = t.x.n
    if sigma.det() != 1 % n:
        raise InvariantViolation(f"sigma for {t} has determinant {sigma.det()}")
    if sigma not in spec:
        return None
    if sigma @ sigma != -Mat2.identity(n) or sigma @ t.y != t.x:
        raise InvariantViolation(f"sigma for {t} is not of order 4 swapping the ends")
    return GeodesicClass.of(rho(t))


def equivalent(t1: GeodesicTriple, t2: GeodesicTriple, spec: SubgroupSpec) -> Optional[Mat2]:
    """Some h in G carrying the geodesic of t1 onto that of t2, or None."""
    if t1.w != t2.w:
        return None
    for v in rho2_orbit(t1):
        h = map_on_basis(v.x, v.z, t2.x, t2.z)
        if h in spec:
            return h
    return None


@dataclass
class XiData:
    """Everything computed on the way to the quotient graph."""

    graph: ModularGraph
    parabolic_reps: list[Vec2]
    geodesics: list[GeodesicClass]
    elliptic_pairs: list[tuple[int, int]]
    edge_geodesic: list[int]
    class_of: dict = field(repr=False, default_factory=dict)

    @property
    def num_geodesic_classes(self) -> int:
        return len(self.geodesics)


def _parabolic_partition(spec, conj):
    class_of, reps = orbit_partition(spec)
    parabolic = [is_parabolic(r, spec, conj) for r in reps]
    return class_of, reps, parabolic


def parabolic_classes(spec: SubgroupSpec, conj: Conjugation) -> list[Vec2]:
    _, reps, parabolic = _parabolic_partition(spec, conj)
    return [r for r, ok in zip(reps, parabolic) if ok]


def compute_xi(spec: SubgroupSpec, conj: Conjugation, verify: bool = True) -> XiData:
    class_of, reps, parabolic = _parabolic_partition(spec, conj)
    pclasses = [i for i, ok in enumerate(parabolic) if ok]
    vertex_of_class = {c: i for i, c in enumerate(pclasses)}

    buckets: dict[tuple, list[int]] = {}
    geos: list[GeodesicTriple] = []

    def bucket_key(t):
        a, b = class_of[t.x], class_of[t.y]
        return (t.w, min(a, b), max(a, b))

    def locate(t):
        for k in buckets.get(bucket_key(t), ()):
            if equivalent(geos[k], t, spec) is not None:
                return k
        return None

    for c in pclasses:
        for t in geodesics_at(reps[c], spec, conj):
            if locate(t) is None:
                buckets.setdefault(bucket_key(t), []).append(len(geos))
                geos.append(t)

    for t in geos:
        for end in (t.x, t.y):
            if not parabolic[class_of[end]]:
                raise InvariantViolation(f"geodesic {t} ends at non-parabolic {end}")

    partner: dict[int, int] = {}
    for k, t in enumerate(geos):
        other = intersects(t, spec)
        if other is None:
            continue
        j = locate(other.rep)
        if j is None:
            raise InvariantViolation(f"partner {other.rep} of {t} is not among the geodesics")
        partner[k] = j

    for k, j in partner.items():
        if partner.get(j) != k:
            raise InvariantViolation(f"intersection of geodesic classes {k}, {j} is not symmetric")

    kinds = [PARABOLIC] * len(pclasses)
    labels = [repr(reps[c]) for c in pclasses]
    elliptic_pairs = sorted({(min(k, j), max(k, j)) for k, j in partner.items()})
    ell_vertex = {}
    for k, j in elliptic_pairs:
        ell_vertex[k] = ell_vertex[j] = len(kinds)
        kinds.append(ELLIPTIC)
        labels.append(f"e{{{k},{j}}}")

    edges = []
    for k, t in enumerate(geos):
        u = vertex_of_class[class_of[t.x]]
        v = ell_vertex[k] if k in ell_vertex else vertex_of_class[class_of[t.y]]
        edges.append((u, v, t.w))

    graph = ModularGraph.from_edges(kinds, edges, labels)
    if verify:
        verify_cyclic(graph)
    return XiData(graph, [reps[c] for c in pclasses], [GeodesicClass.of(t) for t in geos],
                  elliptic_pairs, list(range(len(geos))), class_of)


def build_xi(spec: SubgroupSpec, conj: Conjugation) -> ModularGraph:
    return compute_xi(spec, conj).graph


def classify_edges(xi: ModularGraph) -> dict[int, str]:
    """Edge index (as in ``xi.edges()``) -> 'T1a' | 'T1b' | 'T2'."""
    out = {}
    for i, (u, v, _) in enumerate(xi.edges()):
        ku, kv = xi.kinds[u], xi.kinds[v]
        if ku == ELLIPTIC and kv == ELLIPTIC:
            raise InvariantViolation(f"edge {i} joins two elliptic vertices")
        if ELLIPTIC in (ku, kv):
            out[i] = "T2"
        elif u == v:
            out[i] = "T1b"
        else:
            out[i] = "T1a"
    return out
