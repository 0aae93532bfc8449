"""Matrices and vectors over Z/N, conjugations, and subgroups of SL2(Z/N).

A subgroup is carried as a membership predicate plus (when known) a small
generating set; the explicit element set is only built on demand.
"""

from __future__ import annotations

import enum
import threading
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import BudgetExceeded
from .modring import RingCtx, crt_lift, inverse_mod, unit_generators

DEFAULT_BUDGET = 20_000_000


class Vec2(NamedTuple):
    x1: int
    x2: int
    n: int

    @classmethod
    def of(cls, x1, x2, n) -> "Vec2":
        return cls(int(x1) % n, int(x2) % n, n)

    def __add__(self, other):
        return Vec2((self.x1 + other.x1) % self.n, (self.x2 + other.x2) % self.n, self.n)

    def __sub__(self, other):
        return Vec2((self.x1 - other.x1) % self.n, (self.x2 - other.x2) % self.n, self.n)

    def __neg__(self):
        return Vec2(-self.x1 % self.n, -self.x2 % self.n, self.n)

    def scale(self, k: int) -> "Vec2":
        return Vec2(k * self.x1 % self.n, k * self.x2 % self.n, self.n)

    def pair(self, other) -> int:
        """Symplectic pairing <self, other> = x1*y2 - x2*y1."""
        return (self.x1 * other.x2 - self.x2 * other.x1) % self.n

    def is_basis(self) -> bool:
        return gcd(gcd(self.x1, self.x2), self.n) == 1

    def key(self) -> tuple[int, int]:
        return (self.x1, self.x2)

    def canonical_pm(self) -> "Vec2":
        return min(self, -self)

    def __repr__(self):
        return f"({self.x1},{self.x2})"


class Mat2(NamedTuple):
    """Row-major [[a, b], [c, d]] over Z/n; hashable by entries."""

    a: int
    b: int
    c: int
    d: int
    n: int

    @classmethod
    def of(cls, rows, n) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(int(a) % n, int(b) % n, int(c) % n, int(d) % n, n)

    @classmethod
    def identity(cls, n) -> "Mat2":
        return cls(1 % n, 0, 0, 1 % n, n)

    @classmethod
    def from_columns(cls, u: Vec2, v: Vec2) -> "Mat2":
        return cls(u.x1, v.x1, u.x2, v.x2, u.n)

    def __matmul__(self, o):
        if isinstance(o, Vec2):
            return Vec2((self.a * o.x1 + self.b * o.x2) % self.n,
                        (self.c * o.x1 + self.d * o.x2) % self.n, self.n)
        n = self.n
        return Mat2((self.a * o.a + self.b * o.c) % n, (self.a * o.b + self.b * o.d) % n,
                    (self.c * o.a + self.d * o.c) % n, (self.c * o.b + self.d * o.d) % n, n)

    def __neg__(self):
        n = self.n
        return Mat2(-self.a % n, -self.b % n, -self.c % n, -self.d % n, n)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def trace(self) -> int:
        return (self.a + self.d) % self.n

    def inverse(self) -> "Mat2":
        n = self.n
        di = inverse_mod(self.det(), n)
        return Mat2(self.d * di % n, -self.b * di % n, -self.c * di % n, self.a * di % n, n)

    def reduce(self, m: int) -> "Mat2":
        return Mat2(self.a % m, self.b % m, self.c % m, self.d % m, m)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def code(self) -> int:
        n = self.n
        return ((self.a * n + self.b) * n + self.c) * n + self.d

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def pairing_matrix_of(x: Vec2, y: Vec2, coeff: int) -> Mat2:
    """The endomorphism v -> coeff * <v, x> * y."""
    # <v, x> = v1*x2 - v2*x1
    n = x.n
    return Mat2(coeff * x.x2 * y.x1 % n, -coeff * x.x1 * y.x1 % n,
                coeff * x.x2 * y.x2 % n, -coeff * x.x1 * y.x2 % n, n)


def map_on_basis(e1: Vec2, e2: Vec2, f1: Vec2, f2: Vec2) -> Mat2:
    """The linear map h with h(e1) = f1, h(e2) = f2; requires <e1, e2> a unit."""
    n = e1.n
    source = Mat2.from_columns(e1, e2)
    target = Mat2.from_columns(f1, f2)
    if gcd(source.det(), n) != 1:
        raise ValueError("source vectors do not form a basis")
    return target @ source.inverse()


@dataclass(frozen=True)
class Conjugation:
    """An involution C of determinant -1 acting on (Z/N)^2."""

    matrix: Mat2
    name: str = "custom"

    def __post_init__(self):
        m = self.matrix
        if m.det() != (-1) % m.n:
            raise ValueError(f"conjugation {m} must have determinant -1")
        if m @ m != Mat2.identity(m.n):
            raise ValueError(f"conjugation {m} must square to the identity")

    @property
    def n(self) -> int:
        return self.matrix.n

    @classmethod
    def std(cls, ctx: RingCtx | int) -> "Conjugation":
        n = ctx if isinstance(ctx, int) else ctx.modulus
        return cls(Mat2.of([[1, 0], [0, -1]], n), "std")

    @classmethod
    def inv(cls, ctx: RingCtx | int) -> "Conjugation":
        n = ctx if isinstance(ctx, int) else ctx.modulus
        return cls(Mat2.of([[0, 1], [1, 0]], n), "inv")

    @classmethod
    def named(cls, name, ctx: RingCtx | int) -> "Conjugation":
        if isinstance(name, str):
            if name == "std":
                return cls.std(ctx)
            if name == "inv":
                return cls.inv(ctx)
            raise ValueError(f"unknown conjugation {name!r}")
        n = ctx if isinstance(ctx, int) else ctx.modulus
        return cls(Mat2.of(name, n))

    def conj(self, g: Mat2) -> Mat2:
        """g -> C g C (C is its own inverse)."""
        return self.matrix @ g @ self.matrix

    def reduce(self, m: int) -> "Conjugation":
        return Conjugation(self.matrix.reduce(m), self.name)


class Family(str, enum.Enum):
    FULL = "full"
    GAMMA = "gamma"
    GAMMA1 = "gamma1"
    GAMMA0 = "gamma0"
    SPLIT = "split"
    CUSTOM = "custom"


@lru_cache(maxsize=4)
def sl2_arrays(n: int):
    """All of SL2(Z/n) as four int64 arrays (a, b, c, d)."""
    if n == 1:
        z = np.zeros(1, dtype=np.int64)
        return z, z.copy(), z.copy(), z.copy()
    cols = []
    for a in range(n):
        for c in range(n):
            if gcd(gcd(a, c), n) != 1:
                continue
            g, s, t = _ext_gcd(a, c)
            gi = inverse_mod(g % n, n)
            # a*d0 - c*b0 = 1
            cols.append((a, c, -t * gi % n, s * gi % n))
    base = np.array(cols, dtype=np.int64)
    s = np.arange(n, dtype=np.int64)
    a = np.repeat(base[:, 0], n)
    c = np.repeat(base[:, 1], n)
    b = (np.repeat(base[:, 2], n) + np.tile(s, len(base)) * a) % n
    d = (np.repeat(base[:, 3], n) + np.tile(s, len(base)) * c) % n
    return a, b, c, d


def _ext_gcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def sl2_order(n: int) -> int:
    out = n**3
    from .modring import factorize
    for p in factorize(n) if n > 1 else ():
        out = out // (p * p) * (p * p - 1)
    return out


def all_basis_vectors(n: int) -> list[Vec2]:
    return [Vec2(a, c, n) for a in range(n) for c in range(n) if gcd(gcd(a, c), n) == 1]


@dataclass(eq=False)
class SubgroupSpec:
    """A subgroup G of SL2(Z/N) containing -1.

    ``member_np`` is an optional vectorized version of ``membership`` taking
    entry arrays (a, b, c, d).
    """

    ctx: RingCtx
    generators: Optional[tuple[Mat2, ...]]
    membership: Callable[[Mat2], bool]
    label: Family = Family.CUSTOM
    member_np: Optional[Callable] = None
    budget: int = DEFAULT_BUDGET
    description: str = ""
    _closure: Optional[frozenset] = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def n(self) -> int:
        return self.ctx.modulus

    def __contains__(self, m: Mat2) -> bool:
        return m.det() == 1 % m.n and self.membership(m)

    def contains_np(self, a, b, c, d):
        if self.member_np is not None:
            return self.member_np(a, b, c, d)
        n = self.n
        return np.fromiter((self.membership(Mat2(int(w), int(x), int(y), int(z), n))
                            for w, x, y, z in zip(a, b, c, d)), dtype=bool, count=len(a))

    @property
    def closure(self) -> frozenset:
        if self._closure is None:
            elements = self._enumerate()
            with self._lock:
                if self._closure is None:
                    self._closure = elements
        return self._closure

    def has_closure(self) -> bool:
        return self._closure is not None

    def _enumerate(self) -> frozenset:
        if self.generators is not None:
            return generate(self.generators, self.n, self.budget)
        if sl2_order(self.n) > self.budget:
            raise BudgetExceeded(f"SL2(Z/{self.n}) exceeds the element budget {self.budget}")
        a, b, c, d = sl2_arrays(self.n)
        keep = self.contains_np(a, b, c, d)
        n = self.n
        return frozenset(Mat2(int(w), int(x), int(y), int(z), n)
                         for w, x, y, z in zip(a[keep], b[keep], c[keep], d[keep]))

    def order(self) -> int:
        if self._closure is not None:
            return len(self._closure)
        a, b, c, d = sl2_arrays(self.n)
        return int(np.count_nonzero(self.contains_np(a, b, c, d)))

    def elements_np(self):
        """Closure as an (k, 4) int64 array of entries."""
        els = sorted(self.closure)
        return np.array([(m.a, m.b, m.c, m.d) for m in els], dtype=np.int64).reshape(-1, 4)

    def acting_set(self) -> tuple[Mat2, ...]:
        """Generators when known, else every element."""
        if self.generators is not None:
            return self.generators
        return tuple(sorted(self.closure))

    def is_c_stable(self, conj: Conjugation) -> bool:
        elems = self.generators if self.generators is not None else self.closure
        return all(conj.conj(g) in self for g in elems)

    def contains_minus_one(self) -> bool:
        return -Mat2.identity(self.n) in self


def generate(gens, n: int, budget: int = DEFAULT_BUDGET) -> frozenset:
    """Closure of ``gens`` (plus the identity) under multiplication, by BFS."""
    one = Mat2.identity(n)
    seen = {one}
    frontier = [one]
    gens = tuple(gens)
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = m @ g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > budget:
                        raise BudgetExceeded(f"closure exceeds {budget} elements at level {n}")
        frontier = nxt
    return frozenset(seen)


# --- family groups ---------------------------------------------------------

def _crt_matrix(parts: dict[int, Mat2], n: int, factors) -> Mat2:
    """Assemble a matrix mod n from its reductions modulo each prime power."""
    ent = []
    for i in range(4):
        ent.append(crt_lift([parts[q][i] if q in parts else (1 if i in (0, 3) else 0) % q
                             for q in factors], factors))
    return Mat2(ent[0] % n, ent[1] % n, ent[2] % n, ent[3] % n, n)


def _diag(u, n):
    return Mat2(u % n, 0, 0, inverse_mod(u, n) % n if n > 1 else 0, n)


def _split_member(m: Mat2, factors) -> bool:
    for q in factors:
        if m.b % q == 0 and m.c % q == 0:
            continue
        if m.a % q == 0 and m.d % q == 0:
            continue
        return False
    return True


def family_group(family, ctx: RingCtx | int) -> SubgroupSpec:
    family = Family(family)
    if isinstance(ctx, int):
        ctx = RingCtx(ctx)
    n = ctx.modulus
    one = Mat2.identity(n)
    minus = -one
    T = Mat2.of([[1, 1], [0, 1]], n)
    S = Mat2.of([[0, -1], [1, 0]], n)

    if family is Family.FULL:
        return SubgroupSpec(ctx, (S, T, minus), lambda m: True, family,
                            lambda a, b, c, d: np.ones(len(a), dtype=bool))
    if family is Family.GAMMA:
        def member(m):
            return (m.b == 0 and m.c == 0 and m.a == m.d and (m.a == 1 % n or m.a == (-1) % n))

        def member_np(a, b, c, d):
            return (b == 0) & (c == 0) & (a == d) & ((a == 1 % n) | (a == (-1) % n))
        return SubgroupSpec(ctx, (minus,), member, family, member_np)
    if family is Family.GAMMA1:
        def member(m):
            return m.c == 0 and m.a == m.d and (m.a == 1 % n or m.a == (-1) % n)

        def member_np(a, b, c, d):
            return (c == 0) & (a == d) & ((a == 1 % n) | (a == (-1) % n))
        return SubgroupSpec(ctx, (minus, T), member, family, member_np)
    if family is Family.GAMMA0:
        gens = (minus, T) + tuple(_diag(u, n) for u in unit_generators(n))
        return SubgroupSpec(ctx, gens, lambda m: m.c == 0, family,
                            lambda a, b, c, d: c == 0)
    if family is Family.SPLIT:
        factors = ctx.crt_factors
        gens = [minus] + [_diag(u, n) for u in unit_generators(n)]
        for q in factors:
            gens.append(_crt_matrix({q: Mat2.of([[0, 1], [-1, 0]], q)}, n, factors))

        def member_np(a, b, c, d):
            ok = np.ones(len(a), dtype=bool)
            for q in factors:
                ok &= (((b % q) == 0) & ((c % q) == 0)) | (((a % q) == 0) & ((d % q) == 0))
            return ok
        return SubgroupSpec(ctx, tuple(gens), lambda m: _split_member(m, factors), family, member_np)
    raise ValueError(f"{family} is not a built-in family")


def custom_group(ctx: RingCtx | int, generators, conj: Conjugation,
                 budget: int = DEFAULT_BUDGET, description: str = "") -> SubgroupSpec:
    """Group generated by ``generators``, -1, and the C-conjugates of the generators."""
    if isinstance(ctx, int):
        ctx = RingCtx(ctx)
    n = ctx.modulus
    gens = []
    for g in generators:
        g = g if isinstance(g, Mat2) else Mat2.of(g, n)
        if g.det() != 1 % n:
            raise ValueError(f"generator {g} does not have determinant 1")
        gens.append(g)
    full = [-Mat2.identity(n)] + gens + [conj.conj(g) for g in gens]
    full = tuple(dict.fromkeys(full))
    closure = generate(full, n, budget)
    codes = np.array(sorted(m.code() for m in closure), dtype=np.int64)

    def member_np(a, b, c, d):
        return np.isin(((a * n + b) * n + c) * n + d, codes)

    spec = SubgroupSpec(ctx, full, closure.__contains__, Family.CUSTOM, member_np,
                        budget=budget, description=description)
    spec._closure = closure
    return spec


def preimage_group(g0: SubgroupSpec, ctx: RingCtx | int) -> SubgroupSpec:
    """Inverse image of ``g0`` under SL2(Z/N) -> SL2(Z/N0)."""
    if isinstance(ctx, int):
        ctx = RingCtx(ctx)
    n, n0 = ctx.modulus, g0.n
    if n % n0:
        raise ValueError(f"level {n0} does not divide {n}")

    def member(m):
        return g0.membership(m.reduce(n0))

    def member_np(a, b, c, d):
        return g0.contains_np(a % n0, b % n0, c % n0, d % n0)

    return SubgroupSpec(ctx, None, member, g0.label, member_np,
                        description=f"preimage of {g0.label.value}({n0})")


# --- admissibility and orbits ----------------------------------------------

def is_admissible(g: Mat2, conj: Conjugation) -> bool:
    cg = conj.matrix @ g
    return cg @ cg == Mat2.identity(g.n)


def admissible_by_trace(g: Mat2, conj: Conjugation) -> bool:
    return (conj.matrix @ g).trace() == 0


def orbit(spec: SubgroupSpec, seed: Vec2, quotient_sign: bool = True) -> set[Vec2]:
    """Orbit of ``seed`` (or of +-seed) under G."""
    start = {seed, -seed} if quotient_sign else {seed}
    if spec.generators is None:
        els = spec.elements_np()
        out = set()
        n = spec.n
        for v in start:
            xs = (els[:, 0] * v.x1 + els[:, 1] * v.x2) % n
            ys = (els[:, 2] * v.x1 + els[:, 3] * v.x2) % n
            out.update(Vec2(int(x), int(y), n) for x, y in zip(xs, ys))
        return out
    seen = set(start)
    queue = deque(start)
    gens = spec.generators
    while queue:
        v = queue.popleft()
        for g in gens:
            w = g @ v
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def orbit_partition(spec: SubgroupSpec, vectors=None):
    """Split basis vectors into G-orbits mod +-1.

    Returns (class_of, reps): ``class_of`` maps every vector to its class index,
    ``reps[i]`` is the lexicographically least member of class i.
    """
    if vectors is None:
        vectors = all_basis_vectors(spec.n)
    class_of: dict[Vec2, int] = {}
    members: list[list[Vec2]] = []
    for v in vectors:
        if v in class_of:
            continue
        orb = orbit(spec, v, True)
        idx = len(members)
        for w in orb:
            class_of[w] = idx
        members.append(orb)
    order = sorted(range(len(members)), key=lambda i: min(members[i]))
    renum = {old: new for new, old in enumerate(order)}
    class_of = {v: renum[i] for v, i in class_of.items()}
    reps = [min(members[i]) for i in order]
    return class_of, reps
