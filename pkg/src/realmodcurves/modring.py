"""Exact arithmetic in Z/N: residues, unit utilities, CRT splitting, phi and psi."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {p: e}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def inverse_mod(a: int, n: int) -> int:
    if n == 1:
        return 0
    return pow(a, -1, n)


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [a for a in range(1, n) if gcd(a, n) == 1]


def phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi needs N >= 1")
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def multiplicative_closure(gens, n: int) -> set[int]:
    """Subgroup of (Z/n)^x generated by ``gens``."""
    one = 1 % n
    seen = {one}
    frontier = [one]
    gens = [g % n for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g % n
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def psi(n: int) -> int:
    """Order of (Z/n)^x modulo the subgroup generated by -1 and 2 (n odd)."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"psi is defined for odd N >= 1, got {n}")
    sub = multiplicative_closure([-1, 2], n)
    return phi(n) // len(sub)


@lru_cache(maxsize=None)
def unit_generators(n: int) -> tuple[int, ...]:
    """A small generating set of (Z/n)^x, chosen greedily in increasing order."""
    gens: list[int] = []
    span = {1 % n}
    for a in units(n):
        if a not in span:
            gens.append(a)
            span = multiplicative_closure(gens, n)
    return tuple(gens)


def crt_lift(residues, moduli) -> int:
    """The unique x mod prod(moduli) with x = r_i mod m_i (moduli pairwise coprime)."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # solve x + m*k = r (mod q)
        k = (r - x) * inverse_mod(m % q, q) % q if q > 1 else 0
        x += m * k
        m *= q
    return x % m


@dataclass(frozen=True)
class RingCtx:
    """Z/N together with its 2-adic data and prime-power decomposition."""

    modulus: int
    odd_part: int = field(init=False)
    two_exponent: int = field(init=False)
    two_torsion: int | None = field(init=False)
    crt_factors: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = self.modulus
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"modulus must be a positive integer, got {n!r}")
        r, odd = 0, n
        while odd % 2 == 0:
            odd //= 2
            r += 1
        object.__setattr__(self, "odd_part", odd)
        object.__setattr__(self, "two_exponent", r)
        object.__setattr__(self, "two_torsion", 2 ** (r - 1) * odd if r >= 1 else None)
        object.__setattr__(self, "crt_factors", tuple(p**e for p, e in sorted(factorize(n).items())))

    def __call__(self, value: int) -> "Residue":
        return Residue(value, self)

    def is_unit(self, a: int) -> bool:
        return gcd(a, self.modulus) == 1

    def inv(self, a: int) -> int:
        return inverse_mod(a % self.modulus, self.modulus)


def crt_split(ctx: RingCtx) -> list[RingCtx]:
    return [RingCtx(q) for q in ctx.crt_factors]


class Residue:
    """An element of Z/N, stored as its representative in [0, N)."""

    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: RingCtx):
        object.__setattr__(self, "value", value % ctx.modulus)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.ctx.modulus != self.ctx.modulus:
                raise ValueError("residues from different rings")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value + o, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value - o, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(o - self.value, self.ctx)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value * o, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ctx)

    def inverse(self) -> "Residue":
        return Residue(inverse_mod(self.value, self.ctx.modulus), self.ctx)

    def is_unit(self) -> bool:
        return gcd(self.value, self.ctx.modulus) == 1

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ctx.modulus == other.ctx.modulus and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.ctx.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.modulus})"
