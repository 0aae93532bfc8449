"""Closed-form counts for the standard families, the doubling shortcut, and genus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvariantViolation
from .groups import Conjugation, Family, SubgroupSpec, orbit_partition, sl2_arrays, sl2_order
from .modgraph import ELLIPTIC
from .modring import RingCtx, factorize, phi, psi
from .xicore import compute_xi

# Families with closed forms.  GAMMA splits by conjugation.
GAMMA_PLUS = "gamma"
GAMMA_MINUS = "gamma-minus"
GAMMA1 = "gamma1"
GAMMA0 = "gamma0"
PREDICTABLE = (GAMMA_PLUS, GAMMA_MINUS, GAMMA1, GAMMA0)


@dataclass(frozen=True)
class FamilyPrediction:
    family: str
    n: int
    pi0: int
    p: int
    e: int
    shape: Optional[str] = None

    def __post_init__(self):
        if self.pi0 < 1 or self.p < 0 or self.e < 0:
            raise ValueError(f"impossible prediction {self}")


@dataclass(frozen=True)
class GenusData:
    mu: int
    nu2: int
    nu3: int
    nu_inf: int
    g: int


def _predict_gamma_plus(n, r, phi_n):
    if n == 1:
        return 1, 1, 1
    if r == 0:
        return psi(n), phi_n, 0
    if n == 2:
        return 1, 2 * phi_n, 0
    return phi_n // 2, phi_n * (3 if r == 1 else 2), 0


def _predict_gamma_minus(n, r, phi_n):
    if n == 1:
        return 1, 1, 1
    if r == 0:
        return psi(n), phi_n, 0
    return (1 if n == 2 else phi_n // 2), phi_n, 0


def _predict_gamma1(n, r, odd, phi_n):
    e = 1 if n <= 2 else 0
    if r == 0:
        p = phi_n
    elif r == 1:
        p = 2 * phi_n
    else:
        p = 3 * phi_n // 2
    if r <= 1:
        pi0 = psi(odd)
    elif n == 4:
        pi0 = 1
    else:
        pi0 = phi_n // 4
    return pi0, p, e


def _predict_gamma0(n, r, odd):
    k = len(factorize(odd)) if odd > 1 else 0
    p = 2**k * min(r + 1, 4)
    if odd == 1:
        pi0 = 1
    else:
        pi0 = 2 ** (k - 1) * (2 if r >= 3 else 1)
    return pi0, p, 1 if n <= 2 else 0


def predict(family: str | Family, n: int) -> FamilyPrediction:
    """Closed-form (pi0, p, e).  ``Family.GAMMA`` means the standard conjugation."""
    if isinstance(family, Family):
        if family is Family.SPLIT:
            raise ValueError("no closed form is known for the split Cartan family")
        family = {Family.GAMMA: GAMMA_PLUS, Family.GAMMA1: GAMMA1,
                  Family.GAMMA0: GAMMA0}.get(family, family.value)
    if family not in PREDICTABLE:
        raise ValueError(f"no closed form for family {family!r}")
    if n < 1:
        raise ValueError("level must be positive")
    ctx = RingCtx(n)
    r, odd, phi_n = ctx.two_exponent, ctx.odd_part, phi(n)
    if family == GAMMA_PLUS:
        pi0, p, e = _predict_gamma_plus(n, r, phi_n)
    elif family == GAMMA_MINUS:
        pi0, p, e = _predict_gamma_minus(n, r, phi_n)
    elif family == GAMMA1:
        pi0, p, e = _predict_gamma1(n, r, odd, phi_n)
    else:
        pi0, p, e = _predict_gamma0(n, r, odd)
    shape = f"{p // pi0} cusps per component" if p % pi0 == 0 else None
    return FamilyPrediction(family, n, pi0, p, e, shape)


def family_spec(family: str):
    """(Family, conjugation name) behind a predictor tag."""
    return {GAMMA_PLUS: (Family.GAMMA, "std"), GAMMA_MINUS: (Family.GAMMA, "inv"),
            GAMMA1: (Family.GAMMA1, "std"), GAMMA0: (Family.GAMMA0, "std")}[family]


def shortcut_components(spec: SubgroupSpec, conj: Conjugation, data=None) -> int:
    """Half the number of orbits of [x] -> [2x] on the real cusps.

    ``data`` may carry an already computed ``XiData`` for the same input.
    """
    n = spec.n
    if n % 2 == 0:
        raise ValueError(f"the doubling shortcut needs odd level, got {n}")
    if data is None:
        data = compute_xi(spec, conj)
    if data.graph.count(ELLIPTIC):
        raise ValueError(f"level {n}: graph has elliptic vertices, shortcut does not apply")
    cls = data.class_of
    cusps = {cls[x] for x in data.parabolic_reps}
    rep_of = {cls[x]: x for x in data.parabolic_reps}
    seen = set()
    orbits = 0
    for c in sorted(cusps):
        if c in seen:
            continue
        orbits += 1
        while c not in seen:
            seen.add(c)
            c = cls[rep_of[c].scale(2)]
            if c not in cusps:
                raise InvariantViolation(f"doubling left the real cusps at level {n}")
    if orbits % 2:
        raise InvariantViolation(f"odd number {orbits} of doubling orbits at level {n}")
    return orbits // 2


def _fixed_count(spec: SubgroupSpec, a, b, c, d, which: str) -> int:
    """#{h in SL2 : h X h^-1 in G} for X = S or the order-3 element."""
    n = spec.n
    if which == "S":
        m = (-(a * c + b * d), a * a + b * b, -(c * c + d * d), a * c + b * d)
    else:
        m = (b * c - a * c - b * d, a * a - a * b + b * b,
             c * d - c * c - d * d, a * c - a * d + b * d)
    return int(np.count_nonzero(spec.contains_np(*(x % n for x in m))))


def genus(spec: SubgroupSpec) -> GenusData:
    """Genus of X_G from the coset space (+-G) \\ SL2(Z/N)."""
    if not spec.contains_minus_one():
        raise ValueError("genus needs -1 in the group")
    n = spec.n
    a, b, c, d = sl2_arrays(n)
    order = int(np.count_nonzero(spec.contains_np(a, b, c, d)))
    total = sl2_order(n)
    if total % order:
        raise InvariantViolation(f"|G| = {order} does not divide |SL2(Z/{n})| = {total}")
    mu = total // order
    f2, f3 = _fixed_count(spec, a, b, c, d, "S"), _fixed_count(spec, a, b, c, d, "T")
    if f2 % order or f3 % order:
        raise InvariantViolation(f"fixed-point counts {f2}, {f3} not multiples of |G| = {order}")
    nu2, nu3 = f2 // order, f3 // order
    nu_inf = len(orbit_partition(spec)[1])
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    if g.denominator != 1 or g < 0:
        raise InvariantViolation(f"genus came out as {g}", mu=mu, nu2=nu2, nu3=nu3, nu_inf=nu_inf)
    return GenusData(mu, nu2, nu3, nu_inf, int(g))


def split_nu_formulas(n: int) -> tuple[int, int, int]:
    """(nu_inf, nu2, nu3) of the split Cartan group, multiplicatively."""
    if n < 1:
        raise ValueError("level must be positive")
    nu_inf = nu2 = nu3 = 1
    for p, e in (factorize(n).items() if n > 1 else ()):
        base = p ** (e - 1)
        nu_inf *= 2 if p**e == 2 else base * (p + 1) // 2
        if p == 2:
            nu2 *= base
        elif p % 4 == 1:
            nu2 *= base * (p - 1) // 2 + 1
        else:
            nu2 *= base * (p + 1) // 2
        nu3 *= 1 if p % 3 == 1 else 0
    return nu_inf, nu2, nu3
