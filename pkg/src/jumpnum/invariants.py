"""Numerical data of a complete ideal on its constellation.

The ideal is given by its Zariski factorization exponents (the Rees
vector ``d^``).  From it we get D, the canonical divisor K, the
valuation matrix ``v_nu(p_mu)``, and everything built out of the ratios
``lambda(a, v) = (a + k_v + 1) / d_v``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .divisors import Basis, Divisor, antinef_closure, convert, is_antinef
from .errors import (
    DimensionMismatch,
    NonMinimalResolution,
    NonPositiveParameter,
    NotAntinef,
    ZeroIdeal,
)
from .graph import Constellation, Matrix

Rational = Fraction


class Side(enum.Enum):
    AT = "at"
    LEFT = "left"


@dataclass(frozen=True)
class ResolvedIdeal:
    c: Constellation
    rees: tuple[int, ...]
    d: tuple[int, ...]  # D in the E basis
    d_star: tuple[int, ...]
    k: tuple[int, ...]  # K in the E basis
    k_hat: tuple[int, ...]
    val: Matrix  # val[nu][mu] = v_nu(p_mu)

    @property
    def n(self) -> int:
        return self.c.n

    @property
    def D(self) -> Divisor:
        return Divisor(Basis.E, self.d)

    @property
    def K(self) -> Divisor:
        return Divisor(Basis.E, self.k)

    def is_rees(self, v: int) -> bool:
        return self.rees[v - 1] > 0


def resolve(c: Constellation, rees: Sequence[int], allow_nonminimal: bool = False) -> ResolvedIdeal:
    """Attach the ideal with Rees exponents ``rees`` to the constellation.

    Rejects inputs where a last point of the constellation (weight 1)
    carries no Rees exponent: that blowup would not be needed.
    """
    rees = tuple(int(x) for x in rees)
    n = c.n
    if len(rees) != n:
        raise DimensionMismatch(f"rees vector has {len(rees)} entries, expected {n}")
    if any(x < 0 for x in rees):
        raise ValueError("rees exponents must be nonnegative")
    if not any(rees):
        raise ZeroIdeal("all rees exponents are zero")
    if not allow_nonminimal:
        bad = [v for v in range(1, n + 1) if c.weight(v) == 1 and rees[v - 1] == 0]
        if bad:
            raise NonMinimalResolution(
                f"points {bad} have weight 1 but rees exponent 0; the resolution is not minimal",
                vertices=bad,
            )
    q = c.q
    val = tuple(
        tuple(sum(q[nu][rho] * q[mu][rho] for rho in range(min(nu, mu) + 1)) for mu in range(n))
        for nu in range(n)
    )
    d = tuple(sum(rees[mu] * val[nu][mu] for mu in range(n)) for nu in range(n))
    d_star = convert(c, Divisor(Basis.E, d), Basis.STAR).coeffs
    k = tuple(sum(row) for row in q)
    k_hat = tuple(2 - c.weight(v) for v in range(1, n + 1))
    return ResolvedIdeal(c=c, rees=rees, d=d, d_star=d_star, k=k, k_hat=k_hat, val=val)


def lambda_value(r: ResolvedIdeal, a: int, v: int) -> Fraction:
    """(a + k_v + 1) / d_v.  Negative a is allowed."""
    return Fraction(a + r.k[v - 1] + 1, r.d[v - 1])


def lambda_table(r: ResolvedIdeal, f: Divisor) -> tuple[Fraction, ...]:
    if f.basis is not Basis.E:
        f = convert(r.c, f, Basis.E)
    return tuple(Fraction(f.coeffs[i] + r.k[i] + 1, r.d[i]) for i in range(r.n))


def xi_and_support(r: ResolvedIdeal, f: Divisor) -> tuple[Fraction, frozenset[int]]:
    """The jumping number xi_F and the vertices where lambda attains it."""
    if len(f) != r.n:
        raise DimensionMismatch(f"divisor has {len(f)} coefficients, expected {r.n}")
    if f.basis is not Basis.E:
        f = convert(r.c, f, Basis.E)
    if not is_antinef(r.c, f):
        raise NotAntinef(f"{f.coeffs} is not antinef")
    table = lambda_table(r, f)
    xi = min(table)
    return xi, frozenset(i + 1 for i, x in enumerate(table) if x == xi)


def lct(r: ResolvedIdeal) -> tuple[Fraction, frozenset[int]]:
    return xi_and_support(r, Divisor.zero(r.n))


def alpha(r: ResolvedIdeal, gamma: int, nu: int) -> Fraction:
    """k_nu + 1 - (k_gamma + 1) d_nu / d_gamma."""
    g, v = gamma - 1, nu - 1
    return r.k[v] + 1 - Fraction((r.k[g] + 1) * r.d[v], r.d[g])


def floor_multiple(c: Fraction, d: int) -> int:
    return (c.numerator * d) // c.denominator


def left_floor_multiple(c: Fraction, d: int) -> int:
    """lim floor((c - eps) d) as eps -> 0+."""
    num = c.numerator * d
    if num % c.denominator == 0:
        return num // c.denominator - 1
    return num // c.denominator


def rounded_divisor(r: ResolvedIdeal, c: Fraction, side: Side = Side.AT) -> Divisor:
    """floor(cD) - K (or its left limit), before taking the closure."""
    fl = floor_multiple if side is Side.AT else left_floor_multiple
    return Divisor(Basis.E, tuple(fl(c, r.d[i]) - r.k[i] for i in range(r.n)))


def multiplier_divisor(r: ResolvedIdeal, c: Fraction | int, side: Side = Side.AT) -> Divisor:
    """Antinef divisor of J(a^c) (AT) or of J(a^(c - eps)) for small eps (LEFT)."""
    c = Fraction(c)
    if c <= 0:
        raise NonPositiveParameter(f"multiplier ideal parameter must be positive, got {c}")
    return antinef_closure(r.c, rounded_divisor(r, c, side))


def check_chain_conditions(r: ResolvedIdeal, s: Iterable[int]) -> list[str]:
    """Violations of: s is a chain, interior vertices carry no Rees
    exponent, and each end of s is a star or a Rees vertex.

    Returns an empty list when all three hold.
    """
    s = frozenset(s)
    g = r.c.graph
    problems = []
    if not s:
        return ["empty set"]
    if not g.is_connected_set(s):
        return [f"{sorted(s)} is not connected"]
    inner_deg = {v: sum(1 for u in g.neighbors(v) if u in s) for v in s}
    if any(x > 2 for x in inner_deg.values()):
        problems.append(f"{sorted(s)} is not a chain")
    if len(s) == 1:
        ends = set(s)
    else:
        ends = {v for v, x in inner_deg.items() if x == 1}
    for v in sorted(s - ends):
        if r.is_rees(v):
            problems.append(f"interior vertex {v} is a Rees vertex")
    for v in sorted(ends):
        if not (g.is_star(v) or r.is_rees(v)):
            problems.append(f"end {v} is neither a star nor a Rees vertex")
    return problems
