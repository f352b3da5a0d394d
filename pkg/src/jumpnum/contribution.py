"""Contributing and critically contributing reduced exceptional divisors.

Section modules are compared through antinef closures: G contributes xi
exactly when removing G from floor(xi D) - K changes the closure.
"""
from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Iterable

from .divisors import Basis, Divisor, antinef_closure
from .errors import Inconsistency, SubsetBudgetExceeded, TooSmall
from .invariants import ResolvedIdeal, rounded_divisor
from .jumping import SupportCertificate, boundary_minimum, support_value

DEFAULT_SUBSET_CAP = 20


def _subset_cap() -> int:
    raw = os.environ.get("JN_SUBSET_CAP")
    return int(raw) if raw else DEFAULT_SUBSET_CAP


def _vertices(r: ResolvedIdeal, g: Iterable[int]) -> frozenset[int]:
    vs = frozenset(g)
    if not vs:
        raise ValueError("reduced divisor needs at least one vertex")
    bad = [v for v in vs if not 1 <= v <= r.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} outside 1..{r.n}")
    return vs


def reduced_divisor(r: ResolvedIdeal, g: Iterable[int]) -> Divisor:
    vs = _vertices(r, g)
    return Divisor(Basis.E, tuple(int(v in vs) for v in range(1, r.n + 1)))


def is_candidate(r: ResolvedIdeal, xi, g: Iterable[int]) -> bool:
    """xi d_v is an integer for every v in g."""
    xi = Fraction(xi)
    return all((xi.numerator * r.d[v - 1]) % xi.denominator == 0 for v in _vertices(r, g))


def _closure_without(r: ResolvedIdeal, base: Divisor, vs: Iterable[int]) -> Divisor:
    vs = set(vs)
    return antinef_closure(
        r.c, Divisor(Basis.E, tuple(x - (i + 1 in vs) for i, x in enumerate(base.coeffs)))
    )


def contributes(r: ResolvedIdeal, xi, g: Iterable[int]) -> bool:
    xi = Fraction(xi)
    vs = _vertices(r, g)
    if not is_candidate(r, xi, vs):
        return False
    base = rounded_divisor(r, xi)
    return _closure_without(r, base, vs) != antinef_closure(r.c, base)


def critically_contributes(r: ResolvedIdeal, xi, g: Iterable[int], cap: int | None = None) -> bool:
    """G contributes and no proper nonempty subdivisor does."""
    xi = Fraction(xi)
    vs = _vertices(r, g)
    if cap is None:
        cap = _subset_cap()
    if len(vs) > cap:
        raise SubsetBudgetExceeded(f"|G| = {len(vs)} exceeds the subset cap {cap}")
    if not is_candidate(r, xi, vs):
        return False
    base = rounded_divisor(r, xi)
    target = antinef_closure(r.c, base)
    if _closure_without(r, base, vs) == target:
        return False
    ordered = sorted(vs)
    for size in range(1, len(ordered)):
        for sub in itertools.combinations(ordered, size):
            if _closure_without(r, base, sub) != target:
                return False
    return True


def criterion_critical(r: ResolvedIdeal, xi, g: Iterable[int]) -> SupportCertificate | None:
    """Decide critical contribution of G (at least two vertices) combinatorially.

    Boundary vertices next to a star or Rees vertex of G are pinned to
    the single value with lambda(a, v) > xi >= lambda(a - 1, v); the rest
    only get the lower bound.  Balance at each vertex of G must then be
    exactly attainable.
    """
    xi = Fraction(xi)
    vs = _vertices(r, g)
    if len(vs) < 2:
        raise TooSmall("the criterion needs at least two vertices")
    graph = r.c.graph
    if not graph.is_connected_set(vs):
        return None
    assign: dict[int, int] = {}
    for v in vs:
        a = support_value(r, xi, v)
        if a is None:
            return None
        assign[v] = a
    for v in sorted(vs):
        inside = [u for u in graph.neighbors(v) if u in vs]
        outside = [u for u in graph.neighbors(v) if u not in vs]
        budget = graph.weight(v) * assign[v] - sum(assign[u] for u in inside)
        pinned = graph.is_star(v) or r.is_rees(v)
        lows = {}
        for u in outside:
            low = boundary_minimum(r, xi, u)
            if pinned and low != (xi.numerator * r.d[u - 1]) // xi.denominator - r.k[u - 1]:
                # floor(Delta) + 1 < 0: no value satisfies both bounds
                return None
            lows[u] = low
        need = sum(lows.values())
        if pinned:
            if budget != need:
                return None
        else:
            if budget < need or (not outside and budget != 0):
                return None
            if outside:
                lows[max(outside)] += budget - need
        assign.update(lows)
    return SupportCertificate(xi, vs, assign)


def decide_critical(r: ResolvedIdeal, xi, g: Iterable[int], verify: bool = False) -> bool:
    """Critical contribution via the criterion (two or more vertices) or the
    subset method (singletons).  With ``verify`` both run for |G| >= 2."""
    vs = _vertices(r, g)
    if len(vs) < 2:
        return critically_contributes(r, xi, vs)
    fast = criterion_critical(r, xi, vs) is not None
    if verify:
        slow = critically_contributes(r, xi, vs)
        if slow != fast:
            raise Inconsistency(
                f"for G = {sorted(vs)} at xi = {Fraction(xi)}: criterion says {fast}, subsets say {slow}"
            )
    return fast
