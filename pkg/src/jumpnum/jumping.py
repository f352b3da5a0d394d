"""Jumping numbers: candidates, the closure oracle and the tree criterion.

A positive rational xi is decided in two independent ways:

* the oracle compares the antinef divisors of J(a^xi) and J(a^(xi-eps));
* the criterion looks for a chain S of vertices with integral
  ``a_g = xi d_g - k_g - 1 >= 0`` and boundary values a_eta with
  ``lambda(a_eta, eta) > xi`` such that ``w_g a_g`` equals the sum of the
  neighbouring values at every g in S.

Because the dual graph is a tree and S is connected, every boundary
vertex touches exactly one vertex of S, so the balance condition splits
into one budget check per vertex of S.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .divisors import Basis, Divisor, is_antinef, pointwise_min
from .errors import (
    HypothesisFailed,
    Inconsistency,
    InfeasibleSplit,
    InvalidCertificate,
    MismatchedXi,
    NonPositiveParameter,
    NotAReesVertex,
)
from .graph import distances
from .invariants import (
    ResolvedIdeal,
    Side,
    check_chain_conditions,
    floor_multiple,
    lambda_value,
    multiplier_divisor,
    xi_and_support,
)


@dataclass(frozen=True)
class SupportCertificate:
    xi: Fraction
    support: frozenset[int]
    assign: Mapping[int, int] = field(hash=False)  # on S and its neighbours

    def value(self, v: int) -> int:
        return self.assign[v]


class SplitMode(enum.Enum):
    EQUALITY_SEED = "equality-seed"
    STRICT_PROPAGATE = "strict-propagate"


@dataclass(frozen=True)
class NeighborSplit:
    gamma: int
    a_gamma: int
    neighbors: tuple[int, ...]
    deltas: tuple[Fraction, ...]
    fracs: tuple[Fraction, ...]
    phi: Fraction


def _positive(xi) -> Fraction:
    xi = Fraction(xi)
    if xi <= 0:
        raise NonPositiveParameter(f"expected a positive rational, got {xi}")
    return xi


def support_value(r: ResolvedIdeal, xi: Fraction, v: int) -> int | None:
    """The a with lambda(a, v) = xi, if it is a nonnegative integer."""
    num = xi.numerator * r.d[v - 1]
    if num % xi.denominator:
        return None
    a = num // xi.denominator - r.k[v - 1] - 1
    return a if a >= 0 else None


def boundary_minimum(r: ResolvedIdeal, xi: Fraction, v: int) -> int:
    """Least nonnegative a with lambda(a, v) > xi, i.e. floor(Delta) + 1."""
    return max(0, floor_multiple(xi, r.d[v - 1]) - r.k[v - 1])


def delta(r: ResolvedIdeal, xi: Fraction, v: int) -> Fraction:
    """The real number a with lambda(a, v) = xi."""
    return xi * r.d[v - 1] - r.k[v - 1] - 1


# -- candidates and the oracle ------------------------------------------------

def candidates_upto(r: ResolvedIdeal, bound) -> list[Fraction]:
    """All (a + k_v + 1) / d_v <= bound with a >= 0, sorted and deduplicated."""
    bound = Fraction(bound)
    out = set()
    for i in range(r.n):
        d, k = r.d[i], r.k[i]
        top = floor_multiple(bound, d) if bound > 0 else 0
        for m in range(k + 1, top + 1):
            out.add(Fraction(m, d))
    return sorted(out)


def is_jumping_oracle(r: ResolvedIdeal, xi) -> bool:
    xi = _positive(xi)
    return multiplier_divisor(r, xi, Side.AT) != multiplier_divisor(r, xi, Side.LEFT)


# -- certificates ---------------------------------------------------------------

def certify_support(
    r: ResolvedIdeal, xi, s: Iterable[int], equality: bool = True
) -> SupportCertificate | None:
    """A certificate for xi supported on the connected set s, or None.

    With ``equality`` the balance at each vertex of s must be exact;
    surplus budget goes to the highest-numbered boundary neighbour.
    Without it the boundary values are the least admissible ones.
    """
    xi = _positive(xi)
    s = frozenset(s)
    g = r.c.graph
    if not s or not g.is_connected_set(s):
        return None
    assign: dict[int, int] = {}
    for v in s:
        a = support_value(r, xi, v)
        if a is None:
            return None
        assign[v] = a
    if r.n == 1:
        return SupportCertificate(xi, s, assign)
    for v in sorted(s):
        inside = [u for u in g.neighbors(v) if u in s]
        outside = [u for u in g.neighbors(v) if u not in s]
        budget = g.weight(v) * assign[v] - sum(assign[u] for u in inside)
        lows = {u: boundary_minimum(r, xi, u) for u in outside}
        need = sum(lows.values())
        if budget < need:
            return None
        if not outside:
            if equality and budget != 0:
                return None
            continue
        if equality:
            lows[max(outside)] += budget - need
        assign.update(lows)
    return SupportCertificate(xi, s, assign)


def certificate_problems(
    r: ResolvedIdeal, cert: SupportCertificate, require_chain: bool = True
) -> list[str]:
    """Everything wrong with cert; balance may hold as an inequality."""
    g = r.c.graph
    s = cert.support
    xi = Fraction(cert.xi)
    problems = []
    if not s or not g.is_connected_set(s):
        return [f"support {sorted(s)} is empty or disconnected"]
    boundary = {u for v in s for u in g.neighbors(v) if u not in s}
    expected = set(s) | boundary
    if set(cert.assign) != expected:
        problems.append(f"assignment covers {sorted(cert.assign)}, expected {sorted(expected)}")
        return problems
    if any(x < 0 for x in cert.assign.values()):
        problems.append("negative assignment")
    for v in sorted(s):
        if lambda_value(r, cert.assign[v], v) != xi:
            problems.append(f"lambda at support vertex {v} is not {xi}")
    for u in sorted(boundary):
        if not lambda_value(r, cert.assign[u], u) > xi:
            problems.append(f"lambda at boundary vertex {u} is not above {xi}")
    if r.n > 1:
        for v in sorted(s):
            lhs = g.weight(v) * cert.assign[v]
            rhs = sum(cert.assign[u] for u in g.neighbors(v))
            if lhs < rhs:
                problems.append(f"balance fails at {v}: {lhs} < {rhs}")
    if require_chain:
        problems.extend(check_chain_conditions(r, s))
    return problems


def check_certificate(r: ResolvedIdeal, cert: SupportCertificate, require_chain: bool = True) -> None:
    problems = certificate_problems(r, cert, require_chain)
    if problems:
        raise InvalidCertificate("; ".join(problems))


def candidate_chains(r: ResolvedIdeal, xi: Fraction) -> Iterator[frozenset[int]]:
    """Chains whose interior avoids Rees vertices and whose ends are stars
    or Rees vertices, all of whose vertices have an integral support value.

    Ordered by size, then lexicographically.
    """
    g = r.c.graph
    cand = {v for v in range(1, r.n + 1) if support_value(r, xi, v) is not None}
    ends = sorted(v for v in cand if g.is_star(v) or r.is_rees(v))
    chains = [frozenset([v]) for v in ends]
    for i, u in enumerate(ends):
        for v in ends[i + 1:]:
            path = g.path(u, v)
            if all(x in cand for x in path) and not any(r.is_rees(x) for x in path[1:-1]):
                chains.append(frozenset(path))
    chains.sort(key=lambda s: (len(s), sorted(s)))
    return iter(chains)


def criterion_is_jumping(r: ResolvedIdeal, xi) -> SupportCertificate | None:
    """Decide xi with the tree criterion; returns a certificate or None."""
    xi = _positive(xi)
    if r.n == 1:
        return certify_support(r, xi, {1})
    for s in candidate_chains(r, xi):
        cert = certify_support(r, xi, s, equality=True)
        if cert is not None:
            return cert
    return None


def _decide(r: ResolvedIdeal, xi: Fraction, verify: bool) -> tuple[Fraction, SupportCertificate | None]:
    cert = criterion_is_jumping(r, xi)
    if verify:
        oracle = is_jumping_oracle(r, xi)
        if oracle != (cert is not None):
            raise Inconsistency(
                f"at xi = {xi} the criterion says {cert is not None} but the oracle says {oracle}"
            )
    return xi, cert


def _decide_chunk(args) -> list[tuple[Fraction, SupportCertificate | None]]:
    r, chunk, verify = args
    return [_decide(r, xi, verify) for xi in chunk]


def jumping_certificates(
    r: ResolvedIdeal, bound, verify: bool = False, jobs: int = 1
) -> list[tuple[Fraction, SupportCertificate]]:
    """Every jumping number up to bound with the certificate the criterion found."""
    cands = candidates_upto(r, bound)
    if jobs > 1 and len(cands) > 1:
        size = max(1, math.ceil(len(cands) / (4 * jobs)))
        chunks = [(r, cands[i:i + size], verify) for i in range(0, len(cands), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            decided = [x for part in pool.map(_decide_chunk, chunks) for x in part]
    else:
        decided = [_decide(r, xi, verify) for xi in cands]
    decided.sort(key=lambda item: item[0])
    return [(xi, cert) for xi, cert in decided if cert is not None]


def jumping_numbers(r: ResolvedIdeal, bound, verify: bool = False, jobs: int = 1) -> list[Fraction]:
    return [xi for xi, _ in jumping_certificates(r, bound, verify, jobs)]


# -- neighbour splits and the antinef extension ---------------------------------

def neighbor_data(r: ResolvedIdeal, gamma: int, a_gamma: int) -> NeighborSplit:
    lam = lambda_value(r, a_gamma, gamma)
    nbrs = r.c.neighbors(gamma)
    deltas = tuple(delta(r, lam, u) for u in nbrs)
    fracs = tuple(x - math.floor(x) for x in deltas)
    phi = sum(fracs, Fraction(0)) + r.rees[gamma - 1] * lam
    return NeighborSplit(gamma, a_gamma, nbrs, deltas, fracs, phi)


def neighbor_split(
    r: ResolvedIdeal,
    gamma: int,
    a_gamma: int,
    fixed: tuple[int, int] | None = None,
    mode: SplitMode = SplitMode.STRICT_PROPAGATE,
) -> dict[int, int]:
    """Values for the neighbours of gamma other than ``fixed`` that balance
    ``w_gamma a_gamma`` and keep lambda above lambda(a_gamma, gamma).

    Every neighbour gets its least strict value; only if that overspends
    the budget (EQUALITY_SEED) does the lowest-numbered neighbour with an
    integral Delta take equality.  Leftover budget goes to the
    highest-numbered neighbour.
    """
    g = r.c.graph
    lam = lambda_value(r, a_gamma, gamma)
    nbrs = g.neighbors(gamma)
    fixed_value = 0
    if fixed is not None:
        eta, fixed_value = fixed
        if eta not in nbrs:
            raise InfeasibleSplit(f"{eta} is not adjacent to {gamma}")
        lam_fixed = lambda_value(r, fixed_value, eta)
        if mode is SplitMode.EQUALITY_SEED and lam_fixed != lam:
            raise InfeasibleSplit(f"seed {eta} does not have lambda = {lam}")
        if mode is SplitMode.STRICT_PROPAGATE and not (
            lam_fixed < lam or (lam_fixed == lam and r.is_rees(gamma))
        ):
            raise InfeasibleSplit(f"seed {eta} is not below lambda = {lam}")
    free = [u for u in nbrs if fixed is None or u != fixed[0]]
    if not free:
        return {}
    budget = g.weight(gamma) * a_gamma - fixed_value
    if a_gamma == 0:
        vals = {u: 0 for u in free}
    else:
        vals = {u: boundary_minimum(r, lam, u) for u in free}
        if sum(vals.values()) > budget and mode is SplitMode.EQUALITY_SEED:
            for u in free:
                dl = delta(r, lam, u)
                if dl.denominator == 1 and dl >= 0:
                    vals[u] = int(dl)
                    break
        spent = sum(vals.values())
        if spent > budget:
            raise InfeasibleSplit(
                f"at {gamma} with a = {a_gamma}: minimal values need {spent}, budget is {budget}"
            )
        vals[free[-1]] += budget - spent

    if sum(vals.values()) != budget or any(x < 0 for x in vals.values()):
        raise InfeasibleSplit(f"at {gamma} with a = {a_gamma}: neighbour values do not balance")
    ties = sum(1 for u, x in vals.items() if lambda_value(r, x, u) == lam)
    below = sum(1 for u, x in vals.items() if lambda_value(r, x, u) < lam)
    allowed = 1 if mode is SplitMode.EQUALITY_SEED else 0
    if below or ties > allowed:
        raise InfeasibleSplit(f"at {gamma} with a = {a_gamma}: lambda does not increase outward")
    return vals


def extend_to_antinef(r: ResolvedIdeal, cert: SupportCertificate) -> Divisor:
    """An antinef F agreeing with cert near S whose lambda values grow
    strictly along every path leaving S."""
    g = r.c.graph
    f = dict(cert.assign)
    dist = distances(g, cert.support)
    for v in sorted(dist, key=lambda x: (dist[x], x)):
        if dist[v] == 0:
            continue
        outward = [u for u in g.neighbors(v) if dist[u] > dist[v]]
        if not outward:
            continue
        (inward,) = [u for u in g.neighbors(v) if dist[u] < dist[v]]
        f.update(neighbor_split(r, v, f[v], (inward, f[inward]), SplitMode.STRICT_PROPAGATE))
    out = Divisor(Basis.E, tuple(f[v] for v in range(1, r.n + 1)))
    if not is_antinef(r.c, out):
        raise InfeasibleSplit(f"extension {out.coeffs} is not antinef")
    return out


# -- families of jumping numbers -----------------------------------------------

def rees_family(r: ResolvedIdeal, gamma: int, count: int) -> list[Fraction]:
    """The first ``count`` values m / d_gamma with m * rees_gamma > d_gamma."""
    e = r.rees[gamma - 1]
    if e <= 0:
        raise NotAReesVertex(f"vertex {gamma} has rees exponent 0")
    d = r.d[gamma - 1]
    start = d // e + 1
    return [Fraction(m, d) for m in range(start, start + count)]


def star_value(r: ResolvedIdeal, gamma: int) -> Fraction:
    """1 - 1/d_gamma, a jumping number supported at gamma."""
    if r.c.valence(gamma) + r.rees[gamma - 1] < 3:
        raise HypothesisFailed(
            f"vertex {gamma}: valence {r.c.valence(gamma)} + rees {r.rees[gamma - 1]} < 3"
        )
    return 1 - Fraction(1, r.d[gamma - 1])


def _shift_modulus(r: ResolvedIdeal, cert: SupportCertificate) -> int:
    return math.gcd(*(r.d[v - 1] for v in cert.assign))


def shift_family(r: ResolvedIdeal, cert: SupportCertificate, n: int) -> Fraction:
    return Fraction(cert.xi) + Fraction(n, _shift_modulus(r, cert))


def shift_certificate(r: ResolvedIdeal, cert: SupportCertificate, n: int) -> SupportCertificate:
    """The certificate for xi + n/d obtained by adding n d_v / d everywhere.

    Balance at the support only holds as an inequality in general.
    """
    d = _shift_modulus(r, cert)
    assign = {v: a + n * (r.d[v - 1] // d) for v, a in cert.assign.items()}
    return SupportCertificate(shift_family(r, cert, n), cert.support, assign)


def union_supports(r: ResolvedIdeal, f1: Divisor, f2: Divisor) -> tuple[Divisor, frozenset[int]]:
    xi1, s1 = xi_and_support(r, f1)
    xi2, s2 = xi_and_support(r, f2)
    if xi1 != xi2:
        raise MismatchedXi(f"xi values differ: {xi1} != {xi2}")
    f = pointwise_min(f1, f2)
    xi, s = xi_and_support(r, f)
    if xi != xi1 or s != s1 | s2:
        raise Inconsistency(f"minimum divisor has xi {xi} and support {sorted(s)}")
    return f, s
