"""Structural identities every resolved ideal must satisfy.

Each checker returns a list of human-readable violations, empty when the
instance is fine, so the same code serves the unit tests and the
acceptance run.
"""
from __future__ import annotations

import random
from fractions import Fraction

from jumpnum.divisors import Divisor, excess
from jumpnum.invariants import alpha, lambda_table, lambda_value
from jumpnum.jumping import neighbor_data

from oracles import matmul


def pq_identity(r):
    n = r.n
    prod = matmul([list(x) for x in r.c.p], [list(x) for x in r.c.q])
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    return [] if prod == ident else [f"PQ != I: {prod}"]


def reciprocity(r):
    n = r.n
    return [
        f"val[{a}][{b}] != val[{b}][{a}]"
        for a in range(n)
        for b in range(a + 1, n)
        if r.val[a][b] != r.val[b][a]
    ]


def canonical_relation(r):
    """w k = 2 - w + sum of k over the neighbours, and k^ = 2 - w."""
    g = r.c.graph
    out = []
    for v in range(1, r.n + 1):
        w = g.weight(v)
        lhs = w * r.k[v - 1]
        rhs = 2 - w + sum(r.k[u - 1] for u in g.neighbors(v))
        if lhs != rhs:
            out.append(f"canonical relation fails at {v}: {lhs} != {rhs}")
        if r.k_hat[v - 1] != 2 - w:
            out.append(f"k^ at {v} is {r.k_hat[v - 1]}, expected {2 - w}")
    if excess(r.c, r.K) != r.k_hat:
        out.append("hat coordinates of K disagree with k^")
    if excess(r.c, r.D) != r.rees:
        out.append("hat coordinates of D are not the rees exponents")
    return out


def alpha_sums(r):
    g = r.c.graph
    out = []
    for gam in range(1, r.n + 1):
        lhs = sum((alpha(r, gam, u) for u in g.neighbors(gam)), Fraction(0))
        rhs = g.valence(gam) - 2 + Fraction(r.rees[gam - 1] * (r.k[gam - 1] + 1), r.d[gam - 1])
        if lhs != rhs:
            out.append(f"alpha sum at {gam}: {lhs} != {rhs}")
    return out


def alpha_bounds(r):
    g = r.c.graph
    out = []
    for gam in range(1, r.n + 1):
        nbrs = g.neighbors(gam)
        vals = {u: alpha(r, gam, u) for u in nbrs}
        for u, a in vals.items():
            if abs(a) < 1:
                continue
            if not (a == -1 and r.rees[gam - 1] == 0 and len(nbrs) == 1):
                out.append(f"|alpha({gam},{u})| = {abs(a)} >= 1")
        nonpos = [u for u, a in vals.items() if a <= 0]
        if len(nonpos) > 1:
            exception = (
                len(nbrs) == 2
                and r.rees[gam - 1] == 0
                and all(vals[u] == 0 for u in nbrs)
            )
            if not exception:
                out.append(f"vertex {gam} has several nonpositive alphas {nonpos}")
    return out


def split_integrality(r, rng: random.Random, samples: int = 3):
    """sum Delta_j + d^ lambda + m - 2 = w a, and phi is a nonnegative integer."""
    g = r.c.graph
    out = []
    for gam in range(1, r.n + 1):
        for _ in range(samples):
            a = rng.randint(0, 12)
            nd = neighbor_data(r, gam, a)
            lam = lambda_value(r, a, gam)
            m = len(nd.neighbors)
            lhs = sum(nd.deltas, Fraction(0)) + r.rees[gam - 1] * lam + m - 2
            if lhs != g.weight(gam) * a:
                out.append(f"split identity fails at {gam}, a = {a}")
            if nd.phi.denominator != 1 or nd.phi < 0:
                out.append(f"phi = {nd.phi} at {gam}, a = {a}")
            if any(not 0 <= f < 1 for f in nd.fracs):
                out.append(f"fractional parts out of range at {gam}")
    return out


def proximate_chains(r, gam):
    """Every nu_1, ..., nu_r proximate to gam with nu_i proximate to nu_(i-1)."""
    prox = r.c.prox.prox
    near = r.c.proximate_points(gam)
    stack = [[nu] for nu in near]
    while stack:
        chain = stack.pop()
        yield chain
        stack.extend(chain + [nu] for nu in near if chain[-1] in prox[nu - 1])


def chain_growth(r):
    """d grows by more than d_gamma along every chain of points proximate to gamma."""
    out = []
    for gam in range(1, r.n + 1):
        for chain in proximate_chains(r, gam):
            if not r.d[chain[-1] - 1] > len(chain) * r.d[gam - 1]:
                out.append(f"d_{chain[-1]} <= {len(chain)} d_{gam} along {chain}")
    return out


def multiplicity_bounds(r):
    g = r.c.graph
    out = []
    for gam in range(1, r.n + 1):
        d, k, e = r.d[gam - 1], r.k[gam - 1], r.rees[gam - 1]
        if e > 0 and d < k * e:
            out.append(f"d < k d^ at {gam}")
        if g.valence(gam) + e >= 3 and d - k < 2:
            out.append(f"d - k < 2 at {gam}")
    return out


def local_minimum_bound(r, f: Divisor):
    """For any F and a vertex with f^ >= 0 where lambda is locally minimal."""
    g = r.c.graph
    lam = lambda_table(r, f)
    hat = excess(r.c, f)
    out = []
    for gam in range(1, r.n + 1):
        xi = lam[gam - 1]
        if hat[gam - 1] < 0 or any(lam[u - 1] < xi for u in g.neighbors(gam)):
            continue
        e = r.rees[gam - 1]
        if xi * e < hat[gam - 1] - g.valence(gam) + 2:
            out.append(f"local minimum bound fails at {gam} for {f.coeffs}")
        if g.valence(gam) == 1 and not xi * e >= hat[gam - 1] + 1:
            out.append(f"end bound fails at {gam} for {f.coeffs}")
    return out


def end_excess(r, f: Divisor):
    """If lambda at an end exceeds lambda at its neighbour, f^ is >= 0 there."""
    if r.n == 1:
        return []
    g = r.c.graph
    lam = lambda_table(r, f)
    hat = excess(r.c, f)
    out = []
    for tau in range(1, r.n + 1):
        if not g.is_end(tau):
            continue
        (mu,) = g.neighbors(tau)
        if lam[tau - 1] > lam[mu - 1] and hat[tau - 1] < 0:
            out.append(f"end {tau} has negative excess for {f.coeffs}")
    return out


def all_identities(r, rng: random.Random):
    out = []
    out += pq_identity(r)
    out += reciprocity(r)
    out += canonical_relation(r)
    out += alpha_sums(r)
    out += alpha_bounds(r)
    out += split_integrality(r, rng)
    out += chain_growth(r)
    out += multiplicity_bounds(r)
    for _ in range(3):
        f = Divisor.e(tuple(rng.randint(-2, 8) for _ in range(r.n)))
        out += local_minimum_bound(r, f)
        out += end_excess(r, f)
    return out
