"""Random constellations built by simulating point blowups, plus the two
worked instances used throughout the suite."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from jumpnum.graph import ProximityTable, build_constellation
from jumpnum.invariants import resolve

THREE_POINTS = "points 3\nprox 2: 1\nprox 3: 1\nrees 0 1 1\n"
FIVE_POINTS = "points 5\nprox 2: 1\nprox 3: 1\nprox 4: 1\nprox 5: 1\nrees 0 4 4 5 7\n"


def three_points():
    c = build_constellation(ProximityTable.from_mapping(3, {2: [1], 3: [1]}))
    return resolve(c, [0, 1, 1])


def five_points():
    c = build_constellation(ProximityTable.from_mapping(5, {2: [1], 3: [1], 4: [1], 5: [1]}))
    return resolve(c, [0, 4, 4, 5, 7])


def blowup_table(choices):
    """Build a proximity table from a list of blowup choices.

    ``choices[i]`` picks the centre of blowup i+2: an int v means a free
    point on E_v, a pair (u, v) the satellite point E_u meet E_v.  Also
    returns the dual graph edges tracked geometrically.
    """
    n = len(choices) + 1
    edges = set()
    prox = {}
    for mu, centre in enumerate(choices, start=2):
        if isinstance(centre, int):
            edges.add((centre, mu))
            prox[mu] = (centre,)
        else:
            u, v = centre
            edges.discard((u, v))
            edges.update({(u, mu), (v, mu)})
            prox[mu] = (u, v)
    return ProximityTable.from_mapping(n, prox), edges


def random_choices(rng: random.Random, n: int):
    edges = set()
    out = []
    for mu in range(2, n + 1):
        if edges and rng.random() < 0.5:
            u, v = rng.choice(sorted(edges))
            edges.discard((u, v))
            edges.update({(u, mu), (v, mu)})
            out.append((u, v))
        else:
            v = rng.randrange(1, mu)
            edges.add((v, mu))
            out.append(v)
    return out


def random_rees(rng: random.Random, c, max_rees: int):
    rees = [rng.randint(0, max_rees) for _ in range(c.n)]
    for v in range(1, c.n + 1):
        if c.weight(v) == 1 and rees[v - 1] == 0:
            rees[v - 1] = rng.randint(1, max_rees)
    return rees


def random_ideal(rng: random.Random, max_n: int = 7, max_rees: int = 5, n: int | None = None):
    if n is None:
        n = rng.randint(1, max_n)
    table, _ = blowup_table(random_choices(rng, n))
    c = build_constellation(table)
    return resolve(c, random_rees(rng, c, max_rees))


@st.composite
def ideals(draw, max_n: int = 7, max_rees: int = 5, min_n: int = 1):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    return random_ideal(random.Random(seed), max_n, max_rees, n=n)


@st.composite
def constellations(draw, max_n: int = 7, min_n: int = 1):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    rng = random.Random(seed)
    table, edges = blowup_table(random_choices(rng, n))
    return build_constellation(table), edges


def frac(text: str) -> Fraction:
    return Fraction(text)
