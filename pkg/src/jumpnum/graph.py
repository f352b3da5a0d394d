"""Proximity tables, the inverse proximity matrix and the dual graph.

Points are numbered 1..n in the order they are blown up.  A point may
only be proximate to strictly earlier points, so the proximity matrix
is lower unitriangular and its inverse can be filled in row by row.

Vertex ids in the public API are 1-based; vectors and matrices are
plain tuples indexed from 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EmptySet, MalformedProximity, NotATree

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ProximityTable:
    """For each point, the earlier points it is proximate to.

    ``prox[mu - 1]`` is the sorted tuple of ``nu`` with ``mu > nu`` in the
    proximity order; ``prox[0]`` is always empty.
    """

    n: int
    prox: tuple[tuple[int, ...], ...]

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, Iterable[int]]) -> ProximityTable:
        rows = [()] * n
        for mu, targets in mapping.items():
            if not 1 <= mu <= n:
                raise MalformedProximity(f"point {mu} outside 1..{n}", point=mu)
            rows[mu - 1] = tuple(sorted(targets))
        return cls(n, tuple(rows))

    def proximate(self, mu: int) -> tuple[int, ...]:
        return self.prox[mu - 1]

    def matrix(self) -> Matrix:
        n = self.n
        rows = []
        for mu in range(1, n + 1):
            row = [0] * n
            row[mu - 1] = 1
            for nu in self.prox[mu - 1]:
                row[nu - 1] = -1
            rows.append(tuple(row))
        return tuple(rows)

    @classmethod
    def from_matrix(cls, p: Sequence[Sequence[int]]) -> ProximityTable:
        n = len(p)
        rows = []
        for mu in range(n):
            rows.append(tuple(nu + 1 for nu in range(n) if nu != mu and p[mu][nu] == -1))
        return cls(n, tuple(rows))


def validate_proximity(table: ProximityTable) -> None:
    """Raise MalformedProximity unless the table can come from a blowup sequence.

    Only the local conditions are checked here; the tree check in
    build_constellation is the final word.
    """
    n = table.n
    if not isinstance(n, int) or n < 1:
        raise MalformedProximity(f"number of points must be a positive integer, got {n!r}")
    if len(table.prox) != n:
        raise MalformedProximity(f"expected {n} proximity rows, got {len(table.prox)}")
    if table.prox[0]:
        raise MalformedProximity("point 1 cannot be proximate to anything", point=1)
    for mu in range(2, n + 1):
        row = table.prox[mu - 1]
        if not row:
            raise MalformedProximity(f"point {mu} is not proximate to any point", point=mu)
        if len(row) > 2:
            raise MalformedProximity(f"point {mu} is proximate to {len(row)} points (max 2)", point=mu)
        if len(set(row)) != len(row):
            raise MalformedProximity(f"point {mu} lists a repeated proximity", point=mu)
        for nu in row:
            if not 1 <= nu < mu:
                raise MalformedProximity(
                    f"point {mu} is proximate to {nu}, which is not an earlier point", point=mu
                )
        if len(row) == 2:
            nu, rho = sorted(row)
            if nu not in table.prox[rho - 1]:
                raise MalformedProximity(
                    f"point {mu} is proximate to {nu} and {rho} but {rho} is not proximate to {nu}",
                    point=mu,
                )


@dataclass(frozen=True)
class DualGraph:
    adjacency: tuple[tuple[int, ...], ...]  # adjacency[v - 1]: sorted neighbours of v
    weights: tuple[int, ...]  # -E_v^2
    valences: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def weight(self, v: int) -> int:
        return self.weights[v - 1]

    def valence(self, v: int) -> int:
        return self.valences[v - 1]

    def is_end(self, v: int) -> bool:
        return self.valences[v - 1] == 1

    def is_star(self, v: int) -> bool:
        # valence >= 3; see the ledger for the valence-2 reading
        return self.valences[v - 1] >= 3

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(1, self.n + 1) for v in self.adjacency[u - 1] if u < v]

    def path(self, u: int, v: int) -> list[int]:
        """The unique path from u to v in the tree, endpoints included."""
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y in self.adjacency[x - 1]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x - 1]:
                if y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == vs


@dataclass(frozen=True)
class Constellation:
    prox: ProximityTable
    q: Matrix  # inverse of the proximity matrix
    icm: Matrix  # intersection matrix E_mu . E_nu
    graph: DualGraph

    @property
    def n(self) -> int:
        return self.prox.n

    @property
    def p(self) -> Matrix:
        return self.prox.matrix()

    def proximate_points(self, nu: int) -> tuple[int, ...]:
        """All mu with mu proximate to nu."""
        return tuple(mu for mu in range(nu + 1, self.n + 1) if nu in self.prox.prox[mu - 1])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.graph.adjacency[v - 1]

    def weight(self, v: int) -> int:
        return self.graph.weights[v - 1]

    def valence(self, v: int) -> int:
        return self.graph.valences[v - 1]


def inverse_proximity(table: ProximityTable) -> Matrix:
    """Q = P^-1 via q[mu][nu] = sum of q[rho][nu] over rho that mu is proximate to, plus delta."""
    n = table.n
    q: list[list[int]] = []
    for mu in range(n):
        row = [0] * n
        row[mu] = 1
        for rho in table.prox[mu]:
            prev = q[rho - 1]
            for nu in range(rho):
                row[nu] += prev[nu]
        q.append(row)
    return tuple(tuple(r) for r in q)


def build_constellation(prox: ProximityTable) -> Constellation:
    validate_proximity(prox)
    n = prox.n
    q = inverse_proximity(prox)
    p = prox.matrix()

    # icm = -(P^T P)
    icm = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = 0
            for r in range(b, n):
                s += p[r][a] * p[r][b]
            icm[a][b] = icm[b][a] = -s

    adjacency: list[list[int]] = [[] for _ in range(n)]
    edge_count = 0
    for a in range(n):
        for b in range(a + 1, n):
            x = icm[a][b]
            if x not in (0, 1):
                raise NotATree(
                    f"E_{a + 1}.E_{b + 1} = {x}, expected 0 or 1", point=b + 1
                )
            if x == 1:
                adjacency[a].append(b + 1)
                adjacency[b].append(a + 1)
                edge_count += 1
    if edge_count != n - 1:
        raise NotATree(f"dual graph has {edge_count} edges on {n} vertices", point=n)
    graph = DualGraph(
        adjacency=tuple(tuple(sorted(nb)) for nb in adjacency),
        weights=tuple(-icm[v][v] for v in range(n)),
        valences=tuple(len(nb) for nb in adjacency),
    )
    if not graph.is_connected_set(range(1, n + 1)):
        raise NotATree("dual graph is disconnected", point=n)
    return Constellation(prox=prox, q=q, icm=tuple(tuple(r) for r in icm), graph=graph)


def distance(g: DualGraph, v: int, s: Iterable[int]) -> int:
    """Length of a shortest path from v to the set s."""
    targets = set(s)
    if not targets:
        raise EmptySet("distance to an empty vertex set")
    dist = {t: 0 for t in targets}
    queue = deque(targets)
    while queue:
        x = queue.popleft()
        if x == v:
            return dist[x]
        for y in g.adjacency[x - 1]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise ValueError(f"vertex {v} not reachable from {sorted(targets)}")


def distances(g: DualGraph, s: Iterable[int]) -> dict[int, int]:
    """d(v, s) for every vertex v."""
    targets = set(s)
    if not targets:
        raise EmptySet("distance to an empty vertex set")
    dist = {t: 0 for t in targets}
    queue = deque(targets)
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x - 1]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist
