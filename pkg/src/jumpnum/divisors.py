"""Divisors on the exceptional lattice and their antinef closures.

A divisor carries the basis its coefficients are written in:

* ``E``    -- strict transforms E_v,
* ``STAR`` -- total transforms E*_v,
* ``HAT``  -- the dual basis, so hat coordinates are ``-G.E_v``.

With row vectors, ``g* = g P^T`` and ``g^ = g* P``.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BasisMismatch, DimensionMismatch, NonTermination
from .graph import Constellation

DEFAULT_MAX_UNLOAD_ITERS = 10**7


class Basis(enum.Enum):
    E = "E"
    STAR = "star"
    HAT = "hat"

    @classmethod
    def parse(cls, text: str) -> Basis:
        key = text.strip().lower()
        for b in cls:
            if b.value.lower() == key:
                return b
        raise ValueError(f"unknown basis {text!r} (expected E, star or hat)")


@dataclass(frozen=True)
class Divisor:
    basis: Basis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(x) for x in self.coeffs))

    @classmethod
    def e(cls, coeffs: Iterable[int]) -> Divisor:
        return cls(Basis.E, tuple(coeffs))

    @classmethod
    def zero(cls, n: int, basis: Basis = Basis.E) -> Divisor:
        return cls(basis, (0,) * n)

    @classmethod
    def unit(cls, n: int, v: int, basis: Basis = Basis.E) -> Divisor:
        return cls(basis, tuple(int(i == v - 1) for i in range(n)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, v: int) -> int:
        """Coefficient at the 1-based vertex v."""
        return self.coeffs[v - 1]

    def _check(self, other: Divisor) -> None:
        if not isinstance(other, Divisor):
            raise TypeError(f"expected a Divisor, got {type(other).__name__}")
        if other.basis is not self.basis:
            raise BasisMismatch(f"cannot combine {self.basis.value} and {other.basis.value} divisors")
        if len(other) != len(self):
            raise DimensionMismatch(f"lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: Divisor) -> Divisor:
        self._check(other)
        return Divisor(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Divisor) -> Divisor:
        self._check(other)
        return Divisor(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Divisor:
        return Divisor(self.basis, tuple(-a for a in self.coeffs))

    def __le__(self, other: Divisor) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __ge__(self, other: Divisor) -> bool:
        self._check(other)
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _check_dim(c: Constellation, g: Divisor) -> None:
    if len(g) != c.n:
        raise DimensionMismatch(f"divisor has {len(g)} coefficients, constellation has {c.n} points")


def _to_e(c: Constellation, g: Divisor) -> tuple[int, ...]:
    n, q = c.n, c.q
    x = g.coeffs
    if g.basis is Basis.E:
        return x
    if g.basis is Basis.HAT:
        # g* = g^ Q
        x = tuple(sum(x[mu] * q[mu][nu] for mu in range(nu, n)) for nu in range(n))
    # g = g* Q^T
    return tuple(sum(x[mu] * q[nu][mu] for mu in range(nu + 1)) for nu in range(n))


def _e_to_star(c: Constellation, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(x[mu] - sum(x[nu - 1] for nu in c.prox.prox[mu]) for mu in range(c.n))


def _star_to_hat(c: Constellation, x: Sequence[int]) -> tuple[int, ...]:
    out = list(x)
    for mu in range(c.n):
        for nu in c.prox.prox[mu]:
            out[nu - 1] -= x[mu]
    return tuple(out)


def convert(c: Constellation, g: Divisor, target: Basis) -> Divisor:
    _check_dim(c, g)
    if g.basis is target:
        return g
    if g.basis is Basis.STAR and target is Basis.HAT:
        return Divisor(target, _star_to_hat(c, g.coeffs))
    e = _to_e(c, g)
    if target is Basis.E:
        return Divisor(target, e)
    star = _e_to_star(c, e)
    if target is Basis.STAR:
        return Divisor(target, star)
    return Divisor(target, _star_to_hat(c, star))


def _excess_e(c: Constellation, x: Sequence[int]) -> list[int]:
    g = c.graph
    return [
        g.weights[v] * x[v] - sum(x[u - 1] for u in g.adjacency[v])
        for v in range(c.n)
    ]


def excess(c: Constellation, g: Divisor) -> tuple[int, ...]:
    """Hat coordinates of g, i.e. -G.E_v for every v."""
    _check_dim(c, g)
    if g.basis is Basis.E:
        return tuple(_excess_e(c, g.coeffs))
    return convert(c, g, Basis.HAT).coeffs


def is_antinef(c: Constellation, g: Divisor) -> bool:
    return all(x >= 0 for x in excess(c, g))


def _max_iters() -> int:
    raw = os.environ.get("JN_MAX_UNLOAD_ITERS")
    return int(raw) if raw else DEFAULT_MAX_UNLOAD_ITERS


def antinef_closure(c: Constellation, g: Divisor, max_iters: int | None = None) -> Divisor:
    """The smallest antinef divisor F with F >= g, computed by unloading.

    At the first vertex (by id) with negative excess e, the coefficient
    goes up by ceil(-e / w).  Any antinef F >= g must already be that
    large there, so the iterate never overshoots the closure.
    """
    _check_dim(c, g)
    if max_iters is None:
        max_iters = _max_iters()
    f = list(_to_e(c, g))
    n = c.n
    weights = c.graph.weights
    adj = [[u - 1 for u in nb] for nb in c.graph.adjacency]
    ex = _excess_e(c, f)
    iters = 0
    v = 0
    while v < n:
        e = ex[v]
        if e >= 0:
            v += 1
            continue
        iters += 1
        if iters > max_iters:
            raise NonTermination(f"unloading did not finish within {max_iters} steps")
        w = weights[v]
        bump = -(e // w)  # ceil(-e / w)
        f[v] += bump
        ex[v] += w * bump
        for u in adj[v]:
            ex[u] -= bump
        v = 0
    return Divisor(Basis.E, tuple(f))


def pointwise_min(f1: Divisor, f2: Divisor) -> Divisor:
    f1._check(f2)
    if f1.basis is not Basis.E:
        raise BasisMismatch("pointwise_min needs E-basis divisors")
    return Divisor(Basis.E, tuple(min(a, b) for a, b in zip(f1.coeffs, f2.coeffs)))


def support(g: Divisor) -> frozenset[int]:
    if g.basis is not Basis.E:
        raise BasisMismatch("support is defined on E-basis coefficients")
    return frozenset(v + 1 for v, x in enumerate(g.coeffs) if x != 0)
