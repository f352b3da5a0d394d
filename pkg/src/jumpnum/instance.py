"""The text instance format.

Canonical form::

    points 3
    prox 2: 1
    prox 3: 1
    rees 0 1 1

``#`` starts a comment; blank lines and extra whitespace are ignored.
Prox lines may come in any order; ``canonical_text`` sorts them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    MalformedProximity,
    NonMinimalResolution,
    NotATree,
    ParseError,
    ZeroIdeal,
)
from .graph import ProximityTable, build_constellation
from .invariants import ResolvedIdeal, resolve

_INT = re.compile(r"[+-]?\d+")
_PROX = re.compile(r"prox\s+(\S+?)\s*:\s*(.*)$")


@dataclass
class _Token:
    text: str
    col: int


def _tokens(line: str) -> list[_Token]:
    return [_Token(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int(tok: _Token, lineno: int, what: str) -> int:
    if not _INT.fullmatch(tok.text):
        raise ParseError(f"expected an integer {what}, got {tok.text!r}", lineno, tok.col)
    return int(tok.text)


@dataclass
class Instance:
    table: ProximityTable
    rees: tuple[int, ...]
    points_line: int
    prox_lines: dict[int, int]
    rees_line: int


def _parse_syntax(text: str) -> Instance:
    n = None
    points_line = None
    prox: dict[int, tuple[int, ...]] = {}
    prox_lines: dict[int, int] = {}
    rees = None
    rees_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        toks = _tokens(line)
        if not toks:
            continue
        key = toks[0]
        if key.text == "points":
            if n is not None:
                raise ParseError("duplicate 'points' line", lineno, key.col)
            if len(toks) != 2:
                raise ParseError("'points' takes exactly one integer", lineno, key.col)
            n = _int(toks[1], lineno, "point count")
            if n < 1:
                raise ParseError("point count must be positive", lineno, toks[1].col)
            points_line = lineno
            continue
        if n is None:
            raise ParseError(f"'{key.text}' before the 'points' line", lineno, key.col)
        if key.text == "prox":
            m = _PROX.match(line.lstrip())
            if not m:
                raise ParseError("expected 'prox <point>: <point> [<point>]'", lineno, key.col)
            offset = len(line) - len(line.lstrip())
            mu_tok = _Token(m.group(1), offset + m.start(1) + 1)
            mu = _int(mu_tok, lineno, "point")
            if not 2 <= mu <= n:
                raise ParseError(f"prox point {mu} outside 2..{n}", lineno, mu_tok.col)
            if mu in prox:
                raise ParseError(f"duplicate prox line for point {mu}", lineno, mu_tok.col)
            rest_start = offset + m.start(2)
            targets = [
                _int(_Token(t.text, t.col + rest_start), lineno, "point")
                for t in _tokens(m.group(2))
            ]
            prox[mu] = tuple(targets)
            prox_lines[mu] = lineno
        elif key.text == "rees":
            if rees is not None:
                raise ParseError("duplicate 'rees' line", lineno, key.col)
            vals = [_int(t, lineno, "rees exponent") for t in toks[1:]]
            for t, v in zip(toks[1:], vals):
                if v < 0:
                    raise ParseError("rees exponents must be nonnegative", lineno, t.col)
            if len(vals) != n:
                raise ParseError(f"'rees' needs {n} exponents, got {len(vals)}", lineno, key.col)
            rees = tuple(vals)
            rees_line = lineno
        else:
            raise ParseError(f"unknown keyword {key.text!r}", lineno, key.col)
    if n is None:
        raise ParseError("missing 'points' line")
    missing = [mu for mu in range(2, n + 1) if mu not in prox]
    if missing:
        raise ParseError(f"missing prox lines for points {missing}", points_line)
    if rees is None:
        raise ParseError("missing 'rees' line")
    rows = tuple(tuple(sorted(prox.get(mu, ()))) for mu in range(1, n + 1))
    return Instance(ProximityTable(n, rows), rees, points_line, prox_lines, rees_line)


def _tree_failure_line(inst: Instance) -> int:
    # the first prefix of the blowup sequence that stops being a tree
    for m in range(2, inst.table.n + 1):
        prefix = ProximityTable(m, inst.table.prox[:m])
        try:
            build_constellation(prefix)
        except (NotATree, MalformedProximity):
            return inst.prox_lines[m]
    return inst.points_line


def load_instance(text: str | bytes, allow_nonminimal: bool = False) -> tuple[Instance, ResolvedIdeal]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    inst = _parse_syntax(text)
    try:
        c = build_constellation(inst.table)
    except MalformedProximity as exc:
        line = inst.prox_lines.get(exc.point, inst.points_line)
        raise ParseError(str(exc), line) from exc
    except NotATree as exc:
        raise ParseError(f"not a blowup sequence: {exc}", _tree_failure_line(inst)) from exc
    try:
        r = resolve(c, inst.rees, allow_nonminimal=allow_nonminimal)
    except (ZeroIdeal, NonMinimalResolution, DimensionMismatch) as exc:
        raise ParseError(str(exc), inst.rees_line) from exc
    return inst, r


def parse_instance(text: str | bytes, allow_nonminimal: bool = False) -> tuple[ProximityTable, tuple[int, ...]]:
    inst, _ = load_instance(text, allow_nonminimal)
    return inst.table, inst.rees


def canonical_text(table: ProximityTable, rees) -> str:
    lines = [f"points {table.n}"]
    for mu in range(2, table.n + 1):
        lines.append(f"prox {mu}: " + " ".join(str(v) for v in table.prox[mu - 1]))
    lines.append("rees " + " ".join(str(x) for x in rees))
    return "\n".join(lines) + "\n"
