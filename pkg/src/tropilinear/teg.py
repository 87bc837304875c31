"""Timed-event-graph front end.

A model is a list of named transitions (input, internal or output) and
places, each place carrying a holding time and zero or one initial token.
Compilation builds the dater matrices: with A0/A1 collecting the
zero/one-token internal places, B0 the input places and C0 the output
places, the explicit recursion x(k) = A0 x(k) (+) A1 x(k-1) (+) B0 u(k)
resolves to A = A0* A1 and B = A0* B0 provided the zero-token internal
subgraph has no circuit (then A0* = I (+) A0 (+) ... (+) A0^(n-1)).

Places with a token on an input or output arc would add delayed
feedthrough terms that do not fit the (A, B, C) shape and are rejected;
so are multi-token places, which would silently require state expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dynamics import LtiSystem
from .tropical import (
    MAXPLUS,
    NEG_INF,
    TropilinearError,
    TropMatrix,
    mat_add,
    mat_mul,
)

KINDS = ("input", "internal", "output")


class TegError(TropilinearError, ValueError):
    """Invalid timed event graph description."""


@dataclass(frozen=True)
class Place:
    src: str
    dst: str
    time: int
    tokens: int


@dataclass(frozen=True)
class TegModel:
    """Validated timed event graph."""

    transitions: tuple  # (name, kind) in declaration order
    places: tuple       # Place tuples

    def __post_init__(self):
        kinds = dict(self.transitions)
        if len(kinds) != len(self.transitions):
            raise TegError("duplicate transition name")
        for name, kind in self.transitions:
            if kind not in KINDS:
                raise TegError(f"transition {name}: unknown kind {kind!r}")
        for pl in self.places:
            for end in (pl.src, pl.dst):
                if end not in kinds:
                    raise TegError(f"place references unknown transition {end!r}")
            if pl.time < 0:
                raise TegError(f"place {pl.src}->{pl.dst}: negative holding time")
            if pl.tokens not in (0, 1):
                raise TegError(
                    f"place {pl.src}->{pl.dst}: initial tokens must be 0 or 1 "
                    "(multi-token places require state expansion)")
            if kinds[pl.src] == "output":
                raise TegError(f"output transition {pl.src} has an outgoing place")
            if kinds[pl.dst] == "input":
                raise TegError(f"input transition {pl.dst} has an incoming place")
            if kinds[pl.src] == "input" and kinds[pl.dst] == "output":
                raise TegError(
                    f"place {pl.src}->{pl.dst} connects input directly to output")

    def names(self, kind: str) -> list:
        return [n for n, k in self.transitions if k == kind]


def parse_teg(text: str) -> TegModel:
    """Parse the line-oriented description; errors carry line numbers."""
    transitions = []
    places = []
    for num, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        toks = ln.split()
        try:
            if toks[0] == "transition":
                if len(toks) != 3 or not toks[2].startswith("kind="):
                    raise TegError("expected: transition NAME kind=input|internal|output")
                transitions.append((toks[1], toks[2][5:]))
            elif toks[0] == "place":
                if len(toks) != 6 or toks[2] != "->" \
                        or not toks[4].startswith("time=") \
                        or not toks[5].startswith("tokens="):
                    raise TegError("expected: place FROM -> TO time=T tokens=K")
                pl = Place(toks[1], toks[3], int(toks[4][5:]), int(toks[5][7:]))
                if pl.time < 0:
                    raise TegError("negative holding time")
                if pl.tokens not in (0, 1):
                    raise TegError("initial tokens must be 0 or 1 "
                                   "(multi-token places require state expansion)")
                places.append(pl)
            else:
                raise TegError(f"unknown directive {toks[0]!r}")
        except (TegError, ValueError) as exc:
            raise TegError(f"line {num}: {exc}") from None
    return TegModel(tuple(transitions), tuple(places))


def render_teg(m: TegModel) -> str:
    lines = [f"transition {n} kind={k}" for n, k in m.transitions]
    lines += [f"place {p.src} -> {p.dst} time={p.time} tokens={p.tokens}"
              for p in m.places]
    return "\n".join(lines) + "\n"


def _zero_token_circuit(n: int, edges: set) -> Optional[list]:
    """Cycle among zero-token internal arcs, if any (DFS three-color)."""
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
    color = [0] * n
    stack_path: list = []

    def visit(v):
        color[v] = 1
        stack_path.append(v)
        for w in adj[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):]
            if color[w] == 0:
                got = visit(w)
                if got:
                    return got
        stack_path.pop()
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            got = visit(v)
            if got:
                return got
    return None


def compile_teg(m: TegModel) -> LtiSystem:
    """Dater matrices of the graph; raises on a zero-token circuit."""
    states = m.names("internal")
    inputs = m.names("input")
    outputs = m.names("output")
    if not states:
        raise TegError("model has no internal transition")
    if not inputs:
        raise TegError("model has no input transition")
    sidx = {n: i for i, n in enumerate(states)}
    uidx = {n: i for i, n in enumerate(inputs)}
    yidx = {n: i for i, n in enumerate(outputs)}
    n, p, q = len(states), len(inputs), len(outputs)

    a0 = [[NEG_INF] * n for _ in range(n)]
    a1 = [[NEG_INF] * n for _ in range(n)]
    b0 = [[NEG_INF] * p for _ in range(n)]
    c0 = [[NEG_INF] * n for _ in range(q)]
    zero_edges = set()
    for pl in m.places:
        if pl.src in sidx and pl.dst in sidx:
            tgt = a0 if pl.tokens == 0 else a1
            i, j = sidx[pl.dst], sidx[pl.src]
            if tgt[i][j] is NEG_INF or pl.time > tgt[i][j]:
                tgt[i][j] = pl.time
            if pl.tokens == 0:
                zero_edges.add((j, i))
        elif pl.src in uidx:
            if pl.tokens != 0:
                raise TegError(
                    f"input place {pl.src}->{pl.dst} carries a token; only "
                    "zero-token input places fit the dater form")
            i, j = sidx[pl.dst], uidx[pl.src]
            if b0[i][j] is NEG_INF or pl.time > b0[i][j]:
                b0[i][j] = pl.time
        else:  # internal -> output
            if pl.tokens != 0:
                raise TegError(
                    f"output place {pl.src}->{pl.dst} carries a token; only "
                    "zero-token output places fit the dater form")
            r, i = yidx[pl.dst], sidx[pl.src]
            if c0[r][i] is NEG_INF or pl.time > c0[r][i]:
                c0[r][i] = pl.time

    cyc = _zero_token_circuit(n, zero_edges)
    if cyc:
        names = " -> ".join(states[v] for v in cyc + [cyc[0]])
        raise TegError(f"zero-token circuit: {names}")

    a0m = TropMatrix.from_rows(a0)
    star = TropMatrix.identity(n)
    power = TropMatrix.identity(n)
    for _ in range(n - 1):
        power = mat_mul(power, a0m)
        star = mat_add(star, power)

    a = mat_mul(star, TropMatrix.from_rows(a1))
    b = mat_mul(star, TropMatrix.from_rows(b0))
    c = TropMatrix(q, n, tuple(tuple(r) for r in c0), MAXPLUS) if q else None
    return LtiSystem(a, b, c)


def tandem_line_model() -> TegModel:
    """Three machines in tandem: processing times 1, 2, 3, transport
    delays 5 and 6 with one token each, self-loops with one token, a
    zero-token input place and an output place of holding time 3."""
    return parse_teg("""
transition u kind=input
transition x1 kind=internal
transition x2 kind=internal
transition x3 kind=internal
transition y kind=output
place u -> x1 time=0 tokens=0
place x1 -> x1 time=1 tokens=1
place x1 -> x2 time=5 tokens=1
place x2 -> x2 time=2 tokens=1
place x2 -> x3 time=6 tokens=1
place x3 -> x3 time=3 tokens=1
place x3 -> y time=3 tokens=0
""")
