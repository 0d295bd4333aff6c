"""Treegraphs of finite prefixes and the path-expression machinery that
rebuilds the covering graph of w^alpha from the treegraph of alpha's graph.

A treegraph vertex is a non-empty sequence of base vertices: the last entry
is a vertex inside the copy of the base graph indexed by the rest.  Base
edges act on the last entry ("rel"); every sequence short enough also has a
single "hash" edge into its own fresh copy.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import BaseNotRooted, CapExceeded
from .ordinals import ZERO, add, compare, omega_pow
from . import ordinals
from .graphs import GraphPrefix

DEFAULT_TREE_CAP = 200_000

REL = "rel"
HASH = "hash"


@dataclass(frozen=True)
class TreeGraphPrefix:
    vertices: frozenset
    rel_edges: frozenset
    hash_edges: frozenset
    root: tuple
    base: GraphPrefix
    depth: int

    def out(self, v, label) -> list:
        edges = self.rel_edges if label == REL else self.hash_edges
        return [q for (p, q) in edges if p == v]

    def table(self, label, forward: bool) -> dict:
        edges = self.rel_edges if label == REL else self.hash_edges
        out: dict = {}
        for p, q in edges:
            if forward:
                out.setdefault(p, []).append(q)
            else:
                out.setdefault(q, []).append(p)
        return out


def build_treegraph(G: GraphPrefix, depth: int, cap: int = DEFAULT_TREE_CAP) -> TreeGraphPrefix:
    """All sequences over the base vertices of length <= depth, rel edges on
    the last coordinate, and one hash edge from every extendable sequence."""
    base_vertices = list(G.vertices)
    count = 0
    vertices = set()
    for length in range(1, depth + 1):
        count += len(base_vertices) ** length
        if count > cap:
            raise CapExceeded(f"treegraph would exceed {cap} vertices")
    for length in range(1, depth + 1):
        vertices.update(itertools.product(base_vertices, repeat=length))
    rel_edges = set()
    hash_edges = set()
    succs = G.succs()
    for w in vertices:
        head, last = w[:-1], w[-1]
        for v in succs[last]:
            rel_edges.add((w, head + (v,)))
        if len(w) < depth:
            hash_edges.add((w, w + (last,)))
    if G.root is None:
        raise BaseNotRooted("base graph has no root")
    return TreeGraphPrefix(
        frozenset(vertices),
        frozenset(rel_edges),
        frozenset(hash_edges),
        (G.root,),
        G,
        depth,
    )


# path expressions


@dataclass(frozen=True)
class Fwd:
    label: str


@dataclass(frozen=True)
class Bwd:
    label: str


@dataclass(frozen=True)
class Maximal:
    token: Union[Fwd, Bwd]


@dataclass(frozen=True)
class SStep:
    pass


PathToken = Union[Fwd, Bwd, Maximal, SStep]


@dataclass(frozen=True)
class PAtom:
    token: PathToken


@dataclass(frozen=True)
class PConcat:
    items: tuple


@dataclass(frozen=True)
class PUnion:
    items: tuple


@dataclass(frozen=True)
class PStar:
    item: "PathExpr"


PathExpr = Union[PAtom, PConcat, PUnion, PStar]


class _Tokens:
    """Per-graph successor functions for each path token, cached."""

    def __init__(self, T: TreeGraphPrefix):
        self.fwd = {REL: T.table(REL, True), HASH: T.table(HASH, True)}
        self.bwd = {REL: T.table(REL, False), HASH: T.table(HASH, False)}

    def step(self, v, token: PathToken) -> Iterable:
        if isinstance(token, Fwd):
            return self.fwd[token.label].get(v, ())
        if isinstance(token, Bwd):
            return self.bwd[token.label].get(v, ())
        if isinstance(token, Maximal):
            return self._maximal(v, token.token)
        if isinstance(token, SStep):
            return self._s_step(v)
        raise TypeError(f"unknown token {token!r}")

    def _maximal(self, v, inner: Union[Fwd, Bwd]) -> list:
        # longest runs of the inner token: vertices reachable by inner* with
        # no further inner step
        seen = {v}
        queue = deque([v])
        ends = []
        while queue:
            p = queue.popleft()
            nxt = list(self.step(p, inner))
            if not nxt:
                ends.append(p)
            for q in nxt:
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return ends

    def _s_step(self, v) -> list:
        # rel successor not reachable from any other rel successor of v
        nbrs = list(self.fwd[REL].get(v, ()))
        result = []
        for q in nbrs:
            others = [r for r in nbrs if r != q]
            if not any(self._rel_reaches(r, q) for r in others):
                result.append(q)
        return result

    def _rel_reaches(self, src, dst) -> bool:
        seen = {src}
        queue = deque([src])
        while queue:
            p = queue.popleft()
            if p == dst:
                return True
            for q in self.fwd[REL].get(p, ()):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return False


def eval_path(T: TreeGraphPrefix, expr: PathExpr, start) -> set:
    """All vertices reachable from start along a path matching expr."""
    tokens = _Tokens(T)
    return _eval(tokens, expr, {start})


def _eval(tokens: _Tokens, expr: PathExpr, starts: set) -> set:
    if isinstance(expr, PAtom):
        out = set()
        for v in starts:
            out.update(tokens.step(v, expr.token))
        return out
    if isinstance(expr, PConcat):
        current = set(starts)
        for item in expr.items:
            current = _eval(tokens, item, current)
            if not current:
                break
        return current
    if isinstance(expr, PUnion):
        out = set()
        for item in expr.items:
            out.update(_eval(tokens, item, starts))
        return out
    if isinstance(expr, PStar):
        reached = set(starts)
        frontier = set(starts)
        while frontier:
            nxt = _eval(tokens, expr.item, frontier) - reached
            reached.update(nxt)
            frontier = nxt
        return reached
    raise TypeError(f"unknown path expression {expr!r}")


MARKING = PConcat(
    (
        PStar(PAtom(Fwd(REL))),
        PAtom(Fwd(HASH)),
        PStar(PConcat((PStar(PAtom(Bwd(REL))), PAtom(Fwd(HASH))))),
    )
)

# the three ways one power-graph vertex covers another, as treegraph paths:
# drop to the copy root and descend (successor), strip repeats and take the
# local successor (coefficient bump), or one covering step on the exponent
CLAUSE_DROP_TO_ROOT = PConcat((PAtom(Maximal(Bwd(REL))), PAtom(Fwd(HASH))))
CLAUSE_BUMP_REPEAT = PConcat((PAtom(Maximal(Bwd(HASH))), PAtom(SStep()), PAtom(Fwd(HASH))))
CLAUSE_EXPONENT_STEP = PConcat((PAtom(Bwd(HASH)), PAtom(Fwd(REL)), PAtom(Fwd(HASH))))


def power_interpretation(T: TreeGraphPrefix) -> GraphPrefix:
    """Covering-graph prefix of w^alpha read off the treegraph of a prefix of
    alpha's covering graph (base meta labels required).

    Marked vertices are the hash targets of root-anchored walks that only
    descend after the first hash: they decode to non-increasing sequences of
    base vertices, i.e. the exponent lists of the ordinals below w^alpha.
    The interior is the marked set over interior base coordinates; boundary
    distortion is confined to sequences touching base boundary vertices or
    the length cap.
    """
    base = T.base
    if base.root is None or base.meta is None or base.meta.get(base.root) != ZERO:
        raise BaseNotRooted("treegraph base must be a labeled prefix rooted at 0")
    tokens = _Tokens(T)
    marked = _eval(tokens, MARKING, {T.root})
    meta = {}
    for v in marked:
        exponents = [base.meta[c] for c in v[:-1]]
        for hi, lo in zip(exponents, exponents[1:]):
            if compare(hi, lo) == ordinals.LESS:
                raise AssertionError(f"marked vertex {v!r} decodes out of order")
        value = ZERO
        for e in exponents:
            value = add(value, omega_pow(e))
        meta[v] = value
    edges = set()
    for p in marked:
        targets = set()
        for clause in (CLAUSE_DROP_TO_ROOT, CLAUSE_BUMP_REPEAT, CLAUSE_EXPONENT_STEP):
            targets.update(_eval(tokens, clause, {p}))
        for q in targets:
            if q in marked:
                edges.add((p, q))
    interior = frozenset(
        v for v in marked if all(c in base.interior for c in v)
    )
    vertices = tuple(sorted(marked, key=lambda v: meta[v]))
    root = vertices[0] if vertices else None
    return GraphPrefix(vertices, frozenset(edges), root, interior, meta, None, T.depth)


def treegraph_dot(T: TreeGraphPrefix) -> str:
    def name(v):
        return "(" + ",".join(str(c) for c in v) + ")"

    lines = ["digraph treegraph {"]
    for p, q in sorted(T.rel_edges, key=lambda e: (repr(e[0]), repr(e[1]))):
        lines.append(f'  "{name(p)}" -> "{name(q)}";')
    for p, q in sorted(T.hash_edges, key=lambda e: (repr(e[0]), repr(e[1]))):
        lines.append(f'  "{name(p)}" -> "{name(q)}" [style=dotted];')
    lines.append("}")
    return "\n".join(lines)
