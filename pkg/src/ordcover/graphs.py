"""Finite prefixes of covering graphs and their label-free operations.

A prefix holds the vertices reachable from 0 within a BFS depth, every
covering edge among them, and an interior marking: vertices whose complete
out-neighborhood made it into the prefix.  Label-free operations insist on
interior vertices because boundary neighborhoods are truncated.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Optional

from .errors import CapExceeded, MetaMissing, NotInterior, WalkLeftInterior
from .ordinals import Ordinal, ZERO
from .cover import FundIndex, SuccessorStep, covers, up_set
from .parsing import format_ordinal
from .words import UPWord

DEFAULT_VERTEX_CAP = 50_000


@dataclass(frozen=True)
class GraphPrefix:
    vertices: tuple
    edges: frozenset
    root: Optional[Hashable]
    interior: frozenset
    meta: Optional[dict] = None
    bound: Optional[Ordinal] = None
    depth: Optional[int] = None

    def succs(self) -> dict:
        table: dict = {v: [] for v in self.vertices}
        for p, q in self.edges:
            table[p].append(q)
        return table

    def preds(self) -> dict:
        table: dict = {v: [] for v in self.vertices}
        for p, q in self.edges:
            table[q].append(p)
        return table


def build_prefix(a: Ordinal, depth: int, cap: int = DEFAULT_VERTEX_CAP) -> GraphPrefix:
    """BFS truncation of the covering graph below a, rooted at 0."""
    if a.is_zero:
        return GraphPrefix((), frozenset(), None, frozenset(), {}, a, depth)
    dist = {ZERO: 0}
    frontier = deque([ZERO])
    neighborhoods: dict = {}
    while frontier:
        v = frontier.popleft()
        if dist[v] >= depth:
            continue
        ups = neighborhoods.setdefault(v, up_set(v, a))
        for q in ups:
            if q not in dist:
                if len(dist) >= cap:
                    raise CapExceeded(f"prefix of {a} exceeds {cap} vertices")
                dist[q] = dist[v] + 1
                frontier.append(q)
    vertices = set(dist)
    edges = set()
    interior = set()
    for v in vertices:
        ups = neighborhoods.get(v)
        if ups is None:
            ups = up_set(v, a)
        for q in ups:
            if q in vertices:
                edges.add((v, q))
        if dist[v] < depth and ups <= vertices:
            interior.add(v)
    meta = {v: v for v in vertices}
    return GraphPrefix(
        tuple(sorted(vertices)),
        frozenset(edges),
        ZERO,
        frozenset(interior),
        meta,
        a,
        depth,
    )


def _reachable(succs: dict, start) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for q in succs.get(v, ()):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def reach_greatest(G: GraphPrefix, p) -> Optional[Hashable]:
    """The out-neighbor of p that every other out-neighbor reaches by a
    directed path, if that vertex is determined within the prefix."""
    if p not in G.interior:
        raise NotInterior(f"{p!r} is not an interior vertex")
    succs = G.succs()
    nbrs = succs[p]
    if not nbrs:
        return None
    winners = [q for q in nbrs if all(q in _reachable(succs, r) for r in nbrs)]
    if len(winners) == 1:
        return winners[0]
    return None


def _ranked_out_neighbors(succs: dict, p) -> Optional[list]:
    """Out-neighbors of p sorted by mutual reachability; None when the
    truncation leaves the order ambiguous."""
    nbrs = succs[p]
    if not nbrs:
        return []
    reach = {q: _reachable(succs, q) for q in nbrs}
    counts = {q: sum(1 for r in nbrs if q in reach[r]) for q in nbrs}
    ranked = sorted(nbrs, key=lambda q: counts[q])
    if [counts[q] for q in ranked] != list(range(1, len(nbrs) + 1)):
        return None
    return ranked


def restrict_by_degree_word(G: GraphPrefix, u: UPWord) -> GraphPrefix:
    """Keep the part of G co-accessible to the u-guided greatest-sequence walk.

    The walk starts at the root and, on letter l, moves to the l-th
    out-neighbor in reachability order.  A finite word must be consumed
    entirely inside the interior; an infinite word walks until the prefix
    runs out.  Kept edges are those whose target reaches a walked vertex.
    """
    succs = G.succs()
    marked = set()
    cur = G.root
    i = 0
    while True:
        marked.add(cur)
        letter = u.letter_at(i)
        if letter is None or letter == 0:
            break
        if cur not in G.interior:
            if u.is_finite:
                raise WalkLeftInterior(f"walk reached boundary vertex {cur!r}")
            break
        ranked = _ranked_out_neighbors(succs, cur)
        if ranked is None or len(ranked) < letter:
            if u.is_finite:
                raise WalkLeftInterior(f"step {i}: neighbor order unresolved at {cur!r}")
            break
        cur = ranked[letter - 1]
        i += 1
    co_accessible = set(marked)
    preds = G.preds()
    queue = deque(marked)
    while queue:
        v = queue.popleft()
        for r in preds.get(v, ()):
            if r not in co_accessible:
                co_accessible.add(r)
                queue.append(r)
    edges = frozenset((p, q) for (p, q) in G.edges if q in co_accessible)
    return GraphPrefix(G.vertices, edges, G.root, G.interior, G.meta, G.bound, G.depth)


def shared_interior(G: GraphPrefix, H: GraphPrefix) -> set:
    if G.meta is None or H.meta is None:
        raise MetaMissing("both graphs need ordinal labels")
    return {G.meta[v] for v in G.interior} & {H.meta[v] for v in H.interior}


def graphs_equal_on_shared(G: GraphPrefix, H: GraphPrefix) -> bool:
    """Edge sets agree on the intersection of the interiors, matched through
    the ordinal labels."""
    shared = shared_interior(G, H)
    eg = {
        (G.meta[p], G.meta[q])
        for (p, q) in G.edges
        if G.meta[p] in shared and G.meta[q] in shared
    }
    eh = {
        (H.meta[p], H.meta[q])
        for (p, q) in H.edges
        if H.meta[p] in shared and H.meta[q] in shared
    }
    return eg == eh


def _vertex_label(G: GraphPrefix, v) -> str:
    if G.meta is not None and isinstance(G.meta.get(v), Ordinal):
        return format_ordinal(G.meta[v])
    return str(v)


def to_dot(G: GraphPrefix, annotate: bool = False) -> str:
    order = {v: i for i, v in enumerate(G.vertices)}
    lines = ["digraph covering {"]
    for v in G.vertices:
        lines.append(f'  "{_vertex_label(G, v)}";')
    for p, q in sorted(G.edges, key=lambda e: (order[e[0]], order[e[1]])):
        attr = ""
        if annotate and G.meta is not None:
            witness = covers(G.meta[p], G.meta[q])
            kind = ""
            if isinstance(witness, SuccessorStep):
                kind = "s"
            elif isinstance(witness, FundIndex):
                kind = "f"
            attr = f' [label="{kind}"]'
        lines.append(f'  "{_vertex_label(G, p)}" -> "{_vertex_label(G, q)}"{attr};')
    lines.append("}")
    return "\n".join(lines)


def to_json(G: GraphPrefix) -> str:
    order = {v: i for i, v in enumerate(G.vertices)}
    payload = {
        "bound": format_ordinal(G.bound) if G.bound is not None else None,
        "depth": G.depth,
        "vertices": [_vertex_label(G, v) for v in G.vertices],
        "edges": [
            [_vertex_label(G, p), _vertex_label(G, q)]
            for p, q in sorted(G.edges, key=lambda e: (order[e[0]], order[e[1]]))
        ],
        "interior": [_vertex_label(G, v) for v in G.vertices if v in G.interior],
    }
    return json.dumps(payload, separators=(",", ":"))
