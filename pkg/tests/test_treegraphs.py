import pytest

from ordcover.errors import BaseNotRooted, CapExceeded
from ordcover.ordinals import OMEGA, ONE, ZERO, Ordinal, omega_pow
from ordcover.graphs import (
    GraphPrefix,
    build_prefix,
    graphs_equal_on_shared,
    shared_interior,
)
from ordcover.treegraphs import (
    Bwd,
    Fwd,
    Maximal,
    PAtom,
    PConcat,
    PStar,
    SStep,
    build_treegraph,
    eval_path,
    power_interpretation,
    treegraph_dot,
)
from ordcover.parsing import parse_ordinal


def _path_graph(n: int) -> GraphPrefix:
    return build_prefix(Ordinal.from_int(n), n + 1)


def test_build_treegraph_small_path():
    g = _path_graph(2)  # 0 -> 1
    t = build_treegraph(g, 2)
    names = {tuple(str(c) for c in v) for v in t.vertices}
    assert {("0",), ("1",), ("0", "0"), ("0", "1"), ("1", "1"), ("1", "0")} == names
    zero, one = Ordinal.from_int(0), Ordinal.from_int(1)
    assert ((zero,), (zero, zero)) in t.hash_edges
    assert ((one,), (one, one)) in t.hash_edges
    assert ((zero,), (one,)) in t.rel_edges
    assert ((zero, zero), (zero, one)) in t.rel_edges


def test_hash_out_degree():
    t = build_treegraph(_path_graph(3), 3)
    for v in t.vertices:
        fan = [q for (p, q) in t.hash_edges if p == v]
        if len(v) < t.depth:
            assert len(fan) == 1
        else:
            assert not fan


def test_single_vertex_base_gives_hash_chain():
    t = build_treegraph(_path_graph(1), 4)
    assert len(t.vertices) == 4
    assert len(t.hash_edges) == 3
    assert not t.rel_edges


def test_tree_cap():
    with pytest.raises(CapExceeded):
        build_treegraph(build_prefix(parse_ordinal("w^w"), 4), 6, cap=1000)


def test_eval_path_maximal():
    g = _path_graph(3)  # 0 -> 1 -> 2
    t = build_treegraph(g, 2)
    ends = eval_path(t, PAtom(Maximal(Fwd("rel"))), (ZERO,))
    assert ends == {(Ordinal.from_int(2),)}


def test_eval_path_star_matches_plain_reachability():
    g = build_prefix(parse_ordinal("w^2"), 4)
    t = build_treegraph(g, 2)
    star = PStar(PAtom(Fwd("rel")))
    table = t.table("rel", True)

    def bfs(start):
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for q in table.get(v, ()):
                if q not in seen:
                    seen.add(q)
                    frontier.append(q)
        return seen

    for v in list(t.vertices)[:40]:
        assert eval_path(t, star, v) == bfs(v)


def test_s_step_prefers_the_small_successor():
    g = build_prefix(parse_ordinal("w^w"), 4)
    t = build_treegraph(g, 2)
    got = eval_path(t, PAtom(SStep()), (ONE,))
    assert got == {(Ordinal.from_int(2),)}


def test_backward_then_forward_clause_shape():
    g = _path_graph(2)
    t = build_treegraph(g, 3)
    zero, one = Ordinal.from_int(0), Ordinal.from_int(1)
    expr = PConcat((PAtom(Bwd("hash")), PAtom(Fwd("rel")), PAtom(Fwd("hash"))))
    assert eval_path(t, expr, (zero, zero)) == {(one, one)}


def test_power_interpretation_requires_rooted_base():
    g = build_prefix(OMEGA, 3)
    bare = GraphPrefix(g.vertices, g.edges, None, g.interior, g.meta)
    t = build_treegraph(g, 2)
    object.__setattr__(t, "base", bare)
    with pytest.raises(BaseNotRooted):
        power_interpretation(t)


def test_marked_vertices_decode_injectively():
    base = build_prefix(OMEGA, 4)
    interp = power_interpretation(build_treegraph(base, 4))
    values = [interp.meta[v] for v in interp.vertices]
    assert len(set(values)) == len(values)
    assert min(values) == ONE
    for v in interp.vertices:
        assert v[-1] == v[-2]
        exps = [base.meta[c] for c in v[:-1]]
        assert all(a >= b for a, b in zip(exps, exps[1:]))


def test_successor_clause_appends_zero():
    base = build_prefix(OMEGA, 4)
    interp = power_interpretation(build_treegraph(base, 4))
    by_value = {interp.meta[v]: v for v in interp.vertices}
    w = by_value[OMEGA]
    w1 = by_value[parse_ordinal("w + 1")]
    assert (w, w1) in interp.edges
    assert w1[:-2] == w[:-1] and str(w1[-2]) == "0"


def test_interpretation_matches_direct_prefix_for_omega():
    base = build_prefix(OMEGA, 4)
    interp = power_interpretation(build_treegraph(base, 4))
    direct = build_prefix(parse_ordinal("w^w"), 14)
    shared = shared_interior(interp, direct)
    assert len(shared) >= 15
    assert graphs_equal_on_shared(interp, direct)


def test_interpretation_matches_direct_prefix_for_omega_squared():
    base = build_prefix(parse_ordinal("w^2"), 5)
    interp = power_interpretation(build_treegraph(base, 3))
    direct = build_prefix(omega_pow(parse_ordinal("w^2")), 14)
    assert len(shared_interior(interp, direct)) >= 15
    assert graphs_equal_on_shared(interp, direct)


def test_treegraph_dot_styles():
    t = build_treegraph(_path_graph(2), 2)
    dot = treegraph_dot(t)
    assert "style=dotted" in dot
    assert '"(0)" -> "(1)";' in dot
