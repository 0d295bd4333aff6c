import itertools
import random

import pytest

from ordcover.errors import FreeVariable, InfiniteOnlyFormula, TooLarge
from ordcover.ordinals import Ordinal
from ordcover.cover import up_set
from ordcover.graphs import build_prefix, reach_greatest
from ordcover.words import UPWord, degree_word
from ordcover.mso import (
    And,
    Bool,
    Edge,
    Eq,
    ExistsFO,
    ExistsSO,
    FiniteGraph,
    ForallFO,
    ForallSO,
    Implies,
    In,
    Not,
    Or,
    eval_formula,
    eval_reference,
    eval_word_formula,
    exact_degree_formula,
    inline_formula,
    min_degree_formula,
    root_formula,
    size_formula,
    tau_formula,
    word_formula,
)
from ordcover.parsing import parse_ordinal


def test_eval_basics():
    g = FiniteGraph((0, 1), frozenset({(0, 1)}))
    assert eval_formula(g, ExistsFO("x", Eq("x", "x")))
    empty = FiniteGraph((), frozenset())
    assert not eval_formula(empty, ExistsFO("x", Eq("x", "x")))
    assert eval_formula(g, Edge("x", "y"), {"x": 0, "y": 1})
    with pytest.raises(FreeVariable):
        eval_formula(g, Eq("x", "y"), {"x": 0})


def test_so_cap():
    g = FiniteGraph(tuple(range(15)), frozenset())
    with pytest.raises(TooLarge):
        eval_formula(g, ExistsSO("X", ExistsFO("x", In("x", "X"))))


def test_well_order_axioms_on_closed_chain():
    verts = tuple(range(4))
    lt = frozenset((i, j) for i in verts for j in verts if i < j)
    g = FiniteGraph(verts, lt)
    p, q, r, X, x, y = "p", "q", "r", "X", "x", "y"
    irreflexive = ForallFO(p, ForallFO(q, Not(And((Edge(p, q), Edge(q, p))))))
    transitive = ForallFO(
        p, ForallFO(q, ForallFO(r, Implies(And((Edge(p, q), Edge(q, r))), Edge(p, r))))
    )
    total = ForallFO(p, ForallFO(q, Or((Edge(p, q), Edge(q, p), Eq(p, q)))))
    well = ForallSO(
        X,
        Implies(
            ExistsFO(x, In(x, X)),
            ExistsFO(
                x,
                And(
                    (
                        In(x, X),
                        ForallFO(y, Implies(In(y, X), Or((Edge(x, y), Eq(x, y))))),
                    )
                ),
            ),
        ),
    )
    for f in (irreflexive, transitive, total, well):
        assert eval_formula(g, f)
    # drop an edge: totality fails
    broken = FiniteGraph(verts, frozenset(set(lt) - {(0, 3)}))
    assert not eval_formula(broken, total)


def test_tau_agrees_with_reach_greatest():
    g = build_prefix(parse_ordinal("w^w"), 4)
    f = tau_formula("p", "q")
    for p in g.interior:
        expected = reach_greatest(g, p)
        for q in g.vertices:
            assert eval_formula(g, f, {"p": p, "q": q}) == (q == expected)


def test_degree_formulas_match_up_set():
    bound = parse_ordinal("w^w")
    g = build_prefix(bound, 4)
    for p in g.interior:
        degree = len(up_set(p, bound))
        for k in range(4):
            assert eval_formula(g, min_degree_formula(k, "p"), {"p": p}) == (degree >= k)
        assert eval_formula(g, exact_degree_formula(degree, "p"), {"p": p})
        assert not eval_formula(g, exact_degree_formula(degree + 1, "p"), {"p": p})


def test_root_formula():
    g = build_prefix(Ordinal.from_int(4), 5)
    zero = Ordinal.from_int(0)
    for v in g.vertices:
        assert eval_formula(g, root_formula("p"), {"p": v}) == (v == zero)


def test_size_formula():
    g = FiniteGraph(tuple(range(4)), frozenset())
    for k in range(4):
        for size in range(4):
            subsets = itertools.combinations(range(4), size)
            for sub in subsets:
                got = eval_formula(g, size_formula(k, "X"), {"X": frozenset(sub)})
                assert got == (size == k)


def _is_path(vertices, edges, subset):
    if not subset:
        return False
    inside = [(p, q) for (p, q) in edges if p in subset and q in subset]
    indeg = {v: 0 for v in subset}
    outdeg = {v: 0 for v in subset}
    for p, q in inside:
        outdeg[p] += 1
        indeg[q] += 1
    roots = [v for v in subset if indeg[v] == 0]
    if len(roots) != 1 or any(d > 1 for d in outdeg.values()):
        return False
    if any(d > 1 for d in indeg.values()):
        return False
    # connected: walk from the root
    seen = {roots[0]}
    cur = roots[0]
    while True:
        nxt = [q for (p, q) in inside if p == cur]
        if not nxt:
            break
        cur = nxt[0]
        if cur in seen:
            return False
        seen.add(cur)
    return seen == set(subset)


def test_inline_formula_exactly_paths():
    graphs = [
        build_prefix(Ordinal.from_int(4), 5),
        build_prefix(parse_ordinal("w^2"), 3),
        FiniteGraph((0, 1, 2, 3), frozenset({(0, 1), (0, 2), (2, 3), (1, 3)})),
    ]
    for g in graphs:
        graph = FiniteGraph(tuple(g.vertices), frozenset(g.edges))
        if len(graph.vertices) > 8:
            continue
        for size in range(1, len(graph.vertices) + 1):
            for sub in itertools.combinations(graph.vertices, size):
                got = eval_formula(graph, inline_formula("X"), {"X": frozenset(sub)})
                assert got == _is_path(graph.vertices, graph.edges, sub)


def _random_formula(rng, fo_vars, so_vars, depth):
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["in", "eq", "edge", "bool"])
        if kind == "in" and so_vars and fo_vars:
            return In(rng.choice(fo_vars), rng.choice(so_vars))
        if kind == "eq" and fo_vars:
            return Eq(rng.choice(fo_vars), rng.choice(fo_vars))
        if kind == "edge" and fo_vars:
            return Edge(rng.choice(fo_vars), rng.choice(fo_vars))
        return Bool(rng.random() < 0.5)
    kind = rng.choice(["not", "and", "or", "implies", "exists", "forall", "existsS", "forallS"])
    if kind == "not":
        return Not(_random_formula(rng, fo_vars, so_vars, depth - 1))
    if kind in ("and", "or"):
        items = tuple(
            _random_formula(rng, fo_vars, so_vars, depth - 1) for _ in range(2)
        )
        return And(items) if kind == "and" else Or(items)
    if kind == "implies":
        return Implies(
            _random_formula(rng, fo_vars, so_vars, depth - 1),
            _random_formula(rng, fo_vars, so_vars, depth - 1),
        )
    if kind in ("exists", "forall"):
        v = f"x{rng.randrange(3)}"
        body = _random_formula(rng, fo_vars + [v], so_vars, depth - 1)
        return ExistsFO(v, body) if kind == "exists" else ForallFO(v, body)
    v = f"X{rng.randrange(2)}"
    body = _random_formula(rng, fo_vars, so_vars + [v], depth - 1)
    return ExistsSO(v, body) if kind == "existsS" else ForallSO(v, body)


def test_two_evaluators_agree_on_random_formulas():
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        n = rng.randint(0, 4)
        verts = tuple(range(n))
        edges = frozenset(
            (i, j) for i in verts for j in verts if i != j and rng.random() < 0.4
        )
        g = FiniteGraph(verts, edges)
        f = _random_formula(rng, [], [], 3)
        try:
            a = eval_formula(g, f)
        except FreeVariable:
            continue
        b = eval_reference(g, f)
        assert a == b
        checked += 1


def test_word_formula_matrix():
    graphs = {m: build_prefix(Ordinal.from_int(m), m + 1) for m in range(1, 7)}
    words = {m: degree_word(Ordinal.from_int(m)) for m in range(1, 7)}
    for m in range(1, 7):
        for mp in range(1, 7):
            wf = word_formula(words[mp])
            assert eval_word_formula(graphs[m], wf) == (m == mp)


def test_word_formula_empty_word():
    wf = word_formula(UPWord(()))
    assert eval_word_formula(FiniteGraph((), frozenset()), wf)
    assert not eval_word_formula(FiniteGraph((0,), frozenset()), wf)


def test_word_formula_periodic_is_syntax_only():
    wf = word_formula(degree_word(parse_ordinal("w^w")))
    assert wf.infinite_only
    assert wf.formula is not None
    with pytest.raises(InfiniteOnlyFormula):
        eval_word_formula(build_prefix(Ordinal.from_int(3), 4), wf)


def test_parse_formula_syntax():
    from ordcover.errors import ParseError
    from ordcover.mso import parse_formula

    g = FiniteGraph((0, 1, 2), frozenset({(0, 1), (1, 2)}))
    assert eval_formula(g, parse_formula("E x. x = x"))
    assert eval_formula(g, parse_formula("E x. A y. ~(y -> x)"))
    assert eval_formula(g, parse_formula("E X. A x. x in X"))
    assert not eval_formula(g, parse_formula("A x. E y. y -> x"))
    assert eval_formula(g, parse_formula("A x. A y. x -> y => ~(y -> x)"))
    with pytest.raises(ParseError):
        parse_formula("E x. x ->")
    with pytest.raises(ParseError):
        parse_formula("x = y)")
