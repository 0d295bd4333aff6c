"""Naive monadic second-order model checking on finite graphs, plus the
formula macros used to pin down covering graphs by their degree words.

First-order variables range over vertices, second-order variables over
vertex sets (enumerated exhaustively, hence the hard vertex cap).  Formulas
are plain immutable trees; evaluation threads an environment.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .errors import FreeVariable, InfiniteOnlyFormula, ParseError, TooLarge
from .words import UPWord

SO_VERTEX_CAP = 14
MACRO_DEGREE_CAP = 5


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class In:
    element: str
    container: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Edge:
    source: str
    target: str


@dataclass(frozen=True)
class Not:
    body: "MsoFormula"


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Implies:
    left: "MsoFormula"
    right: "MsoFormula"


@dataclass(frozen=True)
class ExistsFO:
    var: str
    body: "MsoFormula"


@dataclass(frozen=True)
class ForallFO:
    var: str
    body: "MsoFormula"


@dataclass(frozen=True)
class ExistsSO:
    var: str
    body: "MsoFormula"


@dataclass(frozen=True)
class ForallSO:
    var: str
    body: "MsoFormula"


MsoFormula = Union[
    Bool, In, Eq, Edge, Not, And, Or, Implies, ExistsFO, ForallFO, ExistsSO, ForallSO
]


def conj(*items: MsoFormula) -> MsoFormula:
    items = tuple(i for i in items if not (isinstance(i, Bool) and i.value))
    if not items:
        return Bool(True)
    return items[0] if len(items) == 1 else And(items)


def disj(*items: MsoFormula) -> MsoFormula:
    if not items:
        return Bool(False)
    return items[0] if len(items) == 1 else Or(items)


class FiniteGraph(NamedTuple):
    vertices: tuple
    edges: frozenset


def as_graph(g) -> FiniteGraph:
    if isinstance(g, FiniteGraph):
        return g
    return FiniteGraph(tuple(g.vertices), frozenset(g.edges))


_fresh_counter = itertools.count()


def fresh(prefix: str = "v") -> str:
    return f"{prefix}_{next(_fresh_counter)}"


def _has_so(f: MsoFormula) -> bool:
    if isinstance(f, (ExistsSO, ForallSO)):
        return True
    if isinstance(f, Not):
        return _has_so(f.body)
    if isinstance(f, (And, Or)):
        return any(_has_so(i) for i in f.items)
    if isinstance(f, Implies):
        return _has_so(f.left) or _has_so(f.right)
    if isinstance(f, (ExistsFO, ForallFO)):
        return _has_so(f.body)
    return False


def eval_formula(g, f: MsoFormula, env: Optional[dict] = None) -> bool:
    """Satisfaction on a finite graph; env binds any free variables."""
    graph = as_graph(g)
    if _has_so(f) and len(graph.vertices) > SO_VERTEX_CAP:
        raise TooLarge(
            f"{len(graph.vertices)} vertices exceeds the set-quantifier cap {SO_VERTEX_CAP}"
        )
    return _eval(graph, f, dict(env or {}))


def _lookup(env: dict, var: str):
    if var not in env:
        raise FreeVariable(f"unbound variable {var!r}")
    return env[var]


def _eval(g: FiniteGraph, f: MsoFormula, env: dict) -> bool:
    if isinstance(f, Bool):
        return f.value
    if isinstance(f, In):
        return _lookup(env, f.element) in _lookup(env, f.container)
    if isinstance(f, Eq):
        return _lookup(env, f.left) == _lookup(env, f.right)
    if isinstance(f, Edge):
        return (_lookup(env, f.source), _lookup(env, f.target)) in g.edges
    if isinstance(f, Not):
        return not _eval(g, f.body, env)
    if isinstance(f, And):
        return all(_eval(g, item, env) for item in f.items)
    if isinstance(f, Or):
        return any(_eval(g, item, env) for item in f.items)
    if isinstance(f, Implies):
        return (not _eval(g, f.left, env)) or _eval(g, f.right, env)
    if isinstance(f, ExistsFO):
        return any(_eval(g, f.body, {**env, f.var: v}) for v in g.vertices)
    if isinstance(f, ForallFO):
        return all(_eval(g, f.body, {**env, f.var: v}) for v in g.vertices)
    if isinstance(f, ExistsSO):
        return any(
            _eval(g, f.body, {**env, f.var: frozenset(sub)})
            for sub in _subsets(g.vertices)
        )
    if isinstance(f, ForallSO):
        return all(
            _eval(g, f.body, {**env, f.var: frozenset(sub)})
            for sub in _subsets(g.vertices)
        )
    raise TypeError(f"unknown formula node {f!r}")


def _subsets(vertices: tuple) -> Iterable[tuple]:
    for size in range(len(vertices) + 1):
        yield from itertools.combinations(vertices, size)


# independent reference evaluator (substitution-based), used as a test oracle


@dataclass(frozen=True)
class _ConstV:
    vertex: object


@dataclass(frozen=True)
class _ConstS:
    members: frozenset


def _subst(f: MsoFormula, var: str, value) -> MsoFormula:
    if isinstance(f, Bool):
        return f
    if isinstance(f, In):
        return In(
            value if f.element == var else f.element,
            value if f.container == var else f.container,
        )
    if isinstance(f, Eq):
        return Eq(
            value if f.left == var else f.left,
            value if f.right == var else f.right,
        )
    if isinstance(f, Edge):
        return Edge(
            value if f.source == var else f.source,
            value if f.target == var else f.target,
        )
    if isinstance(f, Not):
        return Not(_subst(f.body, var, value))
    if isinstance(f, And):
        return And(tuple(_subst(i, var, value) for i in f.items))
    if isinstance(f, Or):
        return Or(tuple(_subst(i, var, value) for i in f.items))
    if isinstance(f, Implies):
        return Implies(_subst(f.left, var, value), _subst(f.right, var, value))
    if isinstance(f, (ExistsFO, ForallFO, ExistsSO, ForallSO)):
        if f.var == var:
            return f  # shadowed
        return type(f)(f.var, _subst(f.body, var, value))
    raise TypeError(f"unknown formula node {f!r}")


def eval_reference(g, f: MsoFormula) -> bool:
    """Second, independently structured evaluator: substitutes constants into
    the tree instead of threading an environment."""
    graph = as_graph(g)

    def go(node: MsoFormula) -> bool:
        if isinstance(node, Bool):
            return node.value
        if isinstance(node, In):
            if not isinstance(node.element, _ConstV) or not isinstance(
                node.container, _ConstS
            ):
                raise FreeVariable(f"unbound variable in {node!r}")
            return node.element.vertex in node.container.members
        if isinstance(node, Eq):
            return node.left == node.right
        if isinstance(node, Edge):
            if not isinstance(node.source, _ConstV) or not isinstance(
                node.target, _ConstV
            ):
                raise FreeVariable(f"unbound variable in {node!r}")
            return (node.source.vertex, node.target.vertex) in graph.edges
        if isinstance(node, Not):
            return not go(node.body)
        if isinstance(node, And):
            results = [go(i) for i in node.items]
            return all(results)
        if isinstance(node, Or):
            results = [go(i) for i in node.items]
            return any(results)
        if isinstance(node, Implies):
            return go(node.right) if go(node.left) else True
        if isinstance(node, ExistsFO):
            return any(
                go(_subst(node.body, node.var, _ConstV(v))) for v in graph.vertices
            )
        if isinstance(node, ForallFO):
            return all(
                go(_subst(node.body, node.var, _ConstV(v))) for v in graph.vertices
            )
        if isinstance(node, ExistsSO):
            return any(
                go(_subst(node.body, node.var, _ConstS(frozenset(sub))))
                for sub in _subsets(graph.vertices)
            )
        if isinstance(node, ForallSO):
            return all(
                go(_subst(node.body, node.var, _ConstS(frozenset(sub))))
                for sub in _subsets(graph.vertices)
            )
        raise TypeError(f"unknown formula node {node!r}")

    return go(f)


# macros


def closed_formula(X: str) -> MsoFormula:
    """X is closed under following edges."""
    a, b = fresh("a"), fresh("b")
    return ForallFO(
        a, ForallFO(b, Implies(conj(In(a, X), Edge(a, b)), In(b, X)))
    )


def reach_star(src: str, dst: str) -> MsoFormula:
    """dst lies in every edge-closed set containing src."""
    X = fresh("X")
    return ForallSO(X, Implies(conj(In(src, X), closed_formula(X)), In(dst, X)))


def tau_formula(p: str, q: str) -> MsoFormula:
    """q is the greatest covering successor of p: an out-neighbor that every
    out-neighbor eventually reaches."""
    r = fresh("r")
    return conj(Edge(p, q), ForallFO(r, Implies(Edge(p, r), reach_star(r, q))))


def min_degree_formula(k: int, p: str) -> MsoFormula:
    """Out-degree of p is at least k."""
    if k > MACRO_DEGREE_CAP:
        raise ValueError(f"degree macro capped at {MACRO_DEGREE_CAP}")
    if k == 0:
        return Bool(True)
    qs = [fresh("q") for _ in range(k)]
    parts = [Edge(p, q) for q in qs]
    parts += [Not(Eq(qs[i], qs[j])) for i in range(k) for j in range(i + 1, k)]
    body = conj(*parts)
    for q in reversed(qs):
        body = ExistsFO(q, body)
    return body


def exact_degree_formula(k: int, p: str) -> MsoFormula:
    return conj(min_degree_formula(k, p), Not(min_degree_formula(k + 1, p)))


def root_formula(p: str) -> MsoFormula:
    """p reaches every vertex of the graph."""
    Y, q = fresh("Y"), fresh("q")
    return ForallSO(
        Y,
        Implies(conj(In(p, Y), closed_formula(Y)), ForallFO(q, In(q, Y))),
    )


def _closed_within(X: str, Y: str, reverse: bool) -> MsoFormula:
    a, b = fresh("a"), fresh("b")
    edge = Edge(b, a) if reverse else Edge(a, b)
    return ForallFO(
        a,
        ForallFO(
            b,
            Implies(conj(In(a, Y), In(a, X), edge, In(b, X)), In(b, Y)),
        ),
    )


def rooted_in_formula(X: str, p: str) -> MsoFormula:
    """p reaches every vertex of X along paths inside X."""
    Y, q = fresh("Y"), fresh("q")
    return ForallSO(
        Y,
        Implies(
            conj(In(p, Y), _closed_within(X, Y, reverse=False)),
            ForallFO(q, Implies(In(q, X), In(q, Y))),
        ),
    )


def end_in_formula(X: str, p: str) -> MsoFormula:
    """p is reached from every vertex of X along paths inside X."""
    Y, q = fresh("Y"), fresh("q")
    return ForallSO(
        Y,
        Implies(
            conj(In(p, Y), _closed_within(X, Y, reverse=True)),
            ForallFO(q, Implies(In(q, X), In(q, Y))),
        ),
    )


def size_formula(k: int, X: str) -> MsoFormula:
    """X has exactly k elements."""
    if k > MACRO_DEGREE_CAP + 1:
        raise ValueError(f"size macro capped at {MACRO_DEGREE_CAP + 1}")
    q = fresh("q")
    if k == 0:
        return ForallFO(q, Not(In(q, X)))
    qs = [fresh("q") for _ in range(k)]
    parts = [In(x, X) for x in qs]
    parts += [Not(Eq(qs[i], qs[j])) for i in range(k) for j in range(i + 1, k)]
    parts.append(ForallFO(q, Implies(In(q, X), disj(*[Eq(q, x) for x in qs]))))
    body = conj(*parts)
    for x in reversed(qs):
        body = ExistsFO(x, body)
    return body


def _exists_unique(var: str, body: MsoFormula) -> MsoFormula:
    other = fresh("u")
    return ExistsFO(
        var,
        conj(body, ForallFO(other, Implies(_subst(body, var, other), Eq(other, var)))),
    )


def inline_formula(X: str) -> MsoFormula:
    """X induces a path: a root inside X, in-degree 1 within X off the root,
    out-degree at most 1 within X."""
    r, p, q, q2 = fresh("r"), fresh("p"), fresh("q"), fresh("q2")
    in_deg_one = _exists_unique(q, conj(In(q, X), Edge(q, p)))
    out_at_most_one = ForallFO(
        q,
        ForallFO(
            q2,
            Implies(
                conj(In(q, X), Edge(p, q), In(q2, X), Edge(p, q2)),
                Eq(q, q2),
            ),
        ),
    )
    per_vertex = ForallFO(
        p,
        Implies(In(p, X), conj(disj(Eq(p, r), in_deg_one), out_at_most_one)),
    )
    return ExistsFO(r, conj(In(r, X), rooted_in_formula(X, r), per_vertex))


def subset_formula(X: str, Y: str) -> MsoFormula:
    z = fresh("z")
    return ForallFO(z, Implies(In(z, X), In(z, Y)))


# formula text syntax: E x. / A x. / E X. quantifiers, x in X, x = y,
# x -> y, ~, &, |, =>, parentheses; uppercase initial = set variable


def parse_formula(text: str) -> MsoFormula:
    pos = [0]

    def skip_ws():
        while pos[0] < len(text) and text[pos[0]].isspace():
            pos[0] += 1

    def peek(n: int = 1) -> str:
        skip_ws()
        return text[pos[0] : pos[0] + n]

    def name() -> str:
        skip_ws()
        start = pos[0]
        while pos[0] < len(text) and (text[pos[0]].isalnum() or text[pos[0]] == "_"):
            pos[0] += 1
        if pos[0] == start:
            raise ParseError("expected a variable name", start)
        return text[start : pos[0]]

    def parse_implies() -> MsoFormula:
        left = parse_or()
        if peek(2) == "=>":
            pos[0] += 2
            return Implies(left, parse_implies())
        return left

    def parse_or() -> MsoFormula:
        items = [parse_and()]
        while peek() == "|":
            pos[0] += 1
            items.append(parse_and())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def parse_and() -> MsoFormula:
        items = [parse_unary()]
        while peek() == "&":
            pos[0] += 1
            items.append(parse_unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def parse_unary() -> MsoFormula:
        ch = peek()
        if ch == "~":
            pos[0] += 1
            return Not(parse_unary())
        if ch in ("E", "A") and peek(2)[1:] in (" ", ""):
            quant = text[pos[0]]
            pos[0] += 1
            var = name()
            skip_ws()
            if peek() != ".":
                raise ParseError("expected '.' after quantifier", pos[0])
            pos[0] += 1
            body = parse_implies()
            second_order = var[0].isupper()
            if quant == "E":
                return ExistsSO(var, body) if second_order else ExistsFO(var, body)
            return ForallSO(var, body) if second_order else ForallFO(var, body)
        if ch == "(":
            pos[0] += 1
            inner = parse_implies()
            if peek() != ")":
                raise ParseError("expected ')'", pos[0])
            pos[0] += 1
            return inner
        return parse_atom()

    def parse_atom() -> MsoFormula:
        left = name()
        skip_ws()
        if peek(2) == "->":
            pos[0] += 2
            return Edge(left, name())
        if peek(2) == "in" and not (text[pos[0] + 2 : pos[0] + 3].isalnum()):
            pos[0] += 2
            return In(left, name())
        if peek() == "=":
            pos[0] += 1
            return Eq(left, name())
        raise ParseError("expected 'in', '=' or '->'", pos[0])

    result = parse_implies()
    skip_ws()
    if pos[0] != len(text):
        raise ParseError("trailing input", pos[0])
    return result


@dataclass(frozen=True)
class WordFormula:
    """A degree-word identifier: satisfied exactly by the covering graph whose
    degree word it encodes.  Periodic words constrain an infinite path, so
    their formulas refuse finite evaluation."""

    formula: MsoFormula
    infinite_only: bool


def word_formula(u: UPWord) -> WordFormula:
    if u.is_finite:
        return WordFormula(_finite_word_formula(u.prefix), False)
    return WordFormula(_periodic_word_formula(u.prefix, u.period), True)


def eval_word_formula(g, wf: WordFormula) -> bool:
    if wf.infinite_only:
        raise InfiniteOnlyFormula(
            "periodic degree-word formulas constrain an infinite path"
        )
    return eval_formula(g, wf.formula)


def _finite_word_formula(letters: tuple[int, ...]) -> MsoFormula:
    if not letters:
        x = fresh("x")
        return Not(ExistsFO(x, Eq(x, x)))

    def build(i: int, prev: Optional[str]) -> MsoFormula:
        v = fresh("p")
        guard = root_formula(v) if prev is None else tau_formula(prev, v)
        here = exact_degree_formula(letters[i], v)
        rest = build(i + 1, v) if i + 1 < len(letters) else Bool(True)
        return ExistsFO(v, conj(guard, here, rest))

    return build(0, None)


def _periodic_word_formula(prefix: tuple[int, ...], period: tuple[int, ...]) -> MsoFormula:
    """Transcription of the ultimately-periodic identifier: a static chain, an
    infinite path V carrying the repeating degrees, and a window condition
    tying each vertex of V to the degree one period later."""
    p_vars = [fresh("p") for _ in prefix]
    V = fresh("V")
    q_vars = [fresh("q") for _ in period]
    maxdeg = max((*prefix, *period), default=1)

    parts: list[MsoFormula] = []
    parts.extend(In(q, V) for q in q_vars)
    chain = p_vars + [q_vars[0]]
    parts.append(root_formula(chain[0]))
    for a, b in zip(chain, chain[1:]):
        parts.append(tau_formula(a, b))
    for var, letter in zip(p_vars, prefix):
        parts.append(min_degree_formula(letter, var))
    parts.append(rooted_in_formula(V, q_vars[0]))
    for a, b in zip(q_vars, q_vars[1:]):
        parts.append(tau_formula(a, b))
    for var, letter in zip(q_vars, period):
        parts.append(min_degree_formula(letter, var))
    parts.append(inline_formula(V))

    q, X, q2 = fresh("q"), fresh("X"), fresh("q2")
    window = conj(
        subset_formula(X, V),
        In(q2, X),
        inline_formula(X),
        size_formula(len(period) + 1, X),
        rooted_in_formula(X, q),
        end_in_formula(X, q2),
        *[
            Implies(min_degree_formula(k, q), min_degree_formula(k, q2))
            for k in range(1, maxdeg + 1)
        ],
    )
    parts.append(
        ForallFO(
            q,
            Implies(In(q, V), ExistsSO(X, ExistsFO(q2, window))),
        )
    )

    body = conj(*parts)
    for var in reversed(q_vars):
        body = ExistsFO(var, body)
    body = ExistsSO(V, body)
    for var in reversed(p_vars):
        body = ExistsFO(var, body)
    return body
