"""Nested stacks over a unary alphabet and regular expressions over their
operations.

A level-1 stack is a natural number; a level-n stack is a non-empty sequence
of level-(n-1) stacks.  The dom/inc/dec/tail expression family built here
makes the stacks of level n an order-isomorphic presentation of the height-n
tower of w: decode_raw maps a stack to the ordinal sum of w-powers of its
(recursively decoded) entries.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Union

from .errors import OutOfRange, ParseError
from .ordinals import Ordinal, ZERO, add, compare, omega_pow, tower
from . import ordinals

DEFAULT_BUDGET = 100_000
DEFAULT_MAX_LEVEL = 4


@dataclass(frozen=True)
class Stack:
    level: int
    content: Union[int, tuple["Stack", ...]]

    def __post_init__(self):
        if self.level == 1:
            if not isinstance(self.content, int) or self.content < 0:
                raise ValueError("level-1 stack holds a natural number")
        else:
            if not isinstance(self.content, tuple) or not self.content:
                raise ValueError("higher stacks hold a non-empty tuple")
            for child in self.content:
                if child.level != self.level - 1:
                    raise ValueError("children must sit one level down")

    def __repr__(self):
        return format_stack(self)


def empty_stack(level: int) -> Stack:
    if level == 1:
        return Stack(1, 0)
    return Stack(level, (empty_stack(level - 1),))


# operation atoms


@dataclass(frozen=True)
class Push1:
    pass


@dataclass(frozen=True)
class Pop1:
    pass


@dataclass(frozen=True)
class Copy:
    k: int


@dataclass(frozen=True)
class PopK:
    k: int


@dataclass(frozen=True)
class Id:
    pass


OpAtom = Union[Push1, Pop1, Copy, PopK, Id]


def _atom_level(op: OpAtom) -> int:
    if isinstance(op, (Push1, Pop1)):
        return 1
    if isinstance(op, (Copy, PopK)):
        return op.k
    return 0  # Id applies anywhere


def apply_atom(op: OpAtom, s: Stack) -> Optional[Stack]:
    """Apply an atom to the top-most sub-stack of its level; None if undefined."""
    if isinstance(op, Id):
        return s
    level = _atom_level(op)
    if s.level < level:
        return None
    if s.level > level:
        children = s.content
        new_top = apply_atom(op, children[-1])
        if new_top is None:
            return None
        return Stack(s.level, children[:-1] + (new_top,))
    if isinstance(op, Push1):
        return Stack(1, s.content + 1)
    if isinstance(op, Pop1):
        return Stack(1, s.content - 1) if s.content > 0 else None
    if isinstance(op, Copy):
        children = s.content
        return Stack(s.level, children + (children[-1],))
    if isinstance(op, PopK):
        children = s.content
        return Stack(s.level, children[:-1]) if len(children) >= 2 else None
    raise TypeError(f"unknown atom {op!r}")


# regular expressions over atoms


@dataclass(frozen=True)
class Atom:
    op: OpAtom


@dataclass(frozen=True)
class Union_:
    items: tuple


@dataclass(frozen=True)
class Concat:
    items: tuple


@dataclass(frozen=True)
class Star:
    item: "OpExpr"


@dataclass(frozen=True)
class Plus:
    item: "OpExpr"


OpExpr = Union[Atom, Union_, Concat, Star, Plus]


def union(*items: OpExpr) -> OpExpr:
    return Union_(tuple(items))


def concat(*items: OpExpr) -> OpExpr:
    return Concat(tuple(items))


class Exprs(NamedTuple):
    dom: OpExpr
    inc: OpExpr
    dec: OpExpr
    tail: OpExpr


def build_exprs(n: int, max_level: int = DEFAULT_MAX_LEVEL) -> Exprs:
    """dom/inc/dec/tail for the height-n tower of w on level-n stacks."""
    if not 1 <= n <= max_level:
        raise ValueError(f"level must be within [1, {max_level}]")
    dom = Star(Atom(Push1()))
    inc = Plus(Atom(Push1()))
    dec = Plus(Atom(Pop1()))
    tail = None
    for k in range(2, n + 1):
        tail = concat(Atom(Copy(k)), union(Atom(Id()), dec))
        dom = concat(dom, Star(tail))
        inc = concat(union(concat(Star(Atom(PopK(k))), inc), tail), Star(tail))
        dec = concat(Star(Atom(PopK(k))), union(Atom(PopK(k)), concat(dec, Star(tail))))
    if tail is None:
        tail = Atom(Id())
    return Exprs(dom, inc, dec, tail)


# Thompson construction over the atom alphabet


class _NFA(NamedTuple):
    start: int
    accept: int
    eps: dict  # state -> tuple of states
    moves: dict  # state -> tuple of (atom, state)


def compile_expr(e: OpExpr) -> _NFA:
    eps: dict = {}
    moves: dict = {}
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def link_eps(a: int, b: int):
        eps.setdefault(a, []).append(b)

    def build(node: OpExpr) -> tuple[int, int]:
        if isinstance(node, Atom):
            s, t = fresh(), fresh()
            if isinstance(node.op, Id):
                link_eps(s, t)
            else:
                moves.setdefault(s, []).append((node.op, t))
            return s, t
        if isinstance(node, Union_):
            s, t = fresh(), fresh()
            for item in node.items:
                a, b = build(item)
                link_eps(s, a)
                link_eps(b, t)
            return s, t
        if isinstance(node, Concat):
            first = None
            last = None
            for item in node.items:
                a, b = build(item)
                if first is None:
                    first = a
                else:
                    link_eps(last, a)
                last = b
            if first is None:
                s = fresh()
                return s, s
            return first, last
        if isinstance(node, Star):
            a, b = build(node.item)
            s, t = fresh(), fresh()
            link_eps(s, a)
            link_eps(s, t)
            link_eps(b, a)
            link_eps(b, t)
            return s, t
        if isinstance(node, Plus):
            a, b = build(node.item)
            s, t = fresh(), fresh()
            link_eps(s, a)
            link_eps(b, a)
            link_eps(b, t)
            return s, t
        raise TypeError(f"unknown expression node {node!r}")

    start, accept = build(e)
    eps_frozen = {k: tuple(v) for k, v in eps.items()}
    moves_frozen = {k: tuple(v) for k, v in moves.items()}
    return _NFA(start, accept, eps_frozen, moves_frozen)


def _eps_closure(nfa: _NFA, states: set[int]) -> frozenset[int]:
    seen = set(states)
    queue = deque(states)
    while queue:
        q = queue.popleft()
        for r in nfa.eps.get(q, ()):
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return frozenset(seen)


class Rel3(enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET = "budget-exhausted"


def _search(
    e: OpExpr,
    start_stack: Stack,
    budget: int,
    state_filter: Optional[Callable[[Stack], bool]],
    on_accept: Callable[[Stack], bool],
) -> bool:
    """Shared BFS over (nfa-state-set, stack) pairs.  Calls on_accept for each
    accepting stack (possibly repeatedly); stops early if it returns True.
    Returns True when the frontier exhausted within budget."""
    nfa = compile_expr(e)
    start = _eps_closure(nfa, {nfa.start})
    visited = {(start, start_stack)}
    queue = deque([(start, start_stack)])
    expansions = 0
    while queue:
        if expansions >= budget:
            return False
        expansions += 1
        states, stack = queue.popleft()
        if nfa.accept in states and on_accept(stack):
            return True
        by_atom: dict = {}
        for q in states:
            for atom, r in nfa.moves.get(q, ()):
                by_atom.setdefault(atom, set()).add(r)
        for atom, targets in by_atom.items():
            nxt = apply_atom(atom, stack)
            if nxt is None:
                continue
            if state_filter is not None and not state_filter(nxt):
                continue
            node = (_eps_closure(nfa, targets), nxt)
            if node not in visited:
                visited.add(node)
                queue.append(node)
    return True


def in_relation(
    s: Stack,
    t: Stack,
    e: OpExpr,
    budget: int = DEFAULT_BUDGET,
    state_filter: Optional[Callable[[Stack], bool]] = None,
) -> Rel3:
    """Is (s, t) in the relation of e?  Three-valued: the search space can be
    infinite, so NO is only reported when the frontier exhausts.  A state
    filter prunes the search; the caller owns its soundness argument."""
    if s.level != t.level:
        raise ValueError("stacks must share a level")
    found = [False]

    def on_accept(stack: Stack) -> bool:
        if stack == t:
            found[0] = True
            return True
        return False

    exhausted = _search(e, s, budget, state_filter, on_accept)
    if found[0]:
        return Rel3.YES
    return Rel3.NO if exhausted else Rel3.BUDGET


def reachable_set(
    s: Stack,
    e: OpExpr,
    budget: int = DEFAULT_BUDGET,
    state_filter: Optional[Callable[[Stack], bool]] = None,
) -> tuple[list[Stack], bool]:
    """All accepting stacks found from s within budget, in first-found order,
    plus whether the search exhausted the (filtered) space."""
    seen: dict = {}

    def on_accept(stack: Stack) -> bool:
        if stack not in seen:
            seen[stack] = None
        return False

    exhausted = _search(e, s, budget, state_filter, on_accept)
    return list(seen), exhausted


def enumerate_domain(
    e: OpExpr,
    level: int,
    budget: int = DEFAULT_BUDGET,
    state_filter: Optional[Callable[[Stack], bool]] = None,
) -> list[Stack]:
    """Distinct stacks reachable from the empty stack via e within budget."""
    stacks, _ = reachable_set(empty_stack(level), e, budget, state_filter)
    return stacks


def size_bound_filter(*stacks: Stack, slack: int = 0) -> Callable[[Stack], bool]:
    """Prune to stacks no wider or taller than the given ones (componentwise
    maxima per level, plus slack).  Sound for the dom/inc/dec family: on any
    accepting path between the given stacks, lengths shrink before they grow
    and level-1 values never exceed their final value at that position."""
    max_len: dict[int, int] = {}
    max_val = 0

    def visit(s: Stack):
        nonlocal max_val
        if s.level == 1:
            max_val = max(max_val, s.content)
        else:
            max_len[s.level] = max(max_len.get(s.level, 0), len(s.content))
            for child in s.content:
                visit(child)

    for s in stacks:
        visit(s)

    def ok(s: Stack) -> bool:
        if s.level == 1:
            return s.content <= max_val + slack
        if len(s.content) > max_len.get(s.level, 1) + slack:
            return False
        return all(ok(child) for child in s.content)

    return ok


def non_increasing(s: Stack) -> bool:
    """Entries at every level are sorted non-increasingly by decoded value."""
    if s.level == 1:
        return True
    values = [decode_raw(child) for child in s.content]
    return all(
        compare(values[i], values[i + 1]) != ordinals.LESS for i in range(len(values) - 1)
    ) and all(non_increasing(child) for child in s.content)


def decode_raw(s: Stack) -> Ordinal:
    """Literal reading: a level-n stack is the sum of w-powers of its entries."""
    if s.level == 1:
        return Ordinal.from_int(s.content)
    result = ZERO
    for child in s.content:
        result = add(result, omega_pow(decode_raw(child)))
    return result


def decode_iso(s: Stack) -> Ordinal:
    """Order isomorphism onto [0, w^^level): the raw value shifted down by one
    at every level where it came out finite."""
    if s.level == 1:
        return Ordinal.from_int(s.content)
    result = ZERO
    for child in s.content:
        result = add(result, omega_pow(decode_iso(child)))
    if result.is_finite:
        return Ordinal.from_int(result.as_int() - 1)
    return result


def encode_iso(a: Ordinal, level: int) -> Stack:
    """Inverse of decode_iso; requires a < w^^level."""
    if compare(a, tower(level)) != ordinals.LESS:
        raise OutOfRange(f"{a} is not below the height-{level} tower")
    if level == 1:
        return Stack(1, a.as_int())
    shifted = add(a, ordinals.ONE) if a.is_finite else a
    children = tuple(encode_iso(e, level - 1) for e in shifted.cnf_units())
    return Stack(level, children)


def format_stack(s: Stack) -> str:
    if s.level == 1:
        return str(s.content)
    return "[" + ",".join(format_stack(child) for child in s.content) + "]"


def parse_stack(text: str, level: Optional[int] = None) -> Stack:
    """Parse the bracketed text form; the level is inferred unless given."""
    pos = [0]
    text = text.strip()

    def parse() -> Stack:
        if pos[0] < len(text) and text[pos[0]] == "[":
            pos[0] += 1
            children = [parse()]
            while pos[0] < len(text) and text[pos[0]] == ",":
                pos[0] += 1
                children.append(parse())
            if pos[0] >= len(text) or text[pos[0]] != "]":
                raise ParseError("expected ']'", pos[0])
            pos[0] += 1
            levels = {c.level for c in children}
            if len(levels) != 1:
                raise ParseError("mixed nesting depths", pos[0])
            return Stack(children[0].level + 1, tuple(children))
        start = pos[0]
        while pos[0] < len(text) and text[pos[0]].isdigit():
            pos[0] += 1
        if pos[0] == start:
            raise ParseError("expected a number or '['", start)
        return Stack(1, int(text[start:pos[0]]))

    s = parse()
    if pos[0] != len(text):
        raise ParseError("trailing input", pos[0])
    if level is not None and s.level != level:
        raise ParseError(f"stack has level {s.level}, expected {level}", 0)
    return s


_ATOM_NAMES = {"push1": Push1(), "pop1": Pop1(), "id": Id()}


def parse_opexpr(text: str) -> OpExpr:
    """Grammar: union := concat ('+' concat)*; concat := postfix ('.' postfix)*;
    postfix := primary ('*' | '^+')*; primary := atom | '(' union ')'."""
    pos = [0]

    def skip_ws():
        while pos[0] < len(text) and text[pos[0]].isspace():
            pos[0] += 1

    def peek() -> str:
        skip_ws()
        return text[pos[0]] if pos[0] < len(text) else ""

    def parse_union() -> OpExpr:
        items = [parse_concat()]
        while peek() == "+":
            pos[0] += 1
            items.append(parse_concat())
        return items[0] if len(items) == 1 else Union_(tuple(items))

    def parse_concat() -> OpExpr:
        items = [parse_postfix()]
        while peek() == ".":
            pos[0] += 1
            items.append(parse_postfix())
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def parse_postfix() -> OpExpr:
        node = parse_primary()
        while True:
            ch = peek()
            if ch == "*":
                pos[0] += 1
                node = Star(node)
            elif ch == "^" and text[pos[0]:pos[0] + 2] == "^+":
                pos[0] += 2
                node = Plus(node)
            else:
                return node

    def parse_primary() -> OpExpr:
        skip_ws()
        if peek() == "(":
            pos[0] += 1
            node = parse_union()
            if peek() != ")":
                raise ParseError("expected ')'", pos[0])
            pos[0] += 1
            return node
        start = pos[0]
        while pos[0] < len(text) and (text[pos[0]].isalnum()):
            pos[0] += 1
        name = text[start:pos[0]]
        if name in _ATOM_NAMES:
            return Atom(_ATOM_NAMES[name])
        if name.startswith("copy") and name[4:].isdigit():
            return Atom(Copy(int(name[4:])))
        if name.startswith("pop") and name[3:].isdigit() and name != "pop1":
            return Atom(PopK(int(name[3:])))
        raise ParseError(f"unknown atom {name!r}", start)

    node = parse_union()
    skip_ws()
    if pos[0] != len(text):
        raise ParseError("trailing input", pos[0])
    return node
