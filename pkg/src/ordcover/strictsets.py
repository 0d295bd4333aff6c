"""Tower-of-two combinatorics: subset-power ordinal sets, marked fixpoint
sets with a greatest-successor exclusion rule, and the comb-shaped trace
trees they encode.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded, IterationCapExceeded, NoFundParentInBound, Overflow
from .ordinals import (
    LESS,
    ONE,
    Ordinal,
    add,
    compare,
    exp_tower_w,
    mul_nat,
    succ,
    tower,
)
from .cover import covers, up_fund, up_set
from .words import iter_greatest

EXP2_MACHINE_BOUND = 2**63
DEFAULT_CSET_CAP = 2**16
DEFAULT_TAIL_CAP = 10_000


def exp2(n: int, k: int) -> int:
    """Tower of 2s of height n topped by k."""
    if n < 0 or k < 0:
        raise ValueError("arguments must be naturals")
    result = k
    for _ in range(n):
        if result >= 64:
            raise Overflow(f"2^{result} leaves the machine range")
        result = 2**result
    if result > EXP2_MACHINE_BOUND:
        raise Overflow(f"{result} leaves the machine range")
    return result


def c_set(n: int, k: int, cap: int = DEFAULT_CSET_CAP) -> set[Ordinal]:
    """Ordinals below the height-n tower topped by k whose RCNF coefficients
    are all 1 except possibly at the very bottom: sums of distinct w-powers
    over the previous level, built level by level."""
    if exp2(n, k) > cap:
        raise CapExceeded(f"requested set has {exp2(n, k)} elements, cap {cap}")
    current = {Ordinal.from_int(i) for i in range(k)}
    for _ in range(n):
        exponents = sorted(current, reverse=True)
        level = set()
        for size in range(len(exponents) + 1):
            for subset in itertools.combinations(exponents, size):
                # distinct exponents in decreasing order: the sum of their
                # w-powers is already in reduced form with unit coefficients
                level.add(Ordinal(tuple((e, 1) for e in subset)))
        current = level
    return current


def max_cover_step(g: Ordinal, ambient: Ordinal) -> Ordinal:
    """Greatest covering successor of g within the closed bound `ambient`.

    Requires a fundamental-sequence parent in range; the +1 successor alone
    does not represent the true maximum, so that case is an error.
    """
    if g.is_zero:
        raise NoFundParentInBound("0 has no covering successors beyond 1")
    parents = [p for p in up_fund(g) if p <= ambient]
    if not parents:
        raise NoFundParentInBound(f"no parent of {g} within {ambient}")
    best = max(parents)
    s = succ(g)
    return best if best > s else s


def _greatest_parent_unbounded(g: Ordinal) -> Ordinal:
    """Greatest covering successor in the full (unbounded) covering relation."""
    if g.is_zero:
        return ONE
    parents = up_fund(g)
    return max(parents) if parents else succ(g)


def s_alpha(a: Ordinal, ambient: Ordinal, cap: int) -> set[Ordinal]:
    """Marked set grown from a: start {a, a+1}; walking members upward, admit
    each covering successor g of a member unless some member <= the current
    one is covered by g's greatest parent.

    The exclusion is decided against the unbounded greatest parent: bounding
    it by the ambient graph misclassifies the doubled seed whenever its parent
    sits exactly at the bound.
    """
    if compare(ambient, mul_nat(a, 2)) == LESS or ambient == mul_nat(a, 2):
        raise ValueError("ambient must exceed the doubled seed")
    members = [a, succ(a)]
    member_set = set(members)
    idx = 1  # members[0] == a seeds the set but is not processed
    while idx < len(members):
        if len(member_set) > cap:
            raise CapExceeded(f"marked set exceeds cap {cap}")
        lam = members[idx]
        for g in sorted(up_set(lam, ambient)):
            if g in member_set:
                continue
            tau = _greatest_parent_unbounded(g)
            excluded = any(
                member <= lam and covers(member, tau) is not None
                for member in member_set
            )
            if not excluded:
                member_set.add(g)
                _insort(members, g, idx)
        idx += 1
    return member_set


def _insort(members: list, value, after: int):
    lo, hi = after + 1, len(members)
    while lo < hi:
        mid = (lo + hi) // 2
        if members[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    members.insert(lo, value)


@dataclass(frozen=True)
class TraceTree:
    """Comb tree: a spine of a-edges with a b-chain hanging at every spine
    position; hang k has length exp2(n, k)."""

    spine_length: int
    hang_lengths: tuple[int, ...]


def trace_tree(n: int, spine: int) -> TraceTree:
    return TraceTree(spine, tuple(exp2(n, k) for k in range(1, spine + 1)))


def trace_tree_dot(t: TraceTree) -> str:
    lines = ["digraph trace {"]
    for k in range(t.spine_length):
        lines.append(f'  "s{k}" -> "s{k + 1}" [label="a"];')
    for k, length in enumerate(t.hang_lengths, start=1):
        prev = f"s{k}"
        for j in range(length):
            node = f"h{k}_{j + 1}"
            lines.append(f'  "{prev}" -> "{node}" [label="b"];')
            prev = node
    lines.append("}")
    return "\n".join(lines)


def greatest_seq_tail_check(n: int, big_k: int, cap: int = DEFAULT_TAIL_CAP) -> bool:
    """Does the greatest sequence below the height-(n+1) tower visit the
    height-n towers topped by 1..big_k?"""
    targets = {exp_tower_w(n, k) for k in range(1, big_k + 1)}
    bound = tower(n + 1)
    for step, (value, _) in enumerate(iter_greatest(bound)):
        targets.discard(value)
        if not targets:
            return True
        if value > max(targets):
            return False
        if step >= cap:
            raise IterationCapExceeded(f"walk below {bound} ran past {cap} steps")
    return not targets
