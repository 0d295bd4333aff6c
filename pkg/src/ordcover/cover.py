"""The covering relation: fundamental sequences, witnesses, parents, chains.

x is covered by a when x+1 = a or x is a member of a's fundamental sequence.
The transitive closure of this relation is the ordinal order itself, which is
what `chain` demonstrates constructively.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import BadOrder, IterationCapExceeded, NotALimit, ZeroHasNoFundParents
from .ordinals import (
    GREATER,
    LESS,
    Limit,
    Ordinal,
    Successor,
    add,
    classify,
    compare,
    mul_nat,
    omega_pow,
    succ,
)


@dataclass(frozen=True)
class SuccessorStep:
    pass


@dataclass(frozen=True)
class FundIndex:
    k: int


CoverWitness = Union[SuccessorStep, FundIndex]

_LEAST_INDEX_CAP = 1_000_000


def _split_last_unit(a: Ordinal) -> tuple[Ordinal, Ordinal]:
    """a = prefix + w^gamma with w^gamma the last CNF unit; returns (prefix, gamma)."""
    gamma, coeff = a.terms[-1]
    if coeff > 1:
        prefix = Ordinal(a.terms[:-1] + ((gamma, coeff - 1),))
    else:
        prefix = Ordinal(a.terms[:-1])
    return prefix, gamma


def fund_seq(a: Ordinal, n: int) -> Ordinal:
    """n-th member of the fundamental sequence of the limit ordinal a."""
    if not isinstance(classify(a), Limit):
        raise NotALimit(f"{a} is not a limit ordinal")
    prefix, gamma = _split_last_unit(a)
    kind = classify(gamma)
    if isinstance(kind, Successor):
        return add(prefix, mul_nat(omega_pow(kind.predecessor), n + 1))
    return add(prefix, omega_pow(fund_seq(gamma, n)))


def covers(x: Ordinal, a: Ordinal) -> Optional[CoverWitness]:
    """Witness that x is covered by a: the +1 step or a fundamental index.

    Decided structurally: strip the shared prefix, then match the residue
    against the two fundamental-sequence shapes (recursing on the exponent
    when it is a limit).  No search over indices.
    """
    kind = classify(a)
    if isinstance(kind, Successor):
        return SuccessorStep() if kind.predecessor == x else None
    if not isinstance(kind, Limit):
        return None
    prefix, gamma = _split_last_unit(a)
    np = len(prefix.terms)
    if x.terms[:np] != prefix.terms:
        return None
    residue = x.terms[np:]
    if len(residue) != 1:
        return None
    delta, m = residue[0]
    gkind = classify(gamma)
    if isinstance(gkind, Successor):
        return FundIndex(m - 1) if delta == gkind.predecessor else None
    if m != 1:
        return None
    witness = covers(delta, gamma)
    return witness if isinstance(witness, FundIndex) else None


def up_fund(l: Ordinal) -> set[Ordinal]:
    """All ordinals whose fundamental sequence contains l.

    Closed form on the last RCNF block of l = delta + w^rho * c: the block
    parent delta + w^(rho+1) always qualifies; when the block is a single
    unit (c = 1) each parent rho2 of rho yields delta + w^rho2, provided the
    power does not absorb delta (rho2 at most delta's last exponent).
    """
    if l.is_zero:
        raise ZeroHasNoFundParents("0 occurs in no fundamental sequence")
    rho, coeff = l.terms[-1]
    delta = Ordinal(l.terms[:-1])
    parents = {add(delta, omega_pow(succ(rho)))}
    if coeff == 1 and not rho.is_zero:
        delta_last = delta.terms[-1][0] if delta.terms else None
        for rho2 in up_fund(rho):
            if delta_last is None or compare(delta_last, rho2) != LESS:
                parents.add(add(delta, omega_pow(rho2)))
    return parents


def up_set(l: Ordinal, bound: Ordinal) -> set[Ordinal]:
    """Out-neighborhood of l in the covering graph bounded by `bound`."""
    result = set()
    s = succ(l)
    if s < bound:
        result.add(s)
    if not l.is_zero:
        result.update(p for p in up_fund(l) if p < bound)
    return result


def least_fund_index_at_least(a: Ordinal, x: Ordinal) -> int:
    """Smallest n with fund_seq(a, n) >= x; a must be a limit with x < a."""
    for n in range(_LEAST_INDEX_CAP):
        if fund_seq(a, n) >= x:
            return n
    raise IterationCapExceeded("no fundamental member >= target within cap")


def chain(x: Ordinal, y: Ordinal) -> list[Ordinal]:
    """A covering chain x = c0 < c1 < ... < cm = y, built by descending from y."""
    if compare(x, y) == GREATER:
        raise BadOrder(f"{x} > {y}")
    steps = [y]
    cur = y
    while cur != x:
        kind = classify(cur)
        if isinstance(kind, Successor):
            cur = kind.predecessor
        else:
            cur = fund_seq(cur, least_fund_index_at_least(cur, x))
        steps.append(cur)
    steps.reverse()
    return steps
