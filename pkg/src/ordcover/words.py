"""Greatest sequences and degree words.

The greatest sequence of a bounded covering graph starts at 0 and always
steps to the largest covering successor.  Its out-degree trace is the degree
word: a finite word ending in 0 for successor bounds, an ultimately periodic
word otherwise.  Words are kept in a canonical (shortest prefix, primitive
period) form so equality is equality of the denoted omega-words.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import IterationCapExceeded, PeriodMismatch
from .ordinals import (
    EQUAL,
    GREATER,
    LESS,
    ZERO,
    Limit,
    Ordinal,
    Zero,
    classify,
)
from .cover import fund_seq, up_set

DEFAULT_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class UPWord:
    """Finite or ultimately periodic word over small naturals."""

    prefix: tuple[int, ...]
    period: tuple[int, ...] = ()

    @property
    def is_finite(self) -> bool:
        return not self.period

    def letter_at(self, i: int) -> Optional[int]:
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.period:
            return None
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def expand(self, n: int) -> list[int]:
        out = []
        for i in range(n):
            letter = self.letter_at(i)
            if letter is None:
                break
            out.append(letter)
        return out

    def __repr__(self):
        from .parsing import format_word

        return format_word(self.prefix, self.period)


@dataclass(frozen=True)
class GreatestSeq:
    """Greatest-sequence walk: visited ordinals with their out-degrees.

    For a limit bound the walk stops once the first three fundamental-sequence
    members have been visited; their indices identify the periodic structure.
    """

    entries: tuple[tuple[Ordinal, int], ...]
    termination: Union[str, tuple[int, int, int]]  # "finished" or (i0, i1, i2)


def greatest_step(l: Ordinal, bound: Ordinal) -> Optional[Ordinal]:
    """Largest covering successor of l below bound, if any."""
    ups = up_set(l, bound)
    return max(ups) if ups else None


def iter_greatest(bound: Ordinal) -> Iterator[tuple[Ordinal, int]]:
    """Walk the greatest sequence of the covering graph below `bound`,
    yielding (ordinal, out-degree) pairs; stops when no successor exists."""
    if bound.is_zero:
        return
    cur = ZERO
    while True:
        ups = up_set(cur, bound)
        yield cur, len(ups)
        if not ups:
            return
        cur = max(ups)


def greatest_sequence(a: Ordinal, cap: int = DEFAULT_ITERATION_CAP) -> GreatestSeq:
    """Greatest sequence of the covering graph below a, with stop bookkeeping."""
    kind = classify(a)
    if isinstance(kind, Zero):
        return GreatestSeq((), "finished")
    targets = []
    if isinstance(kind, Limit):
        targets = [fund_seq(a, 0), fund_seq(a, 1), fund_seq(a, 2)]
    entries = []
    hits = []
    for step, (value, degree) in enumerate(iter_greatest(a)):
        if step >= cap:
            raise IterationCapExceeded(f"greatest sequence of {a} ran past {cap} steps")
        entries.append((value, degree))
        if targets and len(hits) < 3 and value == targets[len(hits)]:
            hits.append(step)
            if len(hits) == 3:
                return GreatestSeq(tuple(entries), (hits[0], hits[1], hits[2]))
    if isinstance(kind, Limit):
        raise IterationCapExceeded(f"walk below {a} ended before its period was seen")
    return GreatestSeq(tuple(entries), "finished")


def degree_word(a: Ordinal, cap: int = DEFAULT_ITERATION_CAP) -> UPWord:
    """Degree word of the covering graph below a, canonicalized."""
    seq = greatest_sequence(a, cap)
    letters = [degree for _, degree in seq.entries]
    if seq.termination == "finished":
        return UPWord(tuple(letters))
    i0, i1, i2 = seq.termination
    prefix = tuple(letters[:i0])
    period = tuple(letters[i0:i1])
    if tuple(letters[i1:i2]) != period:
        raise PeriodMismatch(
            f"repeat segment {letters[i1:i2]} differs from {list(period)} below {a}"
        )
    return canonicalize(UPWord(prefix, period))


def canonicalize(w: UPWord) -> UPWord:
    """Primitive period, then shortest prefix (rotating the period as letters
    move across the seam).  Identity on finite words."""
    if w.is_finite:
        return w
    period = _primitive_root(w.period)
    prefix = list(w.prefix)
    period = list(period)
    while prefix and prefix[-1] == period[-1]:
        prefix.pop()
        period = [period[-1]] + period[:-1]
    return UPWord(tuple(prefix), tuple(period))


def _primitive_root(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and period[:size] * (n // size) == period:
            return period[:size]
    return period


def lex_compare(u: UPWord, v: UPWord) -> int:
    """Lexicographic comparison of the denoted words; end-of-word sorts
    below every letter.  Returns LESS, EQUAL or GREATER."""
    horizon = (
        len(u.prefix)
        + len(v.prefix)
        + math.lcm(max(1, len(u.period)), max(1, len(v.period)))
        + 1
    )
    for i in range(horizon):
        a = u.letter_at(i)
        b = v.letter_at(i)
        if a == b:
            if a is None:
                return EQUAL
            continue
        if a is None:
            return LESS
        if b is None:
            return GREATER
        return LESS if a < b else GREATER
    return EQUAL
