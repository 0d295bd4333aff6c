"""Ordinals below epsilon-0 in reduced Cantor normal form.

An ordinal is a finite list of blocks (exponent, coefficient) with strictly
decreasing exponents (themselves ordinals) and positive integer coefficients.
The empty list is 0.  All values are immutable and hashable; every operation
here is pure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import CapExceeded

LESS = -1
EQUAL = 0
GREATER = 1

DEFAULT_COEFF_CAP = 3
DEFAULT_SIZE_CAP = 100_000


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((exp, int(coeff)) for exp, coeff in terms)
        for exp, coeff in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exp!r}")
            if coeff < 1:
                raise ValueError(f"coefficient must be >= 1, got {coeff}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if compare(e1, e2) != GREATER:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = None

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return Ordinal(((ZERO, n),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def as_int(self) -> int:
        if self.is_zero:
            return 0
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1]

    def cnf_units(self) -> Iterator["Ordinal"]:
        """Exponents of the plain CNF view, coefficients expanded."""
        for exp, coeff in self.terms:
            for _ in range(coeff):
                yield exp

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __lt__(self, other):
        return compare(self, other) == LESS

    def __le__(self, other):
        return compare(self, other) != GREATER

    def __gt__(self, other):
        return compare(self, other) == GREATER

    def __ge__(self, other):
        return compare(self, other) != LESS

    def __repr__(self):
        from .parsing import format_ordinal

        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal(((ONE, 1),))


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Successor:
    predecessor: Ordinal


@dataclass(frozen=True)
class Limit:
    pass


OrdinalKind = Union[Zero, Successor, Limit]


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on ordinals; returns LESS, EQUAL or GREATER."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != EQUAL:
            return c
        if ca != cb:
            return LESS if ca < cb else GREATER
    if len(a.terms) == len(b.terms):
        return EQUAL
    return LESS if len(a.terms) < len(b.terms) else GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a+b; absorbs the tail of a below b's leading exponent."""
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    head_exp = b.terms[0][0]
    keep = []
    merged = False
    for exp, coeff in a.terms:
        c = compare(exp, head_exp)
        if c == GREATER:
            keep.append((exp, coeff))
        elif c == EQUAL:
            keep.append((exp, coeff + b.terms[0][1]))
            merged = True
            break
        else:
            break
    if merged:
        keep.extend(b.terms[1:])
    else:
        keep.extend(b.terms)
    return Ordinal(keep)


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    """a added to itself n times."""
    if n < 0:
        raise ValueError("natural multiplier must be >= 0")
    result = ZERO
    for _ in range(n):
        result = add(result, a)
    return result


def omega_pow(e: Ordinal) -> Ordinal:
    """The single-block ordinal w^e (so omega_pow(0) = 1)."""
    return Ordinal(((e, 1),))


def succ(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def classify(a: Ordinal) -> OrdinalKind:
    """Zero, Successor (with exact predecessor) or Limit."""
    if a.is_zero:
        return Zero()
    exp, coeff = a.terms[-1]
    if not exp.is_zero:
        return Limit()
    if coeff > 1:
        pred = Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    else:
        pred = Ordinal(a.terms[:-1])
    return Successor(pred)


def tower(n: int) -> Ordinal:
    """n-fold iterated power of w; tower(0) = 1."""
    return exp_tower_w(n, 1)


def exp_tower_w(n: int, k: int) -> Ordinal:
    """Height-n tower of w topped by the natural k."""
    if n < 0 or k < 0:
        raise ValueError("tower arguments must be naturals")
    if n == 0:
        return Ordinal.from_int(k)
    return omega_pow(exp_tower_w(n - 1, k))


def enumerate_ordinals(
    max_terms: int,
    max_depth: int,
    bound: Ordinal,
    coeff_cap: int = DEFAULT_COEFF_CAP,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> list[Ordinal]:
    """All RCNF ordinals with <= max_terms blocks, nesting <= max_depth,
    coefficients <= coeff_cap and value < bound, sorted ascending.

    max_depth 0 enumerates plain naturals below the bound (the coefficient
    cap does not apply there).  Raises CapExceeded past size_cap values.
    """
    if max_depth == 0:
        if not bound.is_finite:
            raise CapExceeded(f"unbounded enumeration of naturals (cap {size_cap})")
        n = bound.as_int()
        if n > size_cap:
            raise CapExceeded(f"{n} naturals exceeds cap {size_cap}")
        return [Ordinal.from_int(i) for i in range(n)]
    pool = _pool(max_terms, max_depth, coeff_cap, size_cap)
    values = sorted((v for v in pool if v < bound))
    return values


def _pool(max_terms: int, depth: int, coeff_cap: int, size_cap: int) -> set[Ordinal]:
    if depth == 0:
        return {Ordinal.from_int(i) for i in range(coeff_cap + 1)}
    exponents = sorted(_pool(max_terms, depth - 1, coeff_cap, size_cap), reverse=True)
    values: set[Ordinal] = {ZERO}
    for k in range(1, max_terms + 1):
        for exps in itertools.combinations(exponents, k):
            for coeffs in itertools.product(range(1, coeff_cap + 1), repeat=k):
                values.add(Ordinal(tuple(zip(exps, coeffs))))
                if len(values) > size_cap:
                    raise CapExceeded(f"enumeration exceeds cap {size_cap}")
    return values
