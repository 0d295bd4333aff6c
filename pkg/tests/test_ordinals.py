import pytest
from hypothesis import given, settings, strategies as st

from ordcover.errors import CapExceeded
from ordcover.ordinals import (
    EQUAL,
    GREATER,
    LESS,
    OMEGA,
    ONE,
    ZERO,
    Limit,
    Ordinal,
    Successor,
    Zero,
    add,
    classify,
    compare,
    enumerate_ordinals,
    exp_tower_w,
    mul_nat,
    omega_pow,
    succ,
    tower,
)
from ordcover.parsing import format_ordinal, parse_ordinal

W2 = omega_pow(Ordinal.from_int(2))
WW = omega_pow(OMEGA)


def test_compare_examples():
    assert compare(W2, add(W2, OMEGA)) == LESS
    assert compare(ZERO, ZERO) == EQUAL
    # larger leading exponent dominates
    assert compare(WW, add(mul_nat(W2, 5), Ordinal.from_int(3))) == GREATER


def test_add_examples():
    # left addend absorbed by a larger power
    assert add(OMEGA, W2) == W2
    assert add(WW, ZERO) == WW
    assert add(add(W2, OMEGA), add(OMEGA, ONE)) == parse_ordinal("w^2 + w*2 + 1")


def test_add_against_pair_model():
    # independent model of ordinals below w^2 as (limit-coefficient, finite)
    # pairs: appending a second order eats the finite part of the first
    # whenever the second has any limit blocks
    def pair_add(a, b):
        b1, b0 = b
        a1, a0 = a
        if b1 > 0:
            return (a1 + b1, b0)
        return (a1, a0 + b0)

    def to_pair(x):
        c1 = c0 = 0
        for exp, coeff in x.terms:
            if exp == ONE:
                c1 = coeff
            elif exp == ZERO:
                c0 = coeff
        return (c1, c0)

    def from_pair(p):
        return add(mul_nat(OMEGA, p[0]), Ordinal.from_int(p[1]))

    sample = enumerate_ordinals(2, 1, W2)
    for a in sample:
        for b in sample:
            assert add(a, b) == from_pair(pair_add(to_pair(a), to_pair(b)))


def test_mul_nat():
    assert mul_nat(OMEGA, 2) == parse_ordinal("w*2")
    assert mul_nat(WW, 0) == ZERO
    assert mul_nat(add(OMEGA, ONE), 3) == parse_ordinal("w*3 + 1")


def test_omega_pow():
    assert omega_pow(ZERO) == ONE
    assert omega_pow(ONE) == OMEGA
    assert omega_pow(OMEGA) == WW


def test_classify():
    assert isinstance(classify(ZERO), Zero)
    kind = classify(add(OMEGA, ONE))
    assert isinstance(kind, Successor) and kind.predecessor == OMEGA
    assert isinstance(classify(WW), Limit)
    kind = classify(mul_nat(W2, 2))
    assert isinstance(classify(mul_nat(W2, 2)), Limit)


def test_towers():
    assert exp_tower_w(0, 5) == Ordinal.from_int(5)
    assert exp_tower_w(1, 3) == omega_pow(Ordinal.from_int(3))
    assert tower(0) == ONE
    assert tower(2) == WW
    assert tower(3) == omega_pow(WW)


def test_enumerate_naturals():
    got = enumerate_ordinals(1, 0, Ordinal.from_int(4))
    assert got == [Ordinal.from_int(i) for i in range(4)]


def test_enumerate_depth_one():
    got = enumerate_ordinals(1, 1, W2)
    want = {parse_ordinal(t) for t in ("0", "1", "2", "3", "w", "w*2", "w*3")}
    assert want <= set(got)
    assert got == sorted(got)


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_ordinals(1, 0, OMEGA)
    with pytest.raises(CapExceeded):
        enumerate_ordinals(3, 3, tower(3), size_cap=1000)


def test_enumerate_sorted_distinct(pool2):
    assert all(a < b for a, b in zip(pool2, pool2[1:]))


def test_compare_total_order(pool2):
    sample = pool2[:40]
    for a in sample:
        assert compare(a, a) == EQUAL
        for b in sample:
            ab, ba = compare(a, b), compare(b, a)
            assert ab == -ba
            if ab == EQUAL:
                assert a == b
    for a in sample[:20]:
        for b in sample[:20]:
            for c in sample[:20]:
                if compare(a, b) != GREATER and compare(b, c) != GREATER:
                    assert compare(a, c) != GREATER


def test_add_associative_and_identity(pool2):
    sample = pool2[::3][:25]
    for a in sample:
        assert add(a, ZERO) == a
        assert add(ZERO, a) == a
        for b in sample:
            assert compare(a, add(a, b)) in (LESS, EQUAL)
            assert add(a, ONE) > a
            for c in sample[:12]:
                assert add(add(a, b), c) == add(a, add(b, c))


def test_successor_roundtrip(pool2):
    for a in pool2:
        kind = classify(add(a, ONE))
        assert isinstance(kind, Successor)
        assert kind.predecessor == a


def test_parse_format_roundtrip(pool3):
    for a in pool3[::7]:
        assert parse_ordinal(format_ordinal(a)) == a


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_mul_nat_matches_repeated_add(pool2, data):
    a = data.draw(st.sampled_from(pool2))
    n = data.draw(st.integers(0, 6))
    total = ZERO
    for _ in range(n):
        total = add(total, a)
    assert mul_nat(a, n) == total


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_succ_strictly_monotone(pool2, data):
    a = data.draw(st.sampled_from(pool2))
    assert succ(a) > a
    assert compare(succ(a), a) == GREATER
