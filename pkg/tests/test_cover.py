import pytest

from ordcover.errors import BadOrder, NotALimit, ZeroHasNoFundParents
from ordcover.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    mul_nat,
    omega_pow,
    tower,
)
from ordcover.cover import (
    FundIndex,
    SuccessorStep,
    chain,
    covers,
    fund_seq,
    up_fund,
    up_set,
)
from ordcover.parsing import parse_ordinal

W2 = parse_ordinal("w^2")
W3 = parse_ordinal("w^3")
WW = parse_ordinal("w^w")


def test_fund_seq_of_omega():
    assert [fund_seq(OMEGA, n) for n in range(4)] == [
        Ordinal.from_int(n + 1) for n in range(4)
    ]


def test_fund_seq_of_omega_power():
    assert fund_seq(WW, 0) == OMEGA
    assert fund_seq(WW, 1) == W2
    assert fund_seq(WW, 2) == W3


def test_fund_seq_successor_exponent_case():
    a = parse_ordinal("w^3 + w^2")
    assert fund_seq(a, 0) == parse_ordinal("w^3 + w")
    for n in range(5):
        assert fund_seq(a, n) == add(W3, mul_nat(OMEGA, n + 1))


def test_fund_seq_monotone_bounded(pool3):
    from ordcover.ordinals import Limit, classify

    limits = [a for a in pool3 if isinstance(classify(a), Limit)][::50]
    for a in limits:
        values = [fund_seq(a, n) for n in range(11)]
        for lo, hi in zip(values, values[1:]):
            assert lo < hi
        assert all(v < a for v in values)


def test_fund_seq_rejects_non_limits():
    with pytest.raises(NotALimit):
        fund_seq(ZERO, 0)
    with pytest.raises(NotALimit):
        fund_seq(add(OMEGA, ONE), 0)


def test_covers_examples():
    assert covers(mul_nat(OMEGA, 2), W2) == FundIndex(1)
    assert covers(OMEGA, add(OMEGA, ONE)) == SuccessorStep()
    assert covers(OMEGA, add(W2, OMEGA)) is None


def test_covers_no_self_witness():
    for text in ("0", "1", "w", "w^w", "w^3 + w^2"):
        a = parse_ordinal(text)
        assert covers(a, a) is None


def test_covers_brute_force_on_fund_members(pool3):
    from ordcover.ordinals import Limit, classify

    limits = [a for a in pool3 if isinstance(classify(a), Limit)][::60]
    for a in limits:
        for k in range(6):
            assert covers(fund_seq(a, k), a) == FundIndex(k)


def test_up_fund_examples():
    assert up_fund(ONE) == {OMEGA}
    assert up_fund(OMEGA) == {W2, WW}
    assert up_fund(WW) == {
        parse_ordinal("w^(w + 1)"),
        parse_ordinal("w^w^2"),
        parse_ordinal("w^w^w"),
    }


def test_up_fund_rejects_zero():
    with pytest.raises(ZeroHasNoFundParents):
        up_fund(ZERO)


def test_up_fund_sound_and_complete(pool3):
    # soundness: every returned parent really contains l in its sequence;
    # completeness: no pool member is a missed parent
    sample = pool3[1::150]
    pool_set = pool3[::23]
    for l in sample:
        parents = up_fund(l)
        for parent in parents:
            assert isinstance(covers(l, parent), FundIndex)
        for candidate in pool_set:
            if isinstance(covers(l, candidate), FundIndex):
                assert candidate in parents


def test_up_set_examples():
    assert up_set(ZERO, WW) == {ONE}
    assert up_set(OMEGA, WW) == {add(OMEGA, ONE), W2}
    assert len(up_set(OMEGA, tower(3))) == 3


def test_up_set_matches_covers(pool3):
    bound = tower(3)
    sample = pool3[::37]
    for l in sample:
        ups = up_set(l, bound)
        for m in ups:
            assert covers(l, m) is not None
        for m in sample:
            assert (m in ups) == (covers(l, m) is not None and m < bound)


def test_chain_examples():
    assert chain(ZERO, ZERO) == [ZERO]
    steps = chain(ZERO, WW)
    assert steps[0] == ZERO and steps[-1] == WW
    for a, b in zip(steps, steps[1:]):
        assert covers(a, b) is not None
    steps = chain(Ordinal.from_int(2), W2)
    for a, b in zip(steps, steps[1:]):
        assert covers(a, b) is not None
        assert a < b


def test_chain_rejects_descending():
    with pytest.raises(BadOrder):
        chain(OMEGA, ONE)


def test_chain_on_sample(pool3):
    sample = pool3[::199]
    for i, x in enumerate(sample):
        for y in sample[i:]:
            steps = chain(x, y)
            assert steps[0] == x and steps[-1] == y
            for a, b in zip(steps, steps[1:]):
                assert covers(a, b) is not None
