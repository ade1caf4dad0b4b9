import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest

from oracles import normal_ordered_product, sequential_word
from polyglue.fock import (
    ANNIH,
    CREATE,
    Letter,
    TraceWordOp,
    apply,
    build_H,
    monomial_basis,
    normal_order_printed,
    symbolic_commutator,
    wick_expand,
    wick_expand_by_order,
    wick_sample_counts,
)
from polyglue.fock.state import FockState
from polyglue.linalg import random_rational_matrix

D, X = ANNIH, CREATE
A = Letter.const("A")


def W(*powers):
    """tr(A (DXA)^{p_1} A (DXA)^{p_2} ...)."""
    word = ()
    for p in powers:
        word += (A,) + (D, X, A) * p
    return word


def compositions(total, parts):
    if total < 0:
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cut + (total + parts - 1,)
        yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(parts))


def printed_Q2(n, m):
    # printed support with the exponent shift read as +1; weight nm/2 per composition
    out = TraceWordOp()
    for n1, n2 in compositions(n - 2, 2):
        for m1, m2 in compositions(m - 2, 2):
            out = out + TraceWordOp.single([W(n1 + m2 + 1), W(n2 + m1 + 1)], Fraction(n * m, 2))
    return out


def printed_Q3(n, m):
    out = TraceWordOp()
    for n1, n2, n3 in compositions(n - 3, 3):
        for m1, m2, m3 in compositions(m - 3, 3):
            c = Fraction(n * m, 3)
            out = out + TraceWordOp.single([W(n1 + m2 + 1), W(n2 + m3 + 1), W(n3 + m1 + 1)], c)
            out = out + TraceWordOp.single([W(n1 + m2 + 1, n3 + m1 + 1, n2 + m3 + 1)], c)
    return out


def random_state(n, d, rng, terms=3):
    basis = monomial_basis(n, d)
    return FockState(n, {rng.choice(basis): Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(terms)})


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, 5)])
def test_Q0_Q1_exact(n, m):
    Q = wick_expand_by_order(build_H(n), build_H(m))
    assert Q[0] == TraceWordOp.single([(D, X, A) * n, (D, X, A) * m])
    assert Q[1] == TraceWordOp.single([W(n + m - 1)], n * m)
    assert set(Q) == set(range(min(n, m) + 1))


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 5) for m in range(2, 5)])
def test_Q2_is_printed_over_two(n, m):
    assert wick_expand_by_order(build_H(n), build_H(m))[2] == printed_Q2(n, m)


@pytest.mark.parametrize("n,m", [(3, 3), (3, 4), (4, 3), (4, 4)])
def test_Q3_is_printed_over_three(n, m):
    assert wick_expand_by_order(build_H(n), build_H(m))[3] == printed_Q3(n, m)


def test_Q2_minus_one_reading_fails():
    # two contractions leave n+m-2 creators; exponents n1+m2-1, n2+m1-1 would leave n+m-6
    for n, m in [(2, 2), (3, 3), (3, 4)]:
        Q2 = wick_expand_by_order(build_H(n), build_H(m))[2]
        for prod in Q2.terms:
            assert sum(l.is_create for w in prod for l in w) == n + m - 2


@pytest.mark.parametrize("n,m", [(1, 1), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_sample_counts(n, m):
    counts = wick_sample_counts(build_H(n), build_H(m))
    for k in range(min(n, m) + 1):
        assert counts[k] == (comb(n, k) * comb(m, k), factorial(k))


@pytest.mark.parametrize("N", [2, 3])
def test_wick_equals_composition(N):
    rng = random.Random(N)
    Am = random_rational_matrix(N, rng)
    for n, m in [(1, 2), (2, 2), (2, 3), (3, 1)]:
        Hn, Hm = build_H(n, Am), build_H(m, Am)
        (wn,), (wm,) = Hn.terms, Hm.terms
        glued = wick_expand(Hn, Hm)
        for d in (1, 2):
            s = random_state(N, d, rng)
            assert apply(glued, s) == normal_ordered_product(wn, normal_ordered_product(wm, s))


def test_symbolic_commutators_vanish():
    for n in range(1, 4):
        for m in range(1, 4):
            assert symbolic_commutator(n, m).is_zero()


def test_empty_cycle_is_factor_N():
    trD, trX = TraceWordOp.single([(D,)]), TraceWordOp.single([(X,)])
    Q = wick_expand_by_order(trD, trX)
    assert Q[1] == TraceWordOp.single([()])
    for N in (2, 3):
        rng = random.Random(N)
        s = random_state(N, 2, rng)
        expect = sequential_word((D,), sequential_word((X,), s))
        assert apply(wick_expand(trD, trX), s) == expect
        assert apply(Q[1], s) == s * N


def test_requires_normal_ordered():
    op = TraceWordOp({((D, X),): 1}, normal_ordered=False)
    with pytest.raises(ValueError):
        wick_expand(op, op)


@pytest.mark.parametrize("word", [(D, X), (X, D), (D, X, A), (D, D, X, X), (D, X, A, D, X, A), (X, A, D, X, D, A)])
def test_printed_order_matches_sequential(word):
    N = 2
    rng = random.Random(len(word))
    Am = random_rational_matrix(N, rng)
    bound = tuple(Letter.const("A", Am) if l.is_const else l for l in word)
    op = normal_order_printed([bound])
    for d in (1, 2, 3):
        s = random_state(N, d, rng)
        assert apply(op, s) == sequential_word(bound, s)


def test_printed_two_words_matches_sequential():
    N = 2
    rng = random.Random(7)
    Al = Letter.const("A", random_rational_matrix(N, rng))
    w1, w2 = (D, X, Al) * 2, (D, X, Al)
    op = normal_order_printed([w1, w2])
    for d in (1, 2):
        s = random_state(N, d, rng)
        assert apply(op, s) == sequential_word(w1, sequential_word(w2, s))


def _printed_H(n, M):
    return normal_order_printed([(D, X, Letter.const("A", M)) * n])


def test_printed_order_commutes_at_N2_and_identity():
    from polyglue.fock import commutator_matrix
    from polyglue.linalg import RationalMatrix

    M = random_rational_matrix(2, random.Random(1))
    for d in (1, 2, 3):
        assert commutator_matrix(_printed_H(2, M), _printed_H(4, M), d, 2).is_zero()
    eye = RationalMatrix.identity(3)
    assert commutator_matrix(_printed_H(2, eye), _printed_H(4, eye), 3, 3).is_zero()


def test_printed_order_fails_at_N3():
    from polyglue.fock import commutator_matrix

    M = random_rational_matrix(3, random.Random(1))
    c = commutator_matrix(_printed_H(2, M), _printed_H(4, M), 3, 3)
    assert not c.is_zero()
    assert commutator_matrix(_printed_H(2, M), _printed_H(3, M), 3, 3).is_zero()
