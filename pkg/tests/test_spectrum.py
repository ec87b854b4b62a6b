from fractions import Fraction

import pytest

from avfq_labels.algebra import algebra_for
from avfq_labels.lattices import Order, ZLattice, frobenius_order, gen_index
from avfq_labels.spectrum import (is_invertible_ideal, maximal_ideals_above,
                                  ok_prime_sort_keys, prime_sort_key,
                                  primes_of_maximal_above)


@pytest.fixture(scope="module")
def ctx11():
    return algebra_for(1, 3, [3, 1, 1])          # O_K of Q(sqrt(-11)), R maximal


@pytest.fixture(scope="module")
def ctx27():
    return algebra_for(1, 7, [7, 1, 1])          # Z[F] of conductor 3 in Q(sqrt(-3))


def maximal_order_27(ctx):
    w = (ctx.one + ctx.elem([Fraction(1, 3), Fraction(2, 3)])) * Fraction(1, 2)
    return Order.from_lattice(ZLattice.from_rows(ctx, [ctx.one.coords, w.coords]))


def test_split_prime(ctx11):
    r = frobenius_order(ctx11)
    primes = maximal_ideals_above(r, 3)
    assert len(primes) == 2
    assert all(p.norm == 3 for p in primes)
    assert primes[0] != primes[1]
    assert all(is_invertible_ideal(r, p.lattice) for p in primes)


def test_inert_prime(ctx11):
    r = frobenius_order(ctx11)
    primes = maximal_ideals_above(r, 2)
    assert len(primes) == 1
    assert primes[0].norm == 4


def test_ramified_prime(ctx11):
    r = frobenius_order(ctx11)
    primes = maximal_ideals_above(r, 11)
    assert len(primes) == 1
    assert primes[0].norm == 11


def test_sort_keys_g1(ctx11):
    r = frobenius_order(ctx11)
    power_basis = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    all_primes = (maximal_ideals_above(r, 3) + maximal_ideals_above(r, 11)
                  + maximal_ideals_above(r, 2))
    keys = ok_prime_sort_keys(r, [power_basis], all_primes)
    p11 = maximal_ideals_above(r, 11)[0]
    assert keys[p11] == (1, 11, 1)
    k3 = sorted(keys[p] for p in maximal_ideals_above(r, 3))
    assert k3 == [(1, 3, 1), (1, 3, 2)]
    p2 = maximal_ideals_above(r, 2)[0]
    assert keys[p2] == (1, 4, 1)


def test_nonmaximal_order_prime_above_conductor(ctx27):
    # h = x^2+x+7 = (x-1)^2 mod 3: single maximal ideal of norm 3 over p=3
    r = frobenius_order(ctx27)
    primes = maximal_ideals_above(r, 3)
    assert len(primes) == 1
    assert primes[0].norm == 3
    assert not is_invertible_ideal(r, primes[0].lattice)
    ok = maximal_order_27(ctx27)
    above = primes_of_maximal_above(primes[0], ok)
    assert len(above) == 1           # 3 ramifies in Q(sqrt(-3))
    assert above[0].norm == 3


def test_prime_key_of_nonmaximal_is_min_above(ctx27):
    r = frobenius_order(ctx27)
    ok = maximal_order_27(ctx27)
    pr = maximal_ideals_above(r, 3)[0]
    ok_primes = maximal_ideals_above(ok, 3)
    int_basis = [[Fraction(1), Fraction(0)],
                 [Fraction(1, 2) + Fraction(1, 6), Fraction(1, 3)]]
    # integral basis of O_K over the power basis of x^2+x+7:
    # w = (1 + (2F+1)/3)/2 has power coordinates (2/3, 1/3)
    int_basis = [[Fraction(1), Fraction(0)], [Fraction(2, 3), Fraction(1, 3)]]
    keys = ok_prime_sort_keys(ok, [int_basis], ok_primes)
    assert prime_sort_key(pr, ok, keys) == min(keys[pp] for pp in ok_primes)


def test_split_prime_below_nonmaximal_meets_both(ctx27=None):
    # 2.5.b_e: R has index 50; 5 splits in the Z[i] component and both primes
    # of O_K above 5 in that component meet R in the same maximal ideal
    ctx = algebra_for(2, 5, [25, 5, 4, 1, 1])
    e1, e2 = ctx.idempotents
    r = frobenius_order(ctx)
    # O_K = Z[i] + O(sqrt(-11)): component integral bases {1,(a-1)/2}, {1,b}
    a = ctx.F * e1
    b = ctx.F * e2
    rows = [e1.coords, ((a - e1) * Fraction(1, 2)).coords,
            e2.coords, b.coords]
    ok = Order.from_lattice(ZLattice.from_rows(ctx, rows))
    assert gen_index(ok, r) == 50
    primes_r = maximal_ideals_above(r, 5)
    counts = [len(primes_of_maximal_above(pr, ok)) for pr in primes_r]
    assert sum(counts) == len(maximal_ideals_above(ok, 5))
    assert max(counts) >= 2          # some prime of R lies under two of O_K


def test_enumeration_accounts_for_quotient(ctx11, ctx27):
    # every maximal ideal contains exactly one rational prime; norms and
    # multiplicities account for |S/pS|
    for ctx, p in ((ctx11, 3), (ctx11, 2), (ctx27, 3), (ctx27, 7)):
        r = frobenius_order(ctx)
        primes = maximal_ideals_above(r, p)
        assert primes
        for pr in primes:
            assert gen_index(r, pr.lattice) == pr.norm
