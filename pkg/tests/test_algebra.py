import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from avfq_labels.algebra import algebra_for, build_algebra
from avfq_labels.errors import (FunctionalEquationViolated, NotOrdinaryNotPrimeField,
                                NotSquarefree)
from avfq_labels.weil import factor_weil, parse_weil, poly_mul


# ascending coefficients throughout: h(x) = c0 + c1 x + ...

def test_parse_weil_paper_class():
    w = parse_weil(2, 5, [25, 0, 6, 0, 1])        # x^4 + 6x^2 + 25
    assert (w.p, w.a) == (5, 1)
    assert w.ordinary
    assert w.label_coeffs() == (0, 6)


def test_parse_weil_g1():
    w = parse_weil(1, 3, [3, 1, 1])               # x^2 + x + 3
    assert w.ordinary
    assert w.label_coeffs() == (1,)


def test_parse_weil_rejects_nonordinary_prime_power():
    with pytest.raises(NotOrdinaryNotPrimeField):
        parse_weil(1, 4, [4, 0, 1])               # x^2 + 4 over F_4


def test_parse_weil_rejects_functional_equation():
    with pytest.raises(FunctionalEquationViolated):
        parse_weil(1, 3, [5, 1, 1])


def test_parse_weil_rejects_nonsquarefree():
    # (x^2 - 3)^2 = x^4 - 6x^2 + 9 satisfies the q=3 functional equation
    with pytest.raises(NotSquarefree):
        parse_weil(2, 3, [9, 0, -6, 0, 1])


def test_factor_irreducible_quadratic():
    assert factor_weil((3, 1, 1), 3) == ((3, 1, 1),)


def test_factor_paper_quartic():
    # oracle: (x^2-2x+5)(x^2+2x+5) expands to x^4+6x^2+25; sorted since
    # (5,-2,1) < (5,2,1)
    assert poly_mul((5, -2, 1), (5, 2, 1)) == (25, 0, 6, 0, 1)
    assert factor_weil((25, 0, 6, 0, 1), 5) == ((5, -2, 1), (5, 2, 1))


def test_factor_constant_term_tie():
    # oracle: multiply back; constant terms tie, -1 < 1
    h = poly_mul((3, 1, 1), (3, -1, 1))
    assert h == (9, 0, 5, 0, 1)
    assert factor_weil(h, 3) == ((3, -1, 1), (3, 1, 1))


def test_build_algebra_g1_v_coords():
    ctx = algebra_for(1, 3, [3, 1, 1])
    # V = 3/F = -1 - F since F^2 + F + 3 = 0
    assert ctx.V.coords == (Fraction(-1), Fraction(-1))
    assert ctx.conj(ctx.one) == ctx.one


def test_build_algebra_quartic_components():
    ctx = algebra_for(2, 5, [25, 0, 6, 0, 1])
    assert len(ctx.idempotents) == 2
    e1, e2 = ctx.idempotents
    assert e1 + e2 == ctx.one
    assert (e1 * e2).is_zero()


def test_trace_values():
    ctx = algebra_for(1, 3, [3, 1, 1])
    assert ctx.trace(ctx.one) == 2
    assert ctx.trace(ctx.F) == -1                 # sum of roots = -a_1
    ctx2 = algebra_for(2, 5, [25, 0, 6, 0, 1])
    assert ctx2.trace(ctx2.one) == 4
    assert ctx2.trace(ctx2.F) == 0


def random_elem(ctx, rng, span=6):
    return ctx.elem([Fraction(rng.randint(-span, span), rng.randint(1, 3))
                     for _ in range(ctx.dim)])


@pytest.fixture(scope="module")
def contexts():
    return [algebra_for(1, 3, [3, 1, 1]),
            algebra_for(2, 5, [25, 0, 6, 0, 1]),
            algebra_for(2, 5, [25, 5, -2, 1, 1])]   # 2.5.b_ac


def test_fv_equals_q(contexts):
    for ctx in contexts:
        assert ctx.F * ctx.V == ctx.one * ctx.q


def test_conj_is_ring_involution(contexts):
    rng = random.Random(11)
    for ctx in contexts:
        for _ in range(25):
            a, b = random_elem(ctx, rng), random_elem(ctx, rng)
            assert (a * b).conj() == a.conj() * b.conj()
            assert a.conj().conj() == a
            assert ctx.trace(a * b) == ctx.trace(b * a)


def test_trace_bilinear_symmetric(contexts):
    rng = random.Random(5)
    for ctx in contexts:
        a, b, c = (random_elem(ctx, rng) for _ in range(3))
        assert ctx.trace((a + b) * c) == ctx.trace(a * c) + ctx.trace(b * c)


def test_norm_multiplicative(contexts):
    rng = random.Random(17)
    for ctx in contexts:
        a, b = random_elem(ctx, rng), random_elem(ctx, rng)
        assert ctx.norm(a * b) == ctx.norm(a) * ctx.norm(b)


def test_inverse(contexts):
    for ctx in contexts:
        finv = ctx.inverse(ctx.F)
        assert ctx.F * finv == ctx.one
        assert finv * ctx.q == ctx.V


@settings(max_examples=40, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8),
       st.integers(-8, 8))
def test_mul_commutative_associative(a0, a1, b0, b1):
    ctx = algebra_for(1, 3, [3, 1, 1])
    a, b = ctx.elem([a0, a1]), ctx.elem([b0, b1])
    c = ctx.elem([1, -2])
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_factor_sorting_stable_under_shuffle():
    # total order: rerunning on an equivalent product gives identical output
    f1, f2 = (5, -2, 1), (5, 2, 1)
    assert factor_weil(poly_mul(f1, f2), 5) == factor_weil(poly_mul(f2, f1), 5)
