import mpmath as mp

from avfq_labels.algebra import algebra_for
from avfq_labels.embeddings import (eval_at_root, get_embeddings, log_abs_interval,
                                    signed_im)


def test_roots_g1_quadratic_formula_oracle():
    # oracle: roots of x^2 + x + 3 are (-1 +- i sqrt(11))/2, the -sqrt(11)
    # branch sorts first
    ctx = algebra_for(1, 3, [3, 1, 1])
    tab = get_embeddings(ctx, 64)
    with mp.workprec(tab.precision):
        want_im = mp.sqrt(11) / 2
        r0, r1 = tab.roots
        assert abs(r0.c.real + 0.5) < 1e-10 and abs(r1.c.real + 0.5) < 1e-10
        assert abs(r0.c.imag + want_im) < 1e-10
        assert abs(r1.c.imag - want_im) < 1e-10
    assert tab.pairing == (1, 0)


def test_roots_quartic_ordering():
    # oracle: solve the two quadratic factors of x^4+6x^2+25: roots are
    # 1 +- 2i and -1 +- 2i, ordered (-1-2i, -1+2i, 1-2i, 1+2i)
    ctx = algebra_for(2, 5, [25, 0, 6, 0, 1])
    tab = get_embeddings(ctx, 64)
    want = [(-1, -2), (-1, 2), (1, -2), (1, 2)]
    for disk, (re, im) in zip(tab.roots, want):
        assert abs(disk.c.real - re) < 1e-10
        assert abs(disk.c.imag - im) < 1e-10
    assert tab.pairing == (1, 0, 3, 2)
    # components: Re = +1 roots come from x^2-2x+5 which sorts first
    assert tab.component == (1, 1, 0, 0)


def test_weil_bound_interval():
    ctx = algebra_for(2, 5, [25, 5, -2, 1, 1])
    tab = get_embeddings(ctx, 64)
    with mp.workprec(tab.precision):
        for d in tab.roots:
            lo, hi = d.abs_interval()
            assert lo * lo <= 5 <= hi * hi


def test_pairing_matches_conjugation():
    # phi(conj(a)) equals the conjugate embedding's value of a
    ctx = algebra_for(1, 3, [3, 1, 1])
    tab = get_embeddings(ctx, 64)
    a = ctx.elem([2, 3])
    with mp.workprec(tab.precision):
        # phi_k(conj(a)) = conj(phi_k(a)) = phi_{pair(k)}(a)
        v0 = eval_at_root(ctx, tab, a.conj(), 0)
        same = eval_at_root(ctx, tab, a, 0)
        paired = eval_at_root(ctx, tab, a, tab.pairing[0])
        assert abs(v0.c - mp.conj(same.c)) < 1e-10
        assert abs(v0.c - paired.c) < 1e-10


def test_signed_im_and_log():
    ctx = algebra_for(1, 3, [3, 1, 1])
    tab = get_embeddings(ctx, 64)
    lam = ctx.elem([1, 2])              # 1 + 2F, Im < 0 at the first root
    assert signed_im(ctx, tab, lam, 0) == -1
    assert signed_im(ctx, tab, lam, 1) == 1
    with mp.workprec(tab.precision):
        lo, hi = log_abs_interval(ctx, tab, ctx.F, 0)
        want = mp.log(3) / 2            # |phi(F)| = sqrt(3)
        assert lo <= want <= hi
