import pytest

from avfq_labels.classdata import build_class_data
from avfq_labels.fielddata import bundled_field_dir, load_field_directory
from avfq_labels.lattices import gen_index
from avfq_labels.picard import (pic_dlog, pic_generator_scan, pic_group_public,
                                pic_raw)


@pytest.fixture(scope="module")
def fields():
    return load_field_directory(bundled_field_dir())


def make(g, q, coeffs, fields):
    return build_class_data(g, q, coeffs, fields)


def test_trivial_pic_maximal(fields):
    # Q(sqrt(-11)): single class by the reduced-forms oracle
    cd = make(1, 3, [3, 1, 1], fields)
    raw = pic_raw(cd, cd.r)
    assert raw.size == 1
    assert raw.group.invariants == ()


def test_pic_of_conductor_two_order(fields):
    # x^2 - 2x + 5: Z[F] has conductor 2 in Z[i]; h(-16) = 1 still
    cd = make(1, 5, [5, -2, 1], fields)
    assert int(gen_index(cd.ok, cd.r)) == 2
    raw = pic_raw(cd, cd.r)
    assert raw.size == 1


def test_pic_c12_paper_value(fields):
    # 2.5.b_ac: Pic(R) is cyclic of order 12
    cd = make(2, 5, [25, 5, -2, 1, 1], fields)
    assert int(gen_index(cd.ok, cd.r)) == 49
    raw = pic_raw(cd, cd.r)
    assert raw.size == 12
    assert raw.group.invariants == (12,)


def test_pic_c12_twist(fields):
    # 2.5.ab_ac, the twist, same group
    cd = make(2, 5, [25, -5, -2, -1, 1], fields)
    raw = pic_raw(cd, cd.r)
    assert raw.group.invariants == (12,)


def test_pic_scan_and_basis_c12(fields):
    cd = make(2, 5, [25, 5, -2, 1, 1], fields)
    raw = pic_raw(cd, cd.r)
    primes, coords = pic_generator_scan(cd, raw, cd.prime_key)
    assert 1 <= len(primes) <= 2
    pic = pic_group_public(cd, cd.r, raw, primes)
    assert pic.invariants == (12,)
    assert len(pic.elements) == 12
    assert pic.elements[0].exponents == (0,)
    assert pic.elements[0].rep == cd.r.as_ideal()
    # distinct coordinates for all twelve elements
    assert len({el.coords for el in pic.elements}) == 12


def test_pic_dlog_roundtrip(fields):
    cd = make(2, 5, [25, 5, -2, 1, 1], fields)
    raw = pic_raw(cd, cd.r)
    primes, coords = pic_generator_scan(cd, raw, cd.prime_key)
    pic = pic_group_public(cd, cd.r, raw, primes)
    g = raw.group
    # dlog of rep of element j must be its coords
    for el in pic.elements[:4]:
        got = pic_dlog(cd, raw, el.rep)
        assert got == el.coords


def test_trivial_pic_suborder_q7(fields):
    # x^2 + x + 7: conductor-3 order, h(-27) = 1 and h(-3) = 1
    cd = make(1, 7, [7, 1, 1], fields)
    raw_r = pic_raw(cd, cd.r)
    raw_ok = pic_raw(cd, cd.ok)
    assert raw_r.size == 1 and raw_ok.size == 1


def test_pic_nontrivial_quadratic_order(fields):
    # x^2 - 4x + 7 has disc -12 = 2^2 (-3): Pic(Z[F]) = h(-12) = 1;
    # x^2 - 2x + 7 has disc -24: Pic(O_K) = C_2
    cd = make(1, 7, [7, -2, 1], fields)
    raw = pic_raw(cd, cd.r)
    assert raw.size == 2
    assert raw.group.invariants == (2,)
