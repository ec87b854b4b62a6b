"""Picard groups of the overorders: presentation through the conductor
exact sequence, certified by explicit principality searches, then the
public generator scan, basis and element order.

For an overorder S with conductor f = (S : O_K), Pic(S) sits in

    1 -> O_K^x / S^x -> (O_K/f)^x / (S/f)^x -> Pic(S) -> Pic(O_K) -> 1.

The middle groups are finite rings handled exactly; Pic(O_K) comes from the
ingested per-field class groups.  Every relation row of the resulting
presentation is certified by an exact isomorphism search, and the group
order is checked against the cardinality identity of the sequence.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GenerationFailure, NotInvertible
from .groups import FinAbGroup, close_unit_group, coset_representatives
from .intlinalg import inv_fraction, mat_fraction_mul, reduce_mod_hnf
from .lattices import FracIdeal, gen_index, is_isomorphic, lattice_t2_gram, short_vectors
from .spectrum import is_invertible_ideal, maximal_ideals_above


@dataclass
class RawPic:
    order: object
    group: FinAbGroup
    gen_ideals: list              # concrete invertible S-ideals
    size: int
    reps: dict                    # coords -> representative FracIdeal


@dataclass
class PicElem:
    j: int                        # 1-based position in lexicographic order
    exponents: tuple
    coords: tuple                 # abstract coordinates in the raw group
    rep: object                   # distinguished representative ideal


@dataclass
class PicGroup:
    order: object
    raw: RawPic
    invariants: tuple             # m_1 | m_2 | ... (nontrivial)
    basis: list                   # [(coords, L_i ideal, word over P)], i asc
    elements: list                # PicElem in label order
    p_images: dict                # index into P -> coords

    @property
    def size(self):
        return self.raw.size


class _QuotientRing:
    """O_K / f with canonical coset keys and exact unit tests."""

    def __init__(self, ok_order, f_lat):
        self.ok = ok_order
        self.f = f_lat
        self.ctx = ok_order.ctx
        self.hnf, self.reps = coset_representatives(f_lat, ok_order)
        self.ok_basis = ok_order.basis_fractions()
        self._okinv = inv_fraction(self.ok_basis)
        self._unit_cache = {}

    def key_of_elem(self, elem):
        coords = mat_fraction_mul([list(elem.coords)], self._okinv)[0]
        ints = []
        for c in coords:
            if Fraction(c).denominator != 1:
                raise ValueError("element not in O_K")
            ints.append(int(c))
        return reduce_mod_hnf(self.hnf, ints)

    def lift(self, key):
        from .algebra import Elem
        n = self.ctx.dim
        coords = [sum(Fraction(key[i]) * self.ok_basis[i][j] for i in range(n))
                  for j in range(n)]
        return Elem(self.ctx, coords)

    def mul_key(self, a, b):
        return self.key_of_elem(self.lift(a) * self.lift(b))

    def is_unit(self, key):
        if key in self._unit_cache:
            return self._unit_cache[key]
        x = self.lift(key)
        ok = self.ok.as_ideal()
        res = ok.scal(x).add(self.f) == ok if not x.is_zero() else False
        self._unit_cache[key] = res
        return res

    def unit_keys(self):
        return [k for k in map(tuple, self.reps) if self.is_unit(k)]


def _ideal_power_signed(order, ideal, e):
    if e == 0:
        return order.as_ideal()
    base = ideal if e > 0 else order.colon(ideal)
    return base.pow(abs(e))


def _product_ideal(order, gen_ideals, exponents):
    acc = order.as_ideal()
    for ideal, e in zip(gen_ideals, exponents):
        if e:
            acc = acc.mul(_ideal_power_signed(order, ideal, e))
    return acc


def _certify_principal(order, ideal, unit_gens):
    got = is_isomorphic(ideal.primitive_integral(), order.as_ideal(),
                        unit_gens=unit_gens)
    return got is not None


def _coprime_representative(ok_order, ideal, f_lat):
    """x * ideal integral and coprime to f, by increasing T2 over ideal^-1."""
    ok = ok_order.as_ideal()
    inv = ok_order.colon(ideal)
    gram = lattice_t2_gram(inv)
    basis = inv.basis_fractions()
    n = ok_order.ctx.dim
    radius = Fraction(2 * n)
    from .algebra import Elem
    for _ in range(40):
        for vec in short_vectors(gram, radius):
            coords = [sum(Fraction(vec[i]) * basis[i][j] for i in range(n))
                      for j in range(n)]
            x = Elem(ok_order.ctx, coords)
            if ok_order.ctx.norm(x) == 0:
                continue
            moved = ideal.scal(x)
            if not ok.contains_lattice(moved):
                continue
            if moved.add(f_lat) == ok:
                return moved
        radius *= 4
    raise GenerationFailure("no conductor-coprime representative found")


def pic_raw(class_data, order):
    """Presentation of Pic(S) through the conductor sequence, certified."""
    ctx = class_data.ctx
    ok = class_data.ok
    unit_gens = class_data.fund_units
    f = order.colon(ok.as_ideal())
    s_ideal = order.as_ideal()

    cl_gens = []                 # (ideal of O_K coprime to f, order m)
    for ideal, m in class_data.class_group_gens:
        moved = _coprime_representative(ok, ideal, f)
        cl_gens.append((moved, m))

    trivial_quotient = (f == ok.as_ideal())
    if trivial_quotient:
        c_rel_basis = []
        a_gen_count = 0
        words_of = None
        quot = None
        s_units = 0
        unit_index = 1
        a_size = 1
    else:
        quot = _QuotientRing(ok, f)
        units = sorted(quot.unit_keys())
        ua = close_unit_group(quot.key_of_elem(ctx.one), units, quot.mul_key)
        a_gen_count = len(ua.gens)
        ga = ua.group
        # subgroup B: units of S/f and images of the global units of O_K
        b_words = []
        s_unit_count = 0
        for key in units:
            if order.contains(quot.lift(key)):
                s_unit_count += 1
                b_words.append(list(ua.words[key]))
        global_imgs = []
        for u in class_data.torsion_units + class_data.fund_units:
            key = quot.key_of_elem(u)
            if not quot.is_unit(key):
                raise AssertionError("unit not coprime to the conductor")
            global_imgs.append(ua.words[key])
            b_words.append(list(ua.words[key]))
        # [O_K^x : S^x] = |im(O_K^x)| / |im(O_K^x) meet (S/f)^x|: the kernel
        # of O_K^x -> (O_K/f)^x consists of units = 1 mod f, all inside S
        uspan = ga.subgroup_span([ga.coords(w) for w in global_imgs]
                                 or [ga.zero()])
        u_img_size = ga.subgroup_order(uspan)
        inter = 0
        for key in units:
            if order.contains(quot.lift(key)) and \
                    ga.in_span(uspan, ua.table[key]):
                inter += 1
        if inter == 0 or u_img_size % inter:
            raise AssertionError("unit image intersection not a subgroup index")
        unit_index = u_img_size // inter
        s_units = s_unit_count
        a_size = len(units)
        from .intlinalg import hnf as _hnf
        stacked = [list(r) for r in ua.rel_rows] + b_words
        res = _hnf([r + [0] * (a_gen_count - len(r)) for r in stacked])
        c_rel_basis = [list(res.H.data[i]) for i in range(a_gen_count)]
        words_of = ua

    # generators: J-ideals for the A-generators, then lifted class-group gens
    j_ideals = []
    if not trivial_quotient:
        for gkey in words_of.gens:
            a = quot.lift(gkey)
            j_ideals.append(ok.as_ideal().scal(a).intersect(s_ideal))
    l_ideals = []
    for moved, m in cl_gens:
        li = moved.intersect(s_ideal)
        if not is_invertible_ideal(order, li):
            raise NotInvertible("class-group lift is not invertible")
        l_ideals.append(li)

    k = len(j_ideals)
    t = len(l_ideals)
    rows = []
    for lam in c_rel_basis:
        rows.append(list(lam) + [0] * t)
    gamma_words = []
    for idx, (moved, m) in enumerate(cl_gens):
        power = moved.pow(m)
        gamma = is_isomorphic(power.primitive_integral(), ok.as_ideal(),
                              unit_gens=unit_gens)
        if gamma is None:
            raise GenerationFailure("class-group generator order not witnessed")
        # power.primitive = gamma * O_K; rescale gamma to the literal power
        scale = _rescale_factor(power)
        gamma = gamma * scale
        if trivial_quotient:
            row = [0] * k
        else:
            gk = quot.key_of_elem(gamma)
            if not quot.is_unit(gk):
                raise AssertionError("gamma not coprime to the conductor")
            row = [-w for w in words_of.words[gk]]
        gamma_words.append(row)
        rows.append(row + [m * int(i == idx) for i in range(t)])

    total = k + t
    if total == 0:
        group = FinAbGroup(1, [[1]])
        gen_ideals = [s_ideal]
    else:
        group = FinAbGroup(total, rows)
        gen_ideals = j_ideals + l_ideals

    # cardinality identity of the exact sequence
    cl_size = 1
    for _ideal, m in class_data.class_group_gens:
        cl_size *= m
    expected = cl_size * a_size
    denom = s_units * unit_index if s_units else 1
    if not trivial_quotient:
        if expected % denom:
            raise AssertionError("exact-sequence identity fails (divisibility)")
        expected //= denom
    if group.order != expected:
        raise AssertionError(
            f"exact-sequence identity fails: presentation {group.order}, "
            f"formula {expected}")

    # certify every relation row as an actual principality
    for row in rows:
        if not any(row):
            continue
        prod = _product_ideal(order, gen_ideals, row) if total else s_ideal
        if not _certify_principal(order, prod, unit_gens):
            raise AssertionError("uncertified Picard relation")

    raw = RawPic(order=order, group=group, gen_ideals=gen_ideals,
                 size=group.order, reps={})
    _build_reps(raw)
    return raw


def _rescale_factor(lat):
    """Rational factor carrying lat.primitive_integral() back to lat."""
    c = 1
    from .intlinalg import content
    c = content([list(r) for r in lat.mat])
    return Fraction(c, lat.den)


def _build_reps(raw):
    group = raw.group
    order = raw.order
    qinv = inv_fraction([list(r) for r in group.q])
    for coords in group.elements():
        expo = mat_fraction_mul([list(coords)], qinv)[0]
        expo = [int(x) for x in expo]
        expo = [e % max(group.order_of(group.coords(_unit(group.k, i))), 1)
                if group.k else 0
                for i, e in enumerate(expo)]
        # reduce exponents modulo the order of each generator's class
        ideal = _product_ideal(order, raw.gen_ideals[:group.k], expo) \
            if len(raw.gen_ideals) >= group.k else order.as_ideal()
        raw.reps[coords] = ideal
    raw.reps[group.zero()] = order.as_ideal()


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def pic_dlog(class_data, raw, ideal):
    """Coordinates of the class of an invertible ideal, by certified
    exhaustive comparison against representative ideals."""
    if not is_invertible_ideal(raw.order, ideal):
        raise NotInvertible("ideal is not invertible over its order")
    target = ideal.primitive_integral()
    for coords, rep in raw.reps.items():
        if is_isomorphic(target, rep.primitive_integral(),
                         unit_gens=class_data.fund_units) is not None:
            return coords
    raise GenerationFailure("discrete log not found in Pic")


def pic_generator_scan(class_data, raw_r, key_fn, max_norm=10 ** 4):
    """The global generator set P: invertible maximal ideals of R, scanned
    by (norm, sort key), keeping those that enlarge the generated subgroup."""
    r_order = raw_r.order
    group = raw_r.group
    chosen = []
    chosen_coords = []
    span = group.subgroup_span([group.zero()])
    if group.subgroup_order(span) == raw_r.size:
        return chosen, chosen_coords
    norm = 2
    while norm <= max_norm:
        cands = []
        for p in _primes_upto(norm):
            if p > norm:
                continue
            for pr in maximal_ideals_above(r_order, p):
                if pr.norm != norm:
                    continue
                if not is_invertible_ideal(r_order, pr.lattice):
                    continue
                cands.append(pr)
        cands.sort(key=key_fn)
        for pr in cands:
            coords = pic_dlog(class_data, raw_r, pr.lattice)
            if group.in_span(span, coords):
                continue
            chosen.append(pr)
            chosen_coords.append(coords)
            span = group.subgroup_span(chosen_coords)
            if group.subgroup_order(span) == raw_r.size:
                return chosen, chosen_coords
        norm += 1
    raise GenerationFailure("generator scan exhausted the norm budget")


def _primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def pic_group_public(class_data, order, raw, p_primes):
    """The §-style public data: images of P, basis with ideals, elements."""
    group = raw.group
    s_ideal = order.as_ideal()
    p_ideals = []
    p_coords = []
    for pr in p_primes:
        ext = pr.lattice.mul(s_ideal)
        p_ideals.append(ext)
        p_coords.append(pic_dlog(class_data, raw, ext))
    invariants = group.invariants
    k = len(invariants)
    basis = []
    if k:
        exponent = invariants[-1]
        span_h = group.subgroup_span([group.zero()])
        taken = []
        for i in range(k - 1, -1, -1):
            m_i = invariants[i]
            got = None
            for vec in _graded_lex_vectors(len(p_ideals), exponent):
                c = group.zero()
                for idx, e in enumerate(vec):
                    c = group.add(c, group.scale(p_coords[idx], e))
                if group.order_of(c) != m_i:
                    continue
                if group.order_in_quotient(c, span_h) != m_i:
                    continue
                got = (c, vec)
                break
            if got is None:
                raise GenerationFailure("no basis product of the right order")
            c, vec = got
            ideal = _p_power_product(order, p_ideals, vec)
            basis.append((c, ideal, tuple(vec)))
            taken.append(c)
            span_h = group.subgroup_span(taken)
        basis.reverse()           # basis[i] has order invariants[i]
    elements = []
    seen = set()
    j = 0
    for expo in _lex_exponents([inv for inv in invariants]):
        j += 1
        c = group.zero()
        for (bc, _ideal, _w), e in zip(basis, expo):
            c = group.add(c, group.scale(bc, e))
        rep = s_ideal
        for (_bc, ideal, _w), e in zip(basis, expo):
            for _ in range(e):
                rep = rep.mul(ideal)
        elements.append(PicElem(j=j, exponents=tuple(expo), coords=c, rep=rep))
        seen.add(c)
    if len(seen) != raw.size:
        raise AssertionError("basis enumeration does not cover Pic")
    return PicGroup(order=order, raw=raw, invariants=invariants, basis=basis,
                    elements=elements,
                    p_images={i: c for i, c in enumerate(p_coords)})


def _p_power_product(order, p_ideals, vec):
    acc = order.as_ideal()
    for ideal, e in zip(p_ideals, vec):
        for _ in range(e):
            acc = acc.mul(ideal)
    return acc


def _graded_lex_vectors(n, bound):
    """Exponent vectors over [0, bound)^n in graded lexicographic order."""
    if n == 0:
        return
    total = 0
    while total <= n * (bound - 1):
        for vec in _fixed_sum_vectors(n, total, bound - 1):
            yield vec
        total += 1


def _fixed_sum_vectors(n, total, cap):
    # plain lexicographic order (first exponent most significant) inside a
    # fixed total degree
    if n == 1:
        if total <= cap:
            yield [total]
        return
    for first in range(0, min(total, cap) + 1):
        for rest in _fixed_sum_vectors(n - 1, total - first, cap):
            yield [first] + rest
    return


def _lex_exponents(moduli):
    if not moduli:
        yield ()
        return

    def rec(i, cur):
        if i == len(moduli):
            yield tuple(cur)
            return
        for v in range(moduli[i]):
            cur.append(v)
            yield from rec(i + 1, cur)
            cur.pop()
    yield from rec(0, [])


def pic_element_for(pic, coords):
    for el in pic.elements:
        if el.coords == coords:
            return el
    raise GenerationFailure("coords missing from the element list")


def pic_map_coords(pic_s, pic_t, coords):
    """Image of an element of Pic(S) in Pic(T) through the P-word basis."""
    el = pic_element_for(pic_s, coords)
    out = pic_t.raw.group.zero()
    for (bc, _ideal, word), e in zip(pic_s.basis, el.exponents):
        for idx, w in enumerate(word):
            img = pic_t.p_images[idx]
            out = pic_t.raw.group.add(out, pic_t.raw.group.scale(img, w * e))
    return out
