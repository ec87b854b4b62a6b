"""Ingestion of per-field fixture data: defining polynomial, integral
basis, discriminant, class group and unit group.

The pipeline never computes maximal orders, class groups or unit groups
from scratch; it loads them from YAML documents and validates every
invariant that is cheap to check exactly (ring closure, discriminant,
torsion order, unit independence, and a reduced-forms class-number
cross-check for quadratic fields).
"""

import os
from dataclasses import dataclass
from fractions import Fraction

import yaml

from .errors import (DiscriminantCheckFailed, FieldDataMismatch, MissingFieldData,
                     NotAnOrder, ParseError, ValidationError)
from .intlinalg import det_int, hnf, inv_fraction, mat_fraction_mul, vector_in_span
from .lattices import Order, ZLattice, frobenius_order, gen_index
from .quadforms import class_number
from .weil import poly_deg, poly_trim


@dataclass(frozen=True)
class FieldData:
    poly: tuple                  # ascending coefficients, monic
    disc: int
    integral_basis: tuple        # rows of Fractions over the power basis
    class_invariants: tuple      # m_1 | m_2 | ...
    class_gens: tuple            # ((p, coords over integral basis), m) pairs
    torsion_order: int
    torsion_gen: tuple           # coords over the integral basis
    fund_units: tuple            # tuples of coords over the integral basis

    @property
    def degree(self):
        return poly_deg(self.poly)


# -- standalone arithmetic in Q[y]/poly ---------------------------------------

class _PowerAlgebra:
    def __init__(self, poly):
        self.poly = poly
        self.n = poly_deg(poly)
        rows = [[Fraction(int(i == k)) for i in range(self.n)]
                for k in range(self.n)]
        cur = list(rows[-1])
        for _ in range(self.n - 1):
            shifted = [Fraction(0)] + cur[:]
            top = shifted.pop()
            if top:
                for j in range(self.n):
                    shifted[j] -= top * poly[j]
            cur = shifted
            rows.append(cur)
        self.xpow = rows

    def mul(self, a, b):
        n = self.n
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        row = self.xpow[i + j]
                        for k in range(n):
                            if row[k]:
                                out[k] += x * y * row[k]
        return out

    def mult_matrix(self, a):
        n = self.n
        return [self.mul([Fraction(int(i == k)) for i in range(n)], a)
                for k in range(n)]

    def trace(self, a):
        m = self.mult_matrix(a)
        return sum(m[i][i] for i in range(self.n))

    def norm(self, a):
        from .algebra import _det_fraction
        return _det_fraction(self.mult_matrix(a))


def _parse_fraction(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ParseError(f"expected an integer or a fraction string, got {x!r}")


def load_field_data(path):
    """Parse and validate one fixture document."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: document is not a mapping")
    try:
        poly = poly_trim(tuple(int(c) for c in doc["poly"]))
        disc = int(doc["disc"])
        basis = tuple(tuple(_parse_fraction(x) for x in row)
                      for row in doc["integral_basis"])
        cg = doc.get("class_group", {}) or {}
        invariants = tuple(int(m) for m in cg.get("invariants", []))
        gens_raw = cg.get("generators", [])
        units = doc.get("units", {}) or {}
        torsion_order = int(units.get("torsion_order", 2))
        torsion_gen = tuple(int(x) for x in units.get("torsion_generator"))
        fund = tuple(tuple(int(x) for x in u)
                     for u in units.get("fundamental", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    gens = []
    for spec, m in zip(gens_raw, invariants):
        gens.append(((int(spec["p"]), tuple(int(x) for x in spec["coords"])), m))
    fd = FieldData(poly=poly, disc=disc, integral_basis=basis,
                   class_invariants=invariants, class_gens=tuple(gens),
                   torsion_order=torsion_order, torsion_gen=torsion_gen,
                   fund_units=fund)
    validate_field_data(fd, source=path)
    return fd


def validate_field_data(fd, source="<fixture>"):
    n = fd.degree
    if fd.poly[-1] != 1 or n < 1:
        raise ValidationError(f"{source}: defining polynomial must be monic")
    if len(fd.integral_basis) != n or any(len(r) != n for r in fd.integral_basis):
        raise ValidationError(f"{source}: integral basis must be {n}x{n}")
    alg = _PowerAlgebra(fd.poly)
    rows = [list(r) for r in fd.integral_basis]
    from math import lcm
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    int_rows = [[int(x * den) for x in r] for r in rows]
    res = hnf(int_rows)
    if res.rank != n:
        raise ValidationError(f"{source}: integral basis is singular")
    hmat = [list(res.H.data[i]) for i in range(n)]

    def in_span(vec):
        scaled = []
        for x in vec:
            y = Fraction(x) * den
            if y.denominator != 1:
                return False
            scaled.append(int(y))
        return vector_in_span(hmat, scaled)

    one = [Fraction(int(i == 0)) for i in range(n)]
    if not in_span(one):
        raise NotAnOrder(f"{source}: basis does not contain 1")
    for k in range(n):
        if not in_span([Fraction(int(i == k)) for i in range(n)]):
            raise NotAnOrder(f"{source}: basis does not contain the power order")
    for i in range(n):
        for j in range(i, n):
            if not in_span(alg.mul(rows[i], rows[j])):
                raise NotAnOrder(f"{source}: basis not closed under products")
    gram = [[alg.trace(alg.mul(rows[i], rows[j])) for j in range(n)]
            for i in range(n)]
    for r in gram:
        for x in r:
            if Fraction(x).denominator != 1:
                raise ValidationError(f"{source}: trace form not integral")
    if det_int([[int(x) for x in r] for r in gram]) != fd.disc:
        raise DiscriminantCheckFailed(
            f"{source}: Gram determinant does not match the stated disc")
    for a, b in zip(fd.class_invariants, fd.class_invariants[1:]):
        if a < 1 or b % a:
            raise ValidationError(f"{source}: invariants not in divisibility order")
    if len(fd.class_gens) != len(fd.class_invariants):
        raise ValidationError(f"{source}: one generator per invariant factor")
    # torsion generator: exact order
    tg = _embed_int_basis(fd, alg, fd.torsion_gen)
    if _elem_order(alg, tg, fd.torsion_order) != fd.torsion_order:
        raise ValidationError(f"{source}: torsion generator order mismatch")
    for u in fd.fund_units:
        uu = _embed_int_basis(fd, alg, u)
        if abs(alg.norm(uu)) != 1:
            raise ValidationError(f"{source}: fundamental unit has |norm| != 1")
    _check_unit_independence(fd, alg, source)
    if n == 2 and abs(fd.disc) <= 10 ** 6:
        h = 1
        for m in fd.class_invariants:
            h *= m
        if fd.disc < 0 and class_number(fd.disc) != h:
            raise ValidationError(
                f"{source}: reduced-forms oracle disagrees with class number")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _embed_int_basis(fd, alg, coords):
    n = fd.degree
    out = [Fraction(0)] * n
    for c, row in zip(coords, fd.integral_basis):
        for j in range(n):
            out[j] += Fraction(c) * row[j]
    return out


def _elem_order(alg, elem, cap):
    one = [Fraction(int(i == 0)) for i in range(alg.n)]
    acc = list(elem)
    k = 1
    while acc != one:
        acc = alg.mul(acc, elem)
        k += 1
        if k > cap:
            return None
    return k


def _check_unit_independence(fd, alg, source):
    """Log-rank of the fundamental units at certified working precision."""
    if not fd.fund_units:
        return
    import mpmath as mp
    with mp.workprec(128):
        desc = [mp.mpf(c) for c in reversed(fd.poly)]
        roots = mp.polyroots(desc, maxsteps=200, extraprec=128)
        # one column per embedding up to conjugation
        cols = []
        used = []
        for r in roots:
            if any(abs(mp.conj(r) - s) < 1e-20 for s in used):
                continue
            used.append(r)
            cols.append(r)
        mat = []
        for u in fd.fund_units:
            vec = _embed_int_basis(fd, alg, u)
            row = []
            for r in cols:
                val = sum(mp.mpf(c.numerator) / mp.mpf(c.denominator) * r ** k
                          for k, c in enumerate(vec))
                row.append(mp.log(abs(val)))
            mat.append(row)
        r = len(mat)
        # Gram determinant bounded away from zero
        gram = [[sum(mat[i][k] * mat[j][k] for k in range(len(cols)))
                 for j in range(r)] for i in range(r)]
        det = mp.det(mp.matrix(gram))
        if abs(det) < mp.mpf(10) ** (-10):
            raise ValidationError(
                f"{source}: fundamental units not independent at working precision")


def load_field_directory(path):
    """All fixtures in a directory, indexed by defining polynomial."""
    out = {}
    for name in sorted(os.listdir(path)):
        if not name.endswith(".yaml"):
            continue
        fd = load_field_data(os.path.join(path, name))
        out[fd.poly] = fd
    return out


def bundled_field_dir():
    return os.path.join(os.path.dirname(__file__), "data", "fields")


# -- maximal order assembly ------------------------------------------------------


def maximal_order(ctx, field_data_by_poly):
    """O_K as the direct sum of the ingested maximal orders through the
    component idempotents; validates ring closure and both discriminant
    identities."""
    rows = []
    per_component = []
    for i, fac in enumerate(ctx.factors):
        fd = field_data_by_poly.get(fac)
        if fd is None:
            raise MissingFieldData(f"no fixture for factor {fac}")
        if fd.poly != fac:
            raise FieldDataMismatch("fixture polynomial mismatch")
        per_component.append(fd)
        e = ctx.idempotents[i]
        fpows = [ctx.one]
        for _ in range(fd.degree - 1):
            fpows.append(fpows[-1] * ctx.F)
        for brow in fd.integral_basis:
            elem = ctx.zero
            for c, fp in zip(brow, fpows):
                elem = elem + fp * c
            rows.append((elem * e).coords)
    try:
        ok = Order.from_lattice(ZLattice.from_rows(ctx, rows))
    except NotAnOrder:
        raise
    r = frobenius_order(ctx)
    if not ok.contains_lattice(r):
        raise NotAnOrder("maximal order does not contain the Frobenius order")
    disc_prod = 1
    for fd in per_component:
        disc_prod *= fd.disc
    gram = _order_gram_det(ok)
    if gram != disc_prod:
        raise DiscriminantCheckFailed(
            f"disc(O_K) = {gram} but fixtures give {disc_prod}")
    # disc(h) = [O_K : Z[F]]^2 * disc(O_K)
    n = ctx.dim
    zf_rows = [(ctx.F ** k).coords for k in range(n)]
    zf = ZLattice.from_rows(ctx, zf_rows)
    idx = gen_index(ok, zf)
    disc_h = _poly_disc_via_power_order(ctx)
    if idx.denominator != 1 or int(idx) ** 2 * gram != disc_h:
        raise DiscriminantCheckFailed(
            "conductor-discriminant identity fails for the ingested basis")
    return ok, per_component


def _order_gram_det(order):
    be = order.basis_elems()
    n = len(be)
    gram = [[order.ctx.trace(be[i] * be[j]) for j in range(n)] for i in range(n)]
    det = det_int([[int(x) for x in row] for row in gram])
    return det


def _poly_disc_via_power_order(ctx):
    n = ctx.dim
    pows = [ctx.one]
    for _ in range(n - 1):
        pows.append(pows[-1] * ctx.F)
    gram = [[ctx.trace(pows[i] * pows[j]) for j in range(n)] for i in range(n)]
    return det_int([[int(x) for x in row] for row in gram])
