"""Full-rank lattices, orders and fractional ideals in K.

A lattice is stored as (1/den) * rowspan(mat) over the basis B of K, with
mat a full-rank integer matrix in the fixed HNF convention and den the
least positive integer clearing all denominators (gcd(den, content) = 1).
Equality of ideals is bit-exact equality of (den, mat), which is what the
label pipeline requires.

The isomorphism test searches a*J = I by exact lattice-point enumeration
under the positive-definite form Tr(a * conj(a)).  Completeness comes from
reducing candidates into a fundamental box of the unit lattice of the
common multiplicator ring: the search radius is the AM-GM bound per
component, inflated by the certified box diameter and a slack factor.
"""

import math
from fractions import Fraction
from math import gcd, lcm

from .algebra import Elem
from .embeddings import get_embeddings, log_abs_interval
from .errors import NotAnOrder
from .intlinalg import (content, hnf, inv_fraction, lattice_index, left_kernel,
                        mat_fraction_mul, vector_in_span)


class ZLattice:
    __slots__ = ("ctx", "den", "mat", "_cache")

    def __init__(self, ctx, den, mat):
        self.ctx = ctx
        self.den = den
        self.mat = mat
        self._cache = {}

    # -- construction --------------------------------------------------------

    @classmethod
    def from_rows(cls, ctx, rows):
        """Lattice spanned by coordinate rows (Fractions over B)."""
        den = 1
        for r in rows:
            for x in r:
                den = lcm(den, Fraction(x).denominator)
        int_rows = [[int(Fraction(x) * den) for x in r] for r in rows]
        res = hnf(int_rows)
        n = ctx.dim
        if res.rank != n:
            raise ValueError("lattice is not full rank")
        mat = [list(res.H.data[i]) for i in range(n)]
        g0 = gcd(den, content(mat))
        if g0 > 1:
            den //= g0
            mat = [[x // g0 for x in r] for r in mat]
        return cls(ctx, den, tuple(tuple(r) for r in mat))

    @classmethod
    def from_elems(cls, ctx, elems):
        return cls.from_rows(ctx, [e.coords for e in elems])

    def as_ideal(self):
        return FracIdeal(self.ctx, self.den, self.mat)

    def as_order(self):
        return Order.from_lattice(self)

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, ZLattice) and self.ctx is other.ctx
                and self.den == other.den and self.mat == other.mat)

    def __hash__(self):
        return hash((self.den, self.mat))

    def __repr__(self):
        return f"{type(self).__name__}(den={self.den}, mat={self.mat})"

    def key(self):
        return (self.den, self.mat)

    def sort_key(self):
        """[d, n_1, ..., n_{g(2g+1)}]: denominator then the upper-triangular
        entries of the HNF basis, row-major."""
        n = self.ctx.dim
        tri = [self.mat[i][j] for i in range(n) for j in range(i, n)]
        return (self.den, *tri)

    # -- basic queries ----------------------------------------------------------

    def basis_fractions(self):
        d = self.den
        return [[Fraction(x, d) for x in row] for row in self.mat]

    def basis_elems(self):
        return [Elem(self.ctx, row) for row in self.basis_fractions()]

    def contains(self, elem):
        v = []
        for c in elem.coords:
            y = Fraction(c) * self.den
            if y.denominator != 1:
                return False
            v.append(int(y))
        return vector_in_span(self.mat, v)

    def contains_lattice(self, other):
        return all(self.contains(e) for e in other.basis_elems())

    # -- arithmetic ---------------------------------------------------------------

    def add(self, other):
        rows = self.basis_fractions() + other.basis_fractions()
        return FracIdeal.from_rows(self.ctx, rows)

    def intersect(self, other):
        d = lcm(self.den, other.den)
        a = [[x * (d // self.den) for x in r] for r in self.mat]
        b = [[x * (d // other.den) for x in r] for r in other.mat]
        ker = left_kernel(a + b)
        n = self.ctx.dim
        rows = []
        for z in ker:
            v = [sum(z[i] * a[i][j] for i in range(n)) for j in range(n)]
            rows.append([Fraction(x, d) for x in v])
        return FracIdeal.from_rows(self.ctx, rows)

    def mul(self, other):
        be1 = self.basis_elems()
        be2 = other.basis_elems()
        rows = [(x * y).coords for x in be1 for y in be2]
        return FracIdeal.from_rows(self.ctx, rows)

    def scal(self, elem):
        rows = [(elem * b).coords for b in self.basis_elems()]
        return FracIdeal.from_rows(self.ctx, rows)

    def scal_rational(self, r):
        r = Fraction(r)
        rows = [[x * r for x in row] for row in self.basis_fractions()]
        return FracIdeal.from_rows(self.ctx, rows)

    def pow(self, k):
        if k < 0:
            raise ValueError("negative ideal powers need an explicit inverse")
        acc = None
        base = self
        while True:
            if k & 1:
                acc = base if acc is None else acc.mul(base)
            k >>= 1
            if not k:
                break
            base = base.mul(base)
        if acc is None:
            raise ValueError("zeroth power is the coefficient order; pass k >= 1")
        return acc

    def index_in(self, other):
        """Generalized index [other : self]."""
        return lattice_index(other.mat, other.den, self.mat, self.den)

    def dual(self):
        """Trace dual {a : Tr(a * self) in Z}."""
        b = self.basis_fractions()
        d = mat_fraction_mul(b, [list(r) for r in self.ctx.gram])
        inv = inv_fraction(d)
        rows = [[inv[i][j] for i in range(len(inv))] for j in range(len(inv))]
        return FracIdeal.from_rows(self.ctx, rows)

    def colon(self, other):
        """(self : other) = {a in K : a * other <= self}."""
        ctx = self.ctx
        n = ctx.dim
        matinv = inv_fraction(self.basis_fractions())
        cols = []      # transposed: rows of C^T, one block per basis elem of other
        for j in other.basis_elems():
            mj = ctx.mult_matrix(j)
            block = mat_fraction_mul(mj, matinv)
            for col in range(n):
                cols.append([block[row][col] for row in range(n)])
        e = 1
        for r in cols:
            for x in r:
                e = lcm(e, x.denominator)
        int_rows = [[int(x * e) for x in r] for r in cols]
        res = hnf(int_rows)
        if res.rank != n:
            raise ValueError("colon ideal not full rank")
        h = [list(res.H.data[i]) for i in range(n)]
        inv_t = inv_fraction(h)
        rows = [[inv_t[i][j] * e for i in range(n)] for j in range(n)]
        return FracIdeal.from_rows(ctx, rows)

    def mult_ring(self):
        if "mult_ring" not in self._cache:
            col = self.colon(self)
            self._cache["mult_ring"] = Order(self.ctx, col.den, col.mat)
        return self._cache["mult_ring"]

    def primitive_integral(self):
        """The unique primitive integral rescaling: den 1, content 1."""
        c = content([list(r) for r in self.mat])
        mat = tuple(tuple(x // c for x in r) for r in self.mat)
        return FracIdeal(self.ctx, 1, mat)

    def component_basis(self, i):
        """Rows spanning the projection onto component i over the power basis
        of its defining polynomial (exact)."""
        from .weil import poly_divmod_exact
        ctx = self.ctx
        hi = ctx.factors[i]
        di = len(hi) - 1
        rows = []
        for e in self.basis_elems():
            power = ctx.to_power_coords(e)
            _, rem = poly_divmod_exact(power, hi)
            row = list(rem) + [Fraction(0)] * (di - len(rem) + 1)
            rows.append(row[:di])
        return rows

    def component_index_in(self, other, i):
        """Generalized index [other_i : self_i] of the component projections."""
        a = _component_hnf(other, i)
        b = _component_hnf(self, i)
        return lattice_index(a[1], a[0], b[1], b[0])


def _component_hnf(lat, i):
    rows = lat.component_basis(i)
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    int_rows = [[int(x * den) for x in r] for r in rows]
    res = hnf(int_rows)
    di = len(lat.ctx.factors[i]) - 1
    if res.rank != di:
        raise ValueError("component projection not full rank")
    return den, [list(res.H.data[k]) for k in range(di)]


class FracIdeal(ZLattice):
    __slots__ = ()


class Order(ZLattice):
    __slots__ = ()

    @classmethod
    def from_lattice(cls, lat, check=True):
        o = cls(lat.ctx, lat.den, lat.mat)
        if check:
            o.validate()
        return o

    def validate(self):
        if not self.contains(self.ctx.one):
            raise NotAnOrder("lattice does not contain 1")
        be = self.basis_elems()
        for i, x in enumerate(be):
            for y in be[i:]:
                if not self.contains(x * y):
                    raise NotAnOrder("lattice not closed under multiplication")

    def as_ideal(self):
        return FracIdeal(self.ctx, self.den, self.mat)


def frobenius_order(ctx):
    """R = Z[F, V], the Z-span of the distinguished basis."""
    n = ctx.dim
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return Order(ctx, 1, ident)


def gen_index(a, b):
    """Generalized index [a : b]."""
    return b.index_in(a)


def weak_equivalent(i1, i2):
    """1 in (I:J)(J:I): local isomorphism at every maximal ideal."""
    x = i1.colon(i2)
    y = i2.colon(i1)
    return x.mul(y).contains(i1.ctx.one)


# -- exact enumeration under the T2 form -------------------------------------


def t2_gram_bk(ctx):
    """Gram matrix of <a, b> = Tr(a * conj(b)) on the basis B (integers)."""
    if not hasattr(ctx, "_t2_gram"):
        n = ctx.dim
        conj_elems = [Elem(ctx, row) for row in ctx.conj_rows]
        gram = []
        for i in range(n):
            bi = Elem(ctx, [int(k == i) for k in range(n)])
            row = []
            for j in range(n):
                row.append(ctx.trace(bi * conj_elems[j]))
            gram.append(tuple(row))
        ctx._t2_gram = tuple(gram)
    return ctx._t2_gram


def lattice_t2_gram(lat):
    g0 = t2_gram_bk(lat.ctx)
    b = lat.basis_fractions()
    gb = mat_fraction_mul(b, [list(r) for r in g0])
    bt = [[b[j][i] for j in range(len(b))] for i in range(len(b))]
    return mat_fraction_mul(gb, bt)


def _ldl(gram):
    n = len(gram)
    l = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    a = [[Fraction(x) for x in row] for row in gram]
    for j in range(n):
        d[j] = a[j][j] - sum(l[j][k] ** 2 * d[k] for k in range(j))
        if d[j] <= 0:
            raise ArithmeticError("form not positive definite")
        for i in range(j + 1, n):
            l[i][j] = (a[i][j] - sum(l[i][k] * l[j][k] * d[k] for k in range(j))) / d[j]
    return l, d


def _int_interval(center, bound2):
    """Integers t with (t - center)^2 <= bound2, both exact Fractions."""
    if bound2 < 0:
        return range(0, 0)
    approx = math.sqrt(float(bound2)) if bound2 < Fraction(10) ** 30 else None
    if approx is None:
        num, den = bound2.numerator, bound2.denominator
        approx = math.isqrt(num // den) + 1
    lo = math.floor(float(center) - approx) - 2
    hi = math.ceil(float(center) + approx) + 2
    while (Fraction(lo) - center) ** 2 <= bound2:
        lo -= 1
    while (Fraction(lo + 1) - center) ** 2 > bound2 and lo + 1 <= hi:
        lo += 1
    while (Fraction(hi) - center) ** 2 <= bound2:
        hi += 1
    while (Fraction(hi - 1) - center) ** 2 > bound2 and hi - 1 >= lo:
        hi -= 1
    return range(lo + 1, hi)


def short_vectors(gram, radius):
    """All nonzero integer vectors x with x^T G x <= radius, up to sign
    (the first nonzero coordinate from the end is positive).  Exact."""
    n = len(gram)
    l, d = _ldl(gram)
    out = []
    x = [0] * n

    def rec(i, rem):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        center = -sum(l[j][i] * x[j] for j in range(i + 1, n))
        for t in _int_interval(center, rem / d[i]):
            if all(v == 0 for v in x[i + 1:]) and t < 0:
                continue
            x[i] = t
            rec(i - 1, rem - d[i] * (Fraction(t) - center) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(radius))
    return out


# -- unit data and the isomorphism search -------------------------------------


def min_unit_power_in(order, unit):
    """Least m >= 1 with unit^m in the order (finite: the unit has finite
    order modulo any full sublattice's conductor)."""
    cache = order._cache.setdefault("unit_powers", {})
    if unit in cache:
        return cache[unit]
    acc = unit
    m = 1
    while not (order.contains(acc) and order.contains(acc.ctx.inverse(acc))):
        acc = acc * unit
        m += 1
        if m > 10 ** 6:
            raise AssertionError("unit power search runaway")
    cache[unit] = m
    return m


def _unit_box_factors(ctx, order, unit_gens, prec=96):
    """Per-conjugate-pair multiplicative bound exp(2*rho_i) covering a
    fundamental box of the Log-lattice of units of the order."""
    table = get_embeddings(ctx, prec)
    pairs = [i for i in range(ctx.dim) if i <= table.pairing[i]]
    rho = [0.0] * len(pairs)
    for u in unit_gens:
        m = min_unit_power_in(order, u)
        pw = u ** m
        for idx, k in enumerate(pairs):
            lo, hi = log_abs_interval(ctx, table, pw, k)
            rho[idx] += max(abs(float(lo)), abs(float(hi))) / 2.0
    return pairs, [math.exp(2 * r) for r in rho]


def is_isomorphic(i1, i2, unit_gens=(), slack=1.10, prec=96):
    """Element a with i1 = a * i2, or None (certified by exhaustion).

    unit_gens: free generators of a finite-index subgroup of the unit group
    of the maximal order; required for components with infinite units.
    """
    ctx = i1.ctx
    s1 = i1.mult_ring()
    s2 = i2.mult_ring()
    if s1 != s2:
        return None
    if not weak_equivalent(i1, i2):
        return None
    cands = i1.colon(i2)
    nu_total = Fraction(1)
    nu_comp = []
    for i in range(len(ctx.factors)):
        nu = i1.component_index_in(i2, i)
        nu_comp.append(nu)
        nu_total *= nu
    table = get_embeddings(ctx, prec)
    pairs, box = _unit_box_factors(ctx, s1, unit_gens, prec)
    radius_f = 0.0
    for idx, k in enumerate(pairs):
        c = table.component[k]
        deg = len(ctx.factors[c]) - 1
        radius_f += float(nu_comp[c]) ** (2.0 / deg) * box[idx]
    radius_f *= 2.0 * float(slack)
    radius = Fraction(math.ceil(radius_f * 2 ** 16), 2 ** 16)
    gram = lattice_t2_gram(cands)
    basis = cands.basis_fractions()
    n = ctx.dim
    for vec in short_vectors(gram, radius):
        coords = [sum(Fraction(vec[i]) * basis[i][j] for i in range(n))
                  for j in range(n)]
        a = Elem(ctx, coords)
        if abs(ctx.norm(a)) != nu_total:
            continue
        if i2.scal(a) == i1:
            return a
    return None
