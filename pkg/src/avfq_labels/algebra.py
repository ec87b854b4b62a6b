"""The etale algebra K = Q[x]/h(x) of an isogeny class.

Elements are stored as coordinate vectors over the distinguished basis
B = (V^(g-1), ..., V, 1, F, ..., F^g) where F is the class of x and
V = q/F; every sort key in the labeling scheme reads coordinates over this
basis, so no other representation escapes this module.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .intlinalg import inv_fraction, mat_fraction_mul
from .weil import (WeilInput, factor_weil, parse_weil, poly_deg, poly_divmod_exact,
                   poly_int_div, poly_mul, poly_trim)


def poly_xgcd_q(a, b):
    """Extended gcd over Q: (g, s, t) with s*a + t*b = g, g monic."""
    a = tuple(Fraction(x) for x in poly_trim(a))
    b = tuple(Fraction(x) for x in poly_trim(b))
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), (Fraction(0),)
    t0, t1 = (Fraction(0),), (Fraction(1),)
    while r1 != (Fraction(0),) and r1 != (0,):
        q, r = poly_divmod_exact(r0, r1)
        r0, r1 = r1, poly_trim(r)
        s0, s1 = s1, poly_trim(_poly_sub(s0, poly_mul(q, s1)))
        t0, t1 = t1, poly_trim(_poly_sub(t0, poly_mul(q, t1)))
    lead = r0[-1]
    return (tuple(x / lead for x in r0),
            tuple(x / lead for x in s0),
            tuple(x / lead for x in t0))


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


class Elem:
    """Element of K as coordinates over the basis B."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = tuple(Fraction(c) for c in coords)

    def __eq__(self, other):
        return isinstance(other, Elem) and self.coords == other.coords \
            and self.ctx is other.ctx

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Elem{self.coords}"

    def __add__(self, other):
        return Elem(self.ctx, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return Elem(self.ctx, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Elem(self.ctx, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Elem):
            return self.ctx.mul(self, other)
        return Elem(self.ctx, [a * Fraction(other) for a in self.coords])

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.ctx.inverse(self) ** (-n)
        acc = self.ctx.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def conj(self):
        return self.ctx.conj(self)

    def trace(self):
        return self.ctx.trace(self)

    def norm(self):
        return self.ctx.norm(self)


class AlgebraContext:
    """Immutable arithmetic context for K; build with :func:`build_algebra`."""

    def __init__(self, weil, factors):
        self.weil = weil
        self.g = weil.g
        self.q = weil.q
        self.p = weil.p
        self.dim = 2 * weil.g
        self.h = weil.coeffs
        self.factors = factors
        self._build_power_tables()
        self._build_basis()
        self._build_mult_table()
        self._build_conj_and_trace()
        self._build_idempotents()
        self._embedding_cache = {}

    # -- construction -------------------------------------------------------

    def _build_power_tables(self):
        n = self.dim
        h = self.h
        # x^k over the power basis for k = 0 .. 2n-2, reduced mod h
        rows = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
        cur = list(rows[-1])
        for _ in range(n - 1):
            shifted = [Fraction(0)] + cur[:]
            top = shifted.pop()
            if top:
                for j in range(n):
                    shifted[j] -= top * h[j]
            cur = shifted
            rows.append(list(cur))
        self._xpow = [tuple(r) for r in rows]

    def power_mul(self, a, b):
        """Product in the power basis (coordinate tuples, ascending)."""
        n = self.dim
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        row = self._xpow[i + j]
                        for k in range(n):
                            if row[k]:
                                out[k] += x * y * row[k]
        return tuple(out)

    def _build_basis(self):
        n = self.dim
        g = self.g
        one = tuple(Fraction(int(i == 0)) for i in range(n))
        x = tuple(Fraction(int(i == 1)) for i in range(n))
        # F^{-1} = -(c_1 + c_2 x + ... + c_{2g} x^{2g-1}) / c_0
        c0 = self.h[0]
        finv = tuple(Fraction(-self.h[k + 1], c0) for k in range(n))
        v = tuple(self.q * t for t in finv)
        bk = []
        pw = one
        vpows = [one]
        for _ in range(g - 1):
            pw = self.power_mul(pw, v)
            vpows.append(pw)
        for k in range(g - 1, 0, -1):
            bk.append(vpows[k])
        bk.append(one)
        fp = one
        for _ in range(g):
            fp = self.power_mul(fp, x)
            bk.append(fp)
        self.bk_power_rows = tuple(bk)          # B_i over the power basis
        self._power_from_bk = [list(r) for r in bk]
        self._bk_from_power = inv_fraction(self._power_from_bk)
        self.one = Elem(self, [int(i == g - 1) for i in range(n)])
        self.F = Elem(self, [int(i == g) for i in range(n)])
        self.V = self.from_power_coords(v)

    def from_power_coords(self, coords):
        row = mat_fraction_mul([list(coords)], self._bk_from_power)[0]
        return Elem(self, row)

    def to_power_coords(self, elem):
        return tuple(mat_fraction_mul([list(elem.coords)], self._power_from_bk)[0])

    def _build_mult_table(self):
        n = self.dim
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = self.power_mul(self.bk_power_rows[i], self.bk_power_rows[j])
                coords = mat_fraction_mul([list(prod)], self._bk_from_power)[0]
                if any(c.denominator != 1 for c in coords):
                    raise AssertionError("basis products must have integer coordinates")
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        self.mult_table = tuple(table)

    def _build_conj_and_trace(self):
        n, g = self.dim, self.g
        # conj swaps F and V; images of basis elements lie in the span of B
        conj_rows = []
        f_img = [self.V ** k for k in range(g + 1)]      # conj(F^k)
        v_img = [self.F ** k for k in range(g)]          # conj(V^k)
        for k in range(g - 1, 0, -1):
            conj_rows.append(v_img[k].coords)
        conj_rows.append(self.one.coords)
        for k in range(1, g + 1):
            conj_rows.append(f_img[k].coords)
        if any(c.denominator != 1 for row in conj_rows for c in row):
            raise AssertionError("conjugation must preserve the basis span")
        self.conj_rows = tuple(tuple(int(c) for c in row) for row in conj_rows)
        # traces of basis elements: Tr(B_i) = trace of multiplication matrix
        tr = []
        for i in range(n):
            tr.append(sum(self.mult_table[j][i][j] for j in range(n)))
        self.trace_bk = tuple(tr)
        self.gram = tuple(
            tuple(sum(self.mult_table[i][j][k] * tr[k] for k in range(n))
                  for j in range(n))
            for i in range(n))

    def _build_idempotents(self):
        idems = []
        for hi in self.factors:
            if len(self.factors) == 1:
                idems.append(self.one)
                break
            big = poly_int_div(self.h, hi)
            gcd_, s, _t = poly_xgcd_q(big, hi)
            if poly_deg(gcd_) != 0:
                raise AssertionError("factors not coprime")
            e = poly_mul(s, big)
            _, e = poly_divmod_exact(e, self.h)
            e = tuple(e) + (Fraction(0),) * (self.dim - len(e))
            idems.append(self.from_power_coords(e[:self.dim]))
        self.idempotents = tuple(idems)
        acc = self.idempotents[0]
        for e in self.idempotents[1:]:
            acc = acc + e
        if acc != self.one:
            raise AssertionError("idempotents must sum to 1")
        for i in range(len(idems)):
            for j in range(len(idems)):
                prod = idems[i] * idems[j]
                want = idems[i] if i == j else self.zero
                if prod != want:
                    raise AssertionError("idempotents not orthogonal")

    # -- element operations ---------------------------------------------------

    @property
    def zero(self):
        return Elem(self, [0] * self.dim)

    def elem(self, coords):
        return Elem(self, coords)

    def mul(self, a, b):
        n = self.dim
        out = [Fraction(0)] * n
        ac, bc = a.coords, b.coords
        tbl = self.mult_table
        for i in range(n):
            x = ac[i]
            if x:
                ti = tbl[i]
                for j in range(n):
                    y = bc[j]
                    if y:
                        row = ti[j]
                        xy = x * y
                        for k in range(n):
                            if row[k]:
                                out[k] += xy * row[k]
        return Elem(self, out)

    def conj(self, a):
        n = self.dim
        out = [Fraction(0)] * n
        for i, x in enumerate(a.coords):
            if x:
                row = self.conj_rows[i]
                for k in range(n):
                    if row[k]:
                        out[k] += x * row[k]
        return Elem(self, out)

    def trace(self, a):
        return sum(x * t for x, t in zip(a.coords, self.trace_bk))

    def mult_matrix(self, a):
        """Rows i = coordinates of B_i * a."""
        n = self.dim
        rows = []
        for i in range(n):
            out = [Fraction(0)] * n
            for j, y in enumerate(a.coords):
                if y:
                    row = self.mult_table[i][j]
                    for k in range(n):
                        if row[k]:
                            out[k] += y * row[k]
            rows.append(out)
        return rows

    def norm(self, a):
        return _det_fraction(self.mult_matrix(a))

    def inverse(self, a):
        m = self.mult_matrix(a)
        try:
            inv = inv_fraction(m)
        except ZeroDivisionError:
            raise ZeroDivisionError("element is a zero divisor") from None
        row = mat_fraction_mul([list(self.one.coords)], inv)[0]
        return Elem(self, row)

    def component_project(self, a, i):
        """a * e_i, the projection onto the i-th component."""
        return a * self.idempotents[i]


def _det_fraction(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def build_algebra(weil):
    """AlgebraContext for a validated WeilInput."""
    if not isinstance(weil, WeilInput):
        raise InputError("build_algebra expects a WeilInput")
    factors = factor_weil(weil.coeffs, weil.q)
    ctx = AlgebraContext(weil, factors)
    fv = ctx.F * ctx.V
    if fv != ctx.one * weil.q:
        raise AssertionError("F*V != q")
    hF = ctx.zero
    for k, c in enumerate(weil.coeffs):
        hF = hF + (ctx.F ** k) * c
    if not hF.is_zero():
        raise AssertionError("h(F) != 0")
    return ctx


def algebra_for(g, q, coeffs):
    return build_algebra(parse_weil(g, q, coeffs))
