"""Maximal ideals of an order: enumeration above a rational prime, residue
degrees, primes of the maximal order above a prime of S, and sort keys.

S/pS is a finite F_p-algebra handled with dense mod-p linear algebra: the
nilradical is the kernel of iterated Frobenius, and the semisimple quotient
is split by Berlekamp's subalgebra (kernel of x -> x^p - x), whose non-scalar
elements have squarefree totally split minimal polynomials.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .intlinalg import inv_fraction, mat_fraction_mul
from .lattices import FracIdeal, ZLattice


# -- F_p linear algebra -------------------------------------------------------

def _rref(mat, p):
    """Row-reduced echelon form over F_p; returns (rows, pivot_cols)."""
    m = [list(r) for r in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, rows) if m[i][c] % p), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], piv


def _kernel(mat, p, n):
    """Basis of {x : x * mat = 0 mod p} for an n x m matrix (rows = images)."""
    # solve x * mat = 0: transpose to column space problem
    cols = len(mat[0]) if mat else 0
    t = [[mat[i][j] % p for i in range(n)] for j in range(cols)]
    red, piv = _rref(t, p)
    free = [i for i in range(n) if i not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in zip(red, piv):
            v[c] = (-r[f]) % p
        basis.append(v)
    return basis


class FpAlgebra:
    """Finite commutative F_p-algebra with a distinguished basis and integer
    structure constants sc[i][j] (coords of b_i * b_j)."""

    def __init__(self, p, sc, one):
        self.p = p
        self.n = len(sc)
        self.sc = sc
        self.one = tuple(x % p for x in one)

    def mul(self, x, y):
        p, n, sc = self.p, self.n, self.sc
        out = [0] * n
        for i in range(n):
            if x[i]:
                row = sc[i]
                for j in range(n):
                    if y[j]:
                        xy = x[i] * y[j]
                        rij = row[j]
                        for k in range(n):
                            if rij[k]:
                                out[k] = (out[k] + xy * rij[k]) % p
        return tuple(out)

    def power(self, x, e):
        acc = self.one
        base = x
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def mult_matrix(self, x):
        return [list(self.mul(tuple(int(i == k) for i in range(self.n)), x))
                for k in range(self.n)]

    def frobenius_matrix(self):
        return [list(self.power(tuple(int(i == k) for i in range(self.n)),
                                self.p)) for k in range(self.n)]

    def nilradical(self):
        fr = self.frobenius_matrix()
        k = 1
        size = self.p
        while size < self.n:
            size *= self.p
            k += 1
        m = fr
        for _ in range(k - 1):
            m = [[sum(m[i][t] * fr[t][j] for t in range(self.n)) % self.p
                  for j in range(self.n)] for i in range(self.n)]
        return _kernel(m, self.p, self.n)


def _split_idempotents(alg):
    """Primitive idempotents of a semisimple commutative F_p-algebra."""
    p, n = alg.p, alg.n
    frob = alg.frobenius_matrix()
    fr_minus_id = [[(frob[i][j] - int(i == j)) % p for j in range(n)]
                   for i in range(n)]

    def subalgebra_split(e):
        # elements x = y*e with x^p = x, found inside the whole algebra
        emat = alg.mult_matrix(e)
        # solve x*(fr - id) = 0 and x*e = x simultaneously
        proj = [[(emat[i][j] - int(i == j)) % p for j in range(n)]
                for i in range(n)]
        stacked = [fr_minus_id[i] + proj[i] for i in range(n)]
        berl = _kernel(stacked, p, n)
        if len(berl) <= 1:
            return [e]
        b = next(v for v in berl
                 if not _is_multiple(v, e, p))
        b = tuple(x % p for x in b)
        # minimal polynomial of b inside e*A: powers until dependence
        pows = [e, b]
        while True:
            red, piv = _rref(pows, p)
            if len(red) < len(pows):
                break
            pows.append(alg.mul(pows[-1], b))
        # express the last power over the previous ones
        k = len(pows) - 1
        coeffs = _solve_dependency(pows[:k], pows[k], p)
        # min poly m(t) = t^k - sum coeffs_i t^i; roots are in F_p
        roots = [c for c in range(p) if _eval_poly_fp(coeffs, k, c, p) == 0]
        out = []
        for c in roots:
            # Lagrange idempotent: prod_{c' != c} (b - c' e)/(c - c')
            num = e
            den = 1
            for c2 in roots:
                if c2 == c:
                    continue
                term = tuple((x - c2 * y) % p for x, y in zip(b, e))
                num = alg.mul(num, term)
                den = (den * (c - c2)) % p
            inv = pow(den, -1, p)
            idem = tuple((x * inv) % p for x in num)
            out.extend(subalgebra_split(idem))
        return out

    return subalgebra_split(alg.one)


def _is_multiple(v, e, p):
    for c in range(p):
        if all((x - c * y) % p == 0 for x, y in zip(v, e)):
            return True
    return False


def _solve_dependency(basis, target, p):
    """coeffs with target = sum coeffs_i basis_i over F_p."""
    n = len(target)
    aug = [list(b) + [0] * len(basis) for b in basis]
    for i in range(len(basis)):
        aug[i][n + i] = 1
    red, piv = _rref(aug, p)
    v = list(target)
    coeffs = [0] * len(basis)
    for r, c in zip(red, piv):
        if c >= n:
            continue
        f = v[c] % p
        if f:
            v = [(x - f * y) % p for x, y in zip(v, r[:n])]
            coeffs = [(x + f * y) % p for x, y in zip(coeffs, r[n:])]
    if any(v):
        raise AssertionError("dependency solve failed")
    return coeffs


def _eval_poly_fp(coeffs, k, c, p):
    acc = pow(c, k, p)
    for i, co in enumerate(coeffs):
        acc = (acc - co * pow(c, i, p)) % p
    return acc % p


# -- maximal ideals ------------------------------------------------------------


@dataclass(frozen=True)
class MaxIdeal:
    order: object            # Order
    lattice: object          # FracIdeal, p*S + lift of the kernel subspace
    p: int
    f: int                   # residue degree: |S/P| = p^f

    @property
    def norm(self):
        return self.p ** self.f

    def __hash__(self):
        return hash((self.p, self.f, self.lattice.key()))

    def __eq__(self, other):
        return (isinstance(other, MaxIdeal) and self.p == other.p
                and self.lattice == other.lattice)


def structure_constants(order):
    """sc[i][j] = coordinates of b_i b_j over the order's own basis."""
    if "sc" in order._cache:
        return order._cache["sc"]
    matinv = inv_fraction(order.basis_fractions())
    be = order.basis_elems()
    n = order.ctx.dim
    sc = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = (be[i] * be[j]).coords
            coords = mat_fraction_mul([list(prod)], matinv)[0]
            if any(c.denominator != 1 for c in coords):
                raise AssertionError("order not closed under multiplication")
            row.append(tuple(int(c) for c in coords))
        sc.append(tuple(row))
    order._cache["sc"] = tuple(sc)
    return order._cache["sc"]


def order_coords(order, elem):
    """Coordinates of elem over the order's basis (must be integral)."""
    matinv = inv_fraction(order.basis_fractions())
    coords = mat_fraction_mul([list(elem.coords)], matinv)[0]
    if any(c.denominator != 1 for c in coords):
        raise ValueError("element not in the order")
    return tuple(int(c) for c in coords)


def fp_quotient(order, p):
    sc = structure_constants(order)
    one = order_coords(order, order.ctx.one)
    return FpAlgebra(p, sc, one)


def maximal_ideals_above(order, p):
    """The maximal ideals of the order containing p, sorted by their HNF key
    for determinism."""
    cache = order._cache.setdefault("max_ideals", {})
    if p in cache:
        return cache[p]
    ctx = order.ctx
    n = ctx.dim
    alg = fp_quotient(order, p)
    nil = alg.nilradical()
    # semisimple quotient: complement basis of the nilradical
    nilred, nilpiv = _rref(nil, p) if nil else ([], [])
    comp_idx = [i for i in range(n) if i not in nilpiv]
    # quotient structure constants via reduction modulo the nilradical rows
    def reduce_mod_nil(v):
        v = list(v)
        for r, c in zip(nilred, nilpiv):
            f = v[c] % p
            if f:
                v = [(x - f * y) % p for x, y in zip(v, r)]
        return v

    m = len(comp_idx)
    emb = {ci: k for k, ci in enumerate(comp_idx)}

    def project(v):
        w = reduce_mod_nil(v)
        return tuple(w[ci] % p for ci in comp_idx)

    qsc = []
    for i in range(m):
        rowi = []
        for j in range(m):
            prod = alg.mul(_unit_vec(n, comp_idx[i]), _unit_vec(n, comp_idx[j]))
            rowi.append(project(prod))
        qsc.append(tuple(rowi))
    qone = project(alg.one)
    qalg = FpAlgebra(p, tuple(qsc), qone)
    idems = _split_idempotents(qalg)

    basis = order.basis_fractions()
    out = []
    for e in idems:
        emat = qalg.mult_matrix(e)
        ker = _kernel(emat, p, m)
        f = m - len(ker)
        rows = [[Fraction(p) * Fraction(x) for x in b] for b in basis]
        for v in nil:
            rows.append([sum(Fraction(v[i]) * basis[i][j] for i in range(n))
                         for j in range(n)])
        for w in ker:
            lift = [0] * n
            for k, ci in enumerate(comp_idx):
                lift[ci] = w[k]
            rows.append([sum(Fraction(lift[i]) * basis[i][j] for i in range(n))
                         for j in range(n)])
        lat = FracIdeal.from_rows(ctx, rows)
        out.append(MaxIdeal(order=order, lattice=lat, p=p, f=f))
    out.sort(key=lambda mi: (mi.f, mi.lattice.key()))
    cache[p] = tuple(out)
    return cache[p]


def _unit_vec(n, i):
    return tuple(int(k == i) for k in range(n))


def is_invertible_ideal(order, lat):
    """lat * (order : lat) == order."""
    return lat.mul(order.colon(lat)) == order.as_ideal()


def primes_of_maximal_above(prime, ok_order):
    """Maximal ideals P of O_K with P meet S = the given prime of S."""
    cands = maximal_ideals_above(ok_order, prime.p)
    return tuple(c for c in cands if c.lattice.contains_lattice(prime.lattice))


# -- sort keys (component, norm, tiebreaker) -----------------------------------


def ok_prime_sort_keys(ok_order, comp_int_bases, primes):
    """Keys [j, m, n] for maximal ideals of O_K: component (1-based), norm,
    then an HNF-lexicographic tiebreaker over the ingested integral basis of
    the component field."""
    ctx = ok_order.ctx
    buckets = {}
    for pr in primes:
        j = _component_of_prime(ctx, pr)
        buckets.setdefault((j, pr.norm, pr.p), []).append(pr)
    keys = {}
    for (j, m, _p), group in buckets.items():
        def hnf_key(pr):
            rows = pr.lattice.component_basis(j)
            binv = inv_fraction(comp_int_bases[j])
            coords = mat_fraction_mul(rows, binv)
            den = 1
            for r in coords:
                for x in r:
                    den = lcm(den, x.denominator)
            if den != 1:
                raise AssertionError("prime not integral over the integral basis")
            from .intlinalg import hnf as _hnf
            res = _hnf([[int(x) for x in r] for r in coords])
            di = len(comp_int_bases[j])
            return tuple(res.H.data[i] for i in range(di))
        group.sort(key=hnf_key)
        for n_, pr in enumerate(group, start=1):
            keys[pr] = (j + 1, m, n_)
    return keys


def _component_of_prime(ctx, prime):
    hits = [i for i, e in enumerate(ctx.idempotents)
            if not prime.lattice.contains(e)]
    if len(hits) != 1:
        raise AssertionError("prime not supported in exactly one component")
    return hits[0]


def prime_sort_key(prime, ok_order, ok_keys):
    """Key of a maximal ideal of any order: its own key if the order is
    maximal, else the smallest key among the primes of O_K above it."""
    if prime.order == ok_order:
        return ok_keys[prime]
    above = primes_of_maximal_above(prime, ok_order)
    if not above:
        raise AssertionError("no primes of the maximal order above")
    return min(ok_keys[pp] for pp in above)
