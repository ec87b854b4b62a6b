"""Enumerate the orders between R and O_K, assign N.i labels, and compute
Cohen-Macaulay types.

Enumeration is prime-local: the quotient O_K/R splits into its p-primary
parts, ring-closed sublattices are enumerated inside each part (every
subgroup is a join of cyclic subgroups), and local choices are recombined
by sums.  Closure of each local part implies closure of the sum because a
product of a p-part and a q-part element can be split with 1 = alpha p^a +
beta q^b.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IndexOverflow
from .groups import coset_representatives
from .intlinalg import hnf, vector_in_span
from .lattices import FracIdeal, Order, ZLattice, gen_index
from .spectrum import is_invertible_ideal, maximal_ideals_above


@dataclass
class OverorderRecord:
    order: Order
    N: int
    i: int
    sort_key: tuple
    cm_type: int
    noninv_primes: tuple        # ordered by the spectrum sort keys

    @property
    def label(self):
        return f"{self.N}.{self.i}"


def _factor_int(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _stable_sublattices_between(lo, hi, action_elems):
    """All lattices L with lo <= L <= hi closed under multiplication by the
    action elements (joins of cyclic closures)."""
    ctx = lo.ctx
    h, reps = coset_representatives(lo, hi)
    hi_basis = hi.basis_fractions()
    n = ctx.dim

    def lattice_from(rows_extra):
        rows = lo.basis_fractions() + rows_extra
        return ZLattice.from_rows(ctx, rows)

    def coset_elem(vec):
        coords = [sum(Fraction(vec[i]) * hi_basis[i][j] for i in range(n))
                  for j in range(n)]
        from .algebra import Elem
        return Elem(ctx, coords)

    atoms = {}
    for vec in reps:
        if all(v == 0 for v in vec):
            continue
        e = coset_elem(vec)
        rows = [(e * a).coords for a in action_elems]
        lat = lattice_from([list(r) for r in rows] + [list(e.coords)])
        atoms[lat.key()] = lat
    atoms = list(atoms.values())
    seen = {lo.key(): lo}
    frontier = [lo]
    while frontier:
        cur = frontier.pop()
        for a in atoms:
            nxt = cur.add(a)
            if nxt.key() not in seen:
                seen[nxt.key()] = nxt
                frontier.append(nxt)
    return list(seen.values())


def _ring_closed(lat):
    be = lat.basis_elems()
    for i, x in enumerate(be):
        for y in be[i:]:
            if not lat.contains(x * y):
                return False
    return True


def enumerate_overorders(r_order, ok_order, max_index=10 ** 6):
    """All orders S with R <= S <= O_K, sorted by (N = [O_K:S], i)."""
    ctx = r_order.ctx
    n_total = gen_index(ok_order, r_order)
    if n_total.denominator != 1:
        raise AssertionError("R not contained in O_K")
    n_total = int(n_total)
    if n_total > max_index:
        raise IndexOverflow(f"[O_K:R] = {n_total} exceeds the cap {max_index}")
    r_elems = r_order.basis_elems()
    locals_per_prime = []
    for p, e in sorted(_factor_int(n_total).items()):
        # p-primary part of O_K/R: {x in O_K : p^e x in R}
        lp = r_order.as_ideal().scal_rational(Fraction(1, p ** e)).intersect(
            ok_order.as_ideal())
        cands = _stable_sublattices_between(r_order.as_ideal(), lp, r_elems)
        closed = [c for c in cands if _ring_closed(c)]
        locals_per_prime.append(closed)
    combos = [r_order.as_ideal()]
    for closed in locals_per_prime:
        combos = [base.add(c) for base in combos for c in closed]
    orders = []
    seen = set()
    for lat in combos:
        if lat.key() in seen:
            continue
        seen.add(lat.key())
        orders.append(Order.from_lattice(lat))
    return orders


def order_sort_key(order):
    """[d, n_1, ..., n_{g(2g+1)}]: denominator, then the upper-triangular
    HNF entries row-major.  Basis-free by construction."""
    return order.sort_key()


def cm_type_at(order, prime):
    """dim over S/p of S^t / p S^t."""
    st = order.as_ideal().dual()
    pst = prime.lattice.mul(st)
    idx = gen_index(st, pst)
    dim = 0
    cur = 1
    while cur < idx:
        cur *= prime.norm
        dim += 1
    if cur != idx:
        raise AssertionError("S^t/pS^t is not a vector space over S/p")
    return dim


def noninvertible_primes(order, ok_order, key_fn):
    """Maximal ideals of the order that are not invertible, sorted by the
    spectrum keys; they all lie above primes dividing the conductor norm."""
    cond = order.colon(ok_order.as_ideal())
    nf = gen_index(ok_order, cond)
    out = []
    for p in sorted(_factor_int(int(nf))):
        for pr in maximal_ideals_above(order, p):
            if not is_invertible_ideal(order, pr.lattice):
                out.append(pr)
    out.sort(key=key_fn)
    return tuple(out)


def build_overorder_records(r_order, ok_order, key_fn, max_index=10 ** 6):
    orders = enumerate_overorders(r_order, ok_order, max_index)
    tagged = []
    for o in orders:
        n = int(gen_index(ok_order, o))
        tagged.append((n, order_sort_key(o), o))
    tagged.sort(key=lambda t: (t[0], t[1]))
    records = []
    by_n = {}
    for n, key, o in tagged:
        by_n[n] = by_n.get(n, 0) + 1
        nip = noninvertible_primes(o, ok_order, key_fn)
        cm = max([cm_type_at(o, pr) for pr in nip], default=1)
        records.append(OverorderRecord(order=o, N=n, i=by_n[n], sort_key=key,
                                       cm_type=cm, noninv_primes=nip))
    if len({(rec.N, rec.i) for rec in records}) != len(records):
        raise AssertionError("overorder labels collide")
    return records
