"""Finite abelian groups from relation lattices, and multiplicative closure
of unit groups of finite quotient rings.

A group is presented as Z^k modulo the row span of a relation matrix; SNF
coordinates give canonical forms, orders, subgroup spans and quotients.
Unit groups are built by breadth-first closure with word tracking, which by
Schreier's lemma harvests a complete set of relations.
"""

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import IntMat, hnf, reduce_mod_hnf, row_span_hnf, snf, vector_in_span


class FinAbGroup:
    """Z^k / rowspan(relations); must be finite (full-rank relations)."""

    def __init__(self, k, relation_rows):
        self.k = k
        folded = row_span_hnf([list(r) for r in relation_rows], k)
        if len(folded) < k:
            raise ValueError("group is infinite: relations not full rank")
        res = snf(IntMat(folded))
        if res.D.cols != k:
            raise ValueError("relation width mismatch")
        diag = [res.D.data[i][i] if i < res.D.rows else 0 for i in range(k)]
        if any(d == 0 for d in diag):
            raise ValueError("group is infinite: relations not full rank")
        self.q = res.Q.data                    # coords(x) = x * Q mod diag
        self.moduli = tuple(diag)
        self.order = 1
        for d in diag:
            self.order *= d
        self.invariants = tuple(d for d in diag if d > 1)

    def coords(self, exponents):
        x = list(exponents) + [0] * (self.k - len(exponents))
        out = []
        for j in range(self.k):
            out.append(sum(x[i] * self.q[i][j] for i in range(self.k))
                       % self.moduli[j])
        return tuple(out)

    def zero(self):
        return (0,) * self.k

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, a, n):
        return tuple((x * n) % m for x, m in zip(a, self.moduli))

    def order_of(self, a):
        n = 1
        for x, m in zip(a, self.moduli):
            if x:
                g = _order_mod(x, m)
                n = n * g // _gcd(n, g)
        return n

    def elements(self):
        def rec(i, cur):
            if i == self.k:
                yield tuple(cur)
                return
            for v in range(self.moduli[i]):
                cur.append(v)
                yield from rec(i + 1, cur)
                cur.pop()
        return rec(0, [])

    def subgroup_span(self, gens):
        """HNF lattice (rows) describing the subgroup generated by the given
        coordinate tuples; membership via vector_in_span."""
        rows = [list(g) for g in gens]
        rows += [[self.moduli[i] * int(i == j) for j in range(self.k)]
                 for i in range(self.k)]
        res = hnf(rows)
        return [list(res.H.data[i]) for i in range(self.k)]

    def in_span(self, span, a):
        return vector_in_span(span, list(a))

    def subgroup_order(self, span):
        full = 1
        for m in self.moduli:
            full *= m
        idx = 1
        for i in range(self.k):
            idx *= span[i][i]
        return full // idx

    def order_in_quotient(self, a, span):
        n = 1
        cur = a
        while not self.in_span(span, cur):
            cur = self.add(cur, a)
            n += 1
            if n > self.order:
                raise AssertionError("quotient order runaway")
        return n


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _order_mod(x, m):
    g = _gcd(x % m, m)
    return m // g


@dataclass
class UnitGroup:
    """Multiplicative group of unit residues of a finite quotient ring,
    with full element table and harvested relations."""

    gens: list            # canonical representatives (keys)
    group: FinAbGroup
    table: dict           # canonical representative -> coords tuple
    words: dict           # canonical representative -> exponent word
    rel_rows: list        # complete relation rows over the generators


def close_unit_group(one_key, all_units, mul_key):
    """BFS closure over the (finite, abelian) group of unit residues.

    one_key: canonical representative of 1.
    all_units: iterable of canonical representatives, deterministic order.
    mul_key: (key, key) -> key multiplication on representatives.
    """
    units = list(all_units)
    gens = []
    words = {one_key: ()}
    relations = []

    def close_over(new_gen):
        idx = len(gens)
        gens.append(new_gen)
        for key in list(words.keys()):
            words[key] = tuple(words[key]) + (0,)
        frontier = list(words.items())
        while frontier:
            key, word = frontier.pop()
            cur, wcur = key, list(word)
            while True:
                nxt = mul_key(cur, new_gen)
                wnxt = list(wcur)
                wnxt[idx] += 1
                if nxt in words:
                    rel = [a - b for a, b in zip(wnxt, words[nxt])]
                    if any(rel):
                        relations.append(rel)
                    break
                words[nxt] = tuple(wnxt)
                cur, wcur = nxt, wnxt

    for u in units:
        if u not in words:
            close_over(u)
    k = len(gens)
    # every Cayley edge yields a relation; by Schreier's lemma these generate
    # the full relation lattice
    for key, word in list(words.items()):
        for idx, g in enumerate(gens):
            nxt = mul_key(key, g)
            rel = [a - b for a, b in zip(word, words[nxt])]
            rel[idx] += 1
            if any(rel):
                relations.append(rel)
    rel_rows = [list(r) + [0] * (k - len(r)) for r in relations]
    if k == 0:
        group = FinAbGroup(1, [[1]])
        table = {one_key: (0,)}
        return UnitGroup(gens=[], group=group, table=table,
                         words={one_key: (0,)}, rel_rows=[[1]])
    group = FinAbGroup(k, rel_rows)
    if group.order != len(words):
        raise AssertionError("unit group relations incomplete")
    words = {key: tuple(w) for key, w in words.items()}
    table = {key: group.coords(word) for key, word in words.items()}
    return UnitGroup(gens=gens, group=group, table=table, words=words,
                     rel_rows=rel_rows)


# -- quotient enumeration helpers ----------------------------------------------


def sub_in_sup_coords(sub, sup):
    """Integer matrix of the sublattice basis over the superlattice basis."""
    from .intlinalg import inv_fraction, mat_fraction_mul
    coords = mat_fraction_mul(sub.basis_fractions(),
                              inv_fraction(sup.basis_fractions()))
    out = []
    for r in coords:
        row = []
        for x in r:
            if Fraction(x).denominator != 1:
                raise ValueError("not a sublattice")
            row.append(int(x))
        out.append(row)
    return out


def coset_representatives(sub, sup):
    """Vectors over the superlattice basis representing sup/sub."""
    t = sub_in_sup_coords(sub, sup)
    res = hnf(t)
    n = len(t)
    h = [list(res.H.data[i]) for i in range(n)]
    diag = [h[i][i] for i in range(n)]

    def rec(i, cur):
        if i == n:
            yield tuple(cur)
            return
        for v in range(diag[i]):
            cur.append(v)
            yield from rec(i + 1, cur)
            cur.pop()
    reps = []
    for raw in rec(0, []):
        reps.append(reduce_mod_hnf(h, list(raw)))
    return h, reps
