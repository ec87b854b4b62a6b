"""Per-isogeny-class bundle: algebra context, Frobenius and maximal orders,
ingested field data, global units, class-group generators and prime sort
keys.  Everything downstream takes this object."""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import build_algebra
from .errors import MissingFieldData
from .fielddata import maximal_order
from .lattices import FracIdeal, ZLattice, frobenius_order
from .spectrum import (maximal_ideals_above, ok_prime_sort_keys,
                       primes_of_maximal_above)
from .weil import parse_weil


@dataclass
class ClassData:
    weil: object
    ctx: object
    r: object
    ok: object
    field_data: list
    comp_int_bases: list
    torsion_units: list          # generator per component, embedded in K
    fund_units: list
    class_group_gens: list       # (FracIdeal of O_K, order) pairs
    _ok_keys: dict = field(default_factory=dict)
    _ok_keys_done: set = field(default_factory=set)

    # -- prime sort keys ------------------------------------------------------

    def _ensure_keys(self, p):
        if p in self._ok_keys_done:
            return
        primes = maximal_ideals_above(self.ok, p)
        self._ok_keys.update(
            ok_prime_sort_keys(self.ok, self.comp_int_bases, primes))
        self._ok_keys_done.add(p)

    def prime_key(self, prime):
        """Sort key [j, m, n] per the labeling scheme; for a prime of a
        non-maximal order, the minimum over the primes of O_K above it."""
        self._ensure_keys(prime.p)
        if prime.order == self.ok:
            return self._ok_keys[prime]
        above = primes_of_maximal_above(prime, self.ok)
        return min(self._ok_keys[pp] for pp in above)


def build_class_data(g, q, coeffs, field_data_by_poly):
    weil = parse_weil(g, q, coeffs)
    ctx = build_algebra(weil)
    r = frobenius_order(ctx)
    ok, per_component = maximal_order(ctx, field_data_by_poly)
    comp_int_bases = [[list(row) for row in fd.integral_basis]
                      for fd in per_component]
    torsion_units = []
    fund_units = []
    class_gens = []
    for i, fd in enumerate(per_component):
        e = ctx.idempotents[i]
        basis_elems = _component_basis_elems(ctx, fd, i)
        zeta = _combine(ctx, basis_elems, fd.torsion_gen)
        torsion_units.append(ctx.one + (zeta - ctx.one) * e)
        for u in fd.fund_units:
            uu = _combine(ctx, basis_elems, u)
            fund_units.append(ctx.one + (uu - ctx.one) * e)
        for (p, coords), m in fd.class_gens:
            alpha = _combine(ctx, basis_elems, coords)
            rows = []
            for b in basis_elems:
                rows.append(((b * p) * e).coords)
                rows.append((alpha * b * e).coords)
            for l, fd2 in enumerate(per_component):
                if l == i:
                    continue
                for b2 in _component_basis_elems(ctx, fd2, l):
                    rows.append((b2 * ctx.idempotents[l]).coords)
            class_gens.append((FracIdeal.from_rows(ctx, rows), m))
    return ClassData(weil=weil, ctx=ctx, r=r, ok=ok, field_data=per_component,
                     comp_int_bases=comp_int_bases,
                     torsion_units=torsion_units, fund_units=fund_units,
                     class_group_gens=class_gens)


def _combine(ctx, basis_elems, coords):
    elem = ctx.zero
    for c, b in zip(coords, basis_elems):
        elem = elem + b * c
    return elem


def _component_basis_elems(ctx, fd, i):
    fpows = [ctx.one]
    for _ in range(fd.degree - 1):
        fpows.append(fpows[-1] * ctx.F)
    out = []
    for brow in fd.integral_basis:
        elem = ctx.zero
        for c, fp in zip(brow, fpows):
            elem = elem + fp * c
        out.append(elem)
    return out


def all_torsion_units(class_data):
    """Every root of unity of O_K: products of the component generators."""
    ctx = class_data.ctx
    out = {ctx.one}
    for zeta, fd in zip(class_data.torsion_units, class_data.field_data):
        powers = [ctx.one]
        for _ in range(fd.torsion_order - 1):
            powers.append(powers[-1] * zeta)
        out = {x * pw for x in out for pw in powers}
    return sorted(out, key=lambda e: e.coords)
