"""Certified complex embeddings of K via disk arithmetic over mpmath.

Roots are certified with the geometric-mean inclusion bound: a monic degree
n polynomial has a zero within |h(z)|^(1/n) of any point z, so n pairwise
disjoint disks of that radius around n approximations isolate all roots.
Failures raise PrecisionInsufficient and callers retry at doubled precision.

For squarefree Weil polynomials two distinct conjugate pairs always have
distinct real parts (|a|^2 = q forces Im from Re up to sign), so the
(Re, Im)-ascending order is decidable: equal real parts occur exactly
within a certified conjugate pair.
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import PrecisionInsufficient
from .weil import poly_deg

MIN_PRECISION = 64
MAX_PRECISION = 1 << 16


class Disk:
    """Closed complex disk: center c, radius r, with rounding slop folded
    into r after every operation."""

    __slots__ = ("c", "r")

    def __init__(self, c, r):
        self.c = mp.mpc(c)
        self.r = mp.mpf(r)

    def _slop(self):
        return (abs(self.c) + self.r) * mp.mpf(2) ** (8 - mp.mp.prec)

    @staticmethod
    def exact(value):
        d = Disk(value, 0)
        return Disk(d.c, d._slop())

    @staticmethod
    def from_fraction(fr):
        c = mp.mpf(fr.numerator) / mp.mpf(fr.denominator)
        d = Disk(c, 0)
        return Disk(d.c, d._slop())

    def __add__(self, other):
        d = Disk(self.c + other.c, self.r + other.r)
        return Disk(d.c, d.r + d._slop())

    def __sub__(self, other):
        d = Disk(self.c - other.c, self.r + other.r)
        return Disk(d.c, d.r + d._slop())

    def __mul__(self, other):
        r = abs(self.c) * other.r + abs(other.c) * self.r + self.r * other.r
        d = Disk(self.c * other.c, r)
        return Disk(d.c, d.r + d._slop())

    def abs_interval(self):
        a = abs(self.c)
        lo = a - self.r
        if lo < 0:
            lo = mp.mpf(0)
        return (lo * (1 - mp.mpf(2) ** (8 - mp.mp.prec)),
                (a + self.r) * (1 + mp.mpf(2) ** (8 - mp.mp.prec)))

    def im_interval(self):
        pad = self.r * (1 + mp.mpf(2) ** (8 - mp.mp.prec))
        return (self.c.imag - pad, self.c.imag + pad)

    def re_interval(self):
        pad = self.r * (1 + mp.mpf(2) ** (8 - mp.mp.prec))
        return (self.c.real - pad, self.c.real + pad)

    def disjoint(self, other):
        return abs(self.c - other.c) > (self.r + other.r) * (1 + mp.mpf(2) ** (8 - mp.mp.prec))

    def contains_center_of(self, other):
        return abs(self.c - other.c) + other.r <= self.r


def eval_poly_disk(coeffs, z):
    """Horner evaluation of an ascending coefficient sequence on a disk."""
    acc = Disk.exact(0)
    for co in reversed(coeffs):
        if hasattr(co, "numerator") and not isinstance(co, int):
            cd = Disk.from_fraction(co)
        else:
            cd = Disk.exact(co)
        acc = acc * z + cd
    return acc


@dataclass(frozen=True)
class EmbeddingTable:
    precision: int
    roots: tuple            # Disks, ordered (Re asc, Im asc)
    pairing: tuple          # pairing[i] = index of the conjugate root
    component: tuple        # component[i] = index of the factor vanishing at i


def _isolate_factor_roots(coeffs):
    """Certified disjoint root disks of one squarefree monic factor at the
    current working precision."""
    n = poly_deg(coeffs)
    desc = [mp.mpf(c) for c in reversed(coeffs)]
    try:
        approx = mp.polyroots(desc, maxsteps=200, extraprec=mp.mp.prec)
    except mp.libmp.NoConvergence:
        raise PrecisionInsufficient("root finding did not converge")
    disks = []
    for z in approx:
        val = eval_poly_disk(coeffs, Disk(z, 0))
        bound = (abs(val.c) + val.r) * (1 + mp.mpf(2) ** (16 - mp.mp.prec))
        rad = bound ** (mp.mpf(1) / n)
        disks.append(Disk(z, rad * (1 + mp.mpf(2) ** (16 - mp.mp.prec))))
    for i in range(n):
        for j in range(i + 1, n):
            if not disks[i].disjoint(disks[j]):
                raise PrecisionInsufficient("root disks overlap")
    return disks


def _order_roots(disks, pairing_of):
    """Sort indices by (Re, Im); equal Re is only accepted inside a
    certified conjugate pair."""
    n = len(disks)

    def less(i, j):
        if pairing_of[i] == j:
            ilo, ihi = disks[i].im_interval()
            jlo, jhi = disks[j].im_interval()
            if ihi < jlo:
                return True
            if jhi < ilo:
                return False
            raise PrecisionInsufficient("conjugate pair not separated in Im")
        rlo_i, rhi_i = disks[i].re_interval()
        rlo_j, rhi_j = disks[j].re_interval()
        if rhi_i < rlo_j:
            return True
        if rhi_j < rlo_i:
            return False
        raise PrecisionInsufficient("real parts not separated")

    order = list(range(n))
    for i in range(1, n):          # insertion sort with certified comparisons
        k = i
        while k > 0 and less(order[k], order[k - 1]):
            order[k], order[k - 1] = order[k - 1], order[k]
            k -= 1
    return order


def build_embedding_table(ctx, precision):
    """Certified table at (at least) the requested precision, or raise."""
    precision = max(precision, MIN_PRECISION)
    with mp.workprec(precision):
        disks = []
        comp = []
        for fi, fac in enumerate(ctx.factors):
            for d in _isolate_factor_roots(fac):
                disks.append(d)
                comp.append(fi)
        n = len(disks)
        for i in range(n):
            for j in range(i + 1, n):
                if comp[i] != comp[j] and not disks[i].disjoint(disks[j]):
                    raise PrecisionInsufficient("cross-factor root disks overlap")
        # Weil bound |alpha|^2 = q as an interval check
        for d in disks:
            lo, hi = d.abs_interval()
            if not (lo * lo <= ctx.q <= hi * hi):
                raise PrecisionInsufficient("Weil bound check failed")
        # conjugate pairing: the disk of conj(center) must contain exactly
        # one root center
        pairing = []
        for i, d in enumerate(disks):
            mirror = Disk(mp.conj(d.c), d.r)
            hits = [j for j, e in enumerate(disks)
                    if abs(mirror.c - e.c) <= d.r + e.r]
            if len(hits) != 1:
                raise PrecisionInsufficient("ambiguous conjugate pairing")
            pairing.append(hits[0])
        for i in range(n):
            if pairing[pairing[i]] != i:
                raise PrecisionInsufficient("pairing is not an involution")
        order = _order_roots(disks, pairing)
        inv = {old: new for new, old in enumerate(order)}
        roots = tuple(disks[o] for o in order)
        pair = tuple(inv[pairing[o]] for o in order)
        compo = tuple(comp[o] for o in order)
    return EmbeddingTable(precision=precision, roots=roots, pairing=pair,
                          component=compo)


def get_embeddings(ctx, precision=MIN_PRECISION):
    """Cached certified table; doubles precision internally on failure."""
    prec = max(precision, MIN_PRECISION)
    while prec <= MAX_PRECISION:
        if prec in ctx._embedding_cache:
            return ctx._embedding_cache[prec]
        try:
            table = build_embedding_table(ctx, prec)
        except PrecisionInsufficient:
            prec *= 2
            continue
        ctx._embedding_cache[prec] = table
        return table
    raise PrecisionInsufficient("maximum working precision exceeded")


def eval_at_root(ctx, table, elem, k):
    """phi_k(elem) as a Disk, evaluated at the table's precision."""
    with mp.workprec(table.precision):
        power = ctx.to_power_coords(elem)
        return eval_poly_disk(power, table.roots[k])


def signed_im(ctx, table, elem, k):
    """+1 / -1 for the certified sign of Im(phi_k(elem)), None if undecided."""
    with mp.workprec(table.precision):
        lo, hi = eval_at_root(ctx, table, elem, k).im_interval()
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        return None


def log_abs_interval(ctx, table, elem, k):
    """Certified interval for log|phi_k(elem)|; elem must be a unit of K
    (nonzero in every component)."""
    with mp.workprec(table.precision):
        lo, hi = eval_at_root(ctx, table, elem, k).abs_interval()
        if lo <= 0:
            raise PrecisionInsufficient("modulus interval touches zero")
        slop = mp.mpf(2) ** (8 - mp.mp.prec)
        llo, lhi = mp.log(lo), mp.log(hi)
        pad = (abs(llo) + abs(lhi) + 1) * slop
        return (llo - pad, lhi + pad)
