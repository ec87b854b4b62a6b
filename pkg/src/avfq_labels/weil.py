"""Weil polynomial input: parsing, validation and factorization over Q.

Polynomials are tuples of coefficients in ascending degree (constant term
first).  Factorization is a bounded search over monic integer divisors of
degree at most half the input, with coefficients capped by the smaller of
the Mignotte bound and the root bound |c_j| <= binom(d, j) * sqrt(q)^(d-j)
valid for divisors of polynomials whose roots all have modulus sqrt(q).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

from .errors import (FunctionalEquationViolated, InputError, NotOrdinaryNotPrimeField,
                     NotSquarefree)


# -- polynomial helpers (ascending coefficient tuples) ----------------------

def poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(c):
    return len(c) - 1


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def poly_eval(c, x):
    acc = 0
    for co in reversed(c):
        acc = acc * x + co
    return acc


def poly_deriv(c):
    if len(c) == 1:
        return (0,)
    return tuple(i * c[i] for i in range(1, len(c)))


def poly_divmod_exact(num, den):
    """Divide num by monic-leading den over Q; returns (quo, rem)."""
    num = [Fraction(x) for x in num]
    dd = poly_deg(den)
    lead = Fraction(den[-1])
    quo = [Fraction(0)] * max(len(num) - dd, 1)
    while len(num) - 1 >= dd and any(num):
        k = len(num) - 1 - dd
        f = num[-1] / lead
        quo[k] = f
        for i in range(dd + 1):
            num[k + i] -= f * den[i]
        num.pop()
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if not num:
        num = [Fraction(0)]
    return tuple(quo), tuple(num)


def poly_int_div(num, den):
    """Exact division of integer polynomials when den | num, else None."""
    quo, rem = poly_divmod_exact(num, den)
    if any(rem) or any(f.denominator != 1 for f in quo):
        return None
    return tuple(int(f) for f in quo)


def poly_gcd_q(a, b):
    """Monic gcd over Q."""
    a = tuple(Fraction(x) for x in poly_trim(a))
    b = tuple(Fraction(x) for x in poly_trim(b))
    while poly_deg(b) > 0 or b[0] != 0:
        _, r = poly_divmod_exact(a, b)
        a, b = b, poly_trim(r)
        if b == (0,):
            break
    if poly_deg(a) == 0:
        return (Fraction(1),)
    lead = a[-1]
    return tuple(x / lead for x in a)


def is_squarefree(c):
    return poly_deg(poly_gcd_q(c, poly_deriv(c))) == 0


def _sqrt_ceil_q(q, scale=1 << 20):
    # rational upper bound for sqrt(q)
    return Fraction(isqrt(q * scale * scale) + 1, scale)


def _divisors_signed(n):
    n = abs(n)
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out += [d, n // d]
    out = sorted(set(out))
    return [s * d for d in out for s in (1, -1)]


def _coeff_bound(h, d, j, q):
    """min(Mignotte, Weil-root bound) for coefficient j of a monic degree-d
    divisor of h."""
    norm2 = isqrt(sum(x * x for x in h)) + 1
    mignotte = comb(d, j) * norm2 + comb(d - 1, j)
    if q is not None:
        rb = _sqrt_ceil_q(q) ** (d - j) * comb(d, j)
        weil = int(rb) + 1
        return min(mignotte, weil)
    return mignotte


def _find_monic_factor(h, q):
    """Smallest-degree monic integer factor of monic h with
    1 <= deg <= deg(h)//2, or None if irreducible."""
    n = poly_deg(h)
    h1, hm1 = poly_eval(h, 1), poly_eval(h, -1)
    for d in range(1, n // 2 + 1):
        const_choices = _divisors_signed(h[0]) if h[0] else [0]
        bounds = [_coeff_bound(h, d, j, q) for j in range(1, d)]

        def rec(coeffs, j):
            # coeffs = [c_0, ..., c_{j-1}] chosen so far
            if j == d:
                cand = tuple(coeffs) + (1,)
                v1 = poly_eval(cand, 1)
                if v1 == 0 or (h1 != 0 and h1 % v1):
                    return None
                vm1 = poly_eval(cand, -1)
                if vm1 == 0 or (hm1 != 0 and hm1 % vm1):
                    return None
                if poly_int_div(h, cand) is not None:
                    return cand
                return None
            for c in range(-bounds[j - 1], bounds[j - 1] + 1):
                got = rec(coeffs + [c], j + 1)
                if got is not None:
                    return got
            return None

        for c0 in const_choices:
            got = rec([c0], 1)
            if got is not None:
                return got
    return None


def factor_weil(h, q=None):
    """Monic irreducible integer factors of squarefree monic h, sorted
    lexicographically by ascending coefficient sequence."""
    h = poly_trim(tuple(int(x) for x in h))
    if h[-1] != 1:
        raise InputError("factor_weil expects a monic polynomial")
    work = [h]
    out = []
    while work:
        f = work.pop()
        if poly_deg(f) == 0:
            continue
        g = _find_monic_factor(f, q)
        if g is None:
            out.append(f)
        else:
            work.append(g)
            work.append(poly_int_div(f, g))
    return tuple(sorted(out))


def prime_power(q):
    """(p, a) with q = p^a, or None."""
    if q < 2:
        return None
    p = None
    n = q
    for d in range(2, isqrt(q) + 1):
        if n % d == 0:
            p = d
            break
    if p is None:
        return (q, 1)
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return (p, a) if n == 1 else None


@dataclass(frozen=True)
class WeilInput:
    g: int
    p: int
    a: int
    q: int
    coeffs: tuple          # ascending, length 2g+1, monic

    @property
    def middle(self):
        return self.coeffs[self.g]

    @property
    def ordinary(self):
        return gcd(self.middle, self.p) == 1

    def label_coeffs(self):
        """(a_1, ..., a_g) of h = x^2g + a_1 x^(2g-1) + ...; used by the
        isogeny-label codec."""
        return tuple(self.coeffs[2 * self.g - i] for i in range(1, self.g + 1))


def parse_weil(g, q, coeffs):
    """Validate a candidate Weil polynomial; coefficients ascending."""
    coeffs = tuple(int(x) for x in coeffs)
    if len(coeffs) != 2 * g + 1:
        raise InputError(f"expected {2 * g + 1} coefficients, got {len(coeffs)}")
    if coeffs[-1] != 1:
        raise InputError("polynomial must be monic")
    pa = prime_power(q)
    if pa is None:
        raise InputError(f"q = {q} is not a prime power")
    p, a = pa
    for j in range(g + 1):
        if coeffs[j] != q ** (g - j) * coeffs[2 * g - j]:
            raise FunctionalEquationViolated(
                f"coefficient {j} violates h(x) = x^2g h(q/x)/q^g")
    if not is_squarefree(coeffs):
        raise NotSquarefree("repeated roots: endomorphism algebra not commutative")
    w = WeilInput(g=g, p=p, a=a, q=q, coeffs=coeffs)
    if a > 1 and not w.ordinary:
        raise NotOrdinaryNotPrimeField(
            "non-ordinary isogeny class over a non-prime field")
    return w
