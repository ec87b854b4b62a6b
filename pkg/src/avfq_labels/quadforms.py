"""Reduced binary quadratic forms: an independent class-number oracle for
imaginary quadratic discriminants (fundamental or not)."""

from math import gcd, isqrt


def reduced_forms(disc):
    """All reduced primitive forms (a, b, c) of negative discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("need a negative discriminant = 0 or 1 mod 4")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return out


def class_number(disc):
    return len(reduced_forms(disc))


def class_number_sum_over_suborders(disc0):
    """Sum of h(f^2 D) over conductors f with f^2 D dividing behaviour
    matching the orders between Z[F] and O_K for a quadratic Z[F] of
    discriminant disc0 = c^2 D (D fundamental)."""
    d, c = fundamental_part(disc0)
    total = 0
    for f in range(1, c + 1):
        if c % f == 0:
            total += class_number(f * f * d)
    return total


def fundamental_part(disc):
    """(D, c) with disc = c^2 D and D a fundamental discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("not a discriminant")
    n = -disc
    c = 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            c *= f
        f += 1
    d = -n
    if d % 4 != 1:
        if c % 2 == 0:
            d *= 4
            c //= 2
        else:
            raise ValueError("discriminant factorization failed")
    return d, c
