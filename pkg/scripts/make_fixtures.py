#!/usr/bin/env python3
"""Generate the bundled number-field fixture files.

Quadratic data is closed form: fundamental discriminant, the standard
integral basis (1, (D+sqrt(D))/2), reduced-forms class numbers, and torsion
units.  The quartic field of x^4 + 4x^2 + 25 is computed honestly at desk
scale: Round-2 maximalization, prime enumeration up to the Minkowski bound,
class-group relations certified by exact principality searches, and a unit
ball search that provably contains a fundamental unit.

Run from the repository root:  python3 scripts/make_fixtures.py [--verify]
"""

import argparse
import os
import sys
from fractions import Fraction
from math import gcd, isqrt

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from avfq_labels.fielddata import load_field_data
from avfq_labels.quadforms import class_number, fundamental_part, reduced_forms

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "avfq_labels",
                       "data", "fields")


def fixture_name(poly):
    parts = []
    for c in poly:
        parts.append(f"m{-c}" if c < 0 else str(c))
    return f"deg{len(poly) - 1}_" + "_".join(parts) + ".yaml"


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def yaml_for(poly, disc, basis, invariants, generators, torsion_order,
             torsion_gen, fundamental):
    lines = []
    lines.append(f"poly: [{', '.join(str(c) for c in poly)}]")
    lines.append(f"disc: {disc}")
    lines.append("integral_basis:")
    for row in basis:
        lines.append("  - [" + ", ".join(f'"{frac_str(x)}"' for x in row) + "]")
    lines.append("class_group:")
    lines.append(f"  invariants: [{', '.join(str(m) for m in invariants)}]")
    if generators:
        lines.append("  generators:")
        for (p, coords) in generators:
            lines.append(f"    - {{p: {p}, coords: [{', '.join(str(c) for c in coords)}]}}")
    else:
        lines.append("  generators: []")
    lines.append("units:")
    lines.append(f"  torsion_order: {torsion_order}")
    lines.append("  torsion_generator: ["
                 + ", ".join(str(c) for c in torsion_gen) + "]")
    if fundamental:
        lines.append("  fundamental:")
        for u in fundamental:
            lines.append("    - [" + ", ".join(str(c) for c in u) + "]")
    else:
        lines.append("  fundamental: []")
    return "\n".join(lines) + "\n"


def quadratic_fixture(b, c):
    """Fixture for x^2 + b x + c with negative discriminant."""
    poly = (c, b, 1)
    disc0 = b * b - 4 * c
    assert disc0 < 0
    d, f0 = fundamental_part(disc0)
    # omega = (D + sqrt(D))/2 = (D f0 + b)/(2 f0) + x / f0
    basis = [(Fraction(1), Fraction(0)),
             (Fraction(d * f0 + b, 2 * f0), Fraction(1, f0))]
    h = class_number(d)
    if h == 1:
        invariants, generators = [], []
    elif h == 2:
        form = next(f for f in reduced_forms(d) if f != principal_form(d))
        a, bb, _cc = form
        first = (-(d + bb) // 2) % a
        invariants, generators = [2], [(a, (first, 1))]
    else:
        raise NotImplementedError("bundled quadratic fields have h <= 2")
    if d == -3:
        torsion_order, torsion_gen = 6, (2, 1)
    elif d == -4:
        torsion_order, torsion_gen = 4, (2, 1)
    else:
        torsion_order, torsion_gen = 2, (-1, 0)
    return yaml_for(poly, d, basis, invariants, generators, torsion_order,
                    torsion_gen, [])


def principal_form(d):
    k = d % 2
    return (1, k, (k * k - d) // 4)


def weil_g1_quadratics():
    """Defining polynomials x^2 - a x + p needed by the g=1 sweep."""
    out = []
    for p in (3, 5, 7):
        amax = isqrt(4 * p)
        for a in range(-amax, amax + 1):
            if a == 0 or gcd(a, p) != 1:
                continue
            out.append((-a, p))
    return out


def quartic_ae_fixture():
    """Honest desk-scale computation for K = Q[x]/(x^4 + 4x^2 + 25)."""
    from quartic_field import compute_quartic_fixture
    return compute_quartic_fixture()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--verify", action="store_true",
                    help="re-validate every emitted file")
    ap.add_argument("--skip-quartic", action="store_true")
    args = ap.parse_args()
    os.makedirs(OUT_DIR, exist_ok=True)
    polys = set()
    for b, p in weil_g1_quadratics():
        polys.add((b, p))
    # quadratic components of the g=2 acceptance classes are already in the
    # sweep list (x^2 +- 2x + 5, x^2 +- 3x + 5, x^2 +- 4x + 5)
    written = []
    for b, c in sorted(polys):
        text = quadratic_fixture(b, c)
        name = fixture_name((c, b, 1))
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    if not args.skip_quartic:
        text = quartic_ae_fixture()
        path = os.path.join(OUT_DIR, fixture_name((25, 0, 4, 0, 1)))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    if args.verify:
        for path in written:
            load_field_data(path)
            print(f"ok {os.path.basename(path)}")
    print(f"wrote {len(written)} fixtures to {OUT_DIR}")


if __name__ == "__main__":
    main()
