#!/usr/bin/env python3
"""Exact counting measure and the translate-averaging identity.

Run:  python3 demos/02_measures_and_averaging.py
"""

import random

from finhaar import (
    Subset,
    average_translate_intersection,
    cyclic_group,
    format_rational,
    symmetric_group,
    translate_intersection_measure,
)

z4 = cyclic_group(4)
A = Subset.from_indices(z4, [0, 1])

print("== measures are exact rationals ==")
print(f"m(A) = {format_rational(A.measure)} for A = {A.indices()} in Z4")

print()
print("== translate intersections ==")
for x in z4.elements():
    v = translate_intersection_measure([A, A], [0, x])
    print(f"  m(A ∩ {x}+A) = {format_rational(v)}")

print()
print("== averaging over all translate tuples equals the product of measures ==")
out = average_translate_intersection([A, A])
print(f"  average  = {format_rational(out.average)}")
print(f"  product  = {format_rational(out.product_of_measures)}")
print(f"  equal    = {out.identity_holds}")

print()
print("== the identity survives any random family, bit for bit ==")
s3 = symmetric_group(3)
rng = random.Random("demo")
for trial in range(5):
    sets = [Subset(s3, rng.getrandbits(6) or 1) for _ in range(2)]
    out = average_translate_intersection(sets)
    print(
        f"  sizes {[s.size for s in sets]}: average "
        f"{format_rational(out.average)} == product "
        f"{format_rational(out.product_of_measures)}: {out.identity_holds}"
    )
