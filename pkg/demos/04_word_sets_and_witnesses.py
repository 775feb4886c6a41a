#!/usr/bin/env python3
"""Torsion, inverted and splitting sets, and coset witnesses inside them.

Run:  python3 demos/04_word_sets_and_witnesses.py
"""

from finhaar import (
    commuting_certificate,
    coset_witness,
    cyclic_group,
    identity_automorphism,
    inverted_set,
    splitting_set,
    symmetric_group,
    torsion_set,
)
from finhaar.groups import automorphism_from_map, inner_automorphism

s3 = symmetric_group(3)
z6 = cyclic_group(6)

print("== word-defined sets ==")
for G, label in ((s3, "S3"), (z6, "Z6")):
    for n in (2, 3):
        X = torsion_set(G, n)
        print(f"  {label} torsion:{n} -> {X.subset.indices()} (measure {X.measure})")

ident = identity_automorphism(s3)
print(f"  S3 inverted:id  -> {inverted_set(s3, ident).subset.indices()}")
print(f"  S3 splitting:id -> {splitting_set(s3, ident).subset.indices()}")

conj = inner_automorphism(s3, 2, name="conj-r")
print(f"  S3 splitting:conj-r -> {splitting_set(s3, conj).subset.indices()}")

print()
print("== the biggest coset living inside a word set ==")
W = coset_witness(torsion_set(s3, 2))
coset = sorted(s3.mul(W.t, h) for h in W.subgroup.members)
print(f"S3, torsion:2: H = {list(W.subgroup.members)}, t = {W.t}, tH = {coset}")
W6 = coset_witness(torsion_set(z6, 3))
print(f"Z6, torsion:3: H = {list(W6.subgroup.members)}, t = {W6.t}")

print()
print("== four-translate certificates force commuting ==")
z7 = cyclic_group(7)
inv7 = automorphism_from_map(z7, [(-x) % 7 for x in range(7)], name="inv")
X = inverted_set(z7, inv7)
print(f"Z7 inverted:inv has measure {X.measure}")
print(f"certificate for (3, 5): witness x = {commuting_certificate(X, 3, 5)}")

Xs3 = inverted_set(s3, ident)
print(f"S3: certificate for two flips (1, 4): {commuting_certificate(Xs3, 1, 4)}")
print("  (no witness: the flips do not commute, the translates miss each other)")
