#!/usr/bin/env python3
"""Build finite groups and take them apart.

Run:  python3 demos/01_building_groups.py
"""

from finhaar import (
    build_perm_group,
    cyclic_group,
    generate_subgroup,
    inner_automorphism,
    normal_core,
    semidirect_c3,
    symmetric_group,
)
from finhaar.groups import automorphism_from_map

print("== a group from permutation generators ==")
s3 = build_perm_group(3, [(1, 0, 2), (1, 2, 0)], label="S3")
print(f"{s3.label}: order {s3.order}, identity index {s3.identity}")
for i in s3.elements():
    print(f"  element {i}: {s3.perm_of(i)}  (order {s3.element_order(i)})")

print()
print("== subgroups and the normal core ==")
H = generate_subgroup(s3, [1])  # the flip (0 1)
print(f"subgroup generated by element 1: {list(H.members)}, normal: {H.is_normal()}")
print(f"its normal core: {list(normal_core(s3, H).members)}")
C = generate_subgroup(s3, [2])
print(f"subgroup generated by element 2: {list(C.members)}, normal: {C.is_normal()}")

print()
print("== S4 has thirty subgroups ==")
from finhaar import all_subgroups

s4 = symmetric_group(4)
lattice = all_subgroups(s4)
sizes = sorted({s.size for s in lattice})
print(f"{len(lattice)} subgroups, sizes {sizes}")

print()
print("== twisting Z7 by x -> 2x gives the Frobenius group of order 21 ==")
z7 = cyclic_group(7)
double = automorphism_from_map(z7, [(2 * x) % 7 for x in range(7)], name="double")
print(f"doubling automorphism has order {double.order}")
f21 = semidirect_c3(z7, double, label="F21")
a, b = f21.pair_index(1, 1), f21.pair_index(1, 0)
print(f"order {f21.order}, and (1,1)*(1,0) != (1,0)*(1,1): "
      f"{f21.mul(a, b)} vs {f21.mul(b, a)}")
print("every (g, 1) cubes to the identity:",
      all(f21.power(f21.pair_index(g, 1), 3) == f21.identity for g in range(7)))

print()
print("== inner automorphisms ==")
conj = inner_automorphism(s3, 2, name="conj-r")
print(f"conjugation by a 3-cycle has order {conj.order}")
