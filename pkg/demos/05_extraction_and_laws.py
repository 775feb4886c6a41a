#!/usr/bin/env python3
"""Extract normal abelian / 2-Engel subgroups and verify the Engel laws.

Run:  python3 demos/05_extraction_and_laws.py
"""

from finhaar import (
    bundled_catalog,
    extract_abelian_subgroup,
    extract_engel_subgroup,
    identity_automorphism,
    is_2engel,
    lower_central_series,
    torsion_measure_sequence,
    verify_cube_law,
)

catalog = bundled_catalog()

print("== abelian extraction from the inverted set of S3 ==")
s3 = catalog.get("S3").group
report = extract_abelian_subgroup(s3, identity_automorphism(s3))
W = report.coset_witness
print(f"X measure {report.word_set.measure}; "
      f"K = {list(report.result.members)} via {report.result_mode}")
print(f"coset witness: t = {W.t}, tA = "
      f"{sorted(s3.mul(W.t, h) for h in W.subgroup.members)} (valid {W.validate()})")

print()
print("== 2-Engel extraction on the exponent-3 group of order 27 ==")
heis = catalog.get("Heis27").group
rep = extract_engel_subgroup(heis, identity_automorphism(heis))
print(f"splitting measure {rep.word_set.measure}; |N| = {rep.result.size}; "
      f"normal {rep.verified_normal}, 2-Engel {rep.verified_law}; "
      f"proof mode reached the maximum: {rep.proof_reached_maximum}")

print()
print("== the cube law, checked exhaustively ==")
for label in ("S3", "Z9", "Heis27", "F21"):
    G = catalog.get(label).group
    out = verify_cube_law(G)
    print(f"  {label}: {out.qualifying_triples} qualifying triples out of "
          f"{out.triples_checked}, counterexample: {out.counterexample}")

print()
print("== nilpotency classes ==")
for label in ("Z6", "D8", "Q8", "Heis27", "S3"):
    G = catalog.get(label).group
    series = lower_central_series(G)
    engel = is_2engel(G).holds
    print(f"  {label}: sizes {[t.size for t in series.terms]}, "
          f"class {series.nilpotency_class}, 2-Engel {engel}")

print()
print("== torsion measures down a tower never increase ==")
for name in ("pow3", "d8-flip", "heis-abel"):
    tower = catalog.towers[name]
    seq = torsion_measure_sequence(tower, 3)
    labels = [G.label for G in tower.levels]
    print(f"  {name}: {labels} -> {[str(m) for m in seq]}")
