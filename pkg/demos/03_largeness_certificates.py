#!/usr/bin/env python3
"""Certify that a positive-measure set is k-large around the identity.

Run:  python3 demos/03_largeness_certificates.py
"""

from finhaar import Subset, k_large_certificate, symmetric_group
from finhaar.wordsets import torsion_set

s3 = symmetric_group(3)

print("== the involution set of S3 ==")
A = torsion_set(s3, 2).subset
print(f"A = {A.indices()}, measure {A.measure}")

for k in (1, 2, 3):
    cert = k_large_certificate(A, k, strategy="greedy")
    print(f"greedy k={k}: U = {cert.u_set.indices()} "
          f"(|U| = {cert.u_set.size}, valid: {cert.validate()})")

print()
print("== exhaustive search finds the maximum U ==")
for k in (1, 2):
    cert = k_large_certificate(A, k, strategy="exhaustive")
    print(f"exhaustive k={k}: U = {cert.u_set.indices()} (|U| = {cert.u_set.size})")

print()
print("== a subgroup base certifies itself ==")
C = torsion_set(s3, 3).subset
cert = k_large_certificate(C, 3)
print(f"base {C.indices()}: U = {cert.u_set.indices()}")

print()
print("== small bases give small certificates ==")
tiny = Subset.from_indices(s3, [0, 1])
cert = k_large_certificate(tiny, 1)
print(f"base {tiny.indices()}: U = {cert.u_set.indices()}")
