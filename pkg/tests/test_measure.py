import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from finhaar.errors import (
    EmptyBase,
    GroupMismatch,
    SearchBudgetExceeded,
    TupleSpaceTooLarge,
    UnitBallViolated,
)
from finhaar.groups import cyclic_group
from finhaar.measure import (
    GroupFunction,
    Subset,
    average_translate_intersection,
    format_rational,
    k_large_certificate,
    l2_distance,
    measure,
    translate_intersection_measure,
    translate_product_mean,
)

from conftest import S3_CYCLIC


def cube_roots(G):
    return Subset.from_predicate(G, lambda g: G.power(g, 3) == G.identity)


def test_measure_basics(s3):
    assert measure(Subset.empty(s3)) == 0
    assert measure(Subset.full(s3)) == 1
    assert cube_roots(s3).indices() == list(S3_CYCLIC)
    assert measure(cube_roots(s3)) == Fraction(1, 2)


def test_format_rational():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(0, 5)) == "0/1"
    assert format_rational(1) == "1/1"


def test_inclusion_exclusion(s3, d8):
    rng = random.Random("inclusion")
    for G in (s3, d8):
        for _ in range(50):
            A = Subset(G, rng.getrandbits(G.order))
            B = Subset(G, rng.getrandbits(G.order))
            assert measure(A & B) + measure(A | B) == measure(A) + measure(B)


def test_translation_invariance(s3, q8):
    rng = random.Random("translation")
    for G in (s3, q8):
        for _ in range(20):
            A = Subset(G, rng.getrandbits(G.order))
            for x in G.elements():
                assert measure(A.left_translate(x)) == measure(A)
                assert measure(A.right_translate(x)) == measure(A)


def test_translate_intersection_z4():
    z4 = cyclic_group(4)
    A = Subset.from_indices(z4, [0, 1])
    assert translate_intersection_measure([A, A], [0, 0]) == Fraction(1, 2)
    assert translate_intersection_measure([A, A], [0, 2]) == 0
    assert translate_intersection_measure([A, A], [0, 1]) == Fraction(1, 4)


def test_translate_intersection_full_sets(s3):
    full = Subset.full(s3)
    for xs in itertools.product(s3.elements(), repeat=2):
        assert translate_intersection_measure([full, full], xs) == 1


def test_translate_intersection_group_mismatch(s3, z6):
    with pytest.raises(GroupMismatch):
        translate_intersection_measure(
            [Subset.full(s3), Subset.full(z6)], [0, 0]
        )


def test_average_z4_pair():
    z4 = cyclic_group(4)
    A = Subset.from_indices(z4, [0, 1])
    out = average_translate_intersection([A, A])
    assert out.average == Fraction(1, 4)
    assert out.product_of_measures == Fraction(1, 4)
    assert out.identity_holds


def test_average_s3_cyclic_subgroup(s3):
    C = Subset.from_indices(s3, S3_CYCLIC)
    out = average_translate_intersection([C, C])
    assert out.average == Fraction(1, 4)
    assert out.identity_holds


def test_average_with_empty_set(s3):
    out = average_translate_intersection([Subset.empty(s3), Subset.full(s3)])
    assert out.average == 0
    assert out.product_of_measures == 0


def test_average_matches_brute_force(s3):
    # independent oracle: enumerate every tuple with fresh set arithmetic
    rng = random.Random("fubini-brute")
    for _ in range(5):
        A = Subset(s3, rng.getrandbits(6))
        B = Subset(s3, rng.getrandbits(6))
        total = Fraction(0)
        for x in s3.elements():
            xa = {s3.mul(x, a) for a in A.indices()}
            for y in s3.elements():
                yb = {s3.mul(y, b) for b in B.indices()}
                total += Fraction(len(xa & yb), 6)
        brute = total / 36
        assert average_translate_intersection([A, B]).average == brute


def test_average_budget():
    z6 = cyclic_group(6)
    with pytest.raises(TupleSpaceTooLarge):
        average_translate_intersection(
            [Subset.full(z6)] * 3, budget=100
        )


def test_averaging_identity_random_families(s3, d8, z9):
    rng = random.Random("fubini")
    for G in (s3, d8, z9):
        for n in (1, 2, 3):
            for _ in range(10):
                sets = [Subset(G, rng.getrandbits(G.order)) for _ in range(n)]
                out = average_translate_intersection(sets)
                assert out.average == out.product_of_measures


def test_unit_ball_enforced(s3):
    with pytest.raises(UnitBallViolated):
        GroupFunction(s3, [2.0] + [0.0] * 5)


def test_translate_product_mean_constant(s3):
    one = GroupFunction.constant(s3, 1.0)
    for xs in itertools.product(s3.elements(), repeat=2):
        assert translate_product_mean([one, one], xs) == pytest.approx(1.0)


def test_translate_product_mean_z2_example():
    z2 = cyclic_group(2)
    f = GroupFunction(z2, [1.0, -1.0])
    assert translate_product_mean([f], [1]) == pytest.approx(0.0)


def test_indicator_reduction(s3, d8):
    rng = random.Random("indicator")
    for G in (s3, d8):
        for _ in range(10):
            A = Subset(G, rng.getrandbits(G.order))
            B = Subset(G, rng.getrandbits(G.order))
            xs = [rng.randrange(G.order), rng.randrange(G.order)]
            exact = translate_intersection_measure([A, B], xs)
            approx = translate_product_mean(
                [GroupFunction.indicator(A), GroupFunction.indicator(B)], xs
            )
            assert abs(approx - float(exact)) < 1e-12


def test_translate_product_modulus_bound(s3):
    rng = np.random.default_rng(7)
    for _ in range(20):
        funcs = [GroupFunction.random_unit(s3, rng) for _ in range(3)]
        xs = [int(rng.integers(6)) for _ in range(3)]
        assert abs(translate_product_mean(funcs, xs)) <= 1.0 + 1e-12


def test_lipschitz_bound_seeded(s3, d8):
    rng = np.random.default_rng(2024)
    for G in (s3, d8):
        for _ in range(100):
            n = int(rng.integers(1, 4))
            funcs = [GroupFunction.random_unit(G, rng) for _ in range(n)]
            xs = [int(rng.integers(G.order)) for _ in range(n)]
            ys = [int(rng.integers(G.order)) for _ in range(n)]
            lhs = abs(
                translate_product_mean(funcs, xs)
                - translate_product_mean(funcs, ys)
            )
            rhs = sum(
                l2_distance(f.left_translate(x), f.left_translate(y))
                for f, x, y in zip(funcs, xs, ys)
            )
            assert lhs <= rhs + 1e-10


def test_klarge_full_base(s3):
    for k in (1, 2, 3):
        cert = k_large_certificate(Subset.full(s3), k)
        assert cert.u_set.size == 6
        assert cert.validate()


def test_klarge_s3_cyclic(s3):
    C = Subset.from_indices(s3, S3_CYCLIC)
    for k in (1, 2, 3):
        cert = k_large_certificate(C, k)
        assert cert.u_set.indices() == list(S3_CYCLIC)
        assert cert.validate()


def test_klarge_s3_pair(s3):
    A = Subset.from_indices(s3, [0, 1])
    cert = k_large_certificate(A, 1)
    assert cert.u_set.indices() == [0, 1]
    assert cert.validate()


def test_klarge_empty_base(s3):
    with pytest.raises(EmptyBase):
        k_large_certificate(Subset.empty(s3), 1)


def test_klarge_budget(s3):
    with pytest.raises(SearchBudgetExceeded):
        k_large_certificate(Subset.full(s3), 3, budget=5)


def test_klarge_exhaustive_gate(heis27):
    with pytest.raises(SearchBudgetExceeded):
        k_large_certificate(Subset.full(heis27), 1, strategy="exhaustive")


def brute_force_max_u(A, k):
    """Oracle: try every inverse-closed set around the identity."""
    G = A.group
    e = G.identity
    classes = sorted(
        {tuple(sorted({x, G.inv(x)})) for x in G.elements() if x != e}
    )
    best = (e,)
    for take in itertools.product([False, True], repeat=len(classes)):
        members = {e}
        for flag, cls in zip(take, classes):
            if flag:
                members.update(cls)
        ok = True
        for tup in itertools.product(sorted(members), repeat=k):
            acc = A.bits
            for u in tup:
                acc &= A.left_translate(u).bits
            if not acc:
                ok = False
                break
        if ok:
            cand = tuple(sorted(members))
            if len(cand) > len(best) or (len(cand) == len(best) and cand < best):
                best = cand
    return best


@pytest.mark.parametrize("k", [1, 2])
def test_klarge_exhaustive_is_maximal(s3, d8, z9, k):
    rng = random.Random(f"klarge-{k}")
    for G in (s3, d8, z9):
        for _ in range(4):
            bits = rng.getrandbits(G.order)
            if not bits:
                bits = 1
            A = Subset(G, bits)
            cert = k_large_certificate(A, k, strategy="exhaustive")
            assert cert.validate()
            expected = brute_force_max_u(A, k)
            assert tuple(cert.u_set.indices()) == expected


def test_greedy_never_beats_exhaustive(s3, z9, k=2):
    rng = random.Random("greedy-vs-exhaustive")
    for G in (s3, z9):
        for _ in range(5):
            bits = rng.getrandbits(G.order) or 1
            A = Subset(G, bits)
            greedy = k_large_certificate(A, k, strategy="greedy")
            exhaustive = k_large_certificate(A, k, strategy="exhaustive")
            assert greedy.validate()
            assert greedy.u_set.size <= exhaustive.u_set.size
