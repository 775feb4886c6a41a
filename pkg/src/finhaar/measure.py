"""Counting measure on finite groups and largeness certificates.

Subsets are bitmasks over element indices; every measure is an exact
``fractions.Fraction``.  The one deliberately inexact operation is
:func:`translate_product_mean`, which works with complex-valued
functions in floating point (documented tolerance 1e-10).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    EmptyBase,
    GroupMismatch,
    SearchBudgetExceeded,
    TupleSpaceTooLarge,
    UnitBallViolated,
)

DEFAULT_TUPLE_SPACE_BUDGET = 10**8
DEFAULT_KLARGE_BUDGET = 10**7
EXHAUSTIVE_ORDER_LIMIT = 24
UNIT_BALL_SLACK = 1e-12


class Subset:
    """An immutable subset of a group, stored as an int bitmask."""

    __slots__ = ("group", "bits")

    def __init__(self, group, bits):
        if bits < 0 or bits >> group.order:
            raise ValueError(f"bitmask has bits outside 0..{group.order - 1}")
        self.group = group
        self.bits = bits

    @classmethod
    def from_indices(cls, group, indices):
        bits = 0
        for i in indices:
            if not 0 <= i < group.order:
                raise ValueError(f"{group.label}: index {i} out of range")
            bits |= 1 << i
        return cls(group, bits)

    @classmethod
    def from_predicate(cls, group, pred):
        bits = 0
        for i in group.elements():
            if pred(i):
                bits |= 1 << i
        return cls(group, bits)

    @classmethod
    def full(cls, group):
        return cls(group, (1 << group.order) - 1)

    @classmethod
    def empty(cls, group):
        return cls(group, 0)

    @property
    def size(self):
        return self.bits.bit_count()

    @property
    def measure(self):
        return Fraction(self.size, self.group.order)

    def indices(self):
        bits, out = self.bits, []
        while bits:
            lsb = bits & -bits
            out.append(lsb.bit_length() - 1)
            bits ^= lsb
        return out

    def left_translate(self, x):
        """The set {x * a : a in self}."""
        row = self.group.left_row(x)
        bits, out = self.bits, 0
        while bits:
            lsb = bits & -bits
            out |= 1 << row[lsb.bit_length() - 1]
            bits ^= lsb
        return Subset(self.group, out)

    def right_translate(self, x):
        G = self.group
        bits, out = self.bits, 0
        while bits:
            lsb = bits & -bits
            out |= 1 << G.mul(lsb.bit_length() - 1, x)
            bits ^= lsb
        return Subset(G, out)

    def inverse_set(self):
        G = self.group
        bits, out = self.bits, 0
        while bits:
            lsb = bits & -bits
            out |= 1 << G.inv(lsb.bit_length() - 1)
            bits ^= lsb
        return Subset(G, out)

    def is_symmetric(self):
        return self.bits == self.inverse_set().bits

    def __and__(self, other):
        self._same_group(other)
        return Subset(self.group, self.bits & other.bits)

    def __or__(self, other):
        self._same_group(other)
        return Subset(self.group, self.bits | other.bits)

    def __sub__(self, other):
        self._same_group(other)
        return Subset(self.group, self.bits & ~other.bits)

    def complement(self):
        return Subset(self.group, ~self.bits & ((1 << self.group.order) - 1))

    def __contains__(self, idx):
        return bool(self.bits >> idx & 1)

    def __eq__(self, other):
        return (
            isinstance(other, Subset)
            and other.group is self.group
            and other.bits == self.bits
        )

    def __hash__(self):
        return hash((id(self.group), self.bits))

    def _same_group(self, other):
        if other.group is not self.group:
            raise GroupMismatch("subsets over different groups")

    def __repr__(self):
        return f"Subset({self.group.label}, size={self.size})"


def measure(A):
    """Normalized counting measure |A| / |G| as an exact Fraction."""
    return A.measure


def format_rational(q):
    """Render "p/q" in lowest terms with positive denominator."""
    f = Fraction(q)
    return f"{f.numerator}/{f.denominator}"


def _translate_masks(A):
    """Bitmask of x*A for every x, as a list indexed by x."""
    G = A.group
    out = [0] * G.order
    idxs = A.indices()
    for x in G.elements():
        row = G.left_row(x)
        m = 0
        for a in idxs:
            m |= 1 << row[a]
        out[x] = m
    return out


def translate_intersection_measure(sets, xs):
    """Exact measure of x_1 A_1 ∩ ... ∩ x_n A_n."""
    if len(sets) != len(xs) or not sets:
        raise ValueError("need equally many sets and translates, at least one")
    G = sets[0].group
    for A in sets:
        if A.group is not G:
            raise GroupMismatch("sets over different groups")
    mask = (1 << G.order) - 1
    for A, x in zip(sets, xs):
        mask &= A.left_translate(x).bits
        if not mask:
            return Fraction(0, 1)
    return Fraction(mask.bit_count(), G.order)


@dataclass(frozen=True)
class AveragedIntersection:
    """Both sides of the exact averaging identity for translate tuples."""

    average: Fraction
    product_of_measures: Fraction

    @property
    def identity_holds(self):
        return self.average == self.product_of_measures


def average_translate_intersection(sets, budget=DEFAULT_TUPLE_SPACE_BUDGET):
    """Average of the translate-intersection measure over all |G|^n tuples.

    The average is computed by honest enumeration of translate tuples
    and returned next to the product of the sets' measures; the two are
    equal as exact rationals (the enumeration never consults the
    product).  Raises TupleSpaceTooLarge when |G|^n exceeds ``budget``.
    """
    if not sets:
        raise ValueError("need at least one set")
    G = sets[0].group
    for A in sets:
        if A.group is not G:
            raise GroupMismatch("sets over different groups")
    n = len(sets)
    if G.order**n > budget:
        raise TupleSpaceTooLarge(
            f"{G.order}^{n} translate tuples exceed budget {budget}"
        )
    per_set_masks = [_translate_masks(A) for A in sets]
    full = (1 << G.order) - 1
    total = 0
    last = per_set_masks[-1]
    for prefix in itertools.product(*per_set_masks[:-1]):
        partial = full
        for m in prefix:
            partial &= m
            if not partial:
                break
        if not partial:
            continue
        for m in last:
            total += (partial & m).bit_count()
    average = Fraction(total, G.order ** (n + 1))
    product = Fraction(1)
    for A in sets:
        product *= A.measure
    return AveragedIntersection(average=average, product_of_measures=product)


# -- complex-valued functions --------------------------------------------------


class GroupFunction:
    """A complex function on the group with all values in the unit disk."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        vals = np.asarray(values, dtype=np.complex128)
        if vals.shape != (group.order,):
            raise ValueError(f"need {group.order} values, got shape {vals.shape}")
        worst = float(np.max(np.abs(vals))) if group.order else 0.0
        if worst > 1.0 + UNIT_BALL_SLACK:
            raise UnitBallViolated(f"|value| = {worst} exceeds 1")
        self.group = group
        self.values = vals
        self.values.setflags(write=False)

    @classmethod
    def constant(cls, group, value=1.0):
        return cls(group, np.full(group.order, value, dtype=np.complex128))

    @classmethod
    def indicator(cls, subset):
        vals = np.zeros(subset.group.order, dtype=np.complex128)
        for i in subset.indices():
            vals[i] = 1.0
        return cls(subset.group, vals)

    @classmethod
    def random_unit(cls, group, rng):
        """Uniform modulus in [0,1] and uniform phase, seeded by ``rng``."""
        radius = rng.uniform(0.0, 1.0, size=group.order)
        phase = rng.uniform(0.0, 2.0 * np.pi, size=group.order)
        return cls(group, radius * np.exp(1j * phase))

    def left_translate(self, x):
        """(L_x f)(g) = f(x^-1 g)."""
        G = self.group
        row = G.left_row(G.inv(x))
        return GroupFunction(G, self.values[np.asarray(row)])

    def l2_norm(self):
        return float(np.sqrt(np.mean(np.abs(self.values) ** 2)))

    def __repr__(self):
        return f"GroupFunction({self.group.label})"


def l2_distance(f, g):
    if f.group is not g.group:
        raise GroupMismatch("functions over different groups")
    return float(np.sqrt(np.mean(np.abs(f.values - g.values) ** 2)))


def translate_product_mean(funcs, xs):
    """Mean over the group of the product of left-translated functions.

    With indicator functions this reduces to the exact translate
    intersection measure; in general it is a complex number of modulus
    at most 1 computed in floating point.
    """
    if len(funcs) != len(xs) or not funcs:
        raise ValueError("need equally many functions and translates, at least one")
    G = funcs[0].group
    for f in funcs:
        if f.group is not G:
            raise GroupMismatch("functions over different groups")
    prod = np.ones(G.order, dtype=np.complex128)
    for f, x in zip(funcs, xs):
        prod *= f.left_translate(x).values
    return complex(np.mean(prod))


# -- k-largeness ----------------------------------------------------------------


@dataclass(frozen=True)
class LargenessCertificate:
    """A symmetric set U around the identity certifying k-fold largeness.

    Every k-tuple drawn from U (repetition allowed) leaves the k-fold
    translate intersection with the base set nonempty.
    """

    group: object
    base: Subset
    k: int
    u_set: Subset

    def validate(self):
        G = self.group
        if self.group.identity not in self.u_set:
            return False
        if not self.u_set.is_symmetric():
            return False
        masks = {u: self.base.left_translate(u).bits for u in self.u_set.indices()}
        base_bits = self.base.bits
        for tup in itertools.combinations_with_replacement(
            sorted(masks), self.k
        ):
            acc = base_bits
            for u in tup:
                acc &= masks[u]
                if not acc:
                    return False
        return True


class _TupleBudget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, amount):
        self.used += amount
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"tuple checks {self.used} exceed budget {self.limit}"
            )


def _valid_extension(base_bits, masks, members, new_members, k, budget):
    """Check k-tuples over ``members`` that involve a new member.

    Intersection is order independent, so unordered tuples with
    repetition suffice; previously checked tuples are skipped.
    """
    new_set = set(new_members)
    ordered = sorted(members)
    for tup in itertools.combinations_with_replacement(ordered, k):
        if not new_set.intersection(tup):
            continue
        budget.spend(1)
        acc = base_bits
        for u in tup:
            acc &= masks[u]
            if not acc:
                return False
    return True


def k_large_certificate(A, k, strategy="greedy", budget=DEFAULT_KLARGE_BUDGET):
    """Search for a largeness certificate around the identity.

    greedy: grow U from {identity}, trying inverse-closed pairs in least
    index order and keeping each pair only if every k-tuple from the
    enlarged U still meets the base set.  exhaustive: branch over all
    inverse-closed classes for a maximum-size valid U (group order
    capped at 24).  Budgets count individual tuple checks.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if A.size == 0:
        raise EmptyBase("base set has measure zero")
    G = A.group
    tracker = _TupleBudget(budget)
    masks = {}

    def mask_of(u):
        m = masks.get(u)
        if m is None:
            m = A.left_translate(u).bits
            masks[u] = m
        return m

    e = G.identity
    mask_of(e)
    if strategy == "greedy":
        members = {e}
        if not _valid_extension(A.bits, masks, members, [e], k, tracker):
            raise EmptyBase("base set misses its own translates")  # unreachable
        for x in G.elements():
            if x in members:
                continue
            new = {x, G.inv(x)} - members
            for u in new:
                mask_of(u)
            trial = members | new
            if _valid_extension(A.bits, masks, trial, new, k, tracker):
                members = trial
        return LargenessCertificate(G, A, k, Subset.from_indices(G, members))
    if strategy == "exhaustive":
        if G.order > EXHAUSTIVE_ORDER_LIMIT:
            raise SearchBudgetExceeded(
                f"exhaustive search capped at order {EXHAUSTIVE_ORDER_LIMIT}"
            )
        classes = []
        seen = set()
        for x in G.elements():
            if x == e or x in seen:
                continue
            cls = frozenset((x, G.inv(x)))
            seen |= cls
            classes.append(tuple(sorted(cls)))
        for x in (u for c in classes for u in c):
            mask_of(x)
        best_size, best_members = 1, (e,)

        def extend(members, idx):
            nonlocal best_size, best_members
            current = tuple(sorted(members))
            if len(current) > best_size or (
                len(current) == best_size and current < best_members
            ):
                best_size, best_members = len(current), current
            # validity is monotone decreasing, so prune when even taking
            # every remaining class cannot beat the best size found
            remaining = sum(len(c) for c in classes[idx:])
            if len(members) + remaining < best_size:
                return
            for i in range(idx, len(classes)):
                cls = classes[i]
                trial = members | set(cls)
                if _valid_extension(A.bits, masks, trial, cls, k, tracker):
                    extend(trial, i + 1)

        extend({e}, 0)
        return LargenessCertificate(G, A, k, Subset.from_indices(G, best_members))
    raise ValueError(f"unknown strategy {strategy!r}")
