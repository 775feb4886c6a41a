"""Whole subgroup lattices of small groups.

Enumeration starts from the cyclic subgroups and repeatedly extends
known subgroups by one extra generator until nothing new appears.  This
is exhaustive and only intended for the desk-scale orders the maximal
searches are gated to.
"""

from __future__ import annotations

from .errors import SearchBudgetExceeded
from .groups import Subgroup, generate_subgroup

SUBGROUP_SCAN_LIMIT = 200


def all_subgroups(G, limit=SUBGROUP_SCAN_LIMIT):
    """Every subgroup of G, sorted by (size, member tuple).

    Cached on the group.  Raises SearchBudgetExceeded above ``limit``.
    """
    if G.order > limit:
        raise SearchBudgetExceeded(
            f"{G.label}: subgroup enumeration capped at order {limit}"
        )
    cached = getattr(G, "_subgroups", None)
    if cached is not None:
        return cached
    known = {}

    def add(sub):
        if sub.members not in known:
            known[sub.members] = sub
            return True
        return False

    add(Subgroup(G, [G.identity]))
    frontier = []
    for g in G.elements():
        sub = generate_subgroup(G, [g])
        if add(sub):
            frontier.append(sub)
    while frontier:
        next_frontier = []
        for sub in frontier:
            if sub.size == G.order:
                continue
            for g in G.elements():
                if g in sub:
                    continue
                bigger = generate_subgroup(G, list(sub.members) + [g])
                if add(bigger):
                    next_frontier.append(bigger)
        frontier = next_frontier
    result = sorted(known.values(), key=lambda s: (s.size, s.members))
    G._subgroups = result
    return result


def normal_subgroups(G, limit=SUBGROUP_SCAN_LIMIT):
    return [H for H in all_subgroups(G, limit) if H.is_normal()]


def maximal_subgroup_satisfying(G, pred, limit=SUBGROUP_SCAN_LIMIT):
    """Largest subgroup satisfying ``pred``; size ties break to the
    lexicographically smallest member tuple.  Returns None if none do."""
    best = None
    for H in all_subgroups(G, limit):
        if not pred(H):
            continue
        if best is None or H.size > best.size:
            best = H
        # all_subgroups is sorted, so the first hit at each size is
        # already the lexicographically smallest one
    return best
