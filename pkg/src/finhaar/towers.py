"""Finite-depth towers of groups joined by surjective homomorphisms.

Levels run from coarse to fine; the connecting map of each step sends
the finer group onto the coarser one.  Torsion measures along a tower
are non-increasing toward the fine end, which makes the last value an
upper bound for any deeper refinement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMultiplicative, NotSurjective
from .wordsets import torsion_set


@dataclass(frozen=True)
class Tower:
    name: str
    levels: tuple  # FiniteGroups, coarsest first
    maps: tuple  # maps[i]: index array from levels[i+1] onto levels[i]

    @property
    def depth(self):
        return len(self.levels)


def build_tower(levels, maps, name="tower"):
    """Validate level-joining maps: total, surjective, multiplicative."""
    levels = tuple(levels)
    maps = tuple(tuple(int(v) for v in m) for m in maps)
    if len(maps) != len(levels) - 1:
        raise ValueError(
            f"{name}: {len(levels)} levels need {len(levels) - 1} maps, got {len(maps)}"
        )
    for i, phi in enumerate(maps):
        coarse, fine = levels[i], levels[i + 1]
        if len(phi) != fine.order:
            raise ValueError(
                f"{name}: map {i} has {len(phi)} entries for a group of order {fine.order}"
            )
        if any(not 0 <= v < coarse.order for v in phi):
            raise ValueError(f"{name}: map {i} has values outside the coarse group")
        if len(set(phi)) != coarse.order:
            raise NotSurjective(f"{name}: map {i} is not onto the coarse group")
        for x in fine.elements():
            for y in fine.elements():
                if phi[fine.mul(x, y)] != coarse.mul(phi[x], phi[y]):
                    raise NotMultiplicative(
                        f"{name}: map {i} is not multiplicative at ({x},{y})"
                    )
        if phi[fine.identity] != coarse.identity:
            raise NotMultiplicative(f"{name}: map {i} moves the identity")
    return Tower(name=name, levels=levels, maps=maps)


def torsion_measure_sequence(tower, n):
    """Exact measures of the x^n = 1 sets, one per level, coarse to fine."""
    return [torsion_set(G, n).measure for G in tower.levels]


def torsion_images_contained(tower, n):
    """Check that each fine torsion set maps into the coarse one."""
    for i, phi in enumerate(tower.maps):
        fine = torsion_set(tower.levels[i + 1], n).subset
        coarse = torsion_set(tower.levels[i], n).subset
        for x in fine.indices():
            if phi[x] not in coarse:
                return False
    return True
