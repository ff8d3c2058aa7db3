"""Random inputs for property suites."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..chow_ring import CycleClass, RingSpec

if TYPE_CHECKING:
    import random

PRIMES = (2, 3, 5)


def projective_presets(max_single: int = 6, max_factor: int = 4) -> list[str]:
    singles = [f"P{n}" for n in range(1, max_single + 1)]
    products = [
        f"P{a}xP{b}" for a in range(1, max_factor + 1) for b in range(1, max_factor + 1)
    ]
    return singles + products


def random_homogeneous(ring: RingSpec, codim: int, rng: random.Random) -> CycleClass:
    """Random class of one codimension with coefficients in F_p."""
    terms = {m: rng.randrange(ring.p) for m in ring.monomials(codim)}
    return CycleClass(ring, terms)


def random_class(ring: RingSpec, rng: random.Random) -> CycleClass:
    """Random class with every codimension present."""
    return CycleClass(ring, {m: rng.randrange(ring.p) for m in ring.monomials()})


def random_line_classes(ring: RingSpec, rank: int, rng: random.Random) -> list[CycleClass]:
    """First Chern classes of a random split bundle of the given rank."""
    return [random_homogeneous(ring, 1, rng) for _ in range(rank)]
