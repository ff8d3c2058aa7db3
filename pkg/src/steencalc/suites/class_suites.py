"""Characteristic class identities on random split bundles."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..arith import PrimeModulus
from ..char_classes import (
    b_class,
    line_bundle,
    mu_class,
    omega_class,
    segre_total,
    split_bundle,
    tensor_H_bundle,
    tensor_H_filtration,
    whitney_sum,
)
from ..chow_ring import CycleClass
from ..variety_io import ring_from_preset
from .sampling import PRIMES, random_homogeneous, random_line_classes
from .suite_base import SuiteBase, SuiteCase

if TYPE_CHECKING:
    import random

    from ..chow_ring import RingSpec

_CLASS_PRESETS = ("P2", "P4", "P6", "P2xP2", "P3xP3")


class _SplitBundleSuite(SuiteBase):
    """Cases per (p, preset); each case draws random_cases bundles."""

    max_rank = 4

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"{preset} p={p}", {"p": p, "preset": preset})
                for p in PRIMES
                for preset in _CLASS_PRESETS
            ]
        )

    def _ring(self, case: SuiteCase) -> RingSpec:
        return ring_from_preset(case.params["preset"], PrimeModulus(case.params["p"]))

    def _lines(self, ring: RingSpec, rng: random.Random) -> list[CycleClass]:
        return random_line_classes(ring, rng.randint(0, self.max_rank), rng)


class BClassSuite(_SplitBundleSuite):
    """b(V + W) = b(V) b(W), b(L) = 1 + c1^{p-1}, c(V) s(V) = 1."""

    name = "bclass"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        ring = self._ring(case)
        p = ring.p
        for _ in range(self.settings.random_cases):
            v = split_bundle(self._lines(ring, rng), ring)
            w = split_bundle(self._lines(ring, rng), ring)
            self.expect(
                b_class(whitney_sum(v, w)) == b_class(v) * b_class(w),
                "b is not multiplicative",
                v=str(v.total_chern),
                w=str(w.total_chern),
            )
            self.expect(
                v.total_chern * segre_total(v) == 1, "c(V) s(V) != 1", v=str(v.total_chern)
            )
            c1 = random_homogeneous(ring, 1, rng)
            self.expect(
                b_class(line_bundle(c1)) == 1 + c1 ** (p - 1), "b(L) != 1 + c1^(p-1)", c1=str(c1)
            )


class OmegaSuite(_SplitBundleSuite):
    """omega_{k(p-1)} = (-1)^k b_{k(p-1)} for ranks up to 5."""

    name = "omega"
    max_rank = 5

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        ring = self._ring(case)
        p = ring.p
        for _ in range(self.settings.random_cases):
            v = split_bundle(self._lines(ring, rng), ring)
            omega, b = omega_class(v), b_class(v)
            for k in range(v.rank + 1):
                codim = k * (p - 1)
                self.expect(
                    omega.graded_component(codim) == b.graded_component(codim).scale((-1) ** k),
                    "omega and b disagree",
                    k=k,
                    v=str(v.total_chern),
                )
            if p == 2:
                self.expect(omega == v.total_chern, "omega != c at p = 2", v=str(v.total_chern))


class MuSuite(_SplitBundleSuite):
    """mu(V tensor H) = (-1)^rank omega(V), via line quotients and via isotypic blocks."""

    name = "mu"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        ring = self._ring(case)
        for _ in range(self.settings.random_cases):
            lines = self._lines(ring, rng)
            v = split_bundle(lines, ring)
            expected = omega_class(v).scale((-1) ** v.rank)
            self.expect(
                mu_class(tensor_H_filtration(lines, ring)) == expected,
                "mu of the line filtration != (-1)^e omega",
                lines=[str(c) for c in lines],
            )
            self.expect(
                mu_class(tensor_H_bundle(v)) == expected,
                "mu of the isotypic blocks != (-1)^e omega",
                v=str(v.total_chern),
            )
