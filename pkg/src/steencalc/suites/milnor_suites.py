"""Residue checks in the Milnor K-theory complex of P^1 over F_q."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..arith import FqField, PrimeModulus
from ..milnor_k import (
    RationalFunction,
    anticommute_check,
    bilinearity_check,
    degree_formula_check,
    milnor_residue,
    places_of_support,
    random_rational_function,
    reciprocity_check,
    steinberg_check,
    valuation,
)
from .suite_base import SuiteBase, SuiteCase

if TYPE_CHECKING:
    import random

# (q, p)
_FUNCTION_FIELDS = ((7, 3), (13, 3), (5, 2), (7, 2))


class _FunctionFieldSuite(SuiteBase):
    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [(f"F_{q}(t) p={p}", {"q": q, "p": p}) for q, p in _FUNCTION_FIELDS]
        )

    @staticmethod
    def _setup(case: SuiteCase) -> tuple[FqField, PrimeModulus]:
        return FqField(case.params["q"]), PrimeModulus(case.params["p"])


class AnticommuteSuite(_FunctionFieldSuite):
    """d alpha + alpha d = 0 on random pairs; Weil reciprocity and the degree formula."""

    name = "anticommute"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        field, modulus = self._setup(case)
        for _ in range(self.settings.milnor_pairs):
            a = random_rational_function(field, rng)
            f = random_rational_function(field, rng)
            self.expect(
                anticommute_check(a, f, modulus),
                "d and alpha do not anticommute",
                a=str(a),
                f=str(f),
            )
            self.expect(reciprocity_check(a, f, modulus), "reciprocity fails", a=str(a), f=str(f))
            self.expect(degree_formula_check(f), "degree formula fails", f=str(f))
        self._pth_power_case(field, modulus, rng)

    def _pth_power_case(self, field: FqField, modulus: PrimeModulus, rng: random.Random) -> None:
        """With a a p-th power every residue of {a, f} at a unit place is trivial."""
        b = random_rational_function(field, rng)
        a = b ** modulus.p
        f = random_rational_function(field, rng)
        self.expect(anticommute_check(a, f, modulus), "p-th power case fails", b=str(b), f=str(f))
        for x in places_of_support([a, f]):
            if valuation(a, x) == 0:
                self.expect(
                    milnor_residue(a, f, x, modulus).is_trivial,
                    "residue of a p-th power is nontrivial",
                    b=str(b),
                    f=str(f),
                    place=str(x),
                )


class SteinbergSuite(_FunctionFieldSuite):
    """{f, 1 - f} has trivial residues; tame symbols are bilinear."""

    name = "steinberg"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        field, modulus = self._setup(case)
        one = RationalFunction.constant(field, 1)
        for _ in range(self.settings.milnor_pairs):
            f = random_rational_function(field, rng)
            if f.is_zero() or f == one:
                continue
            self.expect(steinberg_check(f, modulus), "Steinberg relation fails", f=str(f))
            f2 = random_rational_function(field, rng)
            g = random_rational_function(field, rng)
            self.expect(
                bilinearity_check(f, f2, g, modulus),
                "tame symbol is not bilinear",
                f1=str(f),
                f2=str(f2),
                g=str(g),
            )
