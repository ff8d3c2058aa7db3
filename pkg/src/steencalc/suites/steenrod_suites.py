"""Suites for binomials and the Steenrod operations on Chow rings."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

from ..arith import PrimeModulus, binom_mod, binom_neg_mod, binom_neg_mod_p
from ..chow_ring import CycleClass, invert_unit_series, projective_space_ring
from ..steenrod import (
    brolemma_check,
    bsteenrod_check,
    corcalc_eval,
    external_cartan_check,
    linear_embedding,
    projection,
    projective_space,
    pullback,
    pushforward_projection,
    smooth_cycle_formula,
    steenrod_coh_total,
    steenrod_hom_total,
)
from ..variety_io import variety_from_preset
from .sampling import PRIMES, projective_presets, random_class, random_homogeneous
from .suite_base import SuiteBase, SuiteCase

if TYPE_CHECKING:
    import random

_LUCAS_LIMIT = 2000
_LUCAS_CHUNK = 250


class LucasSuite(SuiteBase):
    """binom_mod against exact binomials for n < 2000."""

    name = "lucas"

    def cases(self, seed: int) -> list[SuiteCase]:
        params: list[tuple[str, dict[str, Any]]] = [
            (f"p={p} n={start}..{start + _LUCAS_CHUNK - 1}", {"p": p, "start": start})
            for p in (2, 3, 5, 7)
            for start in range(0, _LUCAS_LIMIT, _LUCAS_CHUNK)
        ]
        params += [(f"negative p={p}", {"p": p, "negative": True}) for p in (2, 3, 5, 7)]
        return self._make_cases(params)

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p = case.params["p"]
        if case.params.get("negative"):
            for n in range(1, 60):
                for k in range(60):
                    exact = (-1) ** k * math.comb(n + k - 1, k) % p
                    self.expect(binom_neg_mod(n, k, p) == exact, "C(-n, k) mismatch", n=n, k=k, p=p)
            return
        start = case.params["start"]
        row = [math.comb(start, k) for k in range(start + 1)]
        for n in range(start, start + _LUCAS_CHUNK):
            for k, exact in enumerate(row):
                if binom_mod(n, k, p) != exact % p:
                    self.expect(False, "Lucas mismatch", n=n, k=k, p=p)
            row = [1] + [a + b for a, b in zip(row, row[1:], strict=False)] + [1]


def _pthpower_expected(total: CycleClass, delta: CycleClass, k: int) -> list[str]:
    """Names of the pth-power identities that fail for S(delta) of codim k."""
    p = delta.ring.p
    failed = []
    if total.graded_component(k) != delta:
        failed.append("S^0 = id")
    if total.graded_component(k * p) != delta**p:
        failed.append("S^k = p-th power")
    expected = sum(
        (total.graded_component(k + r * (p - 1)) for r in range(k + 1)), CycleClass.zero(delta.ring)
    )
    if total != expected:
        failed.append("S^r = 0 outside [0, k]")
    return failed


class PthPowerSuite(SuiteBase):
    """S^0 = id, S^k = p-th power, other S^r vanish on homogeneous classes."""

    name = "pthpower"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"{preset} p={p}", {"p": p, "preset": preset})
                for p in PRIMES
                for preset in projective_presets()
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p = case.params["p"]
        x = variety_from_preset(case.params["preset"], PrimeModulus(p))
        classes = [CycleClass.monomial(x.ring, m) for m in x.ring.monomials()]
        for _ in range(self.settings.random_cases):
            classes.append(random_homogeneous(x.ring, rng.randint(0, x.dimension), rng))
        for delta in classes:
            codims = delta.codimensions()
            k = codims[0] if codims else 0
            failed = _pthpower_expected(steenrod_coh_total(x, delta), delta, k)
            self.expect(not failed, ", ".join(failed), preset=x.name, p=p, delta=str(delta))
        for a, b in zip(classes, classes[1:], strict=False):
            self.expect(
                (a + b) ** p == a**p + b**p, "Frobenius is not additive", a=str(a), b=str(b)
            )


_CARTAN_PRESETS = ("P1", "P3", "P6", "P1xP1", "P2xP3", "P4xP4", "ProjBundle(P2; 2*h, h^2)")


class CartanSuite(SuiteBase):
    """S(gamma delta) = S(gamma) S(delta) on random pairs."""

    name = "cartan"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"{preset} p={p}", {"p": p, "preset": preset})
                for p in PRIMES
                for preset in _CARTAN_PRESETS
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        x = variety_from_preset(case.params["preset"], PrimeModulus(case.params["p"]))
        for _ in range(self.settings.cartan_pairs):
            gamma, delta = random_class(x.ring, rng), random_class(x.ring, rng)
            lhs = steenrod_coh_total(x, gamma * delta)
            rhs = steenrod_coh_total(x, gamma) * steenrod_coh_total(x, delta)
            self.expect(lhs == rhs, "Cartan formula fails", gamma=str(gamma), delta=str(delta))


class PullbackSuite(SuiteBase):
    """f^* S_X = S_Y f^* for linear P^m in P^n."""

    name = "pullback"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"P{m} in P{n} p={p}", {"p": p, "m": m, "n": n})
                for p in PRIMES
                for n in range(1, 7)
                for m in range(n)
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        m, n = case.params["m"], case.params["n"]
        f = linear_embedding(m, n, PrimeModulus(case.params["p"]))
        classes = [CycleClass.monomial(f.target.ring, e) for e in f.target.ring.monomials()]
        classes += [random_class(f.target.ring, rng) for _ in range(10)]
        for gamma in classes:
            lhs = pullback(f, steenrod_coh_total(f.target, gamma))
            rhs = steenrod_coh_total(f.source, pullback(f, gamma))
            self.expect(lhs == rhs, "pullback does not commute with S", m=m, n=n, gamma=str(gamma))


class BSteenrodSuite(SuiteBase):
    """b(N) f^* S^X = S^Y f^* for linear P^m in P^n."""

    name = "bsteenrod"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"P{m} in P{n} p={p}", {"p": p, "m": m, "n": n})
                for p in PRIMES
                for n in range(1, 7)
                for m in range(n)
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        m, n = case.params["m"], case.params["n"]
        f = linear_embedding(m, n, PrimeModulus(case.params["p"]))
        for e in f.target.ring.monomials():
            gamma = CycleClass.monomial(f.target.ring, e)
            self.expect(bsteenrod_check(f, gamma), "b(N) twist fails", m=m, n=n, gamma=str(gamma))


class PushforwardSuite(SuiteBase):
    """q_* S^{P^r x X} = S^X q_* for X in {pt, P^1}."""

    name = "pushforward"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"P{r}x{base} p={p}", {"p": p, "r": r, "base": base})
                for p in PRIMES
                for r in range(1, 2 * (p - 1) + 1)
                for base in (0, 1)
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p, r = case.params["p"], case.params["r"]
        q = projection(r, projective_space(case.params["base"], PrimeModulus(p)))
        for e in q.source.ring.monomials():
            gamma = CycleClass.monomial(q.source.ring, e)
            lhs = pushforward_projection(q, steenrod_hom_total(q.source, gamma))
            rhs = steenrod_hom_total(q.target, pushforward_projection(q, gamma))
            self.expect(lhs == rhs, "pushforward does not commute with S^", r=r, gamma=str(gamma))


class PrxDivisibilitySuite(SuiteBase):
    """Coefficient of h^r in (1 + h^{p-1})^{-r-1}: series against C(-r-1, k)."""

    name = "prx-divisibility"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [(f"p={p} r={r}", {"p": p, "r": r}) for p in PRIMES for r in range(1, 5 * (p - 1) + 1)]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p, r = case.params["p"], case.params["r"]
        modulus = PrimeModulus(p)
        ring = projective_space_ring(r, modulus)
        h = CycleClass.generator(ring, "h")
        series = invert_unit_series((1 + h ** (p - 1)) ** (r + 1))
        coefficient = int(series.coefficient((r,)))
        if r % (p - 1):
            self.expect(coefficient == 0, "off-lattice coefficient is nonzero", p=p, r=r)
            return
        k = r // (p - 1)
        binomial = int(binom_neg_mod_p(r + 1, k, modulus))
        self.expect(coefficient == binomial, "series and binomial disagree", p=p, k=k)
        self.expect(coefficient == 0, "coefficient is not divisible by p", p=p, k=k)


_CORCALC_WHOLE = ("P1", "P2", "P3", "P4", "P1xP1", "P1xP2", "P2xP2")


class CorcalcSuite(SuiteBase):
    """The subcone pipeline reproduces S^X([Z]) and its classes satisfy brolemma_check."""

    name = "corcalc"

    def cases(self, seed: int) -> list[SuiteCase]:
        params: list[tuple[str, dict[str, Any]]] = []
        for p in PRIMES:
            params += [(f"Z=X={x} p={p}", {"p": p, "preset": x}) for x in _CORCALC_WHOLE]
            params += [
                (f"P{m} in P{n} p={p}", {"p": p, "preset": f"P{n}", "m": m})
                for n in range(1, 5)
                for m in range(n)
            ]
        return self._make_cases(params)

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p, m = case.params["p"], case.params.get("m")
        x = variety_from_preset(case.params["preset"], PrimeModulus(p))
        result = corcalc_eval(x, m)
        if m is None:
            cycle = CycleClass.one(x.ring)
        else:
            cycle = CycleClass.generator(x.ring, "h") ** (x.dimension - m)
            self.expect(
                smooth_cycle_formula(x, m) == steenrod_hom_total(x, cycle),
                "smooth cycle formula disagrees",
                case=case.label,
            )
        self.expect(brolemma_check(result.subcone), "odd l-degrees survive", case=case.label)
        self.expect(
            result.value == steenrod_hom_total(x, cycle),
            "pipelines disagree",
            case=case.label,
            corcalc=str(result.value),
            seeds=str(steenrod_hom_total(x, cycle)),
        )


_EXTERNAL_PAIRS = (("P1", "P1"), ("P2", "P1"), ("P2", "P3"), ("P1xP1", "P2"))


class ExternalSuite(SuiteBase):
    """S_{XxY}(g x d) = S_X(g) x S_Y(d), also for S^."""

    name = "external"

    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases(
            [
                (f"{a} x {b} p={p}", {"p": p, "x": a, "y": b})
                for p in PRIMES
                for a, b in _EXTERNAL_PAIRS
            ]
        )

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        modulus = PrimeModulus(case.params["p"])
        x = variety_from_preset(case.params["x"], modulus)
        y = variety_from_preset(case.params["y"], modulus)
        for _ in range(max(1, self.settings.random_cases // 10)):
            gamma, delta = random_class(x.ring, rng), random_class(y.ring, rng)
            self.expect(
                external_cartan_check(x, y, gamma, delta),
                "external products do not commute with S",
                gamma=str(gamma),
                delta=str(delta),
            )
