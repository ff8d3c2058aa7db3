"""Suites over a corpus of constructed Z/p-graded algebras."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import numpy as np

from ..arith import FqField, PrimeModulus
from ..graded_mup import (
    GradedAlgebra,
    deformation_check,
    deformation_report,
    direct_product,
    fiber_decomposition,
    fiber_orbits,
    fixed_ideal,
    group_algebra,
    kummer_algebra,
    kummer_parameter,
    monomial_algebra,
    tensor_product,
    torsor_check,
    truncated_cone,
    twist,
)
from .suite_base import SuiteBase, SuiteCase

if TYPE_CHECKING:
    import random

# (p, q) pairs with char F_q != p
_FIELDS = {
    2: (5, 7, 9, 11, 13),
    3: (4, 5, 7, 13),
    5: (4, 11),
}

_DEFORMATION_KMAX = 4


# Integers land in the prime subfield, so F_4 and F_9 also get coordinate vectors.
_KUMMER_VALUES: dict[int, list[Any]] = {
    4: [1, [0, 1], [1, 1]],
    9: [1, 2, [0, 1]],
}

_FIBER_FIELDS = {2: (5, 7, 11, 13), 3: (5, 7, 11, 13), 5: (7, 11, 13)}


def _kummer_values(q: int) -> list[Any]:
    return _KUMMER_VALUES.get(q, [1, 2, 3])


def algebra_corpus() -> list[dict[str, Any]]:
    """
    Plain descriptors of the torsor corpus.

    Kinds: kummer, group, cone, monomial, product, tensor, twist. Torsors and
    non-torsors are both present; `torsor` records the expected verdict when
    it is known by construction.
    """
    corpus: list[dict[str, Any]] = []
    for p, fields in _FIELDS.items():
        for q in fields:
            kummers = [{"kind": "kummer", "p": p, "q": q, "a": a} for a in _kummer_values(q)]
            corpus += [dict(k, torsor=True) for k in kummers]
            corpus.append({"kind": "kummer", "p": p, "q": q, "a": 0, "torsor": False})
            corpus.append({"kind": "group", "p": p, "q": q, "torsor": True})
            cones = [{"kind": "cone", "p": p, "q": q, "m": m} for m in (1, p, p + 1)]
            corpus += [dict(c, torsor=False) for c in cones]
            corpus.append(
                {"kind": "monomial", "p": p, "q": q, "degrees": [1, p - 1], "bounds": [2, 2]}
            )
            corpus.append(
                {"kind": "product", "p": p, "q": q, "left": kummers[0], "right": kummers[-1]}
            )
            corpus.append({"kind": "product", "p": p, "q": q, "left": cones[0], "right": cones[1]})
            if p < 5:
                corpus.append(
                    {"kind": "tensor", "p": p, "q": q, "left": kummers[0], "right": kummers[-1]}
                )
            for k in range(2, p):
                corpus.append({"kind": "twist", "p": p, "q": q, "k": k, "base": kummers[-1]})
                corpus.append({"kind": "twist", "p": p, "q": q, "k": k, "base": cones[1]})
    return corpus


def build_algebra(desc: dict[str, Any]) -> GradedAlgebra:
    """Construct the algebra a corpus descriptor names."""
    field = FqField(desc["q"])
    modulus = PrimeModulus(desc["p"])
    kind = desc["kind"]
    if kind == "kummer":
        return kummer_algebra(field, modulus, desc["a"])
    if kind == "group":
        return group_algebra(field, modulus)
    if kind == "cone":
        return truncated_cone(field, modulus, desc["m"])
    if kind == "monomial":
        return monomial_algebra(field, modulus, desc["degrees"], desc["bounds"])
    if kind == "product":
        return direct_product(build_algebra(desc["left"]), build_algebra(desc["right"]))
    if kind == "tensor":
        return tensor_product(build_algebra(desc["left"]), build_algebra(desc["right"]))
    if kind == "twist":
        return twist(build_algebra(desc["base"]), desc["k"])
    raise ValueError(f"unknown corpus kind {kind!r}")


def _describe(desc: dict[str, Any]) -> str:
    kind = desc["kind"]
    if kind in ("product", "tensor"):
        return f"{kind}({_describe(desc['left'])}, {_describe(desc['right'])})"
    if kind == "twist":
        return f"twist({_describe(desc['base'])}, {desc['k']})"
    extra = {k: v for k, v in desc.items() if k not in ("kind", "p", "q", "torsor")}
    args = ",".join(f"{k}={v}" for k, v in extra.items())
    return f"{kind}[p={desc['p']},q={desc['q']}{',' if args else ''}{args}]"


class _CorpusSuite(SuiteBase):
    def cases(self, seed: int) -> list[SuiteCase]:
        return self._make_cases([(_describe(d), {"algebra": d}) for d in algebra_corpus()])


class TorsorEquivalenceSuite(_CorpusSuite):
    """The torsor conditions agree on every corpus member."""

    name = "torsor-equivalence"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        desc = case.params["algebra"]
        algebra = build_algebra(desc)
        conditions = torsor_check(algebra)
        self.expect(not conditions.mixed, "torsor conditions disagree", **conditions.to_json())
        expected = desc.get("torsor")
        if expected is not None:
            self.expect(
                conditions.all_true == expected,
                "unexpected torsor verdict",
                expected=expected,
                conditions=conditions.to_json(),
            )
        for k in range(2, algebra.p):
            twisted = twist(algebra, k)
            self.expect(
                np.array_equal(fixed_ideal(algebra).basis, fixed_ideal(twisted).basis),
                "fixed ideal changes under twisting",
                k=k,
            )


class DeformationSuite(_CorpusSuite):
    """Deformed fixed ideal identity and the quotient dimensions, k <= 4."""

    name = "deformation"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        algebra = build_algebra(case.params["algebra"])
        self.expect(
            deformation_check(algebra, _DEFORMATION_KMAX),
            "deformation identity fails",
            report=deformation_report(algebra, _DEFORMATION_KMAX),
        )


class TwistSuite(_CorpusSuite):
    """twist(A, k) raises the Kummer parameter to the k-th power, on torsors with R_0 = F_q."""

    name = "twist"

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        algebra = build_algebra(case.params["algebra"])
        if algebra.component_dim(0) != 1 or not torsor_check(algebra).all_true:
            return
        base = kummer_parameter(algebra)
        for k in range(1, algebra.p):
            twisted = twist(algebra, k)
            self.expect(
                kummer_parameter(twisted) == base**k,
                "twisted Kummer parameter is not the k-th power",
                k=k,
            )
            untwisted = twist(twisted, pow(k, -1, algebra.p))
            self.expect(
                untwisted.names == algebra.names
                and np.array_equal(untwisted.table, algebra.table),
                "double twist does not restore the grading",
                k=k,
            )


class FibersSuite(SuiteBase):
    """Residue degrees of t^p = a sum to p; split fibers form one orbit."""

    name = "fibers"

    def cases(self, seed: int) -> list[SuiteCase]:
        params = []
        for p, fields in _FIBER_FIELDS.items():
            for q in fields:
                params.append((f"p={p} q={q}", {"p": p, "q": q}))
        return self._make_cases(params)

    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        p, q = case.params["p"], case.params["q"]
        for _ in range(self.settings.fiber_pairs):
            a = rng.randrange(1, q)
            degrees = fiber_decomposition(q, p, a)
            total = sum(d * count for d, count in degrees)
            self.expect(total == p, "residue degrees do not sum to p", a=a, degrees=degrees)
            if degrees == [(1, p)] and (q - 1) % p == 0:
                self.expect(
                    len(fiber_orbits(q, p, a)) == 1,
                    "split fiber is not a single orbit",
                    a=a,
                )
