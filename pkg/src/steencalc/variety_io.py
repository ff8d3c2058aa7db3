"""
Reading varieties and graded algebras from JSON files and preset names.

Variety files either name a preset, {"preset": "P2", "prime": 2}, or describe
the ring explicitly:

    {"prime": 2, "dimension": 2, "generators": [["h", 1, 3]],
     "relations": [["z^2", "-h*z"]], "tangent_chern": "(1+h)^3",
     "divisor": true}

Seeds come from "steenrod_seeds" (name -> expression) or, with "divisor": true,
from the Wu formula applied to every generator.
"""

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .arith import PrimeModulus
from .char_classes import BundleClass
from .chow_ring import Generator, RewriteRule, RingSpec
from .errors import MalformedSpecError, SteencalcError
from .expression import parse_expression
from .graded_mup import GradedAlgebra, algebra_from_json
from .steenrod import (
    VarietySpec,
    product_of_projective_spaces,
    projective_bundle,
    projective_space,
    wu_seeds,
)

if TYPE_CHECKING:
    from collections.abc import Mapping

_LOGGER = logging.getLogger(__name__)

_PRODUCT = re.compile(r"^P(\d+)(?:xP(\d+))*$")
_BUNDLE = re.compile(r"^ProjBundle\((P\d+(?:xP\d+)*)\s*;(.*)\)$")


def variety_from_preset(text: str, modulus: PrimeModulus) -> VarietySpec:
    """"P{n}", "P{a}xP{b}[x...]" or "ProjBundle(P{n}; c_1, ..., c_r)"."""
    text = text.strip()
    if _PRODUCT.match(text):
        dims = [int(d) for d in re.findall(r"\d+", text)]
        return product_of_projective_spaces(dims, modulus)
    match = _BUNDLE.match(text)
    if match:
        base = variety_from_preset(match.group(1), modulus)
        chern = [parse_expression(c, base.ring) for c in match.group(2).split(",")]
        return projective_bundle(base, chern)
    raise MalformedSpecError(f"unknown ring preset {text!r}")


def ring_from_preset(text: str, modulus: PrimeModulus) -> RingSpec:
    return variety_from_preset(text, modulus).ring


def _rule(ring: RingSpec, lhs_text: str, rhs_text: str) -> RewriteRule:
    lhs = parse_expression(lhs_text, ring)
    if len(lhs.terms) != 1 or next(iter(lhs.terms.values())) != 1:
        raise MalformedSpecError(f"relation left side {lhs_text!r} must be a single monomial")
    rhs = parse_expression(rhs_text, ring)
    return RewriteRule(next(iter(lhs.terms)), tuple(rhs.sorted_terms()))


def variety_from_json(data: Mapping[str, Any]) -> VarietySpec:
    try:
        modulus = PrimeModulus(int(data["prime"]))
        if "preset" in data:
            return variety_from_preset(str(data["preset"]), modulus)
        dimension = int(data["dimension"])
        generators = tuple(
            Generator(str(name), int(codim), int(nilpotency))
            for name, codim, nilpotency in data["generators"]
        )
        factors = tuple(int(d) for d in data["factors"]) if "factors" in data else None
        name = str(data.get("name", ""))
        bare = RingSpec(modulus, dimension, generators, factors=factors, name=name)
        rules = tuple(_rule(bare, lhs, rhs) for lhs, rhs in data.get("relations", []))
        ring = RingSpec(modulus, dimension, generators, rules, factors=factors, name=name)
        tangent = BundleClass(dimension, parse_expression(str(data["tangent_chern"]), ring))
        if "steenrod_seeds" in data:
            seeds = {
                str(g): parse_expression(str(expr), ring)
                for g, expr in data["steenrod_seeds"].items()
            }
        elif data.get("divisor") is True:
            seeds = wu_seeds(ring)
        else:
            raise MalformedSpecError(
                "give steenrod_seeds, or assert the Wu input contract with \"divisor\": true"
            )
    except SteencalcError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSpecError(f"malformed variety description: {exc}") from exc
    return VarietySpec(ring, tangent, seeds, name)


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise MalformedSpecError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedSpecError(f"{path}: invalid JSON at line {exc.lineno}") from exc


def load_variety(path: str | Path) -> VarietySpec:
    variety = variety_from_json(read_json(path))
    _LOGGER.info("loaded variety %s of dimension %d from %s", variety.name, variety.dimension, path)
    return variety


def load_algebra(path: str | Path) -> GradedAlgebra:
    return algebra_from_json(read_json(path))
