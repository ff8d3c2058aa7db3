"""
Truncated graded quotient rings over F_p: the concrete Chow rings Ch(X).

A ring is presented by generators with codimensions and nilpotency bounds,
rewrite rules (projective bundle relations) and dimension blocks. Classes
are kept in normal form; every operation returns a normalized class.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import TYPE_CHECKING

from .arith import FpElement, PrimeModulus
from .errors import (
    DomainError,
    MalformedSpecError,
    RingMismatchError,
    UnknownGeneratorError,
    UnsupportedOperationError,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

_LOGGER = logging.getLogger(__name__)

Exponents = tuple[int, ...]
RawMonomial = tuple[int, ...] | Mapping[str, int]


@dataclass(frozen=True)
class Generator:
    name: str
    codim: int
    nilpotency: int  # name^nilpotency = 0


@dataclass(frozen=True)
class RewriteRule:
    """lhs monomial -> sum of coefficient * monomial."""

    lhs: Exponents
    rhs: tuple[tuple[Exponents, int], ...]


@dataclass(frozen=True)
class Block:
    """Generators pulled back from a factor of dimension `dimension`."""

    generators: tuple[int, ...]
    dimension: int


def _order_key(exponents: Exponents) -> Exponents:
    # Later generators are more significant; rewrite rules must go down in this order.
    return tuple(reversed(exponents))


@dataclass(frozen=True)
class RingSpec:
    """Presentation of a truncated graded quotient ring."""

    modulus: PrimeModulus
    dimension: int
    generators: tuple[Generator, ...]
    rules: tuple[RewriteRule, ...] = ()
    blocks: tuple[Block, ...] = ()
    factors: tuple[int, ...] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.dimension < 0:
            raise MalformedSpecError("ring dimension must be nonnegative")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise MalformedSpecError(f"duplicate generator names in {names}")
        for g in self.generators:
            if g.codim < 1 or g.nilpotency < 1:
                raise MalformedSpecError(f"generator {g.name} needs codim >= 1 and nilpotency >= 1")
        n = len(self.generators)
        for rule in self.rules:
            self._check_rule(rule, n)
        for block in self.blocks:
            if any(i < 0 or i >= n for i in block.generators) or block.dimension < 0:
                raise MalformedSpecError(f"invalid block {block}")

    def _check_rule(self, rule: RewriteRule, n: int) -> None:
        if len(rule.lhs) != n or any(len(m) != n for m, _ in rule.rhs):
            raise MalformedSpecError("rewrite rule does not match the generator count")
        if any(e >= g.nilpotency for e, g in zip(rule.lhs, self.generators, strict=True)):
            raise MalformedSpecError("rewrite rule overlaps a nilpotency truncation")
        codim = self.codimension(rule.lhs)
        for monomial, _ in rule.rhs:
            if self.codimension(monomial) != codim:
                raise MalformedSpecError("rewrite rule is not homogeneous")
            if _order_key(monomial) >= _order_key(rule.lhs):
                raise MalformedSpecError("rewrite rule does not decrease the monomial order")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise UnknownGeneratorError(name)

    def codimension(self, exponents: Exponents) -> int:
        return sum(e * g.codim for e, g in zip(exponents, self.generators, strict=True))

    def vanishes(self, exponents: Exponents) -> bool:
        """True when the monomial is killed by truncation alone."""
        if any(e >= g.nilpotency for e, g in zip(exponents, self.generators, strict=True)):
            return True
        if self.codimension(exponents) > self.dimension:
            return True
        return any(
            sum(exponents[i] * self.generators[i].codim for i in block.generators)
            > block.dimension
            for block in self.blocks
        )

    def exponents(self, monomial: RawMonomial) -> Exponents:
        if isinstance(monomial, Mapping):
            exps = [0] * len(self.generators)
            for name, e in monomial.items():
                exps[self.index(name)] += e
            monomial = tuple(exps)
        if len(monomial) != len(self.generators) or any(e < 0 for e in monomial):
            raise MalformedSpecError(f"bad exponent vector {monomial} for ring {self.name}")
        return tuple(monomial)

    def monomial_key(self, exponents: Exponents) -> str:
        """Sorted `name^exp*...` string; the unit monomial is '1'."""
        parts = []
        for g, e in sorted(zip(self.generators, exponents, strict=True), key=lambda x: x[0].name):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) or "1"

    def monomials(self, codim: int | None = None) -> list[Exponents]:
        """All normal monomials (those no rule or truncation touches), optionally of one codim."""
        found: list[Exponents] = []

        def walk(prefix: list[int]) -> None:
            i = len(prefix)
            if i == len(self.generators):
                exps = tuple(prefix)
                if codim is not None and self.codimension(exps) != codim:
                    return
                if not self.vanishes(exps) and _reduce_monomial(self, exps) == ((exps, 1),):
                    found.append(exps)
                return
            for e in range(self.generators[i].nilpotency):
                partial = prefix + [e]
                if sum(x * g.codim for x, g in zip(partial, self.generators, strict=False)) > (
                    self.dimension
                ):
                    break
                walk(partial)

        walk([])
        return sorted(found, key=lambda m: (self.codimension(m), _order_key(m)))


@lru_cache(maxsize=1 << 16)
def _reduce_monomial(ring: RingSpec, exponents: Exponents) -> tuple[tuple[Exponents, int], ...]:
    if ring.vanishes(exponents):
        return ()
    p = ring.p
    for rule in ring.rules:
        if all(e >= r for e, r in zip(exponents, rule.lhs, strict=True)):
            rest = tuple(e - r for e, r in zip(exponents, rule.lhs, strict=True))
            acc: dict[Exponents, int] = defaultdict(int)
            for monomial, coeff in rule.rhs:
                shifted = tuple(a + b for a, b in zip(monomial, rest, strict=True))
                for reduced, c in _reduce_monomial(ring, shifted):
                    acc[reduced] = (acc[reduced] + coeff * c) % p
            return tuple(sorted((m, c) for m, c in acc.items() if c))
    return ((exponents, 1),)


def normalize(
    raw: Mapping[RawMonomial, int] | Iterable[tuple[RawMonomial, int]], ring: RingSpec
) -> CycleClass:
    """Normal form of a raw polynomial over the generators of `ring`."""
    items = raw.items() if isinstance(raw, Mapping) else raw
    acc: dict[Exponents, int] = defaultdict(int)
    p = ring.p
    for monomial, coeff in items:
        c = coeff % p
        if not c:
            continue
        for reduced, d in _reduce_monomial(ring, ring.exponents(monomial)):
            acc[reduced] = (acc[reduced] + c * d) % p
    return CycleClass._trusted(ring, {m: c for m, c in acc.items() if c})


class CycleClass:
    """A class in Ch(X), stored as a normal-form table exponent vector -> coefficient mod p."""

    __slots__ = ("_ring", "_terms")

    def __init__(self, ring: RingSpec, terms: Mapping[RawMonomial, int] | None = None) -> None:
        normal = normalize(terms or {}, ring)
        self._ring = ring
        self._terms = normal._terms

    @classmethod
    def _trusted(cls, ring: RingSpec, terms: dict[Exponents, int]) -> CycleClass:
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, ring: RingSpec) -> CycleClass:
        return cls._trusted(ring, {})

    @classmethod
    def constant(cls, ring: RingSpec, value: int) -> CycleClass:
        return cls(ring, {(0,) * len(ring.generators): value})

    @classmethod
    def one(cls, ring: RingSpec) -> CycleClass:
        return cls.constant(ring, 1)

    @classmethod
    def generator(cls, ring: RingSpec, name: str) -> CycleClass:
        return cls(ring, {ring.exponents({name: 1}): 1})

    @classmethod
    def monomial(cls, ring: RingSpec, exponents: RawMonomial, coeff: int = 1) -> CycleClass:
        return cls(ring, {ring.exponents(exponents): coeff})

    @property
    def ring(self) -> RingSpec:
        return self._ring

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return MappingProxyType(self._terms)

    def _coerce(self, other: CycleClass | int) -> CycleClass:
        if isinstance(other, int):
            return CycleClass.constant(self._ring, other)
        if other._ring != self._ring:
            raise RingMismatchError(f"rings {self._ring.name!r} and {other._ring.name!r} differ")
        return other

    def __add__(self, other: CycleClass | int) -> CycleClass:
        other = self._coerce(other)
        p = self._ring.p
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = (acc.get(m, 0) + c) % p
        return CycleClass._trusted(self._ring, {m: c for m, c in acc.items() if c})

    __radd__ = __add__

    def __neg__(self) -> CycleClass:
        p = self._ring.p
        return CycleClass._trusted(self._ring, {m: (-c) % p for m, c in self._terms.items()})

    def __sub__(self, other: CycleClass | int) -> CycleClass:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> CycleClass:
        return self._coerce(other) - self

    def scale(self, factor: int) -> CycleClass:
        p = self._ring.p
        factor %= p
        return CycleClass._trusted(
            self._ring, {m: c * factor % p for m, c in self._terms.items()} if factor else {}
        )

    def __mul__(self, other: CycleClass | int) -> CycleClass:
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict[Exponents, int] = defaultdict(int)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                acc[tuple(x + y for x, y in zip(a, b, strict=True))] += ca * cb
        return normalize(acc, self._ring)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CycleClass:
        if exponent < 0:
            raise DomainError("negative powers need invert_unit_series")
        result = CycleClass.one(self._ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycleClass.constant(self._ring, other)
        if not isinstance(other, CycleClass):
            return NotImplemented
        return self._ring == other._ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._ring, frozenset(self._terms.items())))

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: RawMonomial) -> FpElement:
        return self._ring.modulus.element(self._terms.get(self._ring.exponents(monomial), 0))

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self._ring.generators), 0)

    def codimensions(self) -> list[int]:
        return sorted({self._ring.codimension(m) for m in self._terms})

    def is_homogeneous(self, codim: int | None = None) -> bool:
        codims = self.codimensions()
        if codim is None:
            return len(codims) <= 1
        return codims in ([], [codim])

    def graded_component(self, k: int) -> CycleClass:
        return CycleClass._trusted(
            self._ring,
            {m: c for m, c in self._terms.items() if self._ring.codimension(m) == k},
        )

    def truncate(self, max_codim: int) -> CycleClass:
        return CycleClass._trusted(
            self._ring,
            {m: c for m, c in self._terms.items() if self._ring.codimension(m) <= max_codim},
        )

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        ring = self._ring
        return sorted(self._terms.items(), key=lambda t: (ring.codimension(t[0]), _order_key(t[0])))

    def to_json(self) -> dict[str, int]:
        return {self._ring.monomial_key(m): c for m, c in self.sorted_terms()}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            key = self._ring.monomial_key(m)
            if key == "1":
                parts.append(str(c))
            else:
                parts.append(key if c == 1 else f"{c}*{key}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CycleClass({self._ring.name or 'ring'}: {self})"


def invert_unit_series(a: CycleClass) -> CycleClass:
    """Inverse of a class with constant term 1, by the truncated geometric series."""
    if a.graded_component(0) != CycleClass.one(a.ring):
        raise DomainError(f"{a} does not have constant term 1")
    nilpotent = a - 1
    result = CycleClass.one(a.ring)
    term = CycleClass.one(a.ring)
    for _ in range(a.ring.dimension):
        term = term * (-nilpotent)
        if term.is_zero():
            break
        result = result + term
    return result


def degree(a: CycleClass) -> FpElement:
    """Coefficient of the top monomial on a product of projective spaces."""
    ring = a.ring
    if ring.factors is None:
        raise UnsupportedOperationError(
            f"degree needs a product of projective spaces, got {ring.name!r}"
        )
    top = tuple(d for d in ring.factors if d > 0)
    return ring.modulus.element(a.terms.get(top, 0))


def projective_space_ring(n: int, modulus: PrimeModulus, name: str = "h") -> RingSpec:
    """Ch(P^n) = F_p[h]/(h^{n+1}); P^0 has no generators."""
    if n < 0:
        raise MalformedSpecError("projective space dimension must be nonnegative")
    generators = (Generator(name, 1, n + 1),) if n > 0 else ()
    return RingSpec(modulus, n, generators, factors=(n,), name=f"P{n}")


def _shift(exponents: Exponents, offset: int, total: int) -> Exponents:
    return (0,) * offset + exponents + (0,) * (total - offset - len(exponents))


def product_ring(rings: Sequence[RingSpec]) -> RingSpec:
    """
    Ch(X_1 x ... x X_m) for the supported rings.

    When generator names collide every generator of factor i gets the suffix i
    (1-based), so P^a x P^b has generators h1, h2.
    """
    if not rings:
        raise MalformedSpecError("empty product")
    modulus = rings[0].modulus
    if any(r.modulus != modulus for r in rings):
        raise RingMismatchError("factors use different primes")
    all_names = [n for r in rings for n in r.names]
    rename = len(set(all_names)) != len(all_names)
    generators: list[Generator] = []
    for i, r in enumerate(rings, start=1):
        for g in r.generators:
            name = f"{g.name}{i}" if rename else g.name
            generators.append(Generator(name, g.codim, g.nilpotency))
    if len({g.name for g in generators}) != len(generators):
        raise MalformedSpecError(f"cannot make generator names unique for {all_names}")

    total = len(generators)
    rules: list[RewriteRule] = []
    blocks: list[Block] = []
    offset = 0
    for r in rings:
        n = len(r.generators)
        rules.extend(
            RewriteRule(
                _shift(rule.lhs, offset, total),
                tuple((_shift(m, offset, total), c) for m, c in rule.rhs),
            )
            for rule in r.rules
        )
        blocks.extend(
            Block(tuple(i + offset for i in b.generators), b.dimension) for b in r.blocks
        )
        if n:
            blocks.append(Block(tuple(range(offset, offset + n)), r.dimension))
        offset += n

    factors: tuple[int, ...] | None = None
    if all(r.factors is not None for r in rings):
        factors = tuple(d for r in rings for d in (r.factors or ()))
    return RingSpec(
        modulus,
        sum(r.dimension for r in rings),
        tuple(generators),
        tuple(rules),
        tuple(blocks),
        factors,
        "x".join(r.name for r in rings),
    )


def projective_bundle_ring(
    base: RingSpec, chern: Sequence[CycleClass], name: str = "z"
) -> RingSpec:
    """
    Ch(P(V)) for a rank-r bundle V on the base with Chern classes c_1..c_r:
    Ch(base)[z] / (z^r + c_1 z^{r-1} + ... + c_r).
    """
    rank = len(chern)
    if rank < 1:
        raise MalformedSpecError("projective bundle needs rank >= 1")
    if name in base.names:
        raise MalformedSpecError(f"generator name {name!r} already used by the base")
    for i, c in enumerate(chern, start=1):
        if c.ring != base:
            raise RingMismatchError("Chern classes must live in the base ring")
        if not c.is_homogeneous(i):
            raise MalformedSpecError(f"c_{i} must be homogeneous of codimension {i}")
    dimension = base.dimension + rank - 1
    generators = (*base.generators, Generator(name, 1, dimension + 1))
    p = base.p
    rhs = tuple(
        (m + (rank - i,), (-c) % p)
        for i, c_i in enumerate(chern, start=1)
        for m, c in c_i.terms.items()
    )
    lhs = (0,) * len(base.generators) + (rank,)
    rules = (*(_lift_rule(r) for r in base.rules), RewriteRule(lhs, rhs))
    blocks = [*base.blocks]
    if base.generators:
        blocks.append(Block(tuple(range(len(base.generators))), base.dimension))
    return RingSpec(
        base.modulus,
        dimension,
        generators,
        rules,
        tuple(blocks),
        None,
        f"ProjBundle({base.name},{rank})",
    )


def _lift_rule(rule: RewriteRule) -> RewriteRule:
    return RewriteRule(rule.lhs + (0,), tuple((m + (0,), c) for m, c in rule.rhs))


def lift_class(a: CycleClass, ring: RingSpec, offset: int) -> CycleClass:
    """Re-embed a class into a ring whose generators contain a's at position `offset`."""
    total = len(ring.generators)
    return normalize({_shift(m, offset, total): c for m, c in a.terms.items()}, ring)


class EquivariantClass:
    """
    An element of Ch(X)[l] with l of codimension 1, stored as l-degree -> coefficient class.
    """

    __slots__ = ("_coeffs", "_ring")

    def __init__(self, ring: RingSpec, coeffs: Mapping[int, CycleClass] | None = None) -> None:
        self._ring = ring
        self._coeffs: dict[int, CycleClass] = {}
        for i, a in (coeffs or {}).items():
            if i < 0:
                raise DomainError("negative power of l")
            if a.ring != ring:
                raise RingMismatchError("coefficient outside the base ring")
            if not a.is_zero():
                self._coeffs[i] = a

    @classmethod
    def from_class(cls, a: CycleClass) -> EquivariantClass:
        return cls(a.ring, {0: a})

    @classmethod
    def one(cls, ring: RingSpec) -> EquivariantClass:
        return cls.from_class(CycleClass.one(ring))

    @classmethod
    def l_power(cls, ring: RingSpec, k: int = 1, coeff: int = 1) -> EquivariantClass:
        return cls(ring, {k: CycleClass.constant(ring, coeff)})

    @property
    def ring(self) -> RingSpec:
        return self._ring

    def coefficient(self, i: int) -> CycleClass:
        return self._coeffs.get(i, CycleClass.zero(self._ring))

    def l_degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _coerce(self, other: EquivariantClass | CycleClass | int) -> EquivariantClass:
        if isinstance(other, int):
            return EquivariantClass.from_class(CycleClass.constant(self._ring, other))
        if isinstance(other, CycleClass):
            other = EquivariantClass.from_class(other)
        if other._ring != self._ring:
            raise RingMismatchError("equivariant classes over different rings")
        return other

    def __add__(self, other: EquivariantClass | CycleClass | int) -> EquivariantClass:
        other = self._coerce(other)
        coeffs = dict(self._coeffs)
        for i, a in other._coeffs.items():
            coeffs[i] = coeffs[i] + a if i in coeffs else a
        return EquivariantClass(self._ring, coeffs)

    __radd__ = __add__

    def __neg__(self) -> EquivariantClass:
        return EquivariantClass(self._ring, {i: -a for i, a in self._coeffs.items()})

    def __sub__(self, other: EquivariantClass | CycleClass | int) -> EquivariantClass:
        return self + (-self._coerce(other))

    def __mul__(self, other: EquivariantClass | CycleClass | int) -> EquivariantClass:
        other = self._coerce(other)
        coeffs: dict[int, CycleClass] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                prod = a * b
                coeffs[i + j] = coeffs[i + j] + prod if i + j in coeffs else prod
        return EquivariantClass(self._ring, coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> EquivariantClass:
        if exponent < 0:
            raise DomainError("negative powers need inverse_up_to")
        result = EquivariantClass.one(self._ring)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquivariantClass):
            return NotImplemented
        return self._ring == other._ring and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._ring, frozenset(self._coeffs.items())))

    def graded_component(self, total: int) -> EquivariantClass:
        """Part of total codimension `total` (l counts as codimension 1)."""
        return EquivariantClass(
            self._ring, {i: a.graded_component(total - i) for i, a in self._coeffs.items()}
        )

    def truncate(self, max_total: int) -> EquivariantClass:
        return EquivariantClass(
            self._ring,
            {i: a.truncate(max_total - i) for i, a in self._coeffs.items() if i <= max_total},
        )

    def inverse_up_to(self, max_total: int) -> EquivariantClass:
        """Inverse of a series with constant term 1, exact in total degrees <= max_total."""
        if self.graded_component(0) != EquivariantClass.one(self._ring):
            raise DomainError("equivariant series must have constant term 1")
        nilpotent = self - 1
        result = EquivariantClass.one(self._ring)
        term = EquivariantClass.one(self._ring)
        for _ in range(max_total):
            term = (term * -nilpotent).truncate(max_total)
            if term.is_zero():
                break
            result = result + term
        return result.truncate(max_total)

    def epsilon(self) -> CycleClass:
        """Substitute l -> 1."""
        result = CycleClass.zero(self._ring)
        for a in self._coeffs.values():
            result = result + a
        return result

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in self.l_degrees():
            suffix = "" if i == 0 else ("l" if i == 1 else f"l^{i}")
            parts.append(f"({self._coeffs[i]})*{suffix}" if suffix else f"({self._coeffs[i]})")
        return " + ".join(parts)
