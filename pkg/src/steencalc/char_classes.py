"""
Splitting-principle characteristic classes: Chern, Segre, the b- and omega-classes
(products of 1 +/- x_i^{p-1} over Chern roots) and the mu-class of a weighted filtration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

import sympy

from .chow_ring import CycleClass, EquivariantClass, RingSpec, invert_unit_series
from .errors import DomainError, MalformedSpecError, RingMismatchError, UnsupportedOperationError

if TYPE_CHECKING:
    from collections.abc import Sequence

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BundleClass:
    """A formal bundle: rank and total Chern class (constant term 1)."""

    rank: int
    total_chern: CycleClass
    honest: bool = True

    def __post_init__(self) -> None:
        if self.total_chern.graded_component(0) != CycleClass.one(self.total_chern.ring):
            raise DomainError("total Chern class must have constant term 1")
        if self.honest:
            if self.rank < 0:
                raise DomainError("an honest bundle has nonnegative rank")
            if any(c > self.rank for c in self.total_chern.codimensions()):
                raise DomainError(f"Chern classes above codimension {self.rank} must vanish")

    @property
    def ring(self) -> RingSpec:
        return self.total_chern.ring

    def chern(self, k: int) -> CycleClass:
        return self.total_chern.graded_component(k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BundleClass):
            return NotImplemented
        return self.rank == other.rank and self.total_chern == other.total_chern

    def __hash__(self) -> int:
        return hash((self.rank, self.total_chern))

    def __neg__(self) -> BundleClass:
        return BundleClass(-self.rank, invert_unit_series(self.total_chern), honest=False)


def line_bundle(c1: CycleClass) -> BundleClass:
    if not c1.is_homogeneous(1):
        raise DomainError("first Chern class must have codimension 1")
    return BundleClass(1, 1 + c1)


def split_bundle(c1s: Sequence[CycleClass], ring: RingSpec) -> BundleClass:
    total = CycleClass.one(ring)
    for c1 in c1s:
        total = total * line_bundle(c1).total_chern
    return BundleClass(len(c1s), total)


def trivial_bundle(ring: RingSpec, rank: int = 0) -> BundleClass:
    return BundleClass(rank, CycleClass.one(ring))


def whitney_sum(v: BundleClass, w: BundleClass) -> BundleClass:
    """Ranks add and total Chern classes multiply."""
    if v.ring != w.ring:
        raise RingMismatchError("bundles over different rings")
    return BundleClass(v.rank + w.rank, v.total_chern * w.total_chern, v.honest and w.honest)


def segre_total(v: BundleClass) -> CycleClass:
    return invert_unit_series(v.total_chern)


@lru_cache(maxsize=None)
def _root_power_polynomials(
    rank: int, m: int
) -> tuple[tuple[tuple[tuple[int, ...], int], ...], ...]:
    """
    Elementary symmetric functions of x_i^m as integer polynomials in e_1..e_rank.

    Entry k-1 lists (exponent vector over e_1..e_rank, integer coefficient) for e'_k.
    """
    e = sympy.symbols(f"e1:{rank + 1}")

    def elem(i: int) -> sympy.Expr:
        return e[i - 1] if 1 <= i <= rank else sympy.Integer(0)

    # Newton: P_j = sum_{i<j} (-1)^(i-1) e_i P_{j-i} + (-1)^(j-1) j e_j
    power_sums: list[sympy.Expr] = [sympy.Integer(rank)]
    for j in range(1, rank * m + 1):
        total = sum(
            ((-1) ** (i - 1) * elem(i) * power_sums[j - i] for i in range(1, j)),
            sympy.Integer(0),
        )
        total += (-1) ** (j - 1) * j * elem(j)
        power_sums.append(sympy.expand(total))

    # Power sums of the x_i^m are P_{jm}; invert Newton over QQ.
    transformed: list[sympy.Expr] = [sympy.Integer(1)]
    for k in range(1, rank + 1):
        acc = sum(
            ((-1) ** (i - 1) * transformed[k - i] * power_sums[i * m] for i in range(1, k + 1)),
            sympy.Integer(0),
        )
        transformed.append(sympy.expand(sympy.Rational(1, k) * acc))

    result = []
    for k in range(1, rank + 1):
        terms = []
        for monom, coeff in sympy.Poly(transformed[k], *e).terms():
            assert coeff.is_integer, f"non-integral Newton coefficient {coeff}"
            terms.append((tuple(int(x) for x in monom), int(coeff)))
        result.append(tuple(terms))
    _LOGGER.debug("root power polynomials for rank %d, m=%d computed", rank, m)
    return tuple(result)


def root_power_transform(v: BundleClass, m: int) -> BundleClass:
    """The rank-r bundle class whose Chern roots are the m-th powers of those of v."""
    if not v.honest:
        raise UnsupportedOperationError("root power transform needs an honest bundle")
    if m < 1:
        raise DomainError("root power exponent must be positive")
    if m == 1 or v.rank == 0:
        return v
    ring = v.ring
    chern = [v.chern(i) for i in range(1, v.rank + 1)]
    total = CycleClass.one(ring)
    for poly in _root_power_polynomials(v.rank, m):
        component = CycleClass.zero(ring)
        for exps, coeff in poly:
            term = CycleClass.constant(ring, coeff)
            for c, e in zip(chern, exps, strict=True):
                if e:
                    term = term * c**e
            component = component + term
        total = total + component
    return BundleClass(v.rank, total, honest=False)


def b_class(v: BundleClass) -> CycleClass:
    """b(V) = prod (1 + x_i^{p-1})."""
    return root_power_transform(v, v.ring.p - 1).total_chern


def b_virtual(positive: BundleClass, negative: BundleClass | None = None) -> CycleClass:
    """b(positive - negative) = b(positive) * b(negative)^{-1}."""
    value = b_class(positive)
    if negative is not None:
        value = value * invert_unit_series(b_class(negative))
    return value


def omega_class(v: BundleClass) -> CycleClass:
    """omega(V) = prod (1 - x_i^{p-1})."""
    p = v.ring.p
    transformed = root_power_transform(v, p - 1)
    result = CycleClass.one(v.ring)
    for k in range(1, v.rank + 1):
        result = result + transformed.chern(k * (p - 1)).scale((-1) ** k)
    return result


@dataclass(frozen=True)
class FilteredGBundle:
    """
    A mu_p-equivariant bundle given by a filtration: line quotients (c1, weight)
    and isotypic blocks (bundle, weight), weights reduced mod p.
    """

    ring: RingSpec
    lines: tuple[tuple[CycleClass, int], ...] = ()
    blocks: tuple[tuple[BundleClass, int], ...] = field(default=())

    def __post_init__(self) -> None:
        p = self.ring.p
        for c1, _ in self.lines:
            if c1.ring != self.ring:
                raise RingMismatchError("line class outside the bundle's ring")
            if not c1.is_homogeneous(1):
                raise MalformedSpecError("filtration quotients need codimension-1 classes")
        for bundle, _ in self.blocks:
            if bundle.ring != self.ring or not bundle.honest:
                raise MalformedSpecError("isotypic blocks must be honest bundles on the same ring")
        object.__setattr__(self, "lines", tuple((c, w % p) for c, w in self.lines))
        object.__setattr__(self, "blocks", tuple((b, w % p) for b, w in self.blocks))

    @property
    def rank(self) -> int:
        return len(self.lines) + sum(b.rank for b, _ in self.blocks)

    def weights(self) -> list[int]:
        return [w for _, w in self.lines] + [w for _, w in self.blocks]


def mu_class(bundle: FilteredGBundle) -> CycleClass:
    """mu(M) = prod (r_i + c_1(L_i)); a block (V, r) contributes sum_k c_k(V) r^{rank-k}."""
    ring = bundle.ring
    result = CycleClass.one(ring)
    for c1, weight in bundle.lines:
        result = result * (c1 + weight)
    for v, weight in bundle.blocks:
        factor = CycleClass.zero(ring)
        for k in range(v.rank + 1):
            factor = factor + v.chern(k).scale(weight ** (v.rank - k))
        result = result * factor
    return result


def tensor_H_filtration(c1s: Sequence[CycleClass], ring: RingSpec) -> FilteredGBundle:
    """Quotients (c1(M_i), j) for every line M_i and j = 1..p-1."""
    p = ring.p
    return FilteredGBundle(ring, tuple((c, j) for c in c1s for j in range(1, p)))


def tensor_H_bundle(v: BundleClass) -> FilteredGBundle:
    """V tensor H as isotypic blocks (V, j), j = 1..p-1; V need not be split."""
    p = v.ring.p
    return FilteredGBundle(v.ring, blocks=tuple((v, j) for j in range(1, p)))


def block_equivariant_chern(v: BundleClass, weight: int) -> EquivariantClass:
    """c^G(V twisted by weight j) = sum_i c_i(V) (1 + j l)^{rank - i}."""
    ring = v.ring
    base = EquivariantClass.one(ring) + EquivariantClass.l_power(ring, 1, weight)
    result = EquivariantClass(ring)
    for i in range(v.rank + 1):
        result = result + base ** (v.rank - i) * v.chern(i)
    return result


def equivariant_chern(bundle: FilteredGBundle) -> EquivariantClass:
    """Product of (1 + c1(L_i) + r_i l) over the filtration, times the block factors."""
    ring = bundle.ring
    result = EquivariantClass.one(ring)
    for c1, weight in bundle.lines:
        twisted = EquivariantClass.from_class(1 + c1) + EquivariantClass.l_power(ring, 1, weight)
        result = result * twisted
    for v, weight in bundle.blocks:
        result = result * block_equivariant_chern(v, weight)
    return result


def rho_on_split_bundle(bundle: FilteredGBundle, sigma: EquivariantClass) -> CycleClass:
    """mu(V)^{-1} applied to epsilon(sigma)."""
    if sigma.ring != bundle.ring:
        raise RingMismatchError("sigma and the bundle live over different rings")
    if any(w == 0 for w in bundle.weights()):
        raise DomainError("mu is singular: a filtration quotient has weight 0")
    mu = mu_class(bundle)
    leading = mu.constant_term()
    inverse_leading = bundle.ring.modulus.inverse(leading)
    inverse = invert_unit_series(mu.scale(inverse_leading)).scale(inverse_leading)
    return inverse * sigma.epsilon()
