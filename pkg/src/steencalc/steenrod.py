"""
Steenrod operations on supported Chow rings.

S_X (cohomological) is the ring homomorphism determined by its seeds on the
generators; S^X (homological) is b(-T_X) * S_X. The subcone class and the
corcalc pipeline recompute S^X([Z]) from equivariant data so both routes can
be compared.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

from .char_classes import (
    BundleClass,
    FilteredGBundle,
    b_class,
    equivariant_chern,
    split_bundle,
    tensor_H_bundle,
    whitney_sum,
)
from .chow_ring import (
    CycleClass,
    EquivariantClass,
    RingSpec,
    invert_unit_series,
    lift_class,
    normalize,
    product_ring,
    projective_bundle_ring,
    projective_space_ring,
)
from .errors import (
    DomainError,
    MalformedSpecError,
    RingMismatchError,
    UnsupportedOperationError,
)

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from .arith import PrimeModulus
    from .chow_ring import Exponents

_LOGGER = logging.getLogger(__name__)


def _monomial_image(
    images: Sequence[CycleClass], exponents: Exponents, ring: RingSpec
) -> CycleClass:
    value = CycleClass.one(ring)
    for image, e in zip(images, exponents, strict=True):
        if e:
            value = value * image**e
    return value


def _overflow_monomials(domain: RingSpec, indices: Sequence[int], bound: int) -> list[Exponents]:
    """Monomials in the given generators just above codimension `bound`."""
    if not indices:
        return []
    gens = [domain.generators[i] for i in indices]
    top = bound + max(g.codim for g in gens)
    ranges = [range(min(g.nilpotency, top // g.codim + 1)) for g in gens]
    found = []
    for exps in itertools.product(*ranges):
        codim = sum(e * g.codim for e, g in zip(exps, gens, strict=True))
        if bound < codim <= top:
            full = [0] * len(domain.generators)
            for i, e in zip(indices, exps, strict=True):
                full[i] = e
            found.append(tuple(full))
    return found


def check_ring_map(domain: RingSpec, codomain: RingSpec, images: Sequence[CycleClass]) -> None:
    """Raise MalformedSpecError unless generator images define a graded ring map."""
    if len(images) != len(domain.generators):
        raise MalformedSpecError("one image per generator is required")
    for g, image in zip(domain.generators, images, strict=True):
        if image.ring != codomain:
            raise RingMismatchError(f"image of {g.name} lies in the wrong ring")
        if not image.is_homogeneous(g.codim):
            raise MalformedSpecError(f"image of {g.name} is not homogeneous of codim {g.codim}")
    for i, g in enumerate(domain.generators):
        if not (images[i] ** g.nilpotency).is_zero():
            raise MalformedSpecError(f"{g.name}^{g.nilpotency} = 0 is not preserved")
    for rule in domain.rules:
        lhs = _monomial_image(images, rule.lhs, codomain)
        rhs = CycleClass.zero(codomain)
        for m, c in rule.rhs:
            rhs = rhs + _monomial_image(images, m, codomain).scale(c)
        if lhs != rhs:
            raise MalformedSpecError("a rewrite relation is not preserved")
    checks = [(tuple(range(len(domain.generators))), domain.dimension)]
    checks.extend((b.generators, b.dimension) for b in domain.blocks)
    for indices, bound in checks:
        for exps in _overflow_monomials(domain, indices, bound):
            if not _monomial_image(images, exps, codomain).is_zero():
                raise MalformedSpecError("a dimension truncation is not preserved")


@dataclass(frozen=True, eq=False)
class VarietySpec:
    """A smooth variety: Chow ring, tangent bundle class and Steenrod seeds S_X(g)."""

    ring: RingSpec
    tangent: BundleClass
    seeds: Mapping[str, CycleClass] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if self.tangent.ring != self.ring:
            raise RingMismatchError("tangent class lives in another ring")
        if self.tangent.rank != self.ring.dimension:
            raise MalformedSpecError("tangent rank must equal the dimension")
        p = self.ring.p
        for g in self.ring.generators:
            if g.name not in self.seeds:
                raise MalformedSpecError(f"no Steenrod seed for generator {g.name}")
            seed = self.seeds[g.name]
            if seed.ring != self.ring:
                raise RingMismatchError(f"seed of {g.name} lives in another ring")
            if seed.graded_component(g.codim) != CycleClass.generator(self.ring, g.name):
                raise MalformedSpecError(f"seed of {g.name} does not start with {g.name}")
            if any((c - g.codim) % (p - 1) or c < g.codim for c in seed.codimensions()):
                raise MalformedSpecError(f"seed of {g.name} has codimensions off the p-1 lattice")
        check_ring_map(self.ring, self.ring, self.seed_images())

    @property
    def dimension(self) -> int:
        return self.ring.dimension

    @property
    def modulus(self) -> PrimeModulus:
        return self.ring.modulus

    @property
    def tangent_chern(self) -> CycleClass:
        return self.tangent.total_chern

    def seed_images(self) -> tuple[CycleClass, ...]:
        return tuple(self.seeds[g.name] for g in self.ring.generators)

    def fundamental_class(self) -> CycleClass:
        return CycleClass.one(self.ring)


def wu_seed(g: CycleClass) -> CycleClass:
    """S_X(g) = g (1 + g^{p-1}) for a codimension-1 generator."""
    if not g.is_homogeneous(1):
        raise DomainError("Wu seeds are defined for codimension-1 classes")
    return g * (1 + g ** (g.ring.p - 1))


def wu_seeds(ring: RingSpec) -> dict[str, CycleClass]:
    seeds = {}
    for g in ring.generators:
        if g.codim != 1:
            raise MalformedSpecError(
                f"generator {g.name} has codimension {g.codim}; supply its seed"
            )
        seeds[g.name] = wu_seed(CycleClass.generator(ring, g.name))
    return seeds


def projective_space(n: int, modulus: PrimeModulus) -> VarietySpec:
    ring = projective_space_ring(n, modulus)
    if n == 0:
        return VarietySpec(ring, BundleClass(0, CycleClass.one(ring)), {}, "P0")
    h = CycleClass.generator(ring, "h")
    return VarietySpec(ring, BundleClass(n, (1 + h) ** (n + 1)), wu_seeds(ring), f"P{n}")


def product_variety(factors: Sequence[VarietySpec]) -> VarietySpec:
    """X_1 x ... x X_m with T = sum of pulled-back tangent bundles and pulled-back seeds."""
    ring = product_ring([x.ring for x in factors])
    tangent = BundleClass(0, CycleClass.one(ring))
    seeds: dict[str, CycleClass] = {}
    offset = 0
    for x in factors:
        lifted = BundleClass(x.tangent.rank, lift_class(x.tangent_chern, ring, offset))
        tangent = whitney_sum(tangent, lifted)
        for i, g in enumerate(x.ring.generators):
            seeds[ring.generators[offset + i].name] = lift_class(x.seeds[g.name], ring, offset)
        offset += len(x.ring.generators)
    return VarietySpec(ring, tangent, seeds, "x".join(x.name for x in factors))


def product_of_projective_spaces(dims: Sequence[int], modulus: PrimeModulus) -> VarietySpec:
    if len(dims) == 1:
        return projective_space(dims[0], modulus)
    return product_variety([projective_space(n, modulus) for n in dims])


def projective_bundle(base: VarietySpec, chern: Sequence[CycleClass]) -> VarietySpec:
    """P(V) over the base; T = T_base + sum_i c_i(V) (1+z)^{r-i}, seeds by Wu for z."""
    ring = projective_bundle_ring(base.ring, chern)
    rank = len(chern)
    z = CycleClass.generator(ring, ring.generators[-1].name)
    relative = CycleClass.zero(ring)
    for i in range(rank + 1):
        c_i = CycleClass.one(ring) if i == 0 else lift_class(chern[i - 1], ring, 0)
        relative = relative + c_i * (1 + z) ** (rank - i)
    tangent_chern = lift_class(base.tangent_chern, ring, 0) * relative
    seeds = {name: lift_class(s, ring, 0) for name, s in base.seeds.items()}
    seeds[ring.generators[-1].name] = wu_seed(z)
    return VarietySpec(ring, BundleClass(ring.dimension, tangent_chern), seeds, ring.name)


@lru_cache(maxsize=1 << 14)
def _seed_monomial(x: VarietySpec, exponents: Exponents) -> CycleClass:
    return _monomial_image(x.seed_images(), exponents, x.ring)


def _check_ring(x: VarietySpec, gamma: CycleClass) -> None:
    if gamma.ring != x.ring:
        raise RingMismatchError(f"class does not live in Ch({x.name})")


def steenrod_coh_total(x: VarietySpec, gamma: CycleClass) -> CycleClass:
    """S_X(sum a_M M) = sum a_M prod seed(g)^{m_g}."""
    _check_ring(x, gamma)
    result = CycleClass.zero(x.ring)
    for exps, coeff in gamma.terms.items():
        result = result + _seed_monomial(x, exps).scale(coeff)
    return result


def _homogeneous_codim(gamma: CycleClass) -> int:
    codims = gamma.codimensions()
    if len(codims) > 1:
        raise DomainError(f"{gamma} is not homogeneous")
    return codims[0] if codims else 0


def steenrod_coh_k(x: VarietySpec, gamma: CycleClass, k: int) -> CycleClass:
    """S^k_X: Ch^n -> Ch^{n + k(p-1)}."""
    n = _homogeneous_codim(gamma)
    return steenrod_coh_total(x, gamma).graded_component(n + k * (x.ring.p - 1))


def b_minus_tangent(x: VarietySpec) -> CycleClass:
    """b(-T_X)."""
    return invert_unit_series(b_class(x.tangent))


def steenrod_hom_total(x: VarietySpec, gamma: CycleClass) -> CycleClass:
    """S^X = b(-T_X) * S_X."""
    return b_minus_tangent(x) * steenrod_coh_total(x, gamma)


def steenrod_hom_k(x: VarietySpec, gamma: CycleClass, k: int) -> CycleClass:
    """S^X_k on a homogeneous class: the part of S^X of codimension codim + k(p-1)."""
    n = _homogeneous_codim(gamma)
    return steenrod_hom_total(x, gamma).graded_component(n + k * (x.ring.p - 1))


def external_product(
    x: VarietySpec, y: VarietySpec, gamma: CycleClass, delta: CycleClass
) -> CycleClass:
    """gamma x delta in Ch(X x Y)."""
    _check_ring(x, gamma)
    _check_ring(y, delta)
    ring = product_ring([x.ring, y.ring])
    return lift_class(gamma, ring, 0) * lift_class(delta, ring, len(x.ring.generators))


def external_cartan_check(
    x: VarietySpec, y: VarietySpec, gamma: CycleClass, delta: CycleClass
) -> bool:
    """S_{XxY}(g x d) = S_X(g) x S_Y(d), and the same for S^."""
    xy = product_variety([x, y])
    product = external_product(x, y, gamma, delta)
    coh = steenrod_coh_total(xy, product) == external_product(
        x, y, steenrod_coh_total(x, gamma), steenrod_coh_total(y, delta)
    )
    hom = steenrod_hom_total(xy, product) == external_product(
        x, y, steenrod_hom_total(x, gamma), steenrod_hom_total(y, delta)
    )
    return coh and hom


@dataclass(frozen=True, eq=False)
class MorphismSpec:
    """f: source -> target given by pullbacks of the target's generators."""

    source: VarietySpec
    target: VarietySpec
    images: tuple[CycleClass, ...]
    kind: str
    fiber_dimension: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("linear-embedding", "projection"):
            raise MalformedSpecError(f"unknown morphism kind {self.kind!r}")
        check_ring_map(self.target.ring, self.source.ring, self.images)


def pullback(f: MorphismSpec, gamma: CycleClass) -> CycleClass:
    _check_ring(f.target, gamma)
    result = CycleClass.zero(f.source.ring)
    for exps, coeff in gamma.terms.items():
        result = result + _monomial_image(f.images, exps, f.source.ring).scale(coeff)
    return result


def linear_embedding(m: int, n: int, modulus: PrimeModulus) -> MorphismSpec:
    """P^m in P^n as a linear subspace; h pulls back to h."""
    if not 0 <= m <= n:
        raise DomainError("a linear embedding needs 0 <= m <= n")
    source = projective_space(m, modulus)
    target = projective_space(n, modulus)
    image = CycleClass.generator(source.ring, "h") if m > 0 else CycleClass.zero(source.ring)
    images = (image,) if n > 0 else ()
    return MorphismSpec(source, target, images, "linear-embedding")


def projection(r: int, x: VarietySpec) -> MorphismSpec:
    """q: P^r x X -> X."""
    source = product_variety([projective_space(r, x.modulus), x])
    offset = 1 if r > 0 else 0
    images = tuple(
        lift_class(CycleClass.generator(x.ring, g.name), source.ring, offset)
        for g in x.ring.generators
    )
    return MorphismSpec(source, x, images, "projection", fiber_dimension=r)


def pushforward_projection(q: MorphismSpec, gamma: CycleClass) -> CycleClass:
    """q_* for P^r x X -> X: the coefficient of h^r."""
    if q.kind != "projection":
        raise UnsupportedOperationError("pushforward is only available for projections")
    _check_ring(q.source, gamma)
    r = q.fiber_dimension
    if r == 0:
        return normalize(gamma.terms, q.target.ring)
    raw = {exps[1:]: c for exps, c in gamma.terms.items() if exps[0] == r}
    return normalize(raw, q.target.ring)


def epsilon(sigma: EquivariantClass) -> CycleClass:
    """l -> 1."""
    return sigma.epsilon()


def subcone_class(
    ambient: FilteredGBundle, cone: FilteredGBundle, cycle: CycleClass, codim: int
) -> EquivariantClass:
    """
    sum_{j+k=n} c^G_j(E) i_* s^G_k(C) for C over Z, E over X.

    The cone's classes are given as classes on X restricting to Z, and i_* is
    multiplication by `cycle` = [Z] of codimension `codim`. The result is the
    part of total codimension codim + rank E - rank C.
    """
    if ambient.ring != cone.ring or cycle.ring != ambient.ring:
        raise RingMismatchError("subcone data must live over one ring")
    if not cycle.is_homogeneous(codim) or cycle.is_zero():
        raise UnsupportedOperationError("the subvariety class must be nonzero of the given codim")
    target = codim + ambient.rank - cone.rank
    if target < 0:
        raise UnsupportedOperationError("cone rank exceeds what the ambient bundle can hold")
    segre = equivariant_chern(cone).inverse_up_to(target)
    value = equivariant_chern(ambient) * segre * cycle
    return value.graded_component(target)


def brolemma_check(sigma: EquivariantClass) -> bool:
    """True iff every l^i coefficient with (p-1) not dividing i vanishes."""
    step = sigma.ring.p - 1
    return all(i % step == 0 for i in sigma.l_degrees())


@dataclass(frozen=True)
class SubvarietyData:
    """Z in X with E = T_X (x) H, C = T_Z (x) H and [Z]."""

    ambient: FilteredGBundle
    cone: FilteredGBundle
    tangent: BundleClass
    cycle: CycleClass
    codim: int
    ambient_dimension: int
    dimension: int


def subvariety_data(x: VarietySpec, subspace_dim: int | None = None) -> SubvarietyData:
    """Z = X, or Z = P^m linear in X = P^n."""
    e = tensor_H_bundle(x.tangent)
    if subspace_dim is None or subspace_dim == x.dimension:
        return SubvarietyData(
            e, e, x.tangent, CycleClass.one(x.ring), 0, x.dimension, x.dimension
        )
    if x.ring.factors is None or len(x.ring.factors) != 1:
        raise UnsupportedOperationError("linear subvarieties need X = P^n")
    n, m = x.dimension, subspace_dim
    if not 0 <= m < n:
        raise UnsupportedOperationError(f"no linear P^{m} inside P^{n}")
    h = CycleClass.generator(x.ring, "h")
    tangent_z = BundleClass(m, ((1 + h) ** (m + 1)).truncate(m))
    return SubvarietyData(e, tensor_H_bundle(tangent_z), tangent_z, h ** (n - m), n - m, n, m)


@dataclass(frozen=True)
class CorcalcResult:
    subcone: EquivariantClass
    gammas: tuple[CycleClass, ...]
    decorated: CycleClass
    value: CycleClass


def corcalc_eval(x: VarietySpec, subspace_dim: int | None = None) -> CorcalcResult:
    """S^X([Z]) = b(-T_X)(sum (-1)^{e+n+i} gamma_i) with gamma_i = a_{(e-n-i)(p-1)}."""
    data = subvariety_data(x, subspace_dim)
    sigma = subcone_class(data.ambient, data.cone, data.cycle, data.codim)
    step = x.ring.p - 1
    e, n = data.ambient_dimension, data.dimension
    gammas = tuple(sigma.coefficient((e - n - i) * step) for i in range(e - n + 1))
    decorated = CycleClass.zero(x.ring)
    for i, gamma in enumerate(gammas):
        decorated = decorated + gamma.scale((-1) ** (e + n + i))
    value = b_minus_tangent(x) * decorated
    _LOGGER.debug("corcalc on %s with Z of dim %d: %s", x.name, n, value)
    return CorcalcResult(sigma, gammas, decorated, value)


def smooth_cycle_formula(x: VarietySpec, subspace_dim: int) -> CycleClass:
    """i_* b(-T_Z)([Z]) for Z = P^m linear in X = P^n."""
    data = subvariety_data(x, subspace_dim)
    return data.cycle * invert_unit_series(b_class(data.tangent))


def bsteenrod_check(f: MorphismSpec, gamma: CycleClass) -> bool:
    """b(N) f^*(S^X gamma) = S^Y(f^* gamma) for a linear embedding Y in X."""
    if f.kind != "linear-embedding":
        raise UnsupportedOperationError("normal bundles are known for linear embeddings only")
    y = f.source
    codim = f.target.dimension - y.dimension
    h = CycleClass.generator(y.ring, "h") if y.ring.generators else CycleClass.zero(y.ring)
    normal = split_bundle([h] * codim, y.ring)
    lhs = b_class(normal) * pullback(f, steenrod_hom_total(f.target, gamma))
    return lhs == steenrod_hom_total(y, pullback(f, gamma))
