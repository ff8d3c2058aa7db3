"""
Finite-dimensional Z/p-graded commutative algebras over F_q.

An algebra is stored with one global basis ordered by component and a
structure tensor T with e_a * e_b = sum_c T[a, b, c] e_c. Subspaces are kept
as reduced row echelon bases in global coordinates, so equality of
subspaces is equality of arrays.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from .arith import (
    FqField,
    PrimeModulus,
    PthPowerClass,
    factor_kummer,
    kummer_roots,
    pth_power_class,
)
from .errors import DomainError, MalformedSpecError, SteencalcError, UnsupportedOperationError
from .expression import ExpressionAlgebra, evaluate

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    import galois

_LOGGER = logging.getLogger(__name__)


class GradedAlgebra:
    """R = R_0 + R_1 + ... + R_{p-1}, validated at construction."""

    def __init__(
        self,
        field: FqField,
        modulus: PrimeModulus,
        names: Sequence[str],
        grades: Sequence[int],
        table: galois.FieldArray,
        unit: galois.FieldArray | None,
        name: str = "",
    ) -> None:
        if field.characteristic == modulus.p:
            raise DomainError(f"characteristic of F_{field.q} equals p = {modulus.p}")
        if len(names) != len(grades) or len(set(names)) != len(names):
            raise MalformedSpecError("basis names must be unique, one grade each")
        if list(grades) != sorted(g % modulus.p for g in grades):
            raise MalformedSpecError("basis must be ordered by component")
        n = len(names)
        if table.shape != (n, n, n):
            raise MalformedSpecError(f"structure tensor must have shape {(n, n, n)}")
        self.field = field
        self.modulus = modulus
        self.names = tuple(names)
        self.grades = tuple(grades)
        self.table = table
        self.unit = unit
        self.name = name
        self._validate()

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def gf(self) -> type[galois.FieldArray]:
        return self.field.gf

    @property
    def dim(self) -> int:
        return len(self.names)

    def indices(self, i: int) -> list[int]:
        i %= self.p
        return [a for a, g in enumerate(self.grades) if g == i]

    def component_dim(self, i: int) -> int:
        return len(self.indices(i))

    def component(self, i: int) -> Subspace:
        """R_i as a subspace."""
        rows = self.gf.Identity(self.dim)[self.indices(i)] if self.dim else self._empty()
        return Subspace(self, i, rows)

    def _empty(self) -> galois.FieldArray:
        return self.gf.Zeros((0, self.dim))

    def _flat(self) -> galois.FieldArray:
        return self.table.reshape(self.dim, self.dim * self.dim)

    def multiply(self, x: galois.FieldArray, y: galois.FieldArray) -> galois.FieldArray:
        left = (x @ self._flat()).reshape(self.dim, self.dim)
        return y @ left

    def power(self, x: galois.FieldArray, exponent: int) -> galois.FieldArray:
        if self.unit is None:
            return x
        result = self.unit.copy()
        base = x
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base)
        return result

    def _validate(self) -> None:
        n, t = self.dim, self.table
        if n == 0:
            if self.unit is not None:
                raise MalformedSpecError("the zero algebra has no unit vector")
            return
        grades = np.array(self.grades)
        expected = (grades[:, None, None] + grades[None, :, None]) % self.p
        misplaced = (t != 0) & (expected != grades[None, None, :])
        if np.any(misplaced):
            raise MalformedSpecError("structure constants do not respect the grading")
        if not np.array_equal(t, t.transpose(1, 0, 2)):
            raise MalformedSpecError("multiplication is not commutative")
        # left[a, b, d, e] = ((e_a e_b) e_d)_e; right holds (e_b e_d) e_a
        left = (t.reshape(n * n, n) @ self._flat()).reshape(n, n, n, n)
        if not np.array_equal(left, left.transpose(2, 0, 1, 3)):
            raise MalformedSpecError("multiplication is not associative")
        if self.unit is None:
            raise MalformedSpecError("a nonzero algebra needs a unit")
        if any(self.unit[a] != 0 for a in range(n) if self.grades[a] != 0):
            raise MalformedSpecError("the unit must lie in R_0")
        acting = (self.unit @ self._flat()).reshape(n, n)
        if not np.array_equal(acting, self.gf.Identity(n)):
            raise MalformedSpecError("the unit law fails")

    def __repr__(self) -> str:
        dims = [self.component_dim(i) for i in range(self.p)]
        return f"GradedAlgebra({self.name or 'R'}, q={self.field.q}, p={self.p}, dims={dims})"


class Subspace:
    """A subspace of one component, stored as a canonical RREF basis in global coordinates."""

    def __init__(self, algebra: GradedAlgebra, component: int, rows: galois.FieldArray) -> None:
        self.algebra = algebra
        self.component = component % algebra.p
        if rows.shape[0] == 0:
            self.basis = algebra.gf.Zeros((0, algebra.dim))
            return
        reduced = rows.row_reduce()
        keep = [r for r in range(reduced.shape[0]) if np.any(reduced[r] != 0)]
        self.basis = reduced[keep]

    @classmethod
    def zero(cls, algebra: GradedAlgebra, component: int) -> Subspace:
        return cls(algebra, component, algebra.gf.Zeros((0, algebra.dim)))

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.algebra, self.component, np.vstack([self.basis, other.basis]))

    def __mul__(self, other: Subspace) -> Subspace:
        """Span of all products u * v."""
        algebra = self.algebra
        target = self.component + other.component
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(algebra, target)
        n = algebra.dim
        partial = (self.basis @ algebra._flat()).reshape(self.dim, n, n)
        rows = [other.basis @ partial[r] for r in range(self.dim)]
        return Subspace(algebra, target, np.vstack(rows))

    def contains(self, other: Subspace) -> bool:
        self._check(other)
        if other.dim == 0:
            return True
        return int(np.linalg.matrix_rank(np.vstack([self.basis, other.basis]))) == self.dim

    def _check(self, other: Subspace) -> None:
        if other.algebra is not self.algebra or other.component != self.component:
            raise DomainError("subspaces of different components")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            other.algebra is self.algebra
            and other.component == self.component
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.component, self.dim))

    def __repr__(self) -> str:
        return f"Subspace(component={self.component}, dim={self.dim})"


class GradedIdeal:
    """An ideal given by one subspace per component, checked for R_j * J_i in J_{i+j}."""

    def __init__(self, algebra: GradedAlgebra, parts: Sequence[Subspace]) -> None:
        p = algebra.p
        if len(parts) != p or any(part.component != i for i, part in enumerate(parts)):
            raise MalformedSpecError("an ideal needs one subspace for each component")
        for i, part in enumerate(parts):
            for j in range(p):
                if not parts[(i + j) % p].contains(algebra.component(j) * part):
                    raise MalformedSpecError(f"R_{j} * J_{i} escapes J_{(i + j) % p}")
        self.algebra = algebra
        self.parts = tuple(parts)

    @classmethod
    def whole(cls, algebra: GradedAlgebra) -> GradedIdeal:
        return cls(algebra, [algebra.component(i) for i in range(algebra.p)])

    def __getitem__(self, i: int) -> Subspace:
        return self.parts[i % self.algebra.p]

    def __mul__(self, other: GradedIdeal) -> GradedIdeal:
        p = self.algebra.p
        parts = [Subspace.zero(self.algebra, m) for m in range(p)]
        for a in range(p):
            for b in range(p):
                m = (a + b) % p
                parts[m] = parts[m] + self.parts[a] * other.parts[b]
        return GradedIdeal(self.algebra, parts)

    def dims(self) -> list[int]:
        return [part.dim for part in self.parts]


def component_product(algebra: GradedAlgebra, i: int, j: int) -> Subspace:
    """R_i * R_j inside R_{i+j}."""
    return algebra.component(i) * algebra.component(j)


def fixed_ideal(algebra: GradedAlgebra) -> Subspace:
    """I = sum of R_i R_{p-i} over i = 1..p-1, inside R_0."""
    ideal = Subspace.zero(algebra, 0)
    for i in range(1, algebra.p):
        ideal = ideal + component_product(algebra, i, algebra.p - i)
    assert ideal.contains(algebra.component(0) * ideal), "I is not an R_0-submodule"
    return ideal


def _quotient_coordinates(
    vector: galois.FieldArray, ideal: Subspace, keep: Sequence[int]
) -> galois.FieldArray:
    reduced = vector.copy()
    for row in ideal.basis:
        pivot = int(np.flatnonzero(row != 0)[0])
        if reduced[pivot] != 0:
            reduced = reduced - reduced[pivot] * row
    return reduced[list(keep)]


def fixed_point_quotient(algebra: GradedAlgebra) -> GradedAlgebra:
    """R_0 / I, trivially graded; the zero algebra when I = R_0."""
    ideal = fixed_ideal(algebra)
    gf = algebra.gf
    pivots = {int(np.flatnonzero(row != 0)[0]) for row in ideal.basis}
    keep = [a for a in algebra.indices(0) if a not in pivots]
    m = len(keep)
    table = gf.Zeros((m, m, m))
    for x, a in enumerate(keep):
        for y, b in enumerate(keep):
            table[x, y] = _quotient_coordinates(algebra.table[a, b], ideal, keep)
    unit = None
    if m:
        assert algebra.unit is not None
        unit = _quotient_coordinates(algebra.unit, ideal, keep)
    names = [algebra.names[a] for a in keep]
    return GradedAlgebra(
        algebra.field, algebra.modulus, names, [0] * m, table, unit, f"{algebra.name}^G"
    )


@dataclass(frozen=True)
class TorsorConditions:
    """The equivalent torsor conditions; `field_dimensions` is None unless R_0 is a field."""

    no_fixed_points: bool
    fixed_ideal_is_r0: bool
    all_powers_are_r0: bool
    first_power_is_r0: bool
    pair_products_are_r0: bool
    products_bijective: bool
    field_dimensions: bool | None = None

    def values(self) -> list[bool]:
        checked = [
            self.no_fixed_points,
            self.fixed_ideal_is_r0,
            self.all_powers_are_r0,
            self.first_power_is_r0,
            self.pair_products_are_r0,
            self.products_bijective,
        ]
        if self.field_dimensions is not None:
            checked.append(self.field_dimensions)
        return checked

    @property
    def all_true(self) -> bool:
        return all(self.values())

    @property
    def mixed(self) -> bool:
        return len(set(self.values())) > 1

    def to_json(self) -> dict[str, Any]:
        return {
            "1": self.no_fixed_points,
            "2": self.fixed_ideal_is_r0,
            "3": self.all_powers_are_r0,
            "4": self.first_power_is_r0,
            "5": self.pair_products_are_r0,
            "6": self.products_bijective,
            "7": self.field_dimensions,
        }


def _component_power(algebra: GradedAlgebra, i: int) -> Subspace:
    power = algebra.component(i)
    for _ in range(algebra.p - 1):
        power = power * algebra.component(i)
    return power


def torsor_check(algebra: GradedAlgebra) -> TorsorConditions:
    p = algebra.p
    r0 = algebra.component(0)
    ideal = fixed_ideal(algebra)
    f = r0.dim
    bijective = all(algebra.component_dim(k) == f for k in range(p)) and all(
        component_product(algebra, k, l) == algebra.component(k + l)
        for k in range(p)
        for l in range(p)
    )
    field_dims = None
    if is_field(algebra):
        whole = sum(_ideal_dim(algebra, k) for k in range(p))
        tensor_dim = sum(
            algebra.component_dim(k) * algebra.component_dim(l) for k in range(p) for l in range(p)
        )
        field_dims = whole == p * algebra.dim and tensor_dim == p * algebra.dim * f
    conditions = TorsorConditions(
        no_fixed_points=fixed_point_quotient(algebra).dim == 0,
        fixed_ideal_is_r0=ideal == r0,
        all_powers_are_r0=all(_component_power(algebra, i) == r0 for i in range(1, p)),
        first_power_is_r0=_component_power(algebra, 1) == r0,
        pair_products_are_r0=all(
            component_product(algebra, i, p - i) == r0 for i in range(1, p)
        ),
        products_bijective=bijective,
        field_dimensions=field_dims,
    )
    _LOGGER.debug("torsor conditions for %r: %s", algebra, conditions.values())
    return conditions


def _ideal_dim(algebra: GradedAlgebra, k: int) -> int:
    """dim of R * R_k; the pieces lie in distinct components."""
    return sum(component_product(algebra, j, k).dim for j in range(algebra.p))


def _frobenius_matrix(algebra: GradedAlgebra) -> galois.FieldArray:
    r0 = algebra.indices(0)
    q = algebra.field.q
    identity = algebra.gf.Identity(algebra.dim)
    return np.vstack([algebra.power(identity[a], q)[r0] for a in r0])


def is_field(algebra: GradedAlgebra) -> bool:
    """R_0 is a field: Frobenius is injective and fixes a one-dimensional subspace."""
    f = algebra.component_dim(0)
    if f == 0:
        return False
    frob = _frobenius_matrix(algebra)
    if int(np.linalg.matrix_rank(frob)) != f:
        return False
    fixed = f - int(np.linalg.matrix_rank(frob - algebra.gf.Identity(f)))
    return fixed == 1


def kummer_parameter(algebra: GradedAlgebra) -> PthPowerClass:
    """Class of b^p in R_0 = F_q for a basis vector b of R_1."""
    if algebra.component_dim(0) != 1 or algebra.unit is None:
        raise UnsupportedOperationError("the Kummer parameter needs R_0 = F_q")
    if not torsor_check(algebra).all_true:
        raise DomainError("the algebra is not a torsor")
    b = algebra.component(1).basis[0]
    unit_index = algebra.indices(0)[0]
    value = algebra.power(b, algebra.p)[unit_index] / algebra.unit[unit_index]
    return pth_power_class(value, algebra.modulus, algebra.field)


def twist(algebra: GradedAlgebra, k: int) -> GradedAlgebra:
    """Regrade by R'_i = R_{ki}, so b' = b^k spans R'_1 and the Kummer parameter becomes a^k."""
    p = algebra.p
    if k % p == 0:
        raise DomainError("the twist index must be a unit mod p")
    perm = [a for i in range(p) for a in algebra.indices(k * i)]
    grades = [i for i in range(p) for _ in algebra.indices(k * i)]
    table = algebra.table[np.ix_(perm, perm, perm)] if perm else algebra.table
    unit = algebra.unit[perm] if algebra.unit is not None else None
    names = [algebra.names[a] for a in perm]
    return GradedAlgebra(
        algebra.field, algebra.modulus, names, grades, table, unit, f"{algebra.name}<{k % p}>"
    )


def _deformation_ideal(algebra: GradedAlgebra) -> GradedIdeal:
    """J = I + R_1 + ... + R_{p-1}."""
    parts = [fixed_ideal(algebra)] + [algebra.component(i) for i in range(1, algebra.p)]
    return GradedIdeal(algebra, parts)


def _powers(algebra: GradedAlgebra, kmax: int) -> list[GradedIdeal]:
    j = _deformation_ideal(algebra)
    powers = [GradedIdeal.whole(algebra)]
    for _ in range(kmax):
        powers.append(powers[-1] * j)
    return powers


def _deformed_piece(powers: Sequence[GradedIdeal], i: int, n: int) -> Subspace:
    """Component i of the deformed ring in t-degree n: (J^{-n})_i for n < 0, else R_i."""
    return powers[max(-n, 0)][i]


def _deformed_ideal(algebra: GradedAlgebra, powers: Sequence[GradedIdeal], n: int) -> Subspace:
    """
    t-degree n part of the deformed fixed ideal: sum of products of the deformed
    pieces of components i and p - i in t-degrees a and n - a.

    Splittings with a or n - a of the opposite sign to n land inside the ones summed
    here, since the pieces shrink as the t-degree falls.
    """
    p = algebra.p
    total = Subspace.zero(algebra, 0)
    for i in range(1, p):
        for a in range(min(n, 0), max(n, 0) + 1):
            total = total + _deformed_piece(powers, i, a) * _deformed_piece(powers, p - i, n - a)
    return total


def deformation_check(algebra: GradedAlgebra, kmax: int) -> bool:
    """
    The deformed fixed ideal in t-degree -k is (J^k)_0 for k = 1..kmax, and the
    fixed locus of the deformation is X^G x A^1 in degrees 0 and 1.
    """
    if kmax < 1:
        raise DomainError("kmax must be positive")
    p = algebra.p
    powers = _powers(algebra, kmax)
    for k in range(1, kmax + 1):
        lhs = powers[k][0]
        if _deformed_ideal(algebra, powers, -k) != lhs:
            _LOGGER.debug("deformed ideal differs from (J^%d)_0 on %r", k, algebra)
            return False
        recursive = Subspace.zero(algebra, 0)
        for i in range(1, p):
            recursive = recursive + powers[1][i] * powers[k - 1][p - i]
        if recursive != lhs:
            _LOGGER.debug("(J^%d)_0 is not generated by the mixed products on %r", k, algebra)
            return False
    report = deformation_report(algebra, kmax)
    fixed_dim = fixed_point_quotient(algebra).dim
    if report[0] != fixed_dim or report[1] != fixed_dim:
        _LOGGER.debug("deformed quotient %r does not match dim R_0/I = %d", report, fixed_dim)
        return False
    return True


def deformation_report(algebra: GradedAlgebra, kmax: int) -> dict[int, int]:
    """dim of R~_0 / I~ in each t-degree -kmax..1."""
    powers = _powers(algebra, kmax)
    return {
        n: _deformed_piece(powers, 0, n).dim - _deformed_ideal(algebra, powers, n).dim
        for n in range(-kmax, 2)
    }


def fiber_decomposition(q: int, p: int, a: int | Sequence[int]) -> list[tuple[int, int]]:
    """(residue degree, number of points) of the fiber t^p = a over F_q."""
    field = FqField(q)
    modulus = PrimeModulus(p)
    degrees = Counter(d for d, _ in factor_kummer(field.element(a), modulus))
    result = sorted(degrees.items())
    assert sum(d * count for d, count in result) == p
    return result


def fiber_orbits(q: int, p: int, a: int | Sequence[int]) -> list[list[int]]:
    """Rational points of t^p = a, grouped into orbits under the p-th roots of unity."""
    field = FqField(q)
    roots = kummer_roots(field.element(a), PrimeModulus(p))
    if (q - 1) % p:
        return [[int(r)] for r in roots]
    zeta = field.primitive_element() ** ((q - 1) // p)
    orbits: list[list[int]] = []
    seen: set[int] = set()
    for r in roots:
        if int(r) in seen:
            continue
        orbit = sorted({int(r * zeta**i) for i in range(p)})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _build(
    field: FqField,
    modulus: PrimeModulus,
    basis: Sequence[tuple[str, int]],
    products: Mapping[tuple[str, str], Mapping[str, Any]],
    unit: Mapping[str, Any] | None,
    name: str,
) -> GradedAlgebra:
    """Assemble an algebra from named basis elements and sparse products."""
    order = sorted(range(len(basis)), key=lambda a: (basis[a][1] % modulus.p, a))
    names = [basis[a][0] for a in order]
    grades = [basis[a][1] % modulus.p for a in order]
    index = {n: a for a, n in enumerate(names)}
    gf = field.gf
    n = len(names)
    table = gf.Zeros((n, n, n))
    for (x, y), value in products.items():
        if x not in index or y not in index:
            raise MalformedSpecError(f"product of unknown basis elements {x}, {y}")
        for z, c in value.items():
            if z not in index:
                raise MalformedSpecError(f"unknown basis element {z}")
            coeff = c if isinstance(c, gf) else field.element(int(c))
            table[index[x], index[y], index[z]] = coeff
            table[index[y], index[x], index[z]] = coeff
    unit_vector = None
    if unit is not None:
        unit_vector = gf.Zeros(n)
        for z, c in unit.items():
            unit_vector[index[z]] = c if isinstance(c, gf) else field.element(int(c))
    return GradedAlgebra(field, modulus, names, grades, table, unit_vector, name)


def _monomial_name(e: int) -> str:
    return "1" if e == 0 else ("t" if e == 1 else f"t^{e}")


def kummer_algebra(field: FqField, modulus: PrimeModulus, a: Any) -> GradedAlgebra:
    """F_q[t]/(t^p - a), deg t = 1."""
    p = modulus.p
    value = a if isinstance(a, field.gf) else field.element(a)
    products: dict[tuple[str, str], dict[str, Any]] = {}
    for i in range(p):
        for j in range(i, p):
            e = i + j
            if e < p:
                products[_monomial_name(i), _monomial_name(j)] = {_monomial_name(e): 1}
            elif value != 0:
                products[_monomial_name(i), _monomial_name(j)] = {_monomial_name(e - p): value}
    basis = [(_monomial_name(i), i) for i in range(p)]
    return _build(field, modulus, basis, products, {"1": 1}, f"Kummer({int(value)})")


def group_algebra(field: FqField, modulus: PrimeModulus) -> GradedAlgebra:
    """The trivial torsor F_q[t]/(t^p - 1)."""
    return kummer_algebra(field, modulus, 1)


def truncated_cone(field: FqField, modulus: PrimeModulus, m: int) -> GradedAlgebra:
    """F_q[t]/(t^m), deg t = 1."""
    if m < 1:
        raise DomainError("a truncated cone needs m >= 1")
    products = {
        (_monomial_name(i), _monomial_name(j)): {_monomial_name(i + j): 1}
        for i in range(m)
        for j in range(i, m - i)
    }
    basis = [(_monomial_name(i), i) for i in range(m)]
    return _build(field, modulus, basis, products, {"1": 1}, f"Cone({m})")


def monomial_algebra(
    field: FqField,
    modulus: PrimeModulus,
    degrees: Sequence[int],
    bounds: Sequence[int],
    killed: Iterable[Sequence[int]] = (),
    names: Sequence[str] | None = None,
) -> GradedAlgebra:
    """F_q[x_1..x_r]/(x_i^{bounds_i}, killed monomials) with deg x_i = degrees_i."""
    if len(degrees) != len(bounds):
        raise MalformedSpecError("one bound per variable is required")
    variables = list(names) if names else [f"x{i + 1}" for i in range(len(degrees))]
    killed = [tuple(k) for k in killed]

    def alive(exps: tuple[int, ...]) -> bool:
        if any(e >= b for e, b in zip(exps, bounds, strict=True)):
            return False
        return not any(all(e >= k for e, k in zip(exps, ks, strict=True)) for ks in killed)

    def label(exps: tuple[int, ...]) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps, strict=True) if e]
        return "*".join(parts) or "1"

    monomials = [m for m in np.ndindex(*bounds) if alive(tuple(m))] if bounds else [()]
    monomials = [tuple(int(e) for e in m) for m in monomials]
    products = {}
    for x in monomials:
        for y in monomials:
            z = tuple(a + b for a, b in zip(x, y, strict=True))
            if alive(z):
                products[label(x), label(y)] = {label(z): 1}
    basis = [(label(m), sum(e * d for e, d in zip(m, degrees, strict=True))) for m in monomials]
    return _build(field, modulus, basis, products, {"1": 1}, "Monomial")


def direct_product(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """A x B with componentwise grading; basis names get suffixes _1, _2."""
    _check_compatible(a, b)
    basis = [(f"{n}_1", g) for n, g in zip(a.names, a.grades, strict=True)]
    basis += [(f"{n}_2", g) for n, g in zip(b.names, b.grades, strict=True)]
    gf = a.gf
    na, nb = a.dim, b.dim
    raw = gf.Zeros((na + nb, na + nb, na + nb))
    raw[:na, :na, :na] = a.table
    raw[na:, na:, na:] = b.table
    unit = np.concatenate([_unit_or_zero(a), _unit_or_zero(b)])
    return _reorder(a, basis, raw, unit if (na + nb) else None, f"{a.name}x{b.name}")


def tensor_product(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """A tensor B over F_q with grade(x tensor y) = grade x + grade y."""
    _check_compatible(a, b)
    na, nb = a.dim, b.dim
    basis = [
        (f"{x}.{y}", gx + gy)
        for x, gx in zip(a.names, a.grades, strict=True)
        for y, gy in zip(b.names, b.grades, strict=True)
    ]
    outer = a.table[:, None, :, None, :, None] * b.table[None, :, None, :, None, :]
    raw = outer.reshape(na * nb, na * nb, na * nb)
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = (a.unit[:, None] * b.unit[None, :]).reshape(na * nb)
    return _reorder(a, basis, raw, unit, f"{a.name}.{b.name}")


def _unit_or_zero(algebra: GradedAlgebra) -> galois.FieldArray:
    return algebra.unit if algebra.unit is not None else algebra.gf.Zeros(0)


def _check_compatible(a: GradedAlgebra, b: GradedAlgebra) -> None:
    if a.field != b.field or a.modulus != b.modulus:
        raise MalformedSpecError("algebras over different fields or primes")


def _reorder(
    like: GradedAlgebra,
    basis: Sequence[tuple[str, int]],
    raw: galois.FieldArray,
    unit: galois.FieldArray | None,
    name: str,
) -> GradedAlgebra:
    p = like.p
    perm = sorted(range(len(basis)), key=lambda a: (basis[a][1] % p, a))
    table = raw[np.ix_(perm, perm, perm)] if perm else raw
    return GradedAlgebra(
        like.field,
        like.modulus,
        [basis[a][0] for a in perm],
        [basis[a][1] % p for a in perm],
        table,
        unit[perm] if unit is not None else None,
        name,
    )


class _Linear:
    """A formal F_q-combination of basis names; None keys a bare scalar."""

    def __init__(self, terms: Mapping[str | None, int]) -> None:
        self.terms = {k: v for k, v in terms.items() if v}

    def _scalar(self) -> int | None:
        if set(self.terms) <= {None}:
            return self.terms.get(None, 0)
        return None

    def __add__(self, other: _Linear) -> _Linear:
        keys = set(self.terms) | set(other.terms)
        return _Linear({k: self.terms.get(k, 0) + other.terms.get(k, 0) for k in keys})

    def __neg__(self) -> _Linear:
        return _Linear({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: _Linear) -> _Linear:
        return self + (-other)

    def __mul__(self, other: _Linear) -> _Linear:
        for scalar, vector in ((self._scalar(), other), (other._scalar(), self)):
            if scalar is not None:
                return _Linear({k: scalar * v for k, v in vector.terms.items()})
        raise DomainError("products of basis elements belong in the product table")

    def __pow__(self, exponent: int) -> _Linear:
        scalar = self._scalar()
        if scalar is None:
            raise DomainError("only scalars may be raised to powers here")
        return _Linear({None: scalar**exponent})


class _LinearCombinations(ExpressionAlgebra):
    def __init__(self, names: Sequence[str]) -> None:
        self.names = set(names)

    def constant(self, value: int) -> _Linear:
        return _Linear({None: value})

    def variable(self, name: str, position: int) -> _Linear:
        if name not in self.names:
            raise MalformedSpecError(f"unknown basis element {name!r} at position {position}")
        return _Linear({name: 1})


def _combination(text: str, names: Sequence[str]) -> dict[str, int]:
    value = evaluate(str(text), _LinearCombinations(names))
    if None in value.terms:
        raise MalformedSpecError(f"{text!r} is a bare scalar, not a combination of basis elements")
    return {k: v for k, v in value.terms.items() if k is not None}


def algebra_from_json(data: Mapping[str, Any]) -> GradedAlgebra:
    """{"p", "q", "components": {"0": [...]}, "products": [[x, y, "3*e"]], "unit": "e"}."""
    try:
        modulus = PrimeModulus(int(data["p"]))
        field = FqField(int(data["q"]))
        components = data["components"]
        basis = [(str(n), int(i)) for i, names in components.items() for n in names]
        names = [n for n, _ in basis]
        products = {
            (str(x), str(y)): _combination(z, names) for x, y, z in data.get("products", [])
        }
        unit_text = data.get("unit")
    except SteencalcError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSpecError(f"malformed algebra description: {exc}") from exc
    unit = _combination(unit_text, names) if unit_text is not None else None
    algebra = _build(field, modulus, basis, products, unit, str(data.get("name", "")))
    _LOGGER.info("loaded %r", algebra)
    return algebra
