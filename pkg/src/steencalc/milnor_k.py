"""
Milnor K-theory mod p of F_q(t) in degrees <= 2, realized at the level of
residues: places of P^1, valuations, divisors, tame symbols and the alpha
operator {f_1, ..., f_n} -> {a, f_1, ..., f_n}.

Symbols are never compared directly; every identity is checked place by
place in the residue fields, where K_1 is the unit group taken mod p-th powers.

Convention: tame_symbol({f, g}, x) is the class of (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)}
at x, and the differential of the complex is its inverse, so that the residue
of {pi, u} is the class of u.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import total_ordering
from typing import TYPE_CHECKING, Any

import galois

from .arith import FqField, PrimeModulus, PthPowerClass, UnitGroupField, pth_power_class
from .errors import DomainError, UnknownGeneratorError
from .expression import ExpressionAlgebra, evaluate

if TYPE_CHECKING:
    import random
    from collections.abc import Iterable, Mapping

_LOGGER = logging.getLogger(__name__)


def _is_zero(poly: galois.Poly) -> bool:
    return poly.degree == 0 and int(poly.coeffs[0]) == 0


def _constant(gf: type[galois.FieldArray], value: Any) -> galois.Poly:
    return galois.Poly([value], field=gf)


def _monic(poly: galois.Poly) -> galois.Poly:
    lead = poly.coeffs[0]
    return poly * _constant(type(lead), lead**-1)


class RationalFunction:
    """num/den over F_q with den monic and gcd(num, den) = 1."""

    __slots__ = ("den", "field", "num")

    def __init__(self, field: FqField, num: galois.Poly, den: galois.Poly | None = None) -> None:
        gf = field.gf
        den = den if den is not None else galois.Poly.One(field=gf)
        if _is_zero(den):
            raise DomainError("division by zero")
        if _is_zero(num):
            num, den = galois.Poly.Zero(field=gf), galois.Poly.One(field=gf)
        else:
            common = galois.gcd(num, den)
            num, den = num // common, den // common
            lead = den.coeffs[0]
            num, den = num * _constant(gf, lead**-1), _monic(den)
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, field: FqField, value: int | Any) -> RationalFunction:
        element = value if isinstance(value, field.gf) else field.element(int(value))
        return cls(field, _constant(field.gf, element))

    @classmethod
    def t(cls, field: FqField) -> RationalFunction:
        return cls(field, galois.Poly([1, 0], field=field.gf))

    def _coerce(self, other: RationalFunction | int) -> RationalFunction:
        if isinstance(other, int):
            return RationalFunction.constant(self.field, other)
        if other.field != self.field:
            raise DomainError("rational functions over different fields")
        return other

    def is_zero(self) -> bool:
        return _is_zero(self.num)

    def __add__(self, other: RationalFunction | int) -> RationalFunction:
        other = self._coerce(other)
        return RationalFunction(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(self.field, -self.num, self.den)

    def __sub__(self, other: RationalFunction | int) -> RationalFunction:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> RationalFunction:
        return self._coerce(other) - self

    def __mul__(self, other: RationalFunction | int) -> RationalFunction:
        other = self._coerce(other)
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalFunction | int) -> RationalFunction:
        other = self._coerce(other)
        if other.is_zero():
            raise DomainError("division by zero")
        return RationalFunction(self.field, self.num * other.den, self.den * other.num)

    def __pow__(self, exponent: int) -> RationalFunction:
        if exponent < 0:
            if self.is_zero():
                raise DomainError("zero has no inverse")
            return RationalFunction(self.field, self.den**-exponent, self.num**-exponent)
        return RationalFunction(self.field, self.num**exponent, self.den**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RationalFunction.constant(self.field, other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (
            self.field == other.field
            and _coeff_key(self.num) == _coeff_key(other.num)
            and _coeff_key(self.den) == _coeff_key(other.den)
        )

    def __hash__(self) -> int:
        return hash((self.field.q, _coeff_key(self.num), _coeff_key(self.den)))

    def __str__(self) -> str:
        num = _poly_text(self.num)
        if self.den.degree == 0:
            return num
        return f"({num})/({_poly_text(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction(F_{self.field.q}: {self})"


def _coeff_key(poly: galois.Poly) -> tuple[int, ...]:
    return tuple(int(c) for c in poly.coeffs)


def _poly_text(poly: galois.Poly) -> str:
    """Parseable text in t; only valid for prime fields."""
    terms = []
    for e, c in zip(range(poly.degree, -1, -1), _coeff_key(poly), strict=True):
        if c == 0:
            continue
        monomial = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        if not monomial:
            terms.append(str(c))
        else:
            terms.append(monomial if c == 1 else f"{c}*{monomial}")
    return " + ".join(terms) or "0"


class RationalFunctionAlgebra(ExpressionAlgebra):
    """Expressions in the single variable t with integer coefficients reduced into F_q."""

    def __init__(self, field: FqField) -> None:
        self.field = field

    def constant(self, value: int) -> RationalFunction:
        return RationalFunction.constant(self.field, value)

    def variable(self, name: str, position: int) -> RationalFunction:
        if name != "t":
            raise UnknownGeneratorError(name, position)
        return RationalFunction.t(self.field)

    def divide(self, numerator: Any, denominator: Any, position: int) -> RationalFunction:
        if denominator.is_zero():
            raise DomainError(f"division by zero at position {position}")
        return numerator / denominator  # type: ignore[no-any-return]


def parse_rational(text: str, field: FqField) -> RationalFunction:
    return evaluate(text, RationalFunctionAlgebra(field))  # type: ignore[no-any-return]


class ResidueField(UnitGroupField):
    """F_q[t]/(pi), elements as polynomials reduced mod pi."""

    def __init__(self, field: FqField, pi: galois.Poly) -> None:
        self.base = field
        self.pi = pi

    @property
    def degree(self) -> int:
        return int(self.pi.degree)

    @property
    def order(self) -> int:
        return self.base.q**self.degree

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def identity(self) -> tuple[Any, ...]:
        return ("F", self.base.q, _coeff_key(self.pi))

    def one(self) -> galois.Poly:
        return galois.Poly.One(field=self.base.gf)

    def reduce(self, poly: galois.Poly) -> galois.Poly:
        return poly % self.pi

    def multiply(self, a: Any, b: Any) -> galois.Poly:
        return (a * b) % self.pi

    def inverse(self, a: galois.Poly) -> galois.Poly:
        if self.is_zero(a):
            raise DomainError("zero is not a unit")
        d, s, _ = galois.egcd(a, self.pi)
        assert d.degree == 0
        return (s * _constant(self.base.gf, d.coeffs[0] ** -1)) % self.pi

    def power(self, a: Any, exponent: int) -> galois.Poly:
        if exponent < 0:
            return pow(self.inverse(a), -exponent, self.pi)
        return pow(a, exponent, self.pi)

    def is_zero(self, a: Any) -> bool:
        return _is_zero(a % self.pi)

    def key(self, a: Any) -> tuple[int, ...]:
        reduced = a % self.pi
        coeffs = [int(c) for c in reduced.coeffs[::-1]]
        return tuple(coeffs + [0] * (self.degree - len(coeffs)))

    def norm(self, a: galois.Poly) -> Any:
        """N(a) = a^((Q-1)/(q-1)), an element of F_q."""
        value = self.power(a, (self.order - 1) // (self.base.q - 1))
        assert value.degree == 0
        return value.coeffs[0]


@total_ordering
@dataclass(frozen=True)
class Place:
    """A closed point of P^1: a monic irreducible polynomial, or infinity (empty coefficients)."""

    q: int
    coeffs: tuple[int, ...]
    fq: FqField = field(compare=False, repr=False, hash=False)

    @classmethod
    def infinity(cls, field: FqField) -> Place:
        return cls(field.q, (), field)

    @classmethod
    def finite(cls, field: FqField, poly: galois.Poly) -> Place:
        if poly.degree < 1 or int(poly.coeffs[0]) != 1:
            raise DomainError("a finite place is a monic polynomial of positive degree")
        if not poly.is_irreducible():
            raise DomainError(f"{poly} is not irreducible")
        return cls(field.q, _coeff_key(poly), field)

    @property
    def is_infinite(self) -> bool:
        return not self.coeffs

    @property
    def poly(self) -> galois.Poly:
        if self.is_infinite:
            raise DomainError("the place at infinity has no polynomial")
        return galois.Poly(list(self.coeffs), field=self.fq.gf)

    @property
    def degree(self) -> int:
        return 1 if self.is_infinite else len(self.coeffs) - 1

    def residue_field(self) -> ResidueField:
        """F_q at infinity (represented as F_q[t]/(t)), F_q[t]/(pi) otherwise."""
        pi = galois.Poly([1, 0], field=self.fq.gf) if self.is_infinite else self.poly
        return ResidueField(self.fq, pi)

    def __lt__(self, other: Place) -> bool:
        return (self.is_infinite, self.degree, self.coeffs) < (
            other.is_infinite,
            other.degree,
            other.coeffs,
        )

    def __str__(self) -> str:
        return "inf" if self.is_infinite else _poly_text(self.poly)


def residue_field(x: Place) -> ResidueField:
    return x.residue_field()


def _multiplicity(poly: galois.Poly, pi: galois.Poly) -> int:
    count = 0
    while poly.degree >= pi.degree and _is_zero(poly % pi):
        poly = poly // pi
        count += 1
    return count


def valuation(f: RationalFunction, x: Place) -> int:
    if f.is_zero():
        raise DomainError("the valuation of 0 is undefined")
    if x.is_infinite:
        return int(f.den.degree) - int(f.num.degree)
    return _multiplicity(f.num, x.poly) - _multiplicity(f.den, x.poly)


def evaluate_at(f: RationalFunction, x: Place) -> galois.Poly:
    """Value of a unit at x in the residue field."""
    if valuation(f, x) != 0:
        raise DomainError(f"{f} is not a unit at {x}")
    if x.is_infinite:
        return _constant(f.field.gf, f.num.coeffs[0] / f.den.coeffs[0])
    kappa = x.residue_field()
    return kappa.multiply(kappa.reduce(f.num), kappa.inverse(kappa.reduce(f.den)))


def places_of_support(functions: Iterable[RationalFunction]) -> list[Place]:
    """Finite places dividing a numerator or denominator, plus infinity."""
    found: set[Place] = set()
    fields = set()
    for f in functions:
        if f.is_zero():
            raise DomainError("0 has no divisor")
        fields.add(f.field)
        for poly in (f.num, f.den):
            if poly.degree < 1:
                continue
            factors, _ = _monic(poly).factors()
            found.update(Place.finite(f.field, g) for g in factors)
    found.update(Place.infinity(k) for k in fields)
    return sorted(found)


def tame_symbol(
    f: RationalFunction, g: RationalFunction, x: Place, modulus: PrimeModulus
) -> PthPowerClass:
    """Class of (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} at x."""
    vf, vg = valuation(f, x), valuation(g, x)
    unit = f**vg / g**vf
    if (vf * vg) % 2:
        unit = -unit
    return pth_power_class(evaluate_at(unit, x), modulus, x.residue_field())


def milnor_residue(
    f: RationalFunction, g: RationalFunction, x: Place, modulus: PrimeModulus
) -> PthPowerClass:
    """The differential of the complex on {f, g} at x: the inverse tame class."""
    return tame_symbol(f, g, x, modulus).inverse()


@dataclass(frozen=True)
class SymbolChain:
    """A formal F_p-combination of symbols {f_1, ..., f_n} of one degree n in {1, 2}."""

    modulus: PrimeModulus
    terms: tuple[tuple[int, tuple[RationalFunction, ...]], ...]

    def __post_init__(self) -> None:
        degrees = {len(entries) for _, entries in self.terms}
        if len(degrees) > 1:
            raise DomainError("a chain mixes symbols of different degrees")
        if degrees and not degrees <= {1, 2}:
            raise DomainError("symbols of degree 1 or 2 only")
        if any(f.is_zero() for _, entries in self.terms for f in entries):
            raise DomainError("symbol entries must be nonzero")

    @classmethod
    def symbol(cls, modulus: PrimeModulus, *entries: RationalFunction) -> SymbolChain:
        return cls(modulus, ((1, tuple(entries)),))

    @property
    def degree(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0

    def __add__(self, other: SymbolChain) -> SymbolChain:
        if other.modulus != self.modulus:
            raise DomainError("chains modulo different primes")
        return SymbolChain(self.modulus, self.terms + other.terms)

    def scale(self, factor: int) -> SymbolChain:
        p = self.modulus.p
        return SymbolChain(self.modulus, tuple(((c * factor) % p, e) for c, e in self.terms))

    def functions(self) -> list[RationalFunction]:
        return [f for _, entries in self.terms for f in entries]


def alpha_apply(a: RationalFunction, chain: SymbolChain) -> SymbolChain:
    """Prepend a to every symbol."""
    if a.is_zero():
        raise DomainError("alpha needs a nonzero function")
    if chain.degree >= 2:
        raise DomainError("alpha would leave degrees <= 2")
    return SymbolChain(chain.modulus, tuple((c, (a, *entries)) for c, entries in chain.terms))


@dataclass(frozen=True)
class ResidueVector:
    """Finitely supported residues: integers mod p (degree 0) or p-th power classes (degree 1)."""

    degree: int
    values: Mapping[Place, Any]

    def is_zero(self) -> bool:
        return not self.values

    def __getitem__(self, x: Place) -> Any:
        return self.values.get(x, 0 if self.degree == 0 else None)

    def to_json(self) -> dict[str, Any]:
        result: dict[str, Any] = {}
        for x, value in sorted(self.values.items()):
            if self.degree == 0:
                result[str(x)] = value
            else:
                result[str(x)] = list(value.character)
        return result


def residues(chain: SymbolChain) -> ResidueVector:
    """The differential applied to a chain of degree 1 or 2."""
    p = chain.modulus.p
    places = places_of_support(chain.functions())
    if chain.degree == 1:
        ints = {}
        for x in places:
            total = sum(c * valuation(entries[0], x) for c, entries in chain.terms) % p
            if total:
                ints[x] = total
        return ResidueVector(0, ints)
    classes = {}
    for x in places:
        value: PthPowerClass | None = None
        for c, (f, g) in chain.terms:
            term = milnor_residue(f, g, x, chain.modulus) ** c
            value = term if value is None else value * term
        if value is not None and not value.is_trivial:
            classes[x] = value
        _LOGGER.debug("residue at %s: %s", x, value)
    return ResidueVector(1, classes)


def divisor_map(f: RationalFunction, modulus: PrimeModulus) -> ResidueVector:
    """x -> v_x(f) mod p."""
    return residues(SymbolChain.symbol(modulus, f))


def anticommute_check(a: RationalFunction, f: RationalFunction, modulus: PrimeModulus) -> bool:
    """
    d(alpha{f}) and alpha(d{f}) are inverse classes at every place where a is a unit.

    There d(alpha{f})_x is the residue of {a, f} and alpha(d{f})_x is a(x)^{v_x(f)}.
    """
    for x in places_of_support([a, f]):
        if valuation(a, x) != 0:
            continue
        kappa = x.residue_field()
        lhs = milnor_residue(a, f, x, modulus)
        rhs = pth_power_class(evaluate_at(a, x), modulus, kappa) ** valuation(f, x)
        if not (lhs * rhs).is_trivial:
            _LOGGER.debug("anticommutation fails at %s for a=%s, f=%s", x, a, f)
            return False
    return True


def reciprocity_check(f: RationalFunction, g: RationalFunction, modulus: PrimeModulus) -> bool:
    """The product of the norms of all tame symbols is a p-th power in F_q."""
    field = f.field
    product = field.one()
    for x in places_of_support([f, g]):
        cls = tame_symbol(f, g, x, modulus)
        product = product * x.residue_field().norm(cls.representative)
    return pth_power_class(product, modulus, field).is_trivial


def steinberg_check(f: RationalFunction, modulus: PrimeModulus) -> bool:
    """{f, 1-f} has trivial residues everywhere."""
    g = 1 - f
    if f.is_zero() or g.is_zero():
        raise DomainError("Steinberg relation needs f != 0, 1")
    return all(
        tame_symbol(f, g, x, modulus).is_trivial for x in places_of_support([f, g])
    )


def bilinearity_check(
    f1: RationalFunction, f2: RationalFunction, g: RationalFunction, modulus: PrimeModulus
) -> bool:
    """Tame symbols are multiplicative in each slot."""
    for x in places_of_support([f1, f2, g]):
        left = tame_symbol(f1 * f2, g, x, modulus)
        if left != tame_symbol(f1, g, x, modulus) * tame_symbol(f2, g, x, modulus):
            return False
        right = tame_symbol(g, f1 * f2, x, modulus)
        if right != tame_symbol(g, f1, x, modulus) * tame_symbol(g, f2, x, modulus):
            return False
    return True


def degree_formula_check(f: RationalFunction) -> bool:
    """sum over places of deg(x) v_x(f) = 0."""
    return sum(x.degree * valuation(f, x) for x in places_of_support([f])) == 0


def random_rational_function(
    field: FqField, rng: random.Random, max_degree: int = 3
) -> RationalFunction:
    """A random nonzero num/den with degrees <= max_degree."""

    def poly() -> galois.Poly:
        deg = rng.randint(0, max_degree)
        coeffs = [rng.randrange(1, field.q)] + [rng.randrange(field.q) for _ in range(deg)]
        return galois.Poly(coeffs, field=field.gf)

    return RationalFunction(field, poly(), poly())
