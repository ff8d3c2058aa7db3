"""
Exact arithmetic kernels: prime moduli, finite fields, Lucas binomials,
p-th-power residue classes and Kummer polynomial factorization.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, Any

import galois

from .errors import DomainError

if TYPE_CHECKING:
    import random
    from collections.abc import Sequence

_LOGGER = logging.getLogger(__name__)

# Scalars are galois field elements; the aliases document which field they live in.
FpElement = galois.FieldArray
FqElement = galois.FieldArray


@lru_cache(maxsize=None)
def _galois_field(order: int) -> type[galois.FieldArray]:
    # galois picks the Conway polynomial as the defining polynomial of GF(l^d).
    return galois.GF(order)


@dataclass(frozen=True)
class PrimeModulus:
    """The fixed prime p; coefficients of every Chow class live in F_p."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 2 or not galois.is_prime(self.p):
            raise DomainError(f"{self.p!r} is not a prime")

    @property
    def field(self) -> type[galois.FieldArray]:
        return _galois_field(self.p)

    def element(self, value: int) -> FpElement:
        return self.field(value % self.p)

    def reduce(self, value: int) -> int:
        return value % self.p

    def inverse(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise DomainError(f"0 has no inverse mod {self.p}")
        return pow(value, -1, self.p)

    def __str__(self) -> str:
        return str(self.p)


class UnitGroupField(ABC):
    """A finite field seen through its multiplicative group."""

    @property
    @abstractmethod
    def order(self) -> int:
        """Number of elements."""

    @property
    @abstractmethod
    def characteristic(self) -> int:
        """Characteristic of the field."""

    @property
    @abstractmethod
    def identity(self) -> tuple[Any, ...]:
        """Hashable description of the field, used to compare classes."""

    @abstractmethod
    def one(self) -> Any:
        """Multiplicative identity."""

    @abstractmethod
    def multiply(self, a: Any, b: Any) -> Any:
        """Product of two elements."""

    @abstractmethod
    def power(self, a: Any, exponent: int) -> Any:
        """a ** exponent for a nonzero a (negative exponents allowed)."""

    @abstractmethod
    def is_zero(self, a: Any) -> bool:
        """True for the zero element."""

    @abstractmethod
    def key(self, a: Any) -> tuple[int, ...]:
        """Canonical coordinates of an element."""


class FqField(UnitGroupField):
    """
    The finite field F_q, q = l^d, with galois' Conway defining polynomial.

    Integers map into the prime subfield by reduction mod l.
    """

    def __init__(self, q: int) -> None:
        if not isinstance(q, int) or q < 2 or not galois.is_prime_power(q):
            raise DomainError(f"{q!r} is not a prime power")
        self.gf = _galois_field(q)

    @classmethod
    def of(cls, element: FqElement) -> FqField:
        return cls(type(element).order)

    @property
    def q(self) -> int:
        return int(self.gf.order)

    @property
    def order(self) -> int:
        return self.q

    @property
    def characteristic(self) -> int:
        return int(self.gf.characteristic)

    @property
    def degree(self) -> int:
        return int(self.gf.degree)

    @property
    def irreducible_poly(self) -> galois.Poly:
        return self.gf.irreducible_poly

    @property
    def identity(self) -> tuple[Any, ...]:
        return ("F", self.q)

    def element(self, value: int | Sequence[int]) -> FqElement:
        """Element from an integer (prime subfield) or from coordinates c_0 + c_1 x + ..."""
        ell = self.characteristic
        if isinstance(value, int):
            return self.gf(value % ell)
        if len(value) > self.degree:
            raise DomainError(f"{len(value)} coordinates exceed degree {self.degree}")
        return self.gf(sum((c % ell) * ell**i for i, c in enumerate(value)))

    def zero(self) -> FqElement:
        return self.gf(0)

    def one(self) -> FqElement:
        return self.gf(1)

    def multiply(self, a: Any, b: Any) -> Any:
        return a * b

    def power(self, a: Any, exponent: int) -> Any:
        return a**exponent

    def is_zero(self, a: Any) -> bool:
        return int(a) == 0

    def key(self, a: Any) -> tuple[int, ...]:
        return (int(a),)

    def random_unit(self, rng: random.Random) -> FqElement:
        return self.gf(rng.randrange(1, self.q))

    def units(self) -> list[FqElement]:
        return [self.gf(i) for i in range(1, self.q)]

    def primitive_element(self) -> FqElement:
        return self.gf.primitive_element

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FqField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(self.identity)

    def __repr__(self) -> str:
        return f"FqField({self.q})"


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem, as a plain integer."""
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    result = 1
    while n or k:
        n_digit, k_digit = n % p, k % p
        if k_digit > n_digit:
            return 0
        result = result * math.comb(n_digit, k_digit) % p
        n //= p
        k //= p
    return result


def binom_neg_mod(n: int, k: int, p: int) -> int:
    """C(-n, k) mod p, as a plain integer."""
    if n < 1 or k < 0:
        raise DomainError("C(-n, k) needs n >= 1 and k >= 0")
    value = binom_mod(n + k - 1, k, p)
    return (-value) % p if k % 2 else value


def binom_mod_p(n: int, k: int, modulus: PrimeModulus) -> FpElement:
    """C(n, k) mod p computed digit-wise in base p."""
    return modulus.element(binom_mod(n, k, modulus.p))


def binom_neg_mod_p(n: int, k: int, modulus: PrimeModulus) -> FpElement:
    """C(-n, k) = (-1)^k C(n+k-1, k) mod p."""
    return modulus.element(binom_neg_mod(n, k, modulus.p))


@dataclass(frozen=True)
class PthPowerClass:
    """
    An element of F^x / (F^x)^p.

    Classes are keyed by the character value w^((Q-1)/p), a p-th root of
    unity that is trivial exactly on p-th powers. When p does not divide Q-1
    every unit is a p-th power and the key is that of 1.
    """

    unit_field: UnitGroupField = field(compare=False, repr=False)
    modulus: PrimeModulus
    field_identity: tuple[Any, ...]
    character: tuple[int, ...]
    representative: Any = field(compare=False)

    @property
    def is_trivial(self) -> bool:
        return self.character == self.unit_field.key(self.unit_field.one())

    def _check(self, other: PthPowerClass) -> None:
        if other.field_identity != self.field_identity or other.modulus != self.modulus:
            raise DomainError("p-th power classes over different fields")

    def __mul__(self, other: PthPowerClass) -> PthPowerClass:
        self._check(other)
        product = self.unit_field.multiply(self.representative, other.representative)
        return pth_power_class(product, self.modulus, self.unit_field)

    def __pow__(self, exponent: int) -> PthPowerClass:
        return pth_power_class(
            self.unit_field.power(self.representative, exponent), self.modulus, self.unit_field
        )

    def inverse(self) -> PthPowerClass:
        return self**-1


def pth_power_class(
    u: Any, modulus: PrimeModulus, unit_field: UnitGroupField | None = None
) -> PthPowerClass:
    """Class of a nonzero field element modulo p-th powers, by exponentiation."""
    unit_field = unit_field or FqField.of(u)
    if unit_field.characteristic == modulus.p:
        raise DomainError(f"characteristic {modulus.p} equals p")
    if unit_field.is_zero(u):
        raise DomainError("zero has no p-th power class")
    group_order = unit_field.order - 1
    if group_order % modulus.p:
        character = unit_field.key(unit_field.one())
    else:
        character = unit_field.key(unit_field.power(u, group_order // modulus.p))
    return PthPowerClass(unit_field, modulus, unit_field.identity, character, u)


def same_class(
    u: Any, v: Any, modulus: PrimeModulus, unit_field: UnitGroupField | None = None
) -> bool:
    return pth_power_class(u, modulus, unit_field) == pth_power_class(v, modulus, unit_field)


def _kummer_poly(a: FqElement, modulus: PrimeModulus) -> galois.Poly:
    gf = type(a)
    if int(gf.characteristic) == modulus.p:
        raise DomainError(f"characteristic {modulus.p} equals p")
    if int(a) == 0:
        raise DomainError("t^p - a needs a nonzero a")
    coeffs = [1] + [0] * (modulus.p - 1) + [int(-a)]
    return galois.Poly(coeffs, field=gf)


def factor_kummer(a: FqElement, modulus: PrimeModulus) -> list[tuple[int, int]]:
    """(degree, multiplicity) of the irreducible factors of t^p - a, sorted."""
    factors, multiplicities = _kummer_poly(a, modulus).factors()
    result = sorted((int(f.degree), int(m)) for f, m in zip(factors, multiplicities, strict=True))
    assert sum(d * m for d, m in result) == modulus.p
    assert all(m == 1 for _, m in result)
    _LOGGER.debug("t^%d - %s over F_%d splits as %s", modulus.p, a, type(a).order, result)
    return result


def kummer_roots(a: FqElement, modulus: PrimeModulus) -> list[FqElement]:
    """Roots of t^p - a in F_q, sorted by integer representation."""
    roots = _kummer_poly(a, modulus).roots()
    return sorted((type(a)(int(r)) for r in roots), key=int)
