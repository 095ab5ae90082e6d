"""Abstract field descriptor and the element wrapper shared by every concrete field."""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from collections.abc import Iterator
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Any

from okubo.errors import FieldError, FieldMismatchError, PreconditionError

Scalar = int | Fraction


class Field(ABC):
    """A field descriptor. Elements are `FieldElement`s wrapping a canonical raw value."""

    characteristic: int
    spec: str  # canonical text, also the identity of the field

    # Raw-value arithmetic. Inputs are canonical, outputs must be canonical.

    @abstractmethod
    def _from_scalar(self, value: Scalar) -> Any: ...

    @abstractmethod
    def _add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _sub(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _neg(self, a: Any) -> Any: ...

    @abstractmethod
    def _inv(self, a: Any) -> Any: ...

    @abstractmethod
    def _is_zero(self, a: Any) -> bool: ...

    @abstractmethod
    def format_value(self, a: Any) -> str: ...

    @abstractmethod
    def parse_value(self, text: str) -> Any: ...

    @abstractmethod
    def sort_key(self, x: FieldElement) -> Any: ...

    @abstractmethod
    def lattice_values(self, height: int) -> list[FieldElement]:
        """Nonzero coefficients tried, in order, by deterministic lattice searches."""

    @abstractmethod
    def random_element(self, rng: random.Random) -> FieldElement: ...

    @abstractmethod
    def is_square(self, x: FieldElement) -> bool | None: ...

    @abstractmethod
    def sqrt(self, x: FieldElement) -> FieldElement | None: ...

    @abstractmethod
    def is_cube(self, x: FieldElement) -> bool: ...

    # ------------------------------------------------------------------
    # Descriptor protocol
    # ------------------------------------------------------------------

    @property
    def order(self) -> int | None:
        """Number of elements, None for infinite fields."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def is_perfect(self) -> bool:
        return self.characteristic == 0 or self.is_finite

    @cached_property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._from_scalar(0))

    @cached_property
    def one(self) -> FieldElement:
        return FieldElement(self, self._from_scalar(1))

    def __call__(self, value: FieldElement | Scalar | str) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldMismatchError(f"element of {value.field.spec} used in {self.spec}")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse_value(value))
        if isinstance(value, bool) or not isinstance(value, int | Fraction):
            raise TypeError(f"cannot coerce {type(value).__name__} into {self.spec}")
        return FieldElement(self, self._from_scalar(value))

    def parse(self, text: str) -> FieldElement:
        return FieldElement(self, self.parse_value(text))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return self.spec

    # ------------------------------------------------------------------
    # Derived queries
    # ------------------------------------------------------------------

    def cube_class_equal(self, x: FieldElement, y: FieldElement) -> bool:
        """Whether x/y is a cube."""
        x, y = self(x), self(y)
        if not x or not y:
            raise PreconditionError("cube classes are defined for nonzero elements only")
        return self.is_cube(x / y)

    def quadratic_roots(
        self, a: FieldElement | Scalar, b: FieldElement | Scalar, c: FieldElement | Scalar
    ) -> list[FieldElement]:
        """Roots in this field of a·X² + b·X + c, sorted, without repetition."""
        a, b, c = self(a), self(b), self(c)
        if not a:
            raise PreconditionError("leading coefficient must be nonzero")
        roots: set[FieldElement] = set()
        if self.characteristic != 2:
            s = self.sqrt(b * b - 4 * a * c)
            if s is not None:
                roots = {(-b + s) / (2 * a), (-b - s) / (2 * a)}
        elif not b:
            s = self.sqrt(c / a)
            if s is not None:
                roots = {s}
        elif self.is_finite:
            roots = {x for x in self.elements() if not (a * x * x + b * x + c)}
        else:
            raise PreconditionError(f"Artin-Schreier equations over {self.spec} are not supported")
        return sorted(roots, key=self.sort_key)

    def elements(self) -> Iterator[FieldElement]:
        raise FieldError(f"{self.spec} is infinite")

    def frobenius(self, x: FieldElement) -> FieldElement:
        """x^p, the identity in characteristic 0."""
        return x**self.characteristic if self.characteristic else x


class FiniteField(Field):
    """Shared behaviour of GF(p) and GF(p^k): indexing, Euler tests, tables."""

    @property
    @abstractmethod
    def order(self) -> int: ...

    @abstractmethod
    def index(self, x: FieldElement) -> int:
        """Position of x in the fixed enumeration 0 .. q-1 (0 is zero, 1 is one)."""

    @abstractmethod
    def from_index(self, i: int) -> FieldElement: ...

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.order):
            yield self.from_index(i)

    def sort_key(self, x: FieldElement) -> int:
        return self.index(x)

    def lattice_values(self, height: int) -> list[FieldElement]:
        return [self.from_index(i) for i in range(1, self.order)]

    def random_element(self, rng: random.Random) -> FieldElement:
        return self.from_index(rng.randrange(self.order))

    @cached_property
    def _square_roots(self) -> dict[FieldElement, FieldElement]:
        roots: dict[FieldElement, FieldElement] = {}
        for x in self.elements():
            roots.setdefault(x * x, x)
        return roots

    def is_square(self, x: FieldElement) -> bool:
        x = self(x)
        if not x or self.characteristic == 2:
            return True
        return x ** ((self.order - 1) // 2) == self.one

    def sqrt(self, x: FieldElement) -> FieldElement | None:
        return self._square_roots.get(self(x))

    def is_cube(self, x: FieldElement) -> bool:
        x = self(x)
        if not x:
            raise PreconditionError("cube test is defined for nonzero elements only")
        q = self.order
        if gcd(3, q - 1) == 1:
            return True
        return x ** ((q - 1) // 3) == self.one


class FieldElement:
    """An element of a `Field`. Immutable; arithmetic coerces ints and Fractions."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Any) -> None:
        self.field = field
        self.value = value

    def _raw(self, other: object) -> Any:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field.spec} with {other.field.spec}")
            return other.value
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return self.field._from_scalar(other)
        return NotImplemented

    def _wrap(self, value: Any) -> FieldElement:
        return FieldElement(self.field, value)

    def __add__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._add(self.value, raw))

    __radd__ = __add__

    def __sub__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._sub(self.value, raw))

    def __rsub__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._sub(raw, self.value))

    def __mul__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._mul(self.value, raw))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._mul(self.value, self.field._inv(raw)))

    def __rtruediv__(self, other: object) -> FieldElement:
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._mul(raw, self.field._inv(self.value)))

    def __neg__(self) -> FieldElement:
        return self._wrap(self.field._neg(self.value))

    def __pos__(self) -> FieldElement:
        return self

    def inverse(self) -> FieldElement:
        return self._wrap(self.field._inv(self.value))

    def __pow__(self, n: int) -> FieldElement:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one.value
        acc = base.value
        while n:
            if n & 1:
                result = self.field._mul(result, acc)
            n >>= 1
            if n:
                acc = self.field._mul(acc, acc)
        return self._wrap(result)

    def __bool__(self) -> bool:
        return not self.field._is_zero(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return (other.field is self.field or other.field == self.field) and other.value == self.value
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return self.field._from_scalar(other) == self.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.spec, self.value))

    def __str__(self) -> str:
        return self.field.format_value(self.value)

    def __repr__(self) -> str:
        return f"{self.field.spec}:{self}"
