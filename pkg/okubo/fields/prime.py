"""GF(p): residues modulo a prime."""

from __future__ import annotations

from fractions import Fraction

from sympy import isprime, sqrt_mod

from okubo.errors import FieldError, ParseError
from okubo.fields.base import FieldElement, FiniteField, Scalar

MAX_ORDER = 10**4


class PrimeField(FiniteField):
    def __init__(self, p: int) -> None:
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_ORDER:
            raise FieldError(f"GF({p}) has more than {MAX_ORDER} elements")
        self.p = p
        self.characteristic = p
        self.spec = f"GF({p})"

    @property
    def order(self) -> int:
        return self.p

    def _from_scalar(self, value: Scalar) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.spec}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def _add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def _mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def _neg(self, a: int) -> int:
        return -a % self.p

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return pow(a, -1, self.p)

    def _is_zero(self, a: int) -> bool:
        return a == 0

    def format_value(self, a: int) -> str:
        return str(a)

    def parse_value(self, text: str) -> int:
        try:
            return self._from_scalar(Fraction(text.strip()))
        except ValueError as exc:
            raise ParseError(f"not an element of {self.spec}: {text!r}") from exc

    def index(self, x: FieldElement) -> int:
        return self(x).value

    def from_index(self, i: int) -> FieldElement:
        return FieldElement(self, i % self.p)

    def sqrt(self, x: FieldElement) -> FieldElement | None:
        x = self(x)
        if self.p == 2 or not x:
            return x
        root = sqrt_mod(x.value, self.p)
        return None if root is None else FieldElement(self, int(root))
