"""The rational numbers, on top of fractions.Fraction."""

from __future__ import annotations

import random
from fractions import Fraction

from sympy import integer_nthroot

from okubo.errors import ParseError, PreconditionError
from okubo.fields.base import Field, FieldElement, Scalar


def _exact_root(n: int, k: int) -> int | None:
    root, exact = integer_nthroot(n, k)
    return int(root) if exact else None


class RationalField(Field):
    characteristic = 0
    spec = "Q"

    def _from_scalar(self, value: Scalar) -> Fraction:
        return Fraction(value)

    def _add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def _sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def _mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def _neg(self, a: Fraction) -> Fraction:
        return -a

    def _inv(self, a: Fraction) -> Fraction:
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def _is_zero(self, a: Fraction) -> bool:
        return a == 0

    def format_value(self, a: Fraction) -> str:
        return str(a)

    def parse_value(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {text!r}") from exc

    def sort_key(self, x: FieldElement) -> Fraction:
        return x.value

    def lattice_values(self, height: int) -> list[FieldElement]:
        values = []
        for h in range(1, height + 1):
            values += [self(h), self(-h)]
        for h in range(2, height + 1):
            values += [self(Fraction(1, h)), self(Fraction(-1, h))]
        return values

    def random_element(self, rng: random.Random) -> FieldElement:
        return self(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def is_square(self, x: FieldElement) -> bool:
        return self.sqrt(x) is not None

    def sqrt(self, x: FieldElement) -> FieldElement | None:
        v = self(x).value
        if v < 0:
            return None
        num, den = _exact_root(v.numerator, 2), _exact_root(v.denominator, 2)
        if num is None or den is None:
            return None
        return self(Fraction(num, den))

    def is_cube(self, x: FieldElement) -> bool:
        v = self(x).value
        if not v:
            raise PreconditionError("cube test is defined for nonzero elements only")
        return _exact_root(abs(v.numerator), 3) is not None and _exact_root(v.denominator, 3) is not None


QQ = RationalField()
