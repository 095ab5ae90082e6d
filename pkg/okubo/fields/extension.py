"""GF(p^k) for k ≤ 4 as GF(p)[x]/(m(x)), with polynomial arithmetic from sympy's galoistools."""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from sympy import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_neg, gf_rem, gf_strip

from okubo.errors import FieldError, ParseError
from okubo.fields.base import FieldElement, FiniteField, Scalar
from okubo.fields.prime import MAX_ORDER

MAX_DEGREE = 4

Coeffs = tuple[int, ...]  # c_0 .. c_{k-1}, low degree first


def modulus_polynomial(p: int, coeffs: Coeffs) -> list[int]:
    """galoistools (high degree first) form of x^k + c_{k-1}x^{k-1} + ... + c_0."""
    return [1] + [c % p for c in reversed(coeffs)]


def first_irreducible(p: int, k: int) -> Coeffs:
    for coeffs in itertools.product(range(p), repeat=k):
        if coeffs[0] and gf_irreducible_p(modulus_polynomial(p, coeffs), p, ZZ):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class ExtensionField(FiniteField):
    def __init__(self, p: int, k: int, coeffs: Coeffs) -> None:
        if not 2 <= k <= MAX_DEGREE:
            raise FieldError(f"extension degree {k} outside 2..{MAX_DEGREE}")
        if p**k > MAX_ORDER:
            raise FieldError(f"GF({p}^{k}) has more than {MAX_ORDER} elements")
        if len(coeffs) != k:
            raise FieldError(f"modulus of degree {k} needs {k} coefficients, got {len(coeffs)}")
        coeffs = tuple(c % p for c in coeffs)
        self.modulus = modulus_polynomial(p, coeffs)
        if not gf_irreducible_p(self.modulus, p, ZZ):
            raise FieldError(f"modulus {self._modulus_text(coeffs)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.coeffs = coeffs
        self.characteristic = p
        self.spec = f"GF({p**k}; {','.join(map(str, coeffs))})"

    @staticmethod
    def _modulus_text(coeffs: Coeffs) -> str:
        terms = [f"x^{len(coeffs)}"] + [f"{c}x^{i}" for i, c in reversed(list(enumerate(coeffs))) if c]
        return " + ".join(terms)

    @property
    def order(self) -> int:
        return self.p**self.k

    # Conversions between coefficient vectors and galoistools lists

    def _poly(self, a: Coeffs) -> list[int]:
        return gf_strip(list(reversed(a)))

    def _vec(self, poly: list[int]) -> Coeffs:
        coeffs = [int(c) % self.p for c in reversed(poly)]
        return tuple(coeffs + [0] * (self.k - len(coeffs)))

    def _from_scalar(self, value: Scalar) -> Coeffs:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.spec}")
            value = value.numerator * pow(value.denominator, -1, self.p)
        return (value % self.p,) + (0,) * (self.k - 1)

    def _add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        product = gf_mul(self._poly(a), self._poly(b), self.p, ZZ)
        return self._vec(gf_rem(product, self.modulus, self.p, ZZ))

    def _neg(self, a: Coeffs) -> Coeffs:
        return self._vec(gf_neg(self._poly(a), self.p, ZZ))

    def _inv(self, a: Coeffs) -> Coeffs:
        if not any(a):
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        s, _, h = gf_gcdex(self._poly(a), self.modulus, self.p, ZZ)
        if h != [1]:
            raise FieldError(f"{self.format_value(a)} is not invertible modulo the field polynomial")
        return self._vec(s)

    def _is_zero(self, a: Coeffs) -> bool:
        return not any(a)

    def format_value(self, a: Coeffs) -> str:
        return "[" + ",".join(map(str, a)) + "]"

    def parse_value(self, text: str) -> Coeffs:
        text = text.strip()
        if m := re.fullmatch(r"\[(.*)\]", text):
            parts = [s for s in m.group(1).split(",") if s.strip()]
            if len(parts) > self.k:
                raise ParseError(f"{text!r} has more than {self.k} coefficients")
            try:
                return self._vec_from_list([int(s) for s in parts])
            except ValueError as exc:
                raise ParseError(f"bad coefficient list {text!r}") from exc
        try:
            return self._from_scalar(Fraction(text))
        except ValueError as exc:
            raise ParseError(f"not an element of {self.spec}: {text!r}") from exc

    def _vec_from_list(self, coeffs: list[int]) -> Coeffs:
        return tuple(c % self.p for c in coeffs) + (0,) * (self.k - len(coeffs))

    def generator(self) -> FieldElement:
        """The class of x."""
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def index(self, x: FieldElement) -> int:
        return sum(c * self.p**i for i, c in enumerate(self(x).value))

    def from_index(self, i: int) -> FieldElement:
        coeffs = []
        for _ in range(self.k):
            i, c = divmod(i, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

