"""F_p(t): reduced fractions of polynomials over GF(p) with a monic denominator.

Polynomials are galoistools lists (highest degree first) frozen into tuples.
"""

from __future__ import annotations

import random
import re

from sympy import ZZ, isprime
from sympy.polys.galoistools import (
    gf_add,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_mul_ground,
    gf_neg,
    gf_pow,
    gf_quo,
    gf_sqf_list,
    gf_strip,
)

from okubo.errors import DegreeOverflowError, FieldError, ParseError, PreconditionError, WrongCharacteristicError
from okubo.fields.base import Field, FieldElement, Scalar

DEGREE_CAP = 64

Poly = tuple[int, ...]
Value = tuple[Poly, Poly]

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\^(\d+))?)?")


def _freeze(poly: list) -> Poly:
    return tuple(int(c) for c in poly)


def _degree(poly: Poly) -> int:
    return len(poly) - 1


def _exponents(poly: Poly) -> list[int]:
    n = _degree(poly)
    return [n - i for i, c in enumerate(poly) if c]


class RationalFunctionField(Field):
    def __init__(self, p: int) -> None:
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.spec = f"F{p}(t)"

    # ------------------------------------------------------------------
    # Canonical form
    # ------------------------------------------------------------------

    def _reduce(self, num: list, den: list) -> Value:
        p = self.p
        num, den = gf_strip(list(num)), gf_strip(list(den))
        if not den:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        if not num:
            return (), (1,)
        g = gf_gcd(num, den, p, ZZ)
        if len(g) > 1:
            num, den = gf_quo(num, g, p, ZZ), gf_quo(den, g, p, ZZ)
        lc, den = gf_monic(den, p, ZZ)
        if lc != 1:
            num = gf_mul_ground(num, pow(int(lc), -1, p), p, ZZ)
        value = _freeze(num), _freeze(den)
        if _degree(value[0]) > DEGREE_CAP or _degree(value[1]) > DEGREE_CAP:
            raise DegreeOverflowError(f"rational function exceeds degree {DEGREE_CAP} in {self.spec}")
        return value

    def _from_scalar(self, value: Scalar) -> Value:
        if isinstance(value, int):
            c = value % self.p
            return ((c,) if c else ()), (1,)
        return self._reduce([value.numerator % self.p], [value.denominator % self.p])

    def _add(self, a: Value, b: Value) -> Value:
        p = self.p
        if a[1] == b[1]:
            return self._reduce(gf_add(list(a[0]), list(b[0]), p, ZZ), list(a[1]))
        num = gf_add(gf_mul(list(a[0]), list(b[1]), p, ZZ), gf_mul(list(b[0]), list(a[1]), p, ZZ), p, ZZ)
        return self._reduce(num, gf_mul(list(a[1]), list(b[1]), p, ZZ))

    def _sub(self, a: Value, b: Value) -> Value:
        return self._add(a, self._neg(b))

    def _mul(self, a: Value, b: Value) -> Value:
        p = self.p
        if not a[0] or not b[0]:
            return (), (1,)
        return self._reduce(gf_mul(list(a[0]), list(b[0]), p, ZZ), gf_mul(list(a[1]), list(b[1]), p, ZZ))

    def _neg(self, a: Value) -> Value:
        return _freeze(gf_neg(list(a[0]), self.p, ZZ)), a[1]

    def _inv(self, a: Value) -> Value:
        if not a[0]:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return self._reduce(list(a[1]), list(a[0]))

    def _is_zero(self, a: Value) -> bool:
        return not a[0]

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    @staticmethod
    def _format_poly(poly: Poly) -> str:
        if not poly:
            return "0"
        n = _degree(poly)
        terms = []
        for i, c in reversed(list(enumerate(poly))):
            if not c:
                continue
            e = n - i
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            coeff = str(c) if (c != 1 or e == 0) else ""
            terms.append(coeff + mono)
        return "+".join(terms)

    def format_value(self, a: Value) -> str:
        num, den = a
        if den == (1,):
            return self._format_poly(num)
        return f"({self._format_poly(num)})/({self._format_poly(den)})"

    def _parse_poly(self, text: str) -> list[int]:
        text = text.replace(" ", "")
        while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
            text = text[1:-1]
        if not text:
            raise ParseError("empty polynomial")
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ParseError(f"cannot parse polynomial {text!r} at position {pos}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
            coeffs[e] = (coeffs.get(e, 0) + sign * c) % self.p
            pos = m.end()
        top = max(coeffs)
        return gf_strip([coeffs.get(e, 0) for e in range(top, -1, -1)])

    def parse_value(self, text: str) -> Value:
        text = text.strip()
        while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
            text = text[1:-1]
        depth, split = 0, None
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "/" and depth == 0:
                if split is not None:
                    raise ParseError(f"more than one top-level '/' in {text!r}")
                split = i
        if split is None:
            return self._reduce(self._parse_poly(text), [1])
        return self._reduce(self._parse_poly(text[:split]), self._parse_poly(text[split + 1 :]))

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def t(self) -> FieldElement:
        return FieldElement(self, ((1, 0), (1,)))

    def polynomial(self, coeffs_low_first: list[int]) -> FieldElement:
        return FieldElement(self, self._reduce(list(reversed(coeffs_low_first)), [1]))

    def sort_key(self, x: FieldElement) -> tuple:
        num, den = x.value
        return (len(num) + len(den), den, num)

    def lattice_values(self, height: int) -> list[FieldElement]:
        values = [self(c) for c in range(1, self.p)]
        for k in range(1, height + 1):
            values.append(self.t**k)
        for k in range(1, height + 1):
            values.append(self.t**k + 1)
        for k in range(1, height + 1):
            values.append(self.t**-k)
        return values

    def random_element(self, rng: random.Random) -> FieldElement:
        num = [rng.randrange(self.p) for _ in range(3)]
        den = [1, rng.randrange(self.p)] if rng.random() < 0.5 else [1]
        return FieldElement(self, self._reduce(num, den))

    def _in_frobenius_image(self, x: FieldElement) -> bool:
        num, den = x.value
        return all(e % self.p == 0 for e in _exponents(num) + _exponents(den))

    def _power_part(self, poly: Poly, k: int) -> list | None:
        """Monic g with poly = lc * g^k, or None when no such g exists."""
        p = self.p
        lc, factors = gf_sqf_list(list(poly), p, ZZ)
        root = [1]
        for g, m in factors:
            if m % k:
                return None
            root = gf_mul(root, gf_pow(g, m // k, p, ZZ), p, ZZ)
        return root

    def is_square(self, x: FieldElement) -> bool | None:
        return self.sqrt(x) is not None if self(x) else True

    def sqrt(self, x: FieldElement) -> FieldElement | None:
        x = self(x)
        if not x:
            return x
        num, den = x.value
        if self.p == 2:
            if not self._in_frobenius_image(x):
                return None
            halve = lambda poly: [poly[i] for i in range(0, len(poly), 2)]  # noqa: E731
            return FieldElement(self, self._reduce(halve(num), halve(den)))
        lc = num[0]
        lc_root = next((r for r in range(self.p) if r * r % self.p == lc), None)
        if lc_root is None:
            return None
        top, bottom = self._power_part(num, 2), self._power_part(den, 2)
        if top is None or bottom is None:
            return None
        return FieldElement(self, self._reduce(gf_mul_ground(top, lc_root, self.p, ZZ), bottom))

    def is_cube(self, x: FieldElement) -> bool:
        x = self(x)
        if not x:
            raise PreconditionError("cube test is defined for nonzero elements only")
        if self.p == 3:
            return self._in_frobenius_image(x)
        num, den = x.value
        lc = num[0]
        if not any(pow(r, 3, self.p) == lc for r in range(1, self.p)):
            return False
        return self._power_part(num, 3) is not None and self._power_part(den, 3) is not None

    def in_frobenius_subfield(self, x: FieldElement) -> bool:
        """Whether x lies in F_p(t^p)."""
        return self._in_frobenius_image(self(x))

    def frobenius_decompose(self, x: FieldElement) -> tuple[FieldElement, ...]:
        """Coordinates (c_0, ..., c_{p-1}) in F_p(t^p) with x = Σ c_r t^r."""
        p = self.p
        num, den = self(x).value
        den_power = gf_pow(list(den), p - 1, p, ZZ)
        top = gf_mul(list(num), den_power, p, ZZ)
        bottom = gf_mul(den_power, list(den), p, ZZ)
        n = len(top) - 1
        parts: list[dict[int, int]] = [{} for _ in range(p)]
        for i, c in enumerate(top):
            if c:
                e = n - i
                parts[e % p][e - e % p] = int(c)
        coords = []
        for part in parts:
            if not part:
                coords.append(self.zero)
                continue
            hi = max(part)
            poly = [part.get(e, 0) for e in range(hi, -1, -1)]
            coords.append(FieldElement(self, self._reduce(poly, bottom)))
        return tuple(coords)

    def f3_subfield_decompose(self, x: FieldElement) -> tuple[FieldElement, FieldElement, FieldElement]:
        if self.p != 3:
            raise WrongCharacteristicError(f"F3(t)-decomposition requested over {self.spec}")
        c0, c1, c2 = self.frobenius_decompose(x)
        return c0, c1, c2


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0

