"""Quadratic étale algebras K = F[ξ]/(ξ² − bξ − c) and their cube structure."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from okubo.errors import FieldError, FieldMismatchError, PreconditionError
from okubo.fields.base import Field, FieldElement

log = logging.getLogger(__name__)

KElem = tuple[FieldElement, FieldElement]  # x0 + x1·ξ


@dataclass(frozen=True, eq=False)
class EtaleAlgebra:
    field: Field
    b: FieldElement
    c: FieldElement

    def __post_init__(self) -> None:
        F = self.field
        object.__setattr__(self, "b", F(self.b))
        object.__setattr__(self, "c", F(self.c))
        if F.characteristic == 2:
            if not self.b:
                raise FieldError(f"ξ² = {self.c} is inseparable over {F.spec}")
        elif not self.discriminant:
            raise FieldError(f"ξ² − ({self.b})ξ − ({self.c}) has a repeated root over {F.spec}")

    @property
    def discriminant(self) -> FieldElement:
        return self.b * self.b + 4 * self.c

    @cached_property
    def roots(self) -> list[FieldElement]:
        """Roots of X² − bX − c in F, empty when K is a field."""
        return self.field.quadratic_roots(1, -self.b, -self.c)

    @property
    def is_split(self) -> bool:
        return len(self.roots) == 2

    @property
    def label(self) -> str:
        """Isomorphism-class tag: "split", "GF(q²)" or the discriminant extension."""
        if self.is_split:
            return "split"
        if self.field.is_finite:
            return f"GF({self.field.order**2})"
        return f"{self.field.spec}(sqrt({self.discriminant}))"

    def __repr__(self) -> str:
        return f"EtaleAlgebra({self.field.spec}; b={self.b}, c={self.c})"

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def element(self, x0: object, x1: object = 0) -> KElem:
        return self.field(x0), self.field(x1)

    @property
    def one(self) -> KElem:
        return self.field.one, self.field.zero

    @property
    def xi(self) -> KElem:
        return self.field.zero, self.field.one

    def add(self, x: KElem, y: KElem) -> KElem:
        return x[0] + y[0], x[1] + y[1]

    def sub(self, x: KElem, y: KElem) -> KElem:
        return x[0] - y[0], x[1] - y[1]

    def neg(self, x: KElem) -> KElem:
        return -x[0], -x[1]

    def scale(self, s: FieldElement, x: KElem) -> KElem:
        return s * x[0], s * x[1]

    def mul(self, x: KElem, y: KElem) -> KElem:
        x0, x1 = x
        y0, y1 = y
        t = x1 * y1
        return x0 * y0 + self.c * t, x0 * y1 + x1 * y0 + self.b * t

    def conj(self, x: KElem) -> KElem:
        return x[0] + self.b * x[1], -x[1]

    def norm(self, x: KElem) -> FieldElement:
        x0, x1 = x
        return x0 * x0 + self.b * x0 * x1 - self.c * x1 * x1

    def trace(self, x: KElem) -> FieldElement:
        return 2 * x[0] + self.b * x[1]

    def inv(self, x: KElem) -> KElem:
        n = self.norm(x)
        if not n:
            raise ZeroDivisionError(f"{self.format(x)} is a zero divisor in {self!r}")
        return self.scale(1 / n, self.conj(x))

    def pow(self, x: KElem, n: int) -> KElem:
        if n < 0:
            x, n = self.inv(x), -n
        result, acc = self.one, x
        while n:
            if n & 1:
                result = self.mul(result, acc)
            n >>= 1
            if n:
                acc = self.mul(acc, acc)
        return result

    def equal(self, x: KElem, y: KElem) -> bool:
        return x[0] == y[0] and x[1] == y[1]

    def format(self, x: KElem) -> str:
        return f"{x[0]},{x[1]}"

    # ------------------------------------------------------------------
    # Split coordinates
    # ------------------------------------------------------------------

    def split_coords(self, x: KElem) -> tuple[FieldElement, FieldElement]:
        """Images of x under the two projections K ≅ F × F."""
        if not self.is_split:
            raise PreconditionError(f"{self!r} is not split")
        r1, r2 = self.roots
        return x[0] + x[1] * r1, x[0] + x[1] * r2

    def from_split_coords(self, alpha: object, beta: object) -> KElem:
        if not self.is_split:
            raise PreconditionError(f"{self!r} is not split")
        F = self.field
        alpha, beta = F(alpha), F(beta)
        r1, r2 = self.roots
        x1 = (beta - alpha) / (r2 - r1)
        return alpha - x1 * r1, x1

    def sqrt_disc_coords(self, x: KElem) -> tuple[FieldElement, FieldElement]:
        """(y0, y1) with x = y0 + y1·√D, D the discriminant. Needs odd characteristic."""
        half = self.field(1) / 2
        return x[0] + x[1] * self.b * half, x[1] * half

    def from_sqrt_disc_coords(self, y0: FieldElement, y1: FieldElement) -> KElem:
        # √D = 2ξ − b
        return y0 - y1 * self.b, 2 * y1

    # ------------------------------------------------------------------
    # Cubes
    # ------------------------------------------------------------------

    def _base_cube_or_zero(self, v: FieldElement) -> bool:
        return not v or self.field.is_cube(v)

    def is_cube(self, x: KElem) -> bool:
        """Whether x ∈ (K^×)³."""
        if not self.norm(x):
            raise PreconditionError("cube test needs an invertible element")
        if self.is_split:
            alpha, beta = self.split_coords(x)
            return self.field.is_cube(alpha) and self.field.is_cube(beta)
        F = self.field
        if F.is_finite:
            q2 = F.order**2
            if gcd(3, q2 - 1) == 1:
                return True
            return self.equal(self.pow(x, (q2 - 1) // 3), self.one)
        if F.characteristic == 3:
            y0, y1 = self.sqrt_disc_coords(x)
            return self._base_cube_or_zero(y0) and self._base_cube_or_zero(y1 / self.discriminant)
        raise PreconditionError(f"cube test in a quadratic field over {F.spec} is not supported")

    def cube_class_equal(self, x: KElem, y: KElem) -> bool:
        return self.is_cube(self.mul(x, self.inv(y)))

    # ------------------------------------------------------------------
    # Isomorphisms
    # ------------------------------------------------------------------

    def isomorphisms_to(self, other: EtaleAlgebra) -> list[Callable[[KElem], KElem]] | None:
        """Both isomorphisms K → K', [] when none exists, None when undecidable here."""
        verdict = etale_iso_test(self, other)
        if verdict is not True:
            return None if verdict is None else []
        if self.is_split:

            def straight(x: KElem) -> KElem:
                return other.from_split_coords(*self.split_coords(x))

        elif self.field.characteristic != 2:
            ratio = self.discriminant / other.discriminant
            s = self.field.sqrt(ratio)
            if s is None:
                return None

            def straight(x: KElem) -> KElem:
                y0, y1 = self.sqrt_disc_coords(x)
                return other.from_sqrt_disc_coords(y0, y1 * s)

        else:
            return None

        def twisted(x: KElem) -> KElem:
            return straight(self.conj(x))

        return [straight, twisted]


def make_etale(F: Field, spec: str | tuple[object, object]) -> EtaleAlgebra:
    """K = F×F for spec "split", otherwise F[ξ]/(ξ² − bξ − c) for spec (b, c)."""
    if spec == "split":
        return EtaleAlgebra(F, F.one, F.zero)
    if isinstance(spec, str):
        raise FieldError(f"étale spec must be 'split' or a pair (b, c), got {spec!r}")
    b, c = spec
    return EtaleAlgebra(F, F(b), F(c))


def etale_iso_test(K: EtaleAlgebra, K2: EtaleAlgebra) -> bool | None:
    """Whether K ≅ K'. None means the answer is not decidable with the supported tests."""
    if K.field != K2.field:
        raise FieldMismatchError(f"{K!r} and {K2!r} have different base fields")
    F = K.field
    try:
        split1, split2 = K.is_split, K2.is_split
    except PreconditionError:
        log.debug("splitness undecidable over %s", F.spec)
        return None
    if split1 or split2:
        return split1 == split2
    if F.is_finite:
        return True
    if F.characteristic == 2:
        return None
    return F.is_square(K.discriminant / K2.discriminant)
