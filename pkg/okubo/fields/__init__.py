"""Exact fields: GF(p), GF(p^k), Q and F_p(t), plus quadratic étale algebras over them."""

from __future__ import annotations

import re
from functools import lru_cache

from sympy import factorint

from okubo.errors import FieldError
from okubo.fields.base import Field, FieldElement, FiniteField
from okubo.fields.etale import EtaleAlgebra, KElem, etale_iso_test, make_etale
from okubo.fields.extension import ExtensionField, first_irreducible
from okubo.fields.prime import PrimeField
from okubo.fields.rationals import QQ, RationalField
from okubo.fields.ratfunc import RationalFunctionField

__all__ = [
    "QQ",
    "EtaleAlgebra",
    "ExtensionField",
    "Field",
    "FieldElement",
    "FiniteField",
    "KElem",
    "PrimeField",
    "RationalField",
    "RationalFunctionField",
    "GF",
    "etale_iso_test",
    "make_etale",
    "parse_field",
    "ratfunc",
]

_GF = re.compile(r"GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*([-\d,\s]*))?\)")
_RATFUNC = re.compile(r"F_?(\d+)\s*\(\s*t\s*\)")


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1, coeffs: tuple[int, ...] | None = None) -> Field:
    """GF(p) when k = 1, else GF(p^k) with modulus x^k + c_{k-1}x^{k-1} + ... + c_0."""
    if k == 1 and coeffs is None:
        return PrimeField(p)
    if coeffs is None:
        PrimeField(p)  # validates p
        coeffs = first_irreducible(p, k)
    return ExtensionField(p, k, tuple(coeffs))


@lru_cache(maxsize=None)
def ratfunc(p: int) -> RationalFunctionField:
    return RationalFunctionField(p)


def _prime_power(q: int) -> tuple[int, int]:
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, k),) = factors.items()
    return int(p), int(k)


@lru_cache(maxsize=64)
def parse_field(spec: str) -> Field:
    """Parse "GF(p)", "GF(p^k; c0,...)", "GF(q; c0,...)", "Q" or "Fp(t)"."""
    text = spec.strip()
    if text in ("Q", "QQ"):
        return QQ
    if m := _RATFUNC.fullmatch(text):
        return ratfunc(int(m.group(1)))
    m = _GF.fullmatch(text)
    if not m:
        raise FieldError(f"malformed field spec {spec!r}")
    base, exponent, coeff_text = m.groups()
    if int(base) < 2:
        raise FieldError(f"malformed field spec {spec!r}")
    p, k = _prime_power(int(base))
    if exponent is not None:
        if k != 1:
            raise FieldError(f"base of {spec!r} must be prime")
        k = int(exponent)
    coeffs = None
    if coeff_text is not None:
        try:
            coeffs = tuple(int(c) for c in coeff_text.split(",") if c.strip())
        except ValueError as exc:
            raise FieldError(f"malformed modulus in {spec!r}") from exc
        if k == 1:
            raise FieldError(f"{spec!r}: a prime field takes no modulus")
    return GF(p, k, coeffs)
