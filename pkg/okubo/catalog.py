"""Named algebras for the command line.

    zorn                      Zorn's split Cayley algebra
    para-zorn                 its para-Hurwitz algebra
    split-okubo               the split Okubo algebra
    para-quadratic:<b>,<c>    para-Hurwitz algebra of F[ξ]/(ξ² − bξ − c)
    kw:split:<α>              C = K ⊕ W for split K and a = (α, α⁻¹), characteristic 3
    kw:<b>,<c>:<a0>,<a1>      the same for K = F[ξ]/(ξ² − bξ − c) and a = a0 + a1ξ
    okubo-kw:<...>            the Petersson algebra of τ_{K,a} on a kw algebra
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

from okubo.compalg import Algebra, Tag, etale_hurwitz, from_KW, para, petersson, split_okubo, zorn
from okubo.errors import ParseError
from okubo.fields import EtaleAlgebra, Field, KElem, make_etale
from okubo.maps import Automorphism
from okubo.settings import OkuboSettings, get_settings

log = logging.getLogger(__name__)

SIMPLE_NAMES = ("zorn", "para-zorn", "split-okubo")
PREFIXES = ("kw:", "okubo-kw:", "para-quadratic:")


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on `sep` outside brackets and parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


@dataclass(frozen=True)
class KWSpec:
    K: EtaleAlgebra
    a: KElem


def parse_kw(F: Field, spec: str) -> KWSpec:
    """"split:<α>" or "<b>,<c>:<a0>,<a1>"."""
    etale, sep, value = spec.partition(":")
    if not sep:
        raise ParseError(f"kw spec {spec!r} must look like split:<α> or <b>,<c>:<a0>,<a1>")
    if etale == "split":
        K = make_etale(F, "split")
        alpha = F.parse(value)
        if not alpha:
            raise ParseError("α must be nonzero")
        return KWSpec(K, K.from_split_coords(alpha, 1 / alpha))
    coeffs = split_top(etale)
    coords = split_top(value)
    if len(coeffs) != 2 or len(coords) != 2:
        raise ParseError(f"kw spec {spec!r} needs two étale coefficients and two coordinates of a")
    K = make_etale(F, (F.parse(coeffs[0]), F.parse(coeffs[1])))
    return KWSpec(K, K.element(F.parse(coords[0]), F.parse(coords[1])))


def kw_algebra(F: Field, spec: str, settings: OkuboSettings | None = None) -> tuple[Algebra, Automorphism]:
    kw = parse_kw(F, spec)
    A, tau, _ = from_KW(kw.K, kw.a, settings)
    return A, tau


def build(F: Field, name: str, settings: OkuboSettings | None = None) -> Algebra:
    """The algebra called `name` over F; `kw:` names give the Hurwitz algebra C."""
    settings = settings or get_settings()
    log.debug("building %s over %s", name, F.spec)
    match name:
        case "zorn":
            return zorn(F)
        case "para-zorn":
            return para(zorn(F))
        case "split-okubo":
            return split_okubo(F)
    if name.startswith("para-quadratic:"):
        coeffs = split_top(name.removeprefix("para-quadratic:"))
        if len(coeffs) != 2:
            raise ParseError(f"{name!r}: expected para-quadratic:<b>,<c>")
        return para(etale_hurwitz(make_etale(F, (F.parse(coeffs[0]), F.parse(coeffs[1])))))
    if name.startswith("okubo-kw:"):
        return okubo_of(*kw_algebra(F, name.removeprefix("okubo-kw:"), settings))
    if name.startswith("kw:"):
        return kw_algebra(F, name.removeprefix("kw:"), settings)[0]
    expected = ", ".join(SIMPLE_NAMES + PREFIXES)
    raise ParseError(f"unknown algebra {name!r}; expected one of {expected}")


def okubo_of(A: Algebra, tau: Automorphism) -> Algebra:
    return dataclasses.replace(petersson(A, tau), tag=Tag.OKUBO, name=f"okubo({A.name})")


def build_symmetric(F: Field, name: str, settings: OkuboSettings | None = None) -> Algebra:
    """Like `build`, but `kw:` names give the Okubo algebra C_τ."""
    if name.startswith("kw:"):
        name = "okubo-" + name
    return build(F, name, settings)
