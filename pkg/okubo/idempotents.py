"""Idempotents of symmetric composition algebras.

Three strategies, tried in this order under `Strategy.AUTO`:

* para-Hurwitz algebras: the para-unit together with the solutions of n(1, w) = −1, n(w) = 1, scanned on
  that hyperplane only;
* characteristic 3 algebras with a known quaternionic idempotent e: {e + x : x ∈ Centr(e), x*x = 0};
* brute force over F^d.

An empty answer is not an error: it is flagged, since an idempotent may only appear after a cubic field
extension.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

from okubo import enumeration
from okubo.compalg import Algebra, Tag, find_para_unit, radical
from okubo.errors import InfeasibleError, NotIdempotentError, PreconditionError
from okubo.linalg import Subspace, Vector, is_zero, vadd
from okubo.maps import centr, tau_from_idempotent
from okubo.settings import OkuboSettings, get_settings

log = logging.getLogger(__name__)

CUBIC_EXTENSION_FLAG = "idempotent may require cubic extension"


class Strategy(StrEnum):
    AUTO = "auto"
    BRUTE_FORCE = "brute-force"
    PARA = "para-closed-form"
    CENTRALIZER = "centralizer-closed-form"


@dataclass(frozen=True)
class IdempotentSearch:
    elements: tuple[Vector, ...]
    strategy: Strategy
    flag: str | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return tuple(x) in self.elements  # type: ignore[arg-type]


@dataclass(frozen=True)
class IdempotentFamily:
    """The affine set e + R of idempotents, R a subspace; used over infinite fields."""

    base: Vector
    directions: Subspace

    @property
    def dim(self) -> int:
        return self.directions.dim

    def contains(self, x: Vector) -> bool:
        return self.directions.contains(tuple(a - b for a, b in zip(x, self.base)))


def _sort_key(S: Algebra):
    return lambda v: tuple(S.field.sort_key(c) for c in v)


def is_quaternionic_seed(S: Algebra, e: Vector) -> bool:
    """Characteristic 3 idempotent e with τ_e ≠ id and (τ_e − id)² = 0."""
    if S.field.characteristic != 3:
        return False
    tau = tau_from_idempotent(S, e)
    return not tau.is_identity and tau.minus_identity().power(2).rank == 0


def _quaternionic_candidate(S: Algebra) -> Vector | None:
    if S.parent is None or S.parent.unit is None or S.dim != 8:
        return None
    e = S.parent.unit
    if S.mul(e, e) != e:
        return None
    return e if is_quaternionic_seed(S, e) else None


def para_idempotents(S: Algebra, e: Vector, settings: OkuboSettings) -> tuple[Vector, ...]:
    """The para-unit e and the points of the quadric n(e, w) = −1, n(w) = 1."""
    q = S.field.order
    if S.field.characteristic == 2:
        if q ** (S.dim - 1) > settings.enumeration_limit:
            raise InfeasibleError(f"hyperplane scan of {q}^{S.dim - 1} points exceeds the enumeration limit")
        points = enumeration.hyperplane_idempotents(S, e)
    else:
        if q ** max(S.dim - 2, 0) > settings.enumeration_limit:
            raise InfeasibleError(f"quadric scan of {q}^{S.dim - 2} points exceeds the enumeration limit")
        points = enumeration.quadric_idempotents(S, e)
    found = set(points) | {tuple(e)}
    return tuple(sorted(found, key=_sort_key(S)))


def centralizer_idempotents(S: Algebra, e: Vector, settings: OkuboSettings) -> tuple[Vector, ...]:
    C = centr(S, e)
    q = S.field.order
    if q ** C.dim > settings.enumeration_limit:
        raise InfeasibleError(f"centralizer of dimension {C.dim} over {S.field.spec} is too large to scan")
    found = [vadd(e, x) for x in C.elements() if is_zero(S.mul(x, x))]
    return tuple(sorted(found, key=_sort_key(S)))


def idempotents(
    S: Algebra,
    strategy: Strategy = Strategy.AUTO,
    settings: OkuboSettings | None = None,
    quaternionic: Vector | None = None,
) -> IdempotentSearch:
    """Every e ≠ 0 with e*e = e in a finite symmetric composition algebra."""
    settings = settings or get_settings()
    F = S.field
    if not F.is_finite:
        raise InfeasibleError(f"idempotent enumeration needs a finite field, {F.spec} is infinite")
    q, d = F.order, S.dim

    chosen = strategy
    result: tuple[Vector, ...] | None = None
    if strategy in (Strategy.AUTO, Strategy.PARA) and S.tag in (Tag.PARA, Tag.PETERSSON):
        unit = find_para_unit(S)
        if unit is not None:
            result, chosen = para_idempotents(S, unit, settings), Strategy.PARA
        elif strategy is Strategy.PARA:
            raise PreconditionError(f"{S!r} has no para-unit")
    if result is None and strategy in (Strategy.AUTO, Strategy.CENTRALIZER):
        seed = quaternionic if quaternionic is not None else _quaternionic_candidate(S)
        if seed is not None:
            if not is_quaternionic_seed(S, tuple(seed)):
                raise PreconditionError(f"{S.describe(seed)} is not a quaternionic idempotent")
            result, chosen = centralizer_idempotents(S, tuple(seed), settings), Strategy.CENTRALIZER
        elif strategy is Strategy.CENTRALIZER:
            raise PreconditionError(f"{S!r} has no known quaternionic idempotent")
    if result is None:
        if q**d > settings.enumeration_limit:
            raise InfeasibleError(f"no structured strategy applies and {q}^{d} exceeds the enumeration limit")
        result, chosen = tuple(enumeration.brute_force_idempotents(S)), Strategy.BRUTE_FORCE

    log.debug("%s found %d idempotents in %r", chosen, len(result), S)
    return IdempotentSearch(result, chosen, None if result else CUBIC_EXTENSION_FLAG)


def count_para_idempotents(S: Algebra) -> int:
    """Number of idempotents of a finite para-Hurwitz algebra in odd characteristic, without listing them.

    In characteristic 3 the para-unit lies on the quadric itself.
    """
    e = find_para_unit(S)
    if e is None:
        raise PreconditionError(f"{S!r} has no para-unit")
    count = enumeration.count_para_quadric(S, e)
    return count if S.field.characteristic == 3 else count + 1


def idempotent_family(S: Algebra, e: Vector) -> IdempotentFamily:
    """{e + x : x ∈ rad(Centr(e))}, checked on the basis of the radical and on its sum."""
    e = tuple(e)
    if is_zero(e) or S.mul(e, e) != e:
        raise NotIdempotentError(f"{S.describe(e)} is not an idempotent of {S!r}")
    R = radical(S, centr(S, e))
    samples = list(R.basis)
    if samples:
        total = samples[0]
        for x in samples[1:]:
            total = vadd(total, x)
        samples.append(total)
    for x in samples:
        f = vadd(e, x)
        if S.mul(f, f) != f:
            raise PreconditionError(f"{S.describe(f)} is not idempotent: rad(Centr(e)) does not parametrize")
    return IdempotentFamily(e, R)
