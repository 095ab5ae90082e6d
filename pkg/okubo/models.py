"""Report models: the contract between the library, the suites and main.py."""

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

NO_GROUP_SEARCH = "conjugacy decided by invariants, no group search"


class Order3Kind(StrEnum):
    PARA_CAYLEY = "para-cayley"
    OKUBO = "okubo"
    PARA_QUATERNION = "para-quaternion"
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"
    TYPE4 = "type4"


class IdempotentKind(StrEnum):
    PARA_UNIT = "para-unit"
    PARA_NON_UNIT = "para-non-unit"
    QUATERNIONIC = "quaternionic"
    QUADRATIC = "quadratic"
    SINGULAR = "singular"
    OKUBO_CHAR_NOT3 = "okubo-char-not-3"


class SymmetricKind(StrEnum):
    PARA_HURWITZ_FORM = "para-hurwitz-form"
    OKUBO = "okubo"
    UNDETERMINED = "undetermined"


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    anchor: str  # the statement the check reproduces
    passed: bool
    witness: str = ""


class SuiteResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite: str
    field: str
    checks: list[CheckResult]
    duration: float = Field(default=0.0, exclude=True)  # seconds, kept out of reports

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class Order3Class(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Order3Kind
    field: str
    characteristic: int
    fix_dim: int
    segre: str | None = None  # "(3,2^2,1)", characteristic 3 only
    w: str | None = None  # w with w² + w + 1 = 0 (or the para-unit for type3)
    w_coords: list[str] | None = None
    quaternion_split: bool | None = None  # Okubo case; None means unknown
    etale: str | None = None  # type2: label of K
    a: str | None = None  # type2: a ∈ K with n(a) = 1
    class_tag: str | None = None  # "[split; a=t]"
    note: str = NO_GROUP_SEARCH

    # internal objects kept for follow-up computations, never serialized
    K: Any = Field(default=None, exclude=True, repr=False)
    a_value: Any = Field(default=None, exclude=True, repr=False)


class IdempotentClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: IdempotentKind
    element: str
    field: str
    class_tag: str | None = None  # quadratic idempotents
    quaternion_split: bool | None = None  # characteristic ≠ 3 Okubo idempotents
    order3: Order3Class | None = None  # classification of τ_e
    note: str = NO_GROUP_SEARCH


class GImage(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: str
    values: list[str]  # g(bᵢ) on the basis
    spanning: list[str]  # an F³-basis of the image
    dimension: int | None  # over F³; None when not computable here


class IdempotentInventory(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: str
    algebra: str
    strategy: str
    total: int
    quaternionic: list[str] = []
    quadratic: list[str] = []
    singular: list[str] = []
    other: list[str] = []  # para-unit and char ≠ 3 idempotents
    class_tags: list[str] = []  # distinct [K, a] among quadratic idempotents
    closed_form_match: bool | None = None  # full set = {e + x : x ∈ Centr(e), x*x = 0}
    singular_match: bool | None = None  # singular set = {e + x : 0 ≠ x ∈ Centr(e) ∩ Centr(e)^⊥}
    family_dim: int | None = None  # infinite fields: idempotents form e + R with dim R = family_dim
    flag: str | None = None
    note: str = NO_GROUP_SEARCH


class CompositionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    algebra: str
    field: str
    dim: int
    tag: str
    composition: bool
    method: str
    checked: int
    counterexample: list[str] | None = None
    hurwitz: bool | None = None
    symmetric: bool | None = None


class SymmetricClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: SymmetricKind
    algebra: str
    field: str
    dim: int
    para_unit: str | None = None
    commutative_center_dim: int
    idempotent: str | None = None
    order3: Order3Class | None = None
    flag: str | None = None
    note: str = NO_GROUP_SEARCH
