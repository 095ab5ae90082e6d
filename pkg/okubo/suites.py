"""Verification suites: named groups of exact checks, each row anchored to the statement it reproduces."""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable
from dataclasses import dataclass

from okubo.catalog import build, build_symmetric
from okubo.classify import (
    classify_order3_char3,
    classify_order3_charnot3,
    g_image,
    g_map,
    idempotent_inventory,
    ka_equivalent,
)
from okubo.compalg import (
    E1,
    E2,
    ZORN_TABLE,
    check_composition,
    check_hurwitz,
    check_symmetric,
    etale_hurwitz,
    from_KW,
    para,
    split_okubo,
    zorn,
)
from okubo.errors import (
    ClassificationError,
    InfeasibleError,
    ParseError,
    SearchExhaustedError,
    WrongCharacteristicError,
)
from okubo.fields import EtaleAlgebra, Field, KElem, make_etale
from okubo.idempotents import Strategy, count_para_idempotents, idempotents
from okubo.liealg import (
    LONG_ROOTS,
    ROOTS,
    chevalley_basis,
    derivations,
    exp_root,
    inner_derivations_c,
    lie_centralizer,
    root_decomposition,
)
from okubo.linalg import is_zero, is_zero_matrix, mat_pow, vadd
from okubo.maps import normal_form, standard_cube_root, tau_st, tau_w
from okubo.models import CheckResult, Order3Kind, SuiteResult
from okubo.settings import OkuboSettings, get_settings

log = logging.getLogger(__name__)

Runner = Callable[[Field, OkuboSettings], list[CheckResult]]


@dataclass(frozen=True)
class Suite:
    name: str
    anchor: str
    run: Runner
    characteristic: str | None = None  # "3", "not-3" or None for any field
    finite_only: bool = False


def _check(check_id: str, anchor: str, passed: bool, witness: object = "") -> CheckResult:
    return CheckResult(id=check_id, anchor=anchor, passed=bool(passed), witness=str(witness))


# ---------------------------------------------------------------------------
# Hurwitz and symmetric composition laws
# ---------------------------------------------------------------------------

TABLE_ANCHOR = "multiplication table of the split Cayley algebra in a canonical basis"


def _table(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    A = zorn(F)
    mismatch = None
    for i in range(A.dim):
        for j in range(A.dim):
            expected = [F.zero] * A.dim
            if (i, j) in ZORN_TABLE:
                k, sign = ZORN_TABLE[i, j]
                expected[k] = F(sign)
            if A.mul(A.basis(i), A.basis(j)) != tuple(expected):
                mismatch = mismatch or f"{A.labels[i]}·{A.labels[j]}"
    hurwitz = check_hurwitz(A)
    return [
        _check("products", TABLE_ANCHOR, mismatch is None, mismatch or "64 products"),
        _check("unit", TABLE_ANCHOR, A.unit == vadd(A.basis(E1), A.basis(E2)), A.describe(A.unit)),
        _check("hurwitz", "unit, Cayley–Hamilton and conjugation laws", hurwitz.ok, f"{hurwitz.checked} checks"),
    ]


def _composition(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    rows = []
    for name in ("zorn", "para-zorn", "split-okubo"):
        outcome = check_composition(build(F, name, settings), settings)
        witness = f"{outcome.method}, {outcome.checked} pairs"
        if outcome.counterexample:
            witness += f", counterexample {outcome.counterexample}"
        rows.append(_check(name, "n(x·y) = n(x)n(y)", outcome.ok, witness))
    return rows


SYMMETRIC_ANCHOR = "n(x*y, z) = n(x, y*z) and (x*y)*x = n(x)y = x*(y*x)"


def _symmetric(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    rows = []
    for name in ("para-zorn", "split-okubo"):
        outcome = check_symmetric(build(F, name, settings))
        rows.append(_check(name, SYMMETRIC_ANCHOR, outcome.ok, f"{outcome.checked} checks"))
    return rows


# ---------------------------------------------------------------------------
# Order-3 automorphisms
# ---------------------------------------------------------------------------

ORDER3_ANCHOR = "order-3 automorphisms are τ_w (para-Cayley) or have a quaternion fixed subalgebra (Okubo)"


def _order3(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    A = zorn(F)
    tau = tau_w(A, standard_cube_root(A))
    para_cayley = classify_order3_charnot3(A, tau, settings)
    w = tuple(F.parse(c) for c in para_cayley.w_coords or [])
    okubo = classify_order3_charnot3(A, tau_st(A), settings)
    return [
        _check("tau-w-kind", ORDER3_ANCHOR, para_cayley.kind is Order3Kind.PARA_CAYLEY, para_cayley.kind),
        _check("tau-w-fix", ORDER3_ANCHOR, para_cayley.fix_dim == 2, f"dim Fix = {para_cayley.fix_dim}"),
        _check("tau-w-witness", "τ(x) = w·x·w² for the returned w", bool(w) and tau_w(A, w) == tau, para_cayley.w),
        _check("tau-st-kind", ORDER3_ANCHOR, okubo.kind is Order3Kind.OKUBO, okubo.kind),
        _check("tau-st-fix", ORDER3_ANCHOR, okubo.fix_dim == 4, f"dim Fix = {okubo.fix_dim}"),
        _check("tau-st-split", "Fix(τ_st) is a split quaternion algebra", okubo.quaternion_split is True, okubo.w),
    ]


NORMAL_FORM_ANCHOR = "characteristic 3 order-3 automorphisms fall into four types with these normal forms"
EXPECTED_TYPES = {
    "type1": (Order3Kind.TYPE1, "(2^2,1^4)"),
    "type2": (Order3Kind.TYPE2, "(3^2,1^2)"),
    "type3": (Order3Kind.TYPE3, "(3,2^2,1)"),
    "type4": (Order3Kind.TYPE4, "(3,2^2,1)"),
}


def _order3_char3(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    A = zorn(F)
    rows = []
    for name, (kind, segre) in EXPECTED_TYPES.items():
        report = classify_order3_char3(A, normal_form(A, name), settings)
        rows.append(_check(f"{name}-kind", NORMAL_FORM_ANCHOR, report.kind is kind, report.kind))
        rows.append(_check(f"{name}-segre", "Segre symbol of τ − id", report.segre == segre, report.segre))
    CB = chevalley_basis(A)
    rows.append(
        _check("type1-root", "type1 is exp(x_{ε₂−ε₃})", normal_form(A, "type1") == exp_root(CB, "e2-e3", 1))
    )
    rows.append(_check("type3-root", "type3 is exp(x_{−ε₃})", normal_form(A, "type3") == exp_root(CB, "-e3", 1)))
    return rows


# ---------------------------------------------------------------------------
# Lie algebra data
# ---------------------------------------------------------------------------

CHEVALLEY_ANCHOR = "the derivation algebra of the split Cayley algebra has a Chevalley basis of type G2"


def _chevalley(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    A = zorn(F)
    D = derivations(A)
    CB = chevalley_basis(A)
    rows = [
        _check("dimension", CHEVALLEY_ANCHOR, D.dim == 14, f"dim Der = {D.dim}"),
        _check("basis", CHEVALLEY_ANCHOR, all(D.contains(M) for M in CB.elements()), "x_α, h₁, h₂ ∈ Der"),
    ]
    decomposition = root_decomposition(D, CB.h1, CB.h2)
    if not decomposition.merged:
        shape = decomposition.shape()
        ones = sum(1 for r in ROOTS if shape[r.label] == 1)
        rows.append(_check("root-spaces", CHEVALLEY_ANCHOR, ones == 12, f"{ones} one-dimensional root spaces"))
    long_ok = all(is_zero_matrix(mat_pow(CB.x[r], 2)) for r in LONG_ROOTS)
    short_ok = all(is_zero_matrix(mat_pow(CB.x[r], 3)) for r in ROOTS if not r.is_long)
    rows.append(_check("long-square", "x_α² = 0 for long roots", long_ok))
    rows.append(_check("short-cube", "x_α³ = 0 for short roots", short_ok))
    if F.characteristic == 3:
        inner = inner_derivations_c(A)
        ideal = D.space.contains_subspace(inner) and D.is_ideal(inner)
        anchor = "in characteristic 3, ad_C is a 7-dimensional ideal"
        rows.append(_check("ad-ideal", anchor, ideal and inner.dim == 7, f"dim {inner.dim}"))
    return rows


CENTRALIZER_ANCHOR = "Lie centralizers of the four types; type2 exceeds the group dimension 4"
CENTRALIZER_BOUNDS = {"type1": 8, "type2": 5, "type3": 8, "type4": 6}


def _centralizers(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    A = zorn(F)
    D = derivations(A)
    rows = []
    for name, bound in CENTRALIZER_BOUNDS.items():
        dim = lie_centralizer(D, normal_form(A, name)).dim
        rows.append(_check(name, CENTRALIZER_ANCHOR, dim >= bound, f"dim = {dim}, expected ≥ {bound}"))
    return rows


# ---------------------------------------------------------------------------
# Idempotents and the classes [K, a]
# ---------------------------------------------------------------------------

INVENTORY_ANCHOR = "a split Okubo algebra in characteristic 3 has a unique quaternionic idempotent"
FAMILY_ANCHOR = "the idempotents form e + rad(Centr(e))"
SINGULAR_ANCHOR = "singular idempotents are e + x, 0 ≠ x ∈ rad(Centr(e))"


def _idempotents(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    if not F.is_finite:
        inventory = idempotent_inventory(build_symmetric(F, "kw:split:t", settings), settings)
        family = inventory.family_dim
        return [
            _check("quadratic", FAMILY_ANCHOR, len(inventory.quadratic) == 1, ", ".join(inventory.class_tags)),
            _check("family", FAMILY_ANCHOR, family is not None, f"dim {family}"),
        ]
    q = F.order
    inventory = idempotent_inventory(split_okubo(F), settings)
    singular = len(inventory.singular)
    return [
        _check("quaternionic", INVENTORY_ANCHOR, len(inventory.quaternionic) == 1, inventory.quaternionic),
        _check("singular", SINGULAR_ANCHOR, singular == q * q - 1, singular),
        _check(
            "closed-form",
            "idempotents are e + x with x ∈ Centr(e), x*x = 0",
            inventory.closed_form_match is True,
            inventory.total,
        ),
        _check("singular-form", SINGULAR_ANCHOR, inventory.singular_match is True),
        _check(
            "classes",
            "one quadratic class per étale algebra",
            len(inventory.class_tags) == 2,
            ", ".join(inventory.class_tags),
        ),
    ]


KW_ANCHOR = "g(x) = n(x, x*x) has image of dimension 1 exactly for the split Okubo algebra"
CLASS_ANCHOR = "[K, a] = [K', a'] iff an isomorphism carries a into (K')³·a'"


def _split_a(K: EtaleAlgebra, text: str) -> KElem:
    alpha = K.field.parse(text)
    return K.from_split_coords(alpha, 1 / alpha)


def _kw(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    K = make_etale(F, "split")
    rows = []
    if F.is_perfect:
        image = g_image(build_symmetric(F, "kw:split:1", settings))
        rows.append(_check("g-split", KW_ANCHOR, image.dimension == 1, image.spanning))
        for text in ("1", "-1"):
            A, tau, _ = from_KW(K, _split_a(K, text), settings)
            report = classify_order3_char3(A, tau, settings)
            same = ka_equivalent((K, _split_a(K, text)), (report.K, report.a_value))
            passed = report.kind is Order3Kind.TYPE2 and same is True
            rows.append(_check(f"class-{text}", CLASS_ANCHOR, passed, report.class_tag))
        return rows
    for text, expected in (("t", 3), ("1", 1)):
        image = g_image(build_symmetric(F, f"kw:split:{text}", settings))
        witness = f"dim {image.dimension}: {', '.join(image.spanning)}"
        rows.append(_check(f"g-{text}", KW_ANCHOR, image.dimension == expected, witness))
    for first, second, expected in (("t", "t", True), ("t", "t^2", True), ("t", "1+t", False)):
        decision = ka_equivalent((K, _split_a(K, first)), (K, _split_a(K, second)))
        rows.append(_check(f"class-{first}-{second}", CLASS_ANCHOR, decision is expected, decision))
    return rows


def _random_ka(F: Field, rng: random.Random) -> tuple[EtaleAlgebra, KElem]:
    """a = z/z̄ has norm 1; K is split over infinite fields and random otherwise."""
    if F.is_finite and rng.random() < 0.5:
        c = F.zero
        while not c:
            c = F.random_element(rng)
        K = make_etale(F, (F.zero, c))
    else:
        K = make_etale(F, "split")
    while True:
        z = K.element(F.random_element(rng), F.random_element(rng))
        if K.norm(z):
            return K, K.mul(z, K.inv(K.conj(z)))


def _roundtrip(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    rng = random.Random(settings.seed)
    rows = []
    for n in range(10 if F.is_finite else 5):
        K, a = _random_ka(F, rng)
        A, tau, _ = from_KW(K, a, settings)
        report = classify_order3_char3(A, tau, settings)
        same = report.kind is Order3Kind.TYPE2 and ka_equivalent((K, a), (report.K, report.a_value)) is True
        witness = f"{K.label}; a={K.format(a)} → {report.class_tag}"
        rows.append(_check(f"sample-{n}", "τ_(K,a) is type2 and its class is recovered", same, witness))
    return rows


PARA_ANCHOR = "idempotents of a para-Hurwitz algebra are its para-unit and the w with w² + w + 1 = 0"
PARA_SAMPLE = 256


def _para_idempotents(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    C = zorn(F)
    S = para(C)
    closed = idempotents(S, Strategy.PARA, settings)
    others = [w for w in closed.elements if w != C.one]
    sample = random.Random(settings.seed).sample(others, min(len(others), PARA_SAMPLE))
    roots_ok = all(is_zero(vadd(vadd(C.mul(w, w), w), C.one)) for w in sample)
    witness = f"{len(closed)} idempotents, {len(sample)} checked as cube roots of 1"
    rows = [_check("closed-form", PARA_ANCHOR, C.one in closed and roots_ok, witness)]
    if F.order**S.dim <= 4**8:
        brute = idempotents(S, Strategy.BRUTE_FORCE, settings)
        same = set(brute.elements) == set(closed.elements)
        rows.append(_check("brute-force", PARA_ANCHOR, same, f"{len(brute)} idempotents"))
    elif F.characteristic != 2:
        count = count_para_idempotents(S)
        rows.append(_check("quadric-count", PARA_ANCHOR, count == len(closed), f"{count} by point count"))
    if F.characteristic != 3:
        quadratic = para(etale_hurwitz(make_etale(F, (-1, -1))))
        found = idempotents(quadratic, Strategy.BRUTE_FORCE, settings)
        anchor = "the para-quadratic algebra on x² + x + 1 has idempotents 1, w, w²"
        rows.append(_check("para-quadratic", anchor, len(found) == 3, [quadratic.describe(e) for e in found.elements]))
    return rows


GMAP_ANCHOR = "g is semilinear: g(x + y) = g(x) + g(y), g(λx) = λ³g(x)"


def _gmap(F: Field, settings: OkuboSettings) -> list[CheckResult]:
    S = split_okubo(F)
    image = g_image(S)
    rng = random.Random(settings.seed)
    additive = homogeneous = True
    for _ in range(20):
        x = tuple(F.random_element(rng) for _ in range(S.dim))
        y = tuple(F.random_element(rng) for _ in range(S.dim))
        lam = F.random_element(rng)
        additive &= g_map(S, vadd(x, y)) == g_map(S, x) + g_map(S, y)
        homogeneous &= g_map(S, tuple(lam * c for c in x)) == lam**3 * g_map(S, x)
    return [
        _check("image", "g of the split Okubo algebra is F³", image.dimension == 1, image.spanning),
        _check("additive", GMAP_ANCHOR, additive),
        _check("homogeneous", GMAP_ANCHOR, homogeneous),
    ]


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("table", TABLE_ANCHOR, _table),
        Suite("composition", "n(x·y) = n(x)n(y) on split Cayley, para-Cayley and split Okubo algebras", _composition),
        Suite("symmetric", "associativity of the norm and the symmetric composition law", _symmetric),
        Suite("order3", ORDER3_ANCHOR, _order3, characteristic="not-3"),
        Suite("order3-char3", NORMAL_FORM_ANCHOR, _order3_char3, characteristic="3"),
        Suite("chevalley", CHEVALLEY_ANCHOR, _chevalley),
        Suite("centralizers", CENTRALIZER_ANCHOR, _centralizers, characteristic="3"),
        Suite("idempotents", INVENTORY_ANCHOR, _idempotents, characteristic="3"),
        Suite("kw", KW_ANCHOR, _kw, characteristic="3"),
        Suite("roundtrip", "τ_(K,a) → type2 → (K', a') with [K, a] = [K', a']", _roundtrip, characteristic="3"),
        Suite("para-idempotents", PARA_ANCHOR, _para_idempotents, finite_only=True),
        Suite("gmap", GMAP_ANCHOR, _gmap, characteristic="3"),
    )
}


# Statement ids accepted in place of suite names.
ALIASES = {"thm6.3": "order3-char3", "prop8.6": "idempotents"}


def get_suite(name: str) -> Suite:
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise ParseError(f"unknown suite {name!r}; expected one of {', '.join([*SUITES, *ALIASES])}")
    return SUITES[name]


def run_suite(name: str, F: Field, settings: OkuboSettings | None = None) -> SuiteResult:
    """Run a registered suite over F; a check that raises counts as failed."""
    settings = settings or get_settings()
    suite = get_suite(name)
    p = F.characteristic
    if (suite.characteristic == "3" and p != 3) or (suite.characteristic == "not-3" and p == 3):
        raise WrongCharacteristicError(f"suite {name!r} needs characteristic {suite.characteristic}, {F.spec} has {p}")
    if suite.finite_only and not F.is_finite:
        raise WrongCharacteristicError(f"suite {name!r} needs a finite field, {F.spec} is infinite")

    log.info("running suite %s over %s", name, F.spec)
    start = time.perf_counter()
    try:
        checks = suite.run(F, settings)
    except (ClassificationError, SearchExhaustedError, InfeasibleError) as exc:
        log.warning("suite %s aborted: %s", name, exc)
        checks = [_check("aborted", suite.anchor, False, exc)]
    duration = time.perf_counter() - start
    log.info("suite %s over %s took %.2fs", name, F.spec, duration)
    return SuiteResult(suite=suite.name, field=F.spec, checks=checks, duration=duration)
