"""Classification of order-3 automorphisms, idempotents and symmetric composition algebras.

Everything here is decided by invariants: fixed subalgebras, Segre symbols of τ − id, para-units of
Petersson algebras, the class [K, a] of a quadratic idempotent and the image of g(x) = n(x, x*x).
No automorphism group is ever searched.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from okubo.compalg import (
    Algebra,
    Tag,
    check_composition,
    check_symmetric,
    commutative_center,
    find_para_unit,
    hurwitz_from_idempotent,
    idempotent_check,
    petersson,
    radical,
)
from okubo.errors import (
    ClassificationError,
    InfeasibleError,
    PreconditionError,
    SearchExhaustedError,
    WrongCharacteristicError,
)
from okubo.fields import EtaleAlgebra, FieldElement, KElem, RationalFunctionField
from okubo.idempotents import CUBIC_EXTENSION_FLAG, Strategy, idempotent_family, idempotents
from okubo.linalg import Matrix, Subspace, Vector, is_zero, lattice_search, rank, vadd, vscale
from okubo.maps import (
    Automorphism,
    LinearMap,
    SegreSymbol,
    centr,
    fix,
    order,
    segre_symbol,
    tau_from_idempotent,
    tau_w,
)
from okubo.models import (
    GImage,
    IdempotentClass,
    IdempotentInventory,
    IdempotentKind,
    Order3Class,
    Order3Kind,
    SymmetricClass,
    SymmetricKind,
)
from okubo.settings import OkuboSettings, get_settings

log = logging.getLogger(__name__)

TYPE2_SEGRE = SegreSymbol((3, 3, 1, 1))
TYPE34_SEGRE = SegreSymbol((3, 2, 2, 1))


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _automorphism(A: Algebra, tau: LinearMap | Matrix) -> Automorphism:
    if isinstance(tau, LinearMap):
        if tau.algebra is not A:
            raise PreconditionError("the map belongs to a different algebra")
        return tau if isinstance(tau, Automorphism) else Automorphism(A, tau.matrix)
    return Automorphism(A, tau)


def _require_order3(tau: Automorphism, settings: OkuboSettings | None = None) -> None:
    k = order(tau, settings=settings)
    if k != 3:
        raise PreconditionError(f"τ has order {k}, expected 3")


def _require_hurwitz(A: Algebra, dim: int) -> None:
    if A.tag is not Tag.HURWITZ or A.dim != dim:
        raise PreconditionError(f"expected a {dim}-dimensional Hurwitz algebra, got {A!r}")


def _report(A: Algebra, kind: Order3Kind, fixed: Subspace, **extra: object) -> Order3Class:
    return Order3Class(
        kind=kind, field=A.field.spec, characteristic=A.field.characteristic, fix_dim=fixed.dim, **extra
    )


def _witness_fields(A: Algebra, w: Vector) -> dict[str, object]:
    return {"w": A.describe(w), "w_coords": [str(c) for c in w]}


def _is_cube_root_of_one(A: Algebra, w: Vector) -> bool:
    """w² + w + 1 = 0."""
    return is_zero(vadd(vadd(A.mul(w, w), w), A.one))


def _cube_roots_in(A: Algebra, K: Subspace) -> list[Vector]:
    """The w = a1 + bz ∈ K ∖ F1 with w² + w + 1 = 0, for a 2-dimensional unital subalgebra K ∋ z."""
    F = A.field
    one = A.one
    z = next(b for b in K.basis if rank([one, b]) == 2)
    t, n = A.polar(z, one), A.norm(z)
    if F.characteristic != 2:
        d = t * t - 4 * n
        if not d:
            raise ClassificationError("the fixed subalgebra is not étale")
        pairs = [(-(1 + b * t) / 2, b) for b in F.quadratic_roots(d, 0, 3)]
    else:
        if not t:
            raise ClassificationError("the fixed subalgebra is not étale")
        b = 1 / t
        pairs = [(a, b) for a in F.quadratic_roots(1, 1, 1 + b * b * n)]
    roots = [vadd(vscale(a, one), vscale(b, z)) for a, b in pairs]
    return [w for w in roots if _is_cube_root_of_one(A, w)]


def _matching_cube_root(A: Algebra, K: Subspace, tau: Automorphism) -> Vector:
    for w in _cube_roots_in(A, K):
        if tau_w(A, w) == tau:
            return w
    raise ClassificationError("no w in Fix(τ) with w² + w + 1 = 0 realizes τ as x ↦ w·x·w²")


def is_quaternion_split(A: Algebra, Q: Subspace, settings: OkuboSettings | None = None) -> bool | None:
    """Whether the quaternion subalgebra Q has an isotropic vector; None when a bounded search gives up."""
    settings = settings or get_settings()
    if Q.dim != 4:
        raise PreconditionError(f"expected a quaternion subalgebra, got dimension {Q.dim}")
    F = A.field
    if F.is_finite and F.order**4 > settings.search_limit:
        log.debug("quaternion algebra over %s is split by Wedderburn's theorem", F.spec)
        return True
    height = settings.max_height if F.is_finite else settings.quaternion_height
    try:
        lattice_search(
            Q.basis, F.lattice_values(height), lambda v: not A.norm(v), settings.search_limit, "isotropic quaternion"
        )
    except SearchExhaustedError:
        return False if F.is_finite else None
    return True


# ---------------------------------------------------------------------------
# Order-3 automorphisms
# ---------------------------------------------------------------------------


def classify_order3_charnot3(
    A: Algebra, tau: LinearMap | Matrix, settings: OkuboSettings | None = None
) -> Order3Class:
    """Para-Cayley when Fix(τ) is 2-dimensional (τ = τ_w), Okubo when it is a quaternion subalgebra."""
    settings = settings or get_settings()
    _require_hurwitz(A, 8)
    if A.field.characteristic == 3:
        raise WrongCharacteristicError("use classify_order3_char3 in characteristic 3")
    tau = _automorphism(A, tau)
    _require_order3(tau, settings)
    fixed = fix(tau)
    log.debug("Fix(τ) has dimension %d", fixed.dim)

    if fixed.dim == 2:
        w = _matching_cube_root(A, fixed, tau)
        return _report(A, Order3Kind.PARA_CAYLEY, fixed, **_witness_fields(A, w))

    if fixed.dim == 4:
        perp = fixed.orthogonal(A.form.gram)
        u = lattice_search(
            perp.basis,
            A.field.lattice_values(settings.max_height),
            lambda v: bool(A.norm(v)),
            settings.search_limit,
            "nonisotropic vector orthogonal to Fix(τ)",
        )
        # τ(u) = w·u for u ⊥ Q
        w = vscale(1 / A.norm(u), A.mul(tau(u), A.conj(u)))
        if not fixed.contains(w) or not _is_cube_root_of_one(A, w):
            raise ClassificationError("τ(u)·ū/n(u) is not a cube root of 1 in Fix(τ)", detail=w)
        split = is_quaternion_split(A, fixed, settings)
        return _report(A, Order3Kind.OKUBO, fixed, quaternion_split=split, **_witness_fields(A, w))

    raise ClassificationError(f"Fix(τ) has dimension {fixed.dim}, expected 2 or 4", detail=fixed.dim)


def classify_order3_quaternion(A: Algebra, tau: LinearMap | Matrix) -> Order3Class:
    """An order-3 automorphism of a quaternion algebra is x ↦ w·x·w² with w² + w + 1 = 0 in Fix(τ)."""
    _require_hurwitz(A, 4)
    if A.field.characteristic == 3:
        raise WrongCharacteristicError("quaternion τ_w extraction needs characteristic ≠ 3")
    tau = _automorphism(A, tau)
    _require_order3(tau)
    fixed = fix(tau)
    if fixed.dim != 2:
        raise ClassificationError(f"Fix(τ) has dimension {fixed.dim}, expected 2", detail=fixed.dim)
    w = _matching_cube_root(A, fixed, tau)
    return _report(A, Order3Kind.PARA_QUATERNION, fixed, **_witness_fields(A, w))


def classify_order3_char3(
    A: Algebra, tau: LinearMap | Matrix, settings: OkuboSettings | None = None
) -> Order3Class:
    """Types 1-4 from (τ − id)², the Segre symbol of τ − id and the para-unit of C_τ."""
    settings = settings or get_settings()
    _require_hurwitz(A, 8)
    F = A.field
    if F.characteristic != 3:
        raise WrongCharacteristicError(f"characteristic 3 classification over {F.spec}")
    tau = _automorphism(A, tau)
    _require_order3(tau, settings)
    N = tau.minus_identity()
    segre = segre_symbol(N)
    fixed = fix(tau)
    log.debug("τ − id has Segre symbol %s", segre)

    if N.power(2).rank == 0:
        return _report(A, Order3Kind.TYPE1, fixed, segre=str(segre))
    if segre == TYPE2_SEGRE:
        K, a = extract_ka(A, tau, settings)
        return _report(
            A,
            Order3Kind.TYPE2,
            fixed,
            segre=str(segre),
            etale=K.label,
            a=K.format(a),
            class_tag=class_tag(K, a),
            K=K,
            a_value=a,
        )
    if segre == TYPE34_SEGRE:
        unit = find_para_unit(petersson(A, tau))
        if unit is None:
            return _report(A, Order3Kind.TYPE4, fixed, segre=str(segre))
        if tau_w(A, unit) != tau:
            raise ClassificationError("the para-unit w of C_τ does not give τ = τ_w", detail=unit)
        return _report(A, Order3Kind.TYPE3, fixed, segre=str(segre), **_witness_fields(A, unit))
    raise ClassificationError(f"unexpected Segre symbol {segre} for an order-3 automorphism", detail=str(segre))


def classify_order3(A: Algebra, tau: LinearMap | Matrix, settings: OkuboSettings | None = None) -> Order3Class:
    """Dispatch on dimension and characteristic."""
    if A.dim == 4:
        return classify_order3_quaternion(A, tau)
    if A.field.characteristic == 3:
        return classify_order3_char3(A, tau, settings)
    return classify_order3_charnot3(A, tau, settings)


# ---------------------------------------------------------------------------
# The class [K, a] of a type-2 automorphism
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HermitianData:
    """C = K ⊕ K^⊥ for K = F1 + Fk, k ⊥ 1, as a K-module with its hermitian form σ and trilinear form Φ.

    The étale algebra has ξ² = −n(k), with ξ acting on K^⊥ as left multiplication by k.
    """

    algebra: Algebra
    k: Vector
    K: EtaleAlgebra

    @classmethod
    def from_element(cls, A: Algebra, k: Vector) -> HermitianData:
        k = tuple(k)
        if A.polar(k, A.one) or not A.norm(k):
            raise PreconditionError(f"{A.describe(k)} must be orthogonal to 1 and nonisotropic")
        F = A.field
        return cls(A, k, EtaleAlgebra(F, F.zero, -A.norm(k)))

    @property
    def complement(self) -> Subspace:
        A = self.algebra
        return Subspace(A.field, A.dim, [A.one, self.k]).orthogonal(A.form.gram)

    def embed(self, z: KElem) -> Vector:
        return vadd(vscale(z[0], self.algebra.one), vscale(z[1], self.k))

    def act(self, z: KElem, x: Vector) -> Vector:
        return vadd(vscale(z[0], x), vscale(z[1], self.algebra.mul(self.k, x)))

    def sigma(self, x: Vector, y: Vector) -> KElem:
        A = self.algebra
        nk = A.norm(self.k)
        return (A.polar(x, y) / 2, -A.polar(A.mul(self.k, x), y) / (2 * nk))

    def cross(self, x: Vector, y: Vector) -> Vector:
        """x × y = x·y + σ(x, y)."""
        return vadd(self.algebra.mul(x, y), self.embed(self.sigma(x, y)))

    def phi(self, x: Vector, y: Vector, z: Vector) -> KElem:
        return self.sigma(x, self.cross(y, z))


def _type2_hermitian(A: Algebra, tau: Automorphism, settings: OkuboSettings) -> HermitianData:
    fixed = fix(tau)
    candidates = fixed.intersect(Subspace(A.field, A.dim, [A.one]).orthogonal(A.form.gram))
    k = lattice_search(
        candidates.basis,
        A.field.lattice_values(settings.max_height),
        lambda v: bool(A.norm(v)),
        settings.search_limit,
        "nonisotropic k ∈ Fix(τ) ∩ 1^⊥",
    )
    return HermitianData.from_element(A, k)


def extract_ka(
    A: Algebra, tau: LinearMap | Matrix, settings: OkuboSettings | None = None
) -> tuple[EtaleAlgebra, KElem]:
    """(K, a) with τ conjugate to τ_{K,a}, following a K-basis u, τu, τ²u of K^⊥ normalized in four steps."""
    settings = settings or get_settings()
    if A.field.characteristic != 3:
        raise WrongCharacteristicError(f"(K, a) extraction needs characteristic 3, got {A.field.spec}")
    tau = _automorphism(A, tau)
    H = _type2_hermitian(A, tau, settings)
    K = H.K
    delta = tau.minus_identity()

    def orbit(x: Vector) -> list[Vector]:
        return [x, tau(x), tau(tau(x))]

    def k_rank(x: Vector) -> int:
        return rank([v for y in orbit(x) for v in (y, A.mul(H.k, y))])

    # (i) u, τu, τ²u is a K-basis of K^⊥
    u = lattice_search(
        H.complement.basis,
        A.field.lattice_values(settings.max_height),
        lambda x: k_rank(x) == 6,
        settings.search_limit,
        "u with u, τu, τ²u a K-basis",
    )
    # (ii) n(Φ(u, τu, τ²u)) = −n(δu)³
    alpha = A.norm(delta(u))
    a = H.phi(*orbit(u))
    if not alpha or K.norm(a) != -(alpha**3):
        raise ClassificationError(f"n(Φ(u,τu,τ²u)) = {K.norm(a)} but n(δu) = {alpha}")
    # (iii) rescale so that n(δu) = −1
    u = H.act(K.scale(alpha, K.inv(a)), u)
    if A.norm(delta(u)) != -1:
        raise ClassificationError("rescaling did not reach n(δu) = −1")
    # (iv) u' = u + c·δu + d·δ²u with σ(u', u') = 0 and σ(u', τu') = −1
    du = delta(u)
    s = H.sigma(u, du)
    c = K.element(0, s[1] / 2)
    partial = vadd(u, H.act(c, du))
    d = K.element(-A.norm(partial) / 2, 0)
    u = vadd(partial, H.act(d, delta(du)))

    basis = orbit(u)
    expected = [[0 if i == j else -1 for j in range(3)] for i in range(3)]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if not K.equal(H.sigma(x, y), K.element(expected[i][j])):
                raise ClassificationError(f"σ(τ^{i}u', τ^{j}u') = {K.format(H.sigma(x, y))}", detail=(i, j))
    a = H.phi(*basis)
    if K.norm(a) != 1:
        raise ClassificationError(f"n(a) = {K.norm(a)}, expected 1")
    log.debug("extracted K = %s, a = %s", K.label, K.format(a))
    return K, a


def class_tag(K: EtaleAlgebra, a: KElem) -> str:
    """"[split; a=α]" with a = (α, α⁻¹) in split coordinates, else "[<K>; a=a0,a1]"."""
    if K.is_split:
        return f"[split; a={K.split_coords(a)[0]}]"
    return f"[{K.label}; a={K.format(a)}]"


def ka_equivalent(first: tuple[EtaleAlgebra, KElem], second: tuple[EtaleAlgebra, KElem]) -> bool | None:
    """[K, a] = [K', a']: some isomorphism φ: K → K' has φ(a) ∈ (K')³·a'. None when undecidable here."""
    (K, a), (K2, a2) = first, second
    if K.norm(a) != 1 or K2.norm(a2) != 1:
        raise PreconditionError("class invariants need n(a) = n(a') = 1")
    isos = K.isomorphisms_to(K2)
    if isos is None:
        return None
    if not isos:
        return False
    try:
        return any(K2.cube_class_equal(phi(a), a2) for phi in isos)
    except PreconditionError:
        log.debug("cube classes in %s are not decidable here", K2.label)
        return None


def _distinct_classes(pairs: Sequence[tuple[EtaleAlgebra, KElem]]) -> list[tuple[EtaleAlgebra, KElem]]:
    reps: list[tuple[EtaleAlgebra, KElem]] = []
    for pair in pairs:
        if not any(ka_equivalent(pair, rep) for rep in reps):
            reps.append(pair)
    return reps


# ---------------------------------------------------------------------------
# Idempotents
# ---------------------------------------------------------------------------


def classify_idempotent(
    S: Algebra, e: Vector | Sequence[FieldElement], settings: OkuboSettings | None = None
) -> IdempotentClass:
    """The kind of e from τ_e(x) = e*(e*x), read as an automorphism of the Hurwitz algebra (e*x)*(y*e)."""
    settings = settings or get_settings()
    e = idempotent_check(S, e)
    F = S.field
    base = {"element": S.describe(e), "field": F.spec}
    tau = tau_from_idempotent(S, e)
    if tau.is_identity:
        return IdempotentClass(kind=IdempotentKind.PARA_UNIT, **base)

    A = hurwitz_from_idempotent(S, e)
    tau = Automorphism(A, tau.matrix)
    if S.dim < 8:
        order3 = classify_order3_quaternion(A, tau) if S.dim == 4 and F.characteristic != 3 else None
        return IdempotentClass(kind=IdempotentKind.PARA_NON_UNIT, order3=order3, **base)

    if F.characteristic == 3:
        order3 = classify_order3_char3(A, tau, settings)
        match order3.kind:
            case Order3Kind.TYPE1:
                kind = IdempotentKind.QUATERNIONIC
            case Order3Kind.TYPE2:
                return IdempotentClass(
                    kind=IdempotentKind.QUADRATIC, class_tag=order3.class_tag, order3=order3, **base
                )
            case Order3Kind.TYPE4:
                kind = IdempotentKind.SINGULAR
            case _:
                if find_para_unit(S) is None:
                    raise ClassificationError(f"τ_e of {order3.kind} for an idempotent of a non-para-Hurwitz algebra")
                kind = IdempotentKind.PARA_NON_UNIT
        return IdempotentClass(kind=kind, order3=order3, **base)

    order3 = classify_order3_charnot3(A, tau, settings)
    if order3.kind is Order3Kind.OKUBO:
        return IdempotentClass(
            kind=IdempotentKind.OKUBO_CHAR_NOT3, quaternion_split=order3.quaternion_split, order3=order3, **base
        )
    return IdempotentClass(kind=IdempotentKind.PARA_NON_UNIT, order3=order3, **base)


# ---------------------------------------------------------------------------
# The semilinear map g and splitness
# ---------------------------------------------------------------------------


def g_map(S: Algebra, x: Sequence[FieldElement]) -> FieldElement:
    """g(x) = n(x, x*x)."""
    return S.polar(x, S.mul(x, x))


def g_image(S: Algebra) -> GImage:
    """The F³-span of g on the basis; g is semilinear, so this is g(S)."""
    F = S.field
    if F.characteristic != 3:
        raise WrongCharacteristicError(f"the g-image is a characteristic 3 invariant, {F.spec} has {F.characteristic}")
    values = [g_map(S, S.basis(i)) for i in range(S.dim)]
    nonzero = [v for v in values if v]
    texts = [str(v) for v in values]
    if not nonzero:
        return GImage(field=F.spec, values=texts, spanning=[], dimension=0)
    if F.is_perfect:
        return GImage(field=F.spec, values=texts, spanning=[str(nonzero[0])], dimension=1)
    if not isinstance(F, RationalFunctionField):
        return GImage(field=F.spec, values=texts, spanning=[str(v) for v in nonzero], dimension=None)
    # coordinates over F³ = F₃(t³) in the basis 1, t, t²; echelon form keeps them in F³
    span = Subspace(F, 3, [F.frobenius_decompose(v) for v in nonzero])
    t = F.parse("t")
    spanning = [c0 + c1 * t + c2 * t * t for c0, c1, c2 in span.basis]
    log.debug("g-image of %r has dimension %d over F³", S, span.dim)
    return GImage(field=F.spec, values=texts, spanning=[str(v) for v in spanning], dimension=span.dim)


def _has_idempotent(S: Algebra, settings: OkuboSettings) -> bool | None:
    if S.parent is not None and S.parent.unit is not None:
        e = S.parent.unit
        if S.mul(e, e) == e:
            return True
    if not S.field.is_finite:
        return None
    try:
        return bool(idempotents(S, settings=settings))
    except InfeasibleError:
        return None


def okubo_split_test(S: Algebra, settings: OkuboSettings | None = None) -> bool | None:
    """Characteristic 3: g(S) = F³. Otherwise: an isotropic norm and an idempotent."""
    settings = settings or get_settings()
    if S.dim != 8:
        raise PreconditionError(f"Okubo algebras are 8-dimensional, got {S!r}")
    if find_para_unit(S) is not None:
        raise PreconditionError(f"{S!r} has a para-unit: it is para-Hurwitz, not Okubo")
    if S.field.characteristic == 3:
        dim = g_image(S).dimension
        return None if dim is None else dim == 1

    F = S.field
    try:
        lattice_search(
            [S.basis(i) for i in range(S.dim)],
            F.lattice_values(settings.max_height),
            lambda v: not S.norm(v),
            settings.search_limit,
            "isotropic vector",
        )
    except SearchExhaustedError:
        return None
    return _has_idempotent(S, settings)


# ---------------------------------------------------------------------------
# Inventories and the top-level dichotomy
# ---------------------------------------------------------------------------


def idempotent_inventory(
    S: Algebra, settings: OkuboSettings | None = None, known: Vector | None = None
) -> IdempotentInventory:
    """Every idempotent of a characteristic 3 Okubo algebra with its kind, cross-checked against the closed forms.

    Over infinite fields a known quadratic idempotent e (default: the unit of the parent Hurwitz algebra)
    yields the family e + rad(Centr(e)) instead of a list.
    """
    settings = settings or get_settings()
    F = S.field
    if F.characteristic != 3:
        raise WrongCharacteristicError(f"idempotent inventories are for characteristic 3, got {F.spec}")

    if not F.is_finite:
        e = known if known is not None else (S.parent.unit if S.parent is not None else None)
        if e is None:
            raise InfeasibleError(f"{F.spec} is infinite and no quadratic idempotent is known")
        cls = classify_idempotent(S, e, settings)
        if cls.kind is not IdempotentKind.QUADRATIC:
            raise PreconditionError(f"{cls.element} is {cls.kind}, expected a quadratic idempotent")
        family = idempotent_family(S, e)
        return IdempotentInventory(
            field=F.spec,
            algebra=S.name,
            strategy="family e + rad(Centr(e))",
            total=1,
            family_dim=family.dim,
            quadratic=[cls.element],
            class_tags=[cls.class_tag or ""],
            closed_form_match=True,
        )

    brute = F.order**S.dim <= settings.enumeration_limit
    search = idempotents(S, Strategy.BRUTE_FORCE if brute else Strategy.AUTO, settings)
    groups: dict[IdempotentKind, list[Vector]] = {}
    pairs = []
    for e in search.elements:
        cls = classify_idempotent(S, e, settings)
        groups.setdefault(cls.kind, []).append(e)
        if cls.kind is IdempotentKind.QUADRATIC:
            pairs.append((cls.order3.K, cls.order3.a_value))

    closed = singular = None
    quaternionic = groups.get(IdempotentKind.QUATERNIONIC, [])
    if len(quaternionic) == 1:
        e = quaternionic[0]
        C = centr(S, e)
        zero_square = {vadd(e, x) for x in C.elements() if is_zero(S.mul(x, x))}
        closed = zero_square == set(search.elements)
        rad = radical(S, C)
        singular = {vadd(e, x) for x in rad.elements() if not is_zero(x)} == set(
            groups.get(IdempotentKind.SINGULAR, [])
        )

    other = groups.get(IdempotentKind.PARA_UNIT, []) + groups.get(IdempotentKind.PARA_NON_UNIT, [])
    return IdempotentInventory(
        field=F.spec,
        algebra=S.name,
        strategy=str(search.strategy),
        total=len(search),
        quaternionic=[S.describe(e) for e in quaternionic],
        quadratic=[S.describe(e) for e in groups.get(IdempotentKind.QUADRATIC, [])],
        singular=[S.describe(e) for e in groups.get(IdempotentKind.SINGULAR, [])],
        other=[S.describe(e) for e in other],
        class_tags=[class_tag(K, a) for K, a in _distinct_classes(pairs)],
        closed_form_match=closed,
        singular_match=singular,
        flag=search.flag,
    )


def classify_symmetric_composition(S: Algebra, settings: OkuboSettings | None = None) -> SymmetricClass:
    """Para-Hurwitz form or Okubo algebra, decided by the para-unit and by τ_e of an idempotent."""
    settings = settings or get_settings()
    for outcome in (check_composition(S, settings), check_symmetric(S)):
        if not outcome:
            raise ClassificationError(f"{S!r} fails the {outcome.method} check", detail=outcome.counterexample)
    if S.dim not in (1, 2, 4, 8):
        raise PreconditionError(f"symmetric composition algebras have dimension 1, 2, 4 or 8, got {S.dim}")

    center = commutative_center(S)
    base = {"algebra": S.name or repr(S), "field": S.field.spec, "dim": S.dim, "commutative_center_dim": center.dim}
    unit = find_para_unit(S)
    if unit is not None or S.dim <= 4:
        return SymmetricClass(
            kind=SymmetricKind.PARA_HURWITZ_FORM, para_unit=None if unit is None else S.describe(unit), **base
        )

    e: Vector | None = None
    if S.parent is not None and S.parent.unit is not None and S.mul(S.parent.unit, S.parent.unit) == S.parent.unit:
        e = S.parent.unit
    elif S.field.is_finite:
        found = idempotents(S, settings=settings)
        e = found.elements[0] if found.elements else None
    if e is None:
        kind = SymmetricKind.PARA_HURWITZ_FORM if center.dim else SymmetricKind.UNDETERMINED
        return SymmetricClass(kind=kind, flag=CUBIC_EXTENSION_FLAG, **base)

    cls = classify_idempotent(S, e, settings)
    para_side = cls.kind in (IdempotentKind.PARA_UNIT, IdempotentKind.PARA_NON_UNIT)
    return SymmetricClass(
        kind=SymmetricKind.PARA_HURWITZ_FORM if para_side else SymmetricKind.OKUBO,
        idempotent=cls.element,
        order3=cls.order3,
        **base,
    )
