"""Linear maps on algebras: automorphism validation, orders, the named order-3 automorphisms, fixed
subspaces, centralizers, Segre symbols, and the Cayley–Dickson extension of partial isomorphisms."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from okubo.compalg import (
    Algebra,
    Element,
    Tag,
    idempotent_check,
)
from okubo.errors import (
    ClassificationError,
    NotAnAutomorphismError,
    NotNilpotentError,
    ParseError,
    PreconditionError,
)
from okubo.linalg import (
    Matrix,
    Subspace,
    Vector,
    columns,
    from_columns,
    identity,
    inverse,
    is_invertible,
    is_zero,
    is_zero_matrix,
    kernel,
    lattice_search,
    mat_mul,
    mat_pow,
    mat_sub,
    mat_vec,
    rank,
    solve,
    vadd,
    vscale,
    vsub,
)
from okubo.settings import OkuboSettings, get_settings

log = logging.getLogger(__name__)

ORDER_CAP = OkuboSettings.model_fields["order_cap"].default


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear endomorphism of an algebra; column j of `matrix` is the image of basis vector j."""

    algebra: Algebra
    matrix: Matrix

    def __post_init__(self) -> None:
        d = self.algebra.dim
        if len(self.matrix) != d or any(len(row) != d for row in self.matrix):
            raise PreconditionError(f"matrix is not {d}×{d}")

    def __call__(self, x: Vector | Element) -> Vector:
        return mat_vec(self.matrix, x.coords if isinstance(x, Element) else x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearMap) and other.algebra is self.algebra and other.matrix == self.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return LinearMap(self.algebra, mat_mul(self.matrix, other.matrix))

    def __sub__(self, other: LinearMap) -> LinearMap:
        return LinearMap(self.algebra, mat_sub(self.matrix, other.matrix))

    def minus_identity(self) -> LinearMap:
        return LinearMap(self.algebra, mat_sub(self.matrix, identity(self.algebra.field, self.algebra.dim)))

    def power(self, k: int) -> LinearMap:
        return LinearMap(self.algebra, mat_pow(self.matrix, k))

    def is_nilpotent(self) -> bool:
        return is_zero_matrix(mat_pow(self.matrix, self.algebra.dim))

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    @property
    def is_identity(self) -> bool:
        return self.matrix == identity(self.algebra.field, self.algebra.dim)


def is_automorphism(A: Algebra, M: Matrix) -> tuple[bool, tuple[int, int] | None]:
    """Invertible, multiplicative on basis pairs and isometric. Returns the first violating pair."""
    if not is_invertible(M):
        return False, None
    images = columns(M)
    for i in range(A.dim):
        for j in range(A.dim):
            if A.mul(images[i], images[j]) != mat_vec(M, A.constants[i][j]):
                return False, (i, j)
    gram = A.form.gram
    for i in range(A.dim):
        for j in range(i, A.dim):
            if A.polar(images[i], images[j]) != gram[i][j]:
                return False, (i, j)
        if A.norm(images[i]) != A.form.diagonal[i]:
            return False, (i, i)
    return True, None


@dataclass(frozen=True, eq=False)
class Automorphism(LinearMap):
    """A LinearMap validated as an automorphism of its algebra at construction."""

    def __post_init__(self) -> None:
        super().__post_init__()
        ok, pair = is_automorphism(self.algebra, self.matrix)
        if not ok:
            if pair is None:
                raise NotAnAutomorphismError("matrix is singular")
            i, j = pair
            labels = self.algebra.labels
            raise NotAnAutomorphismError(f"not multiplicative or not isometric at ({labels[i]}, {labels[j]})", pair)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        product = mat_mul(self.matrix, other.matrix)
        if isinstance(other, Automorphism):
            return Automorphism(self.algebra, product)
        return LinearMap(self.algebra, product)

    def inverse(self) -> Automorphism:
        return Automorphism(self.algebra, inverse(self.matrix))

    def conjugate_by(self, psi: Automorphism) -> Automorphism:
        """ψ ∘ self ∘ ψ⁻¹."""
        return Automorphism(self.algebra, mat_mul(psi.matrix, mat_mul(self.matrix, inverse(psi.matrix))))

    @cached_property
    def order(self) -> int | None:
        return order(self)


def order(phi: LinearMap, cap: int | None = None, settings: OkuboSettings | None = None) -> int | None:
    """Least k ≤ cap with φᵏ = id, None beyond the cap (default: `settings.order_cap` or its built-in value)."""
    cap = cap or (settings.order_cap if settings is not None else ORDER_CAP)
    one = identity(phi.algebra.field, phi.algebra.dim)
    power = phi.matrix
    for k in range(1, cap + 1):
        if power == one:
            return k
        power = mat_mul(power, phi.matrix)
    log.info("order of map exceeds cap %d", cap)
    return None


def identity_map(A: Algebra) -> Automorphism:
    return Automorphism(A, identity(A.field, A.dim))


# ---------------------------------------------------------------------------
# Named automorphisms
# ---------------------------------------------------------------------------


def _witness(A: Algebra):
    if A.witness is None:
        raise PreconditionError(f"{A!r} carries no canonical basis witness")
    return A.witness


def from_witness_action(A: Algebra, images: Sequence[Vector]) -> Automorphism:
    """The map sending the witness basis vectors (in order e₁, e₂, u, v) to `images`."""
    W = _witness(A).matrix()
    return Automorphism(A, mat_mul(from_columns(images), inverse(W)))


def automorphism_from_u_images(A: Algebra, U1: Vector, U2: Vector, U3: Vector) -> Automorphism:
    """The automorphism with uᵢ ↦ Uᵢ: vᵢ ↦ U_{i+1}U_{i+2}, e₁ ↦ −U₁V₁, e₂ ↦ −V₁U₁."""
    U = (tuple(U1), tuple(U2), tuple(U3))
    V = tuple(A.mul(U[(i + 1) % 3], U[(i + 2) % 3]) for i in range(3))
    E1 = vscale(-1, A.mul(U[0], V[0]))
    E2 = vscale(-1, A.mul(V[0], U[0]))
    return from_witness_action(A, [E1, E2, *U, *V])


def tau_st(A: Algebra) -> Automorphism:
    """Fixes e₁, e₂ and shifts uᵢ ↦ u_{i+1}, vᵢ ↦ v_{i+1}."""
    W = _witness(A)
    return from_witness_action(A, [W.e1, W.e2, W.u[1], W.u[2], W.u[0], W.v[1], W.v[2], W.v[0]])


def conjugation_swap(A: Algebra) -> Automorphism:
    """e₁ ↔ e₂, uᵢ ↔ vᵢ."""
    W = _witness(A)
    return from_witness_action(A, [W.e2, W.e1, *W.v, *W.u])


NORMAL_FORMS = ("type1", "type2", "type3", "type4")


def normal_form(A: Algebra, kind: str) -> Automorphism:
    """The four characteristic-3 normal forms; u₁, u₂ are fixed except in type2 (τ_st).

    type1: u₃ ↦ u₃ + u₂; type3: u₃ ↦ u₃ + v₃ − (e₁ − e₂); type4: u₃ ↦ u₃ + u₂ + v₃ − (e₁ − e₂).
    """
    W = _witness(A)
    if kind == "type2":
        return tau_st(A)
    shift = vsub(W.v[2], vsub(W.e1, W.e2))
    images = {
        "type1": vadd(W.u[2], W.u[1]),
        "type3": vadd(W.u[2], shift),
        "type4": vadd(vadd(W.u[2], W.u[1]), shift),
    }
    if kind not in images:
        raise ParseError(f"unknown normal form {kind!r}; expected one of {', '.join(NORMAL_FORMS)}")
    return automorphism_from_u_images(A, W.u[0], W.u[1], images[kind])


def tau_w(A: Algebra, w: Vector | Element) -> Automorphism:
    """x ↦ (w·x)·w² for w³ = 1; equal to w·(x·w²) by alternativity."""
    w = w.coords if isinstance(w, Element) else tuple(w)
    if A.tag is not Tag.HURWITZ:
        raise PreconditionError(f"τ_w needs a Hurwitz algebra, got {A!r}")
    w2 = A.mul(w, w)
    if A.mul(w, w2) != A.one:
        raise PreconditionError(f"{A.describe(w)} does not satisfy w³ = 1")
    images = []
    for i in range(A.dim):
        b = A.basis(i)
        left = A.mul(A.mul(w, b), w2)
        if left != A.mul(w, A.mul(b, w2)):
            raise ClassificationError(f"(w·x)·w² ≠ w·(x·w²) at {A.labels[i]}: {A!r} is not alternative")
        images.append(left)
    tau = Automorphism(A, from_columns(images))
    if tau(w) != w:
        raise ClassificationError("τ_w does not fix w")
    return tau


def standard_cube_root(A: Algebra) -> Vector:
    """Some w ∉ F1 with w² + w + 1 = 0 in a Zorn-witnessed algebra."""
    W = _witness(A)
    F = A.field
    roots = F.quadratic_roots(1, 1, 1) if F.characteristic != 2 or F.is_finite else []
    roots = [r for r in roots if r != 1]
    if roots:
        omega = roots[0]
        return vadd(vscale(omega, W.e1), vscale(omega * omega, W.e2))
    one = vadd(W.e1, W.e2)
    if F.characteristic == 3:
        return vadd(one, W.u[0])
    if F.characteristic == 2:
        return vadd(W.e1, vadd(W.u[0], W.v[0]))
    # -1/2 + z with n(z) = 3/4, z = u1 + (3/4)v1
    return vadd(vscale(-F.one / 2, one), vadd(W.u[0], vscale(F(3) / 4, W.v[0])))


# ---------------------------------------------------------------------------
# Fixed spaces, centralizers, Segre symbols
# ---------------------------------------------------------------------------


def _kernel_of(A: Algebra, M: Matrix) -> Subspace:
    return Subspace(A.field, A.dim, kernel(M, A.dim, A.field))


def fix(phi: LinearMap) -> Subspace:
    return _kernel_of(phi.algebra, phi.minus_identity().matrix)


def centr(S: Algebra, e: Vector | Element) -> Subspace:
    """{x : e*x = x*e}."""
    e = e.coords if isinstance(e, Element) else tuple(e)
    return _kernel_of(S, mat_sub(S.left(e), S.right(e)))


@dataclass(frozen=True)
class SegreSymbol:
    """Jordan block sizes of a nilpotent map, largest first."""

    parts: tuple[int, ...]

    def __str__(self) -> str:
        out = []
        for size in sorted(set(self.parts), reverse=True):
            count = self.parts.count(size)
            out.append(f"{size}^{count}" if count > 1 else str(size))
        return "(" + ",".join(out) + ")"

    @classmethod
    def parse(cls, text: str) -> SegreSymbol:
        body = text.strip().removeprefix("(").removesuffix(")")
        parts: list[int] = []
        try:
            for token in body.split(","):
                size, _, count = token.strip().partition("^")
                parts += [int(size)] * (int(count) if count else 1)
        except ValueError as exc:
            raise ParseError(f"malformed Segre symbol {text!r}") from exc
        return cls(tuple(sorted(parts, reverse=True)))


def segre_symbol(N: LinearMap | Matrix) -> SegreSymbol:
    """Block sizes from the rank sequence r_k = rank(N^k): r_{k-1} − r_k blocks have size ≥ k."""
    M = N.matrix if isinstance(N, LinearMap) else N
    d = len(M)
    ranks = [d]
    power = M
    for _ in range(d):
        ranks.append(rank(power))
        if ranks[-1] == 0:
            break
        power = mat_mul(power, M)
    if ranks[-1] != 0:
        raise NotNilpotentError("segre symbol needs a nilpotent map")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k, count in enumerate(at_least, start=1):
        exactly = count - (at_least[k] if k < len(at_least) else 0)
        parts += [k] * exactly
    return SegreSymbol(tuple(sorted(parts, reverse=True)))


def tau_from_idempotent(S: Algebra, e: Vector | Element) -> Automorphism:
    """τ_e(x) = e*(e*x), checked against n(e,x)e − x*e on the basis."""
    e = idempotent_check(S, e.coords if isinstance(e, Element) else e)
    images = []
    for i in range(S.dim):
        b = S.basis(i)
        image = S.mul(e, S.mul(e, b))
        if image != vsub(vscale(S.polar(e, b), e), S.mul(b, e)):
            raise ClassificationError(f"e*(e*x) ≠ n(e,x)e − x*e at {S.labels[i]}: S is not symmetric")
        images.append(image)
    tau = Automorphism(S, from_columns(images))
    if not tau.power(3).is_identity:
        raise ClassificationError("τ_e³ ≠ id")
    return tau


# ---------------------------------------------------------------------------
# Extension of isomorphisms by doubling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialIsomorphism:
    """An isomorphism from the subalgebra spanned by `source` onto the one spanned by `images`."""

    algebra: Algebra
    source: tuple[Vector, ...]
    images: tuple[Vector, ...]

    @cached_property
    def domain(self) -> Subspace:
        return Subspace(self.algebra.field, self.algebra.dim, self.source)

    @cached_property
    def codomain(self) -> Subspace:
        return Subspace(self.algebra.field, self.algebra.dim, self.images)

    @property
    def dim(self) -> int:
        return len(self.source)

    def __call__(self, x: Vector) -> Vector:
        coords = solve([list(row) for row in from_columns(self.source)], list(x), self.algebra.field)
        if coords is None:
            raise PreconditionError(f"{self.algebra.describe(x)} is outside the domain")
        acc = self.algebra.zero
        for c, img in zip(coords, self.images):
            acc = vadd(acc, vscale(c, img))
        return acc

    def violation(self) -> tuple[int, int] | None:
        A = self.algebra
        for i, x in enumerate(self.source):
            for j, y in enumerate(self.source):
                xy = A.mul(x, y)
                if not self.domain.contains(xy) or self(xy) != A.mul(self.images[i], self.images[j]):
                    return i, j
            if A.norm(x) != A.norm(self.images[i]):
                return i, i
        return None

    def automorphism(self) -> Automorphism:
        if self.dim != self.algebra.dim:
            raise PreconditionError(f"partial isomorphism has dimension {self.dim} < {self.algebra.dim}")
        return Automorphism(self.algebra, mat_mul(from_columns(self.images), inverse(from_columns(self.source))))


def partial_isomorphism(A: Algebra, source: Sequence[Vector], images: Sequence[Vector]) -> PartialIsomorphism:
    iso = PartialIsomorphism(A, tuple(map(tuple, source)), tuple(map(tuple, images)))
    if rank(list(iso.source)) != iso.dim or rank(list(iso.images)) != iso.dim:
        raise PreconditionError("source and images must be linearly independent")
    if (bad := iso.violation()) is not None:
        raise PreconditionError(f"the map is not an isomorphism of subalgebras at pair {bad}")
    return iso


def extend_by_doubling(A: Algebra, phi: PartialIsomorphism, u: Vector, u2: Vector) -> PartialIsomorphism:
    """(a + b·u) ↦ φ(a) + φ(b)·u′ for u ⊥ B, u′ ⊥ B′ with n(u) = n(u′) ≠ 0."""
    u, u2 = tuple(u), tuple(u2)
    if any(A.polar(u, b) for b in phi.source):
        raise PreconditionError("u is not orthogonal to B")
    if any(A.polar(u2, b) for b in phi.images):
        raise PreconditionError("u' is not orthogonal to B'")
    if A.norm(u) != A.norm(u2):
        raise PreconditionError(f"n(u) = {A.norm(u)} differs from n(u') = {A.norm(u2)}")
    if not A.norm(u):
        raise PreconditionError("u is isotropic")
    if (bad := phi.violation()) is not None:
        raise PreconditionError(f"φ is not an isomorphism on B at pair {bad}")
    source = phi.source + tuple(A.mul(b, u) for b in phi.source)
    images = phi.images + tuple(A.mul(b, u2) for b in phi.images)
    extended = PartialIsomorphism(A, source, images)
    if (bad := extended.violation()) is not None:
        raise ClassificationError(f"doubling did not extend φ multiplicatively at pair {bad}")
    log.debug("extended a %d-dimensional isomorphism to dimension %d", phi.dim, extended.dim)
    return extended


def _nonisotropic_in_perp(A: Algebra, B: Subspace, settings: OkuboSettings) -> Vector:
    perp = B.orthogonal(A.form.gram)
    values = A.field.lattice_values(settings.max_height)
    return lattice_search(
        perp.basis, values, lambda v: bool(A.norm(v)), settings.search_limit, "nonisotropic vector orthogonal to B"
    )


def conjugate_to_standard(
    A: Algebra, x: Vector | Element, settings: OkuboSettings | None = None
) -> Automorphism:
    """φ with φ(x) = e₁ for an idempotent x ≠ 0, 1, or φ(x) = u₁ for x ≠ 0 with x² = 0.

    x is completed to a 2- or 4-dimensional subalgebra mapped onto its standard copy, which is then
    extended twice by doubling with nonisotropic orthogonal vectors found by lattice search.
    """
    settings = settings or get_settings()
    W = _witness(A)
    x = x.coords if isinstance(x, Element) else tuple(x)
    F = A.field
    one = A.one
    xx = A.mul(x, x)
    if not is_zero(x) and xx == x and x != one:
        if x == W.e1:
            return identity_map(A)
        phi = partial_isomorphism(A, [one, x], [one, W.e1])
        u = _nonisotropic_in_perp(A, phi.domain, settings)
        phi = extend_by_doubling(A, phi, u, vadd(W.u[0], vscale(A.norm(u), W.v[0])))
    elif not is_zero(x) and is_zero(xx):
        if x == W.u[0]:
            return identity_map(A)
        rows = [[A.polar(x, A.basis(i)) for i in range(A.dim)], [A.polar(one, A.basis(i)) for i in range(A.dim)]]
        y = solve(rows, [F.one, F.zero], F)
        if y is None:
            raise PreconditionError(f"{A.describe(x)} lies in the radical of the norm")
        y = vsub(y, vscale(A.norm(y), x))  # now n(y) = 0, n(x, y) = 1, n(1, y) = 0
        f = vscale(-1, A.mul(x, y))  # idempotent with f·(x + y) = x
        phi = partial_isomorphism(A, [one, f], [one, W.e1])
        phi = extend_by_doubling(A, phi, vadd(x, y), vadd(W.u[0], W.v[0]))
    else:
        raise PreconditionError(f"{A.describe(x)} is neither an idempotent other than 0, 1 nor a square-zero element")
    v = _nonisotropic_in_perp(A, phi.domain, settings)
    phi = extend_by_doubling(A, phi, v, vadd(W.u[1], vscale(A.norm(v), W.v[1])))
    result = phi.automorphism()
    target = W.e1 if xx == x else W.u[0]
    if result(x) != target:
        raise ClassificationError("doubling construction missed the standard target")
    return result
