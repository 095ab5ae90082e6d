"""Composition algebras as structure constants plus a quadratic form.

Constructors: Zorn's split Cayley algebra, the ground field, quadratic étale algebras, Cayley–Dickson
doubling, para-Hurwitz and Petersson algebras, the split Okubo algebra and the K ⊕ W construction of a
Cayley algebra from a hermitian space. Each constructor verifies the identities it promises.
"""

from __future__ import annotations

import dataclasses
import logging
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
from typing import TYPE_CHECKING

from okubo.errors import (
    ClassificationError,
    InfeasibleError,
    NotIdempotentError,
    PreconditionError,
    SearchExhaustedError,
    WrongCharacteristicError,
)
from okubo.fields import EtaleAlgebra, Field, FieldElement, KElem
from okubo.linalg import (
    Matrix,
    Subspace,
    Vector,
    from_columns,
    identity,
    is_zero,
    kernel,
    lattice_search,
    mat_mul,
    mat_pow,
    mat_vec,
    rank,
    solve,
    unit_vector,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from okubo.settings import OkuboSettings, get_settings

if TYPE_CHECKING:
    from okubo.maps import Automorphism

log = logging.getLogger(__name__)

Constants = tuple[tuple[Vector, ...], ...]  # constants[i][j] = coordinates of bᵢ·bⱼ
Coords = Sequence[FieldElement]


class Tag(StrEnum):
    HURWITZ = "hurwitz"
    PARA = "para"
    PETERSSON = "petersson"
    OKUBO = "okubo"
    GENERIC = "generic"


SYMMETRIC_TAGS = frozenset({Tag.PARA, Tag.PETERSSON, Tag.OKUBO})

ZORN_LABELS = ("e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3")
E1, E2 = 0, 1
U = (2, 3, 4)
V = (5, 6, 7)


# ---------------------------------------------------------------------------
# Quadratic forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """n(x) = Σ diagonalᵢ xᵢ² + Σ_{i<j} gram_ij xᵢxⱼ. The polar form has Gram matrix `gram`."""

    diagonal: Vector
    gram: Matrix

    def __post_init__(self) -> None:
        d = len(self.diagonal)
        if len(self.gram) != d or any(len(row) != d for row in self.gram):
            raise PreconditionError(f"Gram matrix is not {d}×{d}")
        for i in range(d):
            if self.gram[i][i] != 2 * self.diagonal[i]:
                raise PreconditionError(f"polar form disagrees with the norm on basis vector {i}")
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise PreconditionError(f"Gram matrix is not symmetric at ({i}, {j})")

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    def value(self, x: Coords) -> FieldElement:
        support = [(i, c) for i, c in enumerate(x) if c]
        total = self.diagonal[0].field.zero
        for pos, (i, xi) in enumerate(support):
            if self.diagonal[i]:
                total += self.diagonal[i] * xi * xi
            row = self.gram[i]
            for j, xj in support[pos + 1 :]:
                if row[j]:
                    total += row[j] * xi * xj
        return total

    def polar(self, x: Coords, y: Coords) -> FieldElement:
        total = self.diagonal[0].field.zero
        ys = [(j, c) for j, c in enumerate(y) if c]
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in ys:
                if row[j]:
                    total += row[j] * xi * yj
        return total

    def radical(self) -> Subspace:
        F = self.diagonal[0].field
        return Subspace(F, self.dim, kernel(self.gram, self.dim, F))

    @property
    def is_nonsingular(self) -> bool:
        """Radical zero, or one-dimensional and spanned by a nonisotropic vector (characteristic 2)."""
        rad = self.radical()
        return rad.dim == 0 or (rad.dim == 1 and bool(self.value(rad.basis[0])))


def form_from_norm(F: Field, d: int, norm: Callable[[Vector], FieldElement]) -> QuadraticForm:
    basis = [unit_vector(F, d, i) for i in range(d)]
    diagonal = tuple(norm(b) for b in basis)
    gram = [[F.zero] * d for _ in range(d)]
    for i in range(d):
        gram[i][i] = 2 * diagonal[i]
        for j in range(i + 1, d):
            gram[i][j] = gram[j][i] = norm(vadd(basis[i], basis[j])) - diagonal[i] - diagonal[j]
    return QuadraticForm(diagonal, tuple(map(tuple, gram)))


# ---------------------------------------------------------------------------
# Algebras and elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalBasisWitness:
    """Coordinates of e₁, e₂, u₁..u₃, v₁..v₃ in the ambient basis."""

    e1: Vector
    e2: Vector
    u: tuple[Vector, Vector, Vector]
    v: tuple[Vector, Vector, Vector]

    def as_list(self) -> list[Vector]:
        return [self.e1, self.e2, *self.u, *self.v]

    def matrix(self) -> Matrix:
        """Columns are the witness vectors, so M·(standard coordinates) = ambient coordinates."""
        return from_columns(self.as_list())


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    constants: Constants
    form: QuadraticForm
    tag: Tag = Tag.GENERIC
    unit: Vector | None = None
    para_unit: Vector | None = None
    labels: tuple[str, ...] = ()
    witness: CanonicalBasisWitness | None = None
    parent: Algebra | None = None
    tau: Matrix | None = None
    name: str = ""

    def __post_init__(self) -> None:
        d = len(self.constants)
        if any(len(row) != d or any(len(c) != d for c in row) for row in self.constants):
            raise PreconditionError(f"structure constants are not {d}×{d}×{d}")
        if self.form.dim != d:
            raise PreconditionError(f"norm has dimension {self.form.dim}, algebra has {d}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(d)))

    def __repr__(self) -> str:
        return f"Algebra({self.name or self.tag.value}, dim={self.dim} over {self.field.spec})"

    @property
    def dim(self) -> int:
        return len(self.constants)

    @cached_property
    def _table(self) -> list[list[list[tuple[int, FieldElement]]]]:
        return [[[(k, c) for k, c in enumerate(cell) if c] for cell in row] for row in self.constants]

    def basis(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    @property
    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    @property
    def one(self) -> Vector:
        if self.unit is None:
            raise PreconditionError(f"{self!r} has no unit")
        return self.unit

    def mul(self, x: Coords, y: Coords) -> Vector:
        acc = [self.field.zero] * self.dim
        ys = [(j, c) for j, c in enumerate(y) if c]
        table = self._table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = table[i]
            for j, yj in ys:
                cell = row[j]
                if not cell:
                    continue
                s = xi * yj
                for k, c in cell:
                    acc[k] += s * c
        return tuple(acc)

    def norm(self, x: Coords) -> FieldElement:
        return self.form.value(x)

    def polar(self, x: Coords, y: Coords) -> FieldElement:
        return self.form.polar(x, y)

    def conj(self, x: Coords) -> Vector:
        """x̄ = n(x,1)1 − x."""
        if self.tag is not Tag.HURWITZ or self.unit is None:
            raise PreconditionError(f"conjugation needs a Hurwitz algebra, {self!r} is tagged {self.tag}")
        return vsub(vscale(self.polar(x, self.unit), self.unit), x)

    def left(self, x: Coords) -> Matrix:
        return from_columns([self.mul(x, self.basis(j)) for j in range(self.dim)])

    def right(self, x: Coords) -> Matrix:
        return from_columns([self.mul(self.basis(j), x) for j in range(self.dim)])

    def element(self, coords: Coords) -> Element:
        return Element(self, tuple(self.field(c) for c in coords))

    def vector(self, spec: str | Coords) -> Vector:
        """Coordinates from a list, or from a label expression like "u1" or "1-v3" (Zorn labels)."""
        if not isinstance(spec, str):
            return tuple(self.field(c) for c in spec)
        return _parse_label_expr(self, spec)

    def describe(self, x: Coords) -> str:
        """Symbolic text such as "v3", "-e2", "u3 + v3 - e1" or "0"."""
        terms = []
        for label, c in zip(self.labels, x):
            if not c:
                continue
            if c == 1:
                terms.append(label)
            elif c == -1:
                terms.append(f"-{label}")
            else:
                text = str(c)
                if any(ch in text[1:] for ch in "+-/ ") or "," in text:
                    text = f"({text})"
                terms.append(f"{text}*{label}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def _parse_label_expr(A: Algebra, text: str) -> Vector:
    F = A.field
    index = {label: i for i, label in enumerate(A.labels)}
    if A.unit is not None:
        index.setdefault("1", -1)
    acc = A.zero
    for raw in text.replace("-", "+-").split("+"):
        term = raw.strip()
        if not term:
            continue
        sign = F.one
        if term.startswith("-"):
            sign, term = -F.one, term[1:].strip()
        coeff, _, label = term.rpartition("*")
        scale = sign * (F.parse(coeff) if coeff else F.one)
        if label not in index:
            raise PreconditionError(f"unknown basis label {label!r} in {text!r}")
        vec = A.one if index[label] == -1 else A.basis(index[label])
        acc = vadd(acc, vscale(scale, vec))
    return acc


@dataclass(frozen=True)
class Element:
    """An algebra element: `*` with an element is the algebra product, with a scalar it scales."""

    algebra: Algebra
    coords: Vector

    def __post_init__(self) -> None:
        if len(self.coords) != self.algebra.dim:
            raise PreconditionError(f"element has {len(self.coords)} coordinates, algebra has {self.algebra.dim}")

    def __add__(self, other: Element) -> Element:
        return Element(self.algebra, vadd(self.coords, other.coords))

    def __sub__(self, other: Element) -> Element:
        return Element(self.algebra, vsub(self.coords, other.coords))

    def __neg__(self) -> Element:
        return Element(self.algebra, vscale(-1, self.coords))

    def __mul__(self, other: object) -> Element:
        if isinstance(other, Element):
            return Element(self.algebra, self.algebra.mul(self.coords, other.coords))
        if isinstance(other, FieldElement | int):
            return Element(self.algebra, vscale(other, self.coords))
        return NotImplemented

    def __rmul__(self, other: object) -> Element:
        if isinstance(other, FieldElement | int):
            return Element(self.algebra, vscale(other, self.coords))
        return NotImplemented

    def norm(self) -> FieldElement:
        return self.algebra.norm(self.coords)

    def conj(self) -> Element:
        return Element(self.algebra, self.algebra.conj(self.coords))

    def __str__(self) -> str:
        return self.algebra.describe(self.coords)


def _coords(x: Element | Coords) -> Vector:
    return x.coords if isinstance(x, Element) else tuple(x)


def multiply(A: Algebra, x: Element | Coords, y: Element | Coords) -> Vector:
    return A.mul(_coords(x), _coords(y))


def norm(A: Algebra, x: Element | Coords) -> FieldElement:
    return A.norm(_coords(x))


def polar(A: Algebra, x: Element | Coords, y: Element | Coords) -> FieldElement:
    return A.polar(_coords(x), _coords(y))


def conjugate(A: Algebra, x: Element | Coords) -> Vector:
    return A.conj(_coords(x))


def _constants_from(F: Field, d: int, product: Callable[[Vector, Vector], Vector]) -> Constants:
    basis = [unit_vector(F, d, i) for i in range(d)]
    return tuple(tuple(tuple(product(bi, bj)) for bj in basis) for bi in basis)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    method: str
    checked: int
    counterexample: tuple[Vector, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def polarization_lattice(A: Algebra) -> list[Vector]:
    """{bᵢ} ∪ {bᵢ + bⱼ}: degree-2 identities checked on these hold everywhere."""
    basis = [A.basis(i) for i in range(A.dim)]
    return basis + [vadd(basis[i], basis[j]) for i in range(A.dim) for j in range(i + 1, A.dim)]


def _composition_fails(A: Algebra, x: Vector, y: Vector) -> bool:
    return A.norm(A.mul(x, y)) != A.norm(x) * A.norm(y)


def check_composition(
    A: Algebra, settings: OkuboSettings | None = None, certificate_only: bool = False
) -> CheckOutcome:
    """n(x·y) = n(x)n(y): exhaustive when |F|^{2d} is small, else the polarization certificate plus random pairs."""
    from okubo import enumeration

    settings = settings or get_settings()
    if not A.form.is_nonsingular:
        return CheckOutcome(False, "nonsingularity", 0, (A.form.radical().basis[0],))
    q = A.field.order
    if not certificate_only and q is not None and q ** (2 * A.dim) <= settings.exhaustive_pairs:
        pair = enumeration.exhaustive_composition(A)
        log.debug("exhaustive composition check of %r over %d pairs", A, q ** (2 * A.dim))
        return CheckOutcome(pair is None, "exhaustive", q ** (2 * A.dim), pair)

    lattice = polarization_lattice(A)
    d = A.dim
    # basis pairs come first
    pairs = [(x, y) for x in lattice[:d] for y in lattice[:d]]
    pairs += [(x, y) for i, x in enumerate(lattice) for j, y in enumerate(lattice) if max(i, j) >= d]
    checked = 0
    for x, y in pairs:
        checked += 1
        if _composition_fails(A, x, y):
            return CheckOutcome(False, "certificate", checked, (x, y))
    if certificate_only:
        return CheckOutcome(True, "certificate", checked)

    if q is not None:
        pair = enumeration.random_composition(A, settings.random_pairs, settings.seed)
        return CheckOutcome(pair is None, "certificate+random", checked + settings.random_pairs, pair)
    rng = random.Random(settings.seed)
    for _ in range(settings.random_pairs_infinite):
        x = tuple(A.field.random_element(rng) for _ in range(A.dim))
        y = tuple(A.field.random_element(rng) for _ in range(A.dim))
        checked += 1
        if _composition_fails(A, x, y):
            return CheckOutcome(False, "certificate+random", checked, (x, y))
    return CheckOutcome(True, "certificate+random", checked)


def check_hurwitz(A: Algebra) -> CheckOutcome:
    """Two-sided unit, Cayley–Hamilton x² − n(x,1)x + n(x)1 = 0, and conj(x·y) = ȳ·x̄."""
    if A.unit is None:
        return CheckOutcome(False, "hurwitz", 0)
    one = A.unit
    checked = 0
    for i in range(A.dim):
        b = A.basis(i)
        checked += 1
        if A.mul(one, b) != b or A.mul(b, one) != b:
            return CheckOutcome(False, "hurwitz", checked, (b,))
    for x in polarization_lattice(A):
        checked += 1
        ch = vadd(vsub(A.mul(x, x), vscale(A.polar(x, one), x)), vscale(A.norm(x), one))
        if not is_zero(ch):
            return CheckOutcome(False, "hurwitz", checked, (x,))
    hurwitz = A if A.tag is Tag.HURWITZ else dataclasses.replace(A, tag=Tag.HURWITZ)
    conj = [hurwitz.conj(A.basis(i)) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            checked += 1
            lhs = hurwitz.conj(A.mul(A.basis(i), A.basis(j)))
            if lhs != A.mul(conj[j], conj[i]):
                return CheckOutcome(False, "hurwitz", checked, (A.basis(i), A.basis(j)))
    return CheckOutcome(True, "hurwitz", checked)


def check_symmetric(S: Algebra) -> CheckOutcome:
    """n(x*y, z) = n(x, y*z) on basis triples and (x*y)*x = n(x)y = x*(y*x)."""
    d = S.dim
    basis = [S.basis(i) for i in range(d)]
    products = [[S.mul(x, y) for y in basis] for x in basis]
    checked = 0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                checked += 1
                if S.polar(products[i][j], basis[k]) != S.polar(basis[i], products[j][k]):
                    return CheckOutcome(False, "symmetric", checked, (basis[i], basis[j], basis[k]))
    for x in polarization_lattice(S):
        nx = S.norm(x)
        for y in basis:
            checked += 1
            target = vscale(nx, y)
            if S.mul(S.mul(x, y), x) != target or S.mul(x, S.mul(y, x)) != target:
                return CheckOutcome(False, "symmetric", checked, (x, y))
    return CheckOutcome(True, "symmetric", checked)


def _certify(A: Algebra, *checks: Callable[[Algebra], CheckOutcome]) -> Algebra:
    for check in checks:
        outcome = check(A)
        if not outcome:
            raise ClassificationError(f"{A!r} failed the {outcome.method} check", detail=outcome.counterexample)
    return A


def _certify_composition(A: Algebra) -> CheckOutcome:
    return check_composition(A, certificate_only=True)


# ---------------------------------------------------------------------------
# Hurwitz constructors
# ---------------------------------------------------------------------------


def _zorn_products() -> dict[tuple[int, int], tuple[int, int]]:
    """(i, j) ↦ (k, ±1) with bᵢ·bⱼ = ±bₖ; every other product is 0."""
    table = {(E1, E1): (E1, 1), (E2, E2): (E2, 1)}
    for i in range(3):
        table[E1, U[i]] = table[U[i], E2] = (U[i], 1)
        table[E2, V[i]] = table[V[i], E1] = (V[i], 1)
        table[U[i], V[i]] = (E1, -1)
        table[V[i], U[i]] = (E2, -1)
        j, k = (i + 1) % 3, (i + 2) % 3
        table[U[i], U[j]] = (V[k], 1)
        table[U[j], U[i]] = (V[k], -1)
        table[V[i], V[j]] = (U[k], 1)
        table[V[j], V[i]] = (U[k], -1)
    return table


ZORN_TABLE = _zorn_products()


def zorn(F: Field) -> Algebra:
    """The split Cayley algebra in its canonical basis e₁, e₂, u₁, u₂, u₃, v₁, v₂, v₃."""
    d = 8
    constants = [[[F.zero] * d for _ in range(d)] for _ in range(d)]
    for (i, j), (k, sign) in ZORN_TABLE.items():
        constants[i][j][k] = F(sign)
    gram = [[F.zero] * d for _ in range(d)]
    for a, b in [(E1, E2), *zip(U, V)]:
        gram[a][b] = gram[b][a] = F.one
    basis = [unit_vector(F, d, i) for i in range(d)]
    witness = CanonicalBasisWitness(basis[E1], basis[E2], tuple(basis[i] for i in U), tuple(basis[i] for i in V))
    return Algebra(
        field=F,
        constants=tuple(tuple(map(tuple, row)) for row in constants),
        form=QuadraticForm((F.zero,) * d, tuple(map(tuple, gram))),
        tag=Tag.HURWITZ,
        unit=vadd(basis[E1], basis[E2]),
        labels=ZORN_LABELS,
        witness=witness,
        name="zorn",
    )


def ground(F: Field) -> Algebra:
    return Algebra(
        field=F,
        constants=(((F.one,),),),
        form=QuadraticForm((F.one,), ((F(2),),)),
        tag=Tag.HURWITZ,
        unit=(F.one,),
        labels=("1",),
        name="ground",
    )


def etale_hurwitz(K: EtaleAlgebra) -> Algebra:
    """K = F1 ⊕ Fξ with ξ² = c + bξ as a two-dimensional Hurwitz algebra."""
    F, b, c = K.field, K.b, K.c

    def product(x: Vector, y: Vector) -> Vector:
        return K.mul((x[0], x[1]), (y[0], y[1]))

    return _certify(
        Algebra(
            field=F,
            constants=_constants_from(F, 2, product),
            form=QuadraticForm((F.one, -c), ((F(2), b), (b, -2 * c))),
            tag=Tag.HURWITZ,
            unit=(F.one, F.zero),
            labels=("1", "xi"),
            name=f"etale({K.label})",
        ),
        check_hurwitz,
        _certify_composition,
    )


_DOUBLING_LETTER = {2: "i", 4: "j", 8: "l"}


def cayley_dickson(B: Algebra, mu: FieldElement | int) -> Algebra:
    """B ⊕ B·u with u² = μ and n(a + bu) = n(a) − μ n(b).

    (a + b·u)(c + d·u) = (ac + μ d̄b) + (da + bc̄)·u
    """
    F = B.field
    mu = F(mu)
    if B.tag is not Tag.HURWITZ or B.unit is None:
        raise PreconditionError(f"Cayley–Dickson doubling needs a Hurwitz algebra, got {B!r}")
    if B.dim not in (1, 2, 4):
        raise PreconditionError(f"cannot double a {B.dim}-dimensional algebra: composition algebras stop at 8")
    if not mu:
        raise PreconditionError("doubling parameter μ must be nonzero")
    d = B.dim
    D = 2 * d

    def split(x: Vector) -> tuple[Vector, Vector]:
        return x[:d], x[d:]

    def product(x: Vector, y: Vector) -> Vector:
        a, b = split(x)
        c, dd = split(y)
        first = vadd(B.mul(a, c), vscale(mu, B.mul(B.conj(dd), b)))
        second = vadd(B.mul(dd, a), B.mul(b, B.conj(c)))
        return first + second

    diagonal = B.form.diagonal + tuple(-mu * v for v in B.form.diagonal)
    gram = [list(row) + [F.zero] * d for row in B.form.gram]
    gram += [[F.zero] * d + [-mu * v for v in row] for row in B.form.gram]
    letter = _DOUBLING_LETTER[D]
    labels = B.labels + tuple(letter if lab == "1" else f"{lab}{letter}" for lab in B.labels)
    return _certify(
        Algebra(
            field=F,
            constants=_constants_from(F, D, product),
            form=QuadraticForm(diagonal, tuple(map(tuple, gram))),
            tag=Tag.HURWITZ,
            unit=B.one + zero_vector(F, d),
            labels=labels,
            name=f"CD({B.name}, {mu})",
        ),
        check_hurwitz,
        _certify_composition,
    )


# ---------------------------------------------------------------------------
# Symmetric composition constructors
# ---------------------------------------------------------------------------


def para(A: Algebra) -> Algebra:
    """x∙y = x̄·ȳ; the unit of A becomes the para-unit."""
    if A.tag is not Tag.HURWITZ:
        raise PreconditionError(f"para-Hurwitz algebras are built from Hurwitz algebras, got {A!r}")

    def product(x: Vector, y: Vector) -> Vector:
        return A.mul(A.conj(x), A.conj(y))

    return _certify(
        Algebra(
            field=A.field,
            constants=_constants_from(A.field, A.dim, product),
            form=A.form,
            tag=Tag.PARA,
            para_unit=A.unit,
            labels=A.labels,
            witness=A.witness,
            parent=A,
            name=f"para-{A.name}",
        ),
        check_symmetric,
        _certify_composition,
    )


def _as_matrix(A: Algebra, tau: Automorphism | Matrix) -> Matrix:
    from okubo.maps import Automorphism

    if isinstance(tau, Automorphism):
        if tau.algebra is not A:
            raise PreconditionError("automorphism belongs to a different algebra")
        return tau.matrix
    return Automorphism(A, tau).matrix


def petersson(A: Algebra, tau: Automorphism | Matrix) -> Algebra:
    """x*y = τ(x̄)·τ²(ȳ) for an automorphism τ with τ³ = id."""
    if A.tag is not Tag.HURWITZ:
        raise PreconditionError(f"Petersson algebras are built from Hurwitz algebras, got {A!r}")
    T = _as_matrix(A, tau)
    if mat_pow(T, 3) != identity(A.field, A.dim):
        raise PreconditionError("τ³ ≠ id")
    T2 = mat_mul(T, T)

    def product(x: Vector, y: Vector) -> Vector:
        return A.mul(mat_vec(T, A.conj(x)), mat_vec(T2, A.conj(y)))

    trivial = T == identity(A.field, A.dim)
    return _certify(
        Algebra(
            field=A.field,
            constants=_constants_from(A.field, A.dim, product),
            form=A.form,
            tag=Tag.PETERSSON,
            para_unit=A.unit if trivial else None,
            labels=A.labels,
            witness=A.witness,
            parent=A,
            tau=T,
            name=f"petersson({A.name})",
        ),
        check_symmetric,
        _certify_composition,
    )


def split_okubo(F: Field) -> Algebra:
    """The split Okubo algebra as a Petersson algebra of Zorn's algebra.

    Outside characteristic 3 it is C_τ for the cyclic shift τ_st. In characteristic 3 the automorphism
    u₃ ↦ u₃ + u₂ (fixing u₁, u₂) is used instead, so that 1 is the quaternionic idempotent.
    """
    from okubo.maps import normal_form, tau_st

    C = zorn(F)
    tau = normal_form(C, "type1") if F.characteristic == 3 else tau_st(C)
    return dataclasses.replace(petersson(C, tau), tag=Tag.OKUBO, name="split-okubo")


def hurwitz_from_idempotent(S: Algebra, e: Element | Coords) -> Algebra:
    """x·y = (e*x)*(y*e), a Hurwitz algebra with unit e."""
    e = _coords(e)
    if S.mul(e, e) != e or is_zero(e):
        raise NotIdempotentError(f"{S.describe(e)} is not an idempotent of {S!r}")

    def product(x: Vector, y: Vector) -> Vector:
        return S.mul(S.mul(e, x), S.mul(y, e))

    A = Algebra(
        field=S.field,
        constants=_constants_from(S.field, S.dim, product),
        form=S.form,
        tag=Tag.HURWITZ,
        unit=e,
        labels=S.labels,
        parent=S,
        name=f"hurwitz({S.name})",
    )
    if not check_hurwitz(A):
        raise PreconditionError(f"{S!r} is not a symmetric composition algebra")
    return A


# ---------------------------------------------------------------------------
# The K ⊕ W construction
# ---------------------------------------------------------------------------


def _kw_labels() -> tuple[str, ...]:
    return ("1", "xi", "w1", "xi*w1", "w2", "xi*w2", "w3", "xi*w3")


def from_KW(
    K: EtaleAlgebra, a: KElem, settings: OkuboSettings | None = None
) -> tuple[Algebra, Automorphism, CanonicalBasisWitness]:
    """C = K ⊕ Kw₁ ⊕ Kw₂ ⊕ Kw₃ with σ(wᵢ,wᵢ) = 0, σ(wᵢ,wⱼ) = −1 and Φ(w₁,w₂,w₃) = a, plus τ_{K,a}.

    The F-basis is 1, ξ, w₁, ξw₁, w₂, ξw₂, w₃, ξw₃. τ_{K,a} fixes K and cycles w₁ → w₂ → w₃.
    """
    from okubo.maps import Automorphism

    F = K.field
    if F.characteristic != 3:
        raise WrongCharacteristicError(f"τ_(K,a) needs characteristic 3, {F.spec} has {F.characteristic}")
    a = (F(a[0]), F(a[1]))
    if K.norm(a) != 1:
        raise PreconditionError(f"n(a) = {K.norm(a)}, expected 1")

    def unpack(x: Vector) -> tuple[KElem, list[KElem]]:
        return (x[0], x[1]), [(x[2 + 2 * i], x[3 + 2 * i]) for i in range(3)]

    def pack(k: KElem, w: Sequence[KElem]) -> Vector:
        return (k[0], k[1]) + tuple(c for wi in w for c in wi)

    def sigma(x: Sequence[KElem], y: Sequence[KElem]) -> KElem:
        sx = K.add(K.add(x[0], x[1]), x[2])
        sy = K.conj(K.add(K.add(y[0], y[1]), y[2]))
        diag = K.mul(x[0], K.conj(y[0]))
        for i in (1, 2):
            diag = K.add(diag, K.mul(x[i], K.conj(y[i])))
        return K.sub(diag, K.mul(sx, sy))

    def cross(x: Sequence[KElem], y: Sequence[KElem]) -> list[KElem]:
        # r_i = Φ(w_i, x, y); σ(w_i, c) = (S c̄)_i with S = I − J, and S⁻¹ = I + J in characteristic 3
        r = []
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            r.append(K.mul(a, K.sub(K.mul(x[j], y[k]), K.mul(x[k], y[j]))))
        total = K.add(K.add(r[0], r[1]), r[2])
        return [K.conj(K.add(ri, total)) for ri in r]

    def product(p: Vector, q: Vector) -> Vector:
        k1, x = unpack(p)
        k2, y = unpack(q)
        k = K.sub(K.mul(k1, k2), sigma(x, y))
        c = cross(x, y)
        k2bar = K.conj(k2)
        w = [K.add(K.add(K.mul(k1, y[i]), K.mul(k2bar, x[i])), c[i]) for i in range(3)]
        return pack(k, w)

    def kw_norm(p: Vector) -> FieldElement:
        k, x = unpack(p)
        return K.norm(k) + sigma(x, x)[0]

    A = Algebra(
        field=F,
        constants=_constants_from(F, 8, product),
        form=form_from_norm(F, 8, kw_norm),
        tag=Tag.HURWITZ,
        unit=unit_vector(F, 8, 0),
        labels=_kw_labels(),
        name=f"kw({K.label}; a={K.format(a)})",
    )
    _certify(A, check_hurwitz, _certify_composition)
    witness = find_canonical_basis(A, settings)
    A = dataclasses.replace(A, witness=witness)
    columns = [A.basis(0), A.basis(1)]
    for i in range(3):
        target = 2 + 2 * ((i + 1) % 3)
        columns += [A.basis(target), A.basis(target + 1)]
    tau = Automorphism(A, from_columns(columns))
    log.debug("built %r with τ_(K,a) and a canonical witness", A)
    return A, tau, witness


# ---------------------------------------------------------------------------
# Canonical bases
# ---------------------------------------------------------------------------


def _table_violation(A: Algebra, W: CanonicalBasisWitness) -> tuple[int, int] | None:
    vectors = W.as_list()
    for (i, j), (k, sign) in ZORN_TABLE.items():
        if A.mul(vectors[i], vectors[j]) != vscale(sign, vectors[k]):
            return i, j
    for i in range(8):
        for j in range(8):
            if (i, j) not in ZORN_TABLE and not is_zero(A.mul(vectors[i], vectors[j])):
                return i, j
    return None


def complete_canonical_basis(
    A: Algebra, e1: Coords, e2: Coords, u1: Coords, u2: Coords, u3: Coords
) -> CanonicalBasisWitness:
    """ṽ₁ = ũ₂ũ₃, ṽ₂ = ũ₃ũ₁, ṽ₃ = ũ₁ũ₂ completes e₁, e₂, ũ₁, ũ₂, ũ₃ to a canonical basis."""
    e1, e2 = tuple(e1), tuple(e2)
    us = (tuple(u1), tuple(u2), tuple(u3))
    if (
        A.mul(e1, e1) != e1
        or A.mul(e2, e2) != e2
        or not is_zero(A.mul(e1, e2))
        or not is_zero(A.mul(e2, e1))
        or vadd(e1, e2) != A.one
    ):
        raise PreconditionError("e1, e2 are not orthogonal idempotents summing to 1")
    for i, u in enumerate(us, start=1):
        if A.mul(e1, u) != u or A.mul(u, e2) != u:
            raise PreconditionError(f"u{i} is not in the Peirce space e1·C·e2")
    if rank(list(us)) != 3:
        raise PreconditionError("u1, u2, u3 are linearly dependent")
    lam = A.polar(us[0], A.mul(us[1], us[2]))
    if lam != 1:
        raise PreconditionError(f"n(u1, u2·u3) = {lam}, expected 1")
    vs = (A.mul(us[1], us[2]), A.mul(us[2], us[0]), A.mul(us[0], us[1]))
    witness = CanonicalBasisWitness(e1, e2, us, vs)
    if (bad := _table_violation(A, witness)) is not None:
        i, j = bad
        pair = f"({ZORN_LABELS[i]}, {ZORN_LABELS[j]})"
        raise PreconditionError(f"witness does not reproduce the canonical table at {pair}")
    return witness


def _isotropic_vector(A: Algebra, settings: OkuboSettings) -> Vector:
    F = A.field
    diag, gram = A.form.diagonal, A.form.gram
    solvable = F.characteristic != 2 or F.is_finite
    for i in range(A.dim):
        if not diag[i]:
            return A.basis(i)
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            # n(bᵢ + λbⱼ) = diag_j λ² + gram_ij λ + diag_i
            for lam in F.quadratic_roots(diag[j], gram[i][j], diag[i]) if solvable else []:
                return vadd(A.basis(i), vscale(lam, A.basis(j)))
    basis = [A.basis(i) for i in range(A.dim)]
    return lattice_search(
        basis,
        F.lattice_values(settings.max_height),
        lambda v: not A.norm(v),
        settings.search_limit,
        "isotropic vector",
    )


def peirce_space(A: Algebra, e: Coords, left: int, right: int) -> Subspace:
    """{x : e·x = left·x, x·e = right·x} for left, right ∈ {0, 1}."""
    L, R = A.left(e), A.right(e)
    F = A.field
    rows = [
        tuple(L[r][c] - (F(left) if r == c else F.zero) for c in range(A.dim)) for r in range(A.dim)
    ] + [tuple(R[r][c] - (F(right) if r == c else F.zero) for c in range(A.dim)) for r in range(A.dim)]
    return Subspace(F, A.dim, kernel(rows, A.dim, F))


def find_canonical_basis(A: Algebra, settings: OkuboSettings | None = None) -> CanonicalBasisWitness:
    """A canonical basis of a split Cayley algebra: isotropic idempotent, Peirce space, rescaling."""
    settings = settings or get_settings()
    if A.tag is not Tag.HURWITZ or A.dim != 8:
        raise PreconditionError(f"canonical bases live in Cayley algebras, got {A!r}")
    try:
        x = _isotropic_vector(A, settings)
    except SearchExhaustedError as exc:
        raise SearchExhaustedError(f"{A!r}: norm looks anisotropic, no canonical basis ({exc})", exc.tried) from exc
    F = A.field
    row = tuple(A.polar(x, A.basis(i)) for i in range(A.dim))
    y = solve([row], [F.one], F)
    if y is None:
        raise ClassificationError(f"isotropic vector {A.describe(x)} lies in the radical of the norm")
    e1 = A.mul(x, A.conj(y))  # n(e1) = 0, n(e1, 1) = 1: an idempotent
    e2 = vsub(A.one, e1)
    U_space = peirce_space(A, e1, 1, 0)
    if U_space.dim != 3:
        raise ClassificationError(f"Peirce space of {A.describe(e1)} has dimension {U_space.dim}, expected 3")
    u1, u2, u3 = U_space.basis
    lam = A.polar(u1, A.mul(u2, u3))
    return complete_canonical_basis(A, e1, e2, u1, u2, vscale(1 / lam, u3))


# ---------------------------------------------------------------------------
# Subspaces attached to symmetric composition algebras
# ---------------------------------------------------------------------------


def commutative_center(S: Algebra) -> Subspace:
    """{x : x*y = y*x for every y}."""
    F = S.field
    rows = []
    for j in range(S.dim):
        for k in range(S.dim):
            rows.append(tuple(S.constants[i][j][k] - S.constants[j][i][k] for i in range(S.dim)))
    return Subspace(F, S.dim, kernel(rows, S.dim, F))


def is_para_unit(S: Algebra, e: Coords) -> bool:
    """e*e = e and e*x = x*e = n(x,e)e − x on the basis."""
    e = tuple(e)
    if is_zero(e) or S.mul(e, e) != e:
        return False
    for i in range(S.dim):
        b = S.basis(i)
        target = vsub(vscale(S.polar(b, e), e), b)
        if S.mul(e, b) != target or S.mul(b, e) != target:
            return False
    return True


def find_para_unit(S: Algebra) -> Vector | None:
    """The para-unit, searched in the commutative center (a para-unit commutes with everything)."""
    if S.para_unit is not None and is_para_unit(S, S.para_unit):
        return S.para_unit
    K = commutative_center(S)
    log.debug("commutative center of %r has dimension %d", S, K.dim)
    if K.dim == 0:
        return None
    if K.dim == 1:
        k = K.basis[0]
        kk = S.mul(k, k)
        coords = Subspace(S.field, S.dim, [k]).coordinates(kk)
        if coords is None or not coords[0]:
            return None
        e = vscale(1 / coords[0], k)
        return e if is_para_unit(S, e) else None
    if not S.field.is_finite:
        raise InfeasibleError(f"para-unit search in a {K.dim}-dimensional commutative center over {S.field.spec}")
    for e in K.elements():
        if is_para_unit(S, e):
            return e
    return None


def radical(A: Algebra, B: Subspace) -> Subspace:
    """B ∩ B^⊥ for the polar form."""
    return B.intersect(B.orthogonal(A.form.gram))


def span_algebra(A: Algebra, vectors: Sequence[Coords]) -> Subspace:
    """The subalgebra generated by `vectors`."""
    space = Subspace(A.field, A.dim, list(vectors))
    while True:
        products = [A.mul(x, y) for x in space.basis for y in space.basis]
        bigger = Subspace(A.field, A.dim, list(space.basis) + products)
        if bigger.dim == space.dim:
            return space
        space = bigger


def is_subalgebra(A: Algebra, B: Subspace) -> bool:
    return all(B.contains(A.mul(x, y)) for x in B.basis for y in B.basis)


def idempotent_check(S: Algebra, e: Coords) -> Vector:
    e = tuple(e)
    if is_zero(e) or S.mul(e, e) != e:
        raise NotIdempotentError(f"{S.describe(e)} is not an idempotent of {S!r}")
    return e
