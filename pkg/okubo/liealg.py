"""Derivations of an algebra and the Chevalley basis of type G2.

The Chevalley basis is computed once as integer matrices in the canonical basis (numpy int64), so the
divided powers x_α²/2 are exact integers, and only then reduced into the target field and transported
through the algebra's canonical-basis witness.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cache, cached_property

import numpy as np

from okubo.compalg import E1, E2, U, V, ZORN_TABLE, Algebra
from okubo.errors import ClassificationError, ParseError, PreconditionError
from okubo.fields import Field, FieldElement
from okubo.linalg import (
    Matrix,
    Subspace,
    Vector,
    combination,
    commutator,
    dot,
    flatten,
    identity,
    inverse,
    kernel,
    mat_add,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_vec,
    unflatten,
)
from okubo.maps import Automorphism, LinearMap

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

_EPS = {1: (1, 0), 2: (0, 1), 3: (-1, -1)}  # ε₃ = −ε₁ − ε₂


@dataclass(frozen=True, order=True)
class Root:
    """m₁ε₁ + m₂ε₂."""

    m1: int
    m2: int

    def weight(self) -> tuple[int, int]:
        """(α(h₁), α(h₂)) for h₁ = diag(2, −1, −1), h₂ = diag(−1, 1, 0) on u₁, u₂, u₃."""
        return 2 * self.m1 - self.m2, self.m2 - self.m1

    @property
    def is_long(self) -> bool:
        return self in LONG_ROOTS

    @property
    def label(self) -> str:
        return ROOT_LABELS[self]

    def __str__(self) -> str:
        return self.label

    @classmethod
    def parse(cls, text: str) -> Root:
        key = text.replace(" ", "").replace("ε", "e")
        for root, label in ROOT_LABELS.items():
            if label == key:
                return root
        raise ParseError(f"unknown root {text!r}; expected one of {', '.join(ROOT_LABELS.values())}")


def _root_labels() -> dict[Root, str]:
    labels = {}
    for i, (a, b) in _EPS.items():
        labels[Root(a, b)] = f"e{i}"
        labels[Root(-a, -b)] = f"-e{i}"
    for i, (a, b) in _EPS.items():
        for j, (c, d) in _EPS.items():
            if i != j:
                labels[Root(a - c, b - d)] = f"e{i}-e{j}"
    return labels


ROOT_LABELS = _root_labels()
ROOTS = tuple(ROOT_LABELS)
LONG_ROOTS = frozenset(r for r, label in ROOT_LABELS.items() if label.count("e") == 2)


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


def is_derivation(A: Algebra, M: Matrix) -> bool:
    for i in range(A.dim):
        x = A.basis(i)
        Mx = mat_vec(M, x)
        for j in range(A.dim):
            y = A.basis(j)
            lhs = mat_vec(M, A.constants[i][j])
            rhs = tuple(a + b for a, b in zip(A.mul(Mx, y), A.mul(x, mat_vec(M, y))))
            if lhs != rhs:
                return False
    return True


def _leibniz_rows(A: Algebra) -> Iterator[dict[int, FieldElement]]:
    """Equations on D[k][j] (unknown k·d + j) for D(bᵢbⱼ) = D(bᵢ)bⱼ + bᵢD(bⱼ), component k."""
    d = A.dim
    c = A.constants
    for i in range(d):
        for j in range(d):
            for k in range(d):
                row: dict[int, FieldElement] = {}
                for m, coeff in enumerate(c[i][j]):
                    if coeff:
                        row[k * d + m] = row.get(k * d + m, A.field.zero) + coeff
                for s in range(d):
                    if c[s][j][k]:
                        row[s * d + i] = row.get(s * d + i, A.field.zero) - c[s][j][k]
                    if c[i][s][k]:
                        row[s * d + j] = row.get(s * d + j, A.field.zero) - c[i][s][k]
                row = {key: v for key, v in row.items() if v}
                if row:
                    yield row


@dataclass(frozen=True, eq=False)
class DerivationAlgebra:
    algebra: Algebra
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def space(self) -> Subspace:
        """The basis flattened into F^{d²}."""
        return Subspace(self.algebra.field, self.algebra.dim**2, [flatten(M) for M in self.basis])

    def coordinates(self, M: Matrix) -> Vector | None:
        """Coefficients of M in `basis`, None if M is not a derivation."""
        return self.space.coordinates(flatten(M))

    def contains(self, M: Matrix) -> bool:
        return self.space.contains(flatten(M))

    def bracket(self, X: Matrix, Y: Matrix) -> Matrix:
        return commutator(X, Y)

    def subspace(self, matrices: Sequence[Matrix]) -> Subspace:
        return Subspace(self.algebra.field, self.algebra.dim**2, [flatten(M) for M in matrices])

    def matrices(self, space: Subspace) -> list[Matrix]:
        return [unflatten(v, self.algebra.dim) for v in space.basis]

    def is_ideal(self, ideal: Subspace) -> bool:
        d = self.algebra.dim
        for v in ideal.basis:
            X = unflatten(v, d)
            for Y in self.basis:
                if not ideal.contains(flatten(commutator(X, Y))):
                    return False
        return True


def derivations(A: Algebra) -> DerivationAlgebra:
    """Kernel of the Leibniz system: d² unknowns, d³ equations."""
    if A.dim > 8:
        raise PreconditionError(f"derivations are computed for dimension ≤ 8, got {A.dim}")
    d = A.dim
    rows = list(_leibniz_rows(A))
    space = Subspace(A.field, d * d, kernel(rows, d * d, A.field))
    log.debug("Der(%r): %d equations, dimension %d", A, len(rows), space.dim)
    return DerivationAlgebra(A, tuple(unflatten(v, d) for v in space.basis))


def inner_derivations_c(A: Algebra) -> Subspace:
    """ad_C = {L_x − R_x : x ∈ C} as a subspace of F^{d²}."""
    ads = [mat_sub(A.left(A.basis(i)), A.right(A.basis(i))) for i in range(A.dim)]
    return Subspace(A.field, A.dim**2, [flatten(M) for M in ads])


# ---------------------------------------------------------------------------
# Chevalley basis
# ---------------------------------------------------------------------------

IntMatrix = np.ndarray


@cache
def _zorn_operators() -> tuple[tuple[IntMatrix, ...], tuple[IntMatrix, ...]]:
    """Integer matrices of L_{bᵢ} and R_{bᵢ} in the canonical basis."""
    left = [np.zeros((8, 8), dtype=np.int64) for _ in range(8)]
    right = [np.zeros((8, 8), dtype=np.int64) for _ in range(8)]
    for (i, j), (k, sign) in ZORN_TABLE.items():
        left[i][k, j] = sign
        right[j][k, i] = sign
    return tuple(left), tuple(right)


def _bracket(X: IntMatrix, Y: IntMatrix) -> IntMatrix:
    return X @ Y - Y @ X


def _d(x: int, y: int) -> IntMatrix:
    """d_{x,y} = [L_x, L_y] + [L_x, R_y] + [R_x, R_y]."""
    L, R = _zorn_operators()
    return _bracket(L[x], L[y]) + _bracket(L[x], R[y]) + _bracket(R[x], R[y])


@cache
def integer_chevalley() -> tuple[dict[Root, tuple[IntMatrix, IntMatrix]], IntMatrix, IntMatrix]:
    """x_α with its divided square x_α²/2, and h₁, h₂, all over the integers."""
    L, R = _zorn_operators()
    eps = {1: Root(*_EPS[1]), 2: Root(*_EPS[2]), 3: Root(*_EPS[3])}
    elements: dict[Root, IntMatrix] = {}
    for i in range(3):
        a = eps[i + 1]
        elements[a] = _d(E1, U[i])
        elements[Root(-a.m1, -a.m2)] = -_d(E2, V[i])
        for j in range(3):
            if i != j:
                b = eps[j + 1]
                elements[Root(a.m1 - b.m1, a.m2 - b.m2)] = _bracket(L[U[i]], R[V[j]])
    out = {}
    for root, X in elements.items():
        square = X @ X
        if (square % 2).any():
            raise ClassificationError(f"x_{root}² is not divisible by 2 on the canonical lattice")
        out[root] = (X, square // 2)
    h1 = np.diag([0, 0, 2, -1, -1, -2, 1, 1]).astype(np.int64)
    h2 = np.diag([0, 0, -1, 1, 0, 1, -1, 0]).astype(np.int64)
    return out, h1, h2


def _reduce(F: Field, M: IntMatrix) -> Matrix:
    return tuple(tuple(F(int(c)) for c in row) for row in M)


@dataclass(frozen=True, eq=False)
class ChevalleyBasis:
    algebra: Algebra
    x: dict[Root, Matrix]
    divided: dict[Root, Matrix]
    h1: Matrix
    h2: Matrix
    weights: dict[Root, tuple[FieldElement, FieldElement]] = field(default_factory=dict)

    def elements(self) -> list[Matrix]:
        return [self.x[r] for r in ROOTS] + [self.h1, self.h2]


def chevalley_basis(A: Algebra) -> ChevalleyBasis:
    """x_{εᵢ−εⱼ} = [L_{uᵢ}, R_{vⱼ}], x_{εᵢ} = d_{e₁,uᵢ}, x_{−εᵢ} = −d_{e₂,vᵢ}, in A's coordinates."""
    if A.witness is None:
        raise PreconditionError(f"{A!r} carries no canonical basis witness")
    F = A.field
    W = A.witness.matrix()
    W_inv = inverse(W)

    def transport(M: IntMatrix) -> Matrix:
        return mat_mul(W, mat_mul(_reduce(F, M), W_inv))

    integral, h1_int, h2_int = integer_chevalley()
    x = {r: transport(X) for r, (X, _) in integral.items()}
    divided = {r: transport(X2) for r, (_, X2) in integral.items()}
    h1, h2 = transport(h1_int), transport(h2_int)
    weights = {}
    for root, X in x.items():
        w1, w2 = (F(c) for c in root.weight())
        if not is_derivation(A, X):
            raise ClassificationError(f"x_{root} is not a derivation of {A!r}")
        if commutator(h1, X) != mat_scale(w1, X) or commutator(h2, X) != mat_scale(w2, X):
            raise ClassificationError(f"x_{root} is not a weight vector of weight {root.weight()}")
        weights[root] = (w1, w2)
    log.debug("Chevalley basis of %r verified", A)
    return ChevalleyBasis(A, x, divided, h1, h2, weights)


def exp_root(CB: ChevalleyBasis, alpha: Root | str, t: FieldElement | int) -> Automorphism:
    """id + t·x_α + t²·x_α^{(2)}."""
    alpha = Root.parse(alpha) if isinstance(alpha, str) else alpha
    A = CB.algebra
    t = A.field(t)
    M = mat_add(identity(A.field, A.dim), mat_add(mat_scale(t, CB.x[alpha]), mat_scale(t * t, CB.divided[alpha])))
    return Automorphism(A, M)


def random_automorphism(CB: ChevalleyBasis, rng: random.Random, length: int = 6) -> Automorphism:
    """A product of `length` root exponentials with random roots and parameters."""
    A = CB.algebra
    M = identity(A.field, A.dim)
    for _ in range(length):
        alpha = rng.choice(ROOTS)
        M = mat_mul(exp_root(CB, alpha, A.field.random_element(rng)).matrix, M)
    return Automorphism(A, M)


# ---------------------------------------------------------------------------
# Root decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootDecomposition:
    """Generalized weight spaces of Der under ad h₁, ad h₂, keyed by root label or "0"."""

    spaces: dict[str, Subspace]
    merged: tuple[tuple[str, ...], ...]  # labels whose weights coincide in the field

    @property
    def cartan(self) -> Subspace:
        return self.spaces["0"]

    def shape(self) -> dict[str, int]:
        return {label: space.dim for label, space in self.spaces.items()}


def _ad_matrix(D: DerivationAlgebra, h: Matrix) -> Matrix:
    cols = []
    for B in D.basis:
        coords = D.coordinates(commutator(h, B))
        if coords is None:
            raise PreconditionError("ad h does not preserve the derivation algebra")
        cols.append(coords)
    return tuple(tuple(col[r] for col in cols) for r in range(D.dim))


def root_decomposition(D: DerivationAlgebra, h1: Matrix, h2: Matrix) -> RootDecomposition:
    """kernel((ad h₁ − λ₁)^m) ∩ kernel((ad h₂ − λ₂)^m) for the zero weight and the twelve root weights."""
    F = D.algebra.field
    m = D.dim
    H1, H2 = _ad_matrix(D, h1), _ad_matrix(D, h2)
    if mat_mul(H1, H2) != mat_mul(H2, H1):
        raise ClassificationError("ad h₁ and ad h₂ do not commute")
    one = identity(F, m)
    candidates = {"0": (F.zero, F.zero)} | {root.label: tuple(F(c) for c in root.weight()) for root in ROOTS}

    def generalized(H: Matrix, lam: FieldElement) -> Subspace:
        N = mat_pow(mat_sub(H, mat_scale(lam, one)), m)
        return Subspace(F, m, kernel(N, m, F))

    spaces: dict[str, Subspace] = {}
    by_weight: dict[tuple[FieldElement, FieldElement], list[str]] = {}
    for label, (l1, l2) in candidates.items():
        by_weight.setdefault((l1, l2), []).append(label)
    for (l1, l2), labels in by_weight.items():
        coords = generalized(H1, l1).intersect(generalized(H2, l2))
        space = D.subspace([_combine(c, D.basis) for c in coords.basis])
        for label in labels:
            spaces[label] = space
    merged = tuple(tuple(labels) for labels in by_weight.values() if len(labels) > 1)
    if merged:
        log.info("weights merge in %s: %s", F.spec, merged)
    return RootDecomposition(spaces, merged)


def _combine(coeffs: Vector, matrices: Sequence[Matrix]) -> Matrix:
    return unflatten(combination(coeffs, [flatten(M) for M in matrices]), len(matrices[0]))


# ---------------------------------------------------------------------------
# Centralizers and stabilizers in Der
# ---------------------------------------------------------------------------


def _kernel_in(D: DerivationAlgebra, images: Sequence[Vector]) -> Subspace:
    """{Σ cᵢDᵢ : Σ cᵢ imagesᵢ = 0} as a subspace of F^{d²}."""
    F = D.algebra.field
    if not D.basis:
        return D.subspace([])
    rows = [[img[r] for img in images] for r in range(len(images[0]))]
    coords = kernel(rows, D.dim, F)
    return D.subspace([_combine(c, D.basis) for c in coords])


def lie_centralizer(D: DerivationAlgebra, phi: LinearMap | Matrix) -> Subspace:
    """{δ ∈ Der : δφ = φδ}."""
    P = phi.matrix if isinstance(phi, LinearMap) else phi
    return _kernel_in(D, [flatten(mat_sub(mat_mul(B, P), mat_mul(P, B))) for B in D.basis])


def lie_stabilizer(D: DerivationAlgebra, target: Vector | Subspace) -> Subspace:
    """{δ : δ(v) = 0} for a vector, {δ : δ(V) ⊆ V} for a subspace."""
    if not isinstance(target, Subspace):
        return _kernel_in(D, [mat_vec(B, target) for B in D.basis])
    functionals = target.annihilator().basis
    images = [
        tuple(dot(f, mat_vec(B, b)) for f in functionals for b in target.basis) for B in D.basis
    ]
    return _kernel_in(D, images)
