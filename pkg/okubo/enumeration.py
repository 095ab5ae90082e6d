"""Vectorised enumeration over small finite fields.

Field elements are replaced by their indices 0..q-1 and arithmetic by numpy lookup tables, so products,
norms and polar forms of whole batches of vectors are computed with fancy indexing. Batches are walked in
lexicographic coordinate order (first coordinate most significant) and results keep that order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING

import numpy as np

from okubo.errors import ClassificationError, InfeasibleError, PreconditionError
from okubo.fields import FieldElement, FiniteField
from okubo.linalg import Subspace, Vector, combination, diagonalize_symmetric, kernel, solve, vscale

if TYPE_CHECKING:
    from okubo.compalg import Algebra

log = logging.getLogger(__name__)

TABLE_LIMIT = 1024  # largest q with full q×q tables
CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class FieldTables:
    field: FiniteField
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray

    @property
    def q(self) -> int:
        return self.field.order

    def encode(self, v: Vector) -> np.ndarray:
        return np.array([self.field.index(c) for c in v], dtype=np.int32)

    def decode(self, row: np.ndarray) -> Vector:
        return tuple(self.field.from_index(int(i)) for i in row)

    def index(self, x: FieldElement | int) -> int:
        return self.field.index(self.field(x))


@lru_cache(maxsize=16)
def field_tables(F: FiniteField) -> FieldTables:
    q = F.order
    if q is None or q > TABLE_LIMIT:
        raise InfeasibleError(f"{F.spec} is too large for lookup tables (limit {TABLE_LIMIT})")
    elems = [F.from_index(i) for i in range(q)]
    add = np.array([[F.index(x + y) for y in elems] for x in elems], dtype=np.int32)
    mul = np.array([[F.index(x * y) for y in elems] for x in elems], dtype=np.int32)
    neg = np.array([F.index(-x) for x in elems], dtype=np.int32)
    log.debug("built lookup tables for %s", F.spec)
    return FieldTables(F, add, mul, neg)


@dataclass(frozen=True, eq=False)
class AlgebraTables:
    """Structure constants and norm of an algebra in index form."""

    algebra: Algebra
    tables: FieldTables

    @cached_property
    def products(self) -> list[tuple[int, int, list[tuple[int, int]]]]:
        out = []
        for i, row in enumerate(self.algebra.constants):
            for j, cell in enumerate(row):
                terms = [(k, self.tables.index(c)) for k, c in enumerate(cell) if c]
                if terms:
                    out.append((i, j, terms))
        return out

    @cached_property
    def norm_terms(self) -> tuple[list[tuple[int, int]], list[tuple[int, int, int]]]:
        form = self.algebra.form
        diag = [(i, self.tables.index(c)) for i, c in enumerate(form.diagonal) if c]
        cross = [
            (i, j, self.tables.index(form.gram[i][j]))
            for i in range(form.dim)
            for j in range(i + 1, form.dim)
            if form.gram[i][j]
        ]
        return diag, cross

    def product(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        T = self.tables
        out = np.zeros((X.shape[0], self.algebra.dim), dtype=np.int32)
        for i, j, terms in self.products:
            p = T.mul[X[:, i], Y[:, j]]
            for k, c in terms:
                out[:, k] = T.add[out[:, k], T.mul[p, c]]
        return out

    def norm(self, X: np.ndarray) -> np.ndarray:
        T = self.tables
        diag, cross = self.norm_terms
        total = np.zeros(X.shape[0], dtype=np.int32)
        for i, c in diag:
            total = T.add[total, T.mul[c, T.mul[X[:, i], X[:, i]]]]
        for i, j, c in cross:
            total = T.add[total, T.mul[c, T.mul[X[:, i], X[:, j]]]]
        return total

    def polar(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        T = self.tables
        gram = self.algebra.form.gram
        total = np.zeros(X.shape[0], dtype=np.int32)
        for i, row in enumerate(gram):
            for j, c in enumerate(row):
                if c:
                    total = T.add[total, T.mul[T.index(c), T.mul[X[:, i], Y[:, j]]]]
        return total


def algebra_tables(A: Algebra) -> AlgebraTables:
    if not A.field.is_finite:
        raise InfeasibleError(f"enumeration needs a finite field, {A.field.spec} is infinite")
    return AlgebraTables(A, field_tables(A.field))


def all_vectors(q: int, d: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows of F^d with indices start..stop-1 in lexicographic order."""
    stop = q**d if stop is None else stop
    digits = np.unravel_index(np.arange(start, stop, dtype=np.int64), (q,) * d)
    return np.stack(digits, axis=1).astype(np.int32)


# ---------------------------------------------------------------------------
# Composition checks
# ---------------------------------------------------------------------------


def _first_failure(AT: AlgebraTables, X: np.ndarray, Y: np.ndarray) -> tuple[Vector, Vector] | None:
    T = AT.tables
    lhs = AT.norm(AT.product(X, Y))
    rhs = T.mul[AT.norm(X), AT.norm(Y)]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        return T.decode(X[bad[0]]), T.decode(Y[bad[0]])
    return None


def exhaustive_composition(A: Algebra) -> tuple[Vector, Vector] | None:
    """First pair (x, y) in lexicographic order with n(x·y) ≠ n(x)n(y), None if there is none."""
    AT = algebra_tables(A)
    q, d = AT.tables.q, A.dim
    V = all_vectors(q, d)
    n = V.shape[0]
    rows = max(1, CHUNK // n)
    for a in range(0, n, rows):
        b = min(n, a + rows)
        X = np.repeat(V[a:b], n, axis=0)
        Y = np.tile(V, (b - a, 1))
        if (pair := _first_failure(AT, X, Y)) is not None:
            return pair
    return None


def random_composition(A: Algebra, count: int, seed: int) -> tuple[Vector, Vector] | None:
    AT = algebra_tables(A)
    rng = np.random.default_rng(seed)
    q, d = AT.tables.q, A.dim
    done = 0
    while done < count:
        size = min(CHUNK, count - done)
        X = rng.integers(0, q, size=(size, d), dtype=np.int32)
        Y = rng.integers(0, q, size=(size, d), dtype=np.int32)
        if (pair := _first_failure(AT, X, Y)) is not None:
            return pair
        done += size
    return None


# ---------------------------------------------------------------------------
# Idempotents
# ---------------------------------------------------------------------------


def brute_force_idempotents(A: Algebra) -> list[Vector]:
    """Every e ≠ 0 with e·e = e, scanning F^d in lexicographic order."""
    AT = algebra_tables(A)
    q, d = AT.tables.q, A.dim
    total = q**d
    found: list[Vector] = []
    for start in range(0, total, CHUNK):
        X = all_vectors(q, d, start, min(total, start + CHUNK))
        mask = (AT.product(X, X) == X).all(axis=1) & X.any(axis=1)
        found += [AT.tables.decode(row) for row in X[mask]]
    log.debug("brute force over %d vectors of %r found %d idempotents", total, A, len(found))
    return found


def hyperplane_idempotents(S: Algebra, e: Vector) -> list[Vector]:
    """Idempotents w of a para-Hurwitz algebra with para-unit e on the hyperplane n(e, w) = −1."""
    AT = algebra_tables(S)
    T = AT.tables
    F = S.field
    row = tuple(S.polar(e, S.basis(i)) for i in range(S.dim))
    w0 = solve([row], [-F.one], F)
    if w0 is None:
        return []

    directions = kernel([row], S.dim, F)
    origin = T.encode(w0)
    B = np.array([T.encode(b) for b in directions], dtype=np.int32)
    q, m = T.q, len(directions)
    found: list[Vector] = []
    for start in range(0, q**m, CHUNK):
        C = all_vectors(q, m, start, min(q**m, start + CHUNK))
        W = np.tile(origin, (C.shape[0], 1))
        for t in range(m):
            W = T.add[W, T.mul[C[:, t : t + 1], B[t][None, :]]]
        mask = (AT.product(W, W) == W).all(axis=1)
        found += [T.decode(r) for r in W[mask]]
    return sorted(found, key=lambda v: tuple(F.index(c) for c in v))


def count_quadric_points(F: FiniteField, coeffs: list[FieldElement], target: FieldElement) -> int:
    """#{z ∈ F^m : Σ coeffsᵢ zᵢ² = target}, by convolving the value distributions of each term."""
    T = field_tables(F)
    q = T.q
    squares = T.mul[np.arange(q), np.arange(q)]
    dp = np.zeros(q, dtype=np.int64)
    dp[0] = 1
    for a in coeffs:
        cnt = np.bincount(T.mul[T.index(a), squares], minlength=q).astype(np.int64)
        new = np.zeros(q, dtype=np.int64)
        for v in np.flatnonzero(cnt):
            np.add.at(new, T.add[:, v], dp * cnt[v])
        dp = new
    return int(dp[T.index(target)])


def _para_quadric(S: Algebra, e: Vector) -> tuple[list[Vector], list[FieldElement], FieldElement]:
    """Orthogonal directions of e^⊥, the diagonal coefficients of n on them, and the target 1 − n(e)/4."""
    F = S.field
    if F.characteristic == 2:
        raise PreconditionError("the closed-form para-idempotent quadric needs odd characteristic")
    perp = Subspace(F, S.dim, [e]).orthogonal(S.form.gram).basis
    gram = tuple(tuple(S.polar(x, y) for y in perp) for x in perp)
    basis, values = diagonalize_symmetric(gram, F)
    half = F.one / 2
    directions = [combination(b, perp) for b in basis]
    return directions, [v * half for v in values], 1 - S.norm(e) / 4


def count_para_quadric(S: Algebra, e: Vector) -> int:
    """#{w : n(e,w) = −1, n(w) = 1}: with w = −½e + z, z ⊥ e, this is #{z ⊥ e : n(z) = 1 − n(e)/4}."""
    _, coeffs, target = _para_quadric(S, e)
    count = count_quadric_points(S.field, coeffs, target)
    log.debug("quadric n(z) = %s on e^⊥ of %r has %d points", target, S, count)
    return count


def quadric_idempotents(S: Algebra, e: Vector, sample: int = 4096) -> list[Vector]:
    """The points w = −½e + z of the quadric counted by `count_para_quadric`, listed explicitly.

    All but the last orthogonal coordinate of z are enumerated and the last one is read off a table of
    square roots, so only q^(d−2) candidates are visited. The first `sample` points are checked to be
    idempotent.
    """
    F = S.field
    directions, coeffs, target = _para_quadric(S, e)
    last = next((i for i in reversed(range(len(coeffs))) if coeffs[i]), None)
    if last is None:
        raise ClassificationError(f"the norm of {S!r} vanishes on e^⊥")
    perm = [i for i in range(len(coeffs)) if i != last] + [last]
    directions, coeffs = [directions[i] for i in perm], [coeffs[i] for i in perm]

    AT = algebra_tables(S)
    T = AT.tables
    q, m = T.q, len(directions)
    squares = T.mul[T.index(coeffs[-1]), T.mul[np.arange(q), np.arange(q)]]
    roots = np.full((2, q), -1, dtype=np.int32)  # roots[:, v]: the z with c·z² = v
    for z, v in enumerate(squares):
        roots[0 if roots[0, v] < 0 else 1, v] = z
    head = [T.index(c) for c in coeffs[:-1]]
    B = np.array([T.encode(b) for b in directions], dtype=np.int32)
    origin = T.encode(vscale(-F.one / 2, e))
    goal = T.index(target)

    found: list[Vector] = []
    for start in range(0, q ** (m - 1), CHUNK):
        if m > 1:
            Z = all_vectors(q, m - 1, start, min(q ** (m - 1), start + CHUNK))
        else:
            Z = np.zeros((1, 0), dtype=np.int32)
        partial = np.zeros(Z.shape[0], dtype=np.int32)
        for t, c in enumerate(head):
            partial = T.add[partial, T.mul[c, T.mul[Z[:, t], Z[:, t]]]]
        residual = T.add[goal, T.neg[partial]]
        for root in roots:
            z_last = root[residual]
            hit = z_last >= 0
            full = np.concatenate([Z[hit], z_last[hit][:, None]], axis=1)
            W = np.tile(origin, (full.shape[0], 1))
            for t in range(m):
                W = T.add[W, T.mul[full[:, t : t + 1], B[t][None, :]]]
            found += [T.decode(r) for r in W]

    if found:
        X = np.array([T.encode(w) for w in found[:sample]], dtype=np.int32)
        if not (AT.product(X, X) == X).all():
            raise ClassificationError(f"a point of the para-idempotent quadric of {S!r} is not idempotent")
    log.debug("listed %d points of the para-idempotent quadric of %r", len(found), S)
    return found
