"""Exact linear algebra over any `Field`: vectors, matrices, echelon forms, kernels and subspaces.

Vectors are tuples of FieldElement. Matrices are tuples of rows; for linear maps on an algebra the
column j holds the coordinates of the image of basis vector j.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator, Mapping, Sequence

from okubo.errors import PreconditionError, SearchExhaustedError
from okubo.fields import Field, FieldElement

log = logging.getLogger(__name__)

Vector = tuple[FieldElement, ...]
Matrix = tuple[Vector, ...]
SparseRow = dict[int, FieldElement]
Rows = Sequence[Sequence[FieldElement] | Mapping[int, FieldElement]]


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


def zero_vector(F: Field, n: int) -> Vector:
    return (F.zero,) * n


def unit_vector(F: Field, n: int, i: int) -> Vector:
    return tuple(F.one if k == i else F.zero for k in range(n))


def vadd(x: Sequence[FieldElement], y: Sequence[FieldElement]) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vsub(x: Sequence[FieldElement], y: Sequence[FieldElement]) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vneg(x: Sequence[FieldElement]) -> Vector:
    return tuple(-a for a in x)


def vscale(s: FieldElement | int, x: Sequence[FieldElement]) -> Vector:
    return tuple(s * a for a in x)


def dot(x: Sequence[FieldElement], y: Sequence[FieldElement]) -> FieldElement:
    total = x[0].field.zero
    for a, b in zip(x, y, strict=True):
        if a and b:
            total = total + a * b
    return total


def is_zero(x: Sequence[FieldElement]) -> bool:
    return not any(x)


def combination(coeffs: Sequence[FieldElement], vectors: Sequence[Sequence[FieldElement]]) -> Vector:
    """Σ coeffs[i]·vectors[i]; vectors must be nonempty."""
    acc = [v.field.zero for v in vectors[0]]
    for c, v in zip(coeffs, vectors, strict=True):
        if c:
            for k, a in enumerate(v):
                if a:
                    acc[k] = acc[k] + c * a
    return tuple(acc)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def identity(F: Field, n: int) -> Matrix:
    return tuple(unit_vector(F, n, i) for i in range(n))


def zero_matrix(F: Field, n: int, m: int | None = None) -> Matrix:
    return tuple(zero_vector(F, n if m is None else m) for _ in range(n))


def from_columns(columns: Sequence[Sequence[FieldElement]]) -> Matrix:
    return tuple(zip(*columns, strict=True))


def columns(M: Matrix) -> tuple[Vector, ...]:
    return tuple(zip(*M, strict=True))


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M, strict=True))


def mat_vec(M: Matrix, v: Sequence[FieldElement]) -> Vector:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = columns(B)
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vadd(r, s) for r, s in zip(A, B, strict=True))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vsub(r, s) for r, s in zip(A, B, strict=True))


def mat_scale(s: FieldElement | int, A: Matrix) -> Matrix:
    return tuple(vscale(s, r) for r in A)


def mat_pow(A: Matrix, k: int) -> Matrix:
    F = A[0][0].field
    result = identity(F, len(A))
    for _ in range(k):
        result = mat_mul(result, A)
    return result


def is_zero_matrix(A: Matrix) -> bool:
    return all(is_zero(r) for r in A)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def flatten(A: Matrix) -> Vector:
    return tuple(itertools.chain.from_iterable(A))


def unflatten(v: Sequence[FieldElement], n: int) -> Matrix:
    return tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n))


# ---------------------------------------------------------------------------
# Row echelon form on sparse rows
# ---------------------------------------------------------------------------


def _sparse(row: Sequence[FieldElement] | Mapping[int, FieldElement]) -> SparseRow:
    if isinstance(row, Mapping):
        return {k: v for k, v in row.items() if v}
    return {k: v for k, v in enumerate(row) if v}


def echelon(rows: Rows, ncols: int) -> tuple[list[SparseRow], list[int]]:
    """Reduced row echelon form. Returns the nonzero rows (pivot entry 1) and their pivot columns."""
    work = [r for r in (_sparse(row) for row in rows) if r]
    reduced: list[SparseRow] = []
    pivots: list[int] = []
    for col in range(ncols):
        candidates = [i for i, r in enumerate(work) if col in r]
        if not candidates:
            continue
        # sparsest pivot row keeps fill-in low on the Leibniz systems
        best = min(candidates, key=lambda i: len(work[i]))
        prow = work.pop(best)
        inv = prow[col].inverse()
        prow = {k: v * inv for k, v in prow.items()}
        for bucket in (work, reduced):
            for r in bucket:
                f = r.get(col)
                if f is None:
                    continue
                for k, v in prow.items():
                    nv = r[k] - f * v if k in r else -(f * v)
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        work = [r for r in work if r]
        reduced.append(prow)
        pivots.append(col)
        if not work:
            break
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[i] for i in order], [pivots[i] for i in order]


def kernel(rows: Rows, ncols: int, F: Field) -> list[Vector]:
    """Basis of {x : row·x = 0 for every row}."""
    reduced, pivots = echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for r, p in zip(reduced, pivots):
            if free in r:
                v[p] = -r[free]
        basis.append(tuple(v))
    log.debug("kernel: %d equations, %d unknowns, dimension %d", len(rows), ncols, len(basis))
    return basis


def rank(rows: Sequence[Sequence[FieldElement]]) -> int:
    if not rows:
        return 0
    return len(echelon(rows, len(rows[0]))[1])


def solve(A: Sequence[Sequence[FieldElement]], b: Sequence[FieldElement], F: Field) -> Vector | None:
    """One solution of A·x = b (free variables set to zero), None if the system is inconsistent."""
    ncols = len(A[0])
    augmented = [list(row) + [rhs] for row, rhs in zip(A, b, strict=True)]
    reduced, pivots = echelon(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for r, p in zip(reduced, pivots):
        x[p] = r.get(ncols, F.zero)
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    F = M[0][0].field
    augmented = [list(row) + list(unit_vector(F, n, i)) for i, row in enumerate(M)]
    reduced, pivots = echelon(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise PreconditionError("matrix is singular")
    return tuple(tuple(r.get(n + j, F.zero) for j in range(n)) for r in reduced[:n])


def is_invertible(M: Matrix) -> bool:
    return rank(M) == len(M)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of F^n stored by its reduced echelon basis, so equality is structural."""

    def __init__(self, field: Field, ambient: int, vectors: Sequence[Sequence[FieldElement]] = ()) -> None:
        self.field = field
        self.ambient = ambient
        reduced, pivots = echelon(list(vectors), ambient)
        self.pivots = tuple(pivots)
        self.basis: tuple[Vector, ...] = tuple(
            tuple(r.get(k, field.zero) for k in range(ambient)) for r in reduced
        )

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, identity(field, ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self) -> int:
        return hash((self.field.spec, self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.field.spec}^{self.ambient})"

    def coordinates(self, v: Sequence[FieldElement]) -> Vector | None:
        """Coefficients of v in `basis`, None if v is outside the subspace."""
        coeffs = tuple(v[p] for p in self.pivots)
        if not self.basis:
            return () if is_zero(v) else None
        return coeffs if combination(coeffs, self.basis) == tuple(v) else None

    def contains(self, v: Sequence[FieldElement]) -> bool:
        return self.coordinates(v) is not None

    __contains__ = contains

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other: Subspace) -> Subspace:
        if not self.basis or not other.basis:
            return Subspace(self.field, self.ambient)
        # x = Σ a_i s_i = Σ b_j o_j  ⇔  (a, b) in the kernel of [S | -O]
        n, m = self.dim, other.dim
        rows = [
            [self.basis[i][k] for i in range(n)] + [-other.basis[j][k] for j in range(m)]
            for k in range(self.ambient)
        ]
        sols = kernel(rows, n + m, self.field)
        return Subspace(self.field, self.ambient, [combination(s[:n], self.basis) for s in sols])

    def annihilator(self) -> Subspace:
        """Coordinate functionals vanishing on the subspace."""
        return Subspace(self.field, self.ambient, kernel(self.basis, self.ambient, self.field))

    def orthogonal(self, gram: Matrix) -> Subspace:
        """{x : bᵀ·G·x = 0 for every basis vector b}."""
        rows = [tuple(dot(b, col) for col in columns(gram)) for b in self.basis]
        return Subspace(self.field, self.ambient, kernel(rows, self.ambient, self.field))

    def image(self, M: Matrix) -> Subspace:
        return Subspace(self.field, self.ambient, [mat_vec(M, b) for b in self.basis])

    def complement_basis(self) -> list[Vector]:
        """Unit vectors completing `basis` to a basis of the ambient space."""
        pivots = set(self.pivots)
        return [unit_vector(self.field, self.ambient, i) for i in range(self.ambient) if i not in pivots]

    def elements(self) -> Iterator[Vector]:
        """Every vector of the subspace; finite fields only."""
        values = list(self.field.elements())
        if not self.basis:
            yield zero_vector(self.field, self.ambient)
            return
        for coeffs in itertools.product(values, repeat=self.dim):
            yield combination(coeffs, self.basis)


def kernel_subspace(M: Matrix) -> Subspace:
    F = M[0][0].field
    return Subspace(F, len(M[0]), kernel(M, len(M[0]), F))


def image_subspace(M: Matrix) -> Subspace:
    F = M[0][0].field
    return Subspace(F, len(M), columns(M))


# ---------------------------------------------------------------------------
# Symmetric forms
# ---------------------------------------------------------------------------


def bilinear(gram: Matrix, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> FieldElement:
    return dot(x, mat_vec(gram, y))


def diagonalize_symmetric(gram: Matrix, F: Field) -> tuple[list[Vector], list[FieldElement]]:
    """Orthogonal basis for the symmetric form `gram` in odd characteristic.

    Returns (basis, values) with bilinear(basis[i], basis[j]) = δ_ij·values[i].
    """
    if F.characteristic == 2:
        raise PreconditionError("symmetric diagonalization needs odd characteristic")
    n = len(gram)
    remaining = [unit_vector(F, n, i) for i in range(n)]
    basis: list[Vector] = []
    values: list[FieldElement] = []
    while remaining:
        pick = next((i for i, v in enumerate(remaining) if bilinear(gram, v, v)), None)
        if pick is None:
            pair = next(
                (
                    (i, j)
                    for i, j in itertools.combinations(range(len(remaining)), 2)
                    if bilinear(gram, remaining[i], remaining[j])
                ),
                None,
            )
            if pair is None:
                basis += remaining
                values += [F.zero] * len(remaining)
                break
            i, j = pair
            remaining[i] = vadd(remaining[i], remaining[j])
            pick = i
        v = remaining.pop(pick)
        d = bilinear(gram, v, v)
        remaining = [vsub(w, vscale(bilinear(gram, v, w) / d, v)) for w in remaining]
        basis.append(v)
        values.append(d)
    return basis, values


# ---------------------------------------------------------------------------
# Deterministic lattice search
# ---------------------------------------------------------------------------


def lattice_points(basis: Sequence[Vector], values: Sequence[FieldElement]) -> Iterator[Vector]:
    """Σ cᵢ·basisᵢ with cᵢ ∈ values ∪ {0}, by growing support size, then support, then coefficients."""
    for size in range(1, len(basis) + 1):
        for support in itertools.combinations(range(len(basis)), size):
            for coeffs in itertools.product(values, repeat=size):
                yield combination(coeffs, [basis[i] for i in support])


def lattice_search(
    basis: Sequence[Vector],
    values: Sequence[FieldElement],
    predicate: Callable[[Vector], bool],
    limit: int,
    what: str = "vector",
) -> Vector:
    """First lattice point satisfying `predicate`; SearchExhaustedError after `limit` candidates."""
    tried = 0
    for v in lattice_points(basis, values):
        if predicate(v):
            log.debug("lattice search for %s succeeded after %d candidates", what, tried + 1)
            return v
        tried += 1
        if tried >= limit:
            break
    log.info("lattice search for %s exhausted after %d candidates", what, tried)
    raise SearchExhaustedError(f"no {what} found among {tried} lattice candidates", tried=tried)
