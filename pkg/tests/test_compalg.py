"""Tests for okubo.compalg."""

import dataclasses

import pytest

from okubo.compalg import (
    E1,
    E2,
    U,
    V,
    ZORN_TABLE,
    Algebra,
    QuadraticForm,
    Tag,
    cayley_dickson,
    check_composition,
    check_hurwitz,
    check_symmetric,
    commutative_center,
    complete_canonical_basis,
    etale_hurwitz,
    find_canonical_basis,
    find_para_unit,
    ground,
    hurwitz_from_idempotent,
    is_para_unit,
    para,
    peirce_space,
    petersson,
    radical,
    span_algebra,
    split_okubo,
    zorn,
)
from okubo.errors import NotIdempotentError, PreconditionError
from okubo.fields import Field, make_etale
from okubo.linalg import Subspace, identity, vscale
from okubo.maps import tau_from_idempotent
from okubo.settings import OkuboSettings


class TestZornTable:
    @pytest.mark.parametrize("spec", ["gf2", "gf3", "gf7", "qq"])
    def test_products_follow_the_table(self, spec: str, request: pytest.FixtureRequest) -> None:
        F = request.getfixturevalue(spec)
        C = zorn(F)
        for i in range(8):
            for j in range(8):
                expected = C.zero
                if (i, j) in ZORN_TABLE:
                    k, sign = ZORN_TABLE[i, j]
                    expected = vscale(sign, C.basis(k))
                assert C.mul(C.basis(i), C.basis(j)) == expected

    def test_named_products(self, zorn3: Algebra) -> None:
        C = zorn3
        assert C.describe(C.mul(C.vector("u1"), C.vector("u2"))) == "v3"
        assert C.describe(C.mul(C.vector("u2"), C.vector("u1"))) == "-v3"
        assert C.describe(C.mul(C.vector("u1"), C.vector("v1"))) == "-e1"
        assert C.describe(C.mul(C.vector("v1"), C.vector("u1"))) == "-e2"
        assert C.describe(C.mul(C.vector("v2"), C.vector("v3"))) == "u1"
        assert C.describe(C.mul(C.vector("e1"), C.vector("v1"))) == "0"

    def test_unit_and_norm(self, gf7: Field) -> None:
        C = zorn(gf7)
        assert C.describe(C.one) == "e1 + e2"
        assert C.norm(C.one) == 1
        assert C.norm(C.basis(E1)) == 0
        assert C.polar(C.basis(E1), C.basis(E2)) == 1
        assert all(C.polar(C.basis(U[i]), C.basis(V[i])) == 1 for i in range(3))

    def test_label_expressions(self, zorn3: Algebra) -> None:
        C = zorn3
        assert C.vector("1-v3") == C.vector("e1+e2-v3")
        assert C.describe(C.vector("2*u1 + v2")) == "2*u1 + v2"
        with pytest.raises(PreconditionError):
            C.vector("w4")

    @pytest.mark.parametrize("spec", ["gf2", "gf3", "gf7", "qq"])
    def test_hurwitz_and_composition(self, spec: str, request: pytest.FixtureRequest, settings: OkuboSettings) -> None:
        C = zorn(request.getfixturevalue(spec))
        assert check_hurwitz(C)
        assert check_composition(C, settings)

    def test_exhaustive_over_gf2(self, gf2: Field, settings: OkuboSettings) -> None:
        outcome = check_composition(zorn(gf2), settings)
        assert outcome.method == "exhaustive"
        assert outcome.checked == 2**16

    def test_tampered_table_fails(self, zorn3: Algebra, settings: OkuboSettings) -> None:
        constants = [[list(c) for c in row] for row in zorn3.constants]
        constants[U[0]][U[1]][V[2]] = zorn3.field.zero
        A = dataclasses.replace(zorn3, constants=tuple(tuple(map(tuple, row)) for row in constants))
        outcome = check_composition(A, settings)
        assert not outcome
        x, y = outcome.counterexample
        assert A.norm(A.mul(x, y)) != A.norm(x) * A.norm(y)

    def test_basis_pair_is_reported_first(self, zorn3: Algebra, settings: OkuboSettings) -> None:
        F = zorn3.field
        constants = [[list(c) for c in row] for row in zorn3.constants]
        constants[E1][V[0]][V[0]] = F.one  # e1·v1 = v1 breaks only on e1·(u1 + v1)
        constants[V[2]][U[2]][E1] = -F.one  # v3·u3 = −1
        A = dataclasses.replace(zorn3, constants=tuple(tuple(map(tuple, row)) for row in constants))
        outcome = check_composition(A, settings)
        assert not outcome
        assert outcome.counterexample == (A.basis(V[2]), A.basis(U[2]))

    def test_conjugation(self, zorn3: Algebra) -> None:
        C = zorn3
        assert C.conj(C.vector("e1")) == C.vector("e2")
        assert C.conj(C.vector("u1")) == C.vector("-u1")


class TestHurwitzConstructors:
    def test_octonions_over_q(self, qq: Field, settings: OkuboSettings) -> None:
        O = cayley_dickson(cayley_dickson(cayley_dickson(ground(qq), -1), -1), -1)
        assert O.dim == 8
        assert O.labels[:4] == ("1", "i", "j", "ij")
        assert check_composition(O, settings)

    def test_doubling_stops_at_eight(self, zorn3: Algebra) -> None:
        with pytest.raises(PreconditionError):
            cayley_dickson(zorn3, 1)

    def test_doubling_needs_nonzero(self, gf3: Field) -> None:
        with pytest.raises(PreconditionError):
            cayley_dickson(ground(gf3), 0)

    def test_etale(self, gf3: Field) -> None:
        K = etale_hurwitz(make_etale(gf3, (0, -1)))
        assert K.dim == 2
        assert K.name == "etale(GF(9))"
        xi = K.vector("xi")
        assert K.mul(xi, xi) == K.vector("-1")

    def test_bad_gram(self, gf3: Field) -> None:
        with pytest.raises(PreconditionError):
            QuadraticForm((gf3.one, gf3.one), ((gf3(2), gf3(1)), (gf3(0), gf3(2))))


class TestSymmetricConstructors:
    def test_para_hurwitz(self, zorn3: Algebra, para_zorn3: Algebra) -> None:
        assert para_zorn3.tag is Tag.PARA
        assert check_symmetric(para_zorn3)
        assert find_para_unit(para_zorn3) == zorn3.one
        assert commutative_center(para_zorn3).dim == 1

    def test_trivial_petersson_keeps_para_unit(self, zorn3: Algebra) -> None:
        P = petersson(zorn3, identity(zorn3.field, 8))
        assert P.tag is Tag.PETERSSON
        assert is_para_unit(P, zorn3.one)

    @pytest.mark.parametrize("spec", ["gf2", "gf3", "gf7"])
    def test_split_okubo(self, spec: str, request: pytest.FixtureRequest) -> None:
        S = split_okubo(request.getfixturevalue(spec))
        assert S.tag is Tag.OKUBO
        assert check_symmetric(S)
        assert find_para_unit(S) is None

    def test_hurwitz_from_para_unit(self, zorn3: Algebra, para_zorn3: Algebra, settings: OkuboSettings) -> None:
        A = hurwitz_from_idempotent(para_zorn3, zorn3.one)
        assert A.tag is Tag.HURWITZ
        assert check_composition(A, settings)
        # (e*x)*(y*e) with e the para-unit gives back the original product
        assert A.constants == zorn3.constants

    def test_not_idempotent(self, para_zorn3: Algebra) -> None:
        with pytest.raises(NotIdempotentError):
            hurwitz_from_idempotent(para_zorn3, para_zorn3.vector("u1"))

    @pytest.mark.parametrize("spec", ["gf3", "gf7"])
    def test_split_okubo_from_its_idempotent(self, spec: str, request: pytest.FixtureRequest) -> None:
        S = split_okubo(request.getfixturevalue(spec))
        e = S.parent.one
        A = hurwitz_from_idempotent(S, e)
        assert A.constants == S.parent.constants
        tau = tau_from_idempotent(S, e)
        tau2 = tau.power(2)
        basis = [S.basis(i) for i in range(S.dim)]
        for x in basis:
            for y in basis:
                assert S.mul(x, y) == A.mul(tau(A.conj(x)), tau2(A.conj(y)))


class TestCanonicalBasis:
    def test_recovers_a_canonical_basis(self, qq: Field, settings: OkuboSettings) -> None:
        # split octonions as a doubling of M2(Q)
        split_quaternions = cayley_dickson(cayley_dickson(ground(qq), 1), 1)
        O = cayley_dickson(split_quaternions, 1)
        W = find_canonical_basis(O, settings)
        vectors = W.as_list()
        for (i, j), (k, sign) in ZORN_TABLE.items():
            assert O.mul(vectors[i], vectors[j]) == vscale(sign, vectors[k])

    def test_peirce_spaces_of_zorn(self, zorn3: Algebra) -> None:
        e1 = zorn3.basis(E1)
        assert peirce_space(zorn3, e1, 1, 0).dim == 3
        assert peirce_space(zorn3, e1, 0, 1).dim == 3
        assert peirce_space(zorn3, e1, 1, 1).dim == 1

    def test_rejects_wrong_order(self, zorn3: Algebra) -> None:
        C = zorn3
        with pytest.raises(PreconditionError, match="Peirce"):
            complete_canonical_basis(C, C.vector("e2"), C.vector("e1"), C.vector("u1"), C.vector("u2"), C.vector("u3"))

    def test_rejects_unnormalized(self, zorn3: Algebra) -> None:
        C = zorn3
        e1, e2, u1, u2 = (C.vector(label) for label in ("e1", "e2", "u1", "u2"))
        with pytest.raises(PreconditionError, match="expected 1"):
            complete_canonical_basis(C, e1, e2, u1, u2, C.vector("2*u3"))

    def test_span(self, zorn3: Algebra) -> None:
        assert span_algebra(zorn3, [zorn3.vector("u1"), zorn3.vector("u2")]).dim == 3

    def test_radical(self, zorn3: Algebra) -> None:
        C = zorn3
        assert radical(C, Subspace(C.field, 8, [C.vector("u1"), C.vector("u2")])).dim == 2
        assert radical(C, Subspace(C.field, 8, [C.vector("u1"), C.vector("v1")])).dim == 0
