"""Tests for okubo.classify."""

import random

import pytest

from okubo.catalog import build_symmetric, parse_kw
from okubo.classify import (
    class_tag,
    classify_idempotent,
    classify_order3,
    classify_order3_char3,
    classify_order3_charnot3,
    classify_order3_quaternion,
    classify_symmetric_composition,
    g_image,
    g_map,
    idempotent_inventory,
    is_quaternion_split,
    ka_equivalent,
    okubo_split_test,
)
from okubo.compalg import Algebra, cayley_dickson, ground, split_okubo, zorn
from okubo.errors import PreconditionError, WrongCharacteristicError
from okubo.fields import Field, make_etale
from okubo.idempotents import Strategy, idempotents
from okubo.liealg import chevalley_basis, exp_root, random_automorphism
from okubo.linalg import Subspace, identity, vadd, vscale
from okubo.maps import Automorphism, normal_form, segre_symbol, standard_cube_root, tau_st, tau_w
from okubo.models import IdempotentKind, Order3Kind, SymmetricKind
from okubo.settings import OkuboSettings


class TestOrder3CharNot3:
    @pytest.mark.parametrize("spec", ["gf4", "gf7"])
    def test_para_cayley(self, spec: str, request: pytest.FixtureRequest, settings: OkuboSettings) -> None:
        C = zorn(request.getfixturevalue(spec))
        w = standard_cube_root(C)
        result = classify_order3_charnot3(C, tau_w(C, w), settings)
        assert result.kind is Order3Kind.PARA_CAYLEY
        assert result.fix_dim == 2
        assert result.w_coords is not None

    @pytest.mark.parametrize("spec", ["gf4", "gf7"])
    def test_okubo(self, spec: str, request: pytest.FixtureRequest, settings: OkuboSettings) -> None:
        C = zorn(request.getfixturevalue(spec))
        result = classify_order3(C, tau_st(C), settings)
        assert result.kind is Order3Kind.OKUBO
        assert result.fix_dim == 4
        assert result.quaternion_split is True

    def test_rejects_char3(self, zorn3: Algebra, settings: OkuboSettings) -> None:
        with pytest.raises(WrongCharacteristicError):
            classify_order3_charnot3(zorn3, tau_st(zorn3), settings)

    def test_rejects_wrong_order(self, gf7: Field, settings: OkuboSettings) -> None:
        C = zorn(gf7)
        with pytest.raises(PreconditionError, match="order 1"):
            classify_order3(C, identity(gf7, 8), settings)


class TestOrder3Char3:
    @pytest.mark.parametrize("kind", [Order3Kind.TYPE1, Order3Kind.TYPE2, Order3Kind.TYPE3, Order3Kind.TYPE4])
    def test_normal_forms(self, zorn3: Algebra, settings: OkuboSettings, kind: Order3Kind) -> None:
        result = classify_order3(zorn3, normal_form(zorn3, str(kind)), settings)
        assert result.kind is kind
        assert result.characteristic == 3

    def test_type2_carries_ka(self, zorn3: Algebra, settings: OkuboSettings) -> None:
        result = classify_order3_char3(zorn3, normal_form(zorn3, "type2"), settings)
        assert result.etale is not None
        assert result.class_tag is not None
        assert result.K.norm(result.a_value) == 1
        assert "K" not in result.model_dump()
        assert "a_value" not in result.model_dump()

    def test_type3_has_para_unit_witness(self, zorn3: Algebra, settings: OkuboSettings) -> None:
        result = classify_order3_char3(zorn3, normal_form(zorn3, "type3"), settings)
        assert result.w is not None
        assert result.segre == "(3,2^2,1)"

    def test_rejects_other_characteristics(self, gf7: Field, settings: OkuboSettings) -> None:
        C = zorn(gf7)
        with pytest.raises(WrongCharacteristicError):
            classify_order3_char3(C, tau_st(C), settings)

    @pytest.mark.parametrize("kind", [Order3Kind.TYPE1, Order3Kind.TYPE2, Order3Kind.TYPE3, Order3Kind.TYPE4])
    def test_invariant_under_conjugation(self, zorn3: Algebra, settings: OkuboSettings, kind: Order3Kind) -> None:
        tau = normal_form(zorn3, str(kind))
        base = classify_order3_char3(zorn3, tau, settings)
        segre = segre_symbol(tau.minus_identity())
        CB = chevalley_basis(zorn3)
        rng = random.Random(0)
        for _ in range(20):
            conjugate = tau.conjugate_by(random_automorphism(CB, rng))
            assert segre_symbol(conjugate.minus_identity()) == segre
            result = classify_order3_char3(zorn3, conjugate, settings)
            assert result.kind is kind
            assert result.segre == base.segre
            if kind is Order3Kind.TYPE2:
                assert ka_equivalent((base.K, base.a_value), (result.K, result.a_value)) is True


class TestClassInvariants:
    def _pair(self, F: Field, alpha: str):
        kw = parse_kw(F, f"split:{alpha}")
        return kw.K, kw.a

    def test_tag(self, f3t: Field) -> None:
        assert class_tag(*self._pair(f3t, "t")) == "[split; a=t]"

    @pytest.mark.parametrize(
        ("first", "second", "expected"),
        [("t", "t", True), ("t", "t^2", True), ("t", "1+t", False)],
    )
    def test_equivalence_over_f3t(self, f3t: Field, first: str, second: str, expected: bool) -> None:
        assert ka_equivalent(self._pair(f3t, first), self._pair(f3t, second)) is expected

    def test_split_and_nonsplit_differ(self, gf3: Field) -> None:
        split = self._pair(gf3, "1")
        K = make_etale(gf3, (0, -1))
        assert ka_equivalent(split, (K, K.one)) is False

    def test_needs_norm_one(self, gf3: Field) -> None:
        K = make_etale(gf3, "split")
        with pytest.raises(PreconditionError):
            ka_equivalent((K, K.from_split_coords(1, 2)), (K, K.one))


class TestIdempotents:
    def test_para_unit(self, zorn3: Algebra, para_zorn3: Algebra, settings: OkuboSettings) -> None:
        assert classify_idempotent(para_zorn3, zorn3.one, settings).kind is IdempotentKind.PARA_UNIT

    def test_quaternionic(self, okubo3: Algebra, settings: OkuboSettings) -> None:
        result = classify_idempotent(okubo3, okubo3.parent.one, settings)
        assert result.kind is IdempotentKind.QUATERNIONIC
        assert result.order3.kind is Order3Kind.TYPE1

    def test_okubo_char_not3(self, gf7: Field, settings: OkuboSettings) -> None:
        S = split_okubo(gf7)
        result = classify_idempotent(S, S.parent.one, settings)
        assert result.kind is IdempotentKind.OKUBO_CHAR_NOT3
        assert result.quaternion_split is True

    def test_quadratic_over_f3t(self, f3t: Field, settings: OkuboSettings) -> None:
        S = build_symmetric(f3t, "kw:split:t", settings)
        result = classify_idempotent(S, S.parent.one, settings)
        assert result.kind is IdempotentKind.QUADRATIC
        assert result.class_tag is not None

    def test_gf3_inventory(self, okubo3: Algebra, settings: OkuboSettings) -> None:
        inventory = idempotent_inventory(okubo3, settings)
        assert inventory.total == 9 + len(inventory.quadratic)
        assert len(inventory.quaternionic) == 1
        assert len(inventory.singular) == 8
        assert len(inventory.class_tags) == 2
        assert inventory.closed_form_match is True
        assert inventory.singular_match is True

    def test_family_over_f3t(self, f3t: Field, settings: OkuboSettings) -> None:
        S = build_symmetric(f3t, "kw:split:t", settings)
        inventory = idempotent_inventory(S, settings)
        assert inventory.family_dim is not None
        assert len(inventory.class_tags) == 1

    def test_inventory_needs_char3(self, gf7: Field, settings: OkuboSettings) -> None:
        with pytest.raises(WrongCharacteristicError):
            idempotent_inventory(split_okubo(gf7), settings)

    def test_class_is_constant_on_orbits(self, okubo3: Algebra, settings: OkuboSettings) -> None:
        S = okubo3
        CB = chevalley_basis(S.parent)
        # automorphisms of the parent commuting with τ
        maps = [Automorphism(S, S.tau)] + [Automorphism(S, exp_root(CB, "e2-e3", t).matrix) for t in (1, 2)]
        by_kind: dict[IdempotentKind, list] = {}
        for e in idempotents(S, Strategy.BRUTE_FORCE, settings).elements:
            by_kind.setdefault(classify_idempotent(S, e, settings).kind, []).append(e)
        assert {IdempotentKind.QUATERNIONIC, IdempotentKind.QUADRATIC, IdempotentKind.SINGULAR} <= set(by_kind)
        for kind, group in by_kind.items():
            for e in group[:2]:
                cls = classify_idempotent(S, e, settings)
                for phi in maps:
                    image = classify_idempotent(S, phi(e), settings)
                    assert image.kind is kind
                    if kind is IdempotentKind.QUADRATIC:
                        first = (cls.order3.K, cls.order3.a_value)
                        assert ka_equivalent(first, (image.order3.K, image.order3.a_value)) is True


class TestGImage:
    @pytest.mark.parametrize(("alpha", "dimension"), [("t", 3), ("1", 1)])
    def test_f3t(self, f3t: Field, settings: OkuboSettings, alpha: str, dimension: int) -> None:
        S = build_symmetric(f3t, f"kw:split:{alpha}", settings)
        assert g_image(S).dimension == dimension
        assert okubo_split_test(S, settings) is (dimension == 1)

    def test_perfect_field(self, okubo3: Algebra) -> None:
        assert g_image(okubo3).dimension == 1
        assert okubo_split_test(okubo3) is True

    def test_g_is_semilinear(self, f3t: Field, settings: OkuboSettings) -> None:
        S = build_symmetric(f3t, "kw:split:t", settings)
        t = f3t.parse("t")
        x, y = S.basis(2), S.basis(5)
        assert g_map(S, vscale(t, x)) == t**3 * g_map(S, x)
        assert g_map(S, vadd(x, y)) == g_map(S, x) + g_map(S, y)

    def test_needs_char3(self, gf7: Field) -> None:
        with pytest.raises(WrongCharacteristicError):
            g_image(split_okubo(gf7))

    def test_rejects_para_hurwitz(self, para_zorn3: Algebra, settings: OkuboSettings) -> None:
        with pytest.raises(PreconditionError, match="para-unit"):
            okubo_split_test(para_zorn3, settings)


class TestSymmetricComposition:
    def test_para_zorn(self, para_zorn3: Algebra, settings: OkuboSettings) -> None:
        result = classify_symmetric_composition(para_zorn3, settings)
        assert result.kind is SymmetricKind.PARA_HURWITZ_FORM
        assert result.para_unit == "e1 + e2"

    def test_split_okubo(self, okubo3: Algebra, settings: OkuboSettings) -> None:
        result = classify_symmetric_composition(okubo3, settings)
        assert result.kind is SymmetricKind.OKUBO
        assert result.para_unit is None
        assert result.order3.kind is Order3Kind.TYPE1


class TestQuaternions:
    def test_order3_of_a_quaternion_algebra(self, gf7: Field) -> None:
        H = cayley_dickson(cayley_dickson(ground(gf7), -1), -1)
        w = H.vector([3, 2, 3, 0])  # trace -1, norm 1
        result = classify_order3_quaternion(H, tau_w(H, w))
        assert result.kind is Order3Kind.PARA_QUATERNION
        assert result.fix_dim == 2
        assert result.w_coords == ["3", "2", "3", "0"]

    def test_quaternion_order3_needs_char_not3(self, gf3: Field) -> None:
        H = cayley_dickson(cayley_dickson(ground(gf3), -1), -1)
        with pytest.raises(WrongCharacteristicError):
            classify_order3_quaternion(H, identity(gf3, 4))

    def test_split_over_q(self, qq: Field) -> None:
        O = cayley_dickson(cayley_dickson(cayley_dickson(ground(qq), -1), 1), -1)
        Q = Subspace(qq, 8, [O.basis(i) for i in range(4)])
        assert is_quaternion_split(O, Q, OkuboSettings(quaternion_height=2)) is True

    def test_hamilton_quaternions_are_unknown_over_q(self, qq: Field) -> None:
        O = cayley_dickson(cayley_dickson(cayley_dickson(ground(qq), -1), -1), -1)
        Q = Subspace(qq, 8, [O.basis(i) for i in range(4)])
        assert is_quaternion_split(O, Q, OkuboSettings(quaternion_height=2)) is None

    def test_needs_dimension_four(self, zorn3: Algebra) -> None:
        with pytest.raises(PreconditionError):
            is_quaternion_split(zorn3, Subspace(zorn3.field, 8, [zorn3.one]))
