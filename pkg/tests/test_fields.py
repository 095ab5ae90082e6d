"""Tests for okubo.fields."""

import random
from fractions import Fraction

import pytest

from okubo.errors import FieldError, FieldMismatchError, ParseError, PreconditionError, WrongCharacteristicError
from okubo.fields import GF, QQ, EtaleAlgebra, Field, etale_iso_test, make_etale, parse_field, ratfunc


class TestParseField:
    @pytest.mark.parametrize(
        ("spec", "expected"),
        [
            ("GF(7)", "GF(7)"),
            ("GF(4)", "GF(4; 1,1)"),
            ("GF(2^2)", "GF(4; 1,1)"),
            ("GF(9; 1,0)", "GF(9; 1,0)"),
            ("Q", "Q"),
            ("F3(t)", "F3(t)"),
            ("F_3(t)", "F3(t)"),
        ],
    )
    def test_canonical_spec(self, spec: str, expected: str) -> None:
        assert parse_field(spec).spec == expected

    @pytest.mark.parametrize("spec", ["GF(6)", "GF(1)", "GF(4; 1,0)", "GF(7; 1)", "R", "GF(4^2)"])
    def test_rejects(self, spec: str) -> None:
        with pytest.raises(FieldError):
            parse_field(spec)

    def test_same_spec_same_field(self) -> None:
        assert parse_field("GF(4)") == GF(2, 2, (1, 1))


FIELDS = ["gf2", "gf3", "gf4", "gf7", "gf9", "qq", "f3t"]


def _samples(F: Field, n: int, nonzero: bool = False) -> list:
    rng = random.Random(5)
    out = []
    while len(out) < n:
        x = F.random_element(rng)
        if x or not nonzero:
            out.append(x)
    return out


class TestFieldLaws:
    @pytest.mark.parametrize("spec", FIELDS)
    def test_axioms_on_samples(self, spec: str, request: pytest.FixtureRequest) -> None:
        F = request.getfixturevalue(spec)
        xs = _samples(F, 12)
        for x, y, z in zip(xs, xs[1:] + xs[:1], xs[2:] + xs[:2]):
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * y == y * x
            assert x * (y + z) == x * y + x * z
            assert x + F.zero == x
            assert x * F.one == x
            assert x - x == F.zero
            if x:
                assert x * (F.one / x) == F.one

    @pytest.mark.parametrize("spec", FIELDS)
    def test_frobenius_is_a_ring_map(self, spec: str, request: pytest.FixtureRequest) -> None:
        F = request.getfixturevalue(spec)
        xs = _samples(F, 10)
        for x, y in zip(xs, reversed(xs)):
            assert F.frobenius(x + y) == F.frobenius(x) + F.frobenius(y)
            assert F.frobenius(x * y) == F.frobenius(x) * F.frobenius(y)

    @pytest.mark.parametrize("spec", FIELDS)
    def test_cubes_are_cubes(self, spec: str, request: pytest.FixtureRequest) -> None:
        F = request.getfixturevalue(spec)
        assert all(F.is_cube(x * x * x) for x in _samples(F, 10, nonzero=True))

    @pytest.mark.parametrize("spec", ["gf3", "gf4", "gf7", "qq", "f3t"])
    def test_cube_classes_are_an_equivalence(self, spec: str, request: pytest.FixtureRequest) -> None:
        F = request.getfixturevalue(spec)
        xs = _samples(F, 8, nonzero=True)
        same = F.cube_class_equal
        for x in xs:
            assert same(x, x)
            assert same(x, x * x * x * x)
            for y in xs:
                assert same(x, y) == same(y, x)
                for z in xs:
                    if same(x, y) and same(y, z):
                        assert same(x, z)


class TestPrimeField:
    def test_arithmetic(self, gf7: Field) -> None:
        x = gf7(3)
        assert x + 5 == gf7(1)
        assert x * x == gf7(2)
        assert 1 / x == gf7(5)
        assert x**6 == gf7.one

    def test_fractions_reduce(self, gf7: Field) -> None:
        assert gf7(Fraction(1, 2)) == gf7(4)
        assert gf7.parse("3/2") == gf7(5)

    def test_division_by_zero(self, gf7: Field) -> None:
        with pytest.raises(ZeroDivisionError):
            gf7.one / gf7.zero

    def test_mixing_fields_is_an_error(self, gf3: Field, gf7: Field) -> None:
        with pytest.raises(FieldMismatchError):
            gf3(gf7(1))

    def test_quadratic_roots(self, gf7: Field) -> None:
        # x² + x + 1 = (x − 2)(x − 4) over GF(7)
        assert gf7.quadratic_roots(1, 1, 1) == [gf7(2), gf7(4)]
        assert gf7.quadratic_roots(1, 0, 1) == []

    def test_cubes(self, gf7: Field) -> None:
        cubes = {x**3 for x in gf7.elements() if x}
        assert cubes == {gf7(1), gf7(6)}
        assert not gf7.is_cube(gf7(2))
        assert gf7.is_cube(gf7(6))


class TestExtensionField:
    def test_generator_has_order_3(self, gf4: Field) -> None:
        x = gf4.generator()
        assert x * x + x + 1 == gf4.zero
        assert x**3 == gf4.one

    def test_enumeration_indexes(self, gf4: Field) -> None:
        elements = list(gf4.elements())
        assert len(elements) == 4
        assert [gf4.index(x) for x in elements] == [0, 1, 2, 3]

    def test_parse_coefficient_list(self) -> None:
        F = parse_field("GF(9)")
        x = F.parse("[0,1]")
        assert F.format_value(x.value) == "[0,1]"
        assert x**8 == F.one

    def test_char2_quadratic_by_enumeration(self, gf4: Field) -> None:
        roots = gf4.quadratic_roots(1, 1, 1)
        assert len(roots) == 2
        assert all(r * r + r + 1 == gf4.zero for r in roots)


class TestRationals:
    def test_sqrt(self) -> None:
        assert QQ.sqrt(QQ(Fraction(9, 4))) == QQ(Fraction(3, 2))
        assert QQ.sqrt(QQ(2)) is None
        assert QQ.sqrt(QQ(-1)) is None

    def test_lattice_values(self) -> None:
        assert [str(v) for v in QQ.lattice_values(2)] == ["1", "-1", "2", "-2", "1/2", "-1/2"]

    def test_parse_error(self) -> None:
        with pytest.raises(ParseError):
            QQ.parse("one half")


class TestRationalFunctions:
    def test_parse_and_format(self, f3t: Field) -> None:
        x = f3t.parse("(t^2+1)/(t)")
        assert str(x) == "(1+t^2)/(t)"
        assert str(f3t.parse("2t+1") * 2) == "2+t"

    def test_reduces_fractions(self, f3t: Field) -> None:
        assert f3t.parse("(t^2+2t+1)/(t+1)") == f3t.parse("t+1")

    def test_cubes_in_char3(self, f3t: Field) -> None:
        assert f3t.is_cube(f3t.parse("t^3+1"))
        assert not f3t.is_cube(f3t.parse("t"))

    def test_frobenius_decompose(self, f3t: Field) -> None:
        t = f3t.parse("t")
        c0, c1, c2 = f3t.frobenius_decompose(t**4 + 2 * t**2 + 1)
        assert (c0, c1, c2) == (f3t.one, t**3, f3t(2))
        assert c0 + c1 * t + c2 * t * t == t**4 + 2 * t**2 + 1

    def test_decompose_needs_char3(self) -> None:
        with pytest.raises(WrongCharacteristicError):
            ratfunc(5).f3_subfield_decompose(ratfunc(5).one)

    def test_not_perfect(self, f3t: Field) -> None:
        assert not f3t.is_finite
        assert not f3t.is_perfect

    def test_random_elements_are_seeded(self, f3t: Field) -> None:
        first = [f3t.random_element(random.Random(5)) for _ in range(3)]
        second = [f3t.random_element(random.Random(5)) for _ in range(3)]
        assert first == second


class TestEtaleAlgebra:
    def test_split_coordinates_round_trip(self, gf7: Field) -> None:
        K = make_etale(gf7, "split")
        x = K.from_split_coords(3, 5)
        assert K.split_coords(x) == (gf7(3), gf7(5))
        assert K.norm(x) == gf7(15)

    def test_field_case(self, gf3: Field) -> None:
        K = make_etale(gf3, (0, -1))
        assert not K.is_split
        assert K.label == "GF(9)"
        xi = K.xi
        assert K.equal(K.mul(xi, xi), K.element(-1))

    def test_inseparable_rejected(self, gf2: Field) -> None:
        with pytest.raises(FieldError):
            EtaleAlgebra(gf2, 0, 1)

    def test_iso_classes_over_finite_field(self, gf3: Field) -> None:
        assert etale_iso_test(make_etale(gf3, (0, -1)), make_etale(gf3, (1, 1))) is True
        assert etale_iso_test(make_etale(gf3, "split"), make_etale(gf3, (0, -1))) is False

    def test_cube_classes_over_f3t(self, f3t: Field) -> None:
        K = make_etale(f3t, "split")
        t = f3t.parse("t")
        a = K.from_split_coords(t, 1 / t)
        assert not K.is_cube(a)
        assert K.is_cube(K.pow(a, 3))

    def test_split_coords_need_split(self, gf3: Field) -> None:
        with pytest.raises(PreconditionError):
            make_etale(gf3, (0, -1)).split_coords(make_etale(gf3, (0, -1)).one)
