"""Tests for okubo.catalog."""

import pytest

from okubo.catalog import build, build_symmetric, parse_kw, split_top
from okubo.classify import class_tag
from okubo.compalg import Tag
from okubo.errors import ParseError, WrongCharacteristicError
from okubo.fields import Field


class TestSplitTop:
    def test_respects_brackets(self) -> None:
        assert split_top("a, (b,c), [d,e]") == ["a", "(b,c)", "[d,e]"]

    def test_other_separator(self) -> None:
        assert split_top("1,2:[0,1],2", ":") == ["1,2", "[0,1],2"]


class TestParseKW:
    def test_split(self, f3t: Field) -> None:
        kw = parse_kw(f3t, "split:t")
        assert kw.K.is_split
        assert class_tag(kw.K, kw.a) == "[split; a=t]"
        assert kw.K.norm(kw.a) == 1

    def test_quadratic(self, gf3: Field) -> None:
        kw = parse_kw(gf3, "0,-1:1,0")
        assert kw.K.label == "GF(9)"
        assert kw.a == (gf3.one, gf3.zero)

    @pytest.mark.parametrize("spec", ["split:0", "split", "1,2:0", "1:0,1"])
    def test_rejects(self, gf3: Field, spec: str) -> None:
        with pytest.raises(ParseError):
            parse_kw(gf3, spec)


class TestBuild:
    @pytest.mark.parametrize(
        ("name", "dim", "tag"),
        [
            ("zorn", 8, Tag.HURWITZ),
            ("para-zorn", 8, Tag.PARA),
            ("split-okubo", 8, Tag.OKUBO),
            ("para-quadratic:0,-1", 2, Tag.PARA),
            ("kw:split:1", 8, Tag.HURWITZ),
            ("okubo-kw:split:1", 8, Tag.OKUBO),
        ],
    )
    def test_names(self, gf3: Field, name: str, dim: int, tag: Tag) -> None:
        A = build(gf3, name)
        assert A.dim == dim
        assert A.tag is tag

    def test_unknown_lists_names(self, gf3: Field) -> None:
        with pytest.raises(ParseError, match="para-zorn"):
            build(gf3, "octonions")

    def test_para_quadratic_needs_two_coefficients(self, gf7: Field) -> None:
        with pytest.raises(ParseError):
            build(gf7, "para-quadratic:1")

    def test_kw_needs_char3(self, gf7: Field) -> None:
        with pytest.raises(WrongCharacteristicError):
            build(gf7, "kw:split:2")

    def test_symmetric_kw_is_okubo(self, f3t: Field) -> None:
        S = build_symmetric(f3t, "kw:split:t")
        assert S.tag is Tag.OKUBO
        assert S.name.startswith("okubo(")
        assert build_symmetric(f3t, "zorn").tag is Tag.HURWITZ
