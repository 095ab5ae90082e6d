"""Tests for okubo.formats."""

import pytest
from rich.table import Table

from okubo.compalg import Algebra, Tag, para, zorn
from okubo.errors import ParseError
from okubo.fields import Field
from okubo.formats import (
    dump_algebra,
    dump_chevalley,
    dump_map,
    flat_json,
    format_element,
    parse_algebra,
    parse_classify_input,
    parse_element,
    parse_map,
    report_lines,
    suite_table,
    table_cells,
    table_text,
)
from okubo.liealg import ROOTS, chevalley_basis
from okubo.maps import tau_st
from okubo.models import CheckResult, IdempotentClass, IdempotentKind, Order3Class, Order3Kind, SuiteResult


class TestElements:
    def test_prime_field(self, gf7: Field) -> None:
        assert parse_element("[1, 0, -1]", gf7) == (gf7.one, gf7.zero, gf7(6))
        assert format_element((gf7(3), gf7.zero)) == "[3,0]"

    def test_nested_brackets(self, gf4: Field) -> None:
        x = parse_element("[[0,1],[1,0]]", gf4, 2)
        assert x == (gf4.parse("[0,1]"), gf4.one)

    def test_wrong_length(self, gf7: Field) -> None:
        with pytest.raises(ParseError, match="expected 3 coordinates"):
            parse_element("[1,2]", gf7, 3)

    def test_needs_brackets(self, gf7: Field) -> None:
        with pytest.raises(ParseError):
            parse_element("1,2", gf7)


class TestAlgebraFiles:
    def test_dump_then_parse(self, zorn3: Algebra) -> None:
        A = parse_algebra(dump_algebra(zorn3))
        assert A.constants == zorn3.constants
        assert A.form.gram == zorn3.form.gram
        assert A.tag is Tag.HURWITZ
        assert A.labels == zorn3.labels
        assert A.unit == zorn3.unit

    def test_header(self) -> None:
        with pytest.raises(ParseError, match="dim d over"):
            parse_algebra("algebra zorn\n")

    def test_unknown_tag(self) -> None:
        with pytest.raises(ParseError, match="unknown tag"):
            parse_algebra("dim 1 over GF(3) tag magma\n1\n1\n2\n")

    def test_token_count(self) -> None:
        with pytest.raises(ParseError, match="expected 3 field elements"):
            parse_algebra("dim 1 over GF(3) tag hurwitz\n1 1\n")

    def test_comments_are_skipped(self) -> None:
        A = parse_algebra("# the ground field\ndim 1 over GF(3) tag hurwitz\n1\n\n1\n2\n")
        assert A.dim == 1
        assert A.norm(A.basis(0)) == 1


class TestMapFiles:
    def test_dump_then_parse(self, gf7: Field) -> None:
        M = tau_st(zorn(gf7)).matrix
        F, parsed = parse_map(dump_map(M, gf7))
        assert F == gf7
        assert parsed == M

    def test_field_mismatch(self, gf7: Field, gf3: Field) -> None:
        text = dump_map(tau_st(zorn(gf7)).matrix, gf7)
        with pytest.raises(ParseError, match="expected GF\\(3\\)"):
            parse_map(text, gf3)

    def test_entry_count(self, gf3: Field) -> None:
        with pytest.raises(ParseError, match="expected 4 entries"):
            parse_map("map 2 over GF(3)\n1 0\n0\n", gf3)


class TestChevalleyFiles:
    def test_labels_in_root_order(self, zorn3: Algebra) -> None:
        lines = dump_chevalley(chevalley_basis(zorn3)).splitlines()
        assert lines[0] == "chevalley over GF(3)"
        labels = [line.removeprefix("basis ") for line in lines if line.startswith("basis ")]
        assert labels == [r.label for r in ROOTS] + ["h1", "h2"]
        assert "e1-e2" in labels
        assert "-e3" in labels

    def test_blocks_are_map_files(self, zorn3: Algebra) -> None:
        CB = chevalley_basis(zorn3)
        expected = {r.label: CB.x[r] for r in ROOTS} | {"h1": CB.h1, "h2": CB.h2}
        blocks = dump_chevalley(CB).split("basis ")[1:]
        assert len(blocks) == 14
        for block in blocks:
            label, _, body = block.partition("\n")
            _, M = parse_map(body, zorn3.field)
            assert M == expected[label]


class TestClassifyInput:
    def test_algebra_only(self, gf3: Field) -> None:
        data = parse_classify_input("algebra split-okubo\n", gf3)
        assert data.algebra == "split-okubo"
        assert data.matrix is None
        assert data.element is None

    def test_element(self, gf3: Field) -> None:
        data = parse_classify_input("algebra para-zorn\nelement [1,1,0,0,0,0,0,0]\n", gf3)
        assert data.element == "[1,1,0,0,0,0,0,0]"

    def test_map(self, gf3: Field) -> None:
        data = parse_classify_input("algebra zorn\nmap 2 over GF(3)\n1 0\n0 1\n", gf3)
        assert data.matrix == ((gf3.one, gf3.zero), (gf3.zero, gf3.one))

    def test_missing_header(self, gf3: Field) -> None:
        with pytest.raises(ParseError, match="algebra <name>"):
            parse_classify_input("element [1]\n", gf3)

    def test_embedded_algebra_with_map(self, zorn3: Algebra) -> None:
        M = tau_st(zorn3).matrix
        data = parse_classify_input(dump_algebra(zorn3) + dump_map(M, zorn3.field), zorn3.field)
        assert data.embedded is not None
        assert data.embedded.constants == zorn3.constants
        assert data.algebra == "zorn"
        assert data.matrix == M

    def test_embedded_algebra_with_element(self, para_zorn3: Algebra) -> None:
        text = dump_algebra(para_zorn3) + "element [1,1,0,0,0,0,0,0]\n"
        data = parse_classify_input(text, para_zorn3.field)
        assert data.embedded.para_unit == para_zorn3.para_unit
        assert data.element == "[1,1,0,0,0,0,0,0]"

    def test_embedded_algebra_alone(self, gf3: Field) -> None:
        data = parse_classify_input(dump_algebra(para(zorn(gf3))), gf3)
        assert data.embedded.tag is Tag.PARA
        assert data.matrix is None
        assert data.element is None

    def test_embedded_field_mismatch(self, gf7: Field, gf3: Field) -> None:
        with pytest.raises(ParseError, match="expected GF\\(3\\)"):
            parse_classify_input(dump_algebra(zorn(gf7)), gf3)

    def test_embedded_truncated(self, gf3: Field) -> None:
        with pytest.raises(ParseError, match="truncated"):
            parse_classify_input("dim 1 over GF(3) tag hurwitz\n1\n", gf3)


class TestRendering:
    def test_table_cells_add_the_unit(self, zorn3: Algebra) -> None:
        labels, grid = table_cells(zorn3)
        assert labels[0] == "1"
        assert labels[1:] == list(zorn3.labels)
        assert grid[0][0] == "1"
        assert grid[0][1] == "e1"

    def test_table_text(self, zorn3: Algebra) -> None:
        lines = table_text(zorn3).splitlines()
        assert len(lines) == 10
        assert lines[0].startswith("·")
        assert "v3" in lines[0]

    def test_report_lines(self) -> None:
        report = Order3Class(kind=Order3Kind.OKUBO, field="Q", characteristic=0, fix_dim=4)
        lines = report_lines(report)
        assert lines[0] == "kind: okubo"
        assert "quaternion_split: unknown" in lines
        assert "fix_dim: 4" in lines

    def test_suite_table(self) -> None:
        result = SuiteResult(
            suite="table",
            field="GF(3)",
            checks=[CheckResult(id="products", anchor="[e1]·e1", passed=True)],
            duration=0.5,
        )
        table = suite_table(result)
        assert isinstance(table, Table)
        assert table.row_count == 1

    def test_suite_table_title_has_no_timing(self) -> None:
        result = SuiteResult(suite="table", field="GF(3)", checks=[], duration=12.5)
        assert suite_table(result).title == "table over GF(3)"


class TestFlatJson:
    def test_nested_reports_become_dotted_keys(self) -> None:
        order3 = Order3Class(kind=Order3Kind.TYPE1, field="GF(3)", characteristic=3, fix_dim=4, segre="(2^2,1^4)")
        cls = IdempotentClass(kind=IdempotentKind.QUATERNIONIC, element="e1 + e2", field="GF(3)", order3=order3)
        data = flat_json(cls)
        assert data["kind"] == "quaternionic"
        assert data["order3.kind"] == "type1"
        assert data["order3.segre"] == "(2^2,1^4)"
        assert "order3" not in data
        assert not any(isinstance(v, dict) for v in data.values())

    def test_lists_are_kept(self) -> None:
        result = SuiteResult(suite="table", field="GF(3)", checks=[CheckResult(id="unit", anchor="1", passed=True)])
        data = flat_json(result)
        assert data["checks"] == [{"id": "unit", "anchor": "1", "passed": True, "witness": ""}]
        assert "duration" not in data
