"""Smoke tests for all CLI commands using typer CliRunner."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

import okubo.settings as settings_module
from okubo.compalg import zorn
from okubo.fields import GF
from okubo.formats import dump_map
from okubo.linalg import identity
from okubo.main import app
from okubo.maps import normal_form, tau_st

runner = CliRunner()


@pytest.fixture(autouse=True)
def reset_lru_cache():
    settings_module._load_toml.cache_clear()
    yield
    settings_module._load_toml.cache_clear()


@pytest.fixture(autouse=True)
def no_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings_module, "CONFIG_PATH", tmp_path / "nonexistent.toml")
    for name in ("OKUBO_PROFILE", "OKUBO_SEED", "OKUBO_MAX_HEIGHT", "OKUBO_RANDOM_PAIRS"):
        monkeypatch.delenv(name, raising=False)


def _input(tmp_path: Path, text: str) -> str:
    path = tmp_path / "input.txt"
    path.write_text(text)
    return str(path)


class TestNoArgs:
    def test_shows_help_not_error(self) -> None:
        result = runner.invoke(app, [])
        # no_args_is_help=True: CliRunner exits 2 (known Typer quirk) but shows help
        assert "Missing command" not in result.output
        assert "Commands" in result.output


class TestListings:
    def test_algebras(self) -> None:
        result = runner.invoke(app, ["algebras"])
        assert result.exit_code == 0
        assert "split-okubo" in result.output

    def test_suites(self) -> None:
        result = runner.invoke(app, ["suites"])
        assert result.exit_code == 0
        assert "order3-char3" in result.output

    def test_suites_show_aliases(self) -> None:
        result = runner.invoke(app, ["suites"])
        assert result.exit_code == 0
        assert "thm6.3" in result.output
        assert "prop8.6" in result.output

    def test_config_show(self) -> None:
        result = runner.invoke(app, ["config-show"])
        assert result.exit_code == 0
        assert "not present" in result.output


class TestTable:
    def test_zorn(self) -> None:
        result = runner.invoke(app, ["table", "GF(3)", "zorn"])
        assert result.exit_code == 0
        assert "v3" in result.output
        assert "tag hurwitz" in result.output

    def test_unknown_algebra(self) -> None:
        result = runner.invoke(app, ["table", "GF(3)", "octonions"])
        assert result.exit_code == 2
        assert "unknown algebra" in result.output

    def test_bad_field(self) -> None:
        result = runner.invoke(app, ["table", "GF(6)", "zorn"])
        assert result.exit_code == 2

    def test_dump(self) -> None:
        result = runner.invoke(app, ["dump", "GF(2)", "zorn"])
        assert result.exit_code == 0
        assert result.output.startswith("dim 8 over GF(2) tag hurwitz")

    def test_dump_chevalley(self) -> None:
        result = runner.invoke(app, ["dump", "GF(3)", "chevalley"])
        assert result.exit_code == 0
        assert result.output.startswith("chevalley over GF(3)\nbasis ")
        assert result.output.count("basis ") == 14
        assert "basis e1-e2\nmap 8 over GF(3)" in result.output
        assert "basis h2\n" in result.output


class TestVerify:
    def test_passing_suite(self) -> None:
        result = runner.invoke(app, ["verify", "table", "GF(3)"])
        assert result.exit_code == 0
        assert "3/3 checks passed" in result.output

    def test_json(self) -> None:
        result = runner.invoke(app, ["verify", "table", "GF(7)", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["suite"] == "table"
        assert all(check["passed"] for check in data["checks"])

    def test_wrong_characteristic(self) -> None:
        result = runner.invoke(app, ["verify", "order3-char3", "GF(7)"])
        assert result.exit_code == 2
        assert "needs characteristic 3" in result.output

    def test_unknown_suite(self) -> None:
        result = runner.invoke(app, ["verify", "nope", "GF(3)"])
        assert result.exit_code == 2

    def test_text_output_is_reproducible(self) -> None:
        first = runner.invoke(app, ["verify", "composition", "GF(2)"])
        second = runner.invoke(app, ["verify", "composition", "GF(2)"])
        assert first.exit_code == 0
        assert first.output == second.output

    def test_json_output_is_reproducible(self) -> None:
        first = runner.invoke(app, ["verify", "composition", "GF(2)", "--json"])
        second = runner.invoke(app, ["verify", "composition", "GF(2)", "--json"])
        assert first.exit_code == 0
        assert first.output == second.output
        assert "duration" not in json.loads(first.output)

    @pytest.mark.parametrize(("alias", "suite"), [("thm6.3", "order3-char3"), ("prop8.6", "idempotents")])
    def test_statement_aliases(self, alias: str, suite: str) -> None:
        result = runner.invoke(app, ["verify", alias, "GF(3)", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["suite"] == suite


class TestClassify:
    def test_okubo_map(self, tmp_path: Path) -> None:
        F = GF(7)
        path = _input(tmp_path, "algebra zorn\n" + dump_map(tau_st(zorn(F)).matrix, F))
        result = runner.invoke(app, ["classify", "auto", "GF(7)", path])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "kind: okubo"

    def test_type1_json(self, tmp_path: Path) -> None:
        F = GF(3)
        path = _input(tmp_path, "algebra zorn\n" + dump_map(normal_form(zorn(F), "type1").matrix, F))
        result = runner.invoke(app, ["classify", "auto", "GF(3)", path, "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["kind"] == "type1"

    def test_not_an_automorphism(self, tmp_path: Path) -> None:
        F = GF(3)
        rows = [list(row) for row in identity(F, 8)]
        rows[2][2] = F(2)
        path = _input(tmp_path, "algebra zorn\n" + dump_map(tuple(map(tuple, rows)), F))
        result = runner.invoke(app, ["classify", "auto", "GF(3)", path])
        assert result.exit_code == 2
        assert "Not an automorphism" in result.output

    def test_idempotent(self, tmp_path: Path) -> None:
        path = _input(tmp_path, "algebra para-zorn\nelement [1,1,0,0,0,0,0,0]\n")
        result = runner.invoke(app, ["classify", "auto", "GF(3)", path])
        assert result.exit_code == 0
        assert "kind: para-unit" in result.output

    def test_inventory(self, tmp_path: Path) -> None:
        path = _input(tmp_path, "algebra split-okubo\n")
        result = runner.invoke(app, ["classify", "idem", "GF(3)", path, "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert len(data["singular"]) == 8
        assert len(data["quaternionic"]) == 1

    def test_symmetric(self, tmp_path: Path) -> None:
        path = _input(tmp_path, "algebra para-zorn\n")
        result = runner.invoke(app, ["classify", "auto", "GF(3)", path])
        assert result.exit_code == 0
        assert "kind: para-hurwitz-form" in result.output

    def test_idem_rejects_maps(self, tmp_path: Path) -> None:
        F = GF(7)
        path = _input(tmp_path, "algebra zorn\n" + dump_map(tau_st(zorn(F)).matrix, F))
        result = runner.invoke(app, ["classify", "idem", "GF(7)", path])
        assert result.exit_code == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["classify", "auto", "GF(3)", str(tmp_path / "missing.txt")])
        assert result.exit_code == 2
        assert "cannot read" in result.output

    def test_dumped_para_zorn(self, tmp_path: Path) -> None:
        dumped = runner.invoke(app, ["dump", "GF(3)", "para-zorn"])
        assert dumped.exit_code == 0
        result = runner.invoke(app, ["classify", "auto", "GF(3)", _input(tmp_path, dumped.output)])
        assert result.exit_code == 0
        assert "kind: para-hurwitz-form" in result.output

    def test_dumped_zorn_with_map(self, tmp_path: Path) -> None:
        F = GF(7)
        dumped = runner.invoke(app, ["dump", "GF(7)", "zorn"])
        path = _input(tmp_path, dumped.output + dump_map(tau_st(zorn(F)).matrix, F))
        result = runner.invoke(app, ["classify", "auto", "GF(7)", path])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "kind: okubo"

    def test_dumped_algebra_over_another_field(self, tmp_path: Path) -> None:
        dumped = runner.invoke(app, ["dump", "GF(7)", "zorn"])
        result = runner.invoke(app, ["classify", "auto", "GF(3)", _input(tmp_path, dumped.output)])
        assert result.exit_code == 2

    def test_json_is_flat(self, tmp_path: Path) -> None:
        path = _input(tmp_path, "algebra split-okubo\n")
        result = runner.invoke(app, ["classify", "auto", "GF(3)", path, "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["kind"] == "okubo"
        assert data["order3.kind"] == "type1"
        assert not any(isinstance(value, dict) for value in data.values())


class TestGmap:
    def test_split_okubo(self) -> None:
        result = runner.invoke(app, ["gmap", "GF(3)", "split-okubo", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["dimension"] == 1

    def test_f3t(self) -> None:
        result = runner.invoke(app, ["gmap", "F3(t)", "kw:split:t"])
        assert result.exit_code == 0
        assert "dimension: 3" in result.output

    def test_wrong_characteristic(self) -> None:
        result = runner.invoke(app, ["gmap", "GF(7)", "split-okubo"])
        assert result.exit_code == 2
