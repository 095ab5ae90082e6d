"""okubo CLI: tables, verification suites and classification reports."""

import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import Annotated

import typer
from pydantic import BaseModel
from rich import print as rprint
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from okubo.catalog import build, build_symmetric
from okubo.classify import (
    classify_idempotent,
    classify_order3,
    classify_symmetric_composition,
    g_image,
    idempotent_inventory,
)
from okubo.compalg import Tag
from okubo.errors import (
    ClassificationError,
    FieldError,
    InfeasibleError,
    NotAnAutomorphismError,
    OkuboError,
    ParseError,
    PreconditionError,
)
from okubo.fields import Field, parse_field
from okubo.formats import (
    dump_algebra,
    dump_chevalley,
    flat_json,
    parse_classify_input,
    parse_element,
    report_lines,
    suite_table,
    table_text,
)
from okubo.liealg import chevalley_basis
from okubo.maps import Automorphism
from okubo.settings import CONFIG_PATH, OkuboSettings, get_settings
from okubo.suites import ALIASES, SUITES, run_suite

app = typer.Typer(help="okubo: composition algebras, order-3 automorphisms and Okubo algebras", no_args_is_help=True)

log = logging.getLogger("okubo")

JsonOpt = Annotated[bool, typer.Option("--json", help="Print the report as JSON")]
SeedOpt = Annotated[int | None, typer.Option("--seed", help="Seed for randomized checks")]
HeightOpt = Annotated[int | None, typer.Option("--max-height", help="Coefficient height for lattice searches")]
ProfileOpt = Annotated[
    str | None,
    typer.Option("--profile", "-p", help="Profile name from ~/.config/okubo/config.toml"),
]
FieldArg = Annotated[str, typer.Argument(help='Field spec: "GF(3)", "GF(9)", "GF(2^2; 1,1)", "Q" or "F3(t)"')]
NameArg = Annotated[str, typer.Argument(help="Algebra name, see `okubo algebras`")]


class Mode(StrEnum):
    AUTO = "auto"
    IDEM = "idem"


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log search and strategy decisions")] = False,
) -> None:
    if verbose:
        handler = RichHandler(show_path=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.DEBUG)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


@contextmanager
def _handled() -> Iterator[None]:
    """Input errors exit with 2, failed classifications with 1."""
    try:
        yield
    except NotAnAutomorphismError as exc:
        rprint(f"[red]Not an automorphism: {escape(str(exc))}[/red]")
        raise typer.Exit(2) from exc
    except (ParseError, FieldError, PreconditionError, ZeroDivisionError) as exc:
        rprint(f"[red]{escape(str(exc))}[/red]")
        raise typer.Exit(2) from exc
    except (ClassificationError, InfeasibleError, OkuboError) as exc:
        rprint(f"[red]{type(exc).__name__}: {escape(str(exc))}[/red]")
        raise typer.Exit(1) from exc


def _field(spec: str) -> Field:
    try:
        return parse_field(spec)
    except FieldError as exc:
        raise ParseError(f"bad field spec {spec!r}: {exc}") from exc


def _settings(profile: str | None, seed: int | None = None, max_height: int | None = None) -> OkuboSettings:
    return get_settings(profile, seed=seed, max_height=max_height)


def _echo_json(report: BaseModel) -> None:
    typer.echo(json.dumps(flat_json(report), indent=2, ensure_ascii=False))


def _emit(report: BaseModel, as_json: bool) -> None:
    if as_json:
        _echo_json(report)
        return
    for line in report_lines(report):
        typer.echo(line)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@app.command("table")
def table_cmd(field: FieldArg, name: NameArg, profile: ProfileOpt = None) -> None:
    """Print the multiplication table of a named algebra."""
    with _handled():
        A = build(_field(field), name, _settings(profile))
        typer.echo(f"{A.name or name} over {A.field.spec}, tag {A.tag}")
        typer.echo(table_text(A))


@app.command("dump")
def dump_cmd(field: FieldArg, name: NameArg, profile: ProfileOpt = None) -> None:
    """Print a named algebra in the algebra file format; `chevalley` prints the Chevalley basis of zorn."""
    with _handled():
        F, settings = _field(field), _settings(profile)
        if name == "chevalley":
            typer.echo(dump_chevalley(chevalley_basis(build(F, "zorn", settings))), nl=False)
            return
        typer.echo(dump_algebra(build(F, name, settings)), nl=False)


@app.command("algebras")
def algebras_cmd() -> None:
    """List the algebra names understood by the other commands."""
    table = Table(title="Algebras")
    table.add_column("Name", style="bold")
    table.add_column("Meaning")
    table.add_row("zorn", "split Cayley algebra in its canonical basis")
    table.add_row("para-zorn", "para-Hurwitz algebra of zorn")
    table.add_row("split-okubo", "split Okubo algebra")
    table.add_row("para-quadratic:<b>,<c>", "para-Hurwitz algebra of F[ξ]/(ξ² − bξ − c)")
    table.add_row("kw:split:<α>", "K ⊕ W with split K and a = (α, α⁻¹), characteristic 3")
    table.add_row("kw:<b>,<c>:<a0>,<a1>", "K ⊕ W with K = F[ξ]/(ξ² − bξ − c), a = a0 + a1ξ")
    table.add_row("okubo-kw:<...>", "Petersson algebra of τ_(K,a) on a kw algebra")
    rprint(table)


@app.command("suites")
def suites_cmd() -> None:
    """List the verification suites."""
    table = Table(title="Verification suites")
    table.add_column("Suite", style="bold")
    table.add_column("Fields")
    table.add_column("Statement")
    for suite in SUITES.values():
        fields = {"3": "characteristic 3", "not-3": "characteristic ≠ 3"}.get(suite.characteristic or "", "any")
        if suite.finite_only:
            fields += ", finite"
        aliases = [alias for alias, target in ALIASES.items() if target == suite.name]
        label = suite.name + (f" ({', '.join(aliases)})" if aliases else "")
        table.add_row(label, fields, escape(suite.anchor))
    rprint(table)


@app.command("verify")
def verify_cmd(
    suite: Annotated[str, typer.Argument(help="Suite name, see `okubo suites`")],
    field: FieldArg,
    as_json: JsonOpt = False,
    seed: SeedOpt = None,
    max_height: HeightOpt = None,
    profile: ProfileOpt = None,
) -> None:
    """Run a verification suite; exits with 1 when a check fails."""
    with _handled():
        result = run_suite(suite, _field(field), _settings(profile, seed, max_height))
    if as_json:
        _echo_json(result)
    else:
        rprint(suite_table(result))
        passed = sum(c.passed for c in result.checks)
        typer.echo(f"{passed}/{len(result.checks)} checks passed")
    if not result.passed:
        raise typer.Exit(1)


@app.command("classify")
def classify_cmd(
    mode: Annotated[Mode, typer.Argument(help="auto: map, element or algebra; idem: element or inventory")],
    field: FieldArg,
    file: Annotated[
        Path,
        typer.Argument(help="Input file: 'algebra <name>' or an algebra file, then a map block or an element line"),
    ],
    as_json: JsonOpt = False,
    seed: SeedOpt = None,
    max_height: HeightOpt = None,
    profile: ProfileOpt = None,
) -> None:
    """Classify an order-3 automorphism, an idempotent or a symmetric composition algebra."""
    with _handled():
        F = _field(field)
        settings = _settings(profile, seed, max_height)
        try:
            text = file.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {file}: {exc.strerror}") from exc
        data = parse_classify_input(text, F)
        named = build if data.matrix is not None else build_symmetric
        A = data.embedded or named(F, data.algebra, settings)

        if data.matrix is not None:
            if mode is Mode.IDEM:
                raise ParseError("idem mode takes an element line, not a map")
            if A.tag is not Tag.HURWITZ:
                raise PreconditionError(f"maps are classified on Hurwitz algebras, {data.algebra} is {A.tag}")
            report = classify_order3(A, Automorphism(A, data.matrix), settings)
        elif data.element is not None:
            report = classify_idempotent(A, parse_element(data.element, F, A.dim), settings)
        elif mode is Mode.IDEM:
            report = idempotent_inventory(A, settings)
        else:
            report = classify_symmetric_composition(A, settings)
        _emit(report, as_json)


@app.command("gmap")
def gmap_cmd(field: FieldArg, name: NameArg, as_json: JsonOpt = False, profile: ProfileOpt = None) -> None:
    """Values of g(x) = n(x, x*x) on the basis and the dimension of its image over F³."""
    with _handled():
        S = build_symmetric(_field(field), name, _settings(profile))
        _emit(g_image(S), as_json)


@app.command("config-show")
def config_show(profile: ProfileOpt = None) -> None:
    """Show resolved configuration."""
    with _handled():
        settings = get_settings(profile)

    table = Table(title="okubo configuration")
    table.add_column("Field", style="bold")
    table.add_column("Value")
    table.add_row("config file", str(CONFIG_PATH) if CONFIG_PATH.exists() else "[dim](not present)[/dim]")
    for key, value in settings.model_dump().items():
        table.add_row(key, str(value))
    rprint(table)
