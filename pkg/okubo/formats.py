"""Text formats and report rendering.

Algebra file::

    dim d over <field-spec> tag <tag>
    [labels l0 l1 ...]
    [unit [c0,...]]
    d³ structure constants, row-major in (i, j, k)
    d norm values on the basis
    d² polar Gram entries

Map file::

    map d over <field-spec>
    d² entries, column-major (one column per line)

Chevalley file: a ``chevalley over <field-spec>`` line, then for each root label (``e1-e2``, ``-e3``, ...)
and for ``h1``, ``h2`` a ``basis <label>`` line followed by a map block.

Classify input: a line ``algebra <name>``, or an embedded algebra file, optionally followed by a map block
or ``element [c0,...]``.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel
from rich.markup import escape
from rich.table import Table

from okubo.catalog import split_top
from okubo.compalg import Algebra, QuadraticForm, Tag
from okubo.errors import FieldError, ParseError
from okubo.fields import Field, parse_field
from okubo.liealg import ROOTS, ChevalleyBasis
from okubo.linalg import Matrix, Vector, columns, from_columns
from okubo.models import SuiteResult

_ALGEBRA_HEADER = re.compile(r"dim\s+(\d+)\s+over\s+(.+?)\s+tag\s+(\S+)\s*$")
_MAP_HEADER = re.compile(r"map\s+(\d+)\s+over\s+(.+?)\s*$")
_METADATA = ("labels", "unit", "para-unit", "name")


def _content_lines(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]


def _field(spec: str) -> Field:
    try:
        return parse_field(spec)
    except FieldError as exc:
        raise ParseError(f"bad field spec {spec!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def format_element(x: Vector) -> str:
    return "[" + ",".join(str(c) for c in x) + "]"


def parse_element(text: str, F: Field, dim: int | None = None) -> Vector:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"an element is a bracketed coordinate list, got {text!r}")
    parts = [p for p in split_top(body[1:-1]) if p]
    if dim is not None and len(parts) != dim:
        raise ParseError(f"expected {dim} coordinates, got {len(parts)}")
    return tuple(F.parse(p) for p in parts)


# ---------------------------------------------------------------------------
# Algebra files
# ---------------------------------------------------------------------------


def dump_algebra(A: Algebra) -> str:
    F, d = A.field, A.dim
    lines = [f"dim {d} over {F.spec} tag {A.tag}"]
    if A.name:
        lines.append(f"name {A.name}")
    lines.append("labels " + " ".join(A.labels))
    if A.unit is not None:
        lines.append("unit " + format_element(A.unit))
    if A.para_unit is not None:
        lines.append("para-unit " + format_element(A.para_unit))
    for i in range(d):
        for j in range(d):
            lines.append(" ".join(str(c) for c in A.constants[i][j]))
    lines.append(" ".join(str(c) for c in A.form.diagonal))
    lines += [" ".join(str(c) for c in row) for row in A.form.gram]
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> Algebra:
    lines = _content_lines(text)
    if not lines or not (m := _ALGEBRA_HEADER.match(lines[0])):
        raise ParseError("algebra file must start with 'dim d over <field> tag <tag>'")
    d, F = int(m.group(1)), _field(m.group(2))
    try:
        tag = Tag(m.group(3))
    except ValueError as exc:
        raise ParseError(f"unknown tag {m.group(3)!r}; expected one of {', '.join(Tag)}") from exc

    meta: dict[str, str] = {}
    tokens: list[str] = []
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key in _METADATA:
            meta[key] = rest.strip()
        else:
            tokens += line.split()
    expected = d**3 + d + d * d
    if len(tokens) != expected:
        raise ParseError(f"expected {expected} field elements for dimension {d}, got {len(tokens)}")
    values = [F.parse(t) for t in tokens]
    cube, rest = values[: d**3], values[d**3 :]
    constants = tuple(
        tuple(tuple(cube[(i * d + j) * d : (i * d + j + 1) * d]) for j in range(d)) for i in range(d)
    )
    diagonal = tuple(rest[:d])
    gram = tuple(tuple(rest[d + r * d : d + (r + 1) * d]) for r in range(d))
    labels = tuple(meta["labels"].split()) if "labels" in meta else ()
    if labels and len(labels) != d:
        raise ParseError(f"expected {d} labels, got {len(labels)}")
    return Algebra(
        field=F,
        constants=constants,
        form=QuadraticForm(diagonal, gram),
        tag=tag,
        unit=parse_element(meta["unit"], F, d) if "unit" in meta else None,
        para_unit=parse_element(meta["para-unit"], F, d) if "para-unit" in meta else None,
        labels=labels,
        name=meta.get("name", ""),
    )


# ---------------------------------------------------------------------------
# Map files
# ---------------------------------------------------------------------------


def dump_map(M: Matrix, F: Field) -> str:
    lines = [f"map {len(M)} over {F.spec}"]
    lines += [" ".join(str(c) for c in col) for col in columns(M)]
    return "\n".join(lines) + "\n"


def _parse_map_lines(lines: list[str], F: Field | None = None) -> tuple[Field, Matrix]:
    if not lines or not (m := _MAP_HEADER.match(lines[0])):
        raise ParseError("map block must start with 'map d over <field>'")
    d, G = int(m.group(1)), _field(m.group(2))
    if F is not None and G != F:
        raise ParseError(f"map is over {G.spec}, expected {F.spec}")
    tokens = [t for line in lines[1:] for t in line.split()]
    if len(tokens) != d * d:
        raise ParseError(f"expected {d * d} entries for a {d}×{d} map, got {len(tokens)}")
    values = [G.parse(t) for t in tokens]
    return G, from_columns([values[c * d : (c + 1) * d] for c in range(d)])


def parse_map(text: str, F: Field | None = None) -> tuple[Field, Matrix]:
    return _parse_map_lines(_content_lines(text), F)


def dump_chevalley(CB: ChevalleyBasis) -> str:
    F = CB.algebra.field
    blocks = [(r.label, CB.x[r]) for r in ROOTS] + [("h1", CB.h1), ("h2", CB.h2)]
    lines = [f"chevalley over {F.spec}"]
    for label, M in blocks:
        lines += [f"basis {label}", dump_map(M, F).rstrip("\n")]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Classify inputs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifyInput:
    algebra: str
    embedded: Algebra | None = None
    matrix: Matrix | None = None
    element: str | None = None  # parsed once the algebra is built


def _split_embedded(lines: list[str]) -> tuple[list[str], list[str]]:
    """Algebra file lines and the rest; the algebra block ends after its d³ + d + d² field elements."""
    m = _ALGEBRA_HEADER.match(lines[0])
    d = int(m.group(1))
    needed = d**3 + d + d * d
    for end in range(1, len(lines) + 1):
        line = lines[end - 1]
        if end > 1 and line.partition(" ")[0] not in _METADATA:
            needed -= len(line.split())
        if needed <= 0:
            return lines[:end], lines[end:]
    raise ParseError(f"embedded algebra of dimension {d} is truncated")


def parse_classify_input(text: str, F: Field) -> ClassifyInput:
    lines = _content_lines(text)
    embedded = None
    if lines and _ALGEBRA_HEADER.match(lines[0]):
        head, body = _split_embedded(lines)
        embedded = parse_algebra("\n".join(head))
        if embedded.field != F:
            raise ParseError(f"embedded algebra is over {embedded.field.spec}, expected {F.spec}")
        name = embedded.name or "embedded"
    elif lines and lines[0].startswith("algebra "):
        name = lines[0].removeprefix("algebra ").strip()
        body = lines[1:]
    else:
        raise ParseError("classify input must start with 'algebra <name>' or 'dim d over <field> tag <tag>'")
    if not body:
        return ClassifyInput(name, embedded)
    if body[0].startswith("element "):
        if len(body) != 1:
            raise ParseError("an element input has exactly one 'element [...]' line")
        return ClassifyInput(name, embedded, element=body[0].removeprefix("element ").strip())
    _, M = _parse_map_lines(body, F)
    return ClassifyInput(name, embedded, matrix=M)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _flat_items(data: dict, prefix: str = "") -> Iterator[tuple[str, Any]]:
    """Nested objects folded into dotted keys; lists and scalars kept as they are."""
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flat_items(value, f"{name}.")
        else:
            yield name, value


def flat_json(model: BaseModel) -> dict[str, Any]:
    """The JSON form of a report as one flat object, e.g. `order3.kind`."""
    return dict(_flat_items(model.model_dump(mode="json")))


def _flatten(data: dict) -> list[tuple[str, str]]:
    rows: list[tuple[str, str]] = []
    for name, value in _flat_items(data):
        if value is None or value == []:
            continue
        if isinstance(value, list):
            rows.append((name, ", ".join(map(str, value))))
        elif isinstance(value, bool):
            rows.append((name, "yes" if value else "no"))
        else:
            rows.append((name, str(value)))
    return rows


def report_lines(model: BaseModel) -> list[str]:
    """"key: value" lines, `kind` first, unknown (None) three-valued answers shown as "unknown"."""
    data = model.model_dump(mode="json")
    rows = _flatten(data)
    for key in ("quaternion_split", "closed_form_match", "singular_match"):
        if key in data and data[key] is None:
            rows.append((key, "unknown"))
    rows.sort(key=lambda kv: kv[0] != "kind")
    return [f"{k}: {v}" for k, v in rows]


def _cell(A: Algebra, one: Vector | None, x: Vector) -> str:
    if one is not None and x == one:
        return "1"
    if one is not None and x == tuple(-c for c in one):
        return "-1"
    return A.describe(x)


def _unit_like(A: Algebra) -> Vector | None:
    for candidate in (A.unit, A.para_unit, A.parent.unit if A.parent is not None else None):
        if candidate is not None:
            return candidate
    return None


def table_cells(A: Algebra) -> tuple[list[str], list[list[str]]]:
    """Row/column labels and the products; "1" is added when A has a unit, para-unit or parent unit."""
    one = _unit_like(A)
    labels = list(A.labels)
    vectors = [A.basis(i) for i in range(A.dim)]
    if one is not None and one not in vectors:
        labels.insert(0, "1")
        vectors.insert(0, one)
    grid = [[_cell(A, one, A.mul(x, y)) for y in vectors] for x in vectors]
    return labels, grid


def table_text(A: Algebra) -> str:
    """The multiplication table as aligned plain text, one row per line."""
    labels, grid = table_cells(A)
    rows = [["·", *labels]] + [[label, *row] for label, row in zip(labels, grid)]
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def suite_table(result: SuiteResult) -> Table:
    table = Table(title=f"{result.suite} over {result.field}")
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    table.add_column("Statement")
    table.add_column("Witness", style="dim")
    for check in result.checks:
        status = "[green]✓[/green]" if check.passed else "[red]✗[/red]"
        table.add_row(check.id, status, escape(check.anchor), escape(check.witness))
    return table
