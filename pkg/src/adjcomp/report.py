"""Consistency table rendering and regression comparison.

Four table kinds, one row per model, columns keyed by adjective type
(AN intersectivity, non-subsectivity) or ordered type pair (AAN
intersectivity, pair intersectivity) in the shorthand S-I, S-NI,
NS-Pl, NS-Pr, A. Reference tables for eight public models ship as CSV
fixtures for regression comparison.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from importlib.resources import files
from typing import Sequence

from .lexicon import AdjectiveType
from .relations import ConsistencyCell

_TYPE_ORDER = (
    AdjectiveType.SUBSECTIVE_INTERSECTIVE,
    AdjectiveType.SUBSECTIVE_NON_INTERSECTIVE,
    AdjectiveType.NON_SUBSECTIVE_PLAIN,
    AdjectiveType.NON_SUBSECTIVE_PRIVATIVE,
    AdjectiveType.AMBIGUOUS,
)

# Ordered pairs enumerated second-type-major: all pairs ending in S-I,
# then all ending in S-NI, and so on.
_PAIR_ORDER = tuple((t1, t2) for t2 in _TYPE_ORDER for t1 in _TYPE_ORDER)


class TableKind(enum.Enum):
    AN_INTERSECTIVITY = "an-intersectivity"
    AAN_INTERSECTIVITY = "aan-intersectivity"
    PAIR_INTERSECTIVITY = "pair-intersectivity"
    NON_SUBSECTIVITY = "non-subsectivity"


_PAIR_KINDS = (TableKind.AAN_INTERSECTIVITY, TableKind.PAIR_INTERSECTIVITY)
_DECIMALS = {
    TableKind.AN_INTERSECTIVITY: 3,
    TableKind.AAN_INTERSECTIVITY: 4,
    TableKind.PAIR_INTERSECTIVITY: 4,
    TableKind.NON_SUBSECTIVITY: 4,
}

FORMATS = ("csv", "markdown", "records")


def column_labels(kind: TableKind) -> list[str]:
    if kind in _PAIR_KINDS:
        return [f"({a.shorthand}, {b.shorthand})" for a, b in _PAIR_ORDER]
    return [t.shorthand for t in _TYPE_ORDER]


def _group_label(group) -> str:
    if isinstance(group, AdjectiveType):
        return group.shorthand
    a, b = group
    return f"({a.shorthand}, {b.shorthand})"


@dataclass
class ResultsBundle:
    """One model's aggregated consistency cells plus run metadata."""

    model_id: str
    cells: dict[TableKind, list[ConsistencyCell]] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def cell_map(self, kind: TableKind) -> dict[str, ConsistencyCell]:
        return {_group_label(c.group): c for c in self.cells.get(kind, [])}


def _format_rate(rate: float, decimals: int) -> str:
    return f"{rate:.{decimals}f}"


def _rows(bundles: Sequence[ResultsBundle], kind: TableKind) -> list[list[str]]:
    decimals = _DECIMALS[kind]
    labels = column_labels(kind)
    rows = [["model"] + labels]
    for b in bundles:
        cmap = b.cell_map(kind)
        row = [b.model_id]
        for label in labels:
            cell = cmap.get(label)
            row.append("" if cell is None else _format_rate(cell.rate, decimals))
        rows.append(row)
    return rows


def render_table(
    bundles: ResultsBundle | Sequence[ResultsBundle],
    kind: TableKind | str,
    fmt: str = "csv",
    header_comment: str | None = None,
) -> str:
    """Render a table document; identical bundles give identical bytes.

    csv output is RFC-4180 style with '.' decimals; lines starting '#'
    (the optional header comment) are metadata and skipped by
    parse_table. records is line-delimited JSON at full precision.
    """
    if isinstance(bundles, ResultsBundle):
        bundles = [bundles]
    kind = TableKind(kind)
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "records":
        lines = []
        if header_comment is not None:
            lines.append(json.dumps({"comment": header_comment}))
        for b in bundles:
            for cell in b.cells.get(kind, []):
                lines.append(
                    json.dumps(
                        {
                            "model": b.model_id,
                            "table": kind.value,
                            "group": _group_label(cell.group),
                            "satisfied": cell.satisfied_count,
                            "total": cell.total_count,
                            "rate": cell.rate,
                        }
                    )
                )
        return "\n".join(lines) + "\n"
    rows = _rows(bundles, kind)
    if fmt == "csv":
        buf = io.StringIO()
        if header_comment is not None:
            buf.write(f"# {header_comment}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue()
    # markdown
    lines = []
    if header_comment is not None:
        lines.append(f"<!-- {header_comment} -->")
    lines.append("| " + " | ".join(rows[0]) + " |")
    lines.append("|" + "|".join([" --- "] * len(rows[0])) + "|")
    for row in rows[1:]:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> dict[str, dict[str, float]]:
    """Parse a rendered CSV table back into {model: {column: rate}}.

    '#'-prefixed lines are skipped; empty cells are omitted."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty table") from None
    if not header or header[0] != "model":
        raise ValueError("first column must be 'model'")
    out: dict[str, dict[str, float]] = {}
    for row in reader:
        model, cells = row[0], row[1:]
        out[model] = {
            col: float(val) for col, val in zip(header[1:], cells) if val != ""
        }
    return out


def load_reference_table(kind: TableKind | str) -> dict[str, dict[str, float]]:
    """Bundled reference rates for eight public models, one CSV per kind."""
    kind = TableKind(kind)
    name = kind.value.replace("-", "_")
    text = files("adjcomp").joinpath(f"data/reference/{name}.csv").read_text("utf-8")
    return parse_table(text)


@dataclass(frozen=True)
class Deviation:
    model: str
    column: str
    observed: float | None
    reference: float | None

    @property
    def missing(self) -> bool:
        return self.observed is None or self.reference is None

    @property
    def delta(self) -> float:
        if self.missing:
            raise ValueError("missing cell has no delta")
        return abs(self.observed - self.reference)


def compare_against_reference(
    bundle: ResultsBundle,
    kind: TableKind | str,
    reference: dict[str, dict[str, float]],
    tolerance: float,
    reference_model: str | None = None,
) -> list[Deviation]:
    """Per-cell |observed - reference| deviations above tolerance, plus
    missing cells on either side. reference_model selects the reference
    row (defaults to the bundle's model id)."""
    kind = TableKind(kind)
    model = reference_model if reference_model is not None else bundle.model_id
    if model not in reference:
        raise ValueError(
            f"reference table has no row for {model!r}; rows: {sorted(reference)}"
        )
    ref_row = reference[model]
    observed = {label: cell.rate for label, cell in bundle.cell_map(kind).items()}
    deviations = []
    for column in sorted(set(ref_row) | set(observed)):
        obs, ref = observed.get(column), ref_row.get(column)
        if obs is None or ref is None:
            deviations.append(
                Deviation(model=model, column=column, observed=obs, reference=ref)
            )
        elif abs(obs - ref) > tolerance:
            deviations.append(
                Deviation(model=model, column=column, observed=obs, reference=ref)
            )
    return deviations
