"""Schema-validated loading of benchmark CSV files.

The producing tool writes a leading ``# schema=1 kind=<kind>`` comment, a
header row, then comma-separated rows where floats use ``repr`` and empty
cells mean ``None``.  Everything rendered by this package comes from these
files; any deviation from the declared schema is a :class:`SchemaError`.
"""

from __future__ import annotations

from pathlib import Path

SCHEMA_VERSION = "1"

#: Columns every plot of a given kind relies on. Extra columns are allowed.
REQUIRED_COLUMNS = {
    "trace": ("round", "edges_removed_total", "n_components", "modularity"),
    "misalign": ("network", "t", "mean_intra", "mean_inter", "mean_all", "ratio"),
    "boxes": ("trial", "method", "round", "q", "ari"),
    "nmi_mu": ("mu", "trial", "method", "nmi"),
}


class SchemaError(Exception):
    """The CSV does not match the declared schema."""


def _parse_cell(text: str):
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def load_rows(path) -> tuple[list[str], list[dict], str]:
    """Read one CSV; return (header columns, rows, kind).

    Raises SchemaError when the schema comment is absent, has the wrong
    version, lacks a kind, or when a row does not match the header.
    """
    path = Path(path)
    kind: str | None = None
    schema: str | None = None
    header: list[str] | None = None
    rows: list[dict] = []
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                fields = dict(
                    part.split("=", 1) for part in line[1:].split() if "=" in part
                )
                schema = fields.get("schema", schema)
                kind = fields.get("kind", kind)
                continue
            if header is None:
                header = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise SchemaError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}"
                )
            rows.append({col: _parse_cell(cell) for col, cell in zip(header, cells)})
    if schema is None:
        raise SchemaError(f"{path}: missing '# schema=...' comment")
    if schema != SCHEMA_VERSION:
        raise SchemaError(f"{path}: unsupported schema {schema}")
    if kind is None:
        raise SchemaError(f"{path}: schema comment lacks kind=")
    if header is None:
        raise SchemaError(f"{path}: no header row")
    return header, rows, kind


def load_kind(path, expected_kind: str) -> tuple[list[str], list[dict]]:
    """Load a CSV and require a specific kind plus its mandatory columns."""
    header, rows, kind = load_rows(path)
    if kind != expected_kind:
        raise SchemaError(f"{path}: kind={kind}, expected {expected_kind}")
    missing = [col for col in REQUIRED_COLUMNS[expected_kind] if col not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns: {', '.join(missing)}")
    return header, rows


def peek_kind(path) -> str:
    """Return the kind a CSV declares (for dispatch), validating the schema."""
    return load_rows(path)[2]
