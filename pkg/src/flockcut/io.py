"""File formats: edge lists, a minimal GML subset, LFR benchmark files,
partition files, and schema-versioned CSV tables.

All parse failures raise ParseError with the offending path and line.
Floats are written with repr(), which round-trips exactly.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph, Partition, build_graph

SCHEMA_VERSION = 1


class ParseError(ValueError):
    pass


@dataclass(eq=False)
class Dataset:
    """A loaded network plus whatever side information the file carried."""

    graph: Graph
    names: list[str] | None = None
    truth: Partition | None = None
    meta: dict = field(default_factory=dict)


# -- edge lists -------------------------------------------------------------


def read_edge_list(path, indexing: str = "zero") -> Graph:
    """Read "u v" pairs, one per line. '#' starts a comment.

    indexing="one" shifts ids down by one (LFR network.dat convention,
    where every edge also appears twice; duplicates collapse). A file that
    duplicates only some pairs in both orientations gets a warning.
    """
    if indexing not in ("zero", "one"):
        raise ValueError('indexing must be "zero" or "one"')
    shift = 0 if indexing == "zero" else 1
    path = Path(path)
    pairs: list[tuple[int, int]] = []
    orientations: dict[tuple[int, int], set[tuple[int, int]]] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected two vertex ids")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: vertex ids must be integers") from None
            u -= shift
            v -= shift
            if u < 0 or v < 0:
                raise ParseError(
                    f"{path}:{lineno}: negative vertex id after applying {indexing} indexing"
                )
            pairs.append((u, v))
            if u != v:
                key = (u, v) if u < v else (v, u)
                orientations.setdefault(key, set()).add((u, v))
    n = max((max(u, v) for u, v in pairs), default=-1) + 1
    twice = sum(1 for dirs in orientations.values() if len(dirs) == 2)
    once = len(orientations) - twice
    if twice and once:
        warnings.warn(
            f"{path}: {twice} edges appear in both orientations but {once} in one;"
            " the file mixes duplicated and single listings",
            stacklevel=2,
        )
    return build_graph(n, pairs)


def write_edge_list(path, g: Graph, indexing: str = "zero") -> None:
    if indexing not in ("zero", "one"):
        raise ValueError('indexing must be "zero" or "one"')
    shift = 0 if indexing == "zero" else 1
    with open(path, "w") as handle:
        for _, u, v in g.edges():
            handle.write(f"{u + shift} {v + shift}\n")


# -- GML subset ---------------------------------------------------------------

_TOKEN_RE = re.compile(r'"[^"]*"|\[|\]|[^\s\[\]"]+')


def _parse_gml_block(tokens: list[str], pos: int, path) -> tuple[list, int]:
    """Parse tokens after an opening '[' into (key, value) pairs."""
    items: list[tuple[str, object]] = []
    while pos < len(tokens):
        tok = tokens[pos]
        if tok == "]":
            return items, pos + 1
        if tok == "[":
            raise ParseError(f"{path}: unexpected '[' in GML input")
        key = tok
        pos += 1
        if pos >= len(tokens):
            raise ParseError(f"{path}: key '{key}' has no value")
        if tokens[pos] == "[":
            nested, pos = _parse_gml_block(tokens, pos + 1, path)
            items.append((key, nested))
        else:
            items.append((key, tokens[pos]))
            pos += 1
    raise ParseError(f"{path}: unterminated GML block")


def _scalar(value: object):
    if isinstance(value, list):
        return None
    text = str(value)
    if text.startswith('"') and text.endswith('"'):
        return text[1:-1]
    try:
        return int(text)
    except ValueError:
        return text


def read_gml_subset(path) -> Dataset:
    """Read the GML subset used by the classic benchmark files.

    Understood keys: graph/node/edge blocks, node id/label/value,
    edge source/target. Anything else is ignored. Directed graphs are
    rejected. Node ids may be arbitrary integers; they are mapped to
    0..n-1 in file order. A ground-truth partition is derived from node
    `value` entries when every node has one.
    """
    path = Path(path)
    tokens = _TOKEN_RE.findall(path.read_text())
    try:
        start = tokens.index("graph")
    except ValueError:
        raise ParseError(f"{path}: no 'graph' block found") from None
    if start + 1 >= len(tokens) or tokens[start + 1] != "[":
        raise ParseError(f"{path}: 'graph' is not followed by a block")
    items, _ = _parse_gml_block(tokens, start + 2, path)

    ids: list[int] = []
    labels: list[str | None] = []
    values: list[object] = []
    edge_refs: list[tuple[int, int]] = []
    for key, value in items:
        if key == "directed" and _scalar(value) == 1:
            raise ParseError(f"{path}: directed graphs are not supported")
        if key == "node" and isinstance(value, list):
            fields = dict((k, v) for k, v in value if not isinstance(v, list))
            if "id" not in fields:
                raise ParseError(f"{path}: node without id")
            node_id = _scalar(fields["id"])
            if not isinstance(node_id, int):
                raise ParseError(f"{path}: node id '{fields['id']}' is not an integer")
            ids.append(node_id)
            label = _scalar(fields["label"]) if "label" in fields else None
            labels.append(str(label) if label is not None else None)
            values.append(_scalar(fields["value"]) if "value" in fields else None)
        elif key == "edge" and isinstance(value, list):
            fields = dict((k, v) for k, v in value if not isinstance(v, list))
            if "source" not in fields or "target" not in fields:
                raise ParseError(f"{path}: edge without source/target")
            s, t = _scalar(fields["source"]), _scalar(fields["target"])
            if not isinstance(s, int) or not isinstance(t, int):
                raise ParseError(f"{path}: edge endpoints must be integers")
            edge_refs.append((s, t))
    if len(set(ids)) != len(ids):
        raise ParseError(f"{path}: duplicate node ids")
    index = {node_id: i for i, node_id in enumerate(ids)}
    try:
        pairs = [(index[s], index[t]) for s, t in edge_refs]
    except KeyError as exc:
        raise ParseError(f"{path}: edge references unknown node id {exc.args[0]}") from None
    graph = build_graph(len(ids), pairs)
    names = [lab for lab in labels] if any(lab is not None for lab in labels) else None
    truth = None
    if values and all(v is not None for v in values):
        seen: dict[object, int] = {}
        truth_labels = np.empty(len(values), dtype=np.int64)
        for i, v in enumerate(values):
            if v not in seen:
                seen[v] = len(seen)
            truth_labels[i] = seen[v]
        truth = Partition(truth_labels)
    return Dataset(graph, names=names, truth=truth, meta={"path": str(path)})


# -- partition / community files ---------------------------------------------


def read_lfr_community(path) -> Partition:
    """Read "node_id community_id" lines, node ids one-indexed and complete."""
    path = Path(path)
    entries: dict[int, int] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected 'node community'")
            try:
                node, comm = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: ids must be integers") from None
            if node < 1:
                raise ParseError(f"{path}:{lineno}: node ids are one-indexed")
            if comm < 0:
                raise ParseError(f"{path}:{lineno}: community ids must be non-negative")
            if node in entries:
                raise ParseError(f"{path}:{lineno}: node {node} listed twice")
            entries[node] = comm
    n = max(entries) if entries else 0
    if n == 0:
        raise ParseError(f"{path}: empty community file")
    missing = sorted(set(range(1, n + 1)) - set(entries))
    if missing:
        shown = ", ".join(map(str, missing[:10]))
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        raise ParseError(f"{path}: missing node ids: {shown}{more}")
    raw = np.array([entries[i] for i in range(1, n + 1)], dtype=np.int64)
    return Partition(raw).canonical()


def write_partition(path, p: Partition) -> None:
    """Write a partition in the community-file format (one-indexed ids)."""
    with open(path, "w") as handle:
        for i, label in enumerate(p.labels):
            handle.write(f"{i + 1} {label + 1}\n")


# -- CSV tables ---------------------------------------------------------------


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        raise ValueError("boolean CSV cells are not supported")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


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


def write_csv(path, rows: list[dict], columns: list[str] | None = None,
              kind: str | None = None) -> None:
    """Write dict rows. With `kind`, a '# schema=1 kind=...' comment leads."""
    if columns is None:
        if not rows:
            raise ValueError("cannot infer columns from zero rows")
        columns = list(rows[0].keys())
    with open(path, "w") as handle:
        if kind is not None:
            handle.write(f"# schema={SCHEMA_VERSION} kind={kind}\n")
        handle.write(",".join(columns) + "\n")
        for row in rows:
            handle.write(",".join(_format_cell(row.get(col)) for col in columns) + "\n")


def read_csv(path) -> tuple[list[dict], str | None]:
    """Read a CSV written by write_csv. Returns (rows, kind or None)."""
    path = Path(path)
    kind: str | None = None
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
                if "schema" in fields:
                    if fields["schema"] != str(SCHEMA_VERSION):
                        raise ParseError(
                            f"{path}:{lineno}: unsupported schema {fields['schema']}"
                        )
                    kind = fields.get("kind")
                continue
            if header is None:
                header = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise ParseError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}"
                )
            rows.append({col: _parse_cell(cell) for col, cell in zip(header, cells)})
    if header is None:
        raise ParseError(f"{path}: no header row")
    return rows, kind


def write_trace_csv(path, trace, baselines: dict[str, float] | None = None,
                    kind: str | None = None) -> None:
    """Write a detection trace as one CSV row per round.

    Optional `baselines` (e.g. {"cfg_q": ..., "louvain_q": ...}) become
    constant columns so a rendered trace can show reference lines.
    """
    columns = ["round", "edges_removed_total", "n_components", "modularity"]
    with_scores = any(row.ari is not None for row in trace.rows)
    if with_scores:
        columns += ["ari", "nmi"]
    if baselines:
        columns += list(baselines)
    rows = []
    for record in trace.rows:
        row = {
            "round": record.round,
            "edges_removed_total": record.cum_removed,
            "n_components": record.n_components,
            "modularity": record.q,
        }
        if with_scores:
            row["ari"] = record.ari
            row["nmi"] = record.nmi
        if baselines:
            row.update(baselines)
        rows.append(row)
    write_csv(path, rows, columns=columns, kind=kind)
