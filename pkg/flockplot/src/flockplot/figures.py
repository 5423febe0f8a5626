"""Figure renderers: one function per CSV kind.

Each function reads a schema=1 CSV and writes one image file (SVG by
default; any extension matplotlib understands works).  They arrange data
for display only — every plotted value exists verbatim in the CSV, and
box/spread statistics are computed by matplotlib from those values.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .readers import load_kind  # noqa: E402
from .theme import THEME  # noqa: E402

plt.rcParams["svg.hashsalt"] = THEME["svg_hashsalt"]


def _save(fig, out_path) -> Path:
    out_path = Path(out_path)
    kwargs = {}
    if out_path.suffix.lower() == ".svg":
        kwargs["metadata"] = {"Date": None}
    fig.savefig(out_path, **kwargs)
    plt.close(fig)
    return out_path


def _panels(n_rows: int, n_cols: int, **kwargs):
    w, h = THEME["panel_size"]
    return plt.subplots(
        n_rows, n_cols, figsize=(w * n_cols, h * n_rows), squeeze=False, **kwargs
    )


def _method_color(method: str, index: int) -> str:
    colors = THEME["method_colors"]
    if method in colors:
        return colors[method]
    fallback = THEME["fallback_colors"]
    return fallback[index % len(fallback)]


def plot_trace(csv_path, out_path) -> Path:
    """Modularity vs round, with horizontal baseline markers when present."""
    header, rows = load_kind(csv_path, "trace")
    fig, axes = _panels(1, 1)
    ax = axes[0][0]
    ax.plot(
        [row["round"] for row in rows],
        [row["modularity"] for row in rows],
        label="detector",
        **THEME["trace_line"],
    )
    if rows:
        if "cfg_q" in header and rows[0]["cfg_q"] is not None:
            ax.axhline(rows[0]["cfg_q"], label="cfg", **THEME["cfg_line"])
        if "louvain_q" in header and rows[0]["louvain_q"] is not None:
            ax.axhline(rows[0]["louvain_q"], label="louvain", **THEME["louvain_line"])
    ax.set_xlabel("round")
    ax.set_ylabel("modularity Q")
    if rows:
        ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, out_path)


def _network_groups(rows: list[dict]) -> dict[str, list[dict]]:
    groups: dict[str, list[dict]] = {}
    for row in rows:
        groups.setdefault(str(row["network"]), []).append(row)
    return groups


def plot_misalignment(csv_path, out_path) -> Path:
    """Per-network column: intra/inter misalignment on top, ratio below.

    Top panels use a log y-axis when values allow it, and a vertical marker
    shows where the overall mean drops under the numerical floor.
    """
    _, rows = load_kind(csv_path, "misalign")
    groups = _network_groups(rows)
    names = list(groups) or ["empty"]
    fig, axes = _panels(2, len(names), sharex="col")
    for col, name in enumerate(names):
        sub = sorted(groups.get(name, ()), key=lambda row: row["t"])
        ts = [row["t"] for row in sub]
        top, bottom = axes[0][col], axes[1][col]
        top.plot(ts, [row["mean_intra"] for row in sub], label="intra edges",
                 **THEME["intra_line"])
        top.plot(ts, [row["mean_inter"] for row in sub], label="inter edges",
                 **THEME["inter_line"])
        if any(row["mean_intra"] > 0 or row["mean_inter"] > 0 for row in sub):
            top.set_yscale("log")
        floor_t = next(
            (row["t"] for row in sub
             if row["mean_all"] < THEME["floor_threshold"]),
            None,
        )
        if floor_t is not None:
            for ax in (top, bottom):
                ax.axvline(floor_t, **THEME["floor_marker"])
        ratios = [(row["t"], row["ratio"]) for row in sub
                  if row["ratio"] is not None and row["ratio"] != float("inf")]
        bottom.plot([t for t, _ in ratios], [r for _, r in ratios],
                    **THEME["ratio_line"])
        top.set_title(name)
        top.set_ylabel("mean misalignment")
        bottom.set_ylabel("inter / intra")
        bottom.set_xlabel("step")
        top.legend(loc="best")
    fig.tight_layout()
    return _save(fig, out_path)


def _best_rows(rows: list[dict]) -> dict[tuple, dict]:
    """Highest-q row per (trial, method) — selection, no recomputation."""
    best: dict[tuple, dict] = {}
    for row in rows:
        key = (row["trial"], row["method"])
        if key not in best or row["q"] > best[key]["q"]:
            best[key] = row
    return best


def _method_order(methods: set[str]) -> list[str]:
    def rank(name: str):
        if name.startswith("remove_"):
            suffix = name.split("_", 1)[1]
            try:
                return (0, float(suffix), name)
            except ValueError:
                return (0, float("inf"), name)
        return (1, 0.0, name)

    return sorted(methods, key=rank)


def plot_boxes(csv_path, out_path) -> Path:
    """Grouped box plots of each method's best Q and its ARI across trials."""
    _, rows = load_kind(csv_path, "boxes")
    best = _best_rows(rows)
    methods = _method_order({method for _, method in best})
    fig, axes = _panels(1, 2)
    for ax, field in zip(axes[0], ("q", "ari")):
        data = [
            [row[field] for (_, method), row in best.items()
             if method == wanted and row[field] is not None]
            for wanted in methods
        ]
        ax.boxplot(
            data,
            tick_labels=methods,
            patch_artist=True,
            boxprops={"facecolor": THEME["box_face"], "color": THEME["box_edge"]},
            medianprops={"color": THEME["box_edge"]},
        )
        ax.set_ylabel({"q": "best modularity Q", "ari": "ARI"}[field])
        ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    return _save(fig, out_path)


def plot_nmi_mu(csv_path, out_path) -> Path:
    """Mean NMI vs mixing value per method, with a min-max spread band."""
    _, rows = load_kind(csv_path, "nmi_mu")
    methods = _method_order({str(row["method"]) for row in rows})
    fig, axes = _panels(1, 1)
    ax = axes[0][0]
    for index, method in enumerate(methods):
        by_mu: dict[float, list[float]] = {}
        for row in rows:
            if str(row["method"]) == method and row["nmi"] is not None:
                by_mu.setdefault(float(row["mu"]), []).append(float(row["nmi"]))
        mus = sorted(by_mu)
        means = [sum(by_mu[mu]) / len(by_mu[mu]) for mu in mus]
        color = _method_color(method, index)
        ax.plot(mus, means, marker="o", label=method, color=color)
        ax.fill_between(
            mus,
            [min(by_mu[mu]) for mu in mus],
            [max(by_mu[mu]) for mu in mus],
            color=color,
            alpha=THEME["spread_alpha"],
            linewidth=0,
        )
    ax.set_xlabel("mixing value")
    ax.set_ylabel("NMI")
    ax.set_ylim(-0.02, 1.02)
    if methods:
        ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, out_path)


#: CSV kind → renderer, used by the command-line dispatcher.
RENDERERS = {
    "trace": plot_trace,
    "misalign": plot_misalignment,
    "boxes": plot_boxes,
    "nmi_mu": plot_nmi_mu,
}
