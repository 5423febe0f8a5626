"""Central style table — every color and line style used by the figures.

Keeping the styling in one mapping makes the rendered families consistent:
the detector is always the same blue, baselines keep their line styles
across figures, and box plots share one face color.
"""

THEME = {
    # geometry
    "panel_size": (4.2, 3.2),          # inches per subplot (w, h)
    # modularity trace
    "trace_line": {"color": "#1f77b4", "linewidth": 1.6},
    "cfg_line": {"color": "#d62728", "linestyle": "-", "linewidth": 1.2},
    "louvain_line": {"color": "#2ca02c", "linestyle": "--", "linewidth": 1.2},
    # misalignment evolution
    "intra_line": {"color": "#1f77b4", "linestyle": "--", "linewidth": 1.4},
    "inter_line": {"color": "#d62728", "linestyle": "-", "linewidth": 1.4},
    "ratio_line": {"color": "#444444", "linestyle": "-", "linewidth": 1.2},
    "floor_marker": {"color": "#888888", "linestyle": ":", "linewidth": 1.0},
    "floor_threshold": 1e-12,
    # box plots ("boxes in blue")
    "box_face": "#aec7e8",
    "box_edge": "#1f77b4",
    # NMI-vs-mixing curves: one color per method, detector first
    "method_colors": {
        "detect": "#1f77b4",
        "cfg": "#d62728",
        "louvain": "#2ca02c",
    },
    "fallback_colors": ["#9467bd", "#8c564b", "#e377c2", "#7f7f7f"],
    "spread_alpha": 0.2,
    # reproducible SVG output
    "svg_hashsalt": "flockplot",
}
