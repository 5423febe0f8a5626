"""Figure rendering for benchmark CSV bundles.

Pure file-to-file transforms: schema=1 CSVs in, SVG/PNG figures out.
No science is recomputed here — every plotted number exists in the CSV.
"""

from .figures import (
    RENDERERS,
    plot_boxes,
    plot_misalignment,
    plot_nmi_mu,
    plot_trace,
)
from .readers import REQUIRED_COLUMNS, SchemaError, load_kind, load_rows, peek_kind
from .theme import THEME

__version__ = "0.1.0"

__all__ = [
    "RENDERERS",
    "REQUIRED_COLUMNS",
    "SchemaError",
    "THEME",
    "__version__",
    "load_kind",
    "load_rows",
    "peek_kind",
    "plot_boxes",
    "plot_misalignment",
    "plot_nmi_mu",
    "plot_trace",
]
