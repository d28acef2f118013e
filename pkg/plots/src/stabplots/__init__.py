"""Plotting companion: renders figures from stabkit CLI CSV/JSON artifacts."""

from .figures import (
    LABEL_COLORS,
    LABEL_ORDER,
    FigureSpec,
    figure_ids,
    render,
    ziegler_topology,
)
from .io import (
    EmptyGridError,
    MissingColumnError,
    PlotDataError,
    Table,
    read_table,
)

__all__ = [
    "EmptyGridError",
    "FigureSpec",
    "LABEL_COLORS",
    "LABEL_ORDER",
    "MissingColumnError",
    "PlotDataError",
    "Table",
    "figure_ids",
    "read_table",
    "render",
    "ziegler_topology",
]
