"""Plot renderer for dclab CSV outputs."""

from .render import PlotJob, SchemaError, render, render_convergence, render_figure1

__version__ = "0.1.0"

__all__ = ["PlotJob", "SchemaError", "render", "render_convergence",
           "render_figure1"]
