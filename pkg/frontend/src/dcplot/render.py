"""Render dclab CSV files as images.

Two plot kinds, matching the two CSV schemas the solver tool writes:

* ``figure1``: a single panel with the ``f``, ``g``, ``h`` curves from
  a curve-sample file (columns ``x, f, g, h``);
* ``convergence``: gradient norm against iteration number on log-log
  axes from a trajectory file (columns including ``k, grad_norm``),
  with an optional reference line of slope ``-(1/2 + delta)``.

Rendering is deterministic: fixed backend, figure geometry, and no
timestamp metadata.  Input files are never modified.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

__all__ = ["SchemaError", "PlotJob", "render", "render_figure1",
           "render_convergence"]

FIGSIZE = (6.4, 4.8)
DPI = 120


class SchemaError(Exception):
    """The input CSV does not match the schema the plot kind needs."""


@dataclass(frozen=True)
class PlotJob:
    input_csv: Union[str, Path]
    output_image: Union[str, Path]
    kind: str  # "figure1" or "convergence"
    delta: Optional[float] = None


def _read_columns(path, required):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: empty file")
    header = rows[0]
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {missing}; found {header}")
    index = {c: header.index(c) for c in required}
    data = {c: [] for c in required}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"{path}: line {lineno}: expected {len(header)} fields, "
                f"got {len(row)}")
        for c in required:
            try:
                data[c].append(float(row[index[c]]))
            except ValueError as exc:
                raise SchemaError(f"{path}: line {lineno}: {exc}") from exc
    return {c: np.array(v) for c, v in data.items()}


def _save(fig, path):
    path = Path(path)
    metadata = None
    if path.suffix == ".svg":
        metadata = {"Date": None}
    elif path.suffix == ".pdf":
        metadata = {"CreationDate": None}
    fig.savefig(path, metadata=metadata)
    plt.close(fig)


def render_figure1(job: PlotJob) -> None:
    """Plot the three labeled curves over the x range of the file."""
    cols = _read_columns(job.input_csv, ["x", "f", "g", "h"])
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    ax.plot(cols["x"], cols["g"], label="g", color="tab:blue")
    ax.plot(cols["x"], cols["h"], label="h", color="tab:orange")
    ax.plot(cols["x"], cols["f"], label="f = g - h", color="tab:green")
    ax.set_xlabel("x")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, job.output_image)


def render_convergence(job: PlotJob) -> None:
    """Log-log plot of the gradient norm against the iteration number.

    Zero gradient norms (an exact stationary point on the last record)
    cannot sit on a log axis and are dropped.  A reference line of
    slope ``-(1/2 + delta)`` through the first point is overlaid when
    ``job.delta`` is given.
    """
    cols = _read_columns(job.input_csv, ["k", "grad_norm"])
    k = cols["k"]
    g = cols["grad_norm"]
    if k.size == 0:
        raise SchemaError(f"{job.input_csv}: no data rows")
    keep = g > 0.0
    k, g = k[keep], g[keep]
    if k.size == 0:
        raise SchemaError(f"{job.input_csv}: no positive gradient norms to plot")
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    ax.loglog(k + 1.0, g, marker="o", markersize=3, linestyle="none",
              label="gradient norm", color="tab:blue")
    if job.delta is not None:
        slope = -(0.5 + job.delta)
        ref = g[0] * ((k + 1.0) / (k[0] + 1.0)) ** slope
        ax.loglog(k + 1.0, ref, linestyle="--", color="tab:gray",
                  label=f"slope {slope:g} reference")
    ax.set_xlabel("iteration k + 1")
    ax.set_ylabel("gradient norm")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, job.output_image)


def render(job: PlotJob) -> None:
    if job.kind == "figure1":
        render_figure1(job)
    elif job.kind == "convergence":
        render_convergence(job)
    else:
        raise ValueError(f"unknown plot kind {job.kind!r}")
