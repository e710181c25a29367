"""CSV and JSON serialization of trajectories, reports, and knot tables.

Numbers are printed with 17 significant digits so that parsing returns
the original float64 bit pattern.  CSV files are comma-separated with a
mandatory header row, '.' decimal separator, and newline-terminated
rows.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from .adversarial import AdversarialInstance
from .core import DcError
from .rates import RateReport
from .solver import IterateRecord, TerminationReason, Trajectory

__all__ = [
    "TrajectoryParseError",
    "TRAJECTORY_COLUMNS",
    "format_float",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "write_trajectory_json",
    "read_trajectory_json",
    "write_rate_report_json",
    "write_rate_report_csv",
    "write_figure_data_csv",
    "read_figure_data_csv",
    "write_knot_table_csv",
]

TRAJECTORY_COLUMNS = ["k", "x", "f", "grad_norm", "step_norm"]
FIGURE_COLUMNS = ["x", "f", "g", "h"]


class TrajectoryParseError(DcError):
    """A trajectory file could not be parsed; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_float(v: float) -> str:
    return f"{v:.17g}"


def _fmt_x(x: np.ndarray) -> str:
    return ";".join(format_float(c) for c in x)


def write_trajectory_csv(traj: Trajectory, path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_COLUMNS)
        for r in traj.records:
            w.writerow([r.k, _fmt_x(r.x), format_float(r.f),
                        format_float(r.grad_f_norm), format_float(r.step_norm)])


def read_trajectory_csv(path: Union[str, Path]) -> Trajectory:
    """Parse a trajectory CSV.

    Records parsed from CSV carry ``g = h = None`` (the file schema does
    not include the split values) and ``terminated_by = None``.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise TrajectoryParseError("empty file", line=1)
    if rows[0] != TRAJECTORY_COLUMNS:
        raise TrajectoryParseError(
            f"expected header {TRAJECTORY_COLUMNS}, got {rows[0]}", line=1)
    records: List[IterateRecord] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(TRAJECTORY_COLUMNS):
            raise TrajectoryParseError(
                f"expected {len(TRAJECTORY_COLUMNS)} fields, got {len(row)}",
                line=lineno)
        try:
            k = int(row[0])
            x = np.array([float(c) for c in row[1].split(";")])
            f, gn, sn = (float(row[2]), float(row[3]), float(row[4]))
        except ValueError as exc:
            raise TrajectoryParseError(str(exc), line=lineno) from exc
        records.append(IterateRecord(k=k, x=x, f=f, g=None, h=None,
                                     grad_f_norm=gn, step_norm=sn))
    for i, r in enumerate(records):
        if r.k != i:
            raise TrajectoryParseError(
                f"iteration indices must be consecutive from 0, got k={r.k} "
                f"at record {i}", line=i + 2)
    return Trajectory(records=records, terminated_by=None)


def write_trajectory_json(traj: Trajectory, path: Union[str, Path]) -> None:
    doc = {
        "terminated_by": traj.terminated_by.value if traj.terminated_by else None,
        "records": [
            {"k": r.k, "x": [float(c) for c in r.x], "f": r.f, "g": r.g,
             "h": r.h, "grad_norm": r.grad_f_norm, "step_norm": r.step_norm}
            for r in traj.records],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_trajectory_json(path: Union[str, Path]) -> Trajectory:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TrajectoryParseError(exc.msg, line=exc.lineno) from exc
    try:
        records = [IterateRecord(k=int(r["k"]), x=np.array(r["x"], dtype=float),
                                 f=float(r["f"]),
                                 g=None if r.get("g") is None else float(r["g"]),
                                 h=None if r.get("h") is None else float(r["h"]),
                                 grad_f_norm=float(r["grad_norm"]),
                                 step_norm=float(r["step_norm"]))
                   for r in doc["records"]]
        reason = doc.get("terminated_by")
        terminated = TerminationReason(reason) if reason else None
    except (KeyError, TypeError, ValueError) as exc:
        raise TrajectoryParseError(f"bad trajectory document: {exc}", line=1) from exc
    return Trajectory(records=records, terminated_by=terminated)


def read_trajectory(path: Union[str, Path]) -> Trajectory:
    """Dispatch on extension: ``.json`` or CSV otherwise."""
    if str(path).endswith(".json"):
        return read_trajectory_json(path)
    return read_trajectory_csv(path)


def write_rate_report_json(report: RateReport, path: Union[str, Path]) -> None:
    with open(path, "w") as fh:
        fh.write(report.to_json())
        fh.write("\n")


def write_rate_report_csv(report: RateReport, path: Union[str, Path]) -> None:
    """One row per checked ``k`` of the averaged-gradient bound."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "lhs", "rhs", "rhs_loose", "pass", "numerator"])
        for c, num in zip(report.per_k, report.numerator_sequence):
            w.writerow([c.k, format_float(c.lhs), format_float(c.rhs),
                        format_float(c.rhs_loose), int(c.passed),
                        format_float(num)])


def write_figure_data_csv(x, f, g, h, path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FIGURE_COLUMNS)
        for row in zip(x, f, g, h):
            w.writerow([format_float(v) for v in row])


def read_figure_data_csv(path: Union[str, Path]):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise TrajectoryParseError("empty file", line=1)
    if rows[0] != FIGURE_COLUMNS:
        raise TrajectoryParseError(
            f"expected header {FIGURE_COLUMNS}, got {rows[0]}", line=1)
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:]])
    except ValueError as exc:
        raise TrajectoryParseError(str(exc), line=2) from exc
    if data.size == 0:
        raise TrajectoryParseError("no data rows", line=2)
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]


def write_knot_table_csv(inst: AdversarialInstance, path: Union[str, Path]) -> None:
    """Audit table with columns k, x_k, h_k, grad_k, c_k.

    The final row (the domain edge ``x_{K+1}``) has no gradient pin or
    interval of its own, so those cells are empty.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "x_k", "h_k", "grad_k", "c_k"])
        for k in range(inst.horizon + 2):
            row = [k, format_float(inst.knots[k]), format_float(inst.h_at_knots[k])]
            if k <= inst.horizon:
                row += [format_float(inst.grad_at_knots[k]),
                        format_float(inst.curvatures[k])]
            else:
                row += ["", ""]
            w.writerow(row)
