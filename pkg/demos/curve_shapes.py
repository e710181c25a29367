#!/usr/bin/env python3
"""Export the f, g, h curve data of the slow instance and its knot table.

Writes two CSV files next to this script: the sampled curves on
[x_25, 0] and the audit table of knots, values, pinned gradients, and
interval curvatures.  Render the curves with the plotting front end:

    dcplot --kind figure1 --input curves_delta05.csv --output curves.png
"""

from pathlib import Path

from dclab import build_adversarial, figure_data
from dclab.io import write_figure_data_csv, write_knot_table_csv

HERE = Path(__file__).parent


def main():
    delta = 0.5
    x, f, g, h = figure_data(delta, n_knots=25, samples_per_interval=8)
    curves = HERE / "curves_delta05.csv"
    write_figure_data_csv(x, f, g, h, curves)
    print(f"wrote {x.size} samples on [{x[0]:.4f}, {x[-1]:.4f}] to {curves}")
    print(f"  g rises to {g[0]:.4f} while h rises to {h[0]:.4f},")
    print(f"  keeping f between {f.min():.4f} and {f.max():.4f}")

    adv = build_adversarial(delta, horizon=25)
    knots = HERE / "knots_delta05.csv"
    write_knot_table_csv(adv, knots)
    print(f"wrote {adv.horizon + 2} knot rows to {knots}")
    print("first knots:", ", ".join(f"{v:.4f}" for v in adv.knots[:6]))


if __name__ == "__main__":
    main()
