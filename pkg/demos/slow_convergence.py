#!/usr/bin/env python3
"""Demonstrate the exactly prescribed slow rate of the splitting iteration.

Builds the worst-case instance for a few values of delta, runs the
solver from x0 = 0, and compares the recorded gradient norms against
the closed form (k+1)^(-(1/2+delta)).  The rate-compensated column
should be identically 1.
"""

import math

import numpy as np

from dclab import (
    SolverConfig,
    build_adversarial,
    iterations_to_eps,
    run_dca,
    scaled_rate_table,
    theoretical_grad_norm,
)


def main():
    horizon = 3000  # covers eps = 0.01 at delta = 0.1 (k = 2154)
    for delta in (0.1, 0.5, 1.0):
        adv = build_adversarial(delta, horizon)
        traj = run_dca(adv.dc, 0.0, SolverConfig(epsilon=1e-15, max_iter=horizon))
        table = scaled_rate_table(traj, delta)

        print("=" * 72)
        print(f"delta = {delta}   (gradient norms decay like "
              f"(k+1)^-{0.5 + delta:g})")
        print("=" * 72)
        print(f"{'k':>6}  {'grad norm':>14}  {'closed form':>14}  {'scaled':>18}")
        for k in (0, 1, 2, 9, 99, 999, horizon - 1):
            print(f"{k:>6}  {table.grad_norm[k]:>14.6e}  "
                  f"{theoretical_grad_norm(delta, k):>14.6e}  "
                  f"{table.scaled[k]:>18.15f}")
        worst = np.abs(table.scaled - 1.0).max()
        print(f"max |scaled - 1| over the run: {worst:.2e}")

        print("\niterations to reach a gradient tolerance:")
        for eps in (0.1, 0.01):
            measured = iterations_to_eps(traj, eps)
            predicted = math.ceil(eps ** (-1.0 / (0.5 + delta))) - 1
            print(f"  eps = {eps:<5g} measured = {str(measured):<6} "
                  f"rate inversion predicts ~{predicted}")
        print()


if __name__ == "__main__":
    main()
