#!/usr/bin/env python3
"""Compare the splitting iteration against plain steepest descent.

Both methods run on the slow instance from x0 = 0.  Exploiting the
convex split buys no order-of-magnitude improvement here: iteration
counts to a given gradient tolerance stay within a small constant
factor of each other.
"""

from dclab import (
    GdConfig,
    SolverConfig,
    build_adversarial,
    iterations_to_eps,
    run_dca,
    run_steepest_descent,
)


def main():
    adv = build_adversarial(0.5, 3000)
    cap = 3000
    dca = run_dca(adv.dc, 0.0, SolverConfig(epsilon=1e-15, max_iter=cap))
    gd = run_steepest_descent(adv.dc, 0.0,
                              GdConfig(epsilon=1e-15, max_iter=cap))

    print("iterations to reach ||grad f|| <= eps on the slow instance")
    print(f"(delta = 0.5; steepest descent uses the default step "
          f"1/(L_g + L_h) = 0.5)\n")
    print(f"{'eps':>8}  {'splitting':>10}  {'steepest descent':>17}  {'ratio':>6}")
    for eps in (0.5, 0.2, 0.1, 0.05, 0.02):
        it_dca = iterations_to_eps(dca, eps)
        it_gd = iterations_to_eps(gd, eps)
        ratio = "-" if not it_dca else f"{it_gd / it_dca:.2f}"
        print(f"{eps:>8g}  {it_dca:>10}  {it_gd:>17}  {ratio:>6}")

    print("\nfinal objective values:",
          f"splitting {dca.f_values[-1]:.6f},",
          f"steepest descent {gd.f_values[-1]:.6f},",
          f"lower bound {adv.f_low:.6f}")


if __name__ == "__main__":
    main()
