"""Fundamental frequencies of the SS-C-SS-C plate across aspect ratios."""

import argparse

from hdq_centro import PlateSpec, solve_plate
from hdq_centro.plate import TABLE1_ALPHAS, TABLE1_REFERENCES


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=11)
    parser.add_argument("--delta", type=float, default=1e-4)
    parser.add_argument("--method", default="two_axis")
    args = parser.parse_args()

    print(f"{'alpha':>8} {'omega_bar':>12} {'hdq ref':>10} {'err':>9} {'leissa':>10} {'err':>9}")
    for i, alpha in enumerate(TABLE1_ALPHAS):
        spec = PlateSpec.from_string("SS-C-SS-C", alpha, args.n, delta=args.delta)
        w = solve_plate(spec, method=args.method).fundamental
        p, lz = TABLE1_REFERENCES["paper"][i], TABLE1_REFERENCES["leissa"][i]
        print(f"{alpha:8.4f} {w:12.5f} {p:10.4f} {(w - p) / p:+9.2e} {lz:10.4f} {(w - lz) / lz:+9.2e}")


if __name__ == "__main__":
    main()
