"""How the clamped-edge offset delta and the grid size move the square SS-C-SS-C fundamental."""

import argparse

from hdq_centro import PlateSpec, solve_plate
from hdq_centro.plate import lookup_reference


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--sizes", default="9,11,13,15")
    parser.add_argument("--deltas", default="1e-2,1e-3,1e-4,1e-5,1e-6")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    deltas = [float(d) for d in args.deltas.split(",")]
    ref = lookup_reference(args.alpha, "leissa")
    print("delta    " + "".join(f"{'N=' + str(n):>16}" for n in sizes))
    for d in deltas:
        cells = []
        for n in sizes:
            try:
                w = solve_plate(PlateSpec.from_string("SS-C-SS-C", args.alpha, n, delta=d)).fundamental
                cells.append(f"{w:16.5f}")
            except ValueError as exc:
                # very small delta: rounding breaks the mirror symmetry past the guard
                cells.append(f"{type(exc).__name__:>16}")
        print(f"{d:<9.0e}" + "".join(cells))
    print(f"reference {ref}")


if __name__ == "__main__":
    main()
