"""Distribution of the block-sum multiple k for 1/p against Eulerian shares.

    python scripts/decimal_k_distribution.py [--n 5] [--X 1000000]
"""

import argparse

from splitroots.decimal_periods import k_distribution
from splitroots.formulas import e_n


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--X", type=float, default=1e6)
    args = parser.parse_args()
    dist = k_distribution(args.n, int(args.X))
    # the root polynomial has degree n-1, so the limit law is E_{n-1}
    print(f"{'k':>3}{'observed':>11}{'predicted':>11}")
    for k, share in sorted(dist.items()):
        print(f"{k:>3}{float(share):>11.5f}{float(e_n(args.n - 1, k)):>11.5f}")


if __name__ == "__main__":
    main()
