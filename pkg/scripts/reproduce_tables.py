"""Run the small-m surveys with --check and keep the CSV/JSON for each polynomial.

    python scripts/reproduce_tables.py --out results/ [--m-max 7]
"""

import argparse
import sys
from pathlib import Path

from splitroots import golden
from splitroots.cli import main as cli

RUNS = [
    ("quadratic", golden.QUADRATIC, ["--L", "2,3,4,5,6,7,8"]),
    ("sextic", golden.SEXTIC, []),
    ("quartic_cyclotomic", golden.QUARTIC_CYCLOTOMIC, ["--L", "2"]),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--m-max", type=int, default=7)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, poly, extra in RUNS:
        code = cli(["survey", poly, "--m", f"5..{args.m_max}", "--check",
                    "--workers", str(args.workers), *extra,
                    "--csv", str(out / f"{name}.csv"), "--json", str(out / f"{name}.json")])
        print(f"{name}: exit {code}", file=sys.stderr)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
