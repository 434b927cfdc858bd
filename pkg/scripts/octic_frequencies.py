"""Coset frequencies of the degree-8 product polynomial against exact volumes.

    python scripts/octic_frequencies.py [--X 10000000] [--workers 1]
"""

import argparse
from fractions import Fraction

from splitroots import golden
from splitroots.geometry import domain_volume
from splitroots.perms import compute_ghat, coset_rep
from splitroots.poly import IntPolynomial
from splitroots.relations import RelationBasis
from splitroots.surd import SurdValue
from splitroots.survey import SurveyConfig, run_survey


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--X", type=float, default=1e7)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    basis = RelationBasis(8, golden.OCTIC_ROWS)
    ghat = compute_ghat(basis)
    volumes = {s: domain_volume(basis, s) for s in golden.OCTIC_SIGMAS}
    total_volume = sum(volumes.values(), SurdValue.zero())
    cfg = SurveyConfig(IntPolynomial.parse(golden.OCTIC), basis, ghat, int(args.X),
                       workers=args.workers)
    counters = run_survey(cfg)
    print(f"split primes up to {cfg.X}: {counters.total_split}")
    print(f"{'sigma':<26}{'volume':>8}{'predicted':>11}{'observed':>10}{'diff':>9}")
    for sigma in golden.OCTIC_SIGMAS:
        predicted = float(volumes[sigma] / total_volume)
        observed = Fraction(counters.per_coset[coset_rep(sigma, ghat)], counters.total_split)
        print(f"{str(list(sigma)):<26}{str(volumes[sigma]):>8}{predicted:>11.5f}"
              f"{float(observed):>10.5f}{float(observed) - predicted:>+9.5f}")


if __name__ == "__main__":
    main()
