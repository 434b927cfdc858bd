"""Share of split primes of x^3-3x+1 whose root matching lies in the cyclic group.

    python scripts/m_mu_survey.py [--X 1000000]
"""

import argparse

from splitroots import golden
from splitroots.geometry import trivial_basis
from splitroots.perms import PermSet, compute_ghat
from splitroots.poly import IntPolynomial
from splitroots.survey import SurveyConfig, m_mu_shares, run_survey


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--X", type=float, default=1e6)
    args = parser.parse_args()
    basis = trivial_basis(3)
    cfg = SurveyConfig(IntPolynomial.parse(golden.ABELIAN_CUBIC), basis, compute_ghat(basis),
                       int(args.X), root_expressions=golden.ABELIAN_CUBIC_EXPRESSIONS)
    counters = run_survey(cfg)
    shares = m_mu_shares(counters, PermSet.of(golden.ABELIAN_CUBIC_G0))
    print(f"classified primes: {sum(counters.m_mu.values())}")
    for mu, count in sorted(counters.m_mu.items()):
        print(f"  mu={list(mu)}: {count}")
    print(f"inside: {float(shares['inside']):.5f}  outside: {float(shares['outside']):.5f}")


if __name__ == "__main__":
    main()
