"""Sizes of the shifted character sums outside the exact cases.

For random exponent quadruples that satisfy neither exact case, reports
|sum| * phi(k) / (phi(m) * k^1.5). No constant is asserted.
"""

import argparse
import random

from eqseq import charsums as cs
from eqseq.numtheory import euler_phi
from eqseq.quotients import period_multiplier


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--moduli", type=int, nargs="+", default=[25, 49, 121, 21, 39])
    parser.add_argument("--samples", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print("m,k,samples,max_ratio,mean_ratio")
    for m in args.moduli:
        k = period_multiplier(m)
        chi = cs.chi_km(m)
        scale = euler_phi(m) * k**1.5 / euler_phi(k)
        ratios = []
        while len(ratios) < args.samples:
            a = [rng.randrange(-3 * m, 3 * m) for _ in range(4)]
            if sum(a) % k or (sum(a) % m == 0 and (a[1] + 2 * a[2] + 3 * a[3]) % k == 0):
                continue
            ratios.append(abs(cs.lemma1_sum(m, k, chi, a)) / scale)
        print(f"{m},{k},{len(ratios)},{max(ratios):.4f},{sum(ratios) / len(ratios):.4f}")


if __name__ == "__main__":
    main()
