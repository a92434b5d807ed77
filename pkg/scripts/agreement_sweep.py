"""Pencil-vs-oracle agreement on the random and adversarial matrix families.

    python scripts/agreement_sweep.py --n 2000 --seed 1
"""

import argparse
import collections

import numpy as np

from numradius import numerical_radius, radius_angle_sweep
from numradius.linalg import Matrix2
from numradius.suites import SUITES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--suite", action="append", help="restrict to these suites")
    args = ap.parse_args()
    names = args.suite or list(SUITES)
    print(f"{'suite':<14}{'n':>7}{'max err/scale':>16}{'fallback':>10}  methods")
    for name in names:
        rng = np.random.default_rng(args.seed)
        worst, methods = 0.0, collections.Counter()
        for M in SUITES[name](rng, args.n):
            A = Matrix2.from_array(M)
            res = numerical_radius(A)
            ow = radius_angle_sweep(A).w
            worst = max(worst, abs(res.w - ow) / max(1.0, A.frobenius))
            methods[res.method.value] += 1
        fb = methods["OracleFallback"] / args.n
        summary = ", ".join(f"{k}={v}" for k, v in sorted(methods.items()))
        print(f"{name:<14}{args.n:>7}{worst:>16.3e}{fb:>10.2%}  {summary}")


if __name__ == "__main__":
    main()
