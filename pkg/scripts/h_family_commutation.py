"""Which pairs [h_n(a), h_lam(a)] of normal-ordered operators fail to commute.

Usage: python scripts/h_family_commutation.py [--N 3] [--dmax 3] [--seed 10]
"""
import argparse

from polyglue.fock import build_h, build_h_lambda, commutator_matrix
from polyglue.linalg import random_rational_matrix
from polyglue.partitions import partitions_of


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--lmax", type=int, default=3)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--seed", type=int, default=10)
    args = ap.parse_args()
    a = random_rational_matrix(args.N, args.seed)
    for d in range(1, args.dmax + 1):
        for n in range(1, args.nmax + 1):
            for w in range(1, args.lmax + 1):
                for lam in partitions_of(w):
                    c = commutator_matrix(build_h(n, a), build_h_lambda(lam, a), d, args.N)
                    if not c.is_zero():
                        print(f"N={args.N} d={d} [h_{n}, h_({lam})] nonzero: {c.nonzero_count()} entries, "
                              f"first {c.first_nonzero()['value']}")
    print("done")


if __name__ == "__main__":
    main()
