"""Commutators of the *non*-normal-ordered H_n(A) = tr((phi^dag phi A)^n), read as written.

Usage: python scripts/printed_order_commutation.py [--N 3] [--dmax 3] [--seeds 1 2]
"""
import argparse
import random

from polyglue.fock import Letter, commutator_matrix, normal_order_printed
from polyglue.fock.words import h_block_word
from polyglue.linalg import RationalMatrix, random_rational_matrix


def printed_H(n, A):
    return normal_order_printed([h_block_word(n, Letter.const("A", A))])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--seeds", type=int, nargs="*", default=[1, 2])
    ap.add_argument("--identity", action="store_true", help="also run A = I")
    args = ap.parse_args()

    mats = [(f"seed={s}", random_rational_matrix(args.N, random.Random(s))) for s in args.seeds]
    if args.identity:
        mats.insert(0, ("identity", RationalMatrix.identity(args.N)))
    for label, A in mats:
        for n in range(1, args.nmax + 1):
            for m in range(n + 1, args.nmax + 1):
                for d in range(1, args.dmax + 1):
                    c = commutator_matrix(printed_H(n, A), printed_H(m, A), d, args.N)
                    status = "zero" if c.is_zero() else f"NONZERO ({c.nonzero_count()} entries, first {c.first_nonzero()['value']})"
                    print(f"{label} N={args.N} [P_{n}, P_{m}] d={d}: {status}")


if __name__ == "__main__":
    main()
