"""E_n(lam) from H_n(I) on Schur states, beside the formula and the padded character phi_lam(n, 1^{d-n})."""
import argparse

from polyglue.hurwitz import eigenvalue_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--dmax", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'n':>2} {'lambda':>10} {'E_n':>8} {'formula':>8} {'phi':>8} {'E=phi':>6} {'E=n*phi':>8}")
    for r in eigenvalue_table(args.nmax, args.dmax, args.seed):
        phi = "-" if r.padded_character is None else str(r.padded_character)
        times_n = "-" if r.padded_character is None else str(r.value == r.n * r.padded_character)
        holds = "-" if r.conjecture_holds is None else str(r.conjecture_holds)
        print(f"{r.n:>2} {str(r.lam):>10} {str(r.value):>8} {str(r.formula):>8} {phi:>8} {holds:>6} {times_n:>8}")


if __name__ == "__main__":
    main()
