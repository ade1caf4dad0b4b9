"""Genus distribution over all white orders of two glued 2k-gons."""
import argparse

from polyglue.gluing import genus_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=6)
    args = ap.parse_args()
    for k in range(1, args.kmax + 1):
        census = genus_census(k)
        print(f"k={k}: " + ", ".join(f"g={g}: {c}" for g, c in census.items()) + f"  (total {sum(census.values())})")


if __name__ == "__main__":
    main()
