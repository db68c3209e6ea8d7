"""Print degree and invariant checks of the Abhyankar map for small n and p."""

import argparse

from onepoint.certify import abhyankar_checks
from onepoint.maps import abhyankar_degree


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    print(f"{'n':>2} {'p':>2} {'degree':>7}  checks")
    for n in range(1, args.max_n + 1):
        for p in args.primes:
            recs = abhyankar_checks(n, p)
            status = " ".join(f"{r.name}={'ok' if r.passed else 'FAIL'}" for r in recs)
            print(f"{n:>2} {p:>2} {abhyankar_degree(n, p):>7}  {status}")


if __name__ == "__main__":
    main()
