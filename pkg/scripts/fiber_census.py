"""Tabulate rational and geometric fiber sizes of the n = 1 Abhyankar map."""

import argparse
from collections import Counter

from onepoint.certify import fiber_sample
from onepoint.maps import abhyankar_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("--degree", type=int, default=6, help="fibers are taken over F_(p^degree)")
    ap.add_argument("--targets", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    stats = fiber_sample(abhyankar_map(1, args.p), args.degree, targets=args.targets, seed=args.seed)
    print("field:", stats["field"], "targets:", stats["targets"])
    print("rational sizes:", dict(sorted(Counter(stats["rational_sizes"]).items())))
    print("geometric sizes:", dict(sorted(Counter(stats["geometric_sizes"]).items())))


if __name__ == "__main__":
    main()
