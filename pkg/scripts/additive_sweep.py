"""Compare the canonical additive multiple with the root-span product.

For every monic polynomial of small degree over F_p the script checks that
the two constructions agree and reports the count per (p, degree).
"""

import argparse
import itertools

from onepoint.additive import additive_multiple, span_product_oracle
from onepoint.field import fq_make
from onepoint.poly import MPoly, divides


def monics(F, m):
    for tail in itertools.product(range(F.p), repeat=m):
        yield MPoly.from_terms(F, 1, [((m,), 1)] + [((i,), c) for i, c in enumerate(tail) if c])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    for p in args.primes:
        F = fq_make(p)
        for m in range(1, args.max_degree + 1):
            if p**m > 125:
                continue
            agree = total = 0
            for P in monics(F, m):
                Q = additive_multiple(P).to_mpoly()
                total += 1
                agree += divides(P, Q) and Q.monic() == span_product_oracle(P).monic()
            print(f"p={p} degree={m}: {agree}/{total} agree")


if __name__ == "__main__":
    main()
