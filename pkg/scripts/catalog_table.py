#!/usr/bin/env python3
"""Walk the quantum-group catalog and print the resulting Betti sequences.

Three sections: the first-Betti-number family 1/N obtained by pairing an
N-dimensional finite quantum group with the dual of a free group, random
rational targets realized exactly through rational_first_betti, and the
fixed points of scaling by a factor strictly between 0 and 1.
"""

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from l2betti.catalog import (
    ExtendedReal,
    FiniteQG,
    FreeGroupDual,
    Product,
    betti_of,
    descriptor_to_dict,
    fixed_point_classify,
    rational_first_betti,
)


def sequence_str(seq) -> str:
    if seq.is_zero():
        return "0 in every degree"
    return ", ".join(f"beta_{n} = {seq[n]}" for n in seq.support())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=12, help="largest N in the 1/N family")
    parser.add_argument("--targets", type=int, default=8, help="random rational targets to realize")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    print("first Betti number 1/N from Product(FiniteQG(N), FreeGroupDual(2)):")
    for n in range(2, args.max_n + 1):
        seq = betti_of(Product(FiniteQG(n), FreeGroupDual(2)))
        print(f"  N = {n:2d}: {sequence_str(seq)}")

    print()
    print(f"{args.targets} random rational targets via rational_first_betti (seed {args.seed}):")
    rng = random.Random(args.seed)
    for _ in range(args.targets):
        target = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        descriptor = rational_first_betti(target)
        seq = betti_of(descriptor)
        status = "ok" if seq[1] == ExtendedReal(target) else "MISSED"
        print(f"  target {str(target):>6}: {sequence_str(seq)}  [{status}]")
        print(f"    descriptor: {descriptor_to_dict(descriptor)}")

    print()
    print("fixed points of x -> c*x over [0, inf]:")
    for c in (Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)):
        points = fixed_point_classify(c)
        rendered = ", ".join(sorted(str(p) for p in points))
        print(f"  c = {c}: {{{rendered}}}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
