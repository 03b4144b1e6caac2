"""Cayley tables for the finite groups used in examples and tests."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence


def cyclic_cayley(n: int) -> list[list[int]]:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_cayley(n: int) -> list[list[int]]:
    """Cayley table of S_n with permutations ordered lexicographically;
    the product p*q acts as x -> p(q(x))."""
    if n < 1:
        raise ValueError("symmetric group degree must be >= 1")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            row.append(index[tuple(p[q[x]] for x in range(n))])
        table.append(row)
    return table


def product_cayley(
    left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Cayley table of the direct product, pairs ordered (g, h) -> g*|H| + h."""
    nl, nr = len(left), len(right)
    table = []
    for g1 in range(nl):
        for h1 in range(nr):
            row = []
            for g2 in range(nl):
                for h2 in range(nr):
                    row.append(left[g1][g2] * nr + right[h1][h2])
            table.append(row)
    return table


def klein_cayley() -> list[list[int]]:
    return product_cayley(cyclic_cayley(2), cyclic_cayley(2))
