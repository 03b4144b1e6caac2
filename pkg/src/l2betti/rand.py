"""Seeded random generators for property tests and verification sweeps.

Everything is driven by an explicit random.Random instance, so suites are
reproducible from a single seed.  Algebras are only ever produced through
the validated constructors; structural parameters are cached so repeated
draws of the same shape reuse one validated instance (and its caches).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .algebra import (
    Coords,
    TracialAlgebra,
    group_algebra,
    multi_matrix_algebra,
    tensor_algebra,
)
from .groups import cyclic_cayley, klein_cayley, symmetric_cayley
from .homology import ChainComplex, ChainMap
from .linalg import kernel_data
from .modules import (
    ModuleMap,
    PresentedMap,
    PresentedModule,
    Submodule,
    Vector,
    vector_from_realized,
)
from .scalars import ONE, Scalar

_cache: dict = {}


def _cached(key, builder):
    algebra = _cache.get(key)
    if algebra is None:
        algebra = builder()
        _cache[key] = algebra
    return algebra


def _weighted_blocks(rng: random.Random) -> TracialAlgebra:
    shapes = [
        ((1,), (Fraction(1),)),
        ((2,), (Fraction(1, 2),)),
        ((1, 1), (Fraction(1, 3), Fraction(2, 3))),
        ((1, 1), (Fraction(1, 4), Fraction(3, 4))),
        ((1, 1), (Fraction(1, 2), Fraction(1, 2))),
        ((2, 1), (Fraction(1, 4), Fraction(1, 2))),
        ((2, 1), (Fraction(2, 5), Fraction(1, 5))),
        ((1, 2), (Fraction(1, 5), Fraction(2, 5))),
    ]
    blocks, weights = rng.choice(shapes)
    return _cached(
        ("mm", blocks, weights),
        lambda: multi_matrix_algebra(list(blocks), list(weights)),
    )


def _group(rng: random.Random) -> TracialAlgebra:
    kind = rng.choice(["c2", "c3", "c4", "klein", "s3"])
    if kind == "klein":
        return _cached(("klein",), lambda: group_algebra(klein_cayley()))
    if kind == "s3":
        return _cached(("s3",), lambda: group_algebra(symmetric_cayley(3)))
    n = int(kind[1])
    return _cached(("cyc", n), lambda: group_algebra(cyclic_cayley(n)))


def random_algebra(rng: random.Random, max_dim: int = 8) -> TracialAlgebra:
    """A small validated tracial algebra; mixes matrix blocks, group
    algebras, weighted (non-regular-trace) sums, and tensor products."""
    for _ in range(32):
        roll = rng.random()
        if roll < 0.45:
            a = _weighted_blocks(rng)
        elif roll < 0.8:
            a = _group(rng)
        else:
            left = _weighted_blocks(rng) if rng.random() < 0.5 else _group(rng)
            right = _weighted_blocks(rng)
            if left.dim * right.dim > max_dim:
                continue
            a = _cached(
                ("tensor", repr(left.description), repr(right.description)),
                lambda: tensor_algebra(left, right),
            )
        if a.dim <= max_dim:
            return a
    return _cached(("mm", (1,), (Fraction(1),)), lambda: multi_matrix_algebra([1], [Fraction(1)]))


def random_scalar(rng: random.Random, max_num: int = 3, allow_imag: bool = True) -> Scalar:
    def frac() -> Fraction:
        return Fraction(rng.randint(-max_num, max_num), rng.randint(1, 3))

    im = frac() if allow_imag and rng.random() < 0.4 else Fraction(0)
    return Scalar(frac(), im)


def random_coords(
    rng: random.Random, algebra: TracialAlgebra, density: float = 0.5
) -> Coords:
    coords: Coords = {}
    for i in range(algebra.dim):
        if rng.random() < density:
            v = random_scalar(rng)
            if not v.is_zero():
                coords[i] = v
    return coords


def random_element(rng: random.Random, algebra: TracialAlgebra, density: float = 0.6):
    return algebra.element(random_coords(rng, algebra, density))


def random_vector(
    rng: random.Random, algebra: TracialAlgebra, rank: int, density: float = 0.5
) -> Vector:
    vec: Vector = {}
    for p in range(rank):
        if rng.random() < density:
            coords = random_coords(rng, algebra, density)
            if coords:
                vec[p] = coords
    return vec


def random_module_map(
    rng: random.Random,
    algebra: TracialAlgebra,
    domain_rank: Optional[int] = None,
    codomain_rank: Optional[int] = None,
    max_rank: int = 3,
    density: float = 0.45,
) -> ModuleMap:
    k = rng.randint(1, max_rank) if domain_rank is None else domain_rank
    l = rng.randint(1, max_rank) if codomain_rank is None else codomain_rank
    entries: dict[tuple[int, int], Coords] = {}
    for p in range(l):
        for q in range(k):
            if rng.random() < density:
                coords = random_coords(rng, algebra, density)
                if coords:
                    entries[(p, q)] = coords
    return ModuleMap(algebra, k, l, entries)


def random_presented_module(
    rng: random.Random, algebra: TracialAlgebra, max_rank: int = 3
) -> PresentedModule:
    l = rng.randint(1, max_rank)
    k = rng.randint(0, 2)
    if k == 0:
        return PresentedModule.free(algebra, l) if rng.random() < 0.5 else PresentedModule(
            ModuleMap.zero(algebra, 0, l)
        )
    return PresentedModule(random_module_map(rng, algebra, domain_rank=k, codomain_rank=l))


def random_submodule(
    rng: random.Random, x: PresentedModule, max_generators: int = 2
) -> Submodule:
    gens = [
        random_vector(rng, x.algebra, x.ambient_rank, density=0.6)
        for _ in range(rng.randint(0, max_generators))
    ]
    return Submodule(x, gens)


def random_presented_map(
    rng: random.Random, algebra: TracialAlgebra, max_rank: int = 3
) -> PresentedMap:
    """A well-defined map of presented modules: the target's relations are
    built to contain the image of the source's relations."""
    source = random_presented_module(rng, algebra, max_rank)
    l_target = rng.randint(1, max_rank)
    ambient = random_module_map(
        rng, algebra, domain_rank=source.ambient_rank, codomain_rank=l_target
    )
    base = random_module_map(
        rng, algebra, domain_rank=rng.randint(0, 2), codomain_rank=l_target
    )
    moved = ambient.compose(source.relations)
    target = PresentedModule(ModuleMap.hstack([base, moved]))
    return PresentedMap(source, target, ambient)


def _kernel_vectors(algebra: TracialAlgebra, tmap: ModuleMap) -> list[Vector]:
    kern, _ = kernel_data(tmap.realize())
    out: list[Vector] = []
    for c in range(kern.cols):
        flat = {
            r: kern.at(r, c) for r in range(kern.rows) if not kern.at(r, c).is_zero()
        }
        vec = vector_from_realized(algebra, flat)
        if vec:
            out.append(vec)
    return out


def random_chain_complex(
    rng: random.Random,
    algebra: TracialAlgebra,
    max_length: int = 3,
    max_rank: int = 3,
) -> ChainComplex:
    """A valid complex of random length: d_1 is arbitrary, every later
    differential has columns drawn as module combinations of the previous
    kernel, so d o d = 0 holds by construction (and is still re-checked)."""
    length = rng.randint(0, max_length)
    ranks = [rng.randint(1, max_rank)]
    diffs: dict[int, ModuleMap] = {}
    mul = algebra.mul_coords
    for n in range(1, length + 1):
        rank_n = rng.randint(0, max_rank)
        ranks.append(rank_n)
        if rank_n == 0 or ranks[n - 1] == 0:
            continue
        if n == 1:
            d = random_module_map(
                rng, algebra, domain_rank=rank_n, codomain_rank=ranks[0]
            )
        else:
            prev = diffs.get(n - 1)
            if prev is None:
                # previous differential is zero: the kernel is everything
                basis = [{p: dict(algebra.unit)} for p in range(ranks[n - 1])]
            else:
                basis = _kernel_vectors(algebra, prev)
            columns: list[Vector] = []
            for _ in range(rank_n):
                vec: Vector = {}
                for kv in basis:
                    if rng.random() >= 0.5:
                        continue
                    c = random_coords(rng, algebra, density=0.5)
                    if not c:
                        continue
                    for p, coords in kv.items():
                        prod = mul(c, coords)
                        if not prod:
                            continue
                        cur = vec.get(p)
                        if cur is None:
                            vec[p] = dict(prod)
                        else:
                            for i, v in prod.items():
                                s = cur.get(i)
                                s = v if s is None else s + v
                                if s.is_zero():
                                    cur.pop(i, None)
                                else:
                                    cur[i] = s
                            if not cur:
                                del vec[p]
                columns.append(vec)
            d = ModuleMap.from_vector_columns(algebra, ranks[n - 1], columns)
        if d.entries:
            diffs[n] = d
    return ChainComplex(algebra, ranks, diffs)


def random_chain_map(
    rng: random.Random,
    source: ChainComplex,
    target: Optional[ChainComplex] = None,
) -> ChainMap:
    """A chain map source -> target over one algebra: a null-homotopic part
    d h + h d from random degree-raising maps h, plus a random scalar
    multiple of the identity when the complexes coincide."""
    if target is None:
        target = source
    algebra = source.algebra
    top = max(source.top_degree, target.top_degree)
    homotopies = {
        n: random_module_map(
            rng,
            algebra,
            domain_rank=source.rank(n),
            codomain_rank=target.rank(n + 1),
            density=0.4,
        )
        for n in range(top + 1)
    }
    lam = None
    if target is source and rng.random() < 0.6:
        lam = rng.choice([Scalar(1), Scalar(1), Scalar(0, 1), random_scalar(rng)])
    components: dict[int, ModuleMap] = {}
    for n in range(top + 1):
        part = target.differential(n + 1).compose(homotopies[n])
        if n >= 1:
            part = part + homotopies[n - 1].compose(source.differential(n))
        if lam is not None and not lam.is_zero():
            part = part + ModuleMap.identity(algebra, source.rank(n)).scale(lam)
        components[n] = part
    return ChainMap(source, target, components)
