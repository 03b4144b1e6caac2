"""Module maps, trace-valued dimensions, Hom spaces, closures.

Reference values are computed by hand from first principles:

  * over M_2 with tau = Tr/2, the left module generated by the matrix unit
    e11 (right multiplication image) has dimension tau(e11) = 1/2;
  * over C[Z/n], the ideal generated by 1 + g + ... + g^(n-1) is spanned by
    the averaging idempotent, of trace 1/n;
  * over the weighted sum of a 2x2 block and a 1x1 block with weights
    (1/4, 1/2), the column module of the first block has dimension 1/4 and
    the second block has dimension 1/2: the trace of the generating
    idempotent in each case;
  * Hom(M^1, M^1) has scalar dimension dim(A); maps out of the cokernel of
    right multiplication by e11 must send 1 to an element y with e11*y = 0,
    leaving the two matrix units of the second row.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from l2betti.algebra import group_algebra, multi_matrix_algebra, tensor_algebra
from l2betti.groups import cyclic_cayley
from l2betti.linalg import ScalarSpan, kernel_data
from l2betti.modules import (
    ModuleMap,
    PresentedMap,
    PresentedModule,
    Submodule,
    algebraic_closure,
    check_image_dim_descends_to_projective_part,
    dim_image,
    dim_image_l2,
    dim_image_l2_float,
    dim_kernel,
    dim_module,
    dim_submodule,
    endomorphism_trace,
    generalized_inverse,
    hom_space,
    projective_part,
    submodule_contains,
    submodule_equal,
    vector_from_realized,
    vector_realized,
)
from l2betti.rand import (
    random_algebra,
    random_module_map,
    random_presented_map,
    random_presented_module,
    random_submodule,
    random_vector,
)
from l2betti.scalars import ONE, Scalar, sc

seeds = st.integers(min_value=0, max_value=10**9)


@pytest.fixture(scope="module")
def m2():
    return multi_matrix_algebra([2], [Fraction(1, 2)])


@pytest.fixture(scope="module")
def z2():
    return group_algebra(cyclic_cayley(2))


@pytest.fixture(scope="module")
def z3():
    return group_algebra(cyclic_cayley(3))


@pytest.fixture(scope="module")
def lopsided():
    # weighted sum of M_2 and C; weights (1/4, 1/2) make the trace
    # distinct from the normalized regular trace
    return multi_matrix_algebra([2, 1], [Fraction(1, 4), Fraction(1, 2)])


def right_mult_map(algebra, coords):
    return ModuleMap(algebra, 1, 1, {(0, 0): dict(coords)})


class TestModuleMapMechanics:
    def test_identity_and_zero(self, m2):
        ident = ModuleMap.identity(m2, 2)
        zero = ModuleMap.zero(m2, 2, 2)
        assert dim_image(ident) == 2
        assert dim_image(zero) == 0
        assert dim_kernel(ident) == 0
        assert dim_kernel(zero) == 2

    def test_apply_matches_realize(self, m2):
        rng = random.Random(11)
        t = random_module_map(rng, m2, domain_rank=2, codomain_rank=3)
        x = [dict() for _ in range(2)]
        x[0][0] = ONE
        x[1][2] = sc(2)
        y = t.apply(x)
        realized = t.realize()
        flat_in = [Scalar(0)] * (2 * m2.dim)
        flat_in[0] = ONE
        flat_in[m2.dim + 2] = sc(2)
        for p in range(3):
            for mcoord in range(m2.dim):
                row = p * m2.dim + mcoord
                acc = Scalar(0)
                for col in range(2 * m2.dim):
                    if not flat_in[col].is_zero():
                        acc = acc + realized.at(row, col) * flat_in[col]
                assert y[p].get(mcoord, Scalar(0)) == acc

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_realize_is_multiplicative(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        f = random_module_map(rng, algebra, max_rank=2)
        g = random_module_map(
            rng, algebra, domain_rank=f.codomain_rank, max_rank=2
        )
        assert g.compose(f).realize() == g.realize() @ f.realize()

    def test_compose_rank_mismatch(self, m2):
        f = ModuleMap.zero(m2, 1, 2)
        g = ModuleMap.zero(m2, 3, 1)
        with pytest.raises(ValueError):
            g.compose(f)

    def test_stacking(self, m2):
        rng = random.Random(7)
        a = random_module_map(rng, m2, domain_rank=1, codomain_rank=2)
        b = random_module_map(rng, m2, domain_rank=2, codomain_rank=2)
        h = ModuleMap.hstack([a, b])
        assert h.domain_rank == 3 and h.codomain_rank == 2
        assert h.column_vector(0) == a.column_vector(0)
        assert h.column_vector(1) == b.column_vector(0)
        c = random_module_map(rng, m2, domain_rank=1, codomain_rank=1)
        v = ModuleMap.vstack([a, c])
        assert v.codomain_rank == 3 and v.domain_rank == 1
        assert v.entries.get((2, 0), {}) == c.entries.get((0, 0), {})


class TestDimImageFrozen:
    def test_right_mult_by_e11_over_m2(self, m2):
        t = right_mult_map(m2, {0: ONE})
        assert dim_image(t) == Fraction(1, 2)
        assert dim_kernel(t) == Fraction(1, 2)
        assert dim_module(PresentedModule(t)) == Fraction(1, 2)

    def test_averaging_idempotents_over_cyclic_groups(self, z2, z3):
        t2 = right_mult_map(z2, {0: ONE, 1: ONE})
        assert dim_image(t2) == Fraction(1, 2)
        t3 = right_mult_map(z3, {0: ONE, 1: ONE, 2: ONE})
        assert dim_image(t3) == Fraction(1, 3)

    def test_invertible_entry_gives_full_rank(self, z3):
        # 1 + g is invertible in C[Z/3] (no eigenvalue of g equals -1)
        t = right_mult_map(z3, {0: ONE, 1: ONE})
        assert dim_image(t) == 1

    def test_weighted_blocks_need_general_core(self, lopsided):
        assert not lopsided.has_regular_trace()
        e11 = {0: ONE}
        unit_small = {4: ONE}
        assert dim_image(right_mult_map(lopsided, e11)) == Fraction(1, 4)
        assert dim_image(right_mult_map(lopsided, unit_small)) == Fraction(1, 2)
        both = {0: ONE, 4: ONE}
        assert dim_image(right_mult_map(lopsided, both)) == Fraction(3, 4)

    def test_diagonal_weighted_line(self):
        a = multi_matrix_algebra([1, 1], [Fraction(1, 3), Fraction(2, 3)])
        assert not a.has_regular_trace()
        assert dim_image(right_mult_map(a, {0: ONE})) == Fraction(1, 3)
        assert dim_image(right_mult_map(a, {1: ONE})) == Fraction(2, 3)

    def test_dim_bounded_by_ranks(self, m2):
        rng = random.Random(5)
        for _ in range(5):
            t = random_module_map(rng, m2, max_rank=3)
            v = dim_image(t)
            assert 0 <= v <= min(t.domain_rank, t.codomain_rank)


class TestDimImageProperties:
    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_order_independence(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=3)
        base = dim_image(t, use_cache=False)
        perm = list(range(t.domain_rank))
        rng.shuffle(perm)
        assert dim_image(t, order=perm, use_cache=False) == base

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_monotone_under_adding_generators(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=2)
        extra = random_module_map(
            rng, algebra, max_rank=2, codomain_rank=t.codomain_rank
        )
        bigger = ModuleMap.hstack([t, extra])
        assert dim_image(t) <= dim_image(bigger)
        assert dim_image(bigger) <= dim_image(t) + dim_image(extra)

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_composition_shrinks_dimension(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        f = random_module_map(rng, algebra, max_rank=2)
        g = random_module_map(rng, algebra, domain_rank=f.codomain_rank, max_rank=2)
        c = g.compose(f)
        assert dim_image(c) <= min(dim_image(f), dim_image(g))

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_kernel_submodule_plus_image_fills_domain(self, seed):
        # rank-nullity with the kernel built from scalar elimination, an
        # entirely different code path than dim_kernel's subtraction
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=3)
        kern, _ = kernel_data(t.realize())
        gens = []
        for c in range(kern.cols):
            flat = {
                r: kern.at(r, c)
                for r in range(kern.rows)
                if not kern.at(r, c).is_zero()
            }
            gens.append(vector_from_realized(algebra, flat))
        sub = Submodule(PresentedModule.free(algebra, t.domain_rank), gens)
        assert dim_submodule(sub) + dim_image(t) == t.domain_rank
        assert dim_submodule(sub) == dim_kernel(t)

    @given(seeds)
    @settings(max_examples=12, deadline=None)
    def test_generalized_inverse_idempotent_trace(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=2)
        if t.is_zero():
            return
        s = generalized_inverse(t, method="average")
        p = s.compose(t)
        assert p.compose(p) == p
        assert endomorphism_trace(p) == dim_image(t)

    def test_generalized_inverse_solve_agrees(self):
        rng = random.Random(3)
        for _ in range(6):
            algebra = random_algebra(rng, max_dim=4)
            t = random_module_map(rng, algebra, max_rank=2, density=0.7)
            if t.is_zero():
                continue
            s_avg = generalized_inverse(t, method="average")
            s_sol = generalized_inverse(t, method="solve")
            for s in (s_avg, s_sol):
                assert t.compose(s).compose(t) == t
            assert endomorphism_trace(s_avg.compose(t)) == endomorphism_trace(
                s_sol.compose(t)
            )

    def test_unknown_method_rejected(self, m2):
        with pytest.raises(ValueError):
            generalized_inverse(ModuleMap.identity(m2, 1), method="qr")

    def test_cache_round_trip(self, m2):
        rng = random.Random(9)
        t = random_module_map(rng, m2, max_rank=2)
        first = dim_image(t)
        assert dim_image(t) == first
        assert dim_image(t, use_cache=False) == first


class TestTwoRoutesAgree:
    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_exact_inner_product_route(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=2)
        assert dim_image_l2(t) == dim_image(t)

    def test_inner_product_route_on_non_regular(self, lopsided):
        rng = random.Random(21)
        for _ in range(8):
            t = random_module_map(rng, lopsided, max_rank=2)
            assert dim_image_l2(t) == dim_image(t)

    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_float_route(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=2)
        exact = dim_image(t)
        approx = dim_image_l2_float(t, tol=1e-9)
        assert abs(approx - float(exact)) < 1e-6

    def test_frozen_values_via_inner_product(self, m2, z3, lopsided):
        assert dim_image_l2(right_mult_map(m2, {0: ONE})) == Fraction(1, 2)
        assert dim_image_l2(
            right_mult_map(z3, {0: ONE, 1: ONE, 2: ONE})
        ) == Fraction(1, 3)
        assert dim_image_l2(right_mult_map(lopsided, {0: ONE})) == Fraction(1, 4)


class TestPresentedModules:
    def test_free_module_dims(self, m2):
        assert dim_module(PresentedModule.free(m2, 3)) == 3
        assert dim_module(PresentedModule.free(m2, 0)) == 0

    def test_cokernel_dim(self, z2):
        t = right_mult_map(z2, {0: ONE, 1: ONE})
        assert dim_module(PresentedModule(t)) == Fraction(1, 2)

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_rank_nullity_through_presentation(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        t = random_module_map(rng, algebra, max_rank=3)
        assert dim_module(PresentedModule(t)) == t.codomain_rank - dim_image(t)


class TestSubmodules:
    def test_principal_ideal_dims(self, m2, lopsided):
        free_m2 = PresentedModule.free(m2, 1)
        sub = Submodule(free_m2, [{0: {0: ONE}}])
        assert dim_submodule(sub) == Fraction(1, 2)
        free_lop = PresentedModule.free(lopsided, 1)
        sub2 = Submodule(free_lop, [{0: {0: ONE}}])
        assert dim_submodule(sub2) == Fraction(1, 4)

    def test_containment_and_equality(self, m2):
        free = PresentedModule.free(m2, 1)
        col = Submodule(free, [{0: {0: ONE}}])
        # e11 and e21 generate the same left module as e11 alone does not:
        # A*e11 is all matrices supported on the first column
        both = Submodule(free, [{0: {0: ONE}}, {0: {2: ONE}}])
        assert submodule_contains(both, col)
        assert submodule_contains(col, both)
        assert submodule_equal(col, both)
        whole = Submodule(free, [{0: dict(m2.unit)}])
        assert submodule_contains(whole, col)
        assert not submodule_contains(col, whole)

    def test_zero_submodule(self, z2):
        free = PresentedModule.free(z2, 2)
        zero = Submodule(free, [])
        assert dim_submodule(zero) == 0
        assert submodule_contains(Submodule(free, [random_vector(random.Random(1), z2, 2)]), zero)

    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_dim_additive_on_generator_split(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        x = random_presented_module(rng, algebra, max_rank=2)
        sub_ab = random_submodule(rng, x, max_generators=2)
        sub_a = Submodule(x, sub_ab.generators[:1])
        assert dim_submodule(sub_a) <= dim_submodule(sub_ab)
        assert dim_submodule(sub_ab) <= dim_module(x)


class TestHomSpaces:
    def test_free_rank_one(self, m2):
        homs = hom_space(PresentedModule.free(m2, 1), 1)
        assert len(homs) == m2.dim
        span = ScalarSpan()
        for phi in homs:
            assert span.insert(
                {i: v for i, v in phi.entries[(0, 0)].items()}
            )

    def test_target_rank_multiplies_count(self, m2):
        homs = hom_space(PresentedModule.free(m2, 1), 2)
        assert len(homs) == 2 * m2.dim

    def test_cokernel_of_column(self, m2):
        x = PresentedModule(right_mult_map(m2, {0: ONE}))
        homs = hom_space(x, 1)
        assert len(homs) == 2
        for phi in homs:
            y = phi.entries[(0, 0)]
            # e11 * y must vanish
            assert not m2.mul_coords({0: ONE}, y)

    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_hom_maps_kill_relations(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        x = random_presented_module(rng, algebra, max_rank=2)
        t = x.relations
        for phi in hom_space(x, 1):
            for q in range(t.domain_rank):
                col = [t.entries.get((p, q), {}) for p in range(x.ambient_rank)]
                assert not phi.apply(col)[0]


class TestClosureAndProjectivePart:
    @given(seeds)
    @settings(max_examples=12, deadline=None)
    def test_closure_contains_and_is_idempotent(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        x = random_presented_module(rng, algebra, max_rank=2)
        sub = random_submodule(rng, x)
        closed = algebraic_closure(sub)
        assert submodule_contains(closed, sub)
        again = algebraic_closure(closed)
        assert submodule_equal(again, closed)

    @given(seeds)
    @settings(max_examples=12, deadline=None)
    def test_closure_preserves_dimension_here(self, seed):
        # with a faithful trace on a finite-dimensional algebra the closure
        # adds nothing measurable: every submodule is a direct summand
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        x = random_presented_module(rng, algebra, max_rank=2)
        sub = random_submodule(rng, x)
        closed = algebraic_closure(sub)
        assert dim_submodule(closed) == dim_submodule(sub)
        assert submodule_equal(closed, sub)

    @given(seeds)
    @settings(max_examples=12, deadline=None)
    def test_projective_part_keeps_dimension(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        x = random_presented_module(rng, algebra, max_rank=2)
        p, pi = projective_part(x)
        assert dim_module(p) == dim_module(x)
        assert pi.image_dim() == dim_module(p)

    @given(seeds)
    @settings(max_examples=12, deadline=None)
    def test_image_dim_matches_projective_quotient(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        f = random_presented_map(rng, algebra, max_rank=2)
        report = check_image_dim_descends_to_projective_part(f)
        assert report["equal"], report

    def test_ill_defined_map_rejected(self, m2):
        # relations of the source are not carried into the target's
        x = PresentedModule(right_mult_map(m2, {0: ONE}))
        y = PresentedModule.free(m2, 1)
        with pytest.raises(ValueError):
            PresentedMap(x, y, ModuleMap.identity(m2, 1))


class TestPresentedMaps:
    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_image_dim_bounds(self, seed):
        rng = random.Random(seed)
        algebra = random_algebra(rng, max_dim=6)
        f = random_presented_map(rng, algebra, max_rank=2)
        v = f.image_dim()
        assert 0 <= v <= dim_module(f.target)
        assert v <= Fraction(f.source.ambient_rank)

    def test_identity_presented_map(self, m2):
        x = PresentedModule(right_mult_map(m2, {0: ONE}))
        f = PresentedMap(x, x, ModuleMap.identity(m2, 1))
        assert f.image_dim() == dim_module(x)


class TestRealizedVectors:
    def test_round_trip(self, m2):
        rng = random.Random(2)
        vec = random_vector(rng, m2, 3, density=0.8)
        flat = vector_realized(m2, vec)
        from l2betti.modules import vector_from_realized

        assert vector_from_realized(m2, flat) == {
            p: c for p, c in vec.items() if c
        }
