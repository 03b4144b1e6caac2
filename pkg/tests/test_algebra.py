"""Tracial *-algebra construction, validation, and the flip isomorphism."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2betti.algebra import (
    AlgebraError,
    TracialAlgebra,
    algebra_from_dict,
    algebra_to_dict,
    enveloping_algebra,
    flip_iso,
    group_algebra,
    multi_matrix_algebra,
    opposite_algebra,
    tensor_algebra,
)
from l2betti.groups import cyclic_cayley, klein_cayley, product_cayley, symmetric_cayley
from l2betti.scalars import ONE, ZERO, ParseError, Scalar

HALF = Scalar(Fraction(1, 2))


def rand_element(rng, algebra, density=0.5, bound=4):
    coords = {}
    for i in range(algebra.dim):
        if rng.random() < density:
            re = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
            im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
            coords[i] = Scalar(re, im)
    return algebra.element(coords)


@pytest.fixture(scope="module")
def m2():
    return multi_matrix_algebra([2], ["1/2"])


@pytest.fixture(scope="module")
def z2():
    return group_algebra(cyclic_cayley(2))


@pytest.fixture(scope="module")
def z3():
    return group_algebra(cyclic_cayley(3))


class TestMultiMatrix:
    def test_m2_structure(self, m2):
        assert m2.dim == 4
        assert m2.labels == ("e11", "e12", "e21", "e22")
        e11, e12, e21, e22 = (m2.basis_element(i) for i in range(4))
        assert e12 * e21 == e11
        assert e21 * e12 == e22
        assert (e12 * e12).is_zero()
        assert e11 * e12 == e12
        assert e12.star() == e21
        assert e11.star() == e11

    def test_m2_trace_and_unit(self, m2):
        e11, e12, _, e22 = (m2.basis_element(i) for i in range(4))
        assert e11.trace() == HALF
        assert e12.trace() == ZERO
        assert m2.unit_element() == e11 + e22
        assert m2.unit_element().trace() == ONE

    def test_m2_gram_is_diagonal_half(self, m2):
        g = m2.gram_matrix()
        for i in range(4):
            for j in range(4):
                assert g.at(i, j) == (HALF if i == j else ZERO)

    def test_m2_regular_trace(self, m2):
        assert m2.has_regular_trace()

    def test_weighted_diagonal_is_not_regular(self):
        a = multi_matrix_algebra([1, 1], ["1/3", "2/3"])
        assert not a.has_regular_trace()
        assert a.basis_element(0).trace() == Scalar(Fraction(1, 3))
        assert a.gram_matrix().at(1, 1) == Scalar(Fraction(2, 3))

    def test_weight_normalization_enforced(self):
        with pytest.raises(AlgebraError):
            multi_matrix_algebra([2], ["1/3"])
        with pytest.raises(AlgebraError):
            multi_matrix_algebra([1, 1], ["1/2", "-1/2"])
        with pytest.raises(AlgebraError):
            multi_matrix_algebra([2, 3], ["1/2"])

    def test_two_blocks(self):
        a = multi_matrix_algebra([2, 1], ["1/4", "1/2"])
        assert a.dim == 5
        assert a.has_regular_trace() is False
        # cross-block products vanish
        assert (a.basis_element(0) * a.basis_element(4)).is_zero()
        assert a.basis_element(4) * a.basis_element(4) == a.basis_element(4)


class TestGroupAlgebra:
    def test_z2(self, z2):
        e, g = z2.basis_element(0), z2.basis_element(1)
        assert g * g == e
        assert g.star() == g
        assert g.trace() == ZERO
        assert e.trace() == ONE
        assert z2.has_regular_trace()

    def test_z3_star_is_inverse(self, z3):
        g1, g2 = z3.basis_element(1), z3.basis_element(2)
        assert g1 * g1 == g2
        assert g1.star() == g2
        assert g1 * g2 == z3.unit_element()

    def test_s3_is_noncommutative(self):
        s3 = group_algebra(symmetric_cayley(3))
        assert s3.dim == 6
        found = any(
            s3.basis_element(i) * s3.basis_element(j)
            != s3.basis_element(j) * s3.basis_element(i)
            for i in range(6)
            for j in range(6)
        )
        assert found

    def test_klein_is_commutative(self):
        v4 = group_algebra(klein_cayley())
        for i in range(4):
            for j in range(4):
                assert v4.basis_element(i) * v4.basis_element(j) == v4.basis_element(
                    j
                ) * v4.basis_element(i)

    def test_product_table_matches_orders(self):
        t = product_cayley(cyclic_cayley(2), cyclic_cayley(3))
        a = group_algebra(t)
        assert a.dim == 6
        # (g, h) has order lcm(2, 3) = 6
        x = a.basis_element(1 * 3 + 1)
        y = a.unit_element()
        for _ in range(6):
            y = y * x
        assert y == a.unit_element()

    def test_bad_tables_rejected(self):
        with pytest.raises(AlgebraError):
            group_algebra([[0, 1], [1, 1]])
        with pytest.raises(AlgebraError):
            group_algebra([[0, 1], [0, 1]])
        with pytest.raises(AlgebraError):
            group_algebra([[0, 1]])
        with pytest.raises(AlgebraError):
            group_algebra([[0, 5], [5, 0]])


class TestTensorOppositeEnveloping:
    def test_tensor_products_componentwise(self, m2, z2):
        t = tensor_algebra(m2, z2)
        assert t.dim == 8

        def idx(i, j):
            return i * 2 + j

        e12g = t.basis_element(idx(1, 1))
        e21g = t.basis_element(idx(2, 1))
        assert e12g * e21g == t.basis_element(idx(0, 0))
        assert e12g.star() == e21g
        assert t.basis_element(idx(0, 0)).trace() == HALF * HALF * Scalar(2)

    def test_tensor_trace_multiplies(self, m2, z3):
        t = tensor_algebra(m2, z3)
        for i in range(m2.dim):
            for j in range(z3.dim):
                assert t.trace[i * 3 + j] == m2.trace[i] * z3.trace[j]

    def test_opposite_reverses(self, m2):
        op = opposite_algebra(m2)
        e12, e21 = op.basis_element(1), op.basis_element(2)
        # in the opposite algebra e12 . e21 means e21 e12 = e22
        assert e12 * e21 == op.basis_element(3)
        assert e12.star() == e21
        assert op.trace == m2.trace

    def test_enveloping(self, z2):
        env = enveloping_algebra(z2)
        assert env.dim == 4
        assert env.env_of is z2
        assert env.description["kind"] == "enveloping"
        env_m2 = enveloping_algebra(multi_matrix_algebra([2], ["1/2"]))
        assert env_m2.dim == 16
        assert env_m2.unit_element().trace() == ONE


class TestInverses:
    def test_diagonal_inverse(self, m2):
        e11, _, _, e22 = (m2.basis_element(i) for i in range(4))
        a = e11 + e22.smul(Scalar(2))
        inv = a.inverse()
        assert inv == e11 + e22.smul(HALF)
        assert a * inv == m2.unit_element()

    def test_non_invertible(self, m2, z2):
        assert m2.basis_element(0).inverse() is None
        e, g = z2.basis_element(0), z2.basis_element(1)
        assert (e + g).inverse() is None

    def test_group_element_inverse(self, z3):
        g1 = z3.basis_element(1)
        assert g1.inverse() == z3.basis_element(2)

    def test_inverse_cache_hits(self, m2):
        a = m2.basis_element(0) + m2.basis_element(3)
        first = a.inverse()
        second = a.inverse()
        assert first == second == m2.unit_element()


class TestSeparability:
    @pytest.mark.parametrize(
        "factory",
        [
            lambda: multi_matrix_algebra([2], ["1/2"]),
            lambda: multi_matrix_algebra([1, 1], ["1/3", "2/3"]),
            lambda: group_algebra(cyclic_cayley(3)),
            lambda: multi_matrix_algebra([2, 1], ["1/4", "1/2"]),
        ],
    )
    def test_separability_element(self, factory):
        a = factory()
        pairs = a.separability_element()
        total = {}
        for u, v in pairs:
            for k, val in a.mul_coords(u, v).items():
                cur = total.get(k, ZERO) + val
                if cur.is_zero():
                    total.pop(k, None)
                else:
                    total[k] = cur
        assert total == a.unit

        def two_tensor(lhs, rhs):
            out = {}
            for i, x in lhs.items():
                for j, y in rhs.items():
                    out[(i, j)] = out.get((i, j), ZERO) + x * y
            return {k: v for k, v in out.items() if not v.is_zero()}

        for b in range(a.dim):
            left_side = {}
            right_side = {}
            for u, v in pairs:
                for k, val in two_tensor(a.mul_coords({b: ONE}, u), v).items():
                    left_side[k] = left_side.get(k, ZERO) + val
                for k, val in two_tensor(u, a.mul_coords(v, {b: ONE})).items():
                    right_side[k] = right_side.get(k, ZERO) + val
            clean = lambda d: {k: v for k, v in d.items() if not v.is_zero()}
            assert clean(left_side) == clean(right_side)


@pytest.fixture(scope="module")
def flip_z2_z3(z2, z3):
    return flip_iso(z2, z3)


class TestFlip:
    def test_flip_is_star_algebra_iso(self, flip_z2_z3):
        flip = flip_z2_z3
        assert flip.source.dim == flip.target.dim == 36
        perm = flip.permutation()
        assert sorted(perm) == list(range(36))
        rng = random.Random(7)
        for _ in range(12):
            x = rand_element(rng, flip.source, density=0.3)
            y = rand_element(rng, flip.source, density=0.3)
            assert flip.apply(x * y) == flip.apply(x) * flip.apply(y)
            assert flip.apply(x.star()) == flip.apply(x).star()
            assert flip.apply(x).trace() == x.trace()
            assert flip.inverse_apply(flip.apply(x)) == x

    def test_flip_unit(self, flip_z2_z3):
        flip = flip_z2_z3
        assert flip.apply(flip.source.unit_element()) == flip.target.unit_element()

    def test_transport_matches_apply(self, flip_z2_z3):
        flip = flip_z2_z3
        rng = random.Random(11)
        for _ in range(8):
            u = rand_element(rng, flip.env_left, density=0.5)
            v = rand_element(rng, flip.env_right, density=0.5)
            dB2 = flip.env_right.dim
            coords = {}
            for s, x in u.coords.items():
                for t, y in v.coords.items():
                    coords[s * dB2 + t] = x * y
            assert flip.transport(u, v) == flip.apply(flip.source.element(coords))

    def test_flip_with_matrix_factor(self, m2, z2):
        flip = flip_iso(m2, z2)
        rng = random.Random(3)
        x = rand_element(rng, flip.source, density=0.2)
        y = rand_element(rng, flip.source, density=0.2)
        assert flip.apply(x * y) == flip.apply(x) * flip.apply(y)
        assert flip.apply(x.star()) == flip.apply(x).star()


class TestValidation:
    def test_corrupted_trace_rejected(self, m2):
        bad_trace = list(m2.trace)
        bad_trace[0] = Scalar(Fraction(9, 10))
        with pytest.raises(AlgebraError):
            TracialAlgebra(m2.labels, m2.struct, m2.star, m2.unit, bad_trace)

    def test_corrupted_star_rejected(self, m2):
        bad_star = list(m2.star)
        bad_star[1] = ((1, ONE),)
        with pytest.raises(AlgebraError):
            TracialAlgebra(m2.labels, m2.struct, bad_star, m2.unit, m2.trace)

    def test_corrupted_product_rejected(self, m2):
        bad_struct = dict(m2.struct)
        bad_struct[(1, 2)] = ((3, ONE),)
        with pytest.raises(AlgebraError):
            TracialAlgebra(m2.labels, bad_struct, m2.star, m2.unit, m2.trace)

    def test_degenerate_trace_rejected(self):
        # commutative 2-dim algebra with nilpotent n: tau(n) = 0 kills faithfulness
        struct = {(0, 0): ((0, ONE),), (0, 1): ((1, ONE),), (1, 0): ((1, ONE),)}
        star = [((0, ONE),), ((1, ONE),)]
        with pytest.raises(AlgebraError):
            TracialAlgebra(["u", "n"], struct, star, {0: ONE}, [ONE, ZERO])


class TestSerialization:
    def test_round_trip_multi_matrix(self):
        a = multi_matrix_algebra([2, 1], ["1/4", "1/2"])
        b = algebra_from_dict(algebra_to_dict(a))
        assert b.labels == a.labels
        assert b.struct == a.struct
        assert b.trace == a.trace

    def test_round_trip_group(self, z3):
        b = algebra_from_dict(algebra_to_dict(z3))
        assert b.struct == z3.struct

    def test_round_trip_tensor(self, m2, z2):
        t = tensor_algebra(m2, z2)
        b = algebra_from_dict(algebra_to_dict(t))
        assert b.dim == 8
        assert b.struct == t.struct

    def test_rejects_malformed(self):
        with pytest.raises(ParseError):
            algebra_from_dict({"kind": "mystery"})
        with pytest.raises(ParseError):
            algebra_from_dict({"kind": "multi_matrix", "blocks": [2]})
        with pytest.raises(ParseError):
            algebra_from_dict({"kind": "tensor", "left": {"kind": "group"}})
        with pytest.raises(ParseError):
            algebra_from_dict([1, 2])
        with pytest.raises(ParseError):
            algebra_from_dict({"kind": "group"})


coeff = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


@st.composite
def element_coords(draw, dim):
    n = draw(st.integers(min_value=0, max_value=dim))
    coords = {}
    for _ in range(n):
        i = draw(st.integers(min_value=0, max_value=dim - 1))
        coords[i] = Scalar(draw(coeff), draw(coeff))
    return coords


class TestElementProperties:
    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_star_antimultiplicative(self, data):
        a = multi_matrix_algebra([2], ["1/2"])
        x = a.element(data.draw(element_coords(a.dim)))
        y = a.element(data.draw(element_coords(a.dim)))
        assert (x * y).star() == y.star() * x.star()

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_trace_is_tracial_on_elements(self, data):
        a = group_algebra(symmetric_cayley(3))
        x = a.element(data.draw(element_coords(a.dim)))
        y = a.element(data.draw(element_coords(a.dim)))
        assert (x * y).trace() == (y * x).trace()

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_trace_positive(self, data):
        a = multi_matrix_algebra([2, 1], ["1/4", "1/2"])
        x = a.element(data.draw(element_coords(a.dim)))
        v = (x.star() * x).trace()
        assert v.is_real() and v.re >= 0
        if not x.is_zero():
            assert v.re > 0

    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_inner_product_matches_trace(self, data):
        a = group_algebra(cyclic_cayley(4))
        x = a.element(data.draw(element_coords(a.dim)))
        y = a.element(data.draw(element_coords(a.dim)))
        assert a.inner_coords(x.coords, y.coords) == (y.star() * x).trace()

    def test_as_unit_multiple(self):
        a = multi_matrix_algebra([2], ["1/2"])
        three = a.from_scalar(Scalar(3))
        assert three.as_unit_multiple() == Scalar(3)
        assert a.zero_element().as_unit_multiple() == ZERO
        assert a.basis_element(0).as_unit_multiple() is None
