import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_kring.lattice import (
    IntMatrix,
    RowLattice,
    determinant,
    is_primitive,
    is_unimodular_set,
    pairing,
    smith_normal_form,
)

from conftest import determinantal_factors

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def random_unimodular(n, rng, steps=20):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        kind = rng.random()
        if n > 1 and kind < 0.6:
            k = rng.choice([-2, -1, 1, 2])
            m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        elif n > 1 and kind < 0.8:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return m


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class TestSmithNormalForm:
    def test_diagonal_2_3(self):
        assert smith_normal_form([[2, 0], [0, 3]]).invariant_factors == (1, 6)
        assert smith_normal_form([[2, 0], [0, 3]]).rank == 2

    def test_identity(self):
        r = smith_normal_form([[1, 0], [0, 1]])
        assert (r.rank, r.invariant_factors) == (2, (1, 1))

    def test_empty(self):
        r = smith_normal_form(IntMatrix(0, 3))
        assert (r.rank, r.invariant_factors) == (0, ())

    def test_zero_matrix(self):
        assert smith_normal_form([[0, 0], [0, 0]]).rank == 0

    def test_big_entries(self):
        big = 10**40
        r = smith_normal_form([[big, 0], [0, big * 6]])
        assert r.invariant_factors == (big, 6 * big)

    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_matches_determinantal_divisors(self, rows):
        r = smith_normal_form(rows)
        assert list(r.invariant_factors) == determinantal_factors(rows)
        assert r.rank == len(r.invariant_factors) <= min(len(rows), len(rows[0]))

    @given(matrices())
    @settings(max_examples=100, deadline=None)
    def test_divisibility_chain(self, rows):
        f = smith_normal_form(rows).invariant_factors
        assert all(b % a == 0 for a, b in zip(f, f[1:]))
        assert all(x > 0 for x in f)

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, rows):
        r = smith_normal_form(rows)
        k = len(r.invariant_factors)
        if not k:
            return
        diag = [[r.invariant_factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
        assert smith_normal_form(diag) == r

    @given(matrices(), st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_unimodular_invariance(self, rows, seed):
        rng = random.Random(seed)
        left = random_unimodular(len(rows), rng)
        right = random_unimodular(len(rows[0]), rng)
        assert abs(determinant(left)) == 1 and abs(determinant(right)) == 1
        moved = matmul(matmul(left, rows), right)
        assert smith_normal_form(moved) == smith_normal_form(rows)


class TestRowLattice:
    def test_membership(self):
        lat = RowLattice(2)
        lat.add([2, 0])
        lat.add([0, 3])
        assert lat.contains([4, 3])
        assert not lat.contains([1, 0])
        assert lat.contains([0, 0])

    def test_gcd_merge(self):
        lat = RowLattice(1)
        lat.add([4])
        lat.add([6])
        assert lat.snf().invariant_factors == (2,)

    @given(matrices(5, 3), st.lists(small_ints, min_size=3, max_size=3))
    @settings(max_examples=100, deadline=None)
    def test_membership_matches_snf(self, rows, vec):
        rows = [r + [0] * (3 - len(r)) for r in rows]
        lat = RowLattice(3)
        lat.add_all(rows)
        before = smith_normal_form(rows)
        after = smith_normal_form(rows + [vec])
        same = before == after
        assert lat.contains(vec) == same

    def test_custom_order_same_snf(self):
        rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5], [3, 5, 8]]
        a = RowLattice(3)
        b = RowLattice(3, order=[2, 0, 1])
        a.add_all(rows)
        b.add_all(rows)
        assert a.snf() == b.snf() == smith_normal_form(rows)


class TestVectors:
    @pytest.mark.parametrize("v, expected", [((1, 0), True), ((2, 4), False), ((3, -2), True)])
    def test_is_primitive(self, v, expected):
        assert is_primitive(v) is expected

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            is_primitive((0, 0))

    def test_unimodular_examples(self):
        assert is_unimodular_set([(1, 0), (0, 1)])
        assert not is_unimodular_set([(1, 0), (1, 2)])
        assert is_unimodular_set([], dim=2)
        assert not is_unimodular_set([(1, 0), (0, 1), (1, 1)])

    @given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=3), st.data())
    @settings(max_examples=100, deadline=None)
    def test_unimodular_order_and_sign(self, vs, data):
        perm = data.draw(st.permutations(range(len(vs))))
        signs = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=len(vs), max_size=len(vs)))
        moved = [[s * x for x in vs[p]] for p, s in zip(perm, signs)]
        assert is_unimodular_set(vs, 3) == is_unimodular_set(moved, 3)

    def test_pairing(self):
        assert pairing((1, 0), (0, 1)) == 0
        assert pairing((1, 1), (-1, 2)) == 1
        with pytest.raises(ValueError):
            pairing((1,), (1, 2))

    @given(st.lists(small_ints, min_size=3, max_size=3), st.lists(small_ints, min_size=3, max_size=3), small_ints)
    def test_pairing_symmetric_and_linear(self, u, v, c):
        assert pairing(u, v) == pairing(v, u)
        assert pairing(u, [c * x for x in v]) == c * pairing(u, v)

    def test_determinant(self):
        assert determinant([[1, 0], [1, 2]]) == 2
        assert determinant([[0, 1], [2, 0]]) == -2
        assert determinant([]) == 1
