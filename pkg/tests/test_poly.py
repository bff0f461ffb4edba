from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_kring import corpus
from toric_kring.charpair import faces
from toric_kring.fan import to_char_pair
from toric_kring.poly import IntPolynomial, TruncatedRing, initial_form, multiply, power_product, reduce


def P(d, *terms):
    return IntPolynomial(d, [(m, c) for m, c in terms])


@pytest.fixture
def p1_ring():
    return TruncatedRing.from_faces(2, 1, [(), (0,), (1,)])


@pytest.fixture
def p2_ring():
    cp = to_char_pair(corpus.projective_space(2))
    return TruncatedRing.from_faces(3, 2, faces(cp))


@pytest.fixture
def square_ring():
    return TruncatedRing.from_faces(4, 2, faces(corpus.square_quasitoric()))


def test_reduce_sr(p1_ring):
    assert reduce(P(2, ((1, 1), 1)), p1_ring).is_zero()


def test_reduce_degree(p2_ring):
    assert reduce(P(3, ((3, 0, 0), 1)), p2_ring).is_zero()


def test_reduce_mixed(p2_ring):
    p = P(3, ((1, 1, 0), 2), ((0, 0, 2), -1), ((1, 1, 1), 1))
    assert reduce(p, p2_ring) == P(3, ((1, 1, 0), 2), ((0, 0, 2), -1))


def test_multiply_examples(p1_ring, square_ring):
    a = P(2, ((0, 0), 1), ((1, 0), -1))
    b = P(2, ((0, 0), 1), ((1, 0), 1))
    assert multiply(a, b, p1_ring) == IntPolynomial.one(2)
    y0 = IntPolynomial.var(4, 0)
    y1 = IntPolynomial.var(4, 1)
    assert multiply(y0, y1, square_ring) == P(4, ((1, 1, 0, 0), 1))
    y2 = IntPolynomial.var(4, 2)
    assert multiply(y0, y2, square_ring).is_zero()


def test_multiply_identity(p2_ring):
    p = P(3, ((1, 0, 0), 3), ((0, 2, 1), 5), ((0, 1, 0), -2))
    assert multiply(p, IntPolynomial.one(3), p2_ring) == reduce(p, p2_ring)


def test_power_product(p1_ring, p2_ring):
    assert power_product([(0, 1)], p1_ring) == P(2, ((0, 0), 1), ((1, 0), -1))
    assert power_product([(0, 2)], p2_ring) == P(3, ((0, 0, 0), 1), ((1, 0, 0), -2), ((2, 0, 0), 1))
    assert power_product([(0, 1), (1, 1)], p1_ring) == P(2, ((0, 0), 1), ((1, 0), -1), ((0, 1), -1))


def test_power_product_large_exponent(p2_ring):
    # (1 - y0)^7 truncated at degree 2
    p = power_product([(0, 7)], p2_ring)
    assert p == P(3, ((0, 0, 0), 1), ((1, 0, 0), -7), ((2, 0, 0), comb(7, 2)))
    with pytest.raises(ValueError):
        power_product([(0, 0)], p2_ring)


def test_initial_form():
    # z_u for P1, u = 1: (1 - y0) - (1 - y1)
    z = P(2, ((0, 1), 1), ((1, 0), -1))
    assert initial_form(z) == z
    assert initial_form(P(2, ((1, 0), 3), ((1, 1), 1))) == P(2, ((1, 0), 3))
    with pytest.raises(ValueError):
        initial_form(IntPolynomial.zero(2))


def test_render():
    assert P(3, ((1, 1, 0), 2), ((0, 0, 2), -1)).render() == "2*y0*y1 - y2^2"
    assert P(3, ((0, 0, 0), 1), ((1, 0, 0), -2), ((2, 0, 0), 1)).render() == "1 - 2*y0 + y0^2"
    assert IntPolynomial.zero(2).render() == "0"
    assert P(2, ((1, 0), -1)).render() == "-y0"


def test_monomial_universe(p2_ring):
    mons = p2_ring.monomials()
    # 1, three y_i, three y_i^2, three y_i*y_j
    assert len(mons) == 10
    assert mons[0] == (0, 0, 0)
    assert all(p2_ring.survives(m) for m in mons)


# --- properties over the square ring ---------------------------------------

exps = st.tuples(*[st.integers(0, 2)] * 4)
polys = st.lists(st.tuples(exps, st.integers(-5, 5)), max_size=6).map(lambda ts: IntPolynomial(4, ts))


@given(polys)
def test_reduce_idempotent(p):
    ring = TruncatedRing.from_faces(4, 2, faces(corpus.square_quasitoric()))
    assert reduce(reduce(p, ring), ring) == reduce(p, ring)


@given(polys, polys, polys)
@settings(max_examples=80)
def test_ring_axioms(p, q, r):
    ring = TruncatedRing.from_faces(4, 2, faces(corpus.square_quasitoric()))
    assert multiply(p, q, ring) == multiply(q, p, ring)
    assert multiply(multiply(p, q, ring), r, ring) == multiply(p, multiply(q, r, ring), ring)
    assert multiply(p, q + r, ring) == multiply(p, q, ring) + multiply(p, r, ring)
    assert multiply(p, q, ring) == reduce(p * q, ring)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(1, 9)), max_size=5))
def test_power_product_constant_term(bases):
    ring = TruncatedRing.from_faces(4, 2, faces(corpus.square_quasitoric()))
    p = power_product(bases, ring)
    assert p.constant_term() == 1
    # agrees with expanding everything first and truncating once
    full = IntPolynomial.one(4)
    for i, a in bases:
        for _ in range(a):
            full = full * (IntPolynomial.one(4) - IntPolynomial.var(4, i))
    assert p == reduce(full, ring)
