import pytest
from hypothesis import given
from hypothesis import strategies as st

from chl import conifold
from chl.coeff import T, RatCoeff
from chl.conifold import SeriesZ

ints = st.lists(st.integers(-3, 3), min_size=1, max_size=6)


@given(ints, ints)
def test_series_ring(a, b):
    x, y = SeriesZ(a, 5), SeriesZ(b, 5)
    assert x * y == y * x
    assert (x + y) - y == x


@given(ints)
def test_reciprocal_and_exp(a):
    x = SeriesZ([1] + a, 5)
    assert x * x.reciprocal() == SeriesZ.one(5)
    y = SeriesZ([0] + a, 5)
    assert y.exp() * (-y).exp() == SeriesZ.one(5)


def test_macmahon_by_plane_partition_count():
    # independent recursion: n M(n) = Σ σ_2(k) M(n - k)
    K = 8
    sigma2 = [0] + [sum(d * d for d in range(1, k + 1) if k % d == 0) for k in range(1, K + 1)]
    m = [1]
    for n in range(1, K + 1):
        m.append(sum(sigma2[k] * m[n - k] for k in range(1, n + 1)) // n)
    assert conifold.macmahon(K).coeffs == [RatCoeff(v) for v in m]


@pytest.mark.parametrize("K", [1, 2, 3, 5])
def test_full_correlator_is_product(K):
    assert conifold.full_correlator(K) == conifold.conifold_product(K, T * T)
    assert conifold.gamma_minus_correlator(K) == conifold.lemma_product(K)


@pytest.mark.parametrize("K", [1, 2, 3])
def test_polynomial_route(K):
    assert conifold.full_correlator_polynomial(K) == conifold.full_correlator(K)


def test_order_of_minus_string_is_irrelevant():
    assert conifold.full_correlator(4, minus_order=[1, 3, 2, 4]) == conifold.full_correlator(4)


def test_truncation_stable():
    big = conifold.full_correlator(6)
    assert big.coeffs[:5] == conifold.full_correlator(4).coeffs


def test_same_alphabet_pairing():
    K = 5
    want = (SeriesZ.one(K) - SeriesZ.monomial(1, K, T)) / (SeriesZ.one(K) - SeriesZ.monomial(1, K))
    assert conifold.same_alphabet_pairing(K, 1) == want
    assert conifold.same_alphabet_pairing(K, 2) == want


def test_product_rejects_negative_order():
    with pytest.raises(ValueError):
        conifold.conifold_product(-1)
