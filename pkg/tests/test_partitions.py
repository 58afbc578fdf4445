from itertools import product as cartesian

from hypothesis import given
from hypothesis import strategies as st

from chl.coeff import ONE, T, one_minus_t_power
from chl.partitions import (
    Partition,
    box_count,
    enumerate_in_box,
    interlaces,
    is_horizontal_strip,
    occupancy_to_partition,
    partition_to_occupancy,
    partitions_of,
    psi_coefficient,
    z_lambda,
)

parts = st.lists(st.integers(1, 5), max_size=5).map(lambda xs: Partition(sorted(xs, reverse=True)))


def brute_partitions(n):
    out = set()
    for k in range(n + 1):
        for combo in cartesian(range(1, n + 1), repeat=k):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


def test_counts_match_brute_force():
    for n in range(7):
        assert set(partitions_of(n)) == brute_partitions(n)


@given(parts)
def test_conjugate_is_an_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(parts, parts)
def test_interlacing_is_one_row_horizontal_strip(lam, mu):
    if interlaces(lam, mu):
        assert is_horizontal_strip(lam, mu)


@given(parts)
def test_occupancy_roundtrip(lam):
    M = max(lam, default=0)
    assert occupancy_to_partition(partition_to_occupancy(lam, M)) == lam


def test_box_enumeration():
    for r in range(4):
        for c in range(4):
            box = enumerate_in_box(r, c)
            assert len(box) == box_count(r, c) == len(set(box))
            assert all(len(l) <= r and max(l, default=0) <= c for l in box)


def test_psi_examples():
    assert psi_coefficient((1,), ()) == ONE
    # q_1^2 = Q_{11} + (1 - t) Q_2
    assert psi_coefficient((2,), (1,)) == ONE - T
    assert psi_coefficient((1, 1), (1,)) == ONE
    assert psi_coefficient((2, 1), (1, 1)) == one_minus_t_power(2)


def test_z_lambda():
    assert z_lambda((1, 1, 1)) == 6
    assert z_lambda((2, 1)) == 2
    assert sum(1 / z_lambda(l) for l in partitions_of(5)) == 1
