import pytest
from hypothesis import given
from hypothesis import strategies as st

from chl.coeff import ONE, ZERO, one_minus_t_power
from chl.hl import (
    apply_H,
    apply_H_perp,
    b_lambda,
    hl_P,
    hl_Q,
    hl_scalar,
    pieri_multiply,
    single_basis,
)
from chl.partitions import Partition, partitions_of, partitions_up_to
from chl.sym import SymElem

small = st.sampled_from(partitions_up_to(5))


def qpoch(m):
    out = ONE
    for i in range(1, m + 1):
        out = out * one_minus_t_power(i)
    return out


@pytest.mark.parametrize("lam", partitions_up_to(5))
def test_b_lambda_product_formula(lam):
    want = ONE
    for m in Partition(lam).multiplicities().values():
        want = want * qpoch(m)
    assert b_lambda(lam) == want


@given(small, small)
def test_P_Q_orthonormal(a, b):
    assert hl_scalar(hl_P(a), hl_Q(b)) == (ONE if a == b else ZERO)


def test_Q_one_row_is_q():
    for n in range(5):
        assert hl_Q((n,)).to("q") == SymElem.monomial("q", Partition((n,)) if n else Partition())


@given(st.integers(0, 3), st.sampled_from(partitions_up_to(3)))
def test_pieri_matches_product(n, lam):
    lhs = (hl_Q((n,)).product(hl_Q(lam))).to("Q")
    assert lhs == pieri_multiply(n, lam).to("Q")


def test_Q_is_homogeneous():
    for n in range(6):
        for lam in partitions_of(n):
            assert hl_Q(lam).to("p").degrees() <= {n}


def test_H_perp_adjoint_to_H():
    basis = single_basis(4)
    for M in (1, 2):
        for f in basis:
            for g in basis:
                lhs = apply_H_perp(M, f)
                rhs = apply_H(M, g)
                for exps in set(lhs.terms) | set(rhs.terms):
                    a = lhs.coefficient(exps)
                    b = rhs.coefficient(exps)
                    left = hl_scalar(a, g) if a else ZERO
                    right = hl_scalar(f, b) if b else ZERO
                    assert left == right
