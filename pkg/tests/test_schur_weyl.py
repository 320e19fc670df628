from fractions import Fraction

import pytest

from confgrowth.characters import NegPartition, Partition, ch_Lminus, ch_Lplus
from confgrowth.diffops import DiffOp, delta_n, dminus_basis, dpoly
from confgrowth.schur_weyl import (
    GENERATOR_SETS,
    NotInDminusError,
    TensorVector,
    act,
    cauchy_check,
    cauchy_sum,
    cyclic_span_dims,
    dim_U,
    eigenvalue,
    hwv_construct,
    mixed_cauchy_check,
    tensor_power_series,
    tensor_space_dims,
)

t, Dop = DiffOp.t, DiffOp.D


def P(*parts):
    return Partition(parts)


def w(*idx, M=None, Md=0, N=6):
    return TensorVector(len(idx) - Md if M is None else M, Md, N, {idx: Fraction(1)})


def test_act_examples():
    v = w(1)
    assert act(Dop(), v) == v.scaled(-1)
    assert act(t(1), v).is_zero()
    assert act(t(-1) * Dop(), v) == w(2).scaled(-1)


def test_act_on_dual_factor():
    # t^{-1} D sends (t^0)^* to -(t^1)^*; t kills (t^0)^*
    v = w(0, M=0, Md=1)
    assert act(t(-1) * Dop(), v) == w(1, M=0, Md=1).scaled(-1)
    assert act(t(1), v).is_zero()


def test_act_rejects_operators_outside_dminus():
    with pytest.raises(NotInDminusError):
        act(t(-1), w(1))


def test_act_records_truncation():
    v = w(1, N=1)
    out = act(DiffOp({-2: dpoly([0, -1, 1])}), v)
    assert out.is_zero() and out.overflow


def test_hwv_examples():
    assert hwv_construct(P(1)) == w(1)
    v = hwv_construct(P(1, 1))
    assert v.terms == {(1, 2): 1, (2, 1): -1}
    assert eigenvalue(Dop(), v) == -3
    dual = hwv_construct(P(), NegPartition(P(1)))
    assert dual.terms == {(0,): 1} and (dual.M, dual.Mdual) == (0, 1)
    assert eigenvalue(Dop(), dual) == 0


@pytest.mark.parametrize("plus,minus", [(P(1), None), (P(2), None), (P(1, 1), None), (P(2, 1), None), (P(1), NegPartition(P(1))), (P(), NegPartition(P(1, 1)))])
def test_hwv_is_killed_by_lowering_operators(plus, minus):
    v = hwv_construct(plus, minus, N=8)
    for j in (-1, -2, -3):
        for b in dminus_basis(j, 4):
            assert act(b, v).is_zero(), str(b)


@pytest.mark.parametrize("parts", [(1,), (1, 1), (2, 1), (3,)])
def test_hwv_diagonal_eigenvalues(parts):
    lam = P(*parts)
    v = hwv_construct(lam)
    for n in range(5):
        assert eigenvalue(Dop(n), v) == delta_n(lam, None, "plain", n)
    assert eigenvalue(DiffOp({0: dpoly([Fraction(1, 2), 1])}), hwv_construct(P(1))) == Fraction(-1, 2)


def test_dim_u_examples():
    assert dim_U(P(4)) == 1
    assert dim_U(P(2, 1)) == 2
    assert dim_U(P(2, 2)) == 2
    assert [dim_U(p) for p in (P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1))] == [1, 3, 2, 3, 1]


def test_cauchy_examples():
    assert cauchy_sum(1, 8) == ch_Lplus(P(1), 8)
    assert tensor_power_series(2, 12) == cauchy_sum(2, 12)
    for M in range(6):
        assert cauchy_check(M, 12)


def test_mixed_cauchy():
    assert mixed_cauchy_check(1, 0, 10) == cauchy_check(1, 10)
    assert tensor_space_dims(0, 1, 6) == ch_Lminus(NegPartition(P(1)), 6)
    for M in range(5):
        for Md in range(5 - M):
            assert mixed_cauchy_check(M, Md, 10), (M, Md)


def test_span_examples():
    assert cyclic_span_dims(P(1), None, 6, "Dminus").as_ints() == [1] * 7
    assert cyclic_span_dims(P(1, 1), None, 5, "Dminus").as_ints() == [1, 1, 2, 2, 3, 3]
    assert cyclic_span_dims(P(1), None, 6, "Dsigma_minus").as_ints() == [1] * 7


@pytest.mark.parametrize("gens", GENERATOR_SETS)
@pytest.mark.parametrize("parts", [(2,), (2, 1)])
def test_span_matches_character(gens, parts):
    lam = P(*parts)
    assert cyclic_span_dims(lam, None, 5, gens) == ch_Lplus(lam, 5)


def test_mixed_span():
    minus = NegPartition(P(1))
    got = cyclic_span_dims(P(1), minus, 4, "Dminus")
    # the mixed module sits inside V (x) V'; its graded dims are at most those of the tensor space
    space = tensor_space_dims(1, 1, 4)
    assert got[0] == 1
    assert all(got[i] <= space[i] for i in range(5))


def test_span_rejects_unknown_generator_set():
    with pytest.raises(ValueError):
        cyclic_span_dims(P(1), None, 3, "everything")
