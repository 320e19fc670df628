import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confgrowth.characters import (
    BCWeight,
    GenWeight,
    NegPartition,
    NotDominantError,
    Partition,
    ch_bc_closed,
    ch_bc_coroot_oracle,
    ch_binf,
    ch_cinf,
    ch_finite_gl,
    ch_Lminus,
    ch_Lplus,
    ch_ssyt_oracle,
    cumulative_dims,
    growth_estimate,
    growth_exact,
    partitions_of,
    printed_convention,
    resolve_convention,
)
from confgrowth.exact_poly import QSeries


def P(*parts):
    return Partition(parts)


def test_partition_accessors():
    lam = P(3, 1, 1)
    assert (lam.d, lam.size, lam.n) == (3, 5, 0 * 3 + 1 * 1 + 2 * 1)
    assert lam.conjugate() == P(3, 1, 1).conjugate() == P(3, 1, 1)
    assert P(2, 1).conjugate() == P(2, 1)
    assert P(4, 2).conjugate() == P(2, 2, 1, 1)
    assert Partition.parse("3,1") == P(3, 1)
    with pytest.raises(ValueError):
        P(1, 2)
    assert P(2, 0) == P(2)


def test_partition_count():
    assert [sum(1 for _ in partitions_of(n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_ch_finite_gl_examples():
    assert ch_finite_gl(P(1), 1, 5).as_ints() == [1, 0, 0, 0, 0, 0]
    assert ch_finite_gl(P(2, 1), 2, 5).as_ints() == [1, 1, 0, 0, 0, 0]
    assert ch_finite_gl(P(1, 1), 2, 5).as_ints() == [1, 0, 0, 0, 0, 0]


def test_ch_lplus_examples():
    assert ch_Lplus(P(1), 5).as_ints() == [1] * 6
    assert ch_Lplus(P(1, 1), 4).as_ints() == [1, 1, 2, 2, 3]
    assert ch_Lplus(P(), 3).as_ints() == [1, 0, 0, 0]


def test_ssyt_oracle_examples():
    assert ch_ssyt_oracle(P(1), 3).as_ints() == [1, 1, 1, 1]
    assert ch_ssyt_oracle(P(2), 3).as_ints() == [1, 1, 2, 2]
    assert ch_ssyt_oracle(P(1, 1), 3).as_ints() == [1, 1, 2, 2]


@pytest.mark.parametrize("n", range(6))
def test_closed_form_matches_tableaux(n):
    for lam in partitions_of(n):
        assert ch_Lplus(lam, 12) == ch_ssyt_oracle(lam, 12), str(lam)


def test_lminus_mirrors_lplus():
    assert ch_Lminus(NegPartition(P(2, 1)), 8) == ch_Lplus(P(2, 1), 8)


def test_growth_exact_examples():
    assert growth_exact(GenWeight.parse("3,1")) == 4
    assert growth_exact(GenWeight.parse("1,2")) == math.inf
    assert growth_exact(GenWeight.parse("1/2")) == math.inf
    assert growth_exact(GenWeight(())) == 0
    assert growth_exact(P(2, 2, 1)) == 5


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=5, max_denominator=3), max_size=5))
def test_growth_dichotomy(labels):
    w = GenWeight(tuple(labels))
    ints = all(v.denominator == 1 for v in w.labels)
    ordered = all(a >= b for a, b in zip(w.labels, w.labels[1:] + (Fraction(0),)))
    expected = int(sum(w.labels)) if ints and ordered else math.inf
    assert growth_exact(w) == expected


def test_growth_estimate_examples():
    assert abs(growth_estimate(ch_Lplus(P(1), 200)) - 1) <= 0.15
    assert abs(growth_estimate(ch_Lplus(P(2, 1), 200)) - 3) <= 0.25
    assert growth_estimate(QSeries.one(50)) == 0
    with pytest.raises(ValueError):
        growth_estimate(QSeries([1, -1, 2], 2))


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)])
def test_cumulative_ratio_tracks_size(parts):
    lam = P(*parts)
    cum = cumulative_dims(ch_Lplus(lam, 200))
    ratio = float(cum[200] / cum[100])
    assert abs(ratio / 2**lam.size - 1) <= 0.2


def test_bc_weight_parse_and_dynkin():
    w = BCWeight.parse("B c=1 l=1")
    assert w == BCWeight.from_dynkin("B", {1: 1})
    assert w.n1 == 1 and w.is_dominant()
    assert BCWeight.from_dynkin("C", {0: 1}) == BCWeight("C", (), 1)
    assert BCWeight.from_dynkin("B", {0: 1}).c == Fraction(1, 2)


def test_non_dominant_weights_raise():
    for w in (BCWeight("B", (1, 2), 3), BCWeight("C", (2,), 1), BCWeight("B", (Fraction(1, 2),), 1)):
        assert not w.is_dominant()
        with pytest.raises(NotDominantError):
            ch_bc_coroot_oracle(w, 5)
        with pytest.raises(NotDominantError):
            (ch_binf if w.family == "B" else ch_cinf)(w, 5)


def test_bc_trivial_and_degree_one():
    assert ch_binf(BCWeight("B"), 6).as_ints() == [1, 0, 0, 0, 0, 0, 0]
    assert ch_bc_coroot_oracle(BCWeight("B"), 6).as_ints() == [1, 0, 0, 0, 0, 0, 0]
    b1 = ch_binf(BCWeight.parse("B c=1 l=1"), 6)
    assert (b1[0], b1[1]) == (1, 1)
    c0 = ch_cinf(BCWeight.parse("C c=1"), 6)
    assert (c0[0], c0[1]) == (1, 1)


PANEL = [{0: 1}, {1: 1}, {2: 1}, {0: 1, 1: 1}, {0: 2}]


@pytest.mark.parametrize("family", ["B", "C"])
@pytest.mark.parametrize("dynkin", PANEL)
def test_closed_formula_matches_coroot_product(family, dynkin):
    w = BCWeight.from_dynkin(family, dynkin)
    closed = (ch_binf if family == "B" else ch_cinf)(w, 10)
    assert closed == ch_bc_coroot_oracle(w, 10)
    assert closed[1] == w.simple_coroots_nonzero()


def test_resolved_conventions():
    b, c = resolve_convention("B"), resolve_convention("C")
    assert b == printed_convention("B")
    assert (c.middle_offset, c.label_shift, c.tail_start, c.tail_offset) == (1, 0, 0, 3)
    # the literal C indices disagree with the coroot product
    w = BCWeight.from_dynkin("C", {1: 1})
    assert ch_bc_closed(w, 10, printed_convention("C")) != ch_bc_coroot_oracle(w, 10)


def test_bc_estimates_increase():
    for w in (BCWeight.from_dynkin("B", {1: 1}), BCWeight.from_dynkin("C", {0: 1})):
        fn = ch_binf if w.family == "B" else ch_cinf
        est = [growth_estimate(fn(w, N)) for N in (20, 40, 80)]
        assert est[0] < est[1] < est[2]
