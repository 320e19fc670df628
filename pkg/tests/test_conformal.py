import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confgrowth import conformal as cf
from confgrowth.exact_poly import D, LAM, X, Poly

d, x, lam = Poly.var(D), Poly.var(X), Poly.var(LAM)
T = cf.SubalgebraTag


def test_bracket_examples():
    assert cf.lambda_bracket(x, x) == (2 * lam + d) * x
    assert cf.lambda_bracket(Poly.const(1), Poly.const(1)).is_zero()
    assert cf.lambda_bracket(x, Poly.const(1)) == lam + d


def test_render_bracket():
    assert cf.render_bracket(cf.lambda_bracket(x, x)) == "(2λ+∂)x"
    assert cf.render_bracket(cf.lambda_bracket(x, Poly.const(1))) == "λ+∂"
    assert cf.render_bracket(Poly()) == "0"


@pytest.mark.parametrize("alpha", [0, Fraction(1, 2), 1, -2, Fraction(7, 3)])
def test_virasoro(alpha):
    assert cf.virasoro_check(alpha)


def test_non_virasoro_element_fails():
    # x^2 is not a Virasoro element
    assert cf.lambda_bracket(x * x, x * x) != (2 * lam + d) * x * x


def test_jacobi_examples():
    one = Poly.const(1)
    assert cf.check_jacobi(x, x, x)
    assert cf.check_jacobi(one, one, one)
    assert cf.check_jacobi(x * x, d * x, x)


seeds = st.integers(0, 10**6)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_axioms_random(seed):
    rng = random.Random(seed)
    a, b, c = (cf.random_element(rng, 4) for _ in range(3))
    assert cf.check_skew_symmetry(a, b)
    assert cf.check_sesquilinearity(a, b)
    assert cf.check_jacobi(a, b, c)


def test_projection_examples():
    assert cf.project(T.OC1, x) == d + 2 * x
    assert cf.project(T.SPC1, Poly.const(1)) == 2 * x
    assert cf.project(T.OC1, Poly.const(1)).is_zero()
    with pytest.raises(ValueError):
        cf.project(T.GC1, x)


def test_membership_examples():
    assert cf.is_member(T.OC1, d + 2 * x)
    assert not cf.is_member(T.GC1X, d)
    assert cf.is_member(T.SPC1, 2 * x)
    assert not cf.is_member(T.SPC1, x * x)


def test_closure_examples():
    assert cf.closure_check(T.OC1, d + 2 * x, cf.project(T.OC1, x * x))
    assert cf.closure_check(T.GC1X, x, x * x)
    assert cf.closure_check(T.SPC1, 2 * x, cf.project(T.SPC1, x * x))


def test_closure_rejects_non_member():
    with pytest.raises(cf.NotAMemberError, match="input b"):
        cf.closure_check(T.GC1X, x, d)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([T.GC1X, T.OC1, T.SPC1]))
def test_projection_lands_in_subalgebra_and_closes(seed, tag):
    rng = random.Random(seed)
    a = cf.random_element(rng, 4)
    p = cf.project(tag, a)
    assert cf.is_member(tag, p)
    # applying the projection again rescales (OC1, by 2) or stays inside the image
    assert cf.is_member(tag, cf.project(tag, p)) if tag is not T.GC1X else True
    if tag is T.OC1:
        assert cf.project(tag, p) == p * 2
    b = cf.random_member(tag, rng, 4)
    m = cf.random_member(tag, rng, 4)
    assert cf.closure_check(tag, b, m)


def test_gc1x_is_not_oc1():
    # x d is in gc1x but not antisymmetric under x -> -d-x
    assert cf.is_member(T.GC1X, x * d) and not cf.is_member(T.OC1, x * d)


def test_twist_examples():
    assert cf.twist(lam + d, 1) == lam + d + 1
    p = (2 * lam + d) * x
    assert cf.twist(p, 0) == p
    assert cf.twist(p, Fraction(1, 2)) == (2 * lam + d + Fraction(1, 2)) * x


def test_module_action_candidate():
    one = Poly.const(1)
    assert cf.module_axiom_check(cf.standard_action, x, x, one)
    assert cf.module_axiom_check(cf.standard_action, x * x, x, d)
    assert cf.module_axiom_check(cf.zero_action, x * x, d, d * d)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_module_action_random(seed):
    rng = random.Random(seed)
    a, b = cf.random_element(rng, 3), cf.random_element(rng, 3)
    v = Poly({((D, rng.randint(0, 3)),): rng.randint(1, 5)})
    assert cf.module_axiom_check(cf.standard_action, a, b, v)


def test_wrong_action_is_rejected():
    def shifted(a, lam_, v):
        # a(-lam, d) v(lam + d): drops lam from the x slot
        from confgrowth.exact_poly import substitute

        keep = {k: Poly.var(k) for k in a.variables() | v.variables()}
        return substitute(a, keep | {D: -lam_, X: d}) * substitute(v, keep | {D: lam_ + d})

    assert not cf.module_axiom_check(shifted, x * x, x, Poly.const(1))
