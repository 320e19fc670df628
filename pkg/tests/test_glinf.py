import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confgrowth.diffops import DiffOp, cocycle_psi, d0sigmabar_basis, diffop_bracket, dpoly, dsigma_basis, random_diffop, random_in
from confgrowth.glinf import (
    BandedMat,
    FinMat,
    JPoly,
    ModulusMismatchError,
    RmPoly,
    cocycle_alpha,
    homomorphism_check,
    in_binf,
    in_cinf,
    in_dinf,
    kappa_series,
    mat_bracket,
    mat_product,
    p_s_project,
    phi_hat,
    phi_hat_correction,
    phi_s_m,
    random_banded,
    random_finmat,
)

t, Dop = DiffOp.t, DiffOp.D
E = FinMat.unit
seeds = st.integers(0, 10**6)


def brute_entry(A, B, i, j, width=30):
    total = RmPoly.zero(A.m)
    for c in range(-width, width + 1):
        total = total + A.entry(i, c) * B.entry(c, j)
    return total


def test_rm_arithmetic():
    u = RmPoly([0, 1], 2)
    assert u * u == RmPoly([0, 0, 1], 2)
    assert u * u * u == RmPoly.zero(2)
    assert RmPoly([1, 2], 1).flip() == RmPoly([1, -2], 1)
    with pytest.raises(ModulusMismatchError):
        RmPoly([1], 0) + RmPoly([1], 1)


def test_finmat_bracket_examples():
    assert mat_bracket(E(0, 1), E(1, 0), True) == FinMat(0, {(0, 0): 1, (1, 1): -1}, central=1)
    assert mat_bracket(E(1, 2), E(2, 1), True) == FinMat(0, {(1, 1): 1, (2, 2): -1})
    A = random_finmat(random.Random(3))
    assert mat_bracket(A, A, True) == FinMat(0)


def test_banded_bracket_matches_finite_example():
    got = mat_bracket(E(0, 1).to_banded(), E(1, 0).to_banded(), True)
    assert got == BandedMat.from_entries(0, {(0, 0): 1, (1, 1): -1}, central=1)


def test_alpha_examples():
    assert cocycle_alpha(phi_s_m(0, 0, t(1)), phi_s_m(0, 0, t(-1))) == 1
    A = FinMat(0, {(1, 2): 3, (2, 1): 1}).to_banded()
    B = FinMat(0, {(2, 1): 5, (1, 3): 1}).to_banded()
    assert cocycle_alpha(A, B).is_zero()


def test_alpha_t2_against_psi():
    # only column 1 contributes: A_{-1,1} B_{1,-1} = 1 * (-(-1)) = 1
    a, b = t(2), t(-2) * Dop()
    assert cocycle_alpha(phi_s_m(0, 0, a), phi_s_m(0, 0, b)) == 1
    assert cocycle_psi(a, b) == 1


def test_phi_examples():
    assert phi_s_m(0, 0, t(1)) == BandedMat.uniform(0, {1: JPoly.const(1)})
    assert phi_s_m(0, 0, Dop()) == BandedMat.uniform(0, {0: JPoly({(1, 0): -1})})
    assert phi_s_m(0, 1, Dop()) == BandedMat.uniform(1, {0: JPoly({(1, 0): -1, (0, 1): 1}, 1)})


def test_phi_hat_correction_examples():
    f = dpoly([3, 2, 1])
    assert phi_hat_correction(0, 0, f, 6).is_zero()
    assert phi_hat_correction(2, 0, dpoly([1]), 4) == 2
    assert phi_hat_correction(2, 0, dpoly([0, 1]), 4) == 1


def test_kappa_integer_s_is_geometric_sum():
    # (e^{3x} - 1)/(e^x - 1) = 1 + e^x + e^{2x}
    kap = kappa_series(3, 0, 5)
    from math import factorial

    for n, c in enumerate(kap):
        assert c == RmPoly.const(Fraction(sum(j**n for j in range(3)), factorial(n)))


def test_homomorphism_examples():
    assert homomorphism_check(0, 0, t(1), t(-1))
    assert homomorphism_check(0, 0, Dop(), Dop(2))
    assert homomorphism_check(Fraction(1, 3), 1, t(2) * Dop(), t(-2) * Dop())


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(-1, 2), Fraction(2)]), st.integers(0, 1))
def test_homomorphism_random(seed, s, m):
    rng = random.Random(seed)
    a, b = random_diffop(rng, 3, 4), random_diffop(rng, 3, 4)
    assert homomorphism_check(s, m, a, b)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([Fraction(0), Fraction(5, 7), Fraction(-3)]), st.integers(0, 1))
def test_phi_is_lie_homomorphism(seed, s, m):
    rng = random.Random(seed)
    a, b = random_diffop(rng), random_diffop(rng)
    assert phi_s_m(s, m, diffop_bracket(a, b)) == mat_bracket(phi_s_m(s, m, a), phi_s_m(s, m, b))


def test_phi_rejects_central_part():
    with pytest.raises(ValueError):
        phi_s_m(0, 0, DiffOp(central=1))
    assert phi_hat(0, 0, DiffOp(central=1)).central == 1


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_product_matches_brute_force(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 1)
    A, B = random_banded(rng, m), random_banded(rng, m)
    P = mat_product(A, B)
    for i in range(-6, 7):
        for j in range(-6, 7):
            assert P.entry(i, j) == brute_entry(A, B, i, j)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_bracket_jacobi_and_alpha_cocycle(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 1)
    A, B, C = (random_banded(rng, m) for _ in range(3))
    br = mat_bracket
    assert br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B)) == BandedMat(m)
    al = cocycle_alpha
    assert (al(br(A, B), C) + al(br(B, C), A) + al(br(C, A), B)).is_zero()


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_finmat_and_banded_agree(seed):
    rng = random.Random(seed)
    m = rng.randint(0, 1)
    F1, F2 = random_finmat(rng, m), random_finmat(rng, m)
    assert mat_bracket(F1, F2, True).to_banded() == mat_bracket(F1.to_banded(), F2.to_banded(), True)
    s = rng.randint(-3, 3)
    assert p_s_project(s, F1).to_banded() == p_s_project(s, F1.to_banded())


def test_membership_examples():
    assert in_dinf(phi_s_m(0, 0, DiffOp({1: dpoly([1, 1])})))
    assert in_binf(FinMat(0, {(1, 1): 1, (-1, -1): -1}))
    assert not in_cinf(FinMat(0, {(0, 0): 1, (1, 1): 1}))
    assert in_cinf(FinMat(0, {(0, 0): 1, (1, 1): -1}))


def test_d_condition_needs_the_u_flip():
    # phi_0(D + 1/2) over R_1 has entries -j + 1/2 + u; the mirror column 1-j gives j - 1/2 + u
    A = phi_s_m(0, 1, DiffOp({0: dpoly([Fraction(1, 2), 1])}))
    assert in_dinf(A)
    assert A.entry(3, 3) != -A.entry(-2, -2)
    assert A.entry(3, 3) == -A.entry(-2, -2).flip()


def test_image_membership_b_and_d():
    for m in (0, 1):
        for j in range(-3, 4):
            for b in dsigma_basis(j, 5):
                assert in_dinf(phi_s_m(0, m, b))
                assert in_binf(phi_s_m(Fraction(-1, 2), m, b))


def test_image_of_d0sigmabar_misses_c_condition():
    # with e(j) = w h(w) at w = -j + s and h(w) = h(-w-k), the mirrored entry carries
    # the factor -(w+k)/w instead of a constant sign; only s = 1/2, k = 0 survives
    hits = {}
    for s in (Fraction(0), Fraction(-1, 2), Fraction(1, 2)):
        hits[s] = [j for j in range(-3, 4) for b in d0sigmabar_basis(j, 4) if in_cinf(phi_s_m(s, 0, b))]
    assert hits[Fraction(0)] == []
    assert hits[Fraction(1, 2)] == [0, 0, 0]


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_bcd_closure(seed):
    rng = random.Random(seed)
    # members: images of the sigma-fixed subalgebra
    a, b = random_in("Dsigma", rng), random_in("Dsigma", rng)
    for m in (0, 1):
        A, B = phi_s_m(0, m, a), phi_s_m(0, m, b)
        assert in_dinf(A) and in_dinf(B) and in_dinf(mat_bracket(A, B))
        A, B = phi_s_m(Fraction(-1, 2), m, a), phi_s_m(Fraction(-1, 2), m, b)
        assert in_binf(A) and in_binf(B) and in_binf(mat_bracket(A, B))
    # finite c-members: X + involution(X)
    def c_member(F):
        out = {}
        for (i, j), v in F.entries.items():
            out[(i, j)] = out.get((i, j), RmPoly.zero(F.m)) + v
            sign = -1 if (i + j) % 2 == 0 else 1
            key = (1 - j, 1 - i)
            out[key] = out.get(key, RmPoly.zero(F.m)) + v.flip() * sign
        return FinMat(F.m, out)

    C1, C2 = c_member(random_finmat(rng, 1)), c_member(random_finmat(rng, 1))
    assert in_cinf(C1) and in_cinf(C2) and in_cinf(mat_bracket(C1, C2))


def test_p_s_examples():
    assert p_s_project(0, E(0, 1)) == FinMat(0)
    assert p_s_project(0, E(1, 2)) == E(0, 1)
    assert p_s_project(0, E(-1, -2)) == E(-1, -2)


@settings(max_examples=10, deadline=None)
@given(seeds, st.integers(-2, 2))
def test_p_s_reindexes_banded(seed, s):
    rng = random.Random(seed)
    A = random_banded(rng, rng.randint(0, 1))
    Q = p_s_project(s, A)
    for i in range(-6, 7):
        for j in range(-6, 7):
            oi, oj = (i if i < s else i + 1), (j if j < s else j + 1)
            assert Q.entry(i, j) == A.entry(oi, oj)


@settings(max_examples=10, deadline=None)
@given(seeds, st.integers(-2, 2))
def test_p_s_after_phi_s_is_a_homomorphism_on_d0(seed, s):
    # column s of phi_s(a) vanishes for a in D0, so deleting it commutes with brackets
    rng = random.Random(seed)
    a, b = random_in("D0", rng), random_in("D0", rng)
    lhs = p_s_project(s, phi_s_m(s, 0, diffop_bracket(a, b)))
    rhs = mat_bracket(p_s_project(s, phi_s_m(s, 0, a)), p_s_project(s, phi_s_m(s, 0, b)))
    assert lhs == rhs


def test_window_display():
    A = phi_s_m(0, 0, t(1))
    assert [(i, j) for i, j, _ in A.window(0, 2)] == [(0, 1), (1, 2)]
