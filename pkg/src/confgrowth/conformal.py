"""The general Lie conformal algebra gc1 = Q[d, x] and its infinite rank subalgebras.

Elements are :class:`~confgrowth.exact_poly.Poly` instances in the variables
``d`` (the derivation) and ``x``.  A lambda-bracket is a polynomial in
``l`` (lambda), ``d`` and ``x``; the derivation is treated as a commuting
formal variable of the result.
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction
from typing import Callable

from .exact_poly import D, LAM, MU, X, Poly, as_rat, substitute

GcElement = Poly

_d = Poly.var(D)
_x = Poly.var(X)
_l = Poly.var(LAM)
_m = Poly.var(MU)


class SubalgebraTag(enum.Enum):
    GC1 = "gc1"
    GC1X = "gc1x"
    OC1 = "oc1"
    SPC1 = "spc1"


# Virasoro element x + alpha*d of each subalgebra
VIRASORO_ALPHA = {
    SubalgebraTag.GC1: None,  # any alpha
    SubalgebraTag.GC1X: Fraction(0),
    SubalgebraTag.OC1: Fraction(1, 2),
    SubalgebraTag.SPC1: Fraction(0),
}


def _keep(p: Poly) -> dict:
    return {v: Poly.var(v) for v in p.variables()}


def bracket_at(a: Poly, b: Poly, lam: Poly) -> Poly:
    """[a_lam b] with lam an arbitrary polynomial parameter.

    Variables of ``a`` and ``b`` other than ``d`` and ``x`` are treated as
    scalars, which is what nested brackets need.
    """
    s1 = _keep(a) | {D: -lam, X: lam + _d + _x}
    s2 = _keep(b) | {D: lam + _d, X: _x}
    s3 = _keep(b) | {D: lam + _d, X: -lam + _x}
    s4 = _keep(a) | {D: -lam, X: _x}
    return substitute(a, s1) * substitute(b, s2) - substitute(b, s3) * substitute(a, s4)


def lambda_bracket(a: Poly, b: Poly) -> Poly:
    """[a(d,x)_l b(d,x)] = a(-l, l+d+x) b(l+d, x) - b(l+d, -l+x) a(-l, x)."""
    return bracket_at(a, b, _l)


def virasoro_element(alpha) -> Poly:
    return _x + _d * as_rat(alpha)


def virasoro_check(alpha) -> bool:
    L = virasoro_element(alpha)
    return lambda_bracket(L, L) == (2 * _l + _d) * L


def _replace_lambda(p: Poly, image: Poly) -> Poly:
    return substitute(p, _keep(p) | {LAM: image})


def check_skew_symmetry(a: Poly, b: Poly) -> bool:
    """[b_l a] = -[a_{-l-d} b]."""
    return lambda_bracket(b, a) == -_replace_lambda(lambda_bracket(a, b), -_l - _d)


def check_sesquilinearity(a: Poly, b: Poly) -> bool:
    ab = lambda_bracket(a, b)
    return lambda_bracket(_d * a, b) == -_l * ab and lambda_bracket(a, _d * b) == (_l + _d) * ab


def check_jacobi(a: Poly, b: Poly, c: Poly) -> bool:
    """[a_l [b_m c]] - [b_m [a_l c]] = [[a_l b]_{l+m} c] as a polynomial in l, m, d, x."""
    lhs = bracket_at(a, bracket_at(b, c, _m), _l) - bracket_at(b, bracket_at(a, c, _l), _m)
    rhs = bracket_at(bracket_at(a, b, _l), c, _l + _m)
    return lhs == rhs


def reflect(a: Poly) -> Poly:
    """a(d, x) -> a(d, -d - x)."""
    return substitute(a, _keep(a) | {D: _d, X: -_d - _x})


def project(tag: SubalgebraTag, a: Poly) -> Poly:
    if tag is SubalgebraTag.GC1X:
        return _x * a
    if tag is SubalgebraTag.OC1:
        return a - reflect(a)
    if tag is SubalgebraTag.SPC1:
        return _x * (a + reflect(a))
    raise ValueError("gc1 is the whole algebra; no projection is defined")


def is_member(tag: SubalgebraTag, a: Poly) -> bool:
    if tag is SubalgebraTag.GC1:
        return True
    if tag is SubalgebraTag.OC1:
        return reflect(a) == -a
    q = a.exact_div_var(X)
    if q is None:
        return False
    if tag is SubalgebraTag.GC1X:
        return True
    return reflect(q) == q


class NotAMemberError(ValueError):
    pass


def closure_check(tag: SubalgebraTag, a: Poly, b: Poly) -> bool:
    for name, v in (("a", a), ("b", b)):
        if not is_member(tag, v):
            raise NotAMemberError(f"input {name} = {v} is not in {tag.value}")
    parts = lambda_bracket(a, b).coeff_in(LAM)
    return all(is_member(tag, c) for c in parts.values())


def twist(p: Poly, alpha) -> Poly:
    """Replace d by d + alpha."""
    return substitute(p, _keep(p) | {D: _d + as_rat(alpha)})


# -- modules over gc1 on Q[d] -------------------------------------------------

Action = Callable[[Poly, Poly, Poly], Poly]


def standard_action(a: Poly, lam: Poly, v: Poly) -> Poly:
    """a(d,x)_lam v(d) = a(-lam, lam + d) v(lam + d)."""
    av = substitute(a, _keep(a) | {D: -lam, X: lam + _d})
    vv = substitute(v, _keep(v) | {D: lam + _d})
    return av * vv


def zero_action(a: Poly, lam: Poly, v: Poly) -> Poly:
    return Poly()


def module_axiom_check(action: Action, a: Poly, b: Poly, v: Poly) -> bool:
    """[a_l b]_{l+m} v = a_l (b_m v) - b_m (a_l v), exactly in l, m, d."""
    lhs = action(bracket_at(a, b, _l), _l + _m, v)
    rhs = action(a, _l, action(b, _m, v)) - action(b, _m, action(a, _l, v))
    return lhs == rhs


# -- random elements ------------------------------------------------------------


def random_element(rng: random.Random, max_degree: int = 4, max_terms: int = 4, coeff_range: int = 5) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0, max_degree)
        i = rng.randint(0, total)
        num = rng.randint(-coeff_range, coeff_range)
        den = rng.randint(1, 3)
        terms[((D, i), (X, total - i))] = Fraction(num, den)
    return Poly(terms)


def random_member(tag: SubalgebraTag, rng: random.Random, max_degree: int = 4) -> Poly:
    """A random element of the subalgebra of total degree <= max_degree."""
    while True:
        inner = max_degree - 1 if tag in (SubalgebraTag.GC1X, SubalgebraTag.SPC1) else max_degree
        a = random_element(rng, max(inner, 0))
        p = a if tag is SubalgebraTag.GC1 else project(tag, a)
        if p:
            return p


def render_bracket(p: Poly) -> str:
    """Render a lambda-bracket grouped by powers of x, e.g. ``(2λ+∂)x``."""
    if p.is_zero():
        return "0"
    groups = p.coeff_in(X)
    out = []
    for k in sorted(groups, reverse=True):
        c = groups[k]
        body = c.render(order=(LAM, MU, D))
        xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        nterms = len(c.terms)
        if k == 0:
            piece = body
        elif nterms > 1:
            piece = f"({body}){xs}"
        elif body == "1":
            piece = xs
        elif body == "-1":
            piece = f"-{xs}"
        else:
            piece = f"{body}{xs}"
        if out and not piece.startswith("-"):
            piece = "+" + piece
        out.append(piece)
    return "".join(out)
