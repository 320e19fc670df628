"""Regular differential operators on the punctured line.

An operator is a finite sum of ``t^k f(D)`` with ``D = t d/dt``.  The
``f(t) (d/dt)^m`` form (:class:`DdtForm`) is kept alongside for the residue
cocycle and the ``t -> t, d/dt -> -d/dt`` anti-involution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .characters import NegPartition, Partition
from .exact_poly import UnivarPoly, XSeries, as_rat

DVAR = "D"


def dpoly(coeffs) -> UnivarPoly:
    """Polynomial in D from a coefficient list or mapping."""
    return UnivarPoly(coeffs, DVAR)


class DiffOp:
    """sum_k t^k f_k(D), plus an optional central coefficient."""

    __slots__ = ("_t", "central")

    def __init__(self, terms: Mapping[int, UnivarPoly] | None = None, central=0):
        t = {}
        for k, f in (terms or {}).items():
            if not isinstance(f, UnivarPoly):
                f = UnivarPoly.const(f, DVAR)
            if f:
                t[int(k)] = f.with_var(DVAR)
        self._t = t
        self.central = as_rat(central)

    @classmethod
    def t(cls, k: int = 1, f: UnivarPoly | None = None) -> "DiffOp":
        return cls({k: f if f is not None else dpoly([1])})

    @classmethod
    def D(cls, n: int = 1) -> "DiffOp":
        return cls({0: UnivarPoly.monomial(n, 1, DVAR)})

    @classmethod
    def scalar(cls, c) -> "DiffOp":
        return cls({0: dpoly([c])})

    @property
    def terms(self) -> dict[int, UnivarPoly]:
        return dict(self._t)

    def coeff(self, k: int) -> UnivarPoly:
        return self._t.get(k, dpoly([]))

    def powers(self) -> list[int]:
        return sorted(self._t)

    def is_zero(self) -> bool:
        return not self._t and not self.central

    def __bool__(self):
        return not self.is_zero()

    def without_central(self) -> "DiffOp":
        return DiffOp(self._t)

    def with_central(self, c) -> "DiffOp":
        return DiffOp(self._t, c)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self._t)
        for k, f in other._t.items():
            out[k] = out.get(k, dpoly([])) + f
        return DiffOp(out, self.central + other.central)

    def __neg__(self):
        return DiffOp({k: -f for k, f in self._t.items()}, -self.central)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def __mul__(self, other):
        """Composition with another operator, or scaling by a number.

        Composition ignores central parts.
        """
        if isinstance(other, DiffOp):
            out: dict[int, UnivarPoly] = {}
            for k, f in self._t.items():
                for l, g in other._t.items():
                    out[k + l] = out.get(k + l, dpoly([])) + f.shift(l) * g
            return DiffOp(out)
        c = as_rat(other)
        return DiffOp({k: f * c for k, f in self._t.items()}, self.central * c)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._t == other._t and self.central == other.central

    def __hash__(self):
        return hash((frozenset(self._t.items()), self.central))

    def degree(self, k: int) -> int:
        return -k

    def render(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k in sorted(self._t, reverse=True):
            f = self._t[k]
            body = f.render()
            tk = "" if k == 0 else ("t" if k == 1 else f"t^{k}" if k > 0 else f"t^({k})")
            if not tk:
                pieces.append(body)
            elif body == "1":
                pieces.append(tk)
            elif len(f.coeffs) == 1 and not body.startswith("-"):
                pieces.append(f"{tk}·{body}")
            else:
                pieces.append(f"{tk}·({body})")
        if self.central:
            pieces.append(f"{self.central}·C")
        out = pieces[0]
        for p in pieces[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DiffOp({self.render()!r})"


# ---------------------------------------------------------------------------
# f(t) (d/dt)^m form


class DdtForm:
    """sum_m f_m(t) (d/dt)^m with Laurent polynomial coefficients f_m."""

    __slots__ = ("_m",)

    def __init__(self, terms: Mapping[int, Mapping[int, object]] | None = None):
        out = {}
        for m, lau in (terms or {}).items():
            if m < 0:
                raise ValueError("order of d/dt must be non-negative")
            row = {int(e): as_rat(c) for e, c in lau.items() if as_rat(c)}
            if row:
                out[int(m)] = row
        self._m = out

    @property
    def terms(self) -> dict[int, dict[int, Fraction]]:
        return {m: dict(r) for m, r in self._m.items()}

    def orders(self) -> list[int]:
        return sorted(self._m)

    def laurent(self, m: int) -> dict[int, Fraction]:
        return dict(self._m.get(m, {}))

    def __eq__(self, other):
        if not isinstance(other, DdtForm):
            return NotImplemented
        return self._m == other._m

    def __hash__(self):
        return hash(tuple(sorted((m, tuple(sorted(r.items()))) for m, r in self._m.items())))

    def render(self) -> str:
        if not self._m:
            return "0"
        parts = []
        for m in sorted(self._m):
            lau = " + ".join(f"{c}·t^{e}" for e, c in sorted(self._m[m].items()))
            parts.append(f"({lau})·(d/dt)^{m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DdtForm({self.render()!r})"


def to_ddt_form(a: DiffOp) -> DdtForm:
    """t^k f(D) = sum_m c_m t^{k+m} (d/dt)^m with c_m the falling-factorial
    coefficients of f (since t^m (d/dt)^m = D(D-1)...(D-m+1))."""
    out: dict[int, dict[int, Fraction]] = {}
    for k, f in a.terms.items():
        for m, c in enumerate(f.forward_differences()):
            if c:
                row = out.setdefault(m, {})
                row[k + m] = row.get(k + m, 0) + c
    return DdtForm(out)


def from_ddt_form(form: DdtForm) -> DiffOp:
    """t^e (d/dt)^m = t^{e-m} D(D-1)...(D-m+1)."""
    out = DiffOp()
    for m, lau in form.terms.items():
        fall = UnivarPoly.falling(m, DVAR)
        for e, c in lau.items():
            out = out + DiffOp({e - m: fall * c})
    return out


def _laurent_derivative(lau: Mapping[int, Fraction], order: int) -> dict[int, Fraction]:
    out = {}
    for e, c in lau.items():
        v = c
        for i in range(order):
            v *= e - i
        if v:
            out[e - order] = v
    return out


def _laurent_residue_product(f: Mapping[int, Fraction], g: Mapping[int, Fraction]) -> Fraction:
    return sum((c * g.get(-1 - e, 0) for e, c in f.items()), Fraction(0))


def cocycle_psi(a: DiffOp, b: DiffOp) -> Fraction:
    """Psi(f (d/dt)^m, g (d/dt)^n) = m! n! / (m+n+1)! Res f^{(n+1)} g^{(m)}.

    Without the factorial weight the pairing fails the cocycle identity; the
    weight is what makes phi_s lift to the central extensions.
    """
    fa, fb = to_ddt_form(a), to_ddt_form(b)
    total = Fraction(0)
    for m, f in fa.terms.items():
        for n, g in fb.terms.items():
            res = _laurent_residue_product(_laurent_derivative(f, n + 1), _laurent_derivative(g, m))
            if res:
                total += Fraction(factorial(m) * factorial(n), factorial(m + n + 1)) * res
    return total


def cocycle_psi_unweighted(a: DiffOp, b: DiffOp) -> Fraction:
    """The residue pairing without the factorial weight; kept for comparison tests."""
    fa, fb = to_ddt_form(a), to_ddt_form(b)
    total = Fraction(0)
    for m, f in fa.terms.items():
        for n, g in fb.terms.items():
            total += _laurent_residue_product(_laurent_derivative(f, n + 1), _laurent_derivative(g, m))
    return total


def diffop_bracket(a: DiffOp, b: DiffOp, with_central: bool = False) -> DiffOp:
    c = a * b - b * a
    if with_central:
        return c.with_central(cocycle_psi(a, b))
    return c


def graded_component(a: DiffOp) -> dict[int, DiffOp]:
    """Split by principal degree; t^k f(D) has degree -k."""
    return {-k: DiffOp({k: f}) for k, f in a.terms.items()}


# ---------------------------------------------------------------------------
# subalgebras


def in_Dminus(a: DiffOp) -> bool:
    """Pieces t^{-j} f(D) with j >= 1 need f(0) = ... = f(j-1) = 0."""
    for k, f in a.terms.items():
        j = -k
        if any(f(Fraction(i)) for i in range(j)):
            return False
    return True


def in_D0(a: DiffOp) -> bool:
    return all(f.coeff(0) == 0 for f in a.terms.values())


def sigma_ddt(form: DdtForm) -> DdtForm:
    """f (d/dt)^m -> (-d/dt)^m o f = (-1)^m sum_i C(m,i) f^{(i)} (d/dt)^{m-i}."""
    out: dict[int, dict[int, Fraction]] = {}
    for m, lau in form.terms.items():
        sign = -1 if m % 2 else 1
        for i in range(m + 1):
            for e, c in _laurent_derivative(lau, i).items():
                row = out.setdefault(m - i, {})
                row[e] = row.get(e, 0) + sign * comb(m, i) * c
    return DdtForm(out)


def sigma_apply(a: DiffOp) -> DiffOp:
    return from_ddt_form(sigma_ddt(to_ddt_form(a))).with_central(a.central)


def sigma_closed_form(a: DiffOp) -> DiffOp:
    """t^k f(D) -> t^k f(-D-1-k); agrees with :func:`sigma_apply`."""
    return DiffOp({k: f.compose_affine(-1, -1 - k) for k, f in a.terms.items()}, a.central)


def in_Dsigma(a: DiffOp) -> bool:
    return sigma_apply(a.without_central()) == -a.without_central()


def dsigma_parity(a: DiffOp) -> bool:
    """Each piece t^k f(D) must have f(w - (k+1)/2) odd."""
    return all(f.shift(Fraction(-(k + 1), 2)).is_odd() for k, f in a.terms.items())


class NotInD0Error(ValueError):
    pass


def sigma_bar_apply(a: DiffOp) -> DiffOp:
    """t^k D h(D) -> -t^k D h(-D-k)."""
    if not in_D0(a):
        raise NotInD0Error(f"{a} does not lie in the D0 subalgebra")
    out = {}
    for k, f in a.terms.items():
        h, _ = f.divmod_var()
        out[k] = -(UnivarPoly.identity(DVAR) * h.compose_affine(-1, -k))
    return DiffOp(out, a.central)


def in_D0sigmabar(a: DiffOp) -> bool:
    if not in_D0(a):
        return False
    return sigma_bar_apply(a.without_central()) == -a.without_central()


def d0sigmabar_parity(a: DiffOp) -> bool:
    """Each piece t^k D h(D) must have h(w - k/2) even."""
    if not in_D0(a):
        return False
    return all(f.divmod_var()[0].shift(Fraction(-k, 2)).is_even() for k, f in a.terms.items())


def dsigma_basis(j: int, max_deg: int) -> list[DiffOp]:
    """t^j g(D + (j+1)/2) for odd monomials g = w^{2i+1} of degree <= max_deg."""
    return [
        DiffOp({j: UnivarPoly.monomial(n, 1, DVAR).shift(Fraction(j + 1, 2))})
        for n in range(1, max_deg + 1, 2)
    ]


def d0sigmabar_basis(j: int, max_deg: int) -> list[DiffOp]:
    """t^j D g(D + j/2) for even monomials g = w^{2i} of degree <= max_deg."""
    ident = UnivarPoly.identity(DVAR)
    return [
        DiffOp({j: ident * UnivarPoly.monomial(n, 1, DVAR).shift(Fraction(j, 2))})
        for n in range(0, max_deg + 1, 2)
    ]


def dminus_basis(j: int, max_deg: int) -> list[DiffOp]:
    """t^{-j} f(D) spanning the degree-j piece of D^- with deg f <= max_deg."""
    if j <= 0:
        return [DiffOp({-j: UnivarPoly.monomial(n, 1, DVAR)}) for n in range(max_deg + 1)]
    base = UnivarPoly.falling(j, DVAR)
    return [DiffOp({-j: base * UnivarPoly.monomial(n, 1, DVAR)}) for n in range(max_deg - j + 1)]


# ---------------------------------------------------------------------------
# random operators


def random_diffop(rng: random.Random, max_power: int = 3, max_deg: int = 4, max_terms: int = 3) -> DiffOp:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(-max_power, max_power)
        f = dpoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, max_deg + 1))])
        terms[k] = terms.get(k, dpoly([])) + f
    return DiffOp(terms)


def random_in(kind: str, rng: random.Random, max_power: int = 3, max_deg: int = 4) -> DiffOp:
    """A random element of "D", "Dminus", "D0", "Dsigma" or "D0sigmabar"."""
    if kind == "D":
        return random_diffop(rng, max_power, max_deg)
    out = DiffOp()
    for _ in range(rng.randint(1, 3)):
        j = rng.randint(-max_power, max_power)
        if kind == "Dminus":
            basis = dminus_basis(j, max_deg + max(j, 0))
        elif kind == "D0":
            basis = [DiffOp({j: UnivarPoly.monomial(n, 1, DVAR)}) for n in range(1, max_deg + 1)]
        elif kind == "Dsigma":
            basis = dsigma_basis(j, max_deg)
        elif kind == "D0sigmabar":
            basis = d0sigmabar_basis(j, max_deg - 1)
        else:
            raise ValueError(f"unknown subalgebra {kind!r}")
        for b in basis:
            out = out + b * Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return out


# ---------------------------------------------------------------------------
# highest weight data


def delta_eigenvalues(plus: Partition, minus: NegPartition | None = None, variant: str = "plain", N: int = 6) -> XSeries:
    """Taylor coefficients Delta_n / n! of the generating series of highest weight labels.

    plain: Delta_n = sum_{j>=1} (-j)^n l^+_j + sum_{j<=0} (-j)^n l^-_j
    sigma: Delta_n = sum_{j>=1} (-j+1/2)^n l^+_j for odd n, zero for even n
    """
    minus = minus or NegPartition()
    coeffs = []
    if variant == "plain":
        labels = [(-j, plus[j]) for j in range(1, plus.d + 1)] + [(-j, v) for j, v in minus.labels().items()]
        for n in range(N + 1):
            coeffs.append(sum((Fraction(w) ** n * v for w, v in labels), Fraction(0)) / factorial(n))
    elif variant == "sigma":
        if minus.size:
            raise ValueError("the sigma variant has no negative labels")
        for n in range(N + 1):
            if n % 2 == 0:
                coeffs.append(Fraction(0))
                continue
            val = sum((Fraction(-2 * j + 1, 2) ** n * plus[j] for j in range(1, plus.d + 1)), Fraction(0))
            coeffs.append(val / factorial(n))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return XSeries(coeffs, N)


def delta_n(plus: Partition, minus: NegPartition | None, variant: str, n: int) -> Fraction:
    return delta_eigenvalues(plus, minus, variant, n)[n] * factorial(n)
