"""Exact arithmetic kernels: sparse multivariate polynomials over Q,
univariate polynomials, and truncated power series.

Everything here is immutable after construction. Coefficients are
:class:`fractions.Fraction`; zero coefficients are never stored, so
structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Union

Rat = Fraction
Number = Union[int, Fraction]

# variable names used across the package
D = "d"  # the derivation of a conformal algebra
X = "x"
LAM = "l"
MU = "m"

_PRETTY = {"d": "∂", "l": "λ", "m": "μ"}


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class UnboundVariableError(KeyError):
    pass


# ---------------------------------------------------------------------------
# multivariate


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


class Poly:
    """Sparse polynomial in named commuting variables with rational coefficients.

    A monomial is a sorted tuple of ``(variable, exponent)`` pairs; the empty
    tuple is the constant monomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = as_rat(c)
                if c:
                    mono = tuple(sorted((v, e) for v, e in mono if e))
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = as_rat(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def lift(cls, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return cls.const(other)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def variables(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        return max(dict(mono).get(var, 0) for mono in self._terms)

    def coeff_in(self, var: str) -> dict[int, "Poly"]:
        """Split as ``sum_k var**k * c_k``; returns ``{k: c_k}``."""
        parts: dict[int, dict] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            k = d.pop(var, 0)
            parts.setdefault(k, {})[tuple(sorted(d.items()))] = c
        return {k: Poly._raw(t) for k, t in parts.items()}

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    # arithmetic
    def __add__(self, other):
        other = Poly.lift(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rat(other)
            if not c:
                return Poly()
            return Poly._raw({m: v * c for m, v in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def exact_div_var(self, var: str) -> "Poly | None":
        """``self / var`` if ``var`` divides ``self``, else None."""
        out = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            if d.get(var, 0) == 0:
                return None
            d[var] -= 1
            out[tuple(sorted((v, e) for v, e in d.items() if e))] = c
        return Poly._raw(out)

    def sort_key(self, order: Iterable[str]):
        order = list(order)
        return lambda mono: tuple(-dict(mono).get(v, 0) for v in order)

    def render(self, order: Iterable[str] = (LAM, MU, D, X), pretty: bool = True) -> str:
        if not self._terms:
            return "0"
        order = list(order)
        extra = sorted(self.variables() - set(order))
        order += extra
        monos = sorted(self._terms, key=lambda m: (-sum(e for _, e in m),) + self.sort_key(order)(m))
        return _join_terms([(self._terms[m], _mono_str(m, order, pretty)) for m in monos])

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render(pretty=False)})"


def _mono_str(mono, order, pretty) -> str:
    d = dict(mono)
    parts = []
    for v in order:
        e = d.get(v, 0)
        if not e:
            continue
        name = _PRETTY.get(v, v) if pretty else v
        parts.append(name if e == 1 else (f"{name}{_superscript(e)}" if pretty else f"{name}^{e}"))
    return ("" if pretty else "*").join(parts)


_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _superscript(e: int) -> str:
    return str(e).translate(_SUP)


def _join_terms(pairs) -> str:
    """Render ``[(coeff, monomial_string), ...]`` as a signed sum."""
    out = []
    for i, (c, m) in enumerate(pairs):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if m and a == 1:
            body = m
        elif m:
            body = f"{a}{m}" if a.denominator == 1 else f"{a}*{m}"
        else:
            body = str(a)
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f"{sign}{body}")
    return "".join(out)


def bivar(terms: Mapping[tuple[int, int], Number]) -> Poly:
    """Build an element of Q[d, x] from ``{(deg_d, deg_x): coeff}``."""
    return Poly({((D, i), (X, j)): c for (i, j), c in terms.items()})


def substitute(p: Poly, bindings: Mapping[str, Poly | Number]) -> Poly:
    """Simultaneous substitution of every variable of ``p``.

    Every variable occurring in ``p`` must be bound; bind a variable to itself
    to keep it.
    """
    for v in p.variables():
        if v not in bindings:
            raise UnboundVariableError(f"unbound variable {v!r}")
    images = {v: Poly.lift(b) for v, b in bindings.items()}
    powers: dict[tuple[str, int], Poly] = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = images[v] ** e
        return powers[key]

    result = Poly()
    for mono, c in p.items():
        term = Poly.const(c)
        for v, e in mono:
            term = term * power(v, e)
        result = result + term
    return result


# ---------------------------------------------------------------------------
# univariate


class UnivarPoly:
    """Sparse polynomial in one named variable (``w``, ``D``, ``t``, ``u``...)."""

    __slots__ = ("var", "_c")

    def __init__(self, coeffs: Mapping[int, Number] | Iterable[Number] | None = None, var: str = "w"):
        self.var = var
        c = {}
        if coeffs is None:
            pass
        elif isinstance(coeffs, Mapping):
            for k, v in coeffs.items():
                v = as_rat(v)
                if v:
                    if k < 0:
                        raise ValueError("negative exponent in a polynomial")
                    c[k] = v
        else:
            for k, v in enumerate(coeffs):
                v = as_rat(v)
                if v:
                    c[k] = v
        self._c = c

    @classmethod
    def _raw(cls, c, var):
        p = cls.__new__(cls)
        p.var = var
        p._c = c
        return p

    @classmethod
    def monomial(cls, n: int, c: Number = 1, var: str = "w") -> "UnivarPoly":
        return cls({n: c}, var)

    @classmethod
    def const(cls, c: Number, var: str = "w") -> "UnivarPoly":
        return cls({0: c}, var)

    @classmethod
    def identity(cls, var: str = "w") -> "UnivarPoly":
        return cls({1: 1}, var)

    @classmethod
    def from_roots(cls, roots: Iterable[Number], var: str = "w") -> "UnivarPoly":
        p = cls.const(1, var)
        for r in roots:
            p = p * cls({0: -as_rat(r), 1: 1}, var)
        return p

    @classmethod
    def falling(cls, m: int, var: str = "w") -> "UnivarPoly":
        """w (w-1) ... (w-m+1)."""
        return cls.from_roots(range(m), var)

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coeff(self, n: int) -> Fraction:
        return self._c.get(n, Fraction(0))

    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def with_var(self, var: str) -> "UnivarPoly":
        return UnivarPoly._raw(dict(self._c), var)

    def _lift(self, other):
        if isinstance(other, UnivarPoly):
            return other
        return UnivarPoly.const(other, self.var)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._c)
        for k, v in other._c.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UnivarPoly._raw(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UnivarPoly._raw({k: -v for k, v in self._c.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UnivarPoly):
            c = as_rat(other)
            return UnivarPoly._raw({k: v * c for k, v in self._c.items()} if c else {}, self.var)
        out: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return UnivarPoly._raw({k: v for k, v in out.items() if v}, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = UnivarPoly.const(1, self.var)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UnivarPoly.const(other, self.var)
        if not isinstance(other, UnivarPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, x):
        # Horner; works for Fraction and for Poly / other ring elements
        if not self._c:
            return Fraction(0) if not isinstance(x, Poly) else Poly()
        n = self.degree()
        acc = self.coeff(n)
        if isinstance(x, Poly):
            acc = Poly.const(acc)
        for k in range(n - 1, -1, -1):
            acc = acc * x + self.coeff(k)
        return acc

    def compose_affine(self, a: Number, b: Number) -> "UnivarPoly":
        """The polynomial ``w -> f(a*w + b)``."""
        a, b = as_rat(a), as_rat(b)
        out: dict[int, Fraction] = {}
        for n, c in self._c.items():
            # (a w + b)^n
            for k in range(n + 1):
                v = c * comb(n, k) * a**k * b ** (n - k)
                if v:
                    out[k] = out.get(k, 0) + v
        return UnivarPoly._raw({k: v for k, v in out.items() if v}, self.var)

    def shift(self, c: Number) -> "UnivarPoly":
        """``w -> f(w + c)``."""
        return self.compose_affine(1, c)

    def reflect(self) -> "UnivarPoly":
        """``w -> f(-w)``."""
        return UnivarPoly._raw({k: (v if k % 2 == 0 else -v) for k, v in self._c.items()}, self.var)

    def derivative(self, order: int = 1) -> "UnivarPoly":
        out = {}
        for k, v in self._c.items():
            if k >= order:
                out[k - order] = v * (factorial(k) // factorial(k - order))
        return UnivarPoly._raw(out, self.var)

    def is_odd(self) -> bool:
        return all(k % 2 == 1 for k in self._c)

    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self._c)

    def divmod_var(self) -> tuple["UnivarPoly", Fraction]:
        """``f = w*q + r`` with constant r."""
        q = {k - 1: v for k, v in self._c.items() if k}
        return UnivarPoly._raw(q, self.var), self.coeff(0)

    def forward_differences(self) -> list[Fraction]:
        """Coefficients in the falling-factorial basis: f = sum c_m w(w-1)...(w-m+1)."""
        n = self.degree()
        vals = [self(Fraction(i)) for i in range(n + 1)]
        out = []
        for m in range(n + 1):
            out.append(vals[0] / factorial(m))
            vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
        return out

    def to_poly(self, var: str | None = None) -> Poly:
        v = var or self.var
        return Poly({((v, k),): c for k, c in self._c.items()})

    def render(self, pretty: bool = True) -> str:
        if not self._c:
            return "0"
        name = self.var
        pairs = []
        for k in sorted(self._c, reverse=True):
            if k == 0:
                m = ""
            elif k == 1:
                m = name
            else:
                m = f"{name}{_superscript(k)}" if pretty else f"{name}^{k}"
            pairs.append((self._c[k], m))
        return _join_terms(pairs)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UnivarPoly({self.render(pretty=False)!r}, var={self.var!r})"


def univar_from_poly(p: Poly, var: str) -> UnivarPoly:
    if p.variables() - {var}:
        raise ValueError(f"polynomial involves variables other than {var!r}")
    return UnivarPoly({dict(m).get(var, 0): c for m, c in p.items()}, var)


# ---------------------------------------------------------------------------
# truncated series


class TruncSeries:
    """Power series in one variable known modulo ``var**(N+1)``.

    Binary operations between series of different orders re-truncate to the
    smaller order.
    """

    __slots__ = ("N", "_c")
    var = "z"

    def __init__(self, coeffs: Iterable[Number], N: int | None = None):
        c = [as_rat(v) for v in coeffs]
        if N is None:
            N = len(c) - 1
        if N < 0:
            raise ValueError("truncation order must be non-negative")
        c = c[: N + 1] + [Fraction(0)] * (N + 1 - len(c))
        self.N = N
        self._c = tuple(c)

    @classmethod
    def one(cls, N: int):
        return cls([1], N)

    @classmethod
    def zero(cls, N: int):
        return cls([], N)

    @classmethod
    def monomial(cls, k: int, N: int, c: Number = 1):
        coeffs = [0] * (N + 1)
        if k <= N:
            coeffs[k] = c
        return cls(coeffs, N)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self):
        return self.N + 1

    def __iter__(self):
        return iter(self._c)

    def truncate(self, N: int):
        return type(self)(self._c[: N + 1], N)

    def _align(self, other):
        if not isinstance(other, TruncSeries):
            return self, type(self)([other], self.N)
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        n = min(self.N, other.N)
        return self.truncate(n), other.truncate(n)

    def __add__(self, other):
        a, b = self._align(other)
        return type(self)([x + y for x, y in zip(a._c, b._c)], a.N)

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-x for x in self._c], self.N)

    def __sub__(self, other):
        a, b = self._align(other)
        return type(self)([x - y for x, y in zip(a._c, b._c)], a.N)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = as_rat(other)
            return type(self)([x * c for x in self._c], self.N)
        a, b = self._align(other)
        n = a.N
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a._c):
            if not x:
                continue
            for j in range(n + 1 - i):
                y = b._c[j]
                if y:
                    out[i + j] += x * y
        return type(self)(out, n)

    __rmul__ = __mul__

    def inverse(self):
        if not self._c[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.N
        inv0 = 1 / self._c[0]
        out = [inv0]
        for k in range(1, n + 1):
            s = sum((self._c[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-s * inv0)
        return type(self)(out, n)

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            return self * (1 / as_rat(other))
        a, b = self._align(other)
        return a * b.inverse()

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return type(self) is type(other) and self.N == other.N and self._c == other._c

    def __hash__(self):
        return hash((type(self).__name__, self._c))

    def agrees_with(self, other, N: int | None = None) -> bool:
        """Equality modulo ``var**(N+1)`` (default: the smaller order)."""
        a, b = self._align(other)
        n = a.N if N is None else min(N, a.N)
        return a._c[: n + 1] == b._c[: n + 1]

    def as_ints(self) -> list:
        return [int(c) if c.denominator == 1 else str(c) for c in self._c]

    def render(self) -> str:
        pairs = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            m = "" if k == 0 else (self.var if k == 1 else f"{self.var}{_superscript(k)}")
            pairs.append((c, m))
        body = _join_terms(pairs) if pairs else "0"
        return f"{body} + O({self.var}{_superscript(self.N + 1)})"

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self._c]}, N={self.N})"


class QSeries(TruncSeries):
    var = "q"


class XSeries(TruncSeries):
    var = "x"


def q_pochhammer(a_exp: int, m: int, N: int) -> QSeries:
    """(1 - q^a)(1 - q^(a+1)) ... (1 - q^(a+m-1)) truncated at N."""
    result = QSeries.one(N)
    for i in range(m):
        result = result * (QSeries.one(N) - QSeries.monomial(a_exp + i, N))
    return result


def q_pochhammer_inv(a_exp: int, m: int, N: int) -> QSeries:
    """1 / ((1 - q^a)(1 - q^(a+1)) ... (1 - q^(a+m-1))) truncated at N."""
    if m < 0 or a_exp < 0:
        raise ValueError("a_exp and m must be non-negative")
    if m > 0 and a_exp == 0:
        raise ZeroDivisionError("factor 1 - q^0 vanishes; the product is not invertible")
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    # multiply by the geometric series 1/(1 - q^e) in place
    for e in range(a_exp, a_exp + m):
        for k in range(e, N + 1):
            out[k] += out[k - e]
    return QSeries(out, N)


def geometric_inv(exps: Iterable[int], N: int) -> QSeries:
    """prod over e in exps of 1/(1 - q^e), each e >= 1."""
    out = [Fraction(0)] * (N + 1)
    out[0] = Fraction(1)
    for e in exps:
        if e <= 0:
            raise ZeroDivisionError("non-positive exponent in a geometric factor")
        for k in range(e, N + 1):
            out[k] += out[k - e]
    return QSeries(out, N)


def exp_series(a: Number, N: int) -> XSeries:
    """Taylor coefficients a^n/n! of e^(a x), n <= N."""
    a = as_rat(a)
    return XSeries([a**n / factorial(n) for n in range(N + 1)], N)


def poly_exact_div(num: UnivarPoly, den: UnivarPoly) -> UnivarPoly:
    """Exact polynomial division; raises if ``den`` does not divide ``num``."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(num.coeffs)
    dd = den.degree()
    lead = den.coeff(dd)
    quot: dict[int, Fraction] = {}
    while rem and max(rem) >= dd:
        k = max(rem)
        c = rem[k] / lead
        quot[k - dd] = c
        for i, v in den.coeffs.items():
            s = rem.get(i + k - dd, 0) - c * v
            if s:
                rem[i + k - dd] = s
            else:
                rem.pop(i + k - dd, None)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return UnivarPoly(quot, num.var)
