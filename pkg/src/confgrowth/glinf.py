"""Infinite matrices with finitely many non-zero diagonals over R_m = Q[u]/(u^{m+1}).

A :class:`BandedMat` stores, for each diagonal offset ``k`` (entries at
positions ``(j-k, j)``), two polynomials in the column index ``j``: one valid
for columns ``j <= 0`` and one for ``j >= 1``.  Finitely many corrections are
added on top.  Products, brackets and the projection ``p_s`` compute the new
tail polynomials in closed form and recover corrections from an exact
evaluation over a finite window around the places where the tails can fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

from .diffops import DiffOp, diffop_bracket
from .exact_poly import UnivarPoly, as_rat


class ModulusMismatchError(ValueError):
    pass


class RmPoly:
    """Element of Q[u]/(u^{m+1})."""

    __slots__ = ("m", "c")

    def __init__(self, coeffs: Iterable = (), m: int = 0):
        c = [as_rat(v) for v in coeffs][: m + 1]
        c += [Fraction(0)] * (m + 1 - len(c))
        self.m = m
        self.c = tuple(c)

    @classmethod
    def const(cls, v, m: int = 0) -> "RmPoly":
        return cls([v], m)

    @classmethod
    def zero(cls, m: int = 0) -> "RmPoly":
        return cls([], m)

    def _check(self, other: "RmPoly"):
        if other.m != self.m:
            raise ModulusMismatchError(f"R_{self.m} vs R_{other.m}")

    def __add__(self, other):
        if not isinstance(other, RmPoly):
            other = RmPoly.const(other, self.m)
        self._check(other)
        return RmPoly([a + b for a, b in zip(self.c, other.c)], self.m)

    __radd__ = __add__

    def __neg__(self):
        return RmPoly([-a for a in self.c], self.m)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RmPoly) else -as_rat(other))

    def __mul__(self, other):
        if not isinstance(other, RmPoly):
            v = as_rat(other)
            return RmPoly([a * v for a in self.c], self.m)
        self._check(other)
        out = [Fraction(0)] * (self.m + 1)
        for i, a in enumerate(self.c):
            if a:
                for j in range(self.m + 1 - i):
                    out[i + j] += a * other.c[j]
        return RmPoly(out, self.m)

    __rmul__ = __mul__

    def flip(self) -> "RmPoly":
        """u -> -u."""
        return RmPoly([a if i % 2 == 0 else -a for i, a in enumerate(self.c)], self.m)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RmPoly.const(other, self.m)
        if not isinstance(other, RmPoly):
            return NotImplemented
        return self.m == other.m and self.c == other.c

    def __hash__(self):
        return hash((self.m, self.c))

    def render(self) -> str:
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self):
        return [str(a) for a in self.c]

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RmPoly({self.render()!r}, m={self.m})"


class JPoly:
    """Polynomial in the column index j with R_m coefficients."""

    __slots__ = ("m", "t")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, m: int = 0):
        self.m = m
        self.t = {(a, r): as_rat(v) for (a, r), v in (terms or {}).items() if r <= m and as_rat(v)}

    @classmethod
    def const(cls, v: RmPoly | object, m: int = 0) -> "JPoly":
        if isinstance(v, RmPoly):
            return cls({(0, r): c for r, c in enumerate(v.c)}, v.m)
        return cls({(0, 0): v}, m)

    @classmethod
    def affine(cls, a, b, u: int, m: int) -> "JPoly":
        """a*j + b + u*(coefficient u)."""
        return cls({(1, 0): a, (0, 0): b, (0, 1): u}, m)

    def __add__(self, other: "JPoly") -> "JPoly":
        out = dict(self.t)
        for key, v in other.t.items():
            out[key] = out.get(key, 0) + v
        return JPoly(out, self.m)

    def __neg__(self):
        return JPoly({k: -v for k, v in self.t.items()}, self.m)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, JPoly):
            v = as_rat(other)
            return JPoly({k: c * v for k, c in self.t.items()}, self.m)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, r1), c1 in self.t.items():
            for (a2, r2), c2 in other.t.items():
                if r1 + r2 <= self.m:
                    key = (a1 + a2, r1 + r2)
                    out[key] = out.get(key, 0) + c1 * c2
        return JPoly(out, self.m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = JPoly.const(1, self.m)
        for _ in range(n):
            r = r * self
        return r

    def compose_affine(self, a, b) -> "JPoly":
        """j -> a*j + b."""
        lin = JPoly({(1, 0): a, (0, 0): b}, self.m)
        out = JPoly({}, self.m)
        for (e, r), c in self.t.items():
            out = out + (lin**e) * JPoly({(0, r): c}, self.m)
        return out

    def flip(self) -> "JPoly":
        return JPoly({(a, r): (c if r % 2 == 0 else -c) for (a, r), c in self.t.items()}, self.m)

    def __call__(self, j) -> RmPoly:
        out = [Fraction(0)] * (self.m + 1)
        j = as_rat(j)
        for (a, r), c in self.t.items():
            out[r] += c * j**a
        return RmPoly(out, self.m)

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __eq__(self, other):
        if not isinstance(other, JPoly):
            return NotImplemented
        return self.m == other.m and self.t == other.t

    def __hash__(self):
        return hash((self.m, frozenset(self.t.items())))

    def degree(self) -> int:
        return max((a for a, _ in self.t), default=-1)

    def render(self) -> str:
        if not self.t:
            return "0"
        parts = []
        for (a, r), c in sorted(self.t.items(), reverse=True):
            mono = "".join(
                p for p in (("j" if a == 1 else f"j^{a}") if a else "", ("u" if r == 1 else f"u^{r}") if r else "")
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"JPoly({self.render()!r})"


@dataclass(frozen=True)
class Diagonal:
    left: JPoly  # columns j <= 0
    right: JPoly  # columns j >= 1

    def at(self, j: int) -> RmPoly:
        return self.left(j) if j <= 0 else self.right(j)

    def is_zero(self) -> bool:
        return self.left.is_zero() and self.right.is_zero()


Entries = dict[tuple[int, int], RmPoly]


class BandedMat:
    """Banded matrix over R_m with two-sided polynomial diagonals and a central part."""

    __slots__ = ("m", "diags", "corr", "central")

    def __init__(self, m: int = 0, diags: Mapping[int, Diagonal] | None = None, corr: Mapping | None = None, central=None):
        self.m = m
        self.diags = {k: d for k, d in (diags or {}).items() if not d.is_zero()}
        self.corr = {ij: v for ij, v in (corr or {}).items() if v}
        for v in self.corr.values():
            if v.m != m:
                raise ModulusMismatchError("correction with a different modulus")
        if central is None:
            central = RmPoly.zero(m)
        elif not isinstance(central, RmPoly):
            central = RmPoly.const(central, m)
        self.central = central

    @classmethod
    def uniform(cls, m: int, diags: Mapping[int, JPoly], central=None) -> "BandedMat":
        return cls(m, {k: Diagonal(p, p) for k, p in diags.items()}, None, central)

    @classmethod
    def from_entries(cls, m: int, entries: Mapping[tuple[int, int], object], central=None) -> "BandedMat":
        corr = {ij: v if isinstance(v, RmPoly) else RmPoly.const(v, m) for ij, v in entries.items()}
        return cls(m, None, corr, central)

    def entry(self, i: int, j: int) -> RmPoly:
        d = self.diags.get(j - i)
        base = d.at(j) if d is not None else RmPoly.zero(self.m)
        extra = self.corr.get((i, j))
        return base + extra if extra is not None else base

    def column(self, j: int) -> Entries:
        rows = {j - k for k in self.diags} | {i for (i, jj) in self.corr if jj == j}
        out = {}
        for i in rows:
            v = self.entry(i, j)
            if v:
                out[i] = v
        return out

    def offsets(self) -> set[int]:
        return set(self.diags) | {j - i for i, j in self.corr}

    def corr_span(self) -> tuple[int, int]:
        idx = [x for ij in self.corr for x in ij]
        return (min(idx, default=0), max(idx, default=1))

    def without_central(self) -> "BandedMat":
        return BandedMat(self.m, self.diags, self.corr)

    def with_central(self, c) -> "BandedMat":
        return BandedMat(self.m, self.diags, self.corr, c)

    def __add__(self, other: "BandedMat") -> "BandedMat":
        _same_modulus(self, other)
        diags = dict(self.diags)
        for k, d in other.diags.items():
            if k in diags:
                diags[k] = Diagonal(diags[k].left + d.left, diags[k].right + d.right)
            else:
                diags[k] = d
        corr = dict(self.corr)
        for ij, v in other.corr.items():
            corr[ij] = corr[ij] + v if ij in corr else v
        return BandedMat(self.m, diags, corr, self.central + other.central)

    def __neg__(self):
        return BandedMat(
            self.m, {k: Diagonal(-d.left, -d.right) for k, d in self.diags.items()}, {ij: -v for ij, v in self.corr.items()}, -self.central
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BandedMat":
        c = as_rat(c)
        return BandedMat(
            self.m,
            {k: Diagonal(d.left * c, d.right * c) for k, d in self.diags.items()},
            {ij: v * c for ij, v in self.corr.items()},
            self.central * c,
        )

    def __matmul__(self, other: "BandedMat") -> "BandedMat":
        return mat_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, BandedMat):
            return NotImplemented
        return self.m == other.m and self.diags == other.diags and self.corr == other.corr and self.central == other.central

    def __hash__(self):
        return hash((self.m, frozenset(self.diags.items()), frozenset(self.corr.items()), self.central))

    def window(self, lo: int, hi: int) -> list[tuple[int, int, RmPoly]]:
        """Non-zero entries with both indices in [lo, hi], for display."""
        out = []
        for j in range(lo, hi + 1):
            for i, v in sorted(self.column(j).items()):
                if lo <= i <= hi:
                    out.append((i, j, v))
        return sorted(out)

    def render(self) -> str:
        parts = []
        for k in sorted(self.diags):
            d = self.diags[k]
            if d.left == d.right:
                parts.append(f"diag {k}: {d.right.render()}")
            else:
                parts.append(f"diag {k}: {d.left.render()} (j<=0) | {d.right.render()} (j>=1)")
        for (i, j), v in sorted(self.corr.items()):
            parts.append(f"({i},{j}): {v.render()}")
        if self.central:
            parts.append(f"C: {self.central.render()}")
        return "; ".join(parts) if parts else "0"

    def __repr__(self):
        return f"BandedMat({self.render()!r})"


def _same_modulus(A, B):
    if A.m != B.m:
        raise ModulusMismatchError(f"R_{A.m} vs R_{B.m}")


def _assemble(m: int, diags: dict[int, Diagonal], exact: Callable[[int], Entries], columns: Iterable[int], central=None) -> BandedMat:
    """Corrections = exact column entries minus the tail prediction, over ``columns``.

    Outside these columns the caller guarantees the tails are exact.
    """
    pred = BandedMat(m, diags)
    corr: dict[tuple[int, int], RmPoly] = {}
    for j in columns:
        col = exact(j)
        rows = set(col) | {j - k for k in pred.diags}
        for i in rows:
            delta = col.get(i, RmPoly.zero(m)) - pred.entry(i, j)
            if delta:
                corr[(i, j)] = delta
    return BandedMat(m, diags, corr, central)


def mat_product(A: BandedMat, B: BandedMat) -> BandedMat:
    _same_modulus(A, B)
    m = A.m
    diags: dict[int, Diagonal] = {}
    for k, da in A.diags.items():
        for k2, db in B.diags.items():
            left = da.left.compose_affine(1, -k2) * db.left
            right = da.right.compose_affine(1, -k2) * db.right
            if k + k2 in diags:
                old = diags[k + k2]
                diags[k + k2] = Diagonal(old.left + left, old.right + right)
            else:
                diags[k + k2] = Diagonal(left, right)
    diags = {k: d for k, d in diags.items() if not d.is_zero()}

    def exact(j: int) -> Entries:
        out: Entries = {}
        for c, b in B.column(j).items():
            for i, a in A.column(c).items():
                out[i] = out[i] + a * b if i in out else a * b
        return out

    kb = [k for k in B.diags] or [0]
    a_cols = [j for (_, j) in A.corr]
    b_cols = [j for (_, j) in B.corr]
    lo = min([0, min(kb)] + [c + min(kb) for c in a_cols] + b_cols) - 1
    hi = max([1, 1 + max(kb)] + [c + max(kb) for c in a_cols] + b_cols) + 1
    # corrections of A in column c reach product columns c + k2 for any offset
    # k2 of B, including offsets that only occur among B's corrections
    extra = {c + (jb - ib) for c in a_cols for (ib, jb) in B.corr}
    cols = set(range(lo, hi + 1)) | extra
    return _assemble(m, diags, exact, sorted(cols))


def cocycle_alpha(A: BandedMat, B: BandedMat) -> RmPoly:
    """sum_{i<=0<j} A_ij B_ji - sum_{j<=0<i} A_ij B_ji."""
    _same_modulus(A, B)
    total = RmPoly.zero(A.m)
    pos: set[tuple[int, int]] = set()
    for k in A.diags:
        if k > 0:
            pos |= {(j - k, j) for j in range(1, k + 1)}
        elif k < 0:
            pos |= {(j - k, j) for j in range(k + 1, 1)}
    pos |= {(i, j) for (i, j) in A.corr if (i <= 0 < j) or (j <= 0 < i)}
    for i, j in pos:
        term = A.entry(i, j) * B.entry(j, i)
        total = total + term if i <= 0 < j else total - term
    return total


def mat_bracket(A, B, with_central: bool = False):
    if isinstance(A, FinMat) and isinstance(B, FinMat):
        return A.bracket(B, with_central)
    A, B = as_banded(A), as_banded(B)
    _same_modulus(A, B)
    c = (mat_product(A, B) - mat_product(B, A)).without_central()
    if with_central:
        return c.with_central(cocycle_alpha(A, B))
    return c


class FinMat:
    """Finitely supported matrix over R_m with a central part."""

    __slots__ = ("m", "entries", "central")

    def __init__(self, m: int = 0, entries: Mapping | None = None, central=None):
        self.m = m
        self.entries = {}
        for ij, v in (entries or {}).items():
            if not isinstance(v, RmPoly):
                v = RmPoly.const(v, m)
            if v.m != m:
                raise ModulusMismatchError("entry with a different modulus")
            if v:
                self.entries[tuple(ij)] = v
        self.central = central if isinstance(central, RmPoly) else RmPoly.const(central or 0, m)

    @classmethod
    def unit(cls, i: int, j: int, m: int = 0, c=1) -> "FinMat":
        return cls(m, {(i, j): c})

    def entry(self, i: int, j: int) -> RmPoly:
        return self.entries.get((i, j), RmPoly.zero(self.m))

    def __add__(self, other):
        _same_modulus(self, other)
        out = dict(self.entries)
        for ij, v in other.entries.items():
            out[ij] = out[ij] + v if ij in out else v
        return FinMat(self.m, out, self.central + other.central)

    def __neg__(self):
        return FinMat(self.m, {ij: -v for ij, v in self.entries.items()}, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FinMat":
        return FinMat(self.m, {ij: v * c for ij, v in self.entries.items()}, self.central * c)

    def product(self, other: "FinMat") -> "FinMat":
        _same_modulus(self, other)
        out: dict[tuple[int, int], RmPoly] = {}
        by_row: dict[int, list] = {}
        for (c, j), b in other.entries.items():
            by_row.setdefault(c, []).append((j, b))
        for (i, c), a in self.entries.items():
            for j, b in by_row.get(c, ()):
                out[(i, j)] = out[(i, j)] + a * b if (i, j) in out else a * b
        return FinMat(self.m, out)

    def alpha(self, other: "FinMat") -> RmPoly:
        total = RmPoly.zero(self.m)
        for (i, j), a in self.entries.items():
            if i <= 0 < j:
                total = total + a * other.entry(j, i)
            elif j <= 0 < i:
                total = total - a * other.entry(j, i)
        return total

    def bracket(self, other: "FinMat", with_central: bool = False) -> "FinMat":
        c = self.product(other) - other.product(self)
        c = FinMat(self.m, c.entries)
        if with_central:
            c.central = self.alpha(other)
        return c

    def to_banded(self) -> BandedMat:
        return BandedMat.from_entries(self.m, self.entries, self.central)

    def __eq__(self, other):
        if not isinstance(other, FinMat):
            return NotImplemented
        return self.m == other.m and self.entries == other.entries and self.central == other.central

    def __hash__(self):
        return hash((self.m, frozenset(self.entries.items()), self.central))

    def render(self) -> str:
        parts = [f"({i},{j}): {v.render()}" for (i, j), v in sorted(self.entries.items())]
        if self.central:
            parts.append(f"C: {self.central.render()}")
        return "; ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FinMat({self.render()!r})"


def as_banded(A) -> BandedMat:
    return A.to_banded() if isinstance(A, FinMat) else A


# ---------------------------------------------------------------------------
# embeddings of differential operators


def entry_polynomial(f: UnivarPoly, s, m: int) -> JPoly:
    """f(-j + s + u) as a polynomial in j over R_m (Horner)."""
    w = JPoly.affine(-1, as_rat(s), 1, m)
    acc = JPoly({}, m)
    for n in range(f.degree(), -1, -1):
        acc = acc * w + JPoly.const(f.coeff(n), m)
    return acc


def phi_s_m(s, m: int, a: DiffOp) -> BandedMat:
    """t^k f(D) -> sum_j f(-j + s + u) E_{j-k, j}."""
    if a.central:
        raise ValueError("phi_s is defined on operators without a central part; use phi_hat")
    return BandedMat.uniform(m, {k: entry_polynomial(f, s, m) for k, f in a.terms.items()})


def kappa_series(s, m: int, N: int) -> list[RmPoly]:
    """Taylor coefficients of (e^{(s+u)x} - 1)/(e^x - 1) up to x^N, over R_m."""
    s = as_rat(s)
    su = RmPoly([s, 1], m) if m >= 1 else RmPoly.const(s, m)
    # numerator / x: sum (s+u)^{n+1}/(n+1)! x^n ; denominator / x: sum x^n/(n+1)!
    num, power = [], su
    for n in range(N + 1):
        num.append(power * Fraction(1, factorial(n + 1)))
        power = power * su
    den = [Fraction(1, factorial(n + 1)) for n in range(N + 1)]
    out: list[RmPoly] = []
    for n in range(N + 1):
        acc = num[n]
        for i in range(1, n + 1):
            acc = acc - out[n - i] * den[i]
        out.append(acc)
    return out


def phi_hat_correction(s, m: int, f: UnivarPoly, N: int | None = None) -> RmPoly:
    """Central correction for the degree-zero operator f(D): sum_n f_n n! [x^n] kappa."""
    N = max(N or 0, f.degree())
    if N < 0:
        return RmPoly.zero(m)
    kap = kappa_series(s, m, N)
    total = RmPoly.zero(m)
    for n, c in f.items():
        total = total + kap[n] * (c * factorial(n))
    return total


def phi_hat(s, m: int, a: DiffOp) -> BandedMat:
    """Lift to the central extensions: the central part is C(a) minus the correction of the t^0 part."""
    mat = phi_s_m(s, m, a.without_central())
    central = RmPoly.const(a.central, m) - phi_hat_correction(s, m, a.coeff(0))
    return mat.with_central(central)


def homomorphism_check(s, m: int, a: DiffOp, b: DiffOp) -> bool:
    lhs = phi_hat(s, m, diffop_bracket(a, b, with_central=True))
    rhs = mat_bracket(phi_hat(s, m, a), phi_hat(s, m, b), with_central=True)
    return lhs == rhs


# ---------------------------------------------------------------------------
# b, c, d subalgebras


@dataclass(frozen=True)
class Involution:
    """a_{ij}(u) = sign(i, j) * a_{shift-j, shift-i}(+-u)."""

    name: str
    shift: int
    flip_u: bool
    alternating: bool  # sign (-1)^{i+j+1} instead of -1

    def sign(self, i: int, j: int) -> int:
        if self.alternating:
            return -1 if (i + j) % 2 == 0 else 1
        return -1

    def mirror(self, i: int, j: int) -> tuple[int, int]:
        return (self.shift - j, self.shift - i)


BINF = Involution("b", 0, True, False)
CINF = Involution("c", 1, True, True)
# without the u -> -u flip, phi_0 of sigma-fixed operators misses d_inf once m >= 1
DINF = Involution("d", 1, True, False)


def _holds_at(A, inv: Involution, i: int, j: int) -> bool:
    lhs = A.entry(i, j)
    mi, mj = inv.mirror(i, j)
    rhs = A.entry(mi, mj)
    if inv.flip_u:
        rhs = rhs.flip()
    return lhs == rhs * inv.sign(i, j)


def _in_involution(A, inv: Involution) -> bool:
    if isinstance(A, FinMat):
        return all(_holds_at(A, inv, i, j) for (i, j) in set(A.entries) | {inv.mirror(*ij) for ij in A.entries})
    # tails: the mirror of column j on diagonal k is column shift + k - j of the same diagonal
    for k, d in A.diags.items():
        mirrored = d.left.compose_affine(-1, inv.shift + k)
        if inv.flip_u:
            mirrored = mirrored.flip()
        sign = inv.sign(k, 0) if inv.alternating else -1
        # sign depends on i + j = 2j - k only through k
        if d.right != mirrored * sign:
            return False
    lo, hi = A.corr_span()
    K = max((abs(k) for k in A.offsets()), default=0)
    lo, hi = min(lo, inv.shift - hi, 0) - K - 2, max(hi, inv.shift - lo, 1) + K + 2
    for j in range(lo, hi + 1):
        for i in set(A.column(j)) | {j - k for k in A.offsets()}:
            if not _holds_at(A, inv, i, j):
                return False
    return True


def in_binf(A) -> bool:
    return _in_involution(A, BINF)


def in_cinf(A) -> bool:
    return _in_involution(A, CINF)


def in_dinf(A) -> bool:
    return _in_involution(A, DINF)


# ---------------------------------------------------------------------------
# projection p_s


def _drop_index(s: int, n: int) -> int:
    """New index -> old index when index s is removed and larger ones shift down."""
    return n if n < s else n + 1


def p_s_project(s: int, A):
    """Delete row and column s, then close the gap by shifting larger indices down."""
    s = int(s)
    if isinstance(A, FinMat):
        out = {}
        for (i, j), v in A.entries.items():
            if i == s or j == s:
                continue
            out[(i - (i > s), j - (j > s))] = v
        return FinMat(A.m, out, A.central)
    m = A.m
    # far to the right (both indices > s) the old column j+1 lands at new column j
    diags = {k: Diagonal(d.left, d.right.compose_affine(1, 1)) for k, d in A.diags.items()}

    def exact(j: int) -> Entries:
        oj = _drop_index(s, j)
        out: Entries = {}
        for oi, v in A.column(oj).items():
            if oi == s:
                continue
            out[oi - (oi > s)] = v
        return out

    lo, hi = A.corr_span()
    K = max((abs(k) for k in A.offsets()), default=0)
    cols = range(min(lo, s, 0) - K - 2, max(hi, s, 1) + K + 2)
    return _assemble(m, diags, exact, cols, A.central)


# ---------------------------------------------------------------------------
# random matrices


def random_jpoly(rng: random.Random, m: int, max_deg: int = 2) -> JPoly:
    return JPoly({(rng.randint(0, max_deg), rng.randint(0, m)): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))}, m)


def random_banded(rng: random.Random, m: int = 0, max_offset: int = 2, n_corr: int = 2) -> BandedMat:
    diags = {}
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(-max_offset, max_offset)
        left = random_jpoly(rng, m)
        right = left if rng.random() < 0.5 else random_jpoly(rng, m)
        diags[k] = Diagonal(left, right)
    corr = {}
    for _ in range(rng.randint(0, n_corr)):
        i, j = rng.randint(-3, 3), rng.randint(-3, 3)
        corr[(i, j)] = RmPoly([rng.randint(-3, 3) for _ in range(m + 1)], m)
    return BandedMat(m, diags, corr)


def random_finmat(rng: random.Random, m: int = 0, span: int = 3, n: int = 4) -> FinMat:
    return FinMat(
        m,
        {
            (rng.randint(-span, span), rng.randint(-span, span)): RmPoly([rng.randint(-3, 3) for _ in range(m + 1)], m)
            for _ in range(n)
        },
    )
