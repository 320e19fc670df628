"""Irreducible D^- modules inside tensor powers of V = Q[t, 1/t]/Q[t] and V' = Q[t]^*.

Basis of V: ``w_a = t^{-a}`` (a >= 1, degree a - 1).  Basis of V': the dual
vectors ``(t^b)^*`` (b >= 0, degree b).  A tensor basis element is a tuple
``(a_1, ..., a_M, b_1, ..., b_M')``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
from typing import Iterable, Mapping

from .characters import NegPartition, Partition, ch_Lminus, ch_Lplus, partitions_of
from .diffops import DVAR, DiffOp, dminus_basis, in_Dminus
from .exact_poly import QSeries, UnivarPoly

GENERATOR_SETS = ("Dminus", "D0minus", "Dsigma_minus", "D0sigmabar_minus")


class NotInDminusError(ValueError):
    pass


@dataclass
class TensorVector:
    """Finite combination of basis tensors, truncated at total degree N."""

    M: int
    Mdual: int
    N: int
    terms: dict[tuple[int, ...], Fraction] = field(default_factory=dict)
    overflow: bool = False  # set when act() dropped terms above degree N

    def degree_of(self, key: tuple[int, ...]) -> int:
        return sum(a - 1 for a in key[: self.M]) + sum(key[self.M :])

    def degrees(self) -> set[int]:
        return {self.degree_of(k) for k in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, key, c):
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def scaled(self, c) -> "TensorVector":
        return TensorVector(self.M, self.Mdual, self.N, {k: v * c for k, v in self.terms.items() if v * c}, self.overflow)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        out = TensorVector(self.M, self.Mdual, self.N, dict(self.terms), self.overflow or other.overflow)
        for k, v in other.terms.items():
            out.add_term(k, -v)
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.M, self.Mdual, self.terms) == (other.M, other.Mdual, other.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            factors = [f"t^-{a}" for a in key[: self.M]] + [f"(t^{b})*" for b in key[self.M :]]
            c = self.terms[key]
            body = "⊗".join(factors) if factors else "1"
            parts.append(body if c == 1 else f"-{body}" if c == -1 else f"{c}·{body}")
        out = parts[0]
        for p in parts[1:]:
            out += (" " + p) if p.startswith("-") else " + " + p
        return out


def act(a: DiffOp, v: TensorVector) -> TensorVector:
    """Leibniz action of an operator from D^- on a tensor vector.

    On V:  t^k f(D) w_a = f(-a) w_{a-k}  (zero when a - k < 1).
    On V': t^k f(D) (t^b)^* = -f(b-k) (t^{b-k})^*  (zero when b - k < 0).
    """
    if not in_Dminus(a):
        raise NotInDminusError(f"{a} does not preserve Q[t]")
    out = TensorVector(v.M, v.Mdual, v.N, {}, v.overflow)
    for key, c in v.terms.items():
        base_deg = v.degree_of(key)
        for pos, idx in enumerate(key):
            dual = pos >= v.M
            for k, f in a.terms.items():
                if dual:
                    new, val = idx - k, -f(Fraction(idx - k))
                    ok = new >= 0
                else:
                    new, val = idx - k, f(Fraction(-idx))
                    ok = new >= 1
                if not ok or not val:
                    continue
                if base_deg - k > v.N:
                    out.overflow = True
                    continue
                out.add_term(key[:pos] + (new,) + key[pos + 1 :], c * val)
    return out


def eigenvalue(a: DiffOp, v: TensorVector) -> Fraction | None:
    """The scalar c with a.v = c v, or None if v is not an eigenvector."""
    if v.is_zero():
        return None
    av = act(a, v)
    key = next(iter(v.terms))
    c = av.terms.get(key, Fraction(0)) / v.terms[key]
    return c if av == v.scaled(c) else None


# ---------------------------------------------------------------------------
# highest weight vectors


def _column_tensor(shape: Partition, first_index: int) -> dict[tuple[int, ...], Fraction]:
    """Product over columns of the alternating sum of the column filling.

    Cells in row r (0-based) carry index first_index + r; tensor slots follow
    the row-reading order of the cells.
    """
    cells = list(shape.cells())
    slot = {cell: n for n, cell in enumerate(cells)}
    conj = shape.conjugate()
    result: dict[tuple[int, ...], Fraction] = {tuple(first_index + r for r, _ in cells): Fraction(1)}
    for col, height in enumerate(conj.parts):
        slots = [slot[(r, col)] for r in range(height)]
        nxt: dict[tuple[int, ...], Fraction] = {}
        for key, c in result.items():
            for perm in permutations(range(height)):
                new = list(key)
                for r, p in enumerate(perm):
                    new[slots[r]] = key[slots[p]]
                sgn = _perm_sign(perm)
                t = tuple(new)
                nxt[t] = nxt.get(t, 0) + sgn * c
        result = {k: v for k, v in nxt.items() if v}
    return result


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def hwv_degree(plus: Partition, minus: NegPartition | None = None) -> int:
    minus = minus or NegPartition()
    return plus.n + minus.mirror.n


def hwv_construct(plus: Partition, minus: NegPartition | None = None, N: int | None = None) -> TensorVector:
    """Column-antisymmetrized filling: w_1 ^ ... ^ w_c per column of plus, and
    (t^0)^* ^ ... ^ (t^{c-1})^* per column of the mirror of minus."""
    minus = minus or NegPartition()
    pos = _column_tensor(plus, 1)
    neg = _column_tensor(minus.mirror, 0)
    terms = {}
    for kp, cp in pos.items():
        for kn, cn in neg.items():
            terms[kp + kn] = cp * cn
    deg = hwv_degree(plus, minus)
    v = TensorVector(plus.size, minus.size, deg if N is None else max(N, deg), terms)
    if v.is_zero():
        raise RuntimeError("highest weight filling vanished")
    return v


# ---------------------------------------------------------------------------
# raising generators


def _nullspace(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} in Q^n."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -mat[i][fc]
        basis.append(x)
    return basis


def _candidates(gen_set: str, j: int, P: int) -> list[UnivarPoly]:
    """Spanning polynomials f for degree-j pieces t^{-j} f(D) of the chosen family, before the D^- constraint."""
    w = UnivarPoly.identity(DVAR)
    if gen_set in ("Dminus", "D0minus"):
        return [UnivarPoly.monomial(n, 1, DVAR) for n in range(P + 1)]
    if gen_set == "Dsigma_minus":
        # k = -j: f(w) = g(w + (1 - j)/2), g odd
        return [UnivarPoly.monomial(n, 1, DVAR).shift(Fraction(1 - j, 2)) for n in range(1, P + 1, 2)]
    if gen_set == "D0sigmabar_minus":
        # k = -j: f(w) = w g(w - j/2), g even
        return [w * UnivarPoly.monomial(n, 1, DVAR).shift(Fraction(-j, 2)) for n in range(0, P + 1, 2)]
    raise ValueError(f"unknown generator set {gen_set!r}")


def raising_generators(gen_set: str, j: int, points: Iterable[int]) -> list[DiffOp]:
    """Degree-j elements t^{-j} f(D) of the family intersected with D^-, reduced to
    a set whose value vectors at ``points`` are independent."""
    points = sorted(set(points))
    P = 2 * len(points) + 2 * j + 2
    cands = _candidates(gen_set, j, P)
    # impose f(0) = ... = f(j-1) = 0
    cons = [[f(Fraction(i)) for f in cands] for i in range(j)]
    combos = _nullspace(cons, len(cands)) if cons else [[Fraction(int(i == n)) for i in range(len(cands))] for n in range(len(cands))]
    polys = []
    for x in combos:
        f = UnivarPoly({}, DVAR)
        for c, g in zip(x, cands):
            if c:
                f = f + g * c
        polys.append(f)
    kept, echelon = [], _Echelon()
    for f in polys:
        if echelon.add({p: f(Fraction(p)) for p in points}):
            kept.append(DiffOp({-j: f}))
    return kept


class _Echelon:
    """Incremental row reduction of sparse vectors."""

    def __init__(self):
        self.rows: dict[object, dict] = {}  # pivot key -> normalized row
        self.order: list = []

    def reduce(self, vec: Mapping) -> dict:
        v = {k: c for k, c in vec.items() if c}
        for piv in self.order:
            c = v.get(piv)
            if c:
                for k, x in self.rows[piv].items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=_sort_key)
        inv = 1 / v[piv]
        row = {k: c * inv for k, c in v.items()}
        for p in self.order:
            c = self.rows[p].get(piv)
            if c:
                r = self.rows[p]
                for k, x in row.items():
                    nv = r.get(k, 0) - c * x
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        self.rows[piv] = row
        self.order.append(piv)
        return True

    def __len__(self):
        return len(self.order)


def _sort_key(k):
    return (str(type(k)), k)


def cyclic_span_dims(plus: Partition, minus: NegPartition | None = None, N: int = 6, generator_set: str = "Dminus") -> QSeries:
    """Graded dimensions of the span of the highest weight vector under raising
    generators of the chosen family; degree 0 is the highest weight vector."""
    if generator_set not in GENERATOR_SETS:
        raise ValueError(f"unknown generator set {generator_set!r}")
    minus = minus or NegPartition()
    d0 = hwv_degree(plus, minus)
    top = d0 + N
    v = hwv_construct(plus, minus, top)
    points = list(range(-(top + 1), top + 1))
    gens = {j: raising_generators(generator_set, j, points) for j in range(1, N + 1)}
    levels: list[list[TensorVector]] = [[v]]
    dims = [1]
    for n in range(1, N + 1):
        ech = _Echelon()
        basis: list[TensorVector] = []
        for j in range(1, n + 1):
            for u in levels[n - j]:
                for g in gens[j]:
                    img = act(g, u)
                    red = ech.reduce(img.terms)
                    if red and ech.add(red):
                        basis.append(TensorVector(v.M, v.Mdual, top, dict(red)))
        levels.append(basis)
        dims.append(len(basis))
    return QSeries(dims, N)


# ---------------------------------------------------------------------------
# characters of tensor powers


def dim_U(lam: Partition) -> int:
    """Number of standard Young tableaux, by the hook length formula."""
    return factorial(lam.size) // prod(lam.hooks()) if lam.size else 1


def tensor_power_series(M: int, N: int) -> QSeries:
    """(1 - q)^{-M}."""
    from .exact_poly import q_pochhammer_inv

    out = QSeries.one(N)
    for _ in range(M):
        out = out * q_pochhammer_inv(1, 1, N)
    return out


def cauchy_sum(M: int, N: int) -> QSeries:
    total = QSeries.zero(N)
    for lam in partitions_of(M):
        total = total + QSeries.monomial(lam.n, N, dim_U(lam)) * ch_Lplus(lam, N)
    return total


def cauchy_check(M: int, N: int) -> bool:
    return cauchy_sum(M, N) == tensor_power_series(M, N)


def mixed_cauchy_sum(M: int, Mdual: int, N: int) -> QSeries:
    total = QSeries.zero(N)
    for lp in partitions_of(M):
        for mu in partitions_of(Mdual):
            lm = NegPartition(mu)
            shift = QSeries.monomial(lp.n + mu.n, N, dim_U(lp) * dim_U(mu))
            total = total + shift * ch_Lplus(lp, N) * ch_Lminus(lm, N)
    return total


def mixed_cauchy_check(M: int, Mdual: int, N: int) -> bool:
    return mixed_cauchy_sum(M, Mdual, N) == tensor_power_series(M + Mdual, N)


def tensor_space_dims(M: int, Mdual: int, N: int) -> QSeries:
    """Count basis tensors of T^M(V) (x) T^M'(V') by degree."""
    counts = [0] * (N + 1)
    counts[0] = 1
    for _ in range(M + Mdual):
        # each factor contributes any degree >= 0
        counts = [sum(counts[: d + 1]) for d in range(N + 1)]
    return QSeries(counts, N)
