"""Partitions, weights, q-characters and growth.

Characters are :class:`~confgrowth.exact_poly.QSeries` truncated at a
caller-supplied order ``N``.  Closed product formulas are paired with
independent brute-force oracles (semistandard tableaux enumeration, explicit
positive coroot products).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exact_poly import QSeries, UnivarPoly, as_rat, geometric_inv, poly_exact_div, q_pochhammer_inv


class NotDominantError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """A non-increasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition must be non-increasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text or text in ("0", "()", "empty"):
            return cls(())
        return cls(tuple(int(s) for s in text.split(",")))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        """1-based label lambda_i; zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def d(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))

    def cells(self):
        for r, p in enumerate(self.parts):
            for c in range(p):
                yield r, c

    def hooks(self) -> list[int]:
        conj = self.conjugate()
        return [(self.parts[r] - c - 1) + (conj.parts[c] - r - 1) + 1 for r, c in self.cells()]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class NegPartition:
    """A non-increasing sequence (..., l_{-1}, l_0) of non-positive integers.

    Stored through its mirror partition ``mu_i = -l_{1-i}``.
    """

    mirror: Partition = field(default_factory=Partition)

    @classmethod
    def from_labels(cls, labels: Mapping[int, int]) -> "NegPartition":
        """From ``{j: l_j}`` with j <= 0."""
        if any(j > 0 for j in labels):
            raise ValueError("negative partitions are indexed by j <= 0")
        depth = -min(labels, default=0) + 1
        return cls(Partition(tuple(-int(labels.get(1 - i, 0)) for i in range(1, depth + 1))))

    def __getitem__(self, j: int) -> int:
        if j > 0:
            raise IndexError("negative partitions are indexed by j <= 0")
        return -self.mirror[1 - j]

    def labels(self) -> dict[int, int]:
        return {1 - i: -p for i, p in enumerate(self.mirror.parts, start=1)}

    @property
    def size(self) -> int:
        return self.mirror.size

    def __str__(self):
        return "(" + ",".join(str(-p) for p in reversed(self.mirror.parts)) + ")"


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


@dataclass(frozen=True)
class GenWeight:
    """A finitely supported sequence (lambda_1, lambda_2, ...) of rationals."""

    labels: tuple[Fraction, ...] = ()

    def __post_init__(self):
        labels = tuple(as_rat(v) for v in self.labels)
        while labels and labels[-1] == 0:
            labels = labels[:-1]
        object.__setattr__(self, "labels", labels)

    @classmethod
    def parse(cls, text: str) -> "GenWeight":
        text = text.strip()
        return cls(tuple(Fraction(s) for s in text.split(","))) if text else cls(())

    def __getitem__(self, i: int) -> Fraction:
        return self.labels[i - 1] if 1 <= i <= len(self.labels) else Fraction(0)

    def in_par_plus(self) -> bool:
        seq = self.labels + (Fraction(0),)
        if any(v.denominator != 1 for v in seq):
            return False
        return all(seq[i] - seq[i + 1] >= 0 for i in range(len(seq) - 1))

    def to_partition(self) -> Partition:
        if not self.in_par_plus():
            raise ValueError(f"{self} is not a partition")
        return Partition(tuple(int(v) for v in self.labels))

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.labels) + ")"


# ---------------------------------------------------------------------------
# type A characters


def ch_finite_gl(lam: Partition | Sequence[int], d: int, N: int) -> QSeries:
    """Principal q-dimension of the irreducible gl_d module:
    prod_{i<j<=d} (1 - q^{l_i - l_j + j - i}) / (1 - q^{j - i})."""
    lam = tuple(lam)
    if d < len(lam):
        raise ValueError("d must be at least the length of the partition")
    labels = lam + (0,) * (d - len(lam))
    num = UnivarPoly.const(1, "q")
    den = UnivarPoly.const(1, "q")
    for i in range(d):
        for j in range(i + 1, d):
            num = num * _one_minus_q(labels[i] - labels[j] + j - i)
            den = den * _one_minus_q(j - i)
    return _poly_to_series(poly_exact_div(num, den), N)


def _one_minus_q(e: int) -> UnivarPoly:
    return UnivarPoly({0: 1, e: -1}, "q") if e else UnivarPoly({}, "q")


def _poly_to_series(p: UnivarPoly, N: int) -> QSeries:
    return QSeries([p.coeff(k) for k in range(N + 1)], N)


def ch_Lplus(lam: Partition, N: int) -> QSeries:
    """q-character of the irreducible gl_{+inf} module with highest weight lam:
    finite gl_d part divided by prod_j (1 - q^j)_q^{lam_{d-j+1}}."""
    d = lam.d
    result = ch_finite_gl(lam, d, N)
    for j in range(1, d + 1):
        result = result * q_pochhammer_inv(j, lam[d - j + 1], N)
    return result


def ch_Lminus(lam: NegPartition, N: int) -> QSeries:
    return ch_Lplus(lam.mirror, N)


def ch_ssyt_oracle(lam: Partition, N: int) -> QSeries:
    """Enumerate semistandard tableaux of shape lam with entries >= 1, weight
    q^{sum(entry - 1)}, then shift down by q^{n(lam)}."""
    offset = lam.n
    limit = N + offset
    cells = list(lam.cells())
    counts = [0] * (N + 1)
    # each cell in row r holds at least r+1, contributing at least r
    floor_rest = [0] * (len(cells) + 1)
    for idx in range(len(cells) - 1, -1, -1):
        floor_rest[idx] = floor_rest[idx + 1] + cells[idx][0]
    filling: dict[tuple[int, int], int] = {}

    def place(idx: int, weight: int):
        if idx == len(cells):
            counts[weight - offset] += 1
            return
        r, c = cells[idx]
        lo = max(filling.get((r, c - 1), 1), filling.get((r - 1, c), 0) + 1)
        v = lo
        while weight + (v - 1) + floor_rest[idx + 1] <= limit:
            filling[(r, c)] = v
            place(idx + 1, weight + v - 1)
            v += 1
        filling.pop((r, c), None)

    place(0, 0)
    return QSeries(counts, N)


# ---------------------------------------------------------------------------
# growth


def growth_exact(lam: GenWeight | Partition) -> float | int:
    """|lam| for a partition, infinity otherwise."""
    if isinstance(lam, Partition):
        return lam.size
    if lam.in_par_plus():
        return int(sum(lam.labels))
    return math.inf


def cumulative_dims(s: QSeries) -> list[Fraction]:
    out, acc = [], Fraction(0)
    for c in s:
        acc += c
        out.append(acc)
    return out


def growth_estimate(s: QSeries) -> float:
    """Log-log slope of the cumulative dimension between N/2 and N."""
    if any(c < 0 for c in s):
        raise ValueError("a character has non-negative coefficients")
    if s.N < 2 or not any(s.coeffs[1:]):
        return 0.0
    cum = cumulative_dims(s)
    hi, lo = s.N, s.N // 2
    if cum[lo] == 0:
        return math.inf
    return math.log(cum[hi] / cum[lo]) / math.log(hi / lo)


# ---------------------------------------------------------------------------
# b_inf / c_inf


@dataclass(frozen=True)
class BCWeight:
    """Highest weight of b_inf (family "B") or c_inf (family "C").

    ``labels`` are lambda_1, lambda_2, ... and ``c`` is the central charge.
    """

    family: str
    labels: tuple[Fraction, ...] = ()
    c: Fraction = Fraction(0)

    def __post_init__(self):
        if self.family not in ("B", "C"):
            raise ValueError("family must be 'B' or 'C'")
        labels = tuple(as_rat(v) for v in self.labels)
        while labels and labels[-1] == 0:
            labels = labels[:-1]
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "c", as_rat(self.c))

    @classmethod
    def parse(cls, text: str) -> "BCWeight":
        """``"B c=1 l=1,0,0"``."""
        tokens = text.split()
        if not tokens:
            raise ValueError("empty weight")
        family = tokens[0].upper()
        c, labels = Fraction(0), ()
        for tok in tokens[1:]:
            key, _, val = tok.partition("=")
            if key == "c":
                c = Fraction(val)
            elif key == "l":
                labels = tuple(Fraction(v) for v in val.split(",") if v)
            else:
                raise ValueError(f"unknown weight field {key!r}")
        return cls(family, labels, c)

    @classmethod
    def from_dynkin(cls, family: str, dynkin: Mapping[int, int]) -> "BCWeight":
        """From the values on simple coroots, e.g. ``{0: 1, 1: 1}`` for Lambda_0 + Lambda_1."""
        top = max(dynkin, default=0)
        labels = [sum(dynkin.get(i, 0) for i in range(k, top + 1)) for k in range(1, top + 1)]
        l1 = Fraction(labels[0]) if labels else Fraction(0)
        m0 = Fraction(dynkin.get(0, 0))
        c = l1 + m0 / 2 if family == "B" else l1 + m0
        return cls(family, tuple(labels), c)

    def __getitem__(self, i: int) -> Fraction:
        return self.labels[i - 1] if 1 <= i <= len(self.labels) else Fraction(0)

    def on_simple_coroot(self, i: int) -> Fraction:
        if i == 0:
            return 2 * self.c - 2 * self[1] if self.family == "B" else self.c - self[1]
        return self[i] - self[i + 1]

    @property
    def n1(self) -> int:
        nz = [i for i in range(1, len(self.labels) + 1) if self.on_simple_coroot(i) != 0]
        return max(nz, default=0)

    @property
    def size(self) -> Fraction:
        return sum(self.labels, Fraction(0))

    def is_dominant(self) -> bool:
        vals = [self.on_simple_coroot(i) for i in range(len(self.labels) + 1)]
        return all(v.denominator == 1 and v >= 0 for v in vals)

    def check_dominant(self):
        if not self.is_dominant():
            raise NotDominantError(f"{self} is not dominant integral")

    def simple_coroots_nonzero(self) -> int:
        return sum(1 for i in range(len(self.labels) + 1) if self.on_simple_coroot(i) != 0)

    def __str__(self):
        return f"{self.family} c={self.c} l=" + ",".join(str(v) for v in self.labels)


def _ratio_product(pairs: Iterable[tuple[int, int]], N: int) -> QSeries:
    """prod (1 - q^A)/(1 - q^B) over (A, B) pairs, truncated at N."""
    num = [Fraction(0)] * (N + 1)
    num[0] = Fraction(1)
    dens = []
    for A, B in pairs:
        if A == B:
            continue
        if A <= N:
            for k in range(N, A - 1, -1):
                num[k] -= num[k - A]
        if B <= N:
            dens.append(B)
    return QSeries(num, N) * geometric_inv(dens, N)


def finite_part_pairs(lam: BCWeight) -> list[tuple[int, int]]:
    """(<lam+rho, a>, <rho, a>) over positive coroots of so(2n+1) / sp(2n), n = n1."""
    n = lam.n1
    ell = {a: lam[a] - lam.c for a in range(1, n + 1)}
    if lam.family == "B":
        rho = {a: Fraction(-2 * a + 1, 2) for a in range(1, n + 1)}
    else:
        rho = {a: Fraction(-a) for a in range(1, n + 1)}
    pairs = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            pairs.append((ell[a] - ell[b], rho[a] - rho[b]))
            pairs.append((-ell[a] - ell[b], -rho[a] - rho[b]))
        if lam.family == "B":
            pairs.append((-2 * ell[a], -2 * rho[a]))
        else:
            pairs.append((-ell[a], -rho[a]))
    out = []
    for lv, rv in pairs:
        A, B = lv + rv, rv
        if A.denominator != 1 or B.denominator != 1:
            raise NotDominantError("non-integral pairing with a coroot")
        out.append((int(A), int(B)))
    return out


def ch_finite_bc(lam: BCWeight, N: int) -> QSeries:
    num = UnivarPoly.const(1, "q")
    den = UnivarPoly.const(1, "q")
    for A, B in finite_part_pairs(lam):
        num = num * _one_minus_q(A)
        den = den * _one_minus_q(B)
    return _poly_to_series(poly_exact_div(num, den), N)


@dataclass(frozen=True)
class ProductConvention:
    """Index conventions for the infinite factors of the b/c closed formulas.

    middle factor i (1 <= i <= n1): 1/(1 - q^{n1 + i + middle_offset})_q^{2c - lambda_{i + label_shift}}
    tail factor i >= n1 + tail_start:  1/(1 - q^{2i + tail_offset})_q^{2c}
    """

    middle_offset: int
    label_shift: int
    tail_start: int
    tail_offset: int

    def describe(self) -> str:
        return (
            f"middle 1/(1-q^(n1+i+{self.middle_offset}))_q^(2c-l_(i+{self.label_shift})), "
            f"tail i>=n1+{self.tail_start}: 1/(1-q^(2i+{self.tail_offset}))_q^(2c)"
        )


# candidate conventions, in the order they are tried; the first entry of each
# list is the formula as literally printed
CONVENTIONS = {
    "B": [ProductConvention(mo, ls, ts, 1) for mo in (0, 1, 2, 3) for ls in (0, 1) for ts in (0, 1)],
    "C": [ProductConvention(3, 1, 0, 3)]
    + [ProductConvention(mo, ls, ts, 3) for mo in (0, 1, 2, 3) for ls in (0, 1) for ts in (0, 1) if (mo, ls, ts) != (3, 1, 0)],
}


def ch_bc_closed(lam: BCWeight, N: int, convention: ProductConvention) -> QSeries:
    lam.check_dominant()
    n1, two_c = lam.n1, 2 * lam.c
    if two_c.denominator != 1:
        raise NotDominantError("2c must be an integer")
    two_c = int(two_c)
    result = ch_finite_bc(lam, N)
    for j in range(1, n1 + 1):
        result = result * q_pochhammer_inv(j, int(lam[n1 - j + 1]), N)
    for i in range(1, n1 + 1):
        m = two_c - lam[i + convention.label_shift]
        if m < 0 or m.denominator != 1:
            raise NotDominantError("negative q-Pochhammer length")
        result = result * q_pochhammer_inv(n1 + i + convention.middle_offset, int(m), N)
    if lam.family == "C":
        result = result * q_pochhammer_inv(n1 + 1, int(lam.c), N)
    i = n1 + convention.tail_start
    while 2 * i + convention.tail_offset <= N:
        result = result * q_pochhammer_inv(2 * i + convention.tail_offset, two_c, N)
        i += 1
    return result


def positive_coroots(family: str, n_labels: int, N: int):
    """Positive coroots as coefficient dicts over simple coroots, restricted to
    those with height <= N that can pair non-trivially with a weight whose
    simple-coroot values vanish beyond index ``n_labels``."""
    out = []
    # alpha_i + ... + alpha_j, 0 <= i <= j
    for i in range(0, n_labels + 1):
        for j in range(i, i + N):
            out.append({k: 1 for k in range(i, j + 1)})
    if family == "B":
        # alpha_0 + 2(alpha_1..alpha_i) + alpha_{i+1}..alpha_{j-1}, 1 <= i < j
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                if i + j > N:
                    break
                v = {0: 1}
                v.update({k: 2 for k in range(1, i + 1)})
                v.update({k: 1 for k in range(i + 1, j)})
                out.append(v)
    else:
        # 2alpha_0 + 2(alpha_1..alpha_i) + alpha_{i+1}..alpha_j, 0 <= i < j
        for i in range(0, N + 1):
            for j in range(i + 1, N + 1):
                if i + j + 2 > N:
                    break
                v = {k: 2 for k in range(0, i + 1)}
                v.update({k: 1 for k in range(i + 1, j + 1)})
                out.append(v)
    return out


def ch_bc_coroot_oracle(lam: BCWeight, N: int) -> QSeries:
    """prod over positive coroots of (1 - q^{<lam+rho, a>}) / (1 - q^{<rho, a>})."""
    lam.check_dominant()
    pairs = []
    for coroot in positive_coroots(lam.family, len(lam.labels), N):
        height = sum(coroot.values())
        if height > N:
            continue
        lv = sum((n * lam.on_simple_coroot(k) for k, n in coroot.items()), Fraction(0))
        if lv:
            pairs.append((int(lv) + height, height))
    return _ratio_product(pairs, N)


# panel used to pick the index convention of the closed formulas
CALIBRATION_DYNKIN = ({0: 1}, {1: 1}, {2: 1}, {0: 1, 1: 1}, {0: 2}, {1: 1, 2: 1}, {3: 1}, {0: 1, 2: 1})
CALIBRATION_N = 12


@lru_cache(maxsize=None)
def resolve_convention(family: str) -> ProductConvention:
    """First candidate convention that agrees with the coroot oracle on the panel."""
    panel = [BCWeight.from_dynkin(family, dk) for dk in CALIBRATION_DYNKIN]
    oracle = [ch_bc_coroot_oracle(w, CALIBRATION_N) for w in panel]
    for conv in CONVENTIONS[family]:
        if all(ch_bc_closed(w, CALIBRATION_N, conv) == o for w, o in zip(panel, oracle)):
            return conv
    raise RuntimeError(f"no index convention reproduces the coroot product for family {family}")


def printed_convention(family: str) -> ProductConvention:
    return CONVENTIONS[family][0]


def ch_binf(lam: BCWeight, N: int) -> QSeries:
    if lam.family != "B":
        raise ValueError("ch_binf needs a B-family weight")
    return ch_bc_closed(lam, N, resolve_convention("B"))


def ch_cinf(lam: BCWeight, N: int) -> QSeries:
    if lam.family != "C":
        raise ValueError("ch_cinf needs a C-family weight")
    return ch_bc_closed(lam, N, resolve_convention("C"))
