"""Named invariant checks shared by the ``selftest`` command.

Each check takes a :class:`RunConfig` and returns ``(passed, detail)``.
Randomized checks draw instances from ``random.Random(seed)``; the math is
exact, so the verdict does not depend on the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import characters as ch
from . import conformal as cf
from . import diffops as dops
from . import glinf as gl
from . import schur_weyl as sw


@dataclass(frozen=True)
class RunConfig:
    N: int = 12
    seed: int = 0
    samples: int = 20
    fmt: str = "table"

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("truncation order must be non-negative")
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


Result = tuple[bool, str]
CHECKS: dict[str, Callable[[RunConfig], Result]] = {}


def check(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn

    return deco


def _first_failure(items) -> Result:
    total = 0
    for label, ok in items:
        total += 1
        if not ok:
            if isinstance(label, tuple):
                label = ", ".join(str(x) for x in label)
            return False, f"fails on {label}"
    return True, f"{total} cases"


@check("virasoro_law")
def _virasoro(cfg: RunConfig) -> Result:
    rng = cfg.rng("virasoro")
    alphas = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(-2), Fraction(7, 3)]
    alphas += [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(cfg.samples)]
    return _first_failure((f"alpha={a}", cf.virasoro_check(a)) for a in alphas)


@check("conformal_axioms")
def _axioms(cfg: RunConfig) -> Result:
    rng = cfg.rng("axioms")

    def cases():
        for _ in range(cfg.samples):
            a, b, c = (cf.random_element(rng, 4) for _ in range(3))
            ok = cf.check_skew_symmetry(a, b) and cf.check_sesquilinearity(a, b) and cf.check_jacobi(a, b, c)
            yield (str(a), str(b), str(c)), ok

    return _first_failure(cases())


@check("subalgebra_closure")
def _closure(cfg: RunConfig) -> Result:
    rng = cfg.rng("closure")

    def cases():
        for tag in (cf.SubalgebraTag.GC1X, cf.SubalgebraTag.OC1, cf.SubalgebraTag.SPC1):
            for _ in range(cfg.samples):
                a, b = cf.random_member(tag, rng, 4), cf.random_member(tag, rng, 4)
                yield (tag.value, str(a), str(b)), cf.closure_check(tag, a, b)

    return _first_failure(cases())


@check("character_oracle")
def _char_oracle(cfg: RunConfig) -> Result:
    return _first_failure(
        (str(p), ch.ch_Lplus(p, cfg.N) == ch.ch_ssyt_oracle(p, cfg.N)) for n in range(6) for p in ch.partitions_of(n)
    )


@check("growth")
def _growth(cfg: RunConfig) -> Result:
    def cases():
        for n in range(6):
            for p in ch.partitions_of(n):
                yield str(p), ch.growth_exact(p) == n
        for parts in [(1,), (2,), (1, 1), (2, 1)]:
            p = ch.Partition(parts)
            est = ch.growth_estimate(ch.ch_Lplus(p, 200))
            yield f"estimate {p} = {est:.3f}", abs(est - p.size) <= 0.25

    return _first_failure(cases())


@check("cocycle_consistency")
def _cocycle(cfg: RunConfig) -> Result:
    rng = cfg.rng("cocycle")

    def cases():
        for s in (Fraction(0), Fraction(1, 3), Fraction(-1, 2), Fraction(2)):
            for m in (0, 1):
                for _ in range(cfg.samples):
                    a, b = dops.random_diffop(rng, 3, 4), dops.random_diffop(rng, 3, 4)
                    yield (s, m, str(a), str(b)), gl.homomorphism_check(s, m, a, b)
        for _ in range(cfg.samples):
            a, b = dops.random_in("Dminus", rng), dops.random_in("Dminus", rng)
            yield ("Dminus", str(a), str(b)), dops.cocycle_psi(a, b) == 0

    return _first_failure(cases())


@check("psi_is_cocycle")
def _psi_cocycle(cfg: RunConfig) -> Result:
    rng = cfg.rng("psi")
    br = dops.diffop_bracket
    psi = dops.cocycle_psi

    def cases():
        for _ in range(cfg.samples):
            a, b, c = (dops.random_diffop(rng) for _ in range(3))
            yield str((a, b, c)), psi(br(a, b), c) + psi(br(b, c), a) + psi(br(c, a), b) == 0

    return _first_failure(cases())


@check("anti_involutions")
def _anti(cfg: RunConfig) -> Result:
    rng = cfg.rng("anti")
    br = dops.diffop_bracket

    def cases():
        for _ in range(cfg.samples):
            a, b = dops.random_diffop(rng), dops.random_diffop(rng)
            s = dops.sigma_apply
            yield ("sigma", str(a)), s(s(a)) == a and s(br(a, b)) == -br(s(a), s(b)) and s(a) == dops.sigma_closed_form(a)
            a0, b0 = dops.random_in("D0", rng), dops.random_in("D0", rng)
            sb = dops.sigma_bar_apply
            yield ("sigma_bar", str(a0)), sb(sb(a0)) == a0 and sb(br(a0, b0)) == -br(sb(a0), sb(b0))

    return _first_failure(cases())


@check("image_membership_bd")
def _image_bd(cfg: RunConfig) -> Result:
    def cases():
        for m in (0, 1):
            for j in range(-3, 4):
                for b in dops.dsigma_basis(j, 5):
                    yield ("d", m, str(b)), gl.in_dinf(gl.phi_s_m(0, m, b))
                    yield ("b", m, str(b)), gl.in_binf(gl.phi_s_m(Fraction(-1, 2), m, b))

    return _first_failure(cases())


@check("image_membership_c")
def _image_c(cfg: RunConfig) -> Result:
    def cases():
        for m in (0, 1):
            for j in range(-3, 4):
                for b in dops.d0sigmabar_basis(j, 4):
                    for s in (Fraction(0), Fraction(-1, 2)):
                        yield ("c", s, m, str(b)), gl.in_cinf(gl.phi_s_m(s, m, b))

    return _first_failure(cases())


@check("matrix_algebra")
def _matrices(cfg: RunConfig) -> Result:
    rng = cfg.rng("matrices")
    br = gl.mat_bracket

    def cases():
        for _ in range(cfg.samples):
            m = rng.randint(0, 1)
            A, B, C = (gl.random_banded(rng, m) for _ in range(3))
            jac = br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B))
            yield ("jacobi", str(A)), jac == gl.BandedMat(m)
            al = gl.cocycle_alpha
            yield ("alpha", str(A)), (al(br(A, B), C) + al(br(B, C), A) + al(br(C, A), B)).is_zero()
            F1, F2 = gl.random_finmat(rng, m), gl.random_finmat(rng, m)
            yield ("finmat", str(F1)), br(F1, F2, True).to_banded() == br(F1.to_banded(), F2.to_banded(), True)

    return _first_failure(cases())


@check("phi_homomorphism")
def _phi_hom(cfg: RunConfig) -> Result:
    rng = cfg.rng("phi")

    def cases():
        for s in (Fraction(0), Fraction(2, 3), Fraction(-5, 2)):
            for m in (0, 1):
                for _ in range(max(1, cfg.samples // 4)):
                    a, b = dops.random_diffop(rng), dops.random_diffop(rng)
                    lhs = gl.phi_s_m(s, m, dops.diffop_bracket(a, b))
                    yield (s, m, str(a), str(b)), lhs == gl.mat_bracket(gl.phi_s_m(s, m, a), gl.phi_s_m(s, m, b))

    return _first_failure(cases())


@check("schur_weyl_identities")
def _cauchy(cfg: RunConfig) -> Result:
    def cases():
        for M in range(6):
            yield f"M={M}", sw.cauchy_check(M, cfg.N)
        for M in range(5):
            for Md in range(5 - M):
                yield f"M={M},M'={Md}", sw.mixed_cauchy_check(M, Md, cfg.N)

    return _first_failure(cases())


@check("module_realization")
def _realization(cfg: RunConfig) -> Result:
    N = min(cfg.N, 6)

    def cases():
        for parts in [(1,), (2,), (1, 1), (2, 1)]:
            p = ch.Partition(parts)
            target = ch.ch_Lplus(p, N)
            for gens in sw.GENERATOR_SETS:
                yield (str(p), gens), sw.cyclic_span_dims(p, None, N, gens) == target

    return _first_failure(cases())


@check("highest_weight_data")
def _hw(cfg: RunConfig) -> Result:
    def cases():
        for parts in [(1,), (1, 1), (2, 1)]:
            p = ch.Partition(parts)
            v = sw.hwv_construct(p)
            for n in range(5):
                yield (str(p), n), sw.eigenvalue(dops.DiffOp.D(n), v) == dops.delta_n(p, None, "plain", n)
        half = dops.DiffOp({0: dops.dpoly([Fraction(1, 2), 1])})
        yield "D+1/2 on t^-1", sw.eigenvalue(half, sw.hwv_construct(ch.Partition((1,)))) == Fraction(-1, 2)

    return _first_failure(cases())


BC_PANEL = {
    "B": [{0: 1}, {1: 1}, {2: 1}, {0: 1, 1: 1}, {0: 2}],
    "C": [{0: 1}, {1: 1}, {2: 1}, {0: 1, 1: 1}, {0: 2}],
}


@check("bc_characters")
def _bc(cfg: RunConfig) -> Result:
    N = max(cfg.N, 10)

    def cases():
        for fam, panel in BC_PANEL.items():
            fn = ch.ch_binf if fam == "B" else ch.ch_cinf
            for dk in panel:
                w = ch.BCWeight.from_dynkin(fam, dk)
                closed, oracle = fn(w, N), ch.ch_bc_coroot_oracle(w, N)
                yield (str(w), "oracle"), closed.agrees_with(oracle, 10)
                yield (str(w), "q^1"), closed[1] == w.simple_coroots_nonzero()

    return _first_failure(cases())


def run_checks(cfg: RunConfig, names: list[str] | None = None) -> list[dict]:
    out = []
    for name in names or list(CHECKS):
        try:
            ok, detail = CHECKS[name](cfg)
        except Exception as exc:  # a crash is a failure of that check, not of the run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"check": name, "passed": ok, "detail": detail})
    return out
