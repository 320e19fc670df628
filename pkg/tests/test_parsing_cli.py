import json
from fractions import Fraction

import pytest

from confgrowth.cli import main
from confgrowth.diffops import DiffOp, dpoly
from confgrowth.exact_poly import D, X, Poly
from confgrowth.parsing import ParseError, parse_diffop, parse_dpoly, parse_gc

d, x = Poly.var(D), Poly.var(X)
t, Dop = DiffOp.t, DiffOp.D


def test_parse_gc():
    assert parse_gc("x") == x
    assert parse_gc("2*x^2 - d*x + 1/2") == 2 * x * x - d * x + Fraction(1, 2)
    assert parse_gc("(d + 2x)^2") == (d + 2 * x) * (d + 2 * x)
    assert parse_gc("d x^2") == d * x * x


def test_parse_diffop():
    assert parse_diffop("t^-1*D") == t(-1) * Dop()
    assert parse_diffop("D*t") == t(1) * DiffOp({0: dpoly([1, 1])}) == DiffOp({1: dpoly([1, 1])})
    assert parse_diffop("t^2 + 3") == t(2) + DiffOp.scalar(3)
    assert parse_diffop("D^2/2") == Dop(2) * Fraction(1, 2)
    assert parse_dpoly("D^2 - D") == dpoly([0, -1, 1])


@pytest.mark.parametrize(
    "text,pos",
    [("x +", 3), ("x * * d", 4), ("y", 0), ("(x", 2), ("x ^ d", 4)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_gc(text)
    assert info.value.position == pos


def test_diffop_rejects_division_by_operator():
    with pytest.raises(ParseError):
        parse_diffop("1/D")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bracket_command(capsys):
    assert run(capsys, "bracket", "x", "x")[:2] == (0, "(2λ+∂)x\n")
    assert run(capsys, "bracket", "1", "1")[:2] == (0, "0\n")
    assert run(capsys, "bracket", "x", "1")[:2] == (0, "λ+∂\n")


def test_bracket_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "bracket", "x +", "x")
    assert code == 2
    assert "position 3" in err and "^" in err


def test_bracket_closure_tag(capsys):
    code, out, _ = run(capsys, "bracket", "x", "x^2", "--tag", "gc1x", "--format", "json")
    assert code == 0 and json.loads(out)["closed"] is True
    code, _, err = run(capsys, "bracket", "x", "d", "--tag", "gc1x")
    assert code == 2 and "input b" in err


def test_growth_command(capsys):
    assert run(capsys, "growth", "--plus", "3,1")[:2] == (0, "4\n")
    assert run(capsys, "growth", "--weight", "1,2")[:2] == (0, "infinite\n")
    code, out, _ = run(capsys, "growth", "--plus", "1", "--estimate", "-N", "200", "--format", "json")
    data = json.loads(out)
    assert code == 0 and abs(data["estimate"] - 1) < 0.15


def test_char_command(capsys):
    code, out, _ = run(capsys, "char", "--plus", "2,1", "-N", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["tableau_oracle_agrees"] is True
    assert data["series"][:4] == [1, 2, 3, 5]
    code, out, _ = run(capsys, "char", "--bc", "C c=1", "-N", "8", "--format", "json")
    assert code == 0 and json.loads(out)["oracle_agrees"] is True


def test_char_rejects_non_dominant(capsys):
    code, _, err = run(capsys, "char", "--bc", "B c=0 l=1")
    assert code == 2 and "dominant" in err


def test_schurweyl_command(capsys):
    assert run(capsys, "schurweyl", "--M", "3", "-N", "12")[:2] == (0, "identity holds: true\n")
    code, out, _ = run(capsys, "schurweyl", "--M", "1", "--Mdual", "1", "-N", "6", "--format", "json")
    assert code == 0 and json.loads(out)["identity_holds"] is True


def test_cocycle_and_phi_commands(capsys):
    code, out, _ = run(capsys, "cocycle", "t", "t^-1", "--s", "1/3", "--m", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["homomorphism"] is True and data["psi"] == 1
    code, out, _ = run(capsys, "phi", "t*(D+1)", "--window=-1,1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["in_dinf"] is True
    assert {(e["i"], e["j"]) for e in data["entries"]} == {(-1, 0)}  # f(-1) = 0 at column 1


def test_span_command(capsys):
    code, out, _ = run(capsys, "span", "--plus", "1,1", "-N", "5", "--gens", "Dsigma_minus", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [1, 1, 2, 2, 3, 3]


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "virasoro_law", "character_oracle", "--truncate", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["all_passed"] and data["N"] == 4


def test_selftest_seed_does_not_change_verdict(capsys):
    verdicts = []
    for seed in ("0", "7"):
        code, out, _ = run(capsys, "selftest", "--only", "psi_is_cocycle", "conformal_axioms", "--seed", seed, "--samples", "10", "--format", "json")
        verdicts.append((code, json.loads(out)["all_passed"]))
    assert verdicts == [(0, True), (0, True)]


def test_selftest_unknown_check(capsys):
    assert run(capsys, "selftest", "--only", "nope")[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["selftest", "--only", "conformal_axioms", "--seed", "3", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["growth", "--bogus"])
    assert info.value.code == 2
    assert run(capsys, "growth", "--plus", "1,2")[0] == 2
    assert run(capsys, "char", "--plus", "1", "-N", "-1")[0] == 2
