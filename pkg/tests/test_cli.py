import io
import json
from fractions import Fraction

import pytest

from omegaelim.algebra import LaurentPolynomial, Monomial
from omegaelim.catalog import corpus
from omegaelim.cli import format_trace, from_json, main, parse_trace, render, replay_steps, to_json
from omegaelim.elliott import Factor, rational_equal
from omegaelim.omega import omega, omega_eliminate_all
from omegaelim.parser import NotElliottError, ParseError, parse

EX = "1/((1-x*l1)*(1-y*l1)*(1-z/l1))"
MACMAHON = "1/((1-x1*l1*l2)*(1-x2*l3/l1)*(1-x3*l4/l2)*(1-x4/(l3*l4)))"


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv), out)
    return code, out.getvalue()


class TestParse:
    def test_example_input(self):
        E = parse(EX, ["l1", "x", "y", "z"])
        l1 = Monomial.var("l1")
        assert E.order.params == ("x", "y", "z") and E.order.lambda_vars == ("l1",)
        assert set(E.factors) == {Factor(1, Monomial.var("x") * l1), Factor(1, Monomial.var("y") * l1),
                                  Factor(1, Monomial.var("z") / l1)}

    def test_multiplicity_and_numerator(self):
        E = parse("(1+l1)/(1-x*l1)^2")
        assert E.numerator == 1 + LaurentPolynomial.var("l1")
        assert E.factors == (Factor(1, Monomial({"x": 1, "l1": 1}), 2),)

    def test_monomial_units_move_up(self):
        E = parse("1/(x^2*(1-y))")
        assert E.numerator == LaurentPolynomial.monomial(Monomial({"x": -2}))

    def test_rational_literals_and_power_synonym(self):
        E = parse("3/4 * x**2")
        assert E.numerator == LaurentPolynomial.monomial(Monomial({"x": 2}), Fraction(3, 4))

    def test_not_elliott(self):
        with pytest.raises(NotElliottError, match="denominator not in Elliott form"):
            parse("1/(1-x-y)")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError, match="position 5"):
            parse("1/(1-*x)")

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="not in --order"):
            parse("1/(1-x*w)", ["x", "l"])

    def test_division_by_zero(self):
        with pytest.raises(ParseError, match="division by zero"):
            parse("1/(x-x)")

    @pytest.mark.parametrize("entry", corpus()[:25], ids=lambda e: e.id)
    def test_round_trip(self, entry):
        R = entry.compute()
        again = parse(R.format(), list(R.order.vars), list(R.order.lambda_vars))
        assert rational_equal(again, R)


class TestEmitters:
    def test_json_round_trip(self):
        R = omega(parse("(1/2 + x)/((1-x*l)*(1+y/(3*l)))"))
        data = json.loads(render(R, "json"))
        assert all(isinstance(v, str) for term in data["numerator"] for v in term[:2])
        assert rational_equal(from_json(data, R.order), R)
        assert to_json(from_json(data, R.order)) == to_json(R)

    def test_latex(self):
        out = render(parse("1/(1-x1*l1)"), "latex")
        assert out == r"\frac{1}{(1 - x_{1} \lambda_{1})}"

    def test_expand_flag(self):
        code, out = run("eliminate", "--expand", "1/((1-x*l)*(1-y/l))")
        assert code == 0 and out.strip() == "(1)/(1 - x - x*y + x^2*y)"


class TestCommands:
    def test_eliminate_macmahon(self):
        code, out = run("eliminate", MACMAHON)
        assert code == 0
        assert out.startswith("(1 - x1^2*x2*x3)/")

    def test_classify_macmahon(self):
        code, out = run("classify", "--output", "json", MACMAHON)
        rows = json.loads(out)
        assert code == 0 and len(rows) == 4
        assert [(r["c_num"], r["dc_num"]) for r in rows] == [(1, 1)] * 4

    def test_classify_text_header(self):
        code, out = run("classify", EX)
        assert out.splitlines()[0].split(" | ")[3].strip() == "C-Num"

    def test_trace_shows_dual_step(self):
        code, out = run("trace", EX)
        assert code == 0
        assert "[mode=dual]" in out and "underlined: (1 - z*l1^-1)" in out

    def test_verify_pass_and_fail(self):
        assert run("verify", EX, "--degree", "6") == (0, "PASS (degree 6)\n")
        code, out = run("verify", EX, "1/((1-x)*(1-y)*(1-z))")
        assert code == 1 and out.startswith("FAIL") and "coefficient of z" in out

    def test_stdin(self, monkeypatch):
        code, out = run("eliminate", stdin="1/((1-x*l)*(1-y/l))\n", monkeypatch=monkeypatch)
        assert code == 0 and out.strip() == "(1)/((1 - x)*(1 - x*y))"

    def test_explicit_order_and_mode(self):
        code, out = run("eliminate", "--elim-order", "l2,l1", "--mode", "direct",
                        "1/((1-x*l1)*(1-y*l2/l1)*(1-z/l2))")
        assert code == 0

    def test_catalog(self):
        code, out = run("catalog", "--id", "fundamental-4", "--no-times")
        assert code == 0 and out.splitlines()[-1] == "1/1 entries passed"

    def test_catalog_json(self):
        code, out = run("catalog", "--id", "two-lambda-lemma", "--output", "json", "--no-times")
        (row,) = json.loads(out)
        assert row["ok"] and row["seconds"] is None

    @pytest.mark.parametrize("argv", [
        ["eliminate", "1/(1-x-y)"],
        ["eliminate", "1/(1-l)"],
        ["eliminate", "1/(1-x*l"],
        ["catalog", "--id", "nope"],
        ["eliminate", "--mode", "sideways", "1"],
        ["eliminate", "--elim-order", "l9", "1/(1-x*l)"],
    ])
    def test_input_errors_exit_2(self, argv, capsys):
        assert main(argv, io.StringIO()) == 2
        assert capsys.readouterr().err

    def test_divergence_names_factor(self, capsys):
        main(["eliminate", "1/(1-l)"], io.StringIO())
        assert "(1 - l)" in capsys.readouterr().err

    def test_deterministic(self):
        a = [run("trace", MACMAHON) for _ in range(2)]
        b = [run("catalog", "--no-times") for _ in range(2)]
        assert a[0] == a[1] and b[0] == b[1]


class TestTraceReplay:
    @pytest.mark.parametrize("text", [EX, MACMAHON, "1/((1-x*l1^2)*(1-y*l2/l1)*(1-z/l2))"])
    def test_replay_printed_trace(self, text):
        E = parse(text)
        R, trace = omega_eliminate_all(E)
        steps = parse_trace(format_trace(E, trace))
        assert len(steps) == len(trace)
        assert rational_equal(replay_steps(E, steps), R)
