import pytest

from omegaelim.algebra import ONE_POLY, LaurentPolynomial, Monomial
from omegaelim.catalog import (
    corpus,
    find,
    fundamental,
    fundamentals,
    g_sample,
    g_transforms,
    han_entry,
    han_rhs,
    hard_closed,
    kgon_input,
    large_factor_rule,
    qpoch,
    run_entry,
    series_coefficients,
    small_factor_rule,
    tk_closed,
    two_dim_closed,
)
from omegaelim.elliott import rational_equal
from omegaelim.omega import omega
from omegaelim.oracle import enumerate_kgon, expand, verify
from omegaelim.parser import parse

x1, x2, y1 = (Monomial.var(v) for v in ("x1", "x2", "y1"))


@pytest.mark.parametrize("entry", corpus(), ids=lambda e: e.id)
def test_corpus_entry(entry):
    report = run_entry(entry, 4)
    assert report.error is None
    assert report.symbolic and report.oracle


class TestFundamentals:
    def test_nine(self):
        assert [e.id for e in fundamentals(2)][:2] == ["fundamental-1[s=2]", "fundamental-2[s=2]"]
        assert len(fundamentals()) == 9

    def test_first_at_s1(self):
        e = fundamental(1, 1)
        assert rational_equal(e.expected(), parse("1/((1-x)*(1-x*y))", e.expected().order))

    def test_second_at_s2(self):
        e = fundamental(2, 2)
        assert rational_equal(e.expected(), parse("(1+x*y)/((1-x)*(1-y^2*x))", e.expected().order))

    def test_ninth_numerator(self):
        got = fundamental(9).expected().numerator
        want = parse("1-x*y*z-x*y*w-x*y*z*w+x*y^2*z*w+x^2*y*z*w", ["x", "y", "z", "w"]).numerator
        assert got == want

    def test_bad_index(self):
        with pytest.raises(ValueError):
            fundamental(10)
        with pytest.raises(ValueError):
            fundamental(1, 0)


class TestHan:
    def test_single_factor(self):
        R = han_rhs(ONE_POLY, [x1], [])
        assert rational_equal(R, parse("1/(1-x1)", R.order))

    def test_relabelled_fundamental_four(self):
        e = han_entry(2, 1)
        want = parse("(1-x1*x2*y1)/((1-x1)*(1-x2)*(1-x1*y1)*(1-x2*y1))", e.expected().order)
        assert rational_equal(e.expected(), want)
        assert rational_equal(omega(e.input()), want)

    def test_degree_two_numerator(self):
        e = han_entry(3, 2, U=LaurentPolynomial.var("l"))
        assert e.check_symbolic() and e.check_oracle(4)

    def test_repeated_x_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            han_rhs(ONE_POLY, [x1, x1], [])

    def test_root_conditions(self):
        with pytest.raises(ValueError):
            han_rhs(ONE_POLY, [x1], [x1.inverse()])


class TestKgon:
    def test_input_shape(self):
        E = kgon_input(3)
        assert len(E.factors) == 3 and E.lambdas_present() == ["l1", "l2", "l3"]

    @pytest.mark.parametrize("k", [3, 4])
    def test_series_matches_enumeration(self, k):
        assert series_coefficients(tk_closed(k), "q", 2 * k + 6) == enumerate_kgon(k, 2 * k + 6)

    def test_small_k_rejected(self):
        with pytest.raises(ValueError):
            kgon_input(2)


class TestTwoDim:
    def test_constant_term(self):
        T = expand(two_dim_closed(3, 4), 0)
        assert T.coefficient(Monomial()) == 1

    def test_small_parameters_rejected(self):
        with pytest.raises(ValueError):
            two_dim_closed(1, 3)


class TestHard:
    def test_empty_pochhammer(self):
        assert qpoch(Monomial.var("x"), 0) == []
        assert len(qpoch(Monomial.var("x"), 3)) == 3

    def test_first_instance(self):
        assert find("hard[k=1,r=0]").check_symbolic()

    def test_closed_form_has_constant_one(self):
        assert expand(hard_closed(2, 1), 0).coefficient(Monomial()) == 1


class TestG:
    def test_f_one_gives_one(self):
        g = g_transforms(g_sample("one"))
        assert rational_equal(g.g2_closed, parse("1", g.g2_closed.order))

    def test_diagonal_cone(self):
        g = g_transforms(g_sample("diagonal-cone"))
        assert rational_equal(omega(g.g1_input), g.g1_closed)
        assert rational_equal(omega(g.g2_input), g.g2_closed)

    def test_rejects_extra_variables(self):
        with pytest.raises(ValueError):
            g_transforms(parse("1/(1-z)"))


class TestSingleFactorRules:
    F = parse("(1+x*t)/((1-x*t)*(1-y*t^2))", ["t", "x", "y"], [])

    def test_small_factor(self):
        lhs, rhs = small_factor_rule(self.F, Monomial({"x": 1, "z": 1}))
        assert rational_equal(omega(lhs), rhs)
        assert verify(lhs, rhs, 4)

    def test_large_factor(self):
        lhs, rhs = large_factor_rule(self.F, Monomial.var("z"))
        assert rational_equal(omega(lhs), rhs)
        assert verify(lhs, rhs, 4)


def test_find_unknown():
    with pytest.raises(KeyError):
        find("no-such-entry")
