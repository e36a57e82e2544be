"""Randomized checks of the engine's structural invariants."""

from fractions import Fraction
from itertools import permutations

from hypothesis import assume, given, settings, strategies as st

from omegaelim.algebra import LaurentPolynomial, Monomial
from omegaelim.catalog import large_factor_rule, small_factor_rule
from omegaelim.elliott import ElliottError, ElliottRational, Factor, factor_product, normalize_in, rational_equal, substitute
from omegaelim.omega import dual_applicable, omega, omega_eliminate_one, partial_fractions
from omegaelim.oracle import verify
from omegaelim.parser import parse

from randgen import PARAMS, elliott_inputs, monomials_a, series_fs

SETTINGS = settings(max_examples=50)


def engine(E, **kw):
    try:
        return omega(E, **kw)
    except ElliottError:
        assume(False)


@SETTINGS
@given(elliott_inputs())
def test_partial_fractions_reassemble(E):
    for lam in E.lambdas_present():
        N = normalize_in(E, lam)
        try:
            pf = partial_fractions(N, lam)
        except ElliottError:
            continue
        assert rational_equal(pf.reassemble(), N)


@SETTINGS
@given(elliott_inputs())
def test_direct_and_dual_agree(E):
    for lam in E.lambdas_present():
        if not dual_applicable(normalize_in(E, lam), lam):
            continue
        try:
            a = omega_eliminate_one(E, lam, "direct")
            b = omega_eliminate_one(E, lam, "dual")
        except ElliottError:
            continue
        assert rational_equal(a, b)


@SETTINGS
@given(elliott_inputs())
def test_order_invariance(E):
    lams = E.lambdas_present()
    R = engine(E)
    for perm in permutations(lams):
        assert rational_equal(engine(E, lambda_order=list(perm)), R)


@SETTINGS
@given(elliott_inputs())
def test_oracle_agreement(E):
    assert verify(E, engine(E), 4)


@SETTINGS
@given(elliott_inputs(max_lambdas=2, max_factors=3), elliott_inputs(max_lambdas=2, max_factors=3),
       st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_linearity(A, B, a, b):
    order = A.order if len(A.order.vars) >= len(B.order.vars) else B.order
    A, B = A.with_order(order), B.with_order(order)
    a_, b_ = ElliottRational.polynomial(LaurentPolynomial.constant(a), order), ElliottRational.polynomial(
        LaurentPolynomial.constant(b), order)
    assert rational_equal(engine(a_ * A + b_ * B), a_ * engine(A) + b_ * engine(B))


@SETTINGS
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from([1, -1, 2, Fraction(1, 3)]), st.data())
def test_repeated_small_factor(a, j, c, data):
    # A(lam) / (1 - c u lam^a)^j with deg A < a  ->  A(1) / (1 - c u)^j
    u = Monomial({"x": 1, "y": data.draw(st.integers(0, 2))})
    lam = Monomial.var("l")
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=a, max_size=a))
    assume(any(coeffs))
    A = LaurentPolynomial({lam ** i: k for i, k in enumerate(coeffs) if k})
    E = ElliottRational(A, [Factor(c, u * lam ** a, j)], parse("l", ["x", "y", "l"]).order)
    want = ElliottRational(LaurentPolynomial.constant(sum(coeffs)), [Factor(c, u, j)], E.order)
    got = omega(E)
    assert rational_equal(got, want)
    assert verify(E, got, 4)


@SETTINGS
@given(elliott_inputs())
def test_merged_multiplicities(E):
    keys = [f.key for f in E.factors]
    assert len(keys) == len(set(keys))
    doubled = ElliottRational(E.numerator, list(E.factors) + list(E.factors), E.order)
    assert factor_product(doubled.factors) == factor_product(E.factors) ** 2


@SETTINGS
@given(elliott_inputs(max_lambdas=1, max_factors=3), st.sampled_from(PARAMS), st.sampled_from(PARAMS))
def test_substitute_respects_equality(E, v, w):
    R = engine(E)
    again = parse(R.format(), list(R.order.vars), list(R.order.lambda_vars))
    assume(v != w)
    sigma = {v: Monomial({v: 1, w: 1})}
    assert rational_equal(substitute(R, sigma), substitute(again, sigma))


@SETTINGS
@given(elliott_inputs())
def test_print_parse_round_trip(E):
    R = engine(E)
    again = parse(R.format(), list(R.order.vars), list(R.order.lambda_vars))
    assert rational_equal(again, R)


@SETTINGS
@given(series_fs(), monomials_a())
def test_small_factor_rule(F, A):
    lhs, rhs = small_factor_rule(F, A)
    assert rational_equal(engine(lhs), rhs)


@SETTINGS
@given(series_fs(), monomials_a())
def test_large_factor_rule(F, A):
    lhs, rhs = large_factor_rule(F, A)
    assert rational_equal(engine(lhs), rhs)
