from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from omegaelim.algebra import Monomial, VariableOrder
from omegaelim.oracle import (
    OracleError,
    enumerate_hard,
    enumerate_kgon,
    enumerate_two_dim,
    expand,
    omega_by_definition,
    verify,
)
from omegaelim.parser import parse

from randgen import elliott_inputs

EX = "1/((1-x*l)*(1-y*l)*(1-z/l))"
PAIR = "1/((1-x1*l)*(1-x2/l))"


def mono(**e):
    return Monomial(e)


class TestExpand:
    def test_geometric(self):
        T = expand(parse("1/(1-x)"), 3)
        assert T.univariate("x") == [1, 1, 1, 1]

    def test_two_sided_pair(self):
        T = expand(parse(PAIR), 2)
        want = {mono(x1=a, x2=b, l=a - b): 1 for a in range(3) for b in range(3 - a)}
        assert T.coeffs == want

    def test_zero_numerator(self):
        assert expand(parse("0"), 4).coeffs == {}

    def test_flip_of_large_factor(self):
        # 1/(1 - l/x) = -x l^-1 / (1 - x/l)
        T = expand(parse("1/((1-x*l)*(1-l/y))", ["x", "y", "l"]), 2)
        assert T.coefficient(mono(y=1, l=-1)) == -1

    def test_needs_grading(self):
        with pytest.raises(OracleError, match="x-graded"):
            expand(parse("1/(1-l)"), 2)

    def test_numerator_shift(self):
        T = expand(parse("x^-1/(1-x)"), 2)
        assert T.coefficient(mono(x=-1)) == 1 and T.coefficient(mono(x=2)) == 1


class TestOmegaByDefinition:
    def test_pair(self):
        T = omega_by_definition(expand(parse(PAIR), 2))
        assert T.coeffs == {Monomial(): 1, mono(x1=1): 1, mono(x1=2): 1, mono(x1=1, x2=1): 1}

    def test_lambda_free_unchanged(self):
        T = expand(parse("(1+y)/(1-x)"), 3)
        assert omega_by_definition(T) == T

    def test_negative_powers_vanish(self):
        T = expand(parse("x/(l*(1-x))"), 3)
        assert omega_by_definition(T).coeffs == {}


class TestVerify:
    def test_example(self):
        assert verify(parse(EX), parse("(1-x*y*z)/((1-x)*(1-y)*(1-x*z)*(1-z*y))"), 6)

    def test_fundamental_eight(self):
        E = parse("1/((1-l*x)*(1-l*y)*(1-l*z)*(1-w/l))", ["x", "y", "z", "w", "l"])
        R = parse("(1-x*y*w-x*z*w-y*z*w+x*y*z*w+x*y*z*w^2)/((1-x)*(1-y)*(1-z)*(1-w*x)*(1-w*y)*(1-w*z))", E.order)
        assert verify(E, R, 5)

    def test_wrong_candidate(self):
        E = parse(EX)
        res = verify(E, parse("1/((1-x)*(1-y)*(1-z))", E.order), 6)
        assert not res
        m, want, got = res.mismatch
        assert m == mono(z=1) and (want, got) == (0, 1)

    def test_monotone_in_degree(self):
        E = parse(EX)
        bad = parse("(1-x*y*z)/((1-x)*(1-y)*(1-x*z)*(1-z*y)) - x^3*y^2", E.order)
        assert [bool(verify(E, bad, d)) for d in range(7)] == [True] * 5 + [False] * 2

    def test_preconditions(self):
        with pytest.raises(ValueError):
            verify(parse("1/(1-x)"), parse("1/(1-x)"), 2)
        with pytest.raises(ValueError):
            verify(parse(EX), parse(EX), 2)


def _kgon_brute(k, n_max):
    counts = [0] * (n_max + 1)
    for n in range(k, n_max + 1):
        for parts in combinations_with_replacement(range(1, n + 1), k):
            if sum(parts) == n and sum(parts[:-1]) > parts[-1]:
                counts[n] += 1
    return counts


class TestEnumerations:
    def test_triangles(self):
        assert enumerate_kgon(3, 10) == [0, 0, 0, 1, 0, 1, 1, 2, 1, 3, 2]

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_kgon_against_brute_force(self, k):
        assert enumerate_kgon(k, 14) == _kgon_brute(k, 14)

    def test_below_k_is_zero(self):
        assert enumerate_kgon(5, 4) == [0] * 5
        with pytest.raises(ValueError):
            enumerate_kgon(2, 5)

    def test_two_dim_constant_term(self):
        T = enumerate_two_dim(3, 2, 6)
        assert T.coefficient(Monomial()) == 1
        assert T.coefficient(mono(y=1)) == 0 and T.coefficient(mono(x=1, y=1)) == 1

    def test_hard_base_case(self):
        # k = r = 0: i >= b0 >= j, weight q^b0
        T = enumerate_hard(0, 0, 3)
        assert T.coefficient(mono(x=1, q=1)) == 1
        assert T.coefficient(mono(x=1, y=1, q=1)) == 1
        assert T.coefficient(mono(y=1)) == 0


@settings(max_examples=40)
@given(elliott_inputs(max_lambdas=2, max_factors=3), st.integers(1, 4))
def test_truncation_is_consistent(E, D):
    try:
        hi = expand(E, D + 1)
    except OracleError:
        return
    assert hi.truncate(D) == expand(E, D)


@settings(max_examples=40)
@given(st.integers(0, 4))
def test_expand_is_multiplicative(D):
    order = VariableOrder.standard(["x", "y", "z"], [])
    A = parse("(1+x*z)/((1-x)*(1-x*y)^2)", order)
    B = parse("(2-y)/((1+y)*(1-z/2))", order)
    ta, tb = expand(A, D), expand(B, D)
    prod = {}
    for ma, ca in ta.coeffs.items():
        for mb, cb in tb.coeffs.items():
            m = ma * mb
            if order.x_degree(m) <= D:
                prod[m] = prod.get(m, 0) + ca * cb
    prod = {m: c for m, c in prod.items() if c}
    assert expand(A * B, D).coeffs == prod
