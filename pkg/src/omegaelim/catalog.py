"""Named Omega identities: input builders paired with closed forms.

Every entry knows how to build its input, its expected value, and how to
check both symbolically (exact rational equality after elimination) and
against the series oracle.  The command line and the test suite read the
same corpus.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import ONE, ONE_POLY, LaurentPolynomial, Monomial, VariableOrder, normalize_bindings
from .elliott import ElliottRational, Factor, combine, rational_equal, substitute
from .omega import omega
from .oracle import VerifyResult, enumerate_hard, enumerate_kgon, enumerate_two_dim, expand, verify
from .parser import parse

Builder = Callable[[], ElliottRational]


@dataclass
class CatalogEntry:
    id: str
    parameters: Dict[str, int]
    input: Builder
    expected: Builder
    provenance: str
    # how the result is obtained from the input; plain elimination if None
    pipeline: Optional[Callable[[ElliottRational], ElliottRational]] = None
    # independent check at a given degree; verify(input, expected) if None
    oracle: Optional[Callable[[int], VerifyResult]] = None

    def compute(self) -> ElliottRational:
        E = self.input()
        return self.pipeline(E) if self.pipeline else omega(E)

    def check_symbolic(self) -> bool:
        return rational_equal(self.compute(), self.expected())

    def check_oracle(self, D: int = 4) -> VerifyResult:
        if self.oracle is not None:
            return self.oracle(D)
        return verify(self.input(), self.expected(), D)


@dataclass
class EntryReport:
    id: str
    symbolic: bool
    oracle: bool
    seconds: float
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.symbolic and self.oracle and self.error is None


def run_entry(entry: CatalogEntry, D: int = 4) -> EntryReport:
    t0 = time.perf_counter()
    try:
        sym = entry.check_symbolic()
        orc = bool(entry.check_oracle(D))
        err = None
    except ValueError as exc:
        sym = orc = False
        err = f"{type(exc).__name__}: {exc}"
    return EntryReport(entry.id, sym, orc, time.perf_counter() - t0, err)


def _fixed(id: str, inp: str, out: str, order: Sequence[str], provenance: str, **params) -> CatalogEntry:
    return CatalogEntry(
        id, dict(params), lambda: parse(inp, order), lambda: parse(out, order), provenance
    )


def _geom(terms: Sequence[str]) -> str:
    return "(" + " + ".join(terms) + ")" if terms else "0"


# --- the nine fundamental evaluations --------------------------------------

_FUND_ORDER = ["x", "y", "z", "w", "l"]

_FUNDAMENTALS_FIXED = {
    3: ("1/((1-l*x)*(1-y/l)*(1-z/l))", "1/((1-x)*(1-x*y)*(1-x*z))"),
    4: ("1/((1-l*x)*(1-l*y)*(1-z/l))", "(1-x*y*z)/((1-x)*(1-y)*(1-x*z)*(1-z*y))"),
    5: (
        "1/((1-l*x)*(1-l*y)*(1-z/l^2))",
        "(1+x*y*z-x^2*y*z-x*y^2*z)/((1-x)*(1-y)*(1-z*x^2)*(1-z*y^2))",
    ),
    6: ("1/((1-l^2*x)*(1-y/l)*(1-z/l))", "(1+x*y+x*z+x*y*z)/((1-x)*(1-x*y^2)*(1-x*z^2))"),
    7: ("1/((1-l^2*x)*(1-l*y)*(1-z/l))", "(1+x*z-x*y*z-x*y*z^2)/((1-x)*(1-y)*(1-y*z)*(1-x*z^2))"),
    8: (
        "1/((1-l*x)*(1-l*y)*(1-l*z)*(1-w/l))",
        "(1-x*y*w-x*z*w-y*z*w+x*y*z*w+x*y*z*w^2)/((1-x)*(1-y)*(1-z)*(1-w*x)*(1-w*y)*(1-w*z))",
    ),
    9: (
        "1/((1-l*x)*(1-l*y)*(1-z/l)*(1-w/l))",
        "(1-x*y*z-x*y*w-x*y*z*w+x*y^2*z*w+x^2*y*z*w)/((1-x)*(1-y)*(1-x*z)*(1-x*w)*(1-y*z)*(1-y*w))",
    ),
}


def fundamental(i: int, s: int = 1) -> CatalogEntry:
    """Fundamental evaluation ``i`` (1..9); ``s`` matters for 1 and 2 only."""
    if i == 1:
        inp = f"1/((1-l*x)*(1-y/l^{s}))"
        out = f"1/((1-x)*(1-x^{s}*y))"
    elif i == 2:
        tail = _geom([f"y^{j}" for j in range(s - 1)])
        inp = f"1/((1-l^{s}*x)*(1-y/l))"
        out = f"(1 + x*y*{tail})/((1-x)*(1-y^{s}*x))"
    elif i in _FUNDAMENTALS_FIXED:
        inp, out = _FUNDAMENTALS_FIXED[i]
    else:
        raise ValueError("fundamental evaluations are numbered 1..9")
    if s < 1:
        raise ValueError("s must be a positive integer")
    params = {"s": s} if i in (1, 2) else {}
    return _fixed(f"fundamental-{i}" + (f"[s={s}]" if params else ""), inp, out, _FUND_ORDER,
                  f"MacMahon fundamental evaluation {i}", **params)


def fundamentals(s: int = 1) -> List[CatalogEntry]:
    return [fundamental(i, s) for i in range(1, 10)]


# --- fixed multi-factor examples -----------------------------------------


def example_two_contributors() -> CatalogEntry:
    return _fixed(
        "two-small-one-large",
        "1/((1-x*l1)*(1-y*l1)*(1-z/l1))",
        "(1-x*y*z)/((1-x)*(1-y)*(1-x*z)*(1-z*y))",
        ["x", "y", "z", "l1"],
        "worked example: two contributing factors, one dual",
    )


def two_lambda_lemma() -> CatalogEntry:
    return _fixed(
        "two-lambda-lemma",
        "(1-A*B*l1*l2)/((1-A*l1)*(1-B*l2)*(1-C*l1*l2)*(1-D*l1*l2)*(1-E/(l1*l2)))",
        "(1-A*B)*(1-C*D*E)/((1-A)*(1-B)*(1-C)*(1-D)*(1-C*E)*(1-D*E))",
        ["A", "B", "C", "D", "E", "l1", "l2"],
        "Andrews et al. two-lambda lemma",
    )


def four_lambda_macmahon() -> CatalogEntry:
    return _fixed(
        "four-lambda-macmahon",
        "1/((1-x1*l1*l2)*(1-x2*l3/l1)*(1-x4/(l3*l4))*(1-x3*l4/l2))",
        "(1-x1^2*x2*x3)/((1-x1)*(1-x1*x2)*(1-x1*x3)*(1-x1*x2*x3)*(1-x1*x2*x3*x4))",
        ["x1", "x2", "x3", "x4", "l1", "l2", "l3", "l4"],
        "MacMahon four-lambda evaluation",
    )


# --- Han's formula ----------------------------------------------------------


def han_input(U: LaurentPolynomial, xs: Sequence[Monomial], ys: Sequence[Monomial], lam: str = "l",
              order: Optional[VariableOrder] = None) -> ElliottRational:
    """``U(lam) / (A(lam) B(1/lam))`` with ``A(t) = prod(1 - x t)``, ``B(t) = prod(1 - y t)``."""
    order = order or _han_order(U, xs, ys, lam)
    L = Monomial.var(lam)
    factors = [Factor(1, x * L) for x in xs] + [Factor(1, y / L) for y in ys]
    return ElliottRational(U, factors, order)


def han_rhs(U: LaurentPolynomial, xs: Sequence[Monomial], ys: Sequence[Monomial], lam: str = "l",
            order: Optional[VariableOrder] = None) -> ElliottRational:
    """Sum over i of ``x_i^(n-1) U(1/x_i) / ((1-x_i) B(x_i) prod_{j != i} (x_i - x_j))``."""
    xs = list(xs)
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("han_rhs needs pairwise distinct x monomials (the formula divides by x_i - x_j)")
    if any(x.is_one() for x in xs) or any((x * y).is_one() for x in xs for y in ys):
        raise ValueError("han_rhs needs x_i != 1 and x_i*y_j != 1")
    order = order or _han_order(U, xs, ys, lam)
    terms = []
    for i, xi in enumerate(xs):
        num = LaurentPolynomial.monomial(xi ** (n - 1)) * U.substitute(normalize_bindings({lam: xi.inverse()}))
        factors = [Factor(1, xi)] + [Factor(1, y * xi) for y in ys]
        for j, xj in enumerate(xs):
            if j != i:
                # x_i - x_j = x_i (1 - x_j/x_i)
                num = num * LaurentPolynomial.monomial(xi.inverse())
                factors.append(Factor(1, xj / xi))
        terms.append(ElliottRational(num, factors, order))
    return combine(terms, order)


def _han_order(U, xs, ys, lam) -> VariableOrder:
    names: List[str] = []
    for m in list(xs) + list(ys):
        for v in m.variables():
            if v not in names:
                names.append(v)
    for v in sorted(U.variables()):
        if v != lam and v not in names:
            names.append(v)
    return VariableOrder.standard(names, [lam])


def han_entry(n: int, m: int, U: Optional[LaurentPolynomial] = None, ys: Optional[Sequence[Monomial]] = None) -> CatalogEntry:
    xs = [Monomial.var(f"x{i}") for i in range(1, n + 1)]
    ys = list(ys) if ys is not None else [Monomial.var(f"y{j}") for j in range(1, m + 1)]
    U = U if U is not None else ONE_POLY
    order = _han_order(U, xs, ys, "l")
    return CatalogEntry(
        f"han[n={n},m={len(ys)}]",
        {"n": n, "m": len(ys)},
        lambda: han_input(U, xs, ys, order=order),
        lambda: han_rhs(U, xs, ys, order=order),
        "Han's formula",
    )


# --- k-gon partitions -------------------------------------------------------


def _kgon_order(k: int) -> VariableOrder:
    return VariableOrder.standard([f"x{i}" for i in range(1, k + 1)], [f"l{i}" for i in range(1, k + 1)])


def _check_k(k: int):
    if k < 3:
        raise ValueError("k-gon partitions need k >= 3")


def kgon_input(k: int) -> ElliottRational:
    _check_k(k)
    x = [None] + [Monomial.var(f"x{i}") for i in range(1, k + 1)]
    l = [None] + [Monomial.var(f"l{i}") for i in range(1, k + 1)]
    num = LaurentPolynomial.monomial(x[1] / l[1])
    factors = [Factor(1, x[1] * l[k] / l[1])]
    for i in range(2, k):
        factors.append(Factor(1, x[i] * l[i - 1] * l[k] / l[i]))
    factors.append(Factor(1, x[k] * l[k - 1] / l[k]))
    return ElliottRational(num, factors, _kgon_order(k))


def kgon_closed(k: int) -> ElliottRational:
    _check_k(k)
    order = _kgon_order(k)
    x = [None] + [Monomial.var(f"x{i}") for i in range(1, k + 1)]

    def tail(j: int, last: int) -> Monomial:
        # x_j ... x_{k-1} * x_k^last
        m = x[k] ** last
        for i in range(j, k):
            m = m * x[i]
        return m

    first = ElliottRational(
        LaurentPolynomial.monomial(tail(1, 1)), [Factor(1, tail(j, 1)) for j in range(1, k + 1)], order
    )
    second = ElliottRational(
        LaurentPolynomial.monomial(tail(1, k - 1)),
        [Factor(1, tail(j, k - j)) for j in range(1, k)] + [Factor(1, x[k])],
        order,
    )
    return first - second


def tk_closed(k: int) -> ElliottRational:
    _check_k(k)
    order = VariableOrder.standard(["q"], [])
    q = Monomial.var("q")
    first = ElliottRational(LaurentPolynomial.monomial(q**k), [Factor(1, q**i) for i in range(1, k + 1)], order)
    second = ElliottRational(
        LaurentPolynomial.monomial(q ** (2 * k - 2)),
        [Factor(1, q)] + [Factor(1, q ** (2 * i)) for i in range(1, k)],
        order,
    )
    return first - second


def kgon_to_q(E: ElliottRational) -> ElliottRational:
    """Set every x_i to q."""
    order = VariableOrder.standard(["q"], [])
    q = Monomial.var("q")
    names = [v for v in E.order.params if v.startswith("x")]
    return substitute(E, {v: q for v in names}, order)


def series_coefficients(E: ElliottRational, var: str, D: int) -> List[int]:
    return expand(E, D).univariate(var)


def kgon_entry(k: int) -> CatalogEntry:
    return CatalogEntry(f"kgon[k={k}]", {"k": k}, lambda: kgon_input(k), lambda: kgon_closed(k),
                        "non-degenerate k-gon partitions")


def tk_entry(k: int) -> CatalogEntry:
    """k-gon generating function in q, checked against brute-force counts."""

    def oracle(D: int) -> VerifyResult:
        D = max(D, 2 * k + 6)
        got = series_coefficients(tk_closed(k), "q", D)
        want = enumerate_kgon(k, D)
        for n, (a, b) in enumerate(zip(want, got)):
            if a != b:
                return VerifyResult(False, D, (Monomial.var("q", n), a, b))
        return VerifyResult(True, D)

    return CatalogEntry(f"tk[k={k}]", {"k": k}, lambda: kgon_input(k), lambda: tk_closed(k),
                        "k-gon partitions counted by size",
                        pipeline=lambda E: kgon_to_q(omega(E)), oracle=oracle)


# --- two-dimensional problem ----------------------------------------------

_TWO_DIM_ORDER = ["x", "y", "l1", "l2"]


def _check_KL(K: int, L: int):
    if K < 2 or L < 2:
        raise ValueError("the two-dimensional problem needs K, L >= 2")


def two_dim_input(K: int, L: int) -> ElliottRational:
    _check_KL(K, L)
    return parse(f"1/((1-x*l1^{K}/l2)*(1-y*l2^{L}/l1))", _TWO_DIM_ORDER)


def two_dim_closed(K: int, L: int) -> ElliottRational:
    _check_KL(K, L)
    xs = _geom([f"x^{i}" for i in range(L)])
    ys = _geom([f"y^{j}" for j in range(K)])
    return parse(f"(1 + x*y*{xs}*{ys} - x*y^{K} - x^{L}*y)/((1-x*y^{K})*(1-x^{L}*y))", _TWO_DIM_ORDER)


def two_dim_entry(K: int, L: int) -> CatalogEntry:
    def oracle(D: int) -> VerifyResult:
        res = verify(two_dim_input(K, L), two_dim_closed(K, L), D)
        if not res:
            return res
        lhs = enumerate_two_dim(K, L, D)
        rhs = expand(two_dim_closed(K, L).with_order(lhs.order), D)
        diff = lhs.first_difference(rhs)
        return VerifyResult(diff is None, D, diff)

    return CatalogEntry(f"two-dim[K={K},L={L}]", {"K": K, "L": L}, lambda: two_dim_input(K, L),
                        lambda: two_dim_closed(K, L), "two-dimensional lattice problem", oracle=oracle)


# --- the hard problem -------------------------------------------------------

_HARD_ORDER = VariableOrder.standard(["x", "y", "t", "z", "q"], ["l"])
_HARD_Q_ORDER = VariableOrder.standard(["x", "y", "q"], [])


def qpoch(a: Tuple[int, Monomial] | Monomial, n: int, q: str = "q") -> List[Factor]:
    """Factors of ``(a; q)_n = (1 - a)(1 - a q) ... (1 - a q^(n-1))``; empty for n = 0."""
    c, m = a if isinstance(a, tuple) else (1, a)
    Q = Monomial.var(q)
    return [Factor(c, m * Q**j) for j in range(n)]


def hard_input(k: int, r: int) -> ElliottRational:
    """``G1(x, y, t*l, q) * G2(z/l, q)`` with symbolic ``t`` and ``z``."""
    if k < 0 or r < 0:
        raise ValueError("k and r must be nonnegative")
    x, y, t, z, q, l = (Monomial.var(v) for v in "xytzql")
    factors = [Factor(1, x), Factor(1, x * t * l)]
    factors += [Factor(1, x * y * t * q**j * l) for j in range(r + 1)]
    factors += [Factor(1, z * q**j / l) for j in range(k)]
    return ElliottRational(ONE_POLY, factors, _HARD_ORDER)


def hard_pipeline(E: ElliottRational) -> ElliottRational:
    """Eliminate ``l`` and set ``t = z = q``."""
    q = Monomial.var("q")
    return substitute(omega(E), {"t": q, "z": q}, _HARD_Q_ORDER)


def hard_closed(k: int, r: int) -> ElliottRational:
    x, y, q = (Monomial.var(v) for v in "xyq")
    order = _HARD_Q_ORDER
    terms = [ElliottRational(ONE_POLY, qpoch(y, r + 1) + qpoch(x, k + 2), order)]
    for i in range(r + 1):
        sign = -1 if i % 2 == 0 else 1
        num = LaurentPolynomial.monomial(y * q ** (i * (i + 3) // 2), sign)
        factors = [Factor(1, x), Factor(1, y * q**i)]
        factors += qpoch(q, i) + qpoch(q, r - i) + qpoch(x * y * q ** (i + 1), k + 1)
        terms.append(ElliottRational(num, factors, order))
    return combine(terms, order)


def hard_entry(k: int, r: int) -> CatalogEntry:
    def oracle(D: int) -> VerifyResult:
        lhs = enumerate_hard(k, r, D)
        rhs = expand(hard_closed(k, r), D)
        diff = lhs.first_difference(rhs)
        return VerifyResult(diff is None, D, diff)

    return CatalogEntry(f"hard[k={k},r={r}]", {"k": k, "r": r}, lambda: hard_input(k, r),
                        lambda: hard_closed(k, r), "two-chain generating function",
                        pipeline=hard_pipeline, oracle=oracle)


# --- the G1/G2 transforms -----------------------------------------------------


@dataclass
class GTransforms:
    g1_input: ElliottRational
    g1_closed: ElliottRational
    g2_input: ElliottRational
    g2_closed: ElliottRational


_G1_ORDER = VariableOrder.standard(["x", "y", "z"], ["l1", "l2", "l3"])
_G2_ORDER = VariableOrder.standard(["x", "z"], ["l1", "l2"])


def _f_at(F: ElliottRational, a, b, order: VariableOrder) -> ElliottRational:
    return substitute(F, {"x": a, "y": b}, order)


def g_transforms(F: ElliottRational) -> GTransforms:
    """Both sides of the G1 and G2 identities for a concrete ``F(x, y)``.

    ``F`` should have its series supported on ``i >= j >= 0``; that is the
    caller's responsibility.
    """
    extra = set(F.variables()) - {"x", "y"}
    if extra:
        raise ValueError(f"F must be a function of x and y only, found {sorted(extra)}")
    x, y, z = (Monomial.var(v) for v in "xyz")
    l1, l2, l3 = (Monomial.var(v) for v in ("l1", "l2", "l3"))

    o1 = _G1_ORDER
    g1_in = _f_at(F, z * l2 / l1, z / l3, o1) * ElliottRational(ONE_POLY, [Factor(1, x * l1), Factor(1, y * l3 / l2)], o1)
    left = _f_at(F, x * z, y * z, o1)
    right = _f_at(F, x * y * z, z, o1) * ElliottRational.polynomial(LaurentPolynomial.monomial(y), o1)
    g1_out = (left - right) * ElliottRational(ONE_POLY, [Factor(1, x), Factor(1, y)], o1)

    o2 = _G2_ORDER
    g2_in = _f_at(F, z * l1, z / l2, o2) * ElliottRational(ONE_POLY, [Factor(1, x * l2 / l1)], o2)
    left = _f_at(F, z, x * z, o2)
    right = _f_at(F, x * z, z, o2) * ElliottRational.polynomial(LaurentPolynomial.monomial(x), o2)
    g2_out = (left - right) * ElliottRational(ONE_POLY, [Factor(1, x)], o2)
    return GTransforms(g1_in, g1_out, g2_in, g2_out)


# sample F(x, y) with support in i >= j >= 0
G_SAMPLES = {
    "one": "1",
    "diagonal-cone": "1/((1-x)*(1-x*y))",
    "x-axis": "1/(1-x)",
    "slope-half": "(1+2*x*y)/((1-x)*(1-x^2*y))",
    "weighted": "(3 - x + x^2*y)/((1-x^2)*(1-x*y)^2)",
}


def g_sample(name: str) -> ElliottRational:
    return parse(G_SAMPLES[name], ["x", "y"], [])


def g_entries(name: str, F: Optional[ElliottRational] = None) -> List[CatalogEntry]:
    F = F if F is not None else g_sample(name)
    g = g_transforms(F)
    return [
        CatalogEntry(f"G1[{name}]", {}, lambda: g.g1_input, lambda: g.g1_closed, "transform G1"),
        CatalogEntry(f"G2[{name}]", {}, lambda: g.g2_input, lambda: g.g2_closed, "transform G2"),
    ]


# --- single-factor rules --------------------------------------------------------


def small_factor_rule(F: ElliottRational, A: Monomial, t: str = "t", lam: str = "l") -> Tuple[ElliottRational, ElliottRational]:
    """``(F(1/lam)/(1 - A lam), F(A)/(1 - A))`` for ``F`` a power series in ``t``."""
    order = _rule_order(F, A, t, lam)
    L = Monomial.var(lam)
    lhs = substitute(F, {t: L.inverse()}, order) * ElliottRational(ONE_POLY, [Factor(1, A * L)], order)
    rhs = substitute(F, {t: A}, order) * ElliottRational(ONE_POLY, [Factor(1, A)], order)
    return lhs, rhs


def large_factor_rule(F: ElliottRational, A: Monomial, t: str = "t", lam: str = "l") -> Tuple[ElliottRational, ElliottRational]:
    """``(F(lam)/(1 - A/lam), (F(1) - A F(A))/(1 - A))`` for ``F`` a power series in ``t``."""
    order = _rule_order(F, A, t, lam)
    L = Monomial.var(lam)
    lhs = substitute(F, {t: L}, order) * ElliottRational(ONE_POLY, [Factor(1, A / L)], order)
    f1 = substitute(F, {t: ONE}, order)
    fa = substitute(F, {t: A}, order) * ElliottRational.polynomial(LaurentPolynomial.monomial(A), order)
    rhs = (f1 - fa) * ElliottRational(ONE_POLY, [Factor(1, A)], order)
    return lhs, rhs


def _rule_order(F: ElliottRational, A: Monomial, t: str, lam: str) -> VariableOrder:
    names = [v for v in F.order.vars if v != t]
    for v in A.variables():
        if v not in names:
            names.append(v)
    return VariableOrder.standard(names, [lam])


# --- corpus ---------------------------------------------------------------------


def corpus(full: bool = False) -> List[CatalogEntry]:
    """The regression corpus; ``full`` widens every parameter sweep."""
    s_max = 5 if full else 3
    out: List[CatalogEntry] = []
    for s in range(1, s_max + 1):
        out += [fundamental(1, s), fundamental(2, s)]
    out += [fundamental(i) for i in range(3, 10)]
    out += [example_two_contributors(), two_lambda_lemma(), four_lambda_macmahon()]
    out += [han_entry(1, 0), han_entry(2, 1), han_entry(3, 2, U=LaurentPolynomial.var("l"))]
    out += [han_entry(2, 2, ys=[Monomial.var("y1"), Monomial.var("y1")])]
    for k in range(3, (8 if full else 5) + 1):
        out += [kgon_entry(k), tk_entry(k)]
    KL = range(2, (5 if full else 3) + 1)
    out += [two_dim_entry(K, L) for K in KL for L in KL]
    hard = [(k, r) for k in range(1, 4) for r in range(4)] if full else [(1, 0), (1, 1), (2, 2)]
    out += [hard_entry(k, r) for k, r in hard]
    for name in G_SAMPLES:
        out += g_entries(name)
    return out


def find(entry_id: str, full: bool = True) -> CatalogEntry:
    for e in corpus(full):
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)
