"""Independent checks: truncated series and Omega applied term by term.

Nothing here uses partial fractions.  A rational function is expanded as a
power series graded by total degree in the parameter variables, Omega keeps
the terms whose lambda exponents are all nonnegative, and the result is
compared coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra import ONE, Monomial, Number, VariableOrder, as_number, rpow
from .elliott import ElliottRational, ElliottError, Factor


class OracleError(ElliottError):
    pass


@dataclass
class SeriesTable:
    coeffs: Dict[Monomial, Number]
    degree: int
    order: VariableOrder

    def coefficient(self, m: Monomial) -> Number:
        return self.coeffs.get(m, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTable):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def truncate(self, D: int) -> "SeriesTable":
        deg = self.order.x_degree
        return SeriesTable({m: c for m, c in self.coeffs.items() if deg(m) <= D}, D, self.order)

    def univariate(self, var: str) -> List[Number]:
        """Coefficient list of a table in the single variable ``var``."""
        out = [0] * (self.degree + 1)
        for m, c in self.coeffs.items():
            if set(m.variables()) - {var}:
                raise ValueError(f"table involves variables other than {var}")
            e = m.degree(var)
            if 0 <= e <= self.degree:
                out[e] = c
        return out

    def first_difference(self, other: "SeriesTable") -> Optional[Tuple[Monomial, Number, Number]]:
        keys = set(self.coeffs) | set(other.coeffs)
        diffs = [m for m in keys if self.coefficient(m) != other.coefficient(m)]
        if not diffs:
            return None
        key = self.order.key
        m = min(diffs, key=lambda mm: (self.order.x_degree(mm), key(mm)))
        return m, self.coefficient(m), other.coefficient(m)


_Series = List[Tuple[int, Monomial, Number]]


def _mul_trunc(a: _Series, b: _Series, budget: int) -> _Series:
    acc: Dict[Monomial, List] = {}
    b = sorted(b, key=lambda t: t[0])
    for da, ma, ca in a:
        room = budget - da
        for db, mb, cb in b:
            if db > room:
                break
            m = ma * mb
            cell = acc.get(m)
            if cell is None:
                acc[m] = [da + db, ca * cb]
            else:
                cell[1] += ca * cb
    return [(d, m, as_number(c)) for m, (d, c) in acc.items() if c]


def _factor_series(f: Factor, order: VariableOrder, budget: int) -> _Series:
    deg = order.x_degree(f.mono)
    if deg == 0:
        raise OracleError(f"oracle requires x-graded denominators: {f.format(order)} has degree 0")
    c, M, m = f.coeff, f.mono, f.mult
    shift_mono, shift_coef, shift_deg = ONE, 1, 0
    if deg < 0:
        # (1 - cM)^-m = (-cM)^-m (1 - M^-1/c)^-m
        shift_mono, shift_coef, shift_deg = M ** (-m), rpow(-c, -m), -deg * m
        c, M, deg = rpow(c, -1), M.inverse(), -deg
    out = []
    n = 0
    binom = 1
    while shift_deg + n * deg <= budget:
        out.append((shift_deg + n * deg, shift_mono * M ** n, as_number(shift_coef * binom * rpow(c, n))))
        n += 1
        binom = binom * (n + m - 1) // n
    return out


def expand(E: ElliottRational, D: int) -> SeriesTable:
    """Power series of ``E`` up to total parameter degree ``D``."""
    order = E.order
    if E.is_zero():
        return SeriesTable({}, D, order)
    num = [(order.x_degree(m), m, c) for m, c in E.numerator.terms()]
    budget = D - min(d for d, _, _ in num)
    series: _Series = [(0, ONE, 1)]
    for f in E.factors:
        series = _mul_trunc(series, _factor_series(f, order, budget), budget)
    out = _mul_trunc(series, num, D)
    return SeriesTable({m: c for d, m, c in out if d <= D}, D, order)


def omega_by_definition(T: SeriesTable) -> SeriesTable:
    """Drop terms with a negative lambda exponent, then set lambdas to 1."""
    lam = T.order.lambdas
    acc: Dict[Monomial, Number] = {}
    for m, c in T.coeffs.items():
        if any(e < 0 for v, e in m.items() if v in lam):
            continue
        key = Monomial._raw(tuple(p for p in m.items() if p[0] not in lam))
        acc[key] = acc.get(key, 0) + c
    return SeriesTable({m: as_number(c) for m, c in acc.items() if c}, T.degree, T.order)


@dataclass
class VerifyResult:
    ok: bool
    degree: int
    mismatch: Optional[Tuple[Monomial, Number, Number]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify(E: ElliottRational, R: ElliottRational, D: int) -> VerifyResult:
    """Compare Omega(E) by definition with the series of ``R`` up to degree ``D``.

    A mismatch is reported as ``(monomial, from_definition, from_candidate)``.
    """
    if not E.lambdas_present():
        raise ValueError("verify needs an input with at least one lambda")
    if R.lambdas_present():
        raise ValueError("candidate result still involves lambdas")
    lhs = omega_by_definition(expand(E, D))
    rhs = expand(R.with_order(E.order) if R.order != E.order else R, D)
    diff = lhs.first_difference(rhs)
    return VerifyResult(diff is None, D, diff)


# --- direct enumeration -------------------------------------------------


def enumerate_kgon(k: int, n_max: int) -> List[int]:
    """``counts[n]`` = number of non-degenerate k-gon partitions of ``n``."""
    if k < 3:
        raise ValueError("k-gon partitions need k >= 3")
    counts = [0] * (n_max + 1)

    def walk(prefix_sum: int, last: int, left: int):
        # choose the remaining `left` parts, each >= last
        if left == 1:
            for a in range(last, n_max - prefix_sum + 1):
                if prefix_sum > a:
                    counts[prefix_sum + a] += 1
            return
        a = last
        while prefix_sum + a * left <= n_max:
            walk(prefix_sum + a, a, left - 1)
            a += 1

    walk(0, 1, k)
    return counts


def enumerate_two_dim(K: int, L: int, D: int) -> SeriesTable:
    """Sum of ``x^m y^n`` over ``K m >= n``, ``L n >= m``, ``m + n <= D``."""
    order = VariableOrder.standard(["x", "y"], [])
    acc = {}
    for m in range(D + 1):
        for n in range(D + 1 - m):
            if K * m >= n and L * n >= m:
                acc[Monomial({"x": m, "y": n})] = 1
    return SeriesTable(acc, D, order)


@lru_cache(maxsize=None)
def _chains(length: int, top: int, budget: int) -> Tuple[Tuple[int, int], ...]:
    """Nonincreasing sequences of ``length`` values in ``[0, top]`` with sum
    <= budget, as ``((sum, count), ...)``."""
    if length == 0:
        return ((0, 1),)
    acc: Dict[int, int] = {}
    for first in range(min(top, budget) + 1):
        for s, n in _chains(length - 1, first, budget - first):
            acc[s + first] = acc.get(s + first, 0) + n
    return tuple(sorted(acc.items()))


def enumerate_hard(k: int, r: int, D: int) -> SeriesTable:
    """Series of ``sum x^i y^j q^(b0+...+bk+c1+...+cr)`` over the chains
    ``i >= b0 >= b1 >= ... >= bk >= 0`` and ``b0 >= j >= c1 >= ... >= cr >= 0``,
    truncated at total degree ``D``."""
    order = VariableOrder.standard(["x", "y", "q"], [])
    acc: Dict[Monomial, int] = {}
    for b0 in range(D + 1):
        for i in range(b0, D + 1):
            for j in range(b0 + 1):
                budget = D - i - j - b0
                if budget < 0:
                    break
                for sb, nb in _chains(k, b0, budget):
                    for sc, nc in _chains(r, j, budget - sb):
                        m = Monomial({"x": i, "y": j, "q": b0 + sb + sc})
                        acc[m] = acc.get(m, 0) + nb * nc
    return SeriesTable(acc, D, order)
