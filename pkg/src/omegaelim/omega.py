"""Omega elimination by partial fractions in one lambda at a time.

For ``E = L(l) / prod (1 - c_i u_i l^a_i)^m_i`` with every ``a_i > 0``, the
residue ``A_i`` of a factor is computed in the quotient ring
``Q[...][l] / <1 - c_i u_i l^a_i>``: there ``l^a_i`` is the unit
``1/(c_i u_i)``, so every element has a unique representative of
``l``-degree below ``a_i``.  Small factors contribute ``A_i(1)/(1 - c_i u_i)``
to the Omega image; large ones contribute nothing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    ONE,
    ONE_POLY,
    ZERO,
    LaurentPolynomial,
    Monomial,
    Number,
    as_number,
    rdiv,
    rpow,
)
from .elliott import (
    ElliottError,
    ElliottRational,
    Factor,
    classify,
    combine,
    contributes,
    factor_product,
    normalize_in,
    substitute,
)

log = logging.getLogger(__name__)


class HiddenRootError(ElliottError):
    """Two denominator factors share a root, so one is a zero divisor modulo
    the other."""


class DivergenceError(ElliottError):
    """A contributing factor degenerates to ``1 - 1`` after ``l = 1``."""


MODES = ("direct", "dual", "auto")


# --- quotient ring ----------------------------------------------------


def _split_factor(f: Factor, lam: str) -> Tuple[int, Number, Monomial]:
    a, u = f.mono.split(lam)
    if a <= 0:
        raise ValueError(f"factor {f} must have a positive exponent in {lam}")
    return a, f.coeff, u


def reduce_mod(p: LaurentPolynomial, f: Factor, lam: str) -> LaurentPolynomial:
    """Representative of ``p`` modulo ``1 - c*u*lam^a`` with lam-degree in ``[0, a)``."""
    a, c, u = _split_factor(f, lam)
    d: Dict[Monomial, Number] = {}
    for m, coef in p.terms():
        n, rest = m.split(lam)
        q, r = divmod(n, a)
        if q:
            coef = coef * rpow(c, -q)
            rest = rest * u ** (-q)
        nm = rest * Monomial.var(lam, r) if r else rest
        v = d.get(nm, 0) + coef
        if v:
            d[nm] = as_number(v)
        else:
            del d[nm]
    return LaurentPolynomial(d)


def _binomial_parts(g) -> Tuple[Number, Monomial, Number, Monomial]:
    """Write ``g`` as ``k*K*(1 - d*v)``; returns ``(k, K, d, v)`` (``v`` may be 1)."""
    if isinstance(g, Factor):
        return 1, ONE, g.coeff, g.mono
    terms = sorted(g.terms(), key=lambda t: (not t[0].is_one(), t[0].items()))
    if len(terms) == 1:
        (m, c), = terms
        return c, m, 0, ONE
    if len(terms) != 2:
        raise ValueError(f"{g} is not a binomial")
    (m1, c1), (m2, c2) = terms
    return c1, m1, rdiv(-c2, c1), m2 / m1


def invert_mod(g, f: Factor, lam: str) -> Tuple[LaurentPolynomial, Optional[Factor]]:
    """Inverse of the binomial ``g`` modulo ``f``.

    Returns ``(h, e)`` meaning ``g^-1 == h / (1 - e)`` in the quotient ring,
    with ``e`` a lam-free :class:`Factor` or ``None``.
    """
    a, c, u = _split_factor(f, lam)
    k, K, d, v = _binomial_parts(g)
    unit = LaurentPolynomial.monomial(K.inverse(), rdiv(1, k))
    if not d:
        return reduce_mod(unit, f, lam), None
    t = reduce_mod(LaurentPolynomial.monomial(v, d), f, lam)
    (tm, tc), = t.terms()
    b, tv = tm.split(lam)
    if b == 0:
        if tv.is_one():
            val = as_number(1 - tc)
            if not val:
                raise HiddenRootError(f"hidden common root between denominator factors {g} and {f}")
            return unit.scale(rdiv(1, val)), None
        return unit, Factor(tc, tv)
    n = a // gcd(a, b)
    tn = reduce_mod(LaurentPolynomial.monomial(tm ** n, rpow(tc, n)), f, lam)
    (em, ec), = tn.terms()
    assert em.degree(lam) == 0
    geo = ZERO
    power = ONE_POLY
    for _ in range(n):
        geo = geo + power
        power = reduce_mod(power * t, f, lam)
    h = reduce_mod(geo * unit, f, lam)
    if em.is_one():
        val = as_number(1 - ec)
        if not val:
            raise HiddenRootError(f"hidden common root between denominator factors {g} and {f}")
        return h.scale(rdiv(1, val)), None
    return h, Factor(ec, em)


# --- partial fractions ------------------------------------------------


@dataclass
class Residue:
    factor: Factor  # base factor, multiplicity = full multiplicity in E
    level: int
    value: ElliottRational  # lam-degree in [0, a); lam-free denominator

    def term(self) -> ElliottRational:
        """``A / factor**level`` as an Elliott rational."""
        return ElliottRational(self.value.numerator, self.value.factors + (self.factor.with_mult(self.level),), self.value.order)


@dataclass
class PartialFractionResult:
    lam: str
    poly_part: ElliottRational
    pole_part: ElliottRational
    s: int
    residues: List[Residue]

    def reassemble(self) -> ElliottRational:
        parts = [self.poly_part, self.pole_part] + [r.term() for r in self.residues]
        return combine(parts, self.poly_part.order)


def _split_lambda(E: ElliottRational, lam: str):
    with_lam, free = [], []
    for f in E.factors:
        (with_lam if f.degree(lam) else free).append(f)
    return with_lam, free


def _top_residue(num: LaurentPolynomial, f: Factor, others: Sequence[Factor], lam: str):
    """Residue numerator at the top level of ``f`` plus new lam-free factors."""
    base = f.with_mult(1)
    acc = reduce_mod(num, base, lam)
    extra: List[Factor] = []
    for g in others:
        h, e = invert_mod(g.with_mult(1), base, lam)
        for _ in range(g.mult):
            acc = reduce_mod(acc * h, base, lam)
        if e is not None:
            extra.append(e.with_mult(g.mult))
    return acc, extra


def factor_residues(E: ElliottRational, f: Factor, lam: str) -> List[Residue]:
    """All levels ``A_{f,j}`` of ``f`` in ``E`` (which must be normalized in lam).

    The top level is computed in the quotient ring; it is then subtracted and
    the exact quotient by ``f`` gives the next lower level.
    """
    with_lam, free = _split_lambda(E, lam)
    others = [g for g in with_lam if g.key != f.key]
    mine = [g for g in with_lam if g.key == f.key]
    if not mine:
        raise ValueError(f"{f} is not a factor of the input")
    m = mine[0].mult
    base = f.with_mult(1)
    num = E.numerator
    denoms = list(free)
    G = None
    out = []
    for level in range(m, 0, -1):
        A, extra = _top_residue(num, base.with_mult(level), others, lam)
        out.append(Residue(base.with_mult(m), level, ElliottRational(A, denoms + extra, E.order)))
        if level == 1:
            break
        if G is None:
            G = factor_product(others)
        Q = factor_product(extra)
        diff = num * Q - A * G
        q = diff.divide_binomial(base.coeff, base.mono)
        if q is None:
            raise ArithmeticError(f"peeling residue of {base} left a non-divisible remainder")
        num = q
        denoms = denoms + extra
    return out


def _poly_part(E: ElliottRational, lam: str) -> Tuple[LaurentPolynomial, int]:
    """Polynomial part ``P`` (times the lam-free denominator) and ``s``."""
    with_lam, _ = _split_lambda(E, lam)
    lo, hi = E.numerator.degree_range(lam)
    s = max(0, -lo)
    deg_d = sum(f.degree(lam) * f.mult for f in with_lam)
    if E.numerator.is_zero() or hi < deg_d:
        return ZERO, s
    D = factor_product(with_lam).collect(lam)
    lead = D[deg_d]
    (lm, lc), = lead.terms()
    lead_inv = LaurentPolynomial.monomial(lm.inverse(), rdiv(1, lc))
    rem = {e + s: c for e, c in E.numerator.collect(lam).items()}
    top = hi + s
    P = ZERO
    for k in range(top - deg_d, s - 1, -1):
        c = rem.get(k + deg_d)
        if c is None or c.is_zero():
            continue
        qk = c * lead_inv
        P = P + qk.shift(Monomial.var(lam, k - s))
        for e, dc in D.items():
            key = k + e
            nv = rem.get(key, ZERO) - qk * dc
            rem[key] = nv
    return P, s


def _poly_part_shift(E: ElliottRational, lam: str) -> int:
    return max(0, -E.numerator.degree_range(lam)[0])


def _pole_part(E: ElliottRational, lam: str, s: int) -> LaurentPolynomial:
    if s == 0:
        return ZERO
    with_lam, _ = _split_lambda(E, lam)
    series = ONE_POLY
    for f in with_lam:
        a, c, u = _split_factor(f, lam)
        # (1 - w l^a)^-m = sum binom(k+m-1, m-1) w^k l^(ak)
        part = ZERO
        k = 0
        coef = 1
        while a * k < s:
            part = part + LaurentPolynomial.monomial((u * Monomial.var(lam, a)) ** k, coef * rpow(c, k))
            k += 1
            coef = coef * (k + f.mult - 1) // k
        series = _truncate(series * part, lam, s - 1)
    prod = E.numerator * series
    return LaurentPolynomial((m, c) for m, c in prod.terms() if m.degree(lam) < 0)


def _truncate(p: LaurentPolynomial, lam: str, top: int) -> LaurentPolynomial:
    return LaurentPolynomial((m, c) for m, c in p.terms() if m.degree(lam) <= top)


def partial_fractions(E: ElliottRational, lam: str) -> PartialFractionResult:
    """Decompose ``E`` (normalized in ``lam``) as ``P + p/lam^s + sum A/f^j``."""
    E = normalize_in(E, lam)
    with_lam, free = _split_lambda(E, lam)
    P, s = _poly_part(E, lam)
    p = _pole_part(E, lam, s)
    residues = []
    for f in with_lam:
        residues.extend(factor_residues(E, f, lam))
    return PartialFractionResult(
        lam,
        ElliottRational(P, free, E.order),
        ElliottRational(p, free, E.order),
        s,
        residues,
    )


# --- Omega ---------------------------------------------------------


def _contribution(res: Residue, lam: str) -> ElliottRational:
    """``A(1) / (1 - c*u)^j`` for one residue level."""
    A = res.value
    a_num = A.numerator.at_one(lam)
    order = A.order
    if a_num.is_zero():
        return ElliottRational.zero(order)
    _, c, u = _split_factor(res.factor, lam)
    if u.is_one():
        val = as_number(1 - c)
        if not val:
            raise DivergenceError(f"divergent: Omega sum is infinite for factor {res.factor.format(order)}")
        return ElliottRational(a_num.scale(rdiv(1, val ** res.level)), A.factors, order)
    return ElliottRational(a_num, A.factors + (Factor(c, u, res.level),), order)


def contribution(E: ElliottRational, lam: str, factor: Factor) -> ElliottRational:
    """The image of ``E`` under Omega restricted to one underlined factor.

    ``factor`` is given as it appears in ``E`` (before normalization).
    """
    N = normalize_in(E, lam)
    target = factor
    if factor.degree(lam) < 0:
        target = factor.flipped()[1]
    terms = [_contribution(r, lam) for r in factor_residues(N, target, lam)]
    return combine(terms, E.order)


def dual_applicable(E: ElliottRational, lam: str) -> bool:
    """``E(1)`` exists (``E`` normalized in ``lam``).

    A pole at ``lam = 0`` does not block the dual formula: its part
    ``p/lam^s`` is subtracted explicitly at ``lam = 1``.
    """
    for f in E.factors:
        a, u = f.mono.split(lam)
        if a and u.is_one() and f.coeff == 1:
            return False
    return True


@dataclass
class TraceStep:
    lam: str
    mode: str
    underlined: List[Factor]
    result: ElliottRational
    c_num: int = 0
    dc_num: int = 0


@dataclass
class TraceLog:
    steps: List[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def _eliminate(E: ElliottRational, lam: str, mode: str) -> TraceStep:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    order = E.order
    if not E.involves(lam):
        return TraceStep(lam, "none", [], E)
    original = [f for f in E.factors if f.degree(lam)]
    N = normalize_in(E, lam)
    flipped_from = {}
    for f in original:
        g = f.flipped()[1] if f.degree(lam) < 0 else f
        flipped_from[g.key] = f
    small, large = [], []
    for f in N.factors:
        if f.degree(lam):
            (small if contributes(f, lam, order) else large).append(f)
    use = mode
    if mode == "auto":
        # fewer factors wins; on a tie, the smaller total lam-degree
        cost = lambda fs: (len(fs), sum(f.degree(lam) * f.mult for f in fs))
        use = "dual" if cost(large) < cost(small) else "direct"
    if use == "dual" and not dual_applicable(N, lam):
        log.debug("dual formula not applicable in %s, using direct", lam)
        use = "direct"
    terms = []
    if use == "direct":
        P, _ = _poly_part(N, lam)
        if P:
            free = [f for f in N.factors if not f.degree(lam)]
            terms.append(ElliottRational(P.at_one(lam), free, order))
        chosen = small
        sign = 1
    else:
        terms.append(substitute(N, {lam: (1, ONE)}))
        p = _pole_part(N, lam, _poly_part_shift(N, lam))
        if p:
            free = [f for f in N.factors if not f.degree(lam)]
            terms.append(-ElliottRational(p.at_one(lam), free, order))
        chosen = large
        sign = -1
    for f in chosen:
        for r in factor_residues(N, f, lam):
            t = _contribution(r, lam)
            terms.append(t if sign > 0 else -t)
    result = combine(terms, order)
    underlined = [flipped_from.get(f.key, f) for f in chosen]
    return TraceStep(lam, use, underlined, result, len(small), len(large))


def omega_eliminate_one(E: ElliottRational, lam: str, mode: str = "auto") -> ElliottRational:
    """Apply Omega in the single variable ``lam``."""
    return _eliminate(E, lam, mode).result


@dataclass
class EliminationStrategy:
    mode: str = "auto"
    lambda_order: Optional[List[str]] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


def choose_lambda(E: ElliottRational) -> str:
    """The lambda with fewest contributing or dually contributing factors."""
    rows = classify(E)
    idx = E.order.index
    best = min(rows, key=lambda r: (min(r.c_num, r.dc_num), idx(r.lam)))
    return best.lam


def omega_eliminate_all(E: ElliottRational, strategy: EliminationStrategy | None = None) -> Tuple[ElliottRational, TraceLog]:
    strategy = strategy or EliminationStrategy()
    trace = TraceLog()
    present = E.lambdas_present()
    if strategy.lambda_order is not None:
        explicit = list(strategy.lambda_order)
        if set(explicit) != set(present) or len(explicit) != len(set(explicit)):
            raise ValueError(f"elimination order {explicit} must list exactly the lambdas present: {present}")
        for lam in explicit:
            if not E.involves(lam):
                continue
            step = _eliminate(E, lam, strategy.mode)
            trace.steps.append(step)
            E = step.result
        return E, trace
    while True:
        present = E.lambdas_present()
        if not present:
            return E, trace
        lam = choose_lambda(E)
        step = _eliminate(E, lam, strategy.mode)
        log.debug("eliminated %s (%s): %d terms in numerator", lam, step.mode, len(step.result.numerator))
        trace.steps.append(step)
        E = step.result


def replay(E: ElliottRational, trace: TraceLog) -> ElliottRational:
    """Re-run the recorded steps from ``E``."""
    for step in trace:
        if step.mode == "none":
            continue
        E = _eliminate(E, step.lam, step.mode).result
    return E


def omega(E: ElliottRational, mode: str = "auto", lambda_order=None) -> ElliottRational:
    """Eliminate every lambda; convenience wrapper returning only the value."""
    return omega_eliminate_all(E, EliminationStrategy(mode, lambda_order))[0]
