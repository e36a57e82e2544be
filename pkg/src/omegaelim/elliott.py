"""Elliott rational functions: a Laurent-polynomial numerator over a product
of binomials ``(1 - c*M)**m``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import (
    ONE,
    ONE_POLY,
    ZERO,
    LaurentPolynomial,
    Monomial,
    Number,
    VariableOrder,
    as_number,
    format_monomial,
    is_small,
    normalize_bindings,
    rdiv,
    rpow,
)


class ElliottError(ValueError):
    pass


class PoleError(ElliottError):
    """A denominator factor vanishes identically."""


@dataclass(frozen=True)
class Factor:
    """The binomial power ``(1 - coeff*mono)**mult``."""

    coeff: Number
    mono: Monomial
    mult: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_number(self.coeff))
        if not self.coeff:
            raise ValueError("factor coefficient must be nonzero")
        if self.mono.is_one():
            raise ValueError("factor monomial must not be 1")
        if self.mult < 1:
            raise ValueError("factor multiplicity must be positive")

    @property
    def key(self) -> Tuple[Number, Monomial]:
        return (self.coeff, self.mono)

    def with_mult(self, m: int) -> "Factor":
        return Factor(self.coeff, self.mono, m)

    def degree(self, var: str) -> int:
        return self.mono.degree(var)

    def polynomial(self) -> LaurentPolynomial:
        """``1 - c*M`` (multiplicity ignored)."""
        return LaurentPolynomial({ONE: 1, self.mono: -self.coeff})

    def expanded(self) -> LaurentPolynomial:
        return self.polynomial() ** self.mult

    def flipped(self) -> Tuple[LaurentPolynomial, "Factor"]:
        """Rewrite ``(1 - cM)^m = u * (1 - M^-1/c)^m``; returns ``(1/u, flipped)``.

        ``1/u`` is the term to multiply into the numerator.
        """
        inv = Factor(rdiv(1, self.coeff), self.mono.inverse(), self.mult)
        unit_inv = LaurentPolynomial.monomial(self.mono.inverse() ** self.mult, rpow(-self.coeff, -self.mult))
        return unit_inv, inv

    def oriented(self, order: VariableOrder) -> Tuple[LaurentPolynomial, "Factor"]:
        """Canonical orientation: the monomial is small under ``order``."""
        if is_small(self.mono, order):
            return ONE_POLY, self
        return self.flipped()

    def format(self, order: VariableOrder | None = None) -> str:
        c = self.coeff
        m = format_monomial(self.mono, order)
        if c == 1:
            body = f"1 - {m}"
        elif c == -1:
            body = f"1 + {m}"
        elif c > 0:
            body = f"1 - {c}*{m}"
        else:
            body = f"1 + {-c}*{m}"
        return f"({body})" if self.mult == 1 else f"({body})^{self.mult}"

    def __str__(self) -> str:
        return self.format()


def merge_factors(factors: Iterable[Factor]) -> Tuple[Factor, ...]:
    acc: Dict[Tuple[Number, Monomial], int] = {}
    for f in factors:
        acc[f.key] = acc.get(f.key, 0) + f.mult
    return tuple(Factor(c, m, n) for (c, m), n in acc.items())


class ElliottRational:
    """``numerator / prod(factors)`` with value semantics.

    Constant binomials ``1 - c`` (monomial 1) are folded into the numerator;
    ``1 - 1`` raises :class:`PoleError`.
    """

    __slots__ = ("numerator", "factors", "order")

    def __init__(
        self,
        numerator,
        factors: Iterable[Factor] = (),
        order: VariableOrder | None = None,
    ):
        if order is None:
            raise TypeError("an ElliottRational needs a VariableOrder")
        num = numerator if isinstance(numerator, LaurentPolynomial) else LaurentPolynomial.constant(numerator)
        kept = []
        for f in factors:
            if f.mono.is_one():
                raise ValueError("constant binomials belong in ElliottRational.build")
            kept.append(f)
        self.numerator = num
        self.factors = merge_factors(kept) if num else ()
        self.order = order

    @classmethod
    def build(cls, numerator, factors: Iterable[Tuple[Number, Monomial, int]] | Iterable[Factor], order: VariableOrder):
        """Like the constructor but tolerates constant binomials ``1 - c``."""
        num = numerator if isinstance(numerator, LaurentPolynomial) else LaurentPolynomial.constant(numerator)
        out = []
        for f in factors:
            if not isinstance(f, Factor):
                c, m, k = f
                if m.is_one():
                    num = num.scale(rdiv(1, scalar_binomial(c) ** k))
                    continue
                f = Factor(c, m, k)
            out.append(f)
        return cls(num, out, order)

    @classmethod
    def zero(cls, order: VariableOrder) -> "ElliottRational":
        return cls(ZERO, (), order)

    @classmethod
    def polynomial(cls, p, order: VariableOrder) -> "ElliottRational":
        return cls(p, (), order)

    # --- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def variables(self) -> set:
        out = set(self.numerator.variables())
        for f in self.factors:
            out.update(f.mono.variables())
        return out

    def lambdas_present(self) -> List[str]:
        vs = self.variables()
        return [v for v in self.order.lambda_vars if v in vs]

    def involves(self, var: str) -> bool:
        return self.numerator.involves(var) or any(f.degree(var) for f in self.factors)

    def denominator_poly(self) -> LaurentPolynomial:
        out = ONE_POLY
        for f in self.factors:
            out = out * f.expanded()
        return out

    def with_order(self, order: VariableOrder) -> "ElliottRational":
        return ElliottRational(self.numerator, self.factors, order)

    # --- arithmetic -----------------------------------------------------
    def __mul__(self, other) -> "ElliottRational":
        if isinstance(other, ElliottRational):
            return ElliottRational(self.numerator * other.numerator, self.factors + other.factors, self.order)
        if isinstance(other, (int, Fraction, LaurentPolynomial, Monomial)):
            return ElliottRational(self.numerator * other, self.factors, self.order)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> "ElliottRational":
        return ElliottRational(-self.numerator, self.factors, self.order)

    def __add__(self, other) -> "ElliottRational":
        if not isinstance(other, ElliottRational):
            other = ElliottRational.polynomial(other, self.order)
        return combine([self, other], self.order)

    __radd__ = __add__

    def __sub__(self, other) -> "ElliottRational":
        if not isinstance(other, ElliottRational):
            other = ElliottRational.polynomial(other, self.order)
        return combine([self, -other], self.order)

    def divide_by_factor(self, f: Factor) -> "ElliottRational":
        return ElliottRational(self.numerator, self.factors + (f,), self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElliottRational):
            return NotImplemented
        return rational_equal(self, other)

    __hash__ = None

    # --- printing -------------------------------------------------------
    def sorted_factors(self) -> List[Factor]:
        return sorted(
            self.factors,
            key=lambda f: (
                abs(sum(self.order.key(f.mono))),
                tuple(-e for e in self.order.key(f.mono)),
                Fraction(f.coeff),
                f.mult,
            ),
        )

    def format(self) -> str:
        num = self.numerator.format(self.order)
        if not self.factors:
            return num
        den = "*".join(f.format(self.order) for f in self.sorted_factors())
        return f"({num})/({den})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"ElliottRational({self.format()!r})"


def scalar_binomial(c: Number) -> Number:
    """Value of the constant binomial ``1 - c``."""
    v = as_number(1 - as_number(c))
    if not v:
        raise PoleError("pole under substitution: factor 1 - 1")
    return v


def canonical(E: ElliottRational) -> ElliottRational:
    """Orient every factor so its monomial is small; units go upstairs."""
    num = E.numerator
    out = []
    for f in E.factors:
        unit, g = f.oriented(E.order)
        num = num * unit if unit is not ONE_POLY else num
        out.append(g)
    return ElliottRational(num, out, E.order)


def cancel(E: ElliottRational) -> ElliottRational:
    """Divide out every denominator binomial that divides the numerator."""
    if E.is_zero():
        return ElliottRational.zero(E.order)
    num = E.numerator
    out = []
    for f in E.factors:
        m = f.mult
        while m:
            q = num.divide_binomial(f.coeff, f.mono)
            if q is None:
                break
            num = q
            m -= 1
        if m:
            out.append(f.with_mult(m))
    return ElliottRational(num, out, E.order)


def combine(terms: Sequence[ElliottRational], order: VariableOrder, reduce: bool = True) -> ElliottRational:
    """Sum of Elliott rationals over their least common binomial denominator."""
    terms = [canonical(t) for t in terms if not t.is_zero()]
    if not terms:
        return ElliottRational.zero(order)
    if len(terms) == 1:
        out = ElliottRational(terms[0].numerator, terms[0].factors, order)
        return cancel(out) if reduce else out
    lcd: Dict[Tuple[Number, Monomial], int] = {}
    for t in terms:
        for f in t.factors:
            if lcd.get(f.key, 0) < f.mult:
                lcd[f.key] = f.mult
    num = ZERO
    for t in terms:
        have = {f.key: f.mult for f in t.factors}
        part = t.numerator
        for key, m in sorted(lcd.items(), key=lambda kv: order.key(kv[0][1])):
            extra = m - have.get(key, 0)
            if extra:
                part = part * (Factor(key[0], key[1]).polynomial() ** extra)
        num = num + part
    out = ElliottRational(num, [Factor(c, mo, m) for (c, mo), m in lcd.items()], order)
    return cancel(out) if reduce else out


def rational_equal(A: ElliottRational, B: ElliottRational) -> bool:
    """Exact equality by cross multiplication (common factors removed first)."""
    order = A.order
    a, b = canonical(A), canonical(B.with_order(order) if B.order != order else B)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    fa = {f.key: f.mult for f in a.factors}
    fb = {f.key: f.mult for f in b.factors}
    lhs = a.numerator
    rhs = b.numerator
    for key in set(fa) | set(fb):
        d = fb.get(key, 0) - fa.get(key, 0)
        if d > 0:
            lhs = lhs * Factor(key[0], key[1]).polynomial() ** d
        elif d < 0:
            rhs = rhs * Factor(key[0], key[1]).polynomial() ** (-d)
    return lhs == rhs


# --- normalization & classification -----------------------------------


def normalize_in(E: ElliottRational, lam: str) -> ElliottRational:
    """Flip every factor with a negative ``lam`` exponent so all are >= 0."""
    if lam not in E.order.lambdas:
        raise ValueError(f"{lam} is not an eliminable variable")
    num = E.numerator
    out = []
    for f in E.factors:
        if f.degree(lam) < 0:
            unit, g = f.flipped()
            num = num * unit
            out.append(g)
        else:
            out.append(f)
    return ElliottRational(num, out, E.order)


def contributes(f: Factor, lam: str, order: VariableOrder) -> bool:
    """Whether ``f`` is contributing (not dually contributing) in ``lam``.

    After ``f`` is oriented with a positive ``lam`` exponent, it contributes
    exactly when its monomial is small.
    """
    a = f.degree(lam)
    if a == 0:
        raise ValueError(f"factor {f} does not involve {lam}")
    small = is_small(f.mono, order)
    return small if a > 0 else not small


@dataclass
class ClassificationRow:
    lam: str
    contributing: List[Factor] = field(default_factory=list)
    dually_contributing: List[Factor] = field(default_factory=list)
    numerator_degrees: Tuple[int, int] = (0, 0)

    @property
    def c_num(self) -> int:
        return len(self.contributing)

    @property
    def dc_num(self) -> int:
        return len(self.dually_contributing)


def classify(E: ElliottRational) -> List[ClassificationRow]:
    rows = []
    for lam in E.lambdas_present():
        row = ClassificationRow(lam)
        for f in E.factors:
            if f.degree(lam):
                (row.contributing if contributes(f, lam, E.order) else row.dually_contributing).append(f)
        row.numerator_degrees = normalize_in(E, lam).numerator.degree_range(lam)
        rows.append(row)
    return rows


# --- substitution -----------------------------------------------------


def substitute(E: ElliottRational, bindings: Mapping, order: VariableOrder | None = None) -> ElliottRational:
    """Apply ``var -> c*M`` bindings to numerator and every factor."""
    b = normalize_bindings(bindings)
    order = order or E.order
    num = E.numerator.substitute(b)
    out = []
    for f in E.factors:
        img = LaurentPolynomial.monomial(f.mono, f.coeff).substitute(b)
        if img.is_zero():
            raise PoleError("binding made a factor monomial vanish")
        (m, c), = img.terms()
        if m.is_one():
            v = as_number(1 - c)
            if not v:
                raise PoleError(f"pole under substitution: {f.format(E.order)} becomes 1 - 1")
            num = num.scale(rdiv(1, v ** f.mult))
        else:
            out.append(Factor(c, m, f.mult))
    return ElliottRational(num, out, order)


def evaluate_at_one(E: ElliottRational, var: str) -> ElliottRational:
    return substitute(E, {var: (1, ONE)})


def factor_product(factors: Iterable[Factor]) -> LaurentPolynomial:
    out = ONE_POLY
    for f in factors:
        out = out * f.expanded()
    return out
