"""Reader for rational expressions in Elliott form.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := base ('^' exponent)?
    base   := integer | identifier | '(' expr ')'

``exponent`` is a signed integer, optionally parenthesized; ``**`` is
accepted as a synonym for ``^``.  Identifiers are letters followed by
optional digits.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import ONE_POLY, LaurentPolynomial, VariableOrder, is_small, rdiv, rpow
from .elliott import ElliottRational, Factor


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at position {pos}")


class NotElliottError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("ident", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Frac:
    """A product of polynomial powers, kept factored until a sum forces
    expansion.  Exponents may be negative."""

    __slots__ = ("parts",)

    def __init__(self, parts: Dict[LaurentPolynomial, int]):
        self.parts = {p: e for p, e in parts.items() if e}

    @classmethod
    def of(cls, p: LaurentPolynomial) -> "_Frac":
        return cls({p: 1})

    def split(self):
        num = ONE_POLY
        den = {}
        for p, e in self.parts.items():
            if e > 0:
                num = num * p**e
            else:
                den[p] = -e
        return num, den

    def __add__(self, other: "_Frac") -> "_Frac":
        na, da = self.split()
        nb, db = other.split()
        lcd = dict(da)
        for p, m in db.items():
            lcd[p] = max(lcd.get(p, 0), m)
        for p, m in lcd.items():
            if m > da.get(p, 0):
                na = na * p ** (m - da.get(p, 0))
            if m > db.get(p, 0):
                nb = nb * p ** (m - db.get(p, 0))
        parts = {p: -m for p, m in lcd.items()}
        parts[na + nb] = parts.get(na + nb, 0) + 1
        return _Frac(parts)

    def __neg__(self) -> "_Frac":
        parts = dict(self.parts)
        minus = LaurentPolynomial.constant(-1)
        parts[minus] = parts.get(minus, 0) + 1
        if parts[minus] == 2:
            del parts[minus]
        return _Frac(parts)

    def __mul__(self, other: "_Frac") -> "_Frac":
        parts = dict(self.parts)
        for p, e in other.parts.items():
            parts[p] = parts.get(p, 0) + e
        return _Frac(parts)

    def is_zero(self) -> bool:
        return any(p.is_zero() for p in self.parts)

    def power(self, n: int, pos: int) -> "_Frac":
        if n < 0 and self.is_zero():
            raise ParseError("division by zero", pos)
        return _Frac({p: e * n for p, e in self.parts.items()})

    def inverse(self, pos: int) -> "_Frac":
        return self.power(-1, pos)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.names: List[str] = []

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value and t[1] != value):
            want = value or kind
            got = t[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t[2])
        self.i += 1
        return t

    def parse(self) -> _Frac:
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return v

    def expr(self) -> _Frac:
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            w = self.term()
            v = v + (w if op == "+" else -w)
        return v

    def term(self) -> _Frac:
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            w = self.unary()
            v = v * w if op == "*" else v * w.inverse(pos)
        return v

    def unary(self) -> _Frac:
        t = self.peek()
        if t[0] == "op" and t[1] in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self) -> _Frac:
        v = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            n = self.exponent()
            v = v.power(n, t[2])
        return v

    def exponent(self) -> int:
        t = self.peek()
        if t[0] == "op" and t[1] == "(":
            self.take()
            n = self.exponent()
            self.take("op", ")")
            return n
        sign = 1
        while self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
            if self.take()[1] == "-":
                sign = -sign
        return sign * int(self.take("int")[1])

    def base(self) -> _Frac:
        t = self.peek()
        if t[0] == "int":
            self.take()
            return _Frac.of(LaurentPolynomial.constant(int(t[1])))
        if t[0] == "ident":
            self.take()
            if t[1] not in self.names:
                self.names.append(t[1])
            return _Frac.of(LaurentPolynomial.var(t[1]))
        if t[0] == "op" and t[1] == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2])


def _natural_key(name: str):
    m = re.match(r"([A-Za-z]+)(\d*)$", name)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def make_order(
    names: Iterable[str],
    order: Optional[Sequence[str]] = None,
    lambdas: Optional[Sequence[str]] = None,
) -> VariableOrder:
    """Build the working order: parameters first, then lambdas.

    Without an explicit ``lambdas`` list every name starting with ``l`` is
    eliminable.  The relative order inside each group follows ``order`` when
    given, else natural sort (``x2`` before ``x10``).
    """
    names = list(names)
    if order is not None:
        order = list(order)
        unknown = [n for n in names if n not in order]
        if unknown:
            raise ParseError(f"unknown variable {unknown[0]!r} (not in --order)")
        pool = order
    else:
        pool = names
    if lambdas is None:
        lam = [n for n in pool if n.startswith("l")]
    else:
        lam = list(lambdas)
        for v in lam:
            if order is not None and v not in order:
                raise ParseError(f"lambda variable {v!r} is not in --order")
    params = [n for n in pool if n not in lam]
    if order is None:
        params = sorted(params, key=_natural_key)
        lam = sorted(lam, key=_natural_key)
    else:
        lam = [v for v in order if v in lam]
    return VariableOrder.standard(params, lam)


def to_elliott(value: _Frac, order: VariableOrder) -> ElliottRational:
    if value.is_zero():
        return ElliottRational.zero(order)
    num = ONE_POLY
    factors = []
    for p, e in value.parts.items():
        if e > 0 or len(p) == 1:
            num = num * (p**e if e > 0 else _monomial_power(p, e))
            continue
        if len(p) != 2:
            raise NotElliottError(f"denominator not in Elliott form: {p.format(order)}")
        mult = -e
        (m1, c1), (m2, c2) = p.terms()
        if m2.is_one() or (not m1.is_one() and not is_small(m2 / m1, order)):
            (m1, c1), (m2, c2) = (m2, c2), (m1, c1)
        # p = c1*m1*(1 - d*v)
        d, v = rdiv(-c2, c1), m2 / m1
        num = num * LaurentPolynomial.monomial(m1.inverse() ** mult, rpow(c1, -mult))
        factors.append(Factor(d, v, mult))
    return ElliottRational(num, factors, order)


def _monomial_power(p: LaurentPolynomial, e: int) -> LaurentPolynomial:
    (m, c), = p.terms()
    return LaurentPolynomial.monomial(m**e, rpow(c, e))


def parse(
    text: str,
    order: Optional[Sequence[str] | VariableOrder] = None,
    lambdas: Optional[Sequence[str]] = None,
) -> ElliottRational:
    """Parse ``text`` into an :class:`ElliottRational`.

    ``order`` may be a ready :class:`VariableOrder` (used as is) or a list of
    names passed to :func:`make_order`.
    """
    p = _Parser(text)
    value = p.parse()
    if isinstance(order, VariableOrder):
        unknown = [n for n in p.names if n not in order]
        if unknown:
            raise ParseError(f"unknown variable {unknown[0]!r} (not in --order)")
        vo = order
    else:
        vo = make_order(p.names, order, lambdas)
    return to_elliott(value, vo)
