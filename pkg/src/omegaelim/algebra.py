"""Exact Laurent polynomial arithmetic over the rationals.

Monomials are sparse exponent maps keyed by variable name.  The total order
used to decide whether a monomial is *small* is carried by a separate
:class:`VariableOrder` value, so the same expression can be examined under
different orders.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Number = Union[int, Fraction]


def as_number(c) -> Number:
    """Coerce to an exact rational, keeping integers as ``int``."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_number(Fraction(c))
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not supported")
    raise TypeError(f"cannot use {c!r} as an exact coefficient")


def rdiv(a: Number, b: Number) -> Number:
    if b == 0:
        raise ZeroDivisionError("division by zero coefficient")
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return as_number(Fraction(a) / b)


def rpow(c: Number, n: int) -> Number:
    if n >= 0:
        return c**n
    return rdiv(1, c ** (-n))


class VariableOrder:
    """Ordered variable list; earlier variables are more significant.

    ``lambdas`` flags the variables the Omega operator may eliminate.  The
    elimination engine expects parameters to come before the lambdas (see
    :meth:`standard`): a monomial such as ``z/l`` must be small so that
    ``1/(1 - z/l)`` expands in powers of ``z``.
    """

    __slots__ = ("vars", "lambdas", "_index")

    def __init__(self, vars: Iterable[str], lambdas: Iterable[str] = ()):
        vs = tuple(vars)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names in order {vs}")
        lam = frozenset(lambdas)
        missing = lam.difference(vs)
        if missing:
            raise ValueError(f"lambda variables {sorted(missing)} are not in the order")
        self.vars = vs
        self.lambdas = lam
        self._index = {v: i for i, v in enumerate(vs)}

    @classmethod
    def standard(cls, params: Iterable[str], lambdas: Iterable[str]) -> "VariableOrder":
        params = list(params)
        lambdas = list(lambdas)
        return cls(params + lambdas, lambdas)

    @property
    def params(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vars if v not in self.lambdas)

    @property
    def lambda_vars(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vars if v in self.lambdas)

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"variable {var!r} is not in the order {self.vars}") from None

    def __contains__(self, var) -> bool:
        return var in self._index

    def is_lambda(self, var: str) -> bool:
        return var in self.lambdas

    def extended(self, new_params: Iterable[str]) -> "VariableOrder":
        """Append unseen parameter names just before the lambdas."""
        add = [v for v in new_params if v not in self._index]
        if not add:
            return self
        return VariableOrder(list(self.params) + add + list(self.lambda_vars), self.lambdas)

    def key(self, mono: "Monomial") -> Tuple[int, ...]:
        vec = [0] * len(self.vars)
        for v, e in mono.items():
            vec[self.index(v)] = e
        return tuple(vec)

    def x_degree(self, mono: "Monomial") -> int:
        """Total degree in the parameter (non-lambda) variables."""
        return sum(e for v, e in mono.items() if v not in self.lambdas)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VariableOrder)
            and self.vars == other.vars
            and self.lambdas == other.lambdas
        )

    def __hash__(self) -> int:
        return hash((self.vars, self.lambdas))

    def __repr__(self) -> str:
        return f"VariableOrder({list(self.vars)}, lambdas={sorted(self.lambdas)})"


class Monomial:
    """Laurent monomial: immutable sparse map ``name -> nonzero int``."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Union[Mapping[str, int], Iterable[Tuple[str, int]], None] = None):
        d: Dict[str, int] = {}
        if exponents is not None:
            pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
            for v, e in pairs:
                if not isinstance(e, int):
                    raise TypeError(f"exponent of {v} must be an integer, got {e!r}")
                d[v] = d.get(v, 0) + e
        self._items = tuple(sorted((v, e) for v, e in d.items() if e))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: Tuple[Tuple[str, int], ...]) -> "Monomial":
        m = object.__new__(cls)
        m._items = items
        m._hash = hash(items)
        return m

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Monomial":
        return cls._raw(((name, exp),) if exp else ())

    def items(self) -> Tuple[Tuple[str, int], ...]:
        return self._items

    def as_dict(self) -> Dict[str, int]:
        return dict(self._items)

    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self._items)

    def degree(self, var: str) -> int:
        for v, e in self._items:
            if v == var:
                return e
        return 0

    def is_one(self) -> bool:
        return not self._items

    def without(self, var: str) -> "Monomial":
        return Monomial._raw(tuple(p for p in self._items if p[0] != var))

    def split(self, var: str) -> Tuple[int, "Monomial"]:
        """Return ``(deg_var, rest)`` with ``self == var**deg_var * rest``."""
        e = 0
        rest = []
        for p in self._items:
            if p[0] == var:
                e = p[1]
            else:
                rest.append(p)
        return e, Monomial._raw(tuple(rest))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        d = dict(self._items)
        for v, e in other._items:
            n = d.get(v, 0) + e
            if n:
                d[v] = n
            else:
                del d[v]
        return Monomial._raw(tuple(sorted(d.items())))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return ONE
        return Monomial._raw(tuple((v, e * n) for v, e in self._items))

    def inverse(self) -> "Monomial":
        return Monomial._raw(tuple((v, -e) for v, e in self._items))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({dict(self._items)!r})"

    def __str__(self) -> str:
        return format_monomial(self)


ONE = Monomial()


def format_monomial(m: Monomial, order: VariableOrder | None = None) -> str:
    if m.is_one():
        return "1"
    items = m.items()
    if order is not None:
        items = sorted(items, key=lambda p: order.index(p[0]) if p[0] in order else len(order.vars))
    parts = []
    for v, e in items:
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def is_small(mono: Monomial, order: VariableOrder) -> bool:
    """True iff the most significant variable occurring in ``mono`` has a
    positive exponent."""
    if mono.is_one():
        raise ValueError("unit monomial is neither small nor large")
    best = None
    for v, e in mono.items():
        i = order.index(v)
        if best is None or i < best[0]:
            best = (i, e)
    return best[1] > 0


class LaurentPolynomial:
    """Finite sum of rational multiples of Laurent monomials.

    Instances are treated as immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Monomial, Number], Iterable[Tuple[Monomial, Number]], None] = None):
        d: Dict[Monomial, Number] = {}
        if terms is not None:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in pairs:
                c = as_number(c)
                if c:
                    n = d.get(m, 0) + c
                    if n:
                        d[m] = n
                    else:
                        d.pop(m, None)
        self._terms = d

    @classmethod
    def _raw(cls, d: Dict[Monomial, Number]) -> "LaurentPolynomial":
        p = object.__new__(cls)
        p._terms = d
        return p

    @classmethod
    def constant(cls, c: Number) -> "LaurentPolynomial":
        c = as_number(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial, c: Number = 1) -> "LaurentPolynomial":
        c = as_number(c)
        return cls._raw({m: c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "LaurentPolynomial":
        return cls._raw({Monomial.var(name, exp): 1})

    # --- inspection -----------------------------------------------------
    def terms(self) -> Iterator[Tuple[Monomial, Number]]:
        return iter(self._terms.items())

    def coefficient(self, m: Monomial) -> Number:
        return self._terms.get(m, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ONE, 0)

    def variables(self) -> set:
        out = set()
        for m in self._terms:
            out.update(m.variables())
        return out

    def degree_range(self, var: str) -> Tuple[int, int]:
        if not self._terms:
            return (0, 0)
        ds = [m.degree(var) for m in self._terms]
        return min(ds), max(ds)

    def involves(self, var: str) -> bool:
        return any(m.degree(var) for m in self._terms)

    def sorted_terms(self, order: VariableOrder):
        """Terms by increasing total degree, then lexicographically (largest
        exponent vector first)."""

        def key(t):
            vec = order.key(t[0])
            return (sum(vec), tuple(-e for e in vec))

        return sorted(self._terms.items(), key=key)

    # --- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        d = dict(self._terms)
        for m, c in other._terms.items():
            n = d.get(m, 0) + c
            if n:
                d[m] = n
            else:
                del d[m]
        return LaurentPolynomial._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.shift(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        d: Dict[Monomial, Number] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma * mb
                n = d.get(m, 0) + ca * cb
                if n:
                    d[m] = n
                else:
                    del d[m]
        return LaurentPolynomial._raw(d)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "LaurentPolynomial":
        c = as_number(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        return LaurentPolynomial._raw({m: as_number(v * c) for m, v in self._terms.items()})

    def shift(self, mono: Monomial, c: Number = 1) -> "LaurentPolynomial":
        """Multiply by the term ``c*mono``."""
        c = as_number(c)
        if not c:
            return ZERO
        return LaurentPolynomial._raw({m * mono: as_number(v * c) for m, v in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            if len(self._terms) == 1:
                (m, c), = self._terms.items()
                return LaurentPolynomial._raw({m ** n: rpow(c, n)})
            raise ValueError("only monomials have Laurent-polynomial inverses")
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # --- substitution & evaluation -------------------------------------
    def substitute(self, bindings: Mapping[str, Tuple[Number, Monomial]]) -> "LaurentPolynomial":
        """Replace variables by scaled monomials ``(c, M)``."""
        for v, (c, _) in bindings.items():
            if not as_number(c):
                raise ValueError(f"binding for {v} is zero")
        d: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            coeff = c
            kept = []
            image = ONE
            for v, e in m.items():
                if v in bindings:
                    bc, bm = bindings[v]
                    coeff = coeff * rpow(as_number(bc), e)
                    image = image * bm ** e
                else:
                    kept.append((v, e))
            nm = Monomial._raw(tuple(kept)) * image
            n = d.get(nm, 0) + coeff
            if n:
                d[nm] = as_number(n)
            else:
                del d[nm]
        return LaurentPolynomial._raw(d)

    def at_one(self, var: str) -> "LaurentPolynomial":
        """Set ``var = 1``."""
        return self.substitute({var: (1, ONE)})

    def collect(self, var: str) -> Dict[int, "LaurentPolynomial"]:
        """Group terms by the exponent of ``var``; values are ``var``-free."""
        out: Dict[int, Dict[Monomial, Number]] = {}
        for m, c in self._terms.items():
            e, rest = m.split(var)
            out.setdefault(e, {})[rest] = c
        return {e: LaurentPolynomial._raw(d) for e, d in out.items()}

    def divide_binomial(self, c: Number, mono: Monomial):
        """Exact quotient by ``1 - c*mono``, or ``None`` if it does not divide.

        Terms are grouped into classes ``m0 * mono**k``; within a class the
        problem is univariate in ``t = mono`` and is solved by synthetic
        division by ``1 - c*t``.
        """
        if mono.is_one():
            raise ValueError("binomial 1 - c has no monomial part")
        c = as_number(c)
        pivot_var, pivot_exp = mono.items()[0]
        classes: Dict[Monomial, Dict[int, Number]] = {}
        for m, coef in self._terms.items():
            k = m.degree(pivot_var) // pivot_exp
            base = m * mono ** (-k) if k else m
            classes.setdefault(base, {})[k] = coef
        quotient: Dict[Monomial, Number] = {}
        for base, coeffs in classes.items():
            lo, hi = min(coeffs), max(coeffs)
            # q_k - c*q_{k-1} = a_k; run upward from q_{lo-1} = 0
            prev = 0
            for k in range(lo, hi + 1):
                q = coeffs.get(k, 0) + c * prev
                q = as_number(q)
                if k == hi:
                    if q:
                        return None
                else:
                    if q:
                        quotient[base * mono ** k] = q
                prev = q
            # the loop leaves q_hi == 0 exactly when the class divides
        return LaurentPolynomial._raw(quotient)

    # --- printing -------------------------------------------------------
    def format(self, order: VariableOrder | None = None) -> str:
        if not self._terms:
            return "0"
        if order is not None:
            items = self.sorted_terms(order)
        else:
            items = sorted(self._terms.items(), key=lambda t: t[0].items())
        out = []
        for i, (m, c) in enumerate(items):
            neg = c < 0
            a = -c if neg else c
            if m.is_one():
                body = str(a)
            elif a == 1:
                body = format_monomial(m, order)
            else:
                body = f"{a}*{format_monomial(m, order)}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.format()!r})"


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPolynomial.constant(x)
    if isinstance(x, Monomial):
        return LaurentPolynomial.monomial(x)
    return None


ZERO = LaurentPolynomial()
ONE_POLY = LaurentPolynomial.constant(1)


def poly_arith(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p: LaurentPolynomial, bindings) -> LaurentPolynomial:
    return p.substitute(normalize_bindings(bindings))


def normalize_bindings(bindings) -> Dict[str, Tuple[Number, Monomial]]:
    """Accept ``var -> Monomial | (c, Monomial) | number | monomial polynomial``."""
    out = {}
    for v, img in bindings.items():
        if isinstance(img, Monomial):
            out[v] = (1, img)
        elif isinstance(img, tuple):
            c, m = img
            out[v] = (as_number(c), m)
        elif isinstance(img, LaurentPolynomial):
            if len(img) != 1:
                raise ValueError(f"binding for {v} must be a scaled monomial, got {img}")
            (m, c), = img.terms()
            out[v] = (c, m)
        else:
            c = as_number(img)
            out[v] = (c, ONE)
        if not out[v][0]:
            raise ValueError(f"binding for {v} is zero")
    return out
