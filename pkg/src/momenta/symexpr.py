"""Exact multivariate polynomials and rational functions over the rationals.

This is the coefficient kernel of the whole engine: every geometric and
algebraic identity ultimately reduces to ``RatFunc.is_zero``, which is
decidable because values are kept in a canonical form at all times.

Representation choices:

* a ``Polynomial`` is a sparse map from exponent vectors to ``Fraction``
  coefficients, over an explicit ordered variable tuple;
* a ``RatFunc`` is a reduced fraction ``num/den`` of polynomials with
  gcd(num, den) = 1, the denominator scaled to have coprime integer
  coefficients and a positive leading coefficient under graded
  lexicographic order.  Two equal functions have identical parts.

The text grammar (also emitted by the canonical printer):

    expr   := term  (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+')* atom ('^' integer)?
    atom   := integer | variable | '(' expr ')'
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import (
    ExprSyntaxError,
    PoleError,
    UnknownVariableError,
    VariableMismatchError,
)

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex_key(expts: tuple[int, ...]) -> tuple:
    # graded lexicographic: total degree first, then earlier variables weigh more
    return (sum(expts), expts)


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients.

    Instances are treated as immutable; all operations return new objects.
    ``terms`` never stores a zero coefficient.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: tuple[str, ...], terms: dict[tuple[int, ...], Fraction]):
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: tuple[str, ...], value) -> "Polynomial":
        c = Fraction(value)
        n = len(variables)
        return cls(variables, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, variables: tuple[str, ...], name: str) -> "Polynomial":
        if name not in variables:
            raise UnknownVariableError(f"unknown variable {name!r}")
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): _ONE})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, idx: int) -> int:
        return max((e[idx] for e in self.terms), default=0)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (exponent, coefficient) under graded lexicographic order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, tuple(sorted(self.terms.items()))))
        return self._hash

    def _check_vars(self, other: "Polynomial") -> None:
        if self.vars != other.vars:
            raise VariableMismatchError(f"variables {self.vars} vs {other.vars}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_vars(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.vars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_vars(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, _ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial(self.vars, terms)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power on a polynomial")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus ---------------------------------------------------------

    def derivative(self, idx: int) -> "Polynomial":
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k == 0:
                continue
            e2 = list(e)
            e2[idx] = k - 1
            terms[tuple(e2)] = c * k
        return Polynomial(self.vars, terms)

    def evaluate(self, point: dict[str, Fraction]) -> Fraction:
        vals = []
        for v in self.vars:
            if v not in point:
                raise UnknownVariableError(f"no value supplied for {v!r}")
            vals.append(Fraction(point[v]))
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x**k
            total += term
        return total

    # -- normal form helpers ------------------------------------------------

    def int_normalized(self) -> tuple[Fraction, "Polynomial"]:
        """Split as ``content * primitive``.

        ``primitive`` has coprime integer coefficients and positive leading
        coefficient under graded lexicographic order; ``content`` is the
        rational making the product equal ``self``.  Zero splits as (1, 0).
        """
        if not self.terms:
            return _ONE, self
        denom_lcm = 1
        for c in self.terms.values():
            denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
        numer_gcd = 0
        for c in self.terms.values():
            numer_gcd = int_gcd(numer_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
        content = Fraction(numer_gcd, denom_lcm)
        _, lead = self.leading()
        if lead < 0:
            content = -content
        prim = Polynomial(self.vars, {e: c / content for e, c in self.terms.items()})
        return content, prim

    # -- printing -----------------------------------------------------------

    def _monomial_str(self, expts: tuple[int, ...]) -> str:
        parts = []
        for name, k in zip(self.vars, expts):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = self._monomial_str(e)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Polynomial({self!s})"


# -- gcd machinery ------------------------------------------------------------


def poly_divmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Divide by a single divisor under graded lexicographic order.

    Returns (quotient, remainder) with f = q*g + r, where no term of r is
    divisible by the leading term of g.  When g divides f exactly, r = 0.
    """
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f._check_vars(g)
    ge, gc = g.leading()
    q_terms: dict[tuple[int, ...], Fraction] = {}
    r_terms: dict[tuple[int, ...], Fraction] = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=_grlex_key)
        c = work.pop(e)
        if all(a >= b for a, b in zip(e, ge)):
            qe = tuple(a - b for a, b in zip(e, ge))
            qc = c / gc
            q_terms[qe] = q_terms.get(qe, _ZERO) + qc
            for e2, c2 in g.terms.items():
                if e2 == ge:
                    continue
                e3 = tuple(a + b for a, b in zip(qe, e2))
                s = work.get(e3, _ZERO) - qc * c2
                if s:
                    work[e3] = s
                else:
                    work.pop(e3, None)
        else:
            r_terms[e] = c
    return Polynomial(f.vars, q_terms), Polynomial(f.vars, r_terms)


def poly_divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise ValueError("exact polynomial division left a remainder")
    return q


def _coeffs_in(f: Polynomial, idx: int) -> dict[int, Polynomial]:
    """View f as univariate in variable idx; coefficients keep the full var tuple."""
    out: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for e, c in f.terms.items():
        d = e[idx]
        e2 = list(e)
        e2[idx] = 0
        out.setdefault(d, {})[tuple(e2)] = c
    return {d: Polynomial(f.vars, t) for d, t in out.items()}


def _from_coeffs(variables: tuple[str, ...], idx: int, coeffs: dict[int, Polynomial]) -> Polynomial:
    terms: dict[tuple[int, ...], Fraction] = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            e2 = list(e)
            e2[idx] += d
            terms[tuple(e2)] = terms.get(tuple(e2), _ZERO) + c
    return Polynomial(variables, terms)


def _content_in(f: Polynomial, idx: int) -> Polynomial:
    cont = Polynomial.zero(f.vars)
    for p in _coeffs_in(f, idx).values():
        cont = poly_gcd(cont, p)
        if cont.is_constant() and not cont.is_zero():
            break
    return cont


def _pseudo_rem(f: Polynomial, g: Polynomial, idx: int) -> Polynomial:
    """Pseudo-remainder of f by g in variable idx (coefficients stay polynomial)."""
    df, dg = f.degree_in(idx), g.degree_in(idx)
    gc = _coeffs_in(g, idx)
    lead_g = gc[dg]
    r = f
    while not r.is_zero() and r.degree_in(idx) >= dg:
        dr = r.degree_in(idx)
        rc = _coeffs_in(r, idx)
        lead_r = rc[dr]
        shift = {dr - dg + d: p * lead_r for d, p in gc.items()}
        r = _from_coeffs(f.vars, idx, {d: p * lead_g for d, p in _coeffs_in(r, idx).items()})
        r = r - _from_coeffs(f.vars, idx, shift)
        if r.degree_in(idx) >= dr and not r.is_zero():
            # degree must strictly drop; guard against coefficient surprises
            raise ArithmeticError("pseudo-division failed to reduce degree")
    del df
    return r


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Greatest common divisor, canonicalized.

    The result has coprime integer coefficients and a positive leading
    coefficient; constants collapse to 1.  Uses the primitive polynomial
    remainder sequence, recursing on the number of variables.
    """
    if f.is_zero():
        return g.int_normalized()[1] if not g.is_zero() else g
    if g.is_zero():
        return f.int_normalized()[1]
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(f.vars, 1)
    # main variable: the last one appearing in either operand
    idx = max(
        i
        for i in range(len(f.vars))
        if f.degree_in(i) > 0 or g.degree_in(i) > 0
    )
    if f.degree_in(idx) == 0:
        return poly_gcd(f, _content_in(g, idx))
    if g.degree_in(idx) == 0:
        return poly_gcd(_content_in(f, idx), g)
    cf, cg = _content_in(f, idx), _content_in(g, idx)
    d = poly_gcd(cf, cg)
    a = poly_divexact(f, cf)
    b = poly_divexact(g, cg)
    if a.degree_in(idx) < b.degree_in(idx):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, idx)
        a = b
        if r.is_zero():
            b = r
        else:
            b = poly_divexact(r, _content_in(r, idx))
    result = d * a
    return result.int_normalized()[1]


# -- rational functions --------------------------------------------------------


class RatFunc:
    """Reduced fraction of polynomials; the function field for all geometry."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial):
        num._check_vars(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num = Polynomial.zero(num.vars)
            den = Polynomial.constant(num.vars, 1)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
            c, den = den.int_normalized()
            num = num.scale(1 / c)
        self.num = num
        self.den = den
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RatFunc":
        return cls(p, Polynomial.constant(p.vars, 1))

    @classmethod
    def constant(cls, variables: tuple[str, ...], value) -> "RatFunc":
        return cls.from_polynomial(Polynomial.constant(variables, value))

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "RatFunc":
        return cls.from_polynomial(Polynomial.zero(variables))

    @classmethod
    def one(cls, variables: tuple[str, ...]) -> "RatFunc":
        return cls.constant(variables, 1)

    @classmethod
    def variable(cls, variables: tuple[str, ...], name: str) -> "RatFunc":
        return cls.from_polynomial(Polynomial.variable(variables, name))

    # -- queries ----------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_constant() and self.den.is_constant() and self.num.constant_value() == 1

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def _check_vars(self, other: "RatFunc") -> None:
        if self.vars != other.vars:
            raise VariableMismatchError(f"variables {self.vars} vs {other.vars}")

    # -- field operations ----------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check_vars(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check_vars(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check_vars(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def scale(self, c) -> "RatFunc":
        return RatFunc(self.num.scale(c), self.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    # -- calculus --------------------------------------------------------------

    def derivative(self, var: str) -> "RatFunc":
        if var not in self.vars:
            raise UnknownVariableError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        dn = self.num.derivative(i)
        dd = self.den.derivative(i)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: dict[str, Fraction]) -> Fraction:
        dval = self.den.evaluate(point)
        if dval == 0:
            raise PoleError(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / dval

    # -- printing ----------------------------------------------------------------

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self!s})"


# -- parser ---------------------------------------------------------------------


_SYMBOLS = "+-*/^()"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = variables

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        kind, val, at = self.peek()
        if kind != "sym" or val != sym:
            raise ExprSyntaxError(f"expected {sym!r}", at)
        self.advance()

    def parse(self) -> RatFunc:
        value = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {val!r}", at)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> RatFunc:
        value = self.factor()
        while True:
            kind, val, at = self.peek()
            if kind == "sym" and val in "*/":
                self.advance()
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ZeroDivisionError(f"division by zero at position {at}")
                    value = value / rhs
            else:
                return value

    def factor(self) -> RatFunc:
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.advance()
                if val == "-":
                    sign = -sign
            else:
                break
        value = self.atom()
        kind, val, at = self.peek()
        if kind == "sym" and val == "^":
            self.advance()
            kind, val, at = self.advance()
            if kind != "int":
                raise ExprSyntaxError("exponent must be a nonnegative integer", at)
            value = value ** int(val)
        return value if sign == 1 else -value

    def atom(self) -> RatFunc:
        kind, val, at = self.advance()
        if kind == "int":
            return RatFunc.constant(self.vars, int(val))
        if kind == "name":
            if val not in self.vars:
                raise UnknownVariableError(f"unknown variable {val!r} (at position {at})")
            return RatFunc.variable(self.vars, val)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect_sym(")")
            return inner
        raise ExprSyntaxError(f"unexpected token {val!r}" if val else "unexpected end of input", at)


def parse_expr(text: str, variables: tuple[str, ...] | list[str]) -> RatFunc:
    """Parse expression text over the declared variables into canonical form."""
    return _Parser(text, tuple(variables)).parse()
