"""Truncated h-series over rational functions and star products.

An ``HbarSeries`` stores coefficients for h^0 .. h^N together with a
``known_order``: slots above it are *unknown*, not zero.  Operations
propagate the weaker of the operands' orders and division by h lowers it
by one, so a check can never certify an order it did not compute.

Star products implement f * g = f.g + sum_n P_n(f, g) h^n through an
``expand`` hook returning the list [P_0(f,g), ..., P_N(f,g)].  The Moyal
weights are

    P_n(f, g) = 1/(n! 2^n) sum Pi^{i1 j1} ... Pi^{in jn}
                (d_{i1..in} f)(d_{j1..jn} g),

so P_1(f, g) = (1/2){f, g} and P_1(f, g) - P_1(g, f) = {f, g}.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .errors import (
    InsufficientOrderError,
    NotDivisibleError,
    NotInvertibleError,
    VariableMismatchError,
)
from .hscalar import HScalar
from .poissongeo import PoissonStructure, poisson_bracket
from .report import FAIL, PASS, CheckResult
from .symexpr import RatFunc

Vars = tuple[str, ...]

MOYAL_NOTE = "star conventions: P_n = (1/(n! 2^n)) Pi^(n-fold) weights; P_1(f,g) = (1/2){f,g}"


class HbarSeries:
    """Series sum_k f_k h^k truncated at N, with a tracked known order."""

    __slots__ = ("vars", "coeffs", "known_order")

    def __init__(self, variables: Vars, coeffs, known_order: int | None = None):
        self.vars = tuple(variables)
        cs = tuple(coeffs)
        if not cs:
            raise ValueError("series needs at least the h^0 slot")
        for c in cs:
            if c.vars != self.vars:
                raise VariableMismatchError("coefficient over wrong variables")
        self.coeffs = cs
        self.known_order = len(cs) - 1 if known_order is None else known_order
        if not 0 <= self.known_order <= len(cs) - 1:
            raise ValueError("known_order out of range")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_ratfunc(cls, f: RatFunc, order: int) -> "HbarSeries":
        zero = RatFunc.zero(f.vars)
        return cls(f.vars, [f] + [zero] * order)

    @classmethod
    def zero(cls, variables: Vars, order: int) -> "HbarSeries":
        return cls.from_ratfunc(RatFunc.zero(variables), order)

    @classmethod
    def one(cls, variables: Vars, order: int) -> "HbarSeries":
        return cls.from_ratfunc(RatFunc.one(variables), order)

    def coeff(self, k: int) -> RatFunc:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RatFunc.zero(self.vars)

    def _check(self, other: "HbarSeries") -> None:
        if self.vars != other.vars:
            raise VariableMismatchError("series over different variables")
        if self.order != other.order:
            raise VariableMismatchError("series truncated at different orders")

    def __add__(self, other: "HbarSeries") -> "HbarSeries":
        self._check(other)
        return HbarSeries(
            self.vars,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            min(self.known_order, other.known_order),
        )

    def __neg__(self) -> "HbarSeries":
        return HbarSeries(self.vars, [-a for a in self.coeffs], self.known_order)

    def __sub__(self, other: "HbarSeries") -> "HbarSeries":
        return self + (-other)

    def scale(self, c) -> "HbarSeries":
        return HbarSeries(self.vars, [a.scale(c) for a in self.coeffs], self.known_order)

    def mul_ratfunc(self, f: RatFunc) -> "HbarSeries":
        return HbarSeries(self.vars, [a * f for a in self.coeffs], self.known_order)

    def shift(self, k: int) -> "HbarSeries":
        """Multiply by h^k."""
        if k == 0:
            return self
        zero = RatFunc.zero(self.vars)
        coeffs = [zero] * k + list(self.coeffs[: len(self.coeffs) - k])
        return HbarSeries(self.vars, coeffs, min(self.known_order + k, self.order))

    def mul_hscalar(self, s: HScalar) -> "HbarSeries":
        out = HbarSeries.zero(self.vars, self.order)
        known = self.order
        any_term = False
        for k, c in enumerate(s.coeffs):
            if c == 0 or k > self.order:
                continue
            term = self.scale(c).shift(k)
            out = HbarSeries(
                self.vars,
                [a + b for a, b in zip(out.coeffs, term.coeffs)],
                self.order,
            )
            known = min(known, term.known_order)
            any_term = True
        return HbarSeries(self.vars, out.coeffs, known if any_term else self.order)

    def is_zero_up_to(self, order: int) -> bool:
        return all(self.coeff(k).is_zero() for k in range(min(order, self.known_order) + 1))

    def agrees_with(self, other: "HbarSeries", order: int) -> bool:
        return all(self.coeff(k) == other.coeff(k) for k in range(order + 1))

    def first_nonzero(self, up_to: int | None = None) -> int | None:
        limit = self.known_order if up_to is None else min(up_to, self.known_order)
        for k in range(limit + 1):
            if not self.coeff(k).is_zero():
                return k
        return None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HbarSeries)
            and self.vars == other.vars
            and self.coeffs == other.coeffs
            and self.known_order == other.known_order
        )

    def __str__(self) -> str:
        chunks = []
        for k, c in enumerate(self.coeffs):
            if k > self.known_order:
                break
            if c.is_zero():
                continue
            if k == 0:
                chunks.append(str(c))
            elif k == 1:
                chunks.append(f"({c})*h")
            else:
                chunks.append(f"({c})*h^{k}")
        return " + ".join(chunks) if chunks else "0"

    def __repr__(self) -> str:
        return f"HbarSeries({self!s}; known_order={self.known_order})"


class BidiffOperator:
    """Finite sum of terms coef * (d^left f) * (d^right g)."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Vars, terms):
        self.vars = tuple(variables)
        checked = []
        for coef, left, right in terms:
            left, right = tuple(left), tuple(right)
            if len(left) != len(self.vars) or len(right) != len(self.vars):
                raise VariableMismatchError("multi-index length differs from the dimension")
            if not coef.is_zero():
                checked.append((coef, left, right))
        self.terms = tuple(checked)

    def apply(self, f: RatFunc, g: RatFunc) -> RatFunc:
        out = RatFunc.zero(self.vars)
        for coef, left, right in self.terms:
            df, dg = f, g
            for name, k in zip(self.vars, left):
                for _ in range(k):
                    df = df.derivative(name)
            for name, k in zip(self.vars, right):
                for _ in range(k):
                    dg = dg.derivative(name)
            out = out + coef * df * dg
        return out


class StarProduct:
    """Base class: an associative-candidate formal deformation of the product."""

    kind = "abstract"

    def __init__(self, variables: Vars, order: int):
        if order < 1:
            raise ValueError("truncation order must be at least 1")
        self.vars = tuple(variables)
        self.order = order

    def expand(self, f: RatFunc, g: RatFunc) -> list[RatFunc]:
        """[P_0(f,g), ..., P_N(f,g)] with P_0 the pointwise product."""
        raise NotImplementedError

    def convention_notes(self) -> tuple[str, ...]:
        return ()


class MoyalStar(StarProduct):
    """Symmetric-weight star product of a constant antisymmetric matrix."""

    kind = "moyal"

    def __init__(self, variables: Vars, matrix: list[list[Fraction]], order: int):
        super().__init__(variables, order)
        n = len(variables)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise VariableMismatchError("matrix shape differs from the dimension")
        for i in range(n):
            for j in range(n):
                if matrix[i][j] != -matrix[j][i]:
                    raise ValueError("matrix must be antisymmetric")
        self.matrix = [[Fraction(c) for c in row] for row in matrix]
        self._pn_cache: dict[int, BidiffOperator] = {}

    def _pn(self, n: int) -> BidiffOperator:
        if n not in self._pn_cache:
            dim = len(self.vars)
            acc: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
            weight = Fraction(1, factorial(n) * 2**n)
            nonzero = [
                (i, j, self.matrix[i][j])
                for i in range(dim)
                for j in range(dim)
                if self.matrix[i][j]
            ]
            for combo in itertools.product(nonzero, repeat=n):
                coef = weight
                left = [0] * dim
                right = [0] * dim
                for i, j, c in combo:
                    coef *= c
                    left[i] += 1
                    right[j] += 1
                key = (tuple(left), tuple(right))
                acc[key] = acc.get(key, Fraction(0)) + coef
            terms = [
                (RatFunc.constant(self.vars, c), left, right)
                for (left, right), c in sorted(acc.items())
                if c
            ]
            self._pn_cache[n] = BidiffOperator(self.vars, terms)
        return self._pn_cache[n]

    def expand(self, f: RatFunc, g: RatFunc) -> list[RatFunc]:
        out = [f * g]
        for n in range(1, self.order + 1):
            out.append(self._pn(n).apply(f, g))
        return out

    def convention_notes(self) -> tuple[str, ...]:
        return (MOYAL_NOTE,)


class ExplicitStar(StarProduct):
    """User-supplied family P_1 .. P_N (missing entries are zero)."""

    kind = "explicit"

    def __init__(self, variables: Vars, operators: list[BidiffOperator], order: int):
        super().__init__(variables, order)
        self.operators = list(operators)

    def expand(self, f: RatFunc, g: RatFunc) -> list[RatFunc]:
        out = [f * g]
        for n in range(1, self.order + 1):
            if n - 1 < len(self.operators):
                out.append(self.operators[n - 1].apply(f, g))
            else:
                out.append(RatFunc.zero(self.vars))
        return out

    def convention_notes(self) -> tuple[str, ...]:
        return ("star conventions: explicit user-supplied bidifferential family",)


def star_multiply(f: HbarSeries, g: HbarSeries, sp: StarProduct) -> HbarSeries:
    if f.vars != sp.vars or g.vars != sp.vars:
        raise VariableMismatchError("series variables differ from the star product's")
    f._check(g)
    N = sp.order
    if f.order != N:
        raise VariableMismatchError("series order differs from the star product truncation")
    coeffs = [RatFunc.zero(sp.vars) for _ in range(N + 1)]
    for i in range(N + 1):
        if f.coeff(i).is_zero():
            continue
        for j in range(N + 1 - i):
            if g.coeff(j).is_zero():
                continue
            pns = sp.expand(f.coeff(i), g.coeff(j))
            for n in range(N + 1 - i - j):
                if not pns[n].is_zero():
                    coeffs[i + j + n] = coeffs[i + j + n] + pns[n]
    return HbarSeries(sp.vars, coeffs, min(f.known_order, g.known_order, N))


def star_commutator(f: HbarSeries, g: HbarSeries, sp: StarProduct) -> HbarSeries:
    return star_multiply(f, g, sp) - star_multiply(g, f, sp)


def star_inverse(f: HbarSeries, sp: StarProduct) -> HbarSeries:
    """Two-sided star inverse by order-by-order recursion on f * g = 1."""
    f0 = f.coeff(0)
    if f0.is_zero():
        raise NotInvertibleError("order-0 coefficient is the zero function")
    N = sp.order
    inv0 = f0.inverse()
    gk: list[RatFunc] = [inv0]
    for k in range(1, N + 1):
        acc = RatFunc.zero(sp.vars)
        for i in range(k + 1):
            fi = f.coeff(i)
            if fi.is_zero():
                continue
            for j in range(k - i + 1):
                n = k - i - j
                if j == k and n == 0 and i == 0:
                    continue  # the unknown g_k term
                pn = sp.expand(fi, gk[j])[n] if j < len(gk) else None
                if pn is not None and not pn.is_zero():
                    acc = acc + pn
        gk.append(-(inv0 * acc))
    g = HbarSeries(sp.vars, gk, f.known_order)
    if not star_multiply(g, f, sp).agrees_with(
        HbarSeries.one(sp.vars, N), min(f.known_order, N)
    ):
        raise NotInvertibleError("right inverse is not a left inverse (product not associative?)")
    return g


def divide_by_hbar(f: HbarSeries) -> HbarSeries:
    if not f.coeff(0).is_zero():
        raise NotDivisibleError("series has a nonzero h^0 coefficient")
    if f.known_order < 1:
        raise InsufficientOrderError("no certified order would remain after dividing by h")
    coeffs = list(f.coeffs[1:]) + [RatFunc.zero(f.vars)]
    return HbarSeries(f.vars, coeffs, f.known_order - 1)


def first_order_part(sp: StarProduct, f: RatFunc, g: RatFunc) -> RatFunc:
    """P_1(f, g) for any star product kind."""
    return sp.expand(f, g)[1]


def check_associativity(
    sp: StarProduct,
    samples: list[tuple[RatFunc, RatFunc, RatFunc]],
    name: str = "star_associativity",
) -> CheckResult:
    if not samples:
        raise ValueError("associativity check needs at least one sample triple")
    N = sp.order
    for f, g, h in samples:
        fs = HbarSeries.from_ratfunc(f, N)
        gs = HbarSeries.from_ratfunc(g, N)
        hs = HbarSeries.from_ratfunc(h, N)
        left = star_multiply(star_multiply(fs, gs, sp), hs, sp)
        right = star_multiply(fs, star_multiply(gs, hs, sp), sp)
        diff = left - right
        k = diff.first_nonzero()
        if k is not None:
            witness = f"(({f}) * ({g})) * ({h}) at h^{k}: {diff.coeff(k)}"
            return CheckResult(name, FAIL, order=k, witness=witness, notes=sp.convention_notes())
    return CheckResult(name, PASS, order=N, notes=sp.convention_notes())


def check_first_order(
    sp: StarProduct,
    pi: PoissonStructure,
    samples: list[tuple[RatFunc, RatFunc]],
    name: str = "star_first_order",
) -> CheckResult:
    """Antisymmetrized P_1 equals the Poisson bracket on every sample pair."""
    if pi.vars != sp.vars:
        raise VariableMismatchError("tensor and star product over different variables")
    for f, g in samples:
        lhs = first_order_part(sp, f, g) - first_order_part(sp, g, f)
        rhs = poisson_bracket(f, g, pi)
        if lhs != rhs:
            witness = f"P1({f},{g}) - P1({g},{f}) - {{f,g}} = {lhs - rhs}"
            return CheckResult(name, FAIL, order=1, witness=witness, notes=sp.convention_notes())
    return CheckResult(name, PASS, notes=sp.convention_notes())
