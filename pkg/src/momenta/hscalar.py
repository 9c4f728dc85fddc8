"""Polynomials in the deformation parameter h over the rationals.

These are the scalars of the enveloping-algebra side of the engine.  They
are kept exact (no truncation): deformed structure constants, coproduct
coefficients and straightening corrections are all honest polynomials in
h, so Hopf-axiom checks compare closed-form data rather than truncated
series.  Truncation to a working order happens only when results are
compared against h-series of functions.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)


class HScalar:
    """Dense univariate polynomial in h with Fraction coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash: int | None = None

    @classmethod
    def of(cls, value) -> "HScalar":
        return cls([Fraction(value)])

    @classmethod
    def zero(cls) -> "HScalar":
        return cls([])

    @classmethod
    def one(cls) -> "HScalar":
        return cls([1])

    @classmethod
    def h(cls) -> "HScalar":
        return cls([0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def constant_part(self) -> Fraction:
        return self.coeff(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def truncated(self, order: int) -> "HScalar":
        return HScalar(self.coeffs[: order + 1])

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, HScalar) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other: "HScalar") -> "HScalar":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return HScalar(out)

    def __neg__(self) -> "HScalar":
        return HScalar([-c for c in self.coeffs])

    def __sub__(self, other: "HScalar") -> "HScalar":
        return self + (-other)

    def __mul__(self, other: "HScalar") -> "HScalar":
        if not self.coeffs or not other.coeffs:
            return HScalar([])
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return HScalar(out)

    def scale(self, c) -> "HScalar":
        c = Fraction(c)
        return HScalar([c * a for a in self.coeffs])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        chunks: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "h" if mag == 1 else f"{mag}*h"
            else:
                body = f"h^{k}" if mag == 1 else f"{mag}*h^{k}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"HScalar({self!s})"
