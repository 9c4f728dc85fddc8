"""Deterministic pseudo-random function samples for property checks.

Samples are polynomials of total degree at most 3 with integer
coefficients in [-3, 3], generated from an explicit seed so every run of
a scenario reproduces the same report bytes.
"""

from __future__ import annotations

import itertools
import random

from .symexpr import Polynomial, RatFunc


class SampleGen:
    """Seeded generator of sample functions over a fixed variable tuple."""

    def __init__(self, variables: tuple[str, ...], seed: int):
        self.vars = tuple(variables)
        self.rng = random.Random(seed)
        self._monomials = [
            e
            for e in itertools.product(range(4), repeat=len(self.vars))
            if 0 < sum(e) <= 3
        ]

    def polynomial(self, max_terms: int = 3, allow_constant: bool = True) -> RatFunc:
        terms: dict[tuple[int, ...], int] = {}
        for _ in range(self.rng.randint(1, max_terms)):
            e = self.rng.choice(self._monomials)
            c = self.rng.choice([-3, -2, -1, 1, 2, 3])
            terms[e] = terms.get(e, 0) + c
        if allow_constant and self.rng.random() < 0.5:
            terms[(0,) * len(self.vars)] = self.rng.randint(-3, 3)
        p = Polynomial(self.vars, {e: c for e, c in terms.items() if c})
        if p.is_zero():
            p = Polynomial.variable(self.vars, self.vars[0])
        return RatFunc.from_polynomial(p)

    def ratfunc(self) -> RatFunc:
        num = self.polynomial()
        den = self.polynomial(max_terms=2)
        # any nonzero polynomial is a valid denominator; shift to dodge 0
        den = den + RatFunc.constant(self.vars, self.rng.randint(1, 3))
        if den.is_zero():
            den = RatFunc.one(self.vars)
        return num / den

    def polynomials(self, count: int, max_terms: int = 3) -> list[RatFunc]:
        return [self.polynomial(max_terms=max_terms) for _ in range(count)]

    def pairs(self, count: int) -> list[tuple[RatFunc, RatFunc]]:
        return [(self.polynomial(), self.polynomial()) for _ in range(count)]

    def triples(self, count: int) -> list[tuple[RatFunc, RatFunc, RatFunc]]:
        return [
            (self.polynomial(), self.polynomial(), self.polynomial())
            for _ in range(count)
        ]
