"""Finite-dimensional Lie algebras, cobrackets and bialgebra compatibility.

Structure constants take values in the h-scalar ring so a deformed
bracket's linear part can be recorded next to its classical shadow; the
quadratic part of a deformed relation belongs to the enveloping algebra
and lives in :mod:`momenta.quantumgroup`.

Conventions (also echoed in check notes):

* a cobracket is stored on the wedge basis, delta(e_i) = sum_{j<k}
  f_i^{jk} e_j ^ e_k, and a wedge expands to tensors without a 1/2:
  x ^ y = x (x) y - y (x) x;
* the dual bracket pairs as <[a*, b*]*, e_i> = (a* (x) b*)(delta e_i),
  which on stored constants is the plain reindexing c*^i_{jk} = f_i^{jk}.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError
from .hscalar import HScalar
from .report import FAIL, PASS, CheckResult

Element = tuple[HScalar, ...]  # coefficients over the basis
Wedge = dict[tuple[int, int], HScalar]  # keys (j, k) with j < k


def _clean_wedge(w: Wedge) -> Wedge:
    return {jk: c for jk, c in w.items() if not c.is_zero()}


class LieAlgebra:
    """Lie algebra given by structure constants on an ordered basis.

    Antisymmetry holds by construction; the Jacobi identity is certified
    by :func:`check_jacobi_lie`, never assumed.
    """

    def __init__(self, basis: tuple[str, ...], brackets: dict[tuple[int, int], Element]):
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        consts: dict[tuple[int, int], Element] = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket key ({i},{j}) must have i < j within the basis")
            if len(vec) != self.dim:
                raise DimensionMismatchError("structure-constant vector of wrong length")
            if any(not c.is_zero() for c in vec):
                consts[(i, j)] = tuple(vec)
        self.brackets = consts

    @classmethod
    def abelian(cls, basis: tuple[str, ...]) -> "LieAlgebra":
        return cls(basis, {})

    @classmethod
    def so3(cls, basis: tuple[str, ...] = ("e1", "e2", "e3")) -> "LieAlgebra":
        one, zero = HScalar.one(), HScalar.zero()
        return cls(
            basis,
            {
                (0, 1): (zero, zero, one),
                (0, 2): (zero, -one, zero),
                (1, 2): (one, zero, zero),
            },
        )

    def zero_element(self) -> Element:
        return tuple(HScalar.zero() for _ in range(self.dim))

    def basis_element(self, i: int) -> Element:
        return tuple(HScalar.one() if k == i else HScalar.zero() for k in range(self.dim))

    def bracket_basis(self, i: int, j: int) -> Element:
        """[e_i, e_j] as a coefficient vector."""
        if i == j:
            return self.zero_element()
        if i < j:
            return self.brackets.get((i, j), self.zero_element())
        vec = self.brackets.get((j, i), self.zero_element())
        return tuple(-c for c in vec)

    def bracket(self, x: Element, y: Element) -> Element:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError("element of wrong dimension")
        out = list(self.zero_element())
        for i in range(self.dim):
            if x[i].is_zero():
                continue
            for j in range(self.dim):
                if y[j].is_zero():
                    continue
                coeff = x[i] * y[j]
                for k, c in enumerate(self.bracket_basis(i, j)):
                    if not c.is_zero():
                        out[k] = out[k] + coeff * c
        return tuple(out)

    def classical_constants(self, i: int, j: int) -> tuple[Fraction, ...]:
        """h^0 part of [e_i, e_j]; the shadow used by geometric checks."""
        return tuple(c.constant_part() for c in self.bracket_basis(i, j))

    def is_classical(self) -> bool:
        return all(c.is_constant() for vec in self.brackets.values() for c in vec)

    def format_element(self, x: Element) -> str:
        chunks = []
        for name, c in zip(self.basis, x):
            if c.is_zero():
                continue
            if c == HScalar.one():
                chunks.append(name)
            elif c == -HScalar.one():
                chunks.append(f"-{name}")
            else:
                chunks.append(f"({c})*{name}")
        return " + ".join(chunks) if chunks else "0"

    def format_wedge(self, w: Wedge) -> str:
        chunks = []
        for (j, k) in sorted(w):
            c = w[(j, k)]
            body = f"{self.basis[j]}^{self.basis[k]}"
            if c == HScalar.one():
                chunks.append(body)
            elif c == -HScalar.one():
                chunks.append(f"-{body}")
            else:
                chunks.append(f"({c})*{body}")
        return " + ".join(chunks) if chunks else "0"


class Cobracket:
    """delta: g -> g^g stored as wedge components per basis element."""

    def __init__(self, dim: int, components: dict[int, Wedge]):
        self.dim = dim
        comps: dict[int, Wedge] = {}
        for i, w in components.items():
            if not 0 <= i < dim:
                raise ValueError("cobracket component out of range")
            for (j, k) in w:
                if not (0 <= j < k < dim):
                    raise ValueError("wedge key must have j < k within the basis")
            cleaned = _clean_wedge(w)
            if cleaned:
                comps[i] = cleaned
        self.components = comps

    @classmethod
    def zero(cls, dim: int) -> "Cobracket":
        return cls(dim, {})

    def of_basis(self, i: int) -> Wedge:
        return dict(self.components.get(i, {}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cobracket)
            and self.dim == other.dim
            and self.components == other.components
        )


class LieBialgebra:
    def __init__(self, algebra: LieAlgebra, cobracket: Cobracket):
        if cobracket.dim != algebra.dim:
            raise DimensionMismatchError("cobracket dimension differs from the algebra")
        self.algebra = algebra
        self.cobracket = cobracket


_CONVENTION_NOTES = (
    "wedge convention: x^y stands for x(x)y - y(x)x (no 1/2)",
    "dual pairing: <[a*,b*]*, e_i> = (a*(x)b*)(delta e_i), i.e. c*^i_{jk} = f_i^{jk}",
)


def check_jacobi_lie(g: LieAlgebra, name: str = "jacobi_lie") -> CheckResult:
    """Cyclic sum [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] over basis triples."""
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                ei, ej, ek = (g.basis_element(t) for t in (i, j, k))
                total = g.zero_element()
                for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                    term = g.bracket(a, g.bracket(b, c))
                    total = tuple(x + y for x, y in zip(total, term))
                if any(not c.is_zero() for c in total):
                    witness = (
                        f"({g.basis[i]},{g.basis[j]},{g.basis[k]}) -> "
                        f"{g.format_element(total)}"
                    )
                    return CheckResult(name, FAIL, witness=witness)
    return CheckResult(name, PASS)


def _ad_on_wedge(g: LieAlgebra, x_idx: int, w: Wedge) -> Wedge:
    """Leibniz action of ad_{e_x} on a wedge: [x,u]^v + u^[x,v]."""
    out: Wedge = {}

    def add(j: int, k: int, c: HScalar) -> None:
        if c.is_zero() or j == k:
            return
        if j > k:
            j, k = k, j
            c = -c
        out[(j, k)] = out.get((j, k), HScalar.zero()) + c

    for (j, k), c in w.items():
        for t, ct in enumerate(g.bracket_basis(x_idx, j)):
            add(t, k, c * ct)
        for t, ct in enumerate(g.bracket_basis(x_idx, k)):
            add(j, t, c * ct)
    return _clean_wedge(out)


def check_cocycle(b: LieBialgebra, name: str = "cocycle") -> CheckResult:
    """delta([x,y]) = ad_x delta(y) - ad_y delta(x) on basis pairs."""
    g, delta = b.algebra, b.cobracket
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            residual: Wedge = {}

            def add(w: Wedge, sign: int) -> None:
                for jk, c in w.items():
                    term = c if sign > 0 else -c
                    residual[jk] = residual.get(jk, HScalar.zero()) + term

            add(_ad_on_wedge(g, i, delta.of_basis(j)), +1)
            add(_ad_on_wedge(g, j, delta.of_basis(i)), -1)
            # delta([e_i, e_j]) by linearity
            for k, c in enumerate(g.bracket_basis(i, j)):
                if c.is_zero():
                    continue
                for jk, c2 in delta.of_basis(k).items():
                    residual[jk] = residual.get(jk, HScalar.zero()) - c * c2
            residual = _clean_wedge(residual)
            if residual:
                witness = f"({g.basis[i]},{g.basis[j]}) -> {g.format_wedge(residual)}"
                return CheckResult(name, FAIL, witness=witness, notes=_CONVENTION_NOTES)
    return CheckResult(name, PASS, notes=_CONVENTION_NOTES)


def dual_bracket(b: LieBialgebra) -> LieAlgebra:
    """Lie algebra on the dual basis induced by the cobracket."""
    g = b.algebra
    dual_basis = tuple(f"{name}*" for name in g.basis)
    brackets: dict[tuple[int, int], Element] = {}
    for j in range(g.dim):
        for k in range(j + 1, g.dim):
            vec = [HScalar.zero()] * g.dim
            for i in range(g.dim):
                c = b.cobracket.of_basis(i).get((j, k))
                if c is not None:
                    vec[i] = c
            if any(not c.is_zero() for c in vec):
                brackets[(j, k)] = tuple(vec)
    return LieAlgebra(dual_basis, brackets)


def check_cojacobi(b: LieBialgebra, name: str = "cojacobi") -> CheckResult:
    inner = check_jacobi_lie(dual_bracket(b), name=name)
    if inner.status == PASS:
        return CheckResult(name, PASS, notes=_CONVENTION_NOTES)
    return CheckResult(name, FAIL, witness=inner.witness, notes=_CONVENTION_NOTES)


def bracket_as_cobracket(g: LieAlgebra) -> Cobracket:
    """Read structure constants as cobracket constants on the dual basis."""
    comps: dict[int, Wedge] = {}
    for (i, j), vec in g.brackets.items():
        for k, c in enumerate(vec):
            if not c.is_zero():
                comps.setdefault(k, {})[(i, j)] = c
    return Cobracket(g.dim, comps)
