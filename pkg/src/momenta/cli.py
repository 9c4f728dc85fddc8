"""Scenario-driven command line front end.

A scenario is a single JSON document declaring a space, the structures
under test (Poisson matrix, star product, Lie bialgebra, coproduct,
action data, momentum components, Hamiltonians) and a list of checks to
run.  All mathematical payloads are expression strings in the grammar of
:mod:`momenta.symexpr`; ``h`` is the reserved deformation parameter and
``(x)`` separates tensor factors in coproduct assignments.

Exit codes: 0 all checks passed, 1 at least one check failed,
2 unreadable input / missing section / unknown check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import liebialg, momentum, poissongeo, quantumgroup, starprod
from .errors import MomentaError, ScenarioError
from .hscalar import HScalar
from .liebialg import Cobracket, LieAlgebra, LieBialgebra
from .poissongeo import OneForm, PoissonStructure, VectorField
from .quantumgroup import DeformedCoproduct, Presentation, TensorElement, UElement
from .report import FAIL, PASS, CheckResult, Report
from .sampling import SampleGen
from .starprod import BidiffOperator, ExplicitStar, HbarSeries, MoyalStar, star_multiply
from .symexpr import Polynomial, RatFunc, parse_expr

H_NAME = "h"


# -- expression helpers ----------------------------------------------------------


def _strip_last_var(p: Polynomial, new_vars: tuple[str, ...]) -> Polynomial:
    return Polynomial(new_vars, {e[:-1]: c for e, c in p.terms.items()})


def parse_hpoly(text: str) -> HScalar:
    """Parse a polynomial in h alone."""
    rf = parse_expr(text, (H_NAME,))
    if not rf.is_polynomial():
        raise ValueError(f"{text!r} is not polynomial in {H_NAME}")
    scale = Fraction(1, rf.den.constant_value())
    coeffs: list[Fraction] = []
    for e, c in rf.num.terms.items():
        k = e[0]
        while len(coeffs) <= k:
            coeffs.append(Fraction(0))
        coeffs[k] += c * scale
    return HScalar(coeffs)


def parse_series(text: str, variables: tuple[str, ...], order: int) -> HbarSeries:
    """Parse an h-series of rational functions, e.g. ``1/(1+q) + h*p``."""
    if H_NAME in variables:
        raise ValueError(f"{H_NAME!r} is reserved for the deformation parameter")
    ext = variables + (H_NAME,)
    rf = parse_expr(text, ext)
    h_idx = len(variables)
    if rf.den.degree_in(h_idx) > 0:
        raise ValueError(f"denominator of {text!r} must not involve {H_NAME}")
    den = _strip_last_var(rf.den, variables)
    buckets: dict[int, dict] = {}
    for e, c in rf.num.terms.items():
        buckets.setdefault(e[-1], {})[e[:-1]] = c
    if buckets and max(buckets) > order:
        raise ValueError(f"{text!r} has h-degree beyond the truncation order {order}")
    coeffs = []
    for k in range(order + 1):
        numk = Polynomial(variables, buckets.get(k, {}))
        coeffs.append(RatFunc(numk, den))
    return HbarSeries(variables, coeffs)


def parse_u_element(text: str, pres: Presentation) -> UElement:
    """Parse an expression in the generators and h into PBW normal form.

    Commutative parsing is sound here because monomials land directly on
    the ordered PBW basis.
    """
    ext = pres.basis + (H_NAME,)
    rf = parse_expr(text, ext)
    if not rf.is_polynomial():
        raise ValueError(f"{text!r} must be polynomial in the generators")
    scale = Fraction(1, rf.den.constant_value())
    data: dict = {}
    for e, c in rf.num.terms.items():
        mono, k = e[:-1], e[-1]
        coeff = HScalar([Fraction(0)] * k + [c * scale])
        data[mono] = data.get(mono, HScalar.zero()) + coeff
    return UElement(pres, data)


def _split_summands(text: str) -> list[tuple[int, str]]:
    """Split at top-level + and - (respecting parentheses and unary signs)."""
    out: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    chunk: list[str] = []
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in "*/^(@+-" and prev != "":
            out.append((sign, "".join(chunk).strip()))
            sign = 1 if ch == "+" else -1
            chunk = []
        else:
            chunk.append(ch)
        if not ch.isspace():
            prev = ch
    out.append((sign, "".join(chunk).strip()))
    return [(s, c) for s, c in out if c]


def parse_tensor(text: str, pres: Presentation) -> TensorElement:
    """Parse a tensor sum like ``xi (x) 1 - h*eta (x) xi + 1 (x) xi``."""
    marked = text.replace("(x)", "@")
    acc = TensorElement.zero(pres, 2)
    for sign, chunk in _split_summands(marked):
        sides = chunk.split("@")
        if len(sides) != 2:
            raise ValueError(f"tensor term {chunk!r} must have exactly one (x)")
        left = parse_u_element(sides[0].strip(), pres)
        right = parse_u_element(sides[1].strip(), pres)
        data: dict = {}
        for m1, c1 in left.data.items():
            for m2, c2 in right.data.items():
                c = c1 * c2
                if sign < 0:
                    c = -c
                key = (m1, m2)
                data[key] = data.get(key, HScalar.zero()) + c
        acc = acc + TensorElement(pres, 2, data)
    return acc


def _linear_combination(text: str, basis: tuple[str, ...]) -> tuple[HScalar, ...]:
    """Parse a bracket value: an h-scalar combination of basis names."""
    ext = basis + (H_NAME,)
    rf = parse_expr(text, ext)
    if not rf.is_polynomial():
        raise ValueError(f"{text!r} must be polynomial")
    scale = Fraction(1, rf.den.constant_value())
    vec = [HScalar.zero() for _ in basis]
    for e, c in rf.num.terms.items():
        mono, k = e[:-1], e[-1]
        if sum(mono) != 1:
            raise ValueError(f"{text!r} must be linear in the basis names")
        idx = mono.index(1)
        vec[idx] = vec[idx] + HScalar([Fraction(0)] * k + [c * scale])
    return tuple(vec)


def _pair_key(key: str, basis: tuple[str, ...]) -> tuple[int, int]:
    names = [part.strip() for part in key.split(",")]
    if len(names) != 2 or any(n not in basis for n in names):
        raise ValueError(f"bad basis pair {key!r}")
    i, j = basis.index(names[0]), basis.index(names[1])
    if not i < j:
        raise ValueError(f"pair {key!r} must list basis names in declared order")
    return i, j


# -- scenario context ---------------------------------------------------------------


class Scenario:
    """Lazy builder for the structures a scenario declares."""

    def __init__(self, doc: dict, order_override: int | None, seed_override: int | None):
        if not isinstance(doc, dict):
            raise ScenarioError("scenario document must be a JSON object")
        self.doc = doc
        space = self._section("space")
        try:
            self.vars = tuple(space["vars"])
            self.order = int(order_override if order_override is not None else space["order"])
            seed = space.get("seed", 0)
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad space section: {exc}", section="space")
        if self.order < 2:
            raise ScenarioError("truncation order must be at least 2", section="space")
        self.seed = int(seed_override if seed_override is not None else seed)
        self._cache: dict = {}

    def _section(self, name: str):
        if name not in self.doc:
            raise ScenarioError(f"missing section {name!r}", section=name)
        return self.doc[name]

    def has(self, name: str) -> bool:
        return name in self.doc

    def _built(self, key: str, builder):
        if key not in self._cache:
            try:
                self._cache[key] = builder()
            except ScenarioError:
                raise
            except (MomentaError, ValueError, KeyError, TypeError) as exc:
                raise ScenarioError(str(exc), section=key)
        return self._cache[key]

    # -- structures -------------------------------------------------------

    def expr(self, text: str) -> RatFunc:
        return parse_expr(text, self.vars)

    def poisson(self) -> PoissonStructure:
        def build():
            matrix = self._section("poisson")
            n = len(self.vars)
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise ValueError("poisson matrix shape differs from the dimension")
            parsed = [[self.expr(cell) for cell in row] for row in matrix]
            for i in range(n):
                for j in range(n):
                    if not (parsed[i][j] + parsed[j][i]).is_zero():
                        raise ValueError(f"poisson matrix is not antisymmetric at ({i},{j})")
            entries = {
                (i, j): parsed[i][j]
                for i in range(n)
                for j in range(i + 1, n)
                if not parsed[i][j].is_zero()
            }
            return PoissonStructure(self.vars, entries)

        return self._built("poisson", build)

    def lie_algebra(self) -> LieAlgebra:
        def build():
            sec = self._section("lie_algebra")
            basis = tuple(sec["basis"])
            brackets = {}
            for key, value in sec.get("brackets", {}).items():
                brackets[_pair_key(key, basis)] = _linear_combination(value, basis)
            return LieAlgebra(basis, brackets)

        return self._built("lie_algebra", build)

    def cobracket(self) -> Cobracket:
        def build():
            sec = self._section("cobracket")
            basis = self.lie_algebra().basis
            comps: dict[int, dict] = {}
            for gen, wedges in sec.items():
                if gen not in basis:
                    raise ValueError(f"unknown generator {gen!r}")
                comps[basis.index(gen)] = {
                    _pair_key(k, basis): parse_hpoly(v) for k, v in wedges.items()
                }
            return Cobracket(len(basis), comps)

        return self._built("cobracket", build)

    def bialgebra(self) -> LieBialgebra:
        return LieBialgebra(self.lie_algebra(), self.cobracket())

    def presentation(self) -> Presentation:
        def build():
            sec = self._section("presentation")
            basis = tuple(sec.get("basis") or self._section("lie_algebra")["basis"])
            pres_stub = Presentation(basis, {})
            relations = {}
            for key, value in sec.get("relations", {}).items():
                element = parse_u_element(value, pres_stub)
                relations[_pair_key(key, basis)] = dict(element.data)
            return Presentation(basis, relations)

        return self._built("presentation", build)

    def coproduct(self) -> DeformedCoproduct:
        def build():
            sec = self._section("coproduct")
            pres = self.presentation()
            images = {}
            for gen, text in sec.items():
                if gen not in pres.basis:
                    raise ValueError(f"unknown generator {gen!r}")
                images[pres.basis.index(gen)] = parse_tensor(text, pres)
            counit = {}
            for gen, text in self.doc.get("counit", {}).items():
                counit[pres.basis.index(gen)] = parse_hpoly(text)
            return DeformedCoproduct(pres, images, counit)

        return self._built("coproduct", build)

    def star(self) -> starprod.StarProduct:
        def build():
            sec = self._section("star")
            kind = sec.get("kind")
            if kind == "moyal":
                rows = sec["matrix"]
                matrix = []
                for row in rows:
                    parsed = []
                    for cell in row:
                        val = self.expr(cell)
                        if not val.is_constant():
                            raise ValueError("moyal matrix entries must be constant")
                        parsed.append(val.constant_value())
                    matrix.append(parsed)
                return MoyalStar(self.vars, matrix, self.order)
            if kind == "explicit":
                ops = []
                for terms in sec.get("operators", []):
                    parsed = [
                        (self.expr(t["coef"]), tuple(t["left"]), tuple(t["right"]))
                        for t in terms
                    ]
                    ops.append(BidiffOperator(self.vars, parsed))
                return ExplicitStar(self.vars, ops, self.order)
            if kind == "gutt":
                return quantumgroup.make_gutt_star(self.lie_algebra(), self.vars, self.order)
            raise ValueError(f"unknown star product kind {kind!r}")

        return self._built("star", build)

    def classical_action(self) -> dict[str, VectorField]:
        def build():
            sec = self._section("classical_action")
            return {
                gen: VectorField(self.vars, [self.expr(c) for c in comps])
                for gen, comps in sec.items()
            }

        return self._built("classical_action", build)

    def one_forms(self) -> dict[str, OneForm]:
        def build():
            sec = self._section("one_forms")
            return {
                gen: OneForm(self.vars, [self.expr(c) for c in comps])
                for gen, comps in sec.items()
            }

        return self._built("one_forms", build)

    def quantum_action(self) -> momentum.QuantumActionData:
        def build():
            sec = self._section("quantum_action")
            sp = self.star()
            pairs = {}
            for gen, ab in sec.items():
                a = parse_series(ab["a"], self.vars, self.order)
                b = parse_series(ab["b"], self.vars, self.order)
                pairs[gen] = (a, b)
            return momentum.QuantumActionData(sp, pairs)

        return self._built("quantum_action", build)

    def momentum_components(self) -> dict[str, RatFunc]:
        def build():
            sec = self._section("momentum")
            return {gen: self.expr(text) for gen, text in sec.items()}

        return self._built("momentum", build)

    def hamiltonians(self) -> list[RatFunc]:
        def build():
            return [self.expr(text) for text in self._section("hamiltonians")]

        return self._built("hamiltonians", build)

    # -- samples ----------------------------------------------------------------

    def _count(self, kind: str, default: int) -> int:
        return int(self.doc.get("sample_counts", {}).get(kind, default))

    def sample_functions(self) -> list[RatFunc]:
        declared = self.doc.get("samples", {}).get("functions")
        if declared:
            return [self.expr(t) for t in declared]
        return SampleGen(self.vars, self.seed).polynomials(self._count("functions", 4))

    def sample_pairs(self) -> list[tuple[RatFunc, RatFunc]]:
        declared = self.doc.get("samples", {}).get("pairs")
        if declared:
            return [(self.expr(a), self.expr(b)) for a, b in declared]
        return SampleGen(self.vars, self.seed + 1).pairs(self._count("pairs", 4))

    def sample_triples(self) -> list[tuple[RatFunc, RatFunc, RatFunc]]:
        declared = self.doc.get("samples", {}).get("triples")
        if declared:
            return [(self.expr(a), self.expr(b), self.expr(c)) for a, b, c in declared]
        return SampleGen(self.vars, self.seed + 2).triples(self._count("triples", 3))


# -- check registry --------------------------------------------------------------


def _run_jacobi(sc: Scenario) -> list[CheckResult]:
    return [poissongeo.check_jacobi(sc.poisson())]


def _run_jacobi_lie(sc: Scenario) -> list[CheckResult]:
    return [liebialg.check_jacobi_lie(sc.lie_algebra())]


def _run_canonical_action(sc: Scenario) -> list[CheckResult]:
    return [
        poissongeo.check_canonical_action(
            sc.classical_action(), sc.lie_algebra(), sc.poisson()
        )
    ]


def _run_poisson_action(sc: Scenario) -> list[CheckResult]:
    return [
        poissongeo.check_poisson_action(
            sc.classical_action(), sc.lie_algebra(), sc.cobracket(), sc.poisson()
        )
    ]


def _run_classical_mm(sc: Scenario) -> list[CheckResult]:
    return [
        momentum.check_classical_mm(
            sc.momentum_components(), sc.classical_action(), sc.poisson()
        )
    ]


def _run_equivariance(sc: Scenario) -> list[CheckResult]:
    return [
        momentum.check_equivariance(sc.momentum_components(), sc.lie_algebra(), sc.poisson())
    ]


def _run_noether(sc: Scenario) -> list[CheckResult]:
    J, pi = sc.momentum_components(), sc.poisson()
    for H in sc.hamiltonians():
        result = momentum.check_noether(J, H, pi)
        if result.status == FAIL:
            return [result]
    return [CheckResult("noether", PASS)]


def _run_inf_mm(sc: Scenario) -> list[CheckResult]:
    return momentum.check_infinitesimal_mm(sc.one_forms(), sc.bialgebra(), sc.poisson())


def _run_koszul(sc: Scenario) -> list[CheckResult]:
    pi = sc.poisson()
    for f, g in sc.sample_pairs():
        lhs = poissongeo.koszul_bracket(
            poissongeo.exterior_d_function(f, pi.vars),
            poissongeo.exterior_d_function(g, pi.vars),
            pi,
        )
        rhs = poissongeo.exterior_d_function(poissongeo.poisson_bracket(f, g, pi), pi.vars)
        if lhs != rhs:
            witness = f"f = {f}, g = {g} -> {lhs - rhs}"
            return [CheckResult("koszul_exact_forms", FAIL, witness=witness)]
    return [CheckResult("koszul_exact_forms", PASS)]


def _run_star_associativity(sc: Scenario) -> list[CheckResult]:
    return [starprod.check_associativity(sc.star(), sc.sample_triples())]


def _run_star_first_order(sc: Scenario) -> list[CheckResult]:
    return [starprod.check_first_order(sc.star(), sc.poisson(), sc.sample_pairs())]


def _run_star_unit(sc: Scenario) -> list[CheckResult]:
    sp = sc.star()
    one = HbarSeries.one(sc.vars, sp.order)
    for f in sc.sample_functions():
        fs = HbarSeries.from_ratfunc(f, sp.order)
        if star_multiply(one, fs, sp) != fs or star_multiply(fs, one, sp) != fs:
            return [CheckResult("star_unit", FAIL, witness=str(f))]
    return [CheckResult("star_unit", PASS)]


def _run_coassociativity(sc: Scenario) -> list[CheckResult]:
    return [quantumgroup.check_coassociativity(sc.coproduct(), max_degree=3)]


def _run_counit_antipode(sc: Scenario) -> list[CheckResult]:
    return [quantumgroup.check_counit_antipode(sc.coproduct(), max_degree=3)]


def _run_coproduct_welldefined(sc: Scenario) -> list[CheckResult]:
    return [quantumgroup.check_coproduct_welldefined(sc.coproduct())]


def _run_square_zero(sc: Scenario) -> list[CheckResult]:
    return [quantumgroup.check_square_zero(sc.coproduct(), max_length=3)]


def _run_semiclassical_cobracket(sc: Scenario) -> list[CheckResult]:
    extracted = quantumgroup.semiclassical_cobracket(sc.coproduct())
    declared = sc.cobracket()
    pres = sc.presentation()
    if extracted == declared:
        return [
            CheckResult(
                "semiclassical_cobracket", PASS, notes=(quantumgroup.DELTA1_NOTE,)
            )
        ]
    parts = []
    for i, w in extracted.components.items():
        stub = LieAlgebra.abelian(pres.basis)
        parts.append(f"delta({pres.basis[i]}) = {stub.format_wedge(w)}")
    witness = "; ".join(parts) if parts else "extracted cobracket is zero"
    return [
        CheckResult(
            "semiclassical_cobracket",
            FAIL,
            witness=witness,
            notes=(quantumgroup.DELTA1_NOTE,),
        )
    ]


def _run_cocycle(sc: Scenario) -> list[CheckResult]:
    return [liebialg.check_cocycle(sc.bialgebra())]


def _run_cojacobi(sc: Scenario) -> list[CheckResult]:
    return [liebialg.check_cojacobi(sc.bialgebra())]


def _run_hopf_action(sc: Scenario) -> list[CheckResult]:
    return [momentum.check_hopf_action(sc.quantum_action(), sc.coproduct(), sc.sample_pairs())]


def _run_bracket_representation(sc: Scenario) -> list[CheckResult]:
    pres = sc.presentation()
    qa = sc.quantum_action()
    samples = sc.sample_functions()
    def certainty(r: CheckResult) -> float:
        return float("inf") if r.order is None else r.order

    worst: CheckResult | None = None
    for i in range(pres.dim):
        for j in range(i + 1, pres.dim):
            rhs = UElement(pres, dict(pres.relation(i, j)))
            result = momentum.check_bracket_representation(
                qa, pres, pres.basis[i], pres.basis[j], rhs, samples
            )
            if result.status == FAIL:
                return [result]
            if worst is None or certainty(result) < certainty(worst):
                worst = result
    return [worst or CheckResult("bracket_representation", PASS)]


def _run_commutator_formula(sc: Scenario) -> list[CheckResult]:
    qa = sc.quantum_action()
    gens = qa.generators()
    if len(gens) < 2:
        raise ScenarioError(
            "commutator_formula needs two generators", section="quantum_action"
        )
    gen_a, gen_b = gens[0], gens[1]
    a, _ = qa.pairs[gen_a]
    a2, b2 = qa.pairs[gen_b]
    one = HbarSeries.one(sc.vars, qa.sp.order)
    if a2 != a or not star_multiply(b2, a, qa.sp).agrees_with(one, qa.sp.order):
        raise ScenarioError(
            f"generator {gen_b!r} must act through (a, a^-1)", section="quantum_action"
        )
    return [momentum.check_commutator_formula(qa, gen_a, gen_b, sc.sample_functions())]


def _run_semiclassical_poisson_action(sc: Scenario) -> list[CheckResult]:
    return [
        momentum.check_semiclassical_poisson_action(
            sc.quantum_action(), sc.bialgebra(), sc.poisson()
        )
    ]


def _run_qmm_equivariance(sc: Scenario) -> list[CheckResult]:
    return [
        momentum.check_qmm_equivariance(
            sc.quantum_action(), sc.presentation(), sc.sample_functions()
        )
    ]


def _run_higher_action_consistency(sc: Scenario) -> list[CheckResult]:
    qa = sc.quantum_action()
    gens = qa.generators()
    if len(gens) < 2:
        raise ScenarioError(
            "higher_action_consistency needs two generators", section="quantum_action"
        )
    word = [gens[0], gens[1]]
    samples = [tuple(pair) for pair in sc.sample_pairs()]
    return [momentum.check_higher_action_consistency(qa, word, samples)]


# name -> (required sections, runner)
CHECKS: dict[str, tuple[tuple[str, ...], object]] = {
    "jacobi": (("poisson",), _run_jacobi),
    "jacobi_lie": (("lie_algebra",), _run_jacobi_lie),
    "canonical_action": (("classical_action", "lie_algebra", "poisson"), _run_canonical_action),
    "poisson_action": (
        ("classical_action", "lie_algebra", "cobracket", "poisson"),
        _run_poisson_action,
    ),
    "classical_mm": (("momentum", "classical_action", "poisson"), _run_classical_mm),
    "equivariance": (("momentum", "lie_algebra", "poisson"), _run_equivariance),
    "noether": (("momentum", "hamiltonians", "poisson"), _run_noether),
    "inf_mm": (("one_forms", "lie_algebra", "cobracket", "poisson"), _run_inf_mm),
    "koszul_exact_forms": (("poisson",), _run_koszul),
    "star_associativity": (("star",), _run_star_associativity),
    "star_first_order": (("star", "poisson"), _run_star_first_order),
    "star_unit": (("star",), _run_star_unit),
    "coassociativity": (("presentation", "coproduct"), _run_coassociativity),
    "counit_antipode": (("presentation", "coproduct"), _run_counit_antipode),
    "coproduct_welldefined": (("presentation", "coproduct"), _run_coproduct_welldefined),
    "square_zero": (("presentation", "coproduct"), _run_square_zero),
    "semiclassical_cobracket": (
        ("presentation", "coproduct", "cobracket", "lie_algebra"),
        _run_semiclassical_cobracket,
    ),
    "cocycle": (("lie_algebra", "cobracket"), _run_cocycle),
    "cojacobi": (("lie_algebra", "cobracket"), _run_cojacobi),
    "hopf_action": (
        ("quantum_action", "presentation", "coproduct", "star"),
        _run_hopf_action,
    ),
    "bracket_representation": (
        ("quantum_action", "presentation", "star"),
        _run_bracket_representation,
    ),
    "commutator_formula": (("quantum_action", "star"), _run_commutator_formula),
    "semiclassical_poisson_action": (
        ("quantum_action", "lie_algebra", "cobracket", "poisson", "star"),
        _run_semiclassical_poisson_action,
    ),
    "qmm_equivariance": (
        ("quantum_action", "presentation", "star"),
        _run_qmm_equivariance,
    ),
    "higher_action_consistency": (("quantum_action", "star"), _run_higher_action_consistency),
}


# -- runner ------------------------------------------------------------------------


def run_scenario(
    path: str | Path,
    order: int | None = None,
    seed: int | None = None,
    checks: list[str] | None = None,
) -> Report:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}")
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}")

    sc = Scenario(doc, order, seed)
    requested = doc.get("checks")
    if not isinstance(requested, list) or not requested:
        raise ScenarioError("missing or empty check list", section="checks")
    if checks is not None:
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise ScenarioError(f"unknown check {unknown[0]!r}", section="checks")
        requested = [c for c in requested if c in checks]
    report = Report(scenario=path.stem, description=doc.get("description", ""))
    for check in requested:
        if check not in CHECKS:
            raise ScenarioError(f"unknown check {check!r}", section="checks")
        required, runner = CHECKS[check]
        for section in required:
            if not sc.has(section):
                raise ScenarioError(
                    f"check {check!r} needs the {section!r} section", section=section
                )
        report.add(*runner(sc))
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momenta",
        description="run symbolic verification scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run the checks declared in a scenario file")
    verify.add_argument("scenario", help="path to a scenario JSON document")
    verify.add_argument("--order", type=int, default=None, help="override truncation order")
    verify.add_argument("--seed", type=int, default=None, help="override sample seed")
    verify.add_argument(
        "--checks", default=None, help="comma-separated subset of checks to run"
    )
    verify.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    seed = args.seed
    if seed is None and os.environ.get("MOMENTA_SEED"):
        try:
            seed = int(os.environ["MOMENTA_SEED"])
        except ValueError:
            print("MOMENTA_SEED must be an integer", file=sys.stderr)
            return 2
    checks = args.checks.split(",") if args.checks else None
    try:
        report = run_scenario(args.scenario, order=args.order, seed=seed, checks=checks)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_text() if args.format == "text" else report.to_json())
    return 0 if report.passed() else 1


if __name__ == "__main__":
    sys.exit(main())
