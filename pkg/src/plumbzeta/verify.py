"""Verification suites: every cross-formula identity, run over the graph zoo."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import zoo
from .closure import j_closure, j_closure_bruteforce
from .errors import NonUniqueMinimal
from .functional import functional_equation_check
from .graph import GraphClass, ResolutionGraph, intersection_matrix
from .hilbert import hilbert_round_trip, lattice_points
from .lattice import LatticeContext, build_context, check_negative_definite, graded_vectors
from .motivic import NotDivisible, projective_class
from .series import TruncatedSeries, macdonald_series
from .zeta import (
    cusp_closed_form,
    motivic_cusp,
    motivic_eca_product,
    motivic_eca_strata,
    motivic_tree,
    zeta_arrangement,
    zeta_binomial,
    zeta_incexc,
    zeta_product,
)

SUITES = ("tree-equivalence", "cusp-identities", "motivic", "functional-equation", "closure", "macdonald")


@dataclass(frozen=True)
class Check:
    name: str
    identity: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "identity": self.identity, "result": "pass" if self.passed else "fail"}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, identity: str, fn: Callable[[], bool | tuple[bool, str]]) -> None:
        try:
            result = fn()
        except (AssertionError, ArithmeticError, NotDivisible) as exc:
            result = (False, f"{type(exc).__name__}: {exc}")
        ok, detail = result if isinstance(result, tuple) else (result, "")
        self.checks.append(Check(name, identity, bool(ok), detail))

    def verdicts(self) -> dict[str, str]:
        return {c.name: "pass" if c.passed else "fail" for c in self.checks}


def _first_difference(a: TruncatedSeries, b: TruncatedSeries) -> tuple[bool, str]:
    diffs = a.differences(b)
    if not diffs:
        return True, ""
    e, x, y = diffs[0]
    return False, f"{len(diffs)} coefficients differ, first at {list(e)}: {x} vs {y}"


def _all_equal(series: Sequence[TruncatedSeries]) -> tuple[bool, str]:
    for other in series[1:]:
        ok, detail = _first_difference(series[0], other)
        if not ok:
            return ok, detail
    return True, ""


def _graphs(kind: GraphClass, extra: ResolutionGraph | None) -> list[tuple[str, LatticeContext]]:
    out = [(name, build_context(g)) for name, g in zoo.graphs(kind).items()]
    if extra is not None:
        ctx = build_context(extra)
        if ctx.graph_class is kind:
            out.append(("input", ctx))
    return out


# -- random graphs ----------------------------------------------------------
def random_tree(rng: random.Random, max_vertices: int = 8, eulers: tuple[int, int] = (-5, -2)) -> ResolutionGraph:
    """Random negative definite tree of rational curves (rejection sampling)."""
    while True:
        n = rng.randint(1, max_vertices)
        vertices = [(f"v{i}", rng.randint(*eulers)) for i in range(n)]
        edges = [(f"v{rng.randrange(i)}", f"v{i}") for i in range(1, n)]
        g = ResolutionGraph.from_data(vertices, edges)
        if check_negative_definite(intersection_matrix(g)):
            return g


def random_graph(rng: random.Random, max_vertices: int = 6, extra_edges: int = 6) -> ResolutionGraph:
    """Random connected multigraph, loops allowed, made definite by diagonal dominance."""
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    for _ in range(rng.randint(0, extra_edges)):
        edges.append((rng.randrange(n), rng.randrange(n)))
    off = [0] * n
    for u, v in edges:
        if u != v:
            off[u] += 1
            off[v] += 1
    vertices = [(f"v{i}", -(off[i] + 1 + rng.randint(0, 2))) for i in range(n)]
    return ResolutionGraph.from_data(vertices, [(f"v{u}", f"v{v}") for u, v in edges])


@dataclass(frozen=True)
class ClosureTrials:
    trials: int
    mismatches: int
    order_dependent: int
    not_idempotent: int
    grown: int = 0
    first_failure: str = ""

    @property
    def passed(self) -> bool:
        return not (self.mismatches or self.order_dependent or self.not_idempotent)


def closure_trials(seed: int, trials: int = 1000, shuffles: int = 100, max_vertices: int = 6) -> ClosureTrials:
    rng = random.Random(seed)
    mismatches = order_dependent = not_idempotent = grown = 0
    first = ""
    for t in range(trials):
        g = random_graph(rng, max_vertices)
        ctx = build_context(g)
        n = ctx.size
        # skewed towards small a_v so that closures actually grow
        a = tuple(min(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(n))
        start = frozenset(v for v in range(n) if rng.random() < 0.5)
        result = j_closure(ctx, a, start).closure
        grown += result != start
        try:
            brute = j_closure_bruteforce(ctx, a, start)
        except NonUniqueMinimal as exc:
            brute = None
            first = first or f"trial {t}: {exc}"
        if brute != result:
            mismatches += 1
            first = first or f"trial {t}: closure {sorted(result)} vs brute force {brute and sorted(brute)}"
        for _ in range(shuffles):
            if j_closure(ctx, a, start, choose=rng.choice).closure != result:
                order_dependent += 1
                first = first or f"trial {t}: tie-break changes the closure"
                break
        if j_closure(ctx, a, result).closure != result:
            not_idempotent += 1
            first = first or f"trial {t}: J(J(I)) != J(I)"
    return ClosureTrials(trials, mismatches, order_dependent, not_idempotent, grown, first)


# -- suites -----------------------------------------------------------------
def suite_tree_equivalence(order: int = 8, extra: ResolutionGraph | None = None, seed: int = 0, random_trees: int = 20) -> SuiteReport:
    report = SuiteReport("tree-equivalence")
    items = _graphs(GraphClass.TREE_RATIONAL, extra)
    rng = random.Random(seed)
    items += [(f"random{i}", build_context(random_tree(rng))) for i in range(random_trees)]
    for name, ctx in items:
        report.add(
            f"{name}: product = binomial = incexc = arrangement",
            "four expressions of the tree series agree",
            lambda ctx=ctx: _all_equal([f(ctx, order) for f in (zeta_product, zeta_binomial, zeta_incexc, zeta_arrangement)]),
        )
    return report


def _face_indicator(ctx: LatticeContext, series: TruncatedSeries) -> tuple[bool, str]:
    edges = {frozenset(e) for e in ctx.graph.edges}
    for exp in graded_vectors(ctx.size, series.order):
        support = frozenset(v for v, x in enumerate(exp) if x)
        face = len(support) <= 1 or support in edges
        want = 1 if face else 0
        if series[exp] != want:
            return False, f"coefficient at {list(exp)} is {series[exp]}, expected {want}"
    return True, ""


def _small_cusp_shape(ctx: LatticeContext, series: TruncatedSeries) -> tuple[bool, str]:
    n = ctx.size
    for exp in graded_vectors(n, series.order):
        c = series[exp]
        if n == 1:
            want = exp[0] if exp[0] else 1
        elif all(exp):
            want = 2
        else:
            continue
        if c != want:
            return False, f"coefficient at {list(exp)} is {c}, expected {want}"
    return True, ""


def suite_cusp_identities(order: int = 8, extra: ResolutionGraph | None = None) -> SuiteReport:
    report = SuiteReport("cusp-identities")
    for name, ctx in _graphs(GraphClass.CUSP_CYCLE, extra):
        inc = zeta_incexc(ctx, order)
        report.add(
            f"{name}: incexc = arrangement = closed form",
            "cusp series via chi sums, arrangement Euler characteristics and the closed face formula",
            lambda ctx=ctx, inc=inc: _all_equal([inc, zeta_arrangement(ctx, order), cusp_closed_form(ctx, order)]),
        )
        if ctx.size >= 3:
            report.add(f"{name}: face indicator", "coefficients are 1 exactly on faces of the cycle", lambda ctx=ctx, inc=inc: _face_indicator(ctx, inc))
        else:
            label = "coefficient of x^k is k" if ctx.size == 1 else "mixed coefficients equal 2"
            report.add(f"{name}: {label}", "short cusp cycle closed forms", lambda ctx=ctx, inc=inc: _small_cusp_shape(ctx, inc))

        def round_trip(ctx=ctx, inc=inc):
            rt = hilbert_round_trip(ctx, inc, lattice_points(ctx, -1, 2 if ctx.size > 3 else 3))
            if rt.mismatches:
                a, want, got = rt.mismatches[0]
                return False, f"{len(rt.mismatches)} mismatches, first at {list(a)}: {got} vs {want}"
            return rt.checked > 0, f"{rt.checked} lattice points"

        report.add(f"{name}: Hilbert round trip", "h from p over L, then p back by the alternating E_I sum", round_trip)
    return report


def suite_motivic(order: int = 6, strata_order: int = 5, extra: ResolutionGraph | None = None) -> SuiteReport:
    report = SuiteReport("motivic")
    for name, ctx in _graphs(GraphClass.TREE_RATIONAL, extra):
        mt = motivic_tree(ctx, order)
        report.add(f"{name}: tree motivic = Cartier product", "motivic series of a tree equals the Cartier divisor product", lambda ctx=ctx, mt=mt: _first_difference(mt, motivic_eca_product(ctx, order)))
        report.add(f"{name}: L=1 specialization", "motivic tree series at L=1 is the topological series", lambda ctx=ctx, mt=mt: _first_difference(mt.specialize_L(), zeta_product(ctx, order)))
    for name, ctx in _graphs(GraphClass.TREE_RATIONAL, extra) + _graphs(GraphClass.CUSP_CYCLE, extra):
        report.add(
            f"{name}: strata = product",
            "stratum enumeration of effective Cartier divisors matches the product formula",
            lambda ctx=ctx: _first_difference(motivic_eca_strata(ctx, strata_order), motivic_eca_product(ctx, strata_order)),
        )
    cusp_order = max(order, 8)
    for name, ctx in _graphs(GraphClass.CUSP_CYCLE, extra):
        report.add(
            f"{name}: (L-1) divides Cartier series - 1, L=1 gives closed form",
            "cusp motivic series from the Cartier divisor series",
            lambda ctx=ctx: _first_difference(motivic_cusp(ctx, cusp_order).specialize_L(), cusp_closed_form(ctx, cusp_order)),
        )
        if ctx.size == 1:
            def projective(ctx=ctx):
                mc = motivic_cusp(ctx, cusp_order)
                for k in range(1, cusp_order + 1):
                    if mc[(k,)] != projective_class(k):
                        return False, f"coefficient of x^{k} is {mc[(k,)]}"
                return True, ""

            report.add(f"{name}: coefficients [P^(k-1)]", "one-vertex cusp motivic coefficients", projective)
    return report


def suite_functional_equation(extra: ResolutionGraph | None = None) -> SuiteReport:
    report = SuiteReport("functional-equation")
    for name, ctx in _graphs(GraphClass.CUSP_CYCLE, extra):
        report.add(f"{name}: motivic functional equation", "L^(c-1) t^(Z_K-E) Z(L, 1/(L t)) = Z(L, t)", lambda ctx=ctx: functional_equation_check(ctx))
    for name, ctx in _graphs(GraphClass.TREE_RATIONAL, extra):
        report.add(f"{name}: classical functional equation", "t^(Z_K-E) Z(1/t) = Z(t)", lambda ctx=ctx: functional_equation_check(ctx, motivic=False))
        report.add(f"{name}: motivic functional equation", "L^(c-1) t^(Z_K-E) Z(L, 1/(L t)) = Z(L, t)", lambda ctx=ctx: functional_equation_check(ctx))
    return report


def suite_closure(seed: int = 0, trials: int = 1000, shuffles: int = 100) -> SuiteReport:
    report = SuiteReport("closure")
    result = closure_trials(seed, trials, shuffles)

    def summary():
        detail = (
            f"{result.trials} trials ({result.grown} with I != J(I)), {result.mismatches} brute-force mismatches, "
            f"{result.order_dependent} order-dependent, {result.not_idempotent} not idempotent"
        )
        return result.passed, detail + (f"; {result.first_failure}" if result.first_failure else "")

    report.add(f"closure: {trials} random instances (seed {seed})", "J-closure is the unique minimal closed superset, order independent and idempotent", summary)
    return report


def suite_macdonald(max_k: int = 20, chi_range: int = 3, order: int = 10) -> SuiteReport:
    report = SuiteReport("macdonald")

    def projective_line():
        s = macdonald_series(2, max_k)
        bad = [k for k in range(max_k + 1) if s[(k,)] != k + 1]
        return not bad, f"wrong at k={bad[0]}" if bad else ""

    def multiplicative():
        for c1 in range(-chi_range, chi_range + 1):
            for c2 in range(-chi_range, chi_range + 1):
                if macdonald_series(c1 + c2, order) != macdonald_series(c1, order) * macdonald_series(c2, order):
                    return False, f"fails for chi = {c1}, {c2}"
        return True, ""

    report.add("macdonald: chi(S^k P^1) = k + 1", "symmetric products of the projective line", projective_line)
    report.add("macdonald: multiplicativity", "generating series of chi(S^k X) is multiplicative in chi(X)", multiplicative)
    return report


def run_suite(name: str, seed: int = 0, extra: ResolutionGraph | None = None) -> list[SuiteReport]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed, extra)]
    if name == "tree-equivalence":
        return [suite_tree_equivalence(extra=extra, seed=seed)]
    if name == "cusp-identities":
        return [suite_cusp_identities(extra=extra)]
    if name == "motivic":
        return [suite_motivic(extra=extra)]
    if name == "functional-equation":
        return [suite_functional_equation(extra=extra)]
    if name == "closure":
        return [suite_closure(seed)]
    if name == "macdonald":
        return [suite_macdonald()]
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
