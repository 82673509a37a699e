"""Constructors for the topological, motivic and Cartier-divisor series.

Every coefficient-level formula is computed per exponent so that the
different routes are genuinely independent and their agreement is a test.
Series live in the variables x_v = t^{E_v*}, truncated at total degree N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .closure import complement_class, complement_euler, incexc_coefficient
from .errors import IntegralityError, UnsupportedClass
from .graph import GraphClass
from .lattice import LatticeContext, enumerate_Sprime
from .motivic import ONE, L, MotivicPoly, divide_by_L_minus_1
from .series import (
    TruncatedSeries,
    expand_binomial_power,
    expand_geometric,
    symprod_class_series,
)

TREE = GraphClass.TREE_RATIONAL
CUSP = GraphClass.CUSP_CYCLE

# bound on 2^|V| * batch cells handled per kernel call
_BATCH_CELLS = 1 << 22


def _require(ctx: LatticeContext, allowed: Sequence[GraphClass], what: str, cls: GraphClass | None = None) -> GraphClass:
    cls = ctx.graph_class if cls is None else cls
    if cls not in allowed:
        names = " or ".join(str(c) for c in allowed)
        raise UnsupportedClass(f"{what} needs a {names} graph, got {cls}")
    return cls


def _require_rational_curves(ctx: LatticeContext, what: str) -> None:
    if any(ctx.graph.genera):
        raise UnsupportedClass(f"{what} needs every curve to be rational (genus 0)")


def zeta_product(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """prod_v (1 - x_v)^{kappa_v - 2}."""
    n = ctx.size
    result = TruncatedSeries.one(n, order)
    for v, kappa in enumerate(ctx.valencies):
        result = result * expand_binomial_power(kappa - 2, order, v, n)
    return result


def generalized_binomial(b: int, a: int) -> int:
    """b(b-1)...(b-a+1)/a! for any integer b and a >= 0."""
    num = 1
    for i in range(a):
        num *= b - i
    return num // math.factorial(a)


def zeta_binomial(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """Coefficientwise prod_v (-1)^{a_v} binom(kappa_v - 2, a_v)."""
    kappas = ctx.valencies
    terms = {}
    for exp in enumerate_Sprime(ctx, order):
        c = 1
        for a, k in zip(exp, kappas):
            c *= (-1) ** a * generalized_binomial(k - 2, a)
            if not c:
                break
        terms[exp] = c
    return TruncatedSeries(ctx.size, order, terms)


def _offdiag(ctx: LatticeContext) -> np.ndarray:
    m = np.array(ctx.matrix, dtype=np.int64)
    np.fill_diagonal(m, 0)
    return m


def _chi_reduced_table(ctx: LatticeContext) -> np.ndarray:
    return np.array([ctx.chi_reduced(mask) for mask in range(1 << ctx.size)], dtype=np.int64)


def _batches(exps: list[tuple[int, ...]], n: int):
    step = max(1, _BATCH_CELLS >> n)
    for lo in range(0, len(exps), step):
        yield lo, np.array(exps[lo:lo + step], dtype=np.int64).reshape(-1, n)


def _subset_signs(n: int) -> np.ndarray:
    """(-1)^{|I|} for every mask I."""
    pop = np.array([bin(m).count("1") for m in range(1 << n)])
    return np.where(pop % 2 == 0, 1, -1).astype(np.int64)


def _dimension_tables(ctx: LatticeContext, exps: list[tuple[int, ...]], cls: GraphClass):
    """Yield (offset, dims) with dims[b, I] = dim of the intersection of T_v(l'), v in I.

    Uses chi(l' + E_J) = chi(l') + chi(E_J) + sum_{v in J} a_v, so the
    difference chi(l' + E) - chi(l' + E_J) is an integer computation.
    """
    n = ctx.size
    off = _offdiag(ctx)
    chi_red = _chi_reduced_table(ctx)
    full = (1 << n) - 1
    bits = (np.arange(1 << n)[:, None] >> np.arange(n)) & 1
    for lo, a in _batches(exps, n):
        table = _kernels.closure_table(off, a)
        sub = a @ bits.T
        top = chi_red[full] + a.sum(axis=1)
        dims = top[:, None] - chi_red[table] - np.take_along_axis(sub, table, axis=1)
        ambient = a.sum(axis=1) + (1 if cls is TREE else 0)
        zero_rows = ~a.any(axis=1)
        if cls is CUSP and zero_rows.any():
            dims[zero_rows] = 0
            dims[zero_rows, 0] = 1
            ambient = np.where(zero_rows, 1, ambient)
        if (dims < 0).any():
            raise IntegralityError("negative intersection dimension")
        if not np.array_equal(dims[:, 0], ambient):
            raise AssertionError("ambient dimension disagrees with -(l', E) (+1 for trees)")
        yield lo, dims


def zeta_incexc(ctx: LatticeContext, order: int, cls: GraphClass | None = None, method: str = "kernel") -> TruncatedSeries:
    """sum_{l'} sum_I (-1)^{|I|+1} chi(l' + E_{J(l',I)}) t^{l'}; for cusps the l'=0 term is 1."""
    cls = _require(ctx, (TREE, CUSP), "the inclusion-exclusion series", cls)
    exps = enumerate_Sprime(ctx, order)
    if method == "reference":
        terms = {e: incexc_coefficient(ctx, e, cls) for e in exps}
        return TruncatedSeries(ctx.size, order, terms)
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    off = _offdiag(ctx)
    chi_red = _chi_reduced_table(ctx)
    terms = {}
    for lo, a in _batches(exps, ctx.size):
        # the chi(l') part cancels: sum_I (-1)^{|I|+1} = 0
        sums = _kernels.incexc_sums(off, chi_red, a)
        for k, c in enumerate(sums.tolist()):
            terms[exps[lo + k]] = c
    if cls is CUSP:
        terms[(0,) * ctx.size] = 1
    return TruncatedSeries(ctx.size, order, terms)


def zeta_arrangement(ctx: LatticeContext, order: int, cls: GraphClass | None = None, method: str = "kernel") -> TruncatedSeries:
    """sum_{l'} chi_top(P(T(l') minus the T_v(l'))) t^{l'}, Euler characteristics as sum_I (-1)^|I| dim."""
    cls = _require(ctx, (TREE, CUSP), "the arrangement series", cls)
    exps = enumerate_Sprime(ctx, order)
    if method == "reference":
        return TruncatedSeries(ctx.size, order, {e: complement_euler(ctx, e, cls) for e in exps})
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    sign = _subset_signs(ctx.size)
    terms = {}
    for lo, dims in _dimension_tables(ctx, exps, cls):
        for k, c in enumerate((dims @ sign).tolist()):
            terms[exps[lo + k]] = c
    return TruncatedSeries(ctx.size, order, terms)


def _geometric_tail(v: int, n: int, order: int) -> TruncatedSeries:
    """x_v / (1 - x_v)."""
    return expand_geometric(1, order, v, n) - TruncatedSeries.one(n, order)


def cusp_closed_form(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """1 + sum_v x_v/(1-x_v) + sum_{edges} x_u x_v/((1-x_u)(1-x_v)), in its three size variants."""
    _require(ctx, (CUSP,), "the cusp closed form")
    n = ctx.size
    one = TruncatedSeries.one(n, order)
    tails = [_geometric_tail(v, n, order) for v in range(n)]
    if n == 1:
        # 1 + x/(1-x)^2
        x = TruncatedSeries.monomial((1,), order)
        return one + x * expand_binomial_power(-2, order)
    result = one
    for t in tails:
        result = result + t
    if n == 2:
        return result + (tails[0] * tails[1]).scale(2)
    for u, v in ctx.graph.edges:
        result = result + tails[u] * tails[v]
    return result


def cusp_face_series(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """The edge-multiset formula applied verbatim (a loop counts as an edge v-v)."""
    n = ctx.size
    tails = [_geometric_tail(v, n, order) for v in range(n)]
    result = TruncatedSeries.one(n, order)
    for t in tails:
        result = result + t
    for u, v in ctx.graph.edges:
        result = result + tails[u] * tails[v]
    return result


def motivic_tree(ctx: LatticeContext, order: int, method: str = "kernel") -> TruncatedSeries:
    """sum_{l'} sum_I (-1)^{|I|} (L^{d_I} - 1)/(L - 1) t^{l'} with d_I the intersection dimensions."""
    _require(ctx, (TREE,), "the motivic tree series")
    exps = enumerate_Sprime(ctx, order)
    if method == "reference":
        return TruncatedSeries(ctx.size, order, {e: complement_class(ctx, e, TREE) for e in exps}, "motivic")
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    sign = _subset_signs(ctx.size)
    positive = sign > 0
    terms = {}
    for lo, dims in _dimension_tables(ctx, exps, TREE):
        rows, width = dims.shape[0], int(dims.max()) + 1
        flat = dims + (np.arange(rows)[:, None] * width)
        plus = np.bincount(flat[:, positive].ravel(), minlength=rows * width)
        minus = np.bincount(flat[:, ~positive].ravel(), minlength=rows * width)
        hist = (plus - minus).reshape(rows, width)
        for k in range(rows):
            terms[exps[lo + k]] = divide_by_L_minus_1(MotivicPoly(hist[k].tolist()))
    return TruncatedSeries(ctx.size, order, terms, "motivic")


def _edge_factor(u: int, v: int, n: int, order: int) -> TruncatedSeries:
    """1 - x_u - x_v + L x_u x_v; for a loop u = v this is 1 - 2 x_v + L x_v^2."""
    terms: dict = {}

    def add(exp, c):
        exp = tuple(exp)
        terms[exp] = terms.get(exp, 0) + c

    zero = [0] * n
    add(zero, ONE)
    for w in (u, v):
        e = list(zero)
        e[w] += 1
        add(e, MotivicPoly((-1,)))
    e = list(zero)
    e[u] += 1
    e[v] += 1
    add(e, L)
    return TruncatedSeries(n, order, terms, "motivic")


def motivic_eca_product(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """prod_edges (1 - x_u - x_v + L x_u x_v) / prod_v (1 - x_v)(1 - L x_v)."""
    _require_rational_curves(ctx, "the Cartier divisor series")
    n = ctx.size
    result = TruncatedSeries.one(n, order, "motivic")
    for v in range(n):
        result = result * expand_geometric(1, order, v, n).to_motivic() * expand_geometric(L, order, v, n)
    for u, v in ctx.graph.edges:
        result = result * _edge_factor(u, v, n, order)
    return result


def motivic_eca_strata(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """Sum of the classes of all strata of effective Cartier divisors on E.

    A stratum picks the set of contributing intersection points, a pair of
    local multiplicities (k, k') >= 1 at each, and the degrees a°_v of the
    part supported on the smooth locus E°_v.  Its class is
    (L - 1)^{#points} * prod_v [S^{a°_v} E°_v].
    """
    _require_rational_curves(ctx, "the Cartier divisor strata")
    n = ctx.size
    edges = ctx.graph.edges
    interior = [
        [symprod_class_series(k, order)[(i,)] for i in range(order + 1)] for k in ctx.valencies
    ]
    lm1 = L - 1
    out: dict[tuple[int, ...], MotivicPoly] = {}

    def place_interior(v: int, degrees: list[int], budget: int, weight: MotivicPoly) -> None:
        if v == n:
            key = tuple(degrees)
            out[key] = out[key] + weight if key in out else weight
            return
        for i in range(budget + 1):
            cls_i = interior[v][i]
            if not cls_i:
                continue
            degrees[v] += i
            place_interior(v + 1, degrees, budget - i, weight * cls_i)
            degrees[v] -= i

    def place_points(k: int, degrees: list[int], budget: int, weight: MotivicPoly) -> None:
        if k == len(edges):
            place_interior(0, degrees, budget, weight)
            return
        place_points(k + 1, degrees, budget, weight)
        u, v = edges[k]
        for ku in range(1, budget):
            for kv in range(1, budget - ku + 1):
                # the branch along E_u meets E_v with multiplicity ku, and vice versa
                degrees[v] += ku
                degrees[u] += kv
                place_points(k + 1, degrees, budget - ku - kv, weight * lm1)
                degrees[v] -= ku
                degrees[u] -= kv

    place_points(0, [0] * n, order, ONE)
    return TruncatedSeries(n, order, out, "motivic")


def motivic_cusp(ctx: LatticeContext, order: int) -> TruncatedSeries:
    """1 + (Z^ECa - 1)/(L - 1), coefficientwise; divisibility is asserted."""
    _require(ctx, (CUSP,), "the motivic cusp series")
    eca = motivic_eca_product(ctx, order)
    origin = (0,) * ctx.size
    if eca[origin] != ONE:
        raise AssertionError("constant term of the Cartier divisor series is not 1")
    terms = {e: divide_by_L_minus_1(c) for e, c in eca.items() if e != origin}
    terms[origin] = ONE
    return TruncatedSeries(ctx.size, order, terms, "motivic")


SLOTS = (
    "z_product",
    "z_binomial",
    "z_incexc",
    "z_arrangement",
    "z_cusp_closed",
    "motivic_tree",
    "motivic_eca_product",
    "motivic_eca_strata",
    "motivic_cusp",
)


@dataclass
class SeriesBundle:
    graph_class: GraphClass
    order: int
    slots: dict[str, TruncatedSeries] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.slots:
            if name not in SLOTS:
                raise KeyError(f"unknown slot {name!r}")

    def add(self, name: str, series: TruncatedSeries) -> None:
        if name not in SLOTS:
            raise KeyError(f"unknown slot {name!r}")
        if series.order != self.order:
            raise ValueError(f"slot {name} has order {series.order}, bundle has {self.order}")
        for other in self.slots.values():
            if other.nvars != series.nvars:
                raise ValueError("slots must share their variables")
        self.slots[name] = series

    def to_json(self) -> dict:
        return {
            "graph_class": str(self.graph_class),
            "order": self.order,
            "series": {name: self.slots[name].to_json() for name in SLOTS if name in self.slots},
        }


def applicable_slots(ctx: LatticeContext) -> list[str]:
    cls = ctx.graph_class
    names = ["z_product", "z_binomial"]
    if cls in (TREE, CUSP):
        names += ["z_incexc", "z_arrangement"]
    if cls is CUSP:
        names.append("z_cusp_closed")
    if cls is TREE:
        names.append("motivic_tree")
    if not any(ctx.graph.genera):
        names += ["motivic_eca_product", "motivic_eca_strata"]
    if cls is CUSP:
        names.append("motivic_cusp")
    return names


BUILDERS = {
    "z_product": zeta_product,
    "z_binomial": zeta_binomial,
    "z_incexc": zeta_incexc,
    "z_arrangement": zeta_arrangement,
    "z_cusp_closed": cusp_closed_form,
    "motivic_tree": motivic_tree,
    "motivic_eca_product": motivic_eca_product,
    "motivic_eca_strata": motivic_eca_strata,
    "motivic_cusp": motivic_cusp,
}


def build_bundle(ctx: LatticeContext, order: int, slots: Sequence[str] | None = None) -> SeriesBundle:
    bundle = SeriesBundle(ctx.graph_class, order)
    allowed = applicable_slots(ctx)
    for name in slots or allowed:
        if name not in allowed:
            raise UnsupportedClass(f"slot {name} does not apply to a {ctx.graph_class} graph")
        bundle.add(name, BUILDERS[name](ctx, order))
    return bundle
