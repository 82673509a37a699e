"""Closed rational forms of the series and their functional equations."""
from __future__ import annotations

from .errors import UnsupportedClass
from .graph import GraphClass, cycle_count
from .lattice import LatticeContext
from .motivic import L
from .rational import LaurentPoly, RationalFunctionExpr, rational_identity_check, substitute_inverse


def _x(n: int, v: int) -> LaurentPoly:
    return LaurentPoly.var(n, v)


def classical_rational(ctx: LatticeContext) -> RationalFunctionExpr:
    """prod_v (1 - x_v)^{kappa_v - 2}."""
    n = ctx.size
    num, den = [LaurentPoly.const(n, 1)], []
    for v, kappa in enumerate(ctx.valencies):
        factor = 1 - _x(n, v)
        if kappa >= 2:
            num += [factor] * (kappa - 2)
        else:
            den += [factor] * (2 - kappa)
    return RationalFunctionExpr(num, den)


def eca_rational(ctx: LatticeContext) -> RationalFunctionExpr:
    """prod_edges (1 - x_u - x_v + L x_u x_v) / prod_v (1 - x_v)(1 - L x_v)."""
    if any(ctx.graph.genera):
        raise UnsupportedClass("the Cartier divisor series needs rational curves")
    n = ctx.size
    num = [LaurentPoly.const(n, 1)]
    for u, v in ctx.graph.edges:
        num.append(1 - _x(n, u) - _x(n, v) + _x(n, u) * _x(n, v) * L)
    den = []
    for v in range(n):
        den += [1 - _x(n, v), 1 - _x(n, v) * L]
    return RationalFunctionExpr(num, den)


def motivic_rational(ctx: LatticeContext) -> RationalFunctionExpr:
    cls = ctx.graph_class
    if cls is GraphClass.TREE_RATIONAL:
        return eca_rational(ctx)
    if cls is GraphClass.CUSP_CYCLE:
        n = ctx.size
        return 1 + (eca_rational(ctx) - 1) / RationalFunctionExpr(LaurentPoly.const(n, L - 1))
    raise UnsupportedClass(f"no closed motivic form for a {cls} graph")


def _shift_monomial(ctx: LatticeContext, lexp: int) -> LaurentPoly:
    """L^lexp * t^{Z_K - E}, with Z_K - E = sum_v (kappa_v - 2) E_v*."""
    return LaurentPoly.monomial(ctx.size, [k - 2 for k in ctx.valencies], lexp)


def functional_equation_sides(ctx: LatticeContext, motivic: bool = True):
    if ctx.graph_class not in (GraphClass.TREE_RATIONAL, GraphClass.CUSP_CYCLE):
        raise UnsupportedClass(f"functional equation not available for a {ctx.graph_class} graph")
    if motivic:
        z = motivic_rational(ctx)
        lhs = substitute_inverse(z) * _shift_monomial(ctx, cycle_count(ctx.graph) - 1)
    else:
        if ctx.graph_class is not GraphClass.TREE_RATIONAL:
            raise UnsupportedClass("the classical functional equation is stated for trees")
        z = classical_rational(ctx)
        lhs = substitute_inverse(z, scale_by_L=False) * _shift_monomial(ctx, 0)
    return lhs, z


def functional_equation_check(ctx: LatticeContext, motivic: bool = True) -> bool:
    """L^{c-1} t^{Z_K-E} Z(L, t)|_{t_v -> (L t_v)^{-1}} == Z(L, t) as rational functions
    (or t^{Z_K-E} Z(1/t) == Z(t) with ``motivic=False``)."""
    lhs, rhs = functional_equation_sides(ctx, motivic)
    return rational_identity_check(lhs, rhs)
