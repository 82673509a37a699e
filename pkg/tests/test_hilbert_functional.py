from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from plumbzeta import zoo
from plumbzeta.errors import TruncationInsufficient, UnsupportedClass
from plumbzeta.functional import (
    classical_rational,
    functional_equation_check,
    functional_equation_sides,
    motivic_rational,
)
from plumbzeta.graph import parse_graph
from plumbzeta.hilbert import hilbert_from_p, hilbert_round_trip, lattice_points, p_from_hilbert, required_order
from plumbzeta.lattice import build_context
from plumbzeta.motivic import L
from plumbzeta.rational import LaurentPoly, RationalFunctionExpr, rational_identity_check
from plumbzeta.zeta import zeta_incexc, zeta_product


def test_h_of_zero(ctxs):
    for ctx in ctxs.values():
        p = zeta_product(ctx, 2)
        assert hilbert_from_p(ctx, p, (0,) * ctx.size).value == 0


def test_one_vertex_loop(ctxs):
    ctx = ctxs["cusp1"]
    p = zeta_incexc(ctx, 4)
    value = hilbert_from_p(ctx, p, ctx.basis_cycle(0))
    assert value.value == 1
    assert value.support == ((0,),)
    assert value.to_json() == {"estar": [5], "h": 1, "support": [[0]], "p_values": [1]}


def test_truncation_error(ctxs):
    ctx = ctxs["cusp3"]
    target = ctx.from_e_coords((4, 4, 4))
    need = required_order(ctx, target)
    with pytest.raises(TruncationInsufficient) as info:
        hilbert_from_p(ctx, zeta_incexc(ctx, need - 1), target)
    assert info.value.required == need
    assert hilbert_from_p(ctx, zeta_incexc(ctx, need), target).value >= 0


@pytest.mark.parametrize("name", zoo.CUSPS)
def test_round_trip(name, ctxs):
    ctx = ctxs[name]
    p = zeta_incexc(ctx, 8)
    rt = hilbert_round_trip(ctx, p, lattice_points(ctx, -1, 2))
    assert rt.checked > 0
    assert rt.mismatches == ()


def test_inversion_at_effective_points(ctxs):
    ctx = ctxs["cusp3"]
    p = zeta_incexc(ctx, 8)
    h = lambda a: hilbert_from_p(ctx, p, a).value
    targets = [a for a in lattice_points(ctx, -1, 2) if min(a) >= 0 and sum(a) <= 4]
    assert len(targets) > 1
    for a in targets:
        assert p_from_hilbert(ctx, h, a) == p[a]


def test_tree_round_trip(ctxs):
    ctx = ctxs["a2"]
    p = zeta_product(ctx, 10)
    rt = hilbert_round_trip(ctx, p, lattice_points(ctx, -1, 3))
    assert rt.checked > 0 and not rt.mismatches


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_h_is_monotone_on_lattice(r):
    """h is a dimension count, so it grows along E_v."""
    ctx = build_context(zoo.load("cusp2"))
    p = zeta_incexc(ctx, 12)
    base = hilbert_from_p(ctx, p, ctx.from_e_coords(r)).value
    for v in range(2):
        up = list(r)
        up[v] += 1
        assert hilbert_from_p(ctx, p, ctx.from_e_coords(up)).value >= base


# -- functional equations -------------------------------------------------
def test_single_vertex_classical(ctxs):
    ctx = ctxs["a1"]
    z = classical_rational(ctx)
    X = LaurentPoly.var(1, 0)
    assert rational_identity_check(z, RationalFunctionExpr(LaurentPoly.const(1), (1 - X) * (1 - X)))
    assert functional_equation_check(ctx, motivic=False)


@pytest.mark.parametrize("name", zoo.CUSPS)
def test_cusp_motivic_equation(name, ctxs):
    assert functional_equation_check(ctxs[name])


@pytest.mark.parametrize("name", zoo.TREES)
def test_tree_equations(name, ctxs):
    assert functional_equation_check(ctxs[name], motivic=False)
    assert functional_equation_check(ctxs[name])


def test_equation_is_not_vacuous(ctxs):
    ctx = ctxs["cusp3"]
    lhs, rhs = functional_equation_sides(ctx)
    assert not rational_identity_check(lhs * LaurentPoly.const(3, L), rhs)
    ctx = ctxs["d4"]
    lhs, rhs = functional_equation_sides(ctx, motivic=False)
    X = LaurentPoly.var(4, 0)
    assert not rational_identity_check(lhs * X, rhs)


def test_motivic_rational_expands_to_series(ctxs):
    from plumbzeta.zeta import motivic_cusp

    ctx = ctxs["cusp2"]
    expr = motivic_rational(ctx)
    series = motivic_cusp(ctx, 5)
    # den * series == num up to order 5
    from plumbzeta.series import TruncatedSeries

    def to_series(poly):
        terms = {}
        for e, c in poly.terms.items():
            assert e[0] >= 0 and min(e[1:]) >= 0
            terms[e[1:]] = terms.get(e[1:], 0) + c * L ** e[0]
        return TruncatedSeries(2, 5, terms, "motivic")

    assert to_series(expr.den) * series == to_series(expr.num)


def test_unsupported(ctxs):
    g = parse_graph('{"vertices": [{"id": "a", "euler": -2, "genus": 1}]}')
    with pytest.raises(UnsupportedClass):
        functional_equation_check(build_context(g))
    with pytest.raises(UnsupportedClass):
        functional_equation_check(ctxs["cusp3"], motivic=False)
