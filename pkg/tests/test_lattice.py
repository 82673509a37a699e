from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from plumbzeta import zoo
from plumbzeta.lattice import (
    NotNegativeDefinite,
    build_context,
    canonical_class,
    check_negative_definite,
    chi,
    determinant,
    enumerate_Sprime,
    graded_key,
    inverse,
    leading_minors,
    pairing,
    support_set_below,
)
from plumbzeta.graph import parse_graph

# |det M|, K in E-coordinates and (-M^{-1})_{00}, from an independent sympy computation
ORACLE = {
    "a2": (3, (0, 0), Fraction(2, 3)),
    "a5": (6, (0,) * 5, Fraction(5, 6)),
    "d4": (4, (0,) * 4, Fraction(2)),
    "e8": (1, (0,) * 8, Fraction(30)),
    "star_222": (27, (-1, Fraction(-2, 3), Fraction(-1, 3), Fraction(-2, 3), Fraction(-1, 3), Fraction(-2, 3), Fraction(-1, 3)), Fraction(1)),
    "cusp1": (5, (-1,), Fraction(1, 5)),
    "cusp2": (2, (-1, -1), Fraction(3, 2)),
    "cusp3": (3, (-1, -1, -1), Fraction(5, 3)),
    "cusp5": (5, (-1,) * 5, Fraction(9, 5)),
}


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_lattice_oracle(name, ctxs):
    det, k, e00 = ORACLE[name]
    ctx = ctxs[name]
    assert ctx.det_abs == det
    assert canonical_class(ctx) == tuple(Fraction(x) for x in k)
    assert ctx.dual_basis[0][0] == e00


def test_one_vertex_loop_dual(ctxs):
    ctx = ctxs["cusp1"]
    assert ctx.dual_basis == ((Fraction(1, 5),),)
    assert pairing(ctx, [1], ctx.basis_cycle(0)) == -1
    assert pairing(ctx, [1], [1]) == Fraction(-1, 5)
    # (K, E_v) = 2*0 - 2 + 2*1 - (-5)
    assert pairing(ctx, ctx.canonical_estar, ctx.basis_cycle(0)) == 5


def test_minors():
    assert leading_minors(((-2, 1, 1), (1, -2, 1), (1, 1, -3))) == [-2, 3, -3]
    assert check_negative_definite(((-2, 2), (2, -3)))
    assert not check_negative_definite(((-2, 2), (2, -2)))
    assert check_negative_definite(((-5,),))


def test_not_negative_definite():
    g = parse_graph('{"vertices": [{"id": "a", "euler": -1}, {"id": "b", "euler": -1}], "edges": [["a", "b"]]}')
    with pytest.raises(NotNegativeDefinite) as info:
        build_context(g)
    assert (info.value.index, info.value.minor) == (2, 0)


def test_determinant_and_inverse_small():
    m = ((-2, 1), (1, -2))
    assert determinant(m) == 3
    inv = inverse(m)
    assert inv == ((Fraction(-2, 3), Fraction(-1, 3)), (Fraction(-1, 3), Fraction(-2, 3)))


@pytest.mark.parametrize("name", zoo.NAMES)
def test_dual_basis_properties(name, ctxs):
    ctx = ctxs[name]
    n = ctx.size
    for v in range(n):
        assert all(x > 0 for x in ctx.dual_basis[v])
        for w in range(n):
            assert pairing(ctx, ctx.cycle([int(v == u) for u in range(n)]), ctx.basis_cycle(w)) == (-1 if v == w else 0)
    for v in range(n):
        b = ctx.canonical_pairings[v]
        assert pairing(ctx, ctx.canonical_estar, ctx.basis_cycle(v)) == b


def test_chi_examples(ctxs):
    for name, ctx in ctxs.items():
        assert chi(ctx, (0,) * ctx.size) == 0
    for name in zoo.CUSPS:
        ctx = ctxs[name]
        assert ctx.is_anticanonical_reduced()
        assert chi(ctx, ctx.reduced_cycle((1 << ctx.size) - 1)) == 0
    for name in zoo.TREES:
        ctx = ctxs[name]
        for v in range(ctx.size):
            assert chi(ctx, ctx.basis_cycle(v)) == 1


@pytest.mark.parametrize("name", zoo.NAMES)
def test_chi_reduced_matches_rational(name, ctxs):
    ctx = ctxs[name]
    for mask in range(1 << ctx.size):
        assert ctx.chi_reduced(mask) == chi(ctx, ctx.reduced_cycle(mask))


def test_enumerate_sprime():
    ctx1 = build_context(zoo.load("a1"))
    assert enumerate_Sprime(ctx1, 3) == [(0,), (1,), (2,), (3,)]
    ctx2 = build_context(zoo.load("a2"))
    assert enumerate_Sprime(ctx2, 1) == [(0, 0), (0, 1), (1, 0)]
    for name, size, order in (("d4", 4, 5), ("cusp5", 5, 4)):
        exps = enumerate_Sprime(build_context(zoo.load(name)), order)
        assert len(exps) == comb(order + size, size)
        assert exps == sorted(exps, key=graded_key)


def brute_support(ctx, target, box):
    """Scan every s in a large box of S' directly."""
    cyc = ctx.cycle(target)
    out = []
    for s in itertools.product(range(box + 1), repeat=ctx.size):
        diff = ctx.cycle([x - y for x, y in zip(s, cyc.estar_coords)])
        if diff.in_lattice and any(r < 0 for r in diff.e_coords):
            out.append(s)
    return sorted(out, key=graded_key)


def test_support_set_examples(ctxs):
    for ctx in ctxs.values():
        assert support_set_below(ctx, (0,) * ctx.size) == []
    # l' = E on the one-vertex loop: only s = 0 lies in l' + L below l'
    assert support_set_below(ctxs["cusp1"], [5]) == [(0,)]


@pytest.mark.parametrize("name", ["a2", "d4", "cusp1", "cusp2", "cusp3"])
def test_support_set_against_scan(name, ctxs):
    ctx = ctxs[name]
    for r in itertools.product(range(0, 3), repeat=ctx.size):
        target = ctx.from_e_coords(r).estar_coords
        got = support_set_below(ctx, target)
        # every member has some E-coordinate below r, which bounds a_u by r_w / (E_u*)_w <= 2 / min entry
        box = int(max(r, default=0) / min(min(col) for col in ctx.dual_basis)) + 1
        assert got == brute_support(ctx, target, box)
        for s in got:
            assert not all(x >= y for x, y in zip(ctx.cycle(s).e_coords, r))


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_pairing_bilinear_symmetric(a, b):
    ctx = build_context(zoo.load("cusp3"))
    assert pairing(ctx, a, b) == pairing(ctx, b, a)
    s = [x + y for x, y in zip(a, b)]
    assert pairing(ctx, s, s) == pairing(ctx, a, a) + 2 * pairing(ctx, a, b) + pairing(ctx, b, b)


@given(st.lists(st.integers(0, 6), min_size=4, max_size=4))
def test_chi_shift_formula(a):
    """chi(l' + E_J) = chi(l') + chi(E_J) + sum_{v in J} a_v for every J."""
    ctx = build_context(zoo.load("d4"))
    for mask in range(16):
        shifted = [x + y for x, y in zip(a, ctx.reduced_cycle(mask))]
        extra = sum(a[v] for v in range(4) if mask >> v & 1)
        assert chi(ctx, shifted) == chi(ctx, a) + ctx.chi_reduced(mask) + extra
