from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from plumbzeta import zoo
from plumbzeta.closure import (
    arrangement_profile,
    complement_class,
    complement_euler,
    incexc_coefficient,
    is_closed,
    j_closure,
    j_closure_bruteforce,
)
from plumbzeta.errors import NotInSprime, UnsupportedClass
from plumbzeta.graph import parse_graph
from plumbzeta.lattice import build_context
from plumbzeta.motivic import projective_class, specialize_L
from plumbzeta.verify import closure_trials, random_graph, random_tree


def test_zero_cycle_empty_start(ctxs):
    for ctx in ctxs.values():
        assert j_closure(ctx, (0,) * ctx.size).closure == frozenset()


def test_three_cycle_dual_vertex(ctxs):
    ctx = ctxs["cusp3"]
    for v in range(3):
        a = tuple(int(u == v) for u in range(3))
        assert j_closure(ctx, a, {v}).closure == frozenset(range(3))
        assert j_closure(ctx, a).closure == frozenset()


def test_full_set_is_closed(ctxs):
    for ctx in ctxs.values():
        everything = frozenset(range(ctx.size))
        a = (2,) * ctx.size
        assert j_closure(ctx, a, everything).closure == everything
        assert j_closure_bruteforce(ctx, a, everything) == everything


def test_deep_interior_is_already_closed(ctxs):
    for ctx in ctxs.values():
        n = ctx.size
        bound = max(sum(ctx.matrix[v][u] for u in range(n) if u != v) for v in range(n))
        a = (bound,) * n
        for mask in range(1 << n):
            start = frozenset(v for v in range(n) if mask >> v & 1)
            assert j_closure(ctx, a, start).closure == start


def test_trace_and_result_fields(ctxs):
    ctx = ctxs["cusp3"]
    res = j_closure(ctx, (1, 0, 0), {1})
    assert res.start == frozenset({1})
    assert set(res.trace) == res.closure - res.start
    assert res.to_json(ctx.graph.ids)["closure"] == ["v1", "v2", "v3"]


@given(st.integers(0, 10**6))
def test_closure_is_minimal_closed_superset(seed):
    rng = random.Random(seed)
    ctx = build_context(random_graph(rng))
    n = ctx.size
    a = tuple(rng.randint(0, 5) for _ in range(n))
    start = frozenset(v for v in range(n) if rng.random() < 0.5)
    res = j_closure(ctx, a, start).closure
    assert start <= res
    assert is_closed(ctx, a, res)
    assert res == j_closure_bruteforce(ctx, a, start)
    assert j_closure(ctx, a, res).closure == res
    assert j_closure(ctx, a, start, choose=max).closure == res


def test_closure_trials_small():
    result = closure_trials(seed=7, trials=150, shuffles=20)
    assert result.passed
    assert result.grown > 30


# -- arrangements ---------------------------------------------------------
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_tree_ambient_dimension(a):
    ctx = build_context(zoo.load("d4"))
    assert arrangement_profile(ctx, a).ambient_dim == 1 + sum(a)


def test_cusp_ambient_dimension(ctxs):
    for name in ("cusp2", "cusp3", "cusp5"):
        ctx = ctxs[name]
        for k in range(1, 5):
            for v in range(ctx.size):
                a = [0] * ctx.size
                a[v] = k
                assert arrangement_profile(ctx, a).ambient_dim == k


def test_outside_sprime(ctxs):
    ctx = ctxs["cusp3"]
    assert complement_euler(ctx, (-1, 2, 0)) == 0
    assert complement_class(ctx, (-1, 2, 0)) == 0
    with pytest.raises(NotInSprime):
        arrangement_profile(ctx, (-1, 2, 0))


def test_cusp_face_values(ctxs):
    for name in ("cusp3", "cusp5"):
        ctx = ctxs[name]
        n = ctx.size
        edges = {frozenset(e) for e in ctx.graph.edges}
        for v in range(n):
            assert complement_euler(ctx, [int(u == v) for u in range(n)]) == 1
        for mask in range(1, 1 << n):
            support = frozenset(v for v in range(n) if mask >> v & 1)
            a = [2 if v in support else 0 for v in range(n)]
            face = len(support) == 1 or support in edges
            assert complement_euler(ctx, a) == (1 if face else 0)


def test_classes_without_subspaces(ctxs):
    tree = ctxs["a1"]
    for k in range(6):
        # no subspaces on a single vertex: the complement is all of P(T), dim T = k + 1
        assert complement_class(tree, [k]) == projective_class(k + 1)
    cusp = ctxs["cusp1"]
    for k in range(1, 7):
        assert complement_class(cusp, [k]) == projective_class(k)


def test_unsupported_class():
    g = parse_graph('{"vertices": [{"id": "a", "euler": -2, "genus": 1}]}')
    with pytest.raises(UnsupportedClass):
        arrangement_profile(build_context(g), [1])


def test_specialization_equals_euler_500():
    rng = random.Random(2024)
    cusps = [build_context(zoo.load(n)) for n in zoo.CUSPS]
    for i in range(500):
        ctx = build_context(random_tree(rng, 5)) if i % 2 else rng.choice(cusps)
        a = [rng.randint(0, 4) for _ in range(ctx.size)]
        prof = arrangement_profile(ctx, a)
        assert specialize_L(prof.motivic_class) == prof.euler == complement_euler(ctx, a)
        assert all(d >= 0 for d in prof.dims)
        n = ctx.size
        for m in range(1 << n):
            for v in range(n):
                assert prof.codims[m] <= prof.codims[m | 1 << v]
        assert prof.euler == incexc_coefficient(ctx, a)
