from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plumbzeta import _kernels, zoo
from plumbzeta.closure import j_closure
from plumbzeta.lattice import build_context
from plumbzeta.verify import random_graph

BACKENDS = _kernels.available_backends()


def offdiag(ctx):
    m = np.array(ctx.matrix, dtype=np.int64)
    np.fill_diagonal(m, 0)
    return m


def mask_of(vs):
    return sum(1 << v for v in vs)


def test_compiled_backend_is_active():
    assert "cython" in BACKENDS, "the compiled extension did not build"
    assert _kernels.BACKEND == "cython"


@pytest.mark.parametrize("backend", sorted(BACKENDS))
@pytest.mark.parametrize("name", ["a5", "d4", "cusp1", "cusp2", "cusp5"])
def test_closure_table_matches_reference(backend, name, ctxs):
    ctx = ctxs[name]
    n = ctx.size
    rng = random.Random(name)
    rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(12)]
    table = BACKENDS[backend].closure_table(offdiag(ctx), rows)
    assert table.shape == (12, 1 << n)
    for r, a in enumerate(rows):
        for m in range(1 << n):
            start = [v for v in range(n) if m >> v & 1]
            assert table[r, m] == mask_of(j_closure(ctx, a, start).closure)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_backends_agree(seed):
    if len(BACKENDS) < 2:
        pytest.skip("only one backend available")
    rng = random.Random(seed)
    ctx = build_context(random_graph(rng, 6))
    n = ctx.size
    rows = np.array([[rng.randint(0, 5) for _ in range(n)] for _ in range(9)], dtype=np.int64)
    chi = np.array([ctx.chi_reduced(m) for m in range(1 << n)], dtype=np.int64)
    cy, py = BACKENDS["cython"], BACKENDS["numpy"]
    assert np.array_equal(cy.closure_table(offdiag(ctx), rows), py.closure_table(offdiag(ctx), rows))
    assert np.array_equal(cy.incexc_sums(offdiag(ctx), chi, rows), py.incexc_sums(offdiag(ctx), chi, rows))


def test_empty_batch():
    ctx = build_context(zoo.load("a2"))
    for impl in BACKENDS.values():
        assert impl.closure_table(offdiag(ctx), np.zeros((0, 2), dtype=np.int64)).shape == (0, 4)


def test_fallback_selected_by_environment():
    env = dict(os.environ, PLUMBZETA_PURE_PYTHON="1")
    code = (
        "from plumbzeta import _kernels, zoo, build_context; from plumbzeta.zeta import zeta_incexc, zeta_product;"
        "ctx = build_context(zoo.load('d4')); assert zeta_incexc(ctx, 5) == zeta_product(ctx, 5);"
        "print(_kernels.BACKEND)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_benchmark_script_runs():
    import pathlib

    script = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run(
        [sys.executable, str(script), "--order", "2", "--repeat", "1", "--graphs", "a2", "cusp2"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert "closure_table" in out and "incexc_sums" in out
