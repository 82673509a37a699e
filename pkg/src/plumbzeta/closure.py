"""J-closures and the topological subspace arrangements T_v(l') in T(l').

Everything here is the per-exponent reference path in exact arithmetic.  The
batch versions used for whole series live in :mod:`plumbzeta._kernels`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import IntegralityError, NonUniqueMinimal, NotInSprime, UnsupportedClass
from .graph import GraphClass
from .lattice import LatticeContext
from .motivic import ZERO, MotivicPoly, divide_by_L_minus_1

SUPPORTED = (GraphClass.TREE_RATIONAL, GraphClass.CUSP_CYCLE)


@dataclass(frozen=True)
class ClosureResult:
    estar: tuple[int, ...]
    start: frozenset[int]
    closure: frozenset[int]
    trace: tuple[int, ...]

    def to_json(self, ids: Sequence[str] | None = None) -> dict:
        name = (lambda v: ids[v]) if ids else (lambda v: v)
        return {
            "estar": list(self.estar),
            "start": [name(v) for v in sorted(self.start)],
            "closure": [name(v) for v in sorted(self.closure)],
            "trace": [name(v) for v in self.trace],
        }


def stopping_value(ctx: LatticeContext, a: Sequence[int], members: Iterable[int], v: int) -> int:
    """(E_v, l' + E_I) for v outside I, in integers: -a_v + sum_{u in I} M_vu."""
    row = ctx.matrix[v]
    return -a[v] + sum(row[u] for u in members)


def violators(ctx: LatticeContext, a: Sequence[int], members: set[int] | frozenset[int]) -> list[int]:
    return [v for v in range(ctx.size) if v not in members and stopping_value(ctx, a, members, v) > 0]


def j_closure(
    ctx: LatticeContext,
    a: Sequence[int],
    start: Iterable[int] = (),
    choose: Callable[[list[int]], int] | None = None,
) -> ClosureResult:
    """Grow ``start`` by one violating vertex at a time until none is left.

    ``choose`` picks among the current violators (default: smallest index).
    """
    a = tuple(a)
    current = set(start)
    trace = []
    while True:
        cands = violators(ctx, a, current)
        if not cands:
            break
        v = min(cands) if choose is None else choose(cands)
        current.add(v)
        trace.append(v)
    return ClosureResult(a, frozenset(start), frozenset(current), tuple(trace))


def is_closed(ctx: LatticeContext, a: Sequence[int], members: frozenset[int]) -> bool:
    return not violators(ctx, a, members)


def j_closure_bruteforce(ctx: LatticeContext, a: Sequence[int], start: Iterable[int] = ()) -> frozenset[int]:
    start = frozenset(start)
    rest = [v for v in range(ctx.size) if v not in start]
    closed = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            cand = start | frozenset(extra)
            if is_closed(ctx, a, cand):
                closed.append(cand)
    minimal = [c for c in closed if not any(d < c for d in closed)]
    if len(minimal) != 1:
        raise NonUniqueMinimal(f"minimal closed supersets of {sorted(start)}: {[sorted(m) for m in minimal]}")
    return minimal[0]


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _members(mask: int, n: int) -> frozenset[int]:
    return frozenset(v for v in range(n) if mask >> v & 1)


def _require_class(ctx: LatticeContext, cls: GraphClass | None) -> GraphClass:
    cls = ctx.graph_class if cls is None else cls
    if cls not in SUPPORTED:
        raise UnsupportedClass(f"arrangement data needs a rational tree or a cusp cycle, got {cls}")
    return cls


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class ArrangementProfile:
    """Dimensions of the subspace intersections of the arrangement at l'.

    ``dims`` and ``codims`` are indexed by vertex bitmasks I.
    """

    estar: tuple[int, ...]
    ambient_dim: int
    dims: tuple[int, ...]
    codims: tuple[int, ...]
    euler: int
    motivic_class: MotivicPoly

    def dim(self, subset: Iterable[int]) -> int:
        return self.dims[_mask(subset)]

    def to_json(self, ids: Sequence[str] | None = None) -> dict:
        n = len(self.estar)
        name = (lambda v: ids[v]) if ids else (lambda v: v)
        return {
            "estar": list(self.estar),
            "ambient_dim": self.ambient_dim,
            "intersections": [
                {"subset": [name(v) for v in sorted(_members(m, n))], "dim": d, "codim": c}
                for m, (d, c) in enumerate(zip(self.dims, self.codims))
            ],
            "euler": self.euler,
            "motivic_class": self.motivic_class.to_json(),
        }


def arrangement_profile(ctx: LatticeContext, a: Sequence[int], cls: GraphClass | None = None) -> ArrangementProfile:
    cls = _require_class(ctx, cls)
    a = tuple(a)
    if any(x < 0 for x in a):
        raise NotInSprime(f"{a} has a negative E*-coordinate")
    n = ctx.size
    size = 1 << n
    if cls is GraphClass.CUSP_CYCLE and not any(a):
        # constants: T(0) is the line of constants, every T_v(0) is zero
        dims = (1,) + (0,) * (size - 1)
        return ArrangementProfile(a, 1, dims, (0,) + (1,) * (size - 1), 1, MotivicPoly((1,)))

    chi_cache: dict[int, Fraction] = {}

    def chi_plus(mask: int) -> Fraction:
        if mask not in chi_cache:
            shift = ctx.reduced_cycle(mask)
            chi_cache[mask] = ctx.chi([x + y for x, y in zip(a, shift)])
        return chi_cache[mask]

    full = size - 1
    closures = [_mask(j_closure(ctx, a, _members(m, n)).closure) for m in range(size)]
    top = chi_plus(full)
    dims = tuple(_as_int(top - chi_plus(closures[m]), f"dim for I={m:b}") for m in range(size))
    base = chi_plus(closures[0])
    codims = tuple(_as_int(chi_plus(closures[m]) - base, f"codim for I={m:b}") for m in range(size))
    if any(d < 0 for d in dims):
        raise IntegralityError(f"negative intersection dimension at l'={a}")

    pairing_with_E = -sum(a)
    expected = -pairing_with_E + 1 if cls is GraphClass.TREE_RATIONAL else -pairing_with_E
    if dims[0] != expected:
        raise AssertionError(f"ambient dimension {dims[0]} != {expected} at l'={a}")

    sign = [(-1) ** bin(m).count("1") for m in range(size)]
    euler = sum(s * d for s, d in zip(sign, dims))
    top_classes = MotivicPoly.from_dict(_signed_histogram(dims, sign))
    return ArrangementProfile(a, dims[0], dims, codims, euler, divide_by_L_minus_1(top_classes))


def _signed_histogram(dims: Sequence[int], sign: Sequence[int]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for d, s in zip(dims, sign):
        hist[d] = hist.get(d, 0) + s
    return hist


def complement_euler(ctx: LatticeContext, a: Sequence[int], cls: GraphClass | None = None) -> int:
    """Euler characteristic of P(T(l') minus the union of the T_v(l')), as sum_I (-1)^|I| dim."""
    _require_class(ctx, cls)
    if any(x < 0 for x in a):
        return 0
    return arrangement_profile(ctx, a, cls).euler


def complement_class(ctx: LatticeContext, a: Sequence[int], cls: GraphClass | None = None) -> MotivicPoly:
    _require_class(ctx, cls)
    if any(x < 0 for x in a):
        return ZERO
    return arrangement_profile(ctx, a, cls).motivic_class


def incexc_coefficient(ctx: LatticeContext, a: Sequence[int], cls: GraphClass | None = None) -> int:
    """sum_I (-1)^{|I|+1} chi(l' + E_{J(l', I)}), with the value 1 at l' = 0 for cusps."""
    cls = _require_class(ctx, cls)
    a = tuple(a)
    if any(x < 0 for x in a):
        raise NotInSprime(f"{a} has a negative E*-coordinate")
    if cls is GraphClass.CUSP_CYCLE and not any(a):
        return 1
    n = ctx.size
    total = Fraction(0)
    for m in range(1 << n):
        members = _members(m, n)
        closure = j_closure(ctx, a, members).closure
        shift = ctx.reduced_cycle(_mask(closure))
        value = ctx.chi([x + y for x, y in zip(a, shift)])
        total += value if len(members) % 2 else -value
    return _as_int(total, f"coefficient at {a}")
