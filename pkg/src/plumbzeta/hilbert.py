"""Passing between the Poincare series p and the Hilbert function h.

h(l') = sum over l in L with l not >= 0 of p(l' + l), and conversely
p(l') = sum_I (-1)^{|I|+1} h(l' + E_I).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import TruncationInsufficient
from .lattice import DualCycle, LatticeContext, support_set_below
from .series import TruncatedSeries


@dataclass(frozen=True)
class HilbertValue:
    estar: tuple[int, ...]
    value: int
    support: tuple[tuple[int, ...], ...]
    summands: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "estar": list(self.estar),
            "h": self.value,
            "support": [list(s) for s in self.support],
            "p_values": list(self.summands),
        }


def required_order(ctx: LatticeContext, target: DualCycle | Sequence[int]) -> int:
    support = support_set_below(ctx, target)
    return max((sum(s) for s in support), default=0)


def hilbert_from_p(ctx: LatticeContext, p: TruncatedSeries, target: DualCycle | Sequence[int]) -> HilbertValue:
    cyc = target if isinstance(target, DualCycle) else ctx.cycle(target)
    support = support_set_below(ctx, cyc)
    need = max((sum(s) for s in support), default=0)
    if need > p.order:
        raise TruncationInsufficient(need, p.order)
    values = tuple(p[s] for s in support)
    return HilbertValue(cyc.estar_coords, sum(values), tuple(support), values)


def p_from_hilbert(ctx: LatticeContext, h, target: Sequence[int]) -> int:
    """Invert via sum_I (-1)^{|I|+1} h(l' + E_I); ``h`` maps E*-coordinates to ints."""
    n = ctx.size
    total = 0
    for mask in range(1 << n):
        shift = ctx.reduced_cycle(mask)
        value = h(tuple(x + y for x, y in zip(target, shift)))
        total += value if bin(mask).count("1") % 2 else -value
    return total


def lattice_points(ctx: LatticeContext, low: int, high: int) -> Iterable[tuple[int, ...]]:
    """E*-coordinates of the cycles sum r_v E_v with low <= r_v <= high."""
    n = ctx.size
    for r in itertools.product(range(low, high + 1), repeat=n):
        yield tuple(-sum(ctx.matrix[u][v] * r[v] for v in range(n)) for u in range(n))


@dataclass(frozen=True)
class RoundTrip:
    checked: int
    mismatches: tuple[tuple[tuple[int, ...], int, int], ...]


def hilbert_round_trip(ctx: LatticeContext, p: TruncatedSeries, points: Iterable[Sequence[int]]) -> RoundTrip:
    """Recover p from h at every point whose inversion stays inside the truncation.

    Points needing coefficients beyond ``p.order`` are skipped.
    """
    n = ctx.size
    cache: dict[tuple[int, ...], int | None] = {}

    def h(a: tuple[int, ...]) -> int | None:
        if a not in cache:
            try:
                cache[a] = hilbert_from_p(ctx, p, a).value
            except TruncationInsufficient:
                cache[a] = None
        return cache[a]

    shifts = [ctx.reduced_cycle(m) for m in range(1 << n)]
    checked, bad = 0, []
    for a in points:
        a = tuple(a)
        if all(x >= 0 for x in a) and sum(a) > p.order:
            continue
        values = [h(tuple(x + y for x, y in zip(a, sh))) for sh in shifts]
        if any(v is None for v in values):
            continue
        expected = p[a] if all(x >= 0 for x in a) else 0
        got = sum(v if bin(m).count("1") % 2 else -v for m, v in enumerate(values))
        checked += 1
        if got != expected:
            bad.append((a, expected, got))
    return RoundTrip(checked, tuple(bad))
