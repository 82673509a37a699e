"""Exact linear algebra on the lattice L and its dual L'.

Elements of L' are stored by their E*-coordinates ``a`` (``l' = sum a_v E_v*``).
With ``M`` the intersection matrix, the E-coordinates are ``-M^{-1} a``, the
pairing is ``(x, y) = a_x^T M^{-1} a_y`` and ``(l', E_v) = -a_v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .graph import GraphClass, ResolutionGraph, classify, intersection_matrix

Matrix = Sequence[Sequence[int]]


class NotNegativeDefinite(ValueError):
    """Raised when the intersection form is not negative definite."""

    def __init__(self, index: int, minor: int):
        super().__init__(
            f"leading principal minor of size {index} is {minor}, expected sign {(-1) ** index:+d}"
        )
        self.index = index
        self.minor = minor


def leading_minors(m: Matrix) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination.

    Stops after the first zero minor, since later ones need pivoting.
    """
    n = len(m)
    a = [list(row) for row in m]
    minors = []
    prev = 1
    for k in range(n):
        p = a[k][k]
        minors.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    return minors


def _require_symmetric(m: Matrix) -> None:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")


def first_definiteness_failure(m: Matrix) -> tuple[int, int] | None:
    _require_symmetric(m)
    minors = leading_minors(m)
    for k, d in enumerate(minors, start=1):
        if d == 0 or (d > 0) != (k % 2 == 0):
            return k, d
    return None


def check_negative_definite(m: Matrix) -> bool:
    return first_definiteness_failure(m) is None


def determinant(m: Matrix) -> int:
    """Exact determinant by Bareiss elimination with row pivoting."""
    n = len(m)
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    return sign * a[n - 1][n - 1] if n else 1


def inverse(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DualCycle:
    """An element of L' given by E*-coordinates, with cached E-coordinates."""

    estar_coords: tuple[int, ...]
    e_coords: tuple[Fraction, ...] = field(compare=False)

    @property
    def in_lattice(self) -> bool:
        return all(r.denominator == 1 for r in self.e_coords)

    @property
    def in_sprime(self) -> bool:
        return all(a >= 0 for a in self.estar_coords)


@dataclass(frozen=True, eq=False)
class LatticeContext:
    """Immutable lattice data of a negative definite graph."""

    graph: ResolutionGraph
    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]
    det_abs: int
    loops_at: tuple[int, ...]
    # (K, E_v) for every v: 2g - 2 + 2*loops - E_v^2
    canonical_pairings: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    @cached_property
    def graph_class(self) -> GraphClass:
        return classify(self.graph)

    @cached_property
    def valencies(self) -> tuple[int, ...]:
        return self.graph.valencies

    @cached_property
    def dual_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """E_v* in E-coordinates: the columns of -M^{-1}."""
        n = self.size
        return tuple(tuple(-self.inverse[u][v] for u in range(n)) for v in range(n))

    @cached_property
    def canonical(self) -> tuple[Fraction, ...]:
        """K in E-coordinates, the solution of M k = ((K, E_v))_v."""
        return self._solve(self.canonical_pairings)

    @cached_property
    def canonical_estar(self) -> tuple[int, ...]:
        return tuple(-b for b in self.canonical_pairings)

    def _solve(self, rhs: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum((x * r for x, r in zip(row, rhs)), Fraction(0)) for row in self.inverse)

    def cycle(self, estar: Sequence[int]) -> DualCycle:
        a = tuple(int(x) for x in estar)
        if len(a) != self.size:
            raise ValueError(f"expected {self.size} coordinates, got {len(a)}")
        return DualCycle(a, tuple(-r for r in self._solve(a)))

    def from_e_coords(self, r: Sequence[Fraction | int]) -> DualCycle:
        """The element with the given E-coordinates; must lie in L'."""
        if len(r) != self.size:
            raise ValueError(f"expected {self.size} coordinates, got {len(r)}")
        a = [-sum((Fraction(m) * Fraction(x) for m, x in zip(row, r)), Fraction(0)) for row in self.matrix]
        if any(x.denominator != 1 for x in a):
            raise ValueError("E-coordinates do not define an element of L'")
        return self.cycle([int(x) for x in a])

    def basis_cycle(self, v: int) -> DualCycle:
        """E_v as an element of L'."""
        return self.cycle([-self.matrix[u][v] for u in range(self.size)])

    def reduced_cycle(self, mask: int) -> tuple[int, ...]:
        """E*-coordinates of E_J = sum_{v in J} E_v for a vertex bitmask J."""
        members = [v for v in range(self.size) if mask >> v & 1]
        return tuple(-sum(self.matrix[u][v] for v in members) for u in range(self.size))

    def pairing(self, x: DualCycle | Sequence[int], y: DualCycle | Sequence[int]) -> Fraction:
        a, b = _coords(x), _coords(y)
        if len(a) != self.size or len(b) != self.size:
            raise ValueError("dimension mismatch")
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = self.inverse[i]
                total += ai * sum((row[j] * bj for j, bj in enumerate(b) if bj), Fraction(0))
        return total

    def chi(self, x: DualCycle | Sequence[int]) -> Fraction:
        a = _coords(x)
        shifted = [ai + ki for ai, ki in zip(a, self.canonical_estar)]
        return -self.pairing(a, shifted) / 2

    def chi_reduced(self, mask: int) -> int:
        """chi(E_J) in integer arithmetic: -(sum_{u,v in J} M_uv + sum_{v in J} (K, E_v)) / 2."""
        members = [v for v in range(self.size) if mask >> v & 1]
        twice = sum(self.matrix[u][v] for u in members for v in members)
        twice += sum(self.canonical_pairings[v] for v in members)
        if twice % 2:
            raise ArithmeticError(f"chi(E_J) not integral for J={mask:b}")
        return -twice // 2

    def is_anticanonical_reduced(self) -> bool:
        """Whether Z_K = -K equals the reduced cycle E."""
        return all(k == -1 for k in self.canonical)


def _coords(x: DualCycle | Sequence[int]) -> tuple[int, ...]:
    return x.estar_coords if isinstance(x, DualCycle) else tuple(x)


def build_context(g: ResolutionGraph) -> LatticeContext:
    m = intersection_matrix(g)
    failure = first_definiteness_failure(m)
    if failure is not None:
        raise NotNegativeDefinite(*failure)
    loops = g.loops
    pairings = tuple(
        2 * v.genus - 2 + 2 * loops[i] - v.euler for i, v in enumerate(g.vertices)
    )
    return LatticeContext(
        graph=g,
        matrix=m,
        inverse=inverse(m),
        det_abs=abs(determinant(m)),
        loops_at=loops,
        canonical_pairings=pairings,
    )


def canonical_class(ctx: LatticeContext) -> tuple[Fraction, ...]:
    return ctx.canonical


def pairing(ctx: LatticeContext, x, y) -> Fraction:
    return ctx.pairing(x, y)


def chi(ctx: LatticeContext, x) -> Fraction:
    return ctx.chi(x)


def graded_vectors(nvars: int, order: int) -> Iterator[tuple[int, ...]]:
    """All non-negative integer vectors of total degree <= order, graded-lex ascending."""
    for d in range(order + 1):
        yield from _compositions(d, nvars)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_Sprime(ctx: LatticeContext, order: int) -> list[tuple[int, ...]]:
    if order < 0:
        raise ValueError("order must be non-negative")
    return list(graded_vectors(ctx.size, order))


def graded_key(exp: Sequence[int]) -> tuple:
    return (sum(exp), tuple(exp))


def support_set_below(ctx: LatticeContext, target: DualCycle | Sequence[int]) -> list[tuple[int, ...]]:
    """All s in S' with s - l' in L and s - l' not >= 0, in graded-lex order.

    If some E-coordinate satisfies s_w < l'_w then, as every entry of every
    E_u* is positive, a_u * (E_u*)_w <= s_w < l'_w for all u.  So the answer
    lies in the union over w of the boxes a_u < l'_w / (E_u*)_w.
    """
    cyc = target if isinstance(target, DualCycle) else ctx.cycle(target)
    n = ctx.size
    dual = ctx.dual_basis
    boxes = []
    for w in range(n):
        bound = cyc.e_coords[w]
        if bound <= 0:
            continue
        limits = []
        for u in range(n):
            q = bound / dual[u][w]
            # largest integer strictly below q
            limits.append(-(-q.numerator // q.denominator) - 1)
        grids = np.meshgrid(*(np.arange(lim + 1, dtype=np.int64) for lim in limits), indexing="ij")
        boxes.append(np.stack([g.ravel() for g in grids], axis=1))
    if not boxes:
        return []
    cand = np.unique(np.concatenate(boxes), axis=0)
    # det * (E-coordinates of s - l') = -adj(M) (s - l'), all in integers
    det = ctx.det_abs
    adj = np.array([[int(x * det) for x in row] for row in ctx.inverse], dtype=object)
    diff = (cand - np.array(cyc.estar_coords, dtype=np.int64)).astype(object)
    scaled = -(diff @ adj.T)
    in_lattice = np.all(scaled % det == 0, axis=1)
    below = np.any(scaled < 0, axis=1)
    out = [tuple(int(x) for x in row) for row in cand[in_lattice & below]]
    return sorted(out, key=graded_key)
