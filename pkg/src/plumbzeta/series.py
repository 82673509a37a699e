"""Truncated multivariate power series in the variables x_v = t^{E_v*}.

A series keeps every monomial of total degree <= ``order``.  Coefficients are
Python ints (ring ``"int"``) or :class:`MotivicPoly` (ring ``"motivic"``).
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .lattice import graded_key
from .motivic import L, MotivicPoly, motive_from_json, specialize_L

RINGS = ("int", "motivic")


class SeriesMismatch(ValueError):
    """Operands live over different rings or variable sets."""


class TruncatedSeries:
    __slots__ = ("nvars", "order", "ring", "_terms")

    def __init__(self, nvars: int, order: int, terms: Mapping[tuple[int, ...], object] = (), ring: str = "int"):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        if order < 0:
            raise ValueError("order must be non-negative")
        self.nvars = nvars
        self.order = order
        self.ring = ring
        clean = {}
        for exp, c in dict(terms).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            if sum(exp) > order or not c:
                continue
            if ring == "motivic" and isinstance(c, int):
                c = MotivicPoly((c,))
            clean[exp] = c
        self._terms = clean

    @classmethod
    def one(cls, nvars: int, order: int, ring: str = "int") -> "TruncatedSeries":
        return cls(nvars, order, {(0,) * nvars: 1}, ring)

    @classmethod
    def zero(cls, nvars: int, order: int, ring: str = "int") -> "TruncatedSeries":
        return cls(nvars, order, {}, ring)

    @classmethod
    def monomial(cls, exp: Sequence[int], order: int, coeff=1, ring: str = "int") -> "TruncatedSeries":
        return cls(len(exp), order, {tuple(exp): coeff}, ring)

    # -- access -----------------------------------------------------------
    def __getitem__(self, exp: Sequence[int]):
        exp = tuple(exp)
        if sum(exp) > self.order:
            raise KeyError(f"exponent {exp} beyond truncation order {self.order}")
        c = self._terms.get(exp)
        if c is None:
            return MotivicPoly() if self.ring == "motivic" else 0
        return c

    coefficient = __getitem__

    def items(self) -> list[tuple[tuple[int, ...], object]]:
        """Nonzero terms in graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: graded_key(kv[0]))

    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.nvars != self.nvars:
            raise SeriesMismatch(f"variable count {self.nvars} != {other.nvars}")
        if other.ring != self.ring:
            raise SeriesMismatch(f"ring {self.ring} != {other.ring}")
        return min(self.order, other.order)

    def __add__(self, other):
        order = self._check(other)
        out = {e: c for e, c in self._terms.items() if sum(e) <= order}
        for e, c in other._terms.items():
            if sum(e) <= order:
                out[e] = out[e] + c if e in out else c
        return TruncatedSeries(self.nvars, order, out, self.ring)

    def __neg__(self):
        return TruncatedSeries(self.nvars, self.order, {e: -c for e, c in self._terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, MotivicPoly)):
            return self.scale(other)
        order = self._check(other)
        a = [(e, sum(e), c) for e, c in self._terms.items() if sum(e) <= order]
        b = [(e, sum(e), c) for e, c in other._terms.items() if sum(e) <= order]
        out: dict = {}
        for ea, da, ca in a:
            room = order - da
            for eb, db, cb in b:
                if db > room:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                out[e] = out[e] + p if e in out else p
        return TruncatedSeries(self.nvars, order, out, self.ring)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.order, {e: v * c for e, v in self._terms.items()}, self.ring)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.nvars, order, self._terms, self.ring)

    def map_coefficients(self, fn: Callable, ring: str | None = None) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.order, {e: fn(c) for e, c in self._terms.items()}, ring or self.ring)

    def to_motivic(self) -> "TruncatedSeries":
        if self.ring == "motivic":
            return self
        return self.map_coefficients(lambda c: MotivicPoly((c,)), "motivic")

    def specialize_L(self, value: int = 1) -> "TruncatedSeries":
        if self.ring == "int":
            return self
        return self.map_coefficients(lambda c: specialize_L(c, value), "int")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.order == other.order
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __repr__(self):
        head = ", ".join(f"{e}: {c}" for e, c in self.items()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"TruncatedSeries(nvars={self.nvars}, order={self.order}, ring={self.ring}, {{{head}{more}}})"

    def differences(self, other: "TruncatedSeries") -> list[tuple[tuple[int, ...], object, object]]:
        """Exponents (up to the common order) where the coefficients differ."""
        order = self._check(other)
        keys = {e for e in self._terms if sum(e) <= order} | {e for e in other._terms if sum(e) <= order}
        zero = MotivicPoly() if self.ring == "motivic" else 0
        out = []
        for e in sorted(keys, key=graded_key):
            a, b = self._terms.get(e, zero), other._terms.get(e, zero)
            if a != b:
                out.append((e, a, b))
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[dict]:
        rows = []
        for e, c in self.items():
            rows.append({"exp": list(e), "coeff": c.to_json() if isinstance(c, MotivicPoly) else c})
        return rows

    @classmethod
    def from_json(cls, rows: Iterable[Mapping], nvars: int, order: int) -> "TruncatedSeries":
        terms, ring = {}, "int"
        for row in rows:
            c = motive_from_json(row["coeff"])
            if isinstance(c, MotivicPoly):
                ring = "motivic"
            terms[tuple(row["exp"])] = c
        return cls(nvars, order, terms, ring)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def _unit(var: int, nvars: int) -> list[int]:
    if not 0 <= var < nvars:
        raise ValueError(f"variable {var} out of range for {nvars} variables")
    return [0] * nvars


def _univariate(coeffs: Sequence, var: int, nvars: int, order: int, ring: str) -> TruncatedSeries:
    terms = {}
    for k, c in enumerate(coeffs):
        exp = _unit(var, nvars)
        exp[var] = k
        terms[tuple(exp)] = c
    return TruncatedSeries(nvars, order, terms, ring)


def binomial_power_coefficients(n: int, order: int) -> list[int]:
    """Coefficients of (1 - x)^n up to x^order, any integer n."""
    out, b = [1], 1
    for a in range(1, order + 1):
        # binom(n, a) = binom(n, a-1) * (n - a + 1) / a, always exact
        b = b * (n - a + 1) // a
        out.append(-b if a % 2 else b)
    return out


def expand_binomial_power(n: int, order: int, var: int = 0, nvars: int = 1) -> TruncatedSeries:
    """(1 - x_var)^n expanded to total degree ``order``."""
    return _univariate(binomial_power_coefficients(n, order), var, nvars, order, "int")


def expand_geometric(c, order: int, var: int = 0, nvars: int = 1) -> TruncatedSeries:
    """1 / (1 - c x_var) = sum c^k x_var^k."""
    ring = "motivic" if isinstance(c, MotivicPoly) else "int"
    powers, p = [], 1
    for _ in range(order + 1):
        powers.append(p)
        p = p * c
    return _univariate(powers, var, nvars, order, ring)


def macdonald_series(chi_val: int, order: int) -> TruncatedSeries:
    """sum_a chi_top(S^a X) x^a = (1 - x)^{-chi(X)}."""
    return expand_binomial_power(-chi_val, order)


def symprod_class_series(kappa: int, order: int, var: int = 0, nvars: int = 1) -> TruncatedSeries:
    """sum_i [S^i E°] x^i = (1 - x)^{kappa - 1} / (1 - L x) for E° = P^1 minus kappa points."""
    if kappa < 0:
        raise ValueError("valency must be non-negative")
    return expand_binomial_power(kappa - 1, order, var, nvars).to_motivic() * expand_geometric(L, order, var, nvars)
