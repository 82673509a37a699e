"""Exact rational functions in x_1..x_n with coefficients Laurent in L.

A :class:`LaurentPoly` is a sparse map from exponent tuples ``(e_L, e_1, ..., e_n)``
to integers; slot 0 is the exponent of L.  A :class:`RationalFunctionExpr`
keeps numerator and denominator as lists of factors, so identities between
large products are decided by cancelling equal factors first and
cross-multiplying only what is left.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence

from .motivic import MotivicPoly


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] = ()):
        self.nvars = nvars
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != nvars + 1:
                raise ValueError(f"exponent {e} needs {nvars + 1} slots")
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def const(cls, nvars: int, c: int | MotivicPoly = 1) -> "LaurentPoly":
        if isinstance(c, MotivicPoly):
            return cls(nvars, {(k,) + (0,) * nvars: v for k, v in c.terms().items()})
        return cls(nvars, {(0,) * (nvars + 1): c})

    @classmethod
    def monomial(cls, nvars: int, xexp: Sequence[int], lexp: int = 0, c: int = 1) -> "LaurentPoly":
        return cls(nvars, {(lexp,) + tuple(xexp): c})

    @classmethod
    def var(cls, nvars: int, v: int) -> "LaurentPoly":
        e = [0] * nvars
        e[v] = 1
        return cls.monomial(nvars, e)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, MotivicPoly)):
            return LaurentPoly.const(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use RationalFunctionExpr for negative powers")
        result = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, MotivicPoly)):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * (self.nvars + 1)
        return tuple(min(col) for col in zip(*self.terms))

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with full exponent vector ``exp`` (L slot first)."""
        return LaurentPoly(self.nvars, {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()})

    def substitute(self, scale_by_L: bool = True) -> "LaurentPoly":
        """x_v -> (L x_v)^{-1} (or x_v -> x_v^{-1} if ``scale_by_L`` is false)."""
        out = {}
        for e, c in self.terms.items():
            xs = e[1:]
            lexp = e[0] - sum(xs) if scale_by_L else e[0]
            out[(lexp,) + tuple(-x for x in xs)] = c
        return LaurentPoly(self.nvars, out)

    def specialize_L(self, value: int = 1) -> "LaurentPoly":
        if value != 1:
            raise ValueError("only L = 1 is supported")
        out: dict = {}
        for e, c in self.terms.items():
            k = (0,) + e[1:]
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.nvars, out)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def split_unit(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Write self = unit * primitive, unit a signed monomial, primitive free of
        monomial factors and with positive leading coefficient."""
        if not self.terms:
            raise ZeroDivisionError("zero has no unit decomposition")
        low = self.min_exponents()
        prim = self.shift([-x for x in low])
        sign = 1 if prim.terms[max(prim.terms)] > 0 else -1
        if sign < 0:
            prim = -prim
        return LaurentPoly(self.nvars, {low: sign}), prim

    def key(self) -> frozenset:
        return frozenset(self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {dict(sorted(self.terms.items()))})"


def _product(nvars: int, factors: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.const(nvars, 1)
    for f in sorted(factors, key=lambda f: len(f.terms)):
        out = out * f
    return out


class RationalFunctionExpr:
    """prod(num factors) / prod(den factors), all LaurentPoly in the same variables."""

    __slots__ = ("nvars", "num_factors", "den_factors")

    def __init__(self, num: LaurentPoly | Sequence[LaurentPoly], den: LaurentPoly | Sequence[LaurentPoly] | None = None):
        nums = [num] if isinstance(num, LaurentPoly) else list(num)
        if den is None:
            dens = []
        else:
            dens = [den] if isinstance(den, LaurentPoly) else list(den)
        if not nums:
            raise ValueError("need at least one numerator factor to fix the variable count")
        nvars = nums[0].nvars
        if any(f.nvars != nvars for f in nums + dens):
            raise ValueError("variable count mismatch")
        if any(f.is_zero() for f in dens):
            raise ZeroDivisionError("zero denominator")
        self.nvars = nvars
        self.num_factors = tuple(nums)
        self.den_factors = tuple(dens)

    @property
    def num(self) -> LaurentPoly:
        return _product(self.nvars, self.num_factors)

    @property
    def den(self) -> LaurentPoly:
        return _product(self.nvars, self.den_factors)

    @classmethod
    def const(cls, nvars: int, c=1) -> "RationalFunctionExpr":
        return cls(LaurentPoly.const(nvars, c))

    def _coerce(self, other) -> "RationalFunctionExpr":
        if isinstance(other, RationalFunctionExpr):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunctionExpr(other)
        return RationalFunctionExpr.const(self.nvars, other)

    def __add__(self, other):
        o = self._coerce(other)
        # common denominator: the multiset union of both factor lists
        mine, theirs = Counter(f.key() for f in self.den_factors), Counter(f.key() for f in o.den_factors)
        by_key = {f.key(): f for f in self.den_factors + o.den_factors}
        common = mine | theirs
        pad_self = [by_key[k] for k, c in (common - mine).items() for _ in range(c)]
        pad_other = [by_key[k] for k, c in (common - theirs).items() for _ in range(c)]
        num = _product(self.nvars, self.num_factors + tuple(pad_self)) + _product(self.nvars, o.num_factors + tuple(pad_other))
        den = [by_key[k] for k, c in common.items() for _ in range(c)]
        return RationalFunctionExpr(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionExpr((LaurentPoly.const(self.nvars, -1),) + self.num_factors, self.den_factors)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunctionExpr(self.num_factors + o.num_factors, self.den_factors + o.den_factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if any(f.is_zero() for f in o.num_factors):
            raise ZeroDivisionError("division by zero")
        return RationalFunctionExpr(self.num_factors + o.den_factors, self.den_factors + o.num_factors)

    def normalized(self) -> "RationalFunctionExpr":
        """Split every factor into a monomial unit and a primitive part; the units
        collapse into one leading numerator monomial (negative exponents allowed)."""
        unit = LaurentPoly.const(self.nvars, 1)
        nums, dens = [], []
        for f in self.num_factors:
            u, p = f.split_unit()
            unit = unit * u
            if p != 1:
                nums.append(p)
        for f in self.den_factors:
            u, p = f.split_unit()
            (coef,) = u.terms.values()
            (exp,) = u.terms
            unit = unit * LaurentPoly(self.nvars, {tuple(-x for x in exp): coef})
            if p != 1:
                dens.append(p)
        return RationalFunctionExpr([unit] + nums, dens)

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionExpr):
            return NotImplemented
        return rational_identity_check(self, other)

    def __repr__(self):
        return f"RationalFunctionExpr({self.num!r} / {self.den!r})"


def rational_identity_check(lhs: RationalFunctionExpr, rhs: RationalFunctionExpr) -> bool:
    """Exact test of lhs == rhs: cross-multiply, cancel equal primitive factors
    from the two sides, then expand and compare what remains."""
    if lhs.nvars != rhs.nvars:
        raise ValueError("variable count mismatch")
    lz = any(f.is_zero() for f in lhs.num_factors)
    rz = any(f.is_zero() for f in rhs.num_factors)
    if lz or rz:
        return lz and rz
    left = RationalFunctionExpr(lhs.num_factors + rhs.den_factors).normalized()
    right = RationalFunctionExpr(rhs.num_factors + lhs.den_factors).normalized()
    lc = Counter(f.key() for f in left.num_factors[1:])
    rc = Counter(f.key() for f in right.num_factors[1:])
    shared = lc & rc
    by_key = {f.key(): f for f in left.num_factors[1:] + right.num_factors[1:]}
    rest_l = [by_key[k] for k, c in (lc - shared).items() for _ in range(c)]
    rest_r = [by_key[k] for k, c in (rc - shared).items() for _ in range(c)]
    n = lhs.nvars
    return left.num_factors[0] * _product(n, rest_l) == right.num_factors[0] * _product(n, rest_r)


def substitute_inverse(expr: RationalFunctionExpr, scale_by_L: bool = True) -> RationalFunctionExpr:
    """Apply x_v -> (L x_v)^{-1} (or x_v -> x_v^{-1}) to every factor and normalize."""
    return RationalFunctionExpr(
        [f.substitute(scale_by_L) for f in expr.num_factors],
        [f.substitute(scale_by_L) for f in expr.den_factors],
    ).normalized()
