"""Integer Laurent polynomials in the class of the affine line, written ``L``."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """A polynomial expected to be divisible by (L - 1) is not."""


class MotivicPoly:
    """Immutable sum ``c_i L^i`` with ``i`` possibly negative.

    Stored as ``low`` (the smallest exponent) and a tuple of coefficients with
    no zeros at either end; the zero polynomial has empty coefficients.
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = (), low: int = 0):
        cs = [int(c) for c in coeffs]
        start, stop = 0, len(cs)
        while start < stop and cs[start] == 0:
            start += 1
        while stop > start and cs[stop - 1] == 0:
            stop -= 1
        object.__setattr__(self, "coeffs", tuple(cs[start:stop]))
        object.__setattr__(self, "low", low + start if stop > start else 0)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MotivicPoly is immutable")

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "MotivicPoly":
        terms = {int(k): int(v) for k, v in terms.items() if v}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls([terms.get(i, 0) for i in range(lo, hi + 1)], lo)

    @classmethod
    def constant(cls, c: int) -> "MotivicPoly":
        return cls([c])

    @classmethod
    def monomial(cls, exp: int, c: int = 1) -> "MotivicPoly":
        return cls([c], exp)

    # -- structure --------------------------------------------------------
    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_polynomial(self) -> bool:
        return self.is_zero() or self.low >= 0

    def terms(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, exp: int) -> int:
        i = exp - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(x) -> "MotivicPoly":
        if isinstance(x, MotivicPoly):
            return x
        if isinstance(x, int):
            return MotivicPoly((x,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return MotivicPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return MotivicPoly([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MotivicPoly([c * other for c in self.coeffs], self.low) if other else ZERO
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return MotivicPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return MotivicPoly([self.coeffs[0] ** -k], self.low * k)
            raise ValueError("only units can be raised to negative powers")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MotivicPoly((other,))
        if not isinstance(other, MotivicPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            if not self.coeffs:
                h = hash(0)
            elif len(self.coeffs) == 1 and self.low == 0:
                h = hash(self.coeffs[0])
            else:
                h = hash((self.low, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.coeffs)

    def evaluate(self, value=1):
        if value == 1:
            return sum(self.coeffs)
        total = Fraction(0) if self.low < 0 else 0
        for e, c in self.terms().items():
            total += c * (Fraction(value) ** e if e < 0 else value ** e)
        return total

    def substitute_inverse(self) -> "MotivicPoly":
        """The polynomial in L^{-1}."""
        return MotivicPoly(self.coeffs[::-1], -self.high) if self.coeffs else ZERO

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"MotivicPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items()):
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def to_json(self) -> dict:
        return {"coeffs": {str(e): c for e, c in sorted(self.terms().items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "MotivicPoly":
        return cls.from_dict({int(k): v for k, v in data["coeffs"].items()})


ZERO = MotivicPoly()
ONE = MotivicPoly((1,))
L = MotivicPoly((1,), 1)


def mp_add(a, b) -> MotivicPoly:
    return MotivicPoly._lift(a) + b


def mp_mul(a, b) -> MotivicPoly:
    return MotivicPoly._lift(a) * b


def mp_neg(a) -> MotivicPoly:
    return -MotivicPoly._lift(a)


def divide_by_L_minus_1(a: MotivicPoly | int) -> MotivicPoly:
    """Exact quotient by (L - 1); raises NotDivisible unless a(1) == 0."""
    a = MotivicPoly._lift(a)
    if a.is_zero():
        return ZERO
    cs = a.coeffs
    # q(L)(L - 1) = a: going down from the top, q_{i-1} = a_i + q_i
    q = [0] * (len(cs) - 1)
    carry = 0
    for i in range(len(cs) - 1, 0, -1):
        carry += cs[i]
        q[i - 1] = carry
    if carry + cs[0] != 0:
        raise NotDivisible(f"{a} is not divisible by L-1 (value at L=1 is {a.evaluate(1)})")
    return MotivicPoly(q, a.low)


def specialize_L(a: MotivicPoly | int, value: int = 1) -> int:
    if isinstance(a, int):
        return a
    return a.evaluate(value)


def projective_class(k: int) -> MotivicPoly:
    """[P^{k-1}] = 1 + L + ... + L^{k-1}."""
    if k <= 0:
        raise ValueError("projective_class needs k >= 1")
    return MotivicPoly([1] * k)


def motive_from_json(value) -> MotivicPoly | int:
    if isinstance(value, dict):
        return MotivicPoly.from_json(value)
    return int(value)
