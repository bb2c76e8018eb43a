"""Exact arithmetic in the prime field GF(p) and modular binomial combinatorics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ShapeMismatchError

__all__ = [
    "Prime",
    "FieldElement",
    "lucas_binomial",
    "lucas_factors",
    "binomial_congruence_holds",
]


class Prime(int):
    """A positive integer verified prime at construction.

    Downstream code can assume field axioms for arithmetic mod a ``Prime``
    without re-checking. Trial division is plenty at the sizes this package
    targets.
    """

    def __new__(cls, value) -> "Prime":
        if isinstance(value, Prime):
            return value
        v = int(value)
        if v != value:
            raise DomainError(f"prime modulus must be an integer, got {value!r}")
        if v < 2:
            raise DomainError(f"{v} is not prime")
        i = 2
        while i * i <= v:
            if v % i == 0:
                raise DomainError(f"{v} is not prime ({i} divides it)")
            i += 1
        return super().__new__(cls, v)


@dataclass(frozen=True)
class FieldElement:
    """A residue mod a prime p. All arithmetic is exact and closed.

    Values auto-reduce at construction, so ``FieldElement(-1, Prime(5))``
    is the residue 4.
    """

    residue: int
    p: Prime

    def __post_init__(self):
        p = Prime(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "residue", int(self.residue) % p)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ShapeMismatchError(
                    f"mixed moduli: GF({self.p}) and GF({other.p})"
                )
            return other
        if isinstance(other, int):
            return FieldElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue + o.residue, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue - o.residue, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(o.residue - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue * o.residue, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.residue, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.residue, e, self.p), self.p)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FieldElement(pow(self.residue, self.p - 2, self.p), self.p)

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.p})"


def lucas_factors(a: int, b: int, p) -> list[tuple[int, int, int]]:
    """Digit-wise factorization of C(a, b) mod p.

    Returns ``[(a_i, b_i, C(a_i, b_i) mod p), ...]`` over the base-p digits of
    a and b, least significant first. The product of the last entries is
    C(a, b) mod p. Working digit-wise keeps huge arguments cheap and exact.
    """
    p = Prime(p)
    if a < 0 or b < 0:
        raise DomainError("binomial arguments must be nonnegative")
    factors = []
    while a or b:
        ai, bi = a % p, b % p
        factors.append((ai, bi, math.comb(ai, bi) % p))
        a //= p
        b //= p
    return factors


def lucas_binomial(a: int, b: int, p) -> FieldElement:
    """C(a, b) mod p via base-p digits. b > a gives 0, C(a, 0) is 1."""
    p = Prime(p)
    result = 1
    for _, _, f in lucas_factors(a, b, p):
        result = result * f % p
        if result == 0:
            break
    return FieldElement(result, p)


def binomial_congruence_holds(p, r: int, d: int, k: int, j: int) -> bool:
    """Check C(p^r*d - k, j) == C(p^r - k, j) mod p.

    The identity holds for every d >= 1, 1 <= k <= p^r and 0 <= j <= p^r - k:
    subtracting k borrows only through the low r base-p digits, which p^r*d - k
    and p^r - k share. Exposed as a self-check; a False return would mean a
    broken binomial implementation.
    """
    p = Prime(p)
    if r < 0:
        raise DomainError("r must be nonnegative")
    if d < 1:
        raise DomainError("d must be positive")
    q = p**r
    if not 1 <= k <= q:
        raise DomainError(f"k={k} outside 1..p^r={q}")
    if not 0 <= j <= q - k:
        raise DomainError(f"j={j} outside 0..p^r-k={q - k}")
    return lucas_binomial(q * d - k, j, p) == lucas_binomial(q - k, j, p)
