"""Sparse multivariate polynomials over GF(p).

Polynomials are formal ring elements: two polynomials are equal exactly when
their term maps are equal. Over a finite field distinct polynomials can agree
as functions (x^p and x take the same values on GF(p)), and everything here,
including invariance checks and graded components, works at the formal level.

Monomials are ordered graded-lexicographically: first by total degree, then
lexicographically on exponent vectors, so x0^2 > x0*x1 > x1^2. Slice bases
enumerate monomials in descending order, which fixes deterministic coordinates
for all the linear algebra built on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, ShapeMismatchError
from .gfp import FieldElement, Prime

__all__ = ["Monomial", "Polynomial", "monomial_basis"]


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """An exponent vector with the graded-lex total order."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise DomainError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __lt__(self, other: "Monomial") -> bool:
        return (self.degree, self.exponents) < (other.degree, other.exponents)

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"


def _exponents_desc(nvars: int, degree: int):
    # descending lex within fixed total degree
    if nvars == 1:
        yield (degree,)
        return
    for e0 in range(degree, -1, -1):
        for rest in _exponents_desc(nvars - 1, degree - e0):
            yield (e0,) + rest


@lru_cache(maxsize=None)
def slice_monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All C(nvars+degree-1, degree) exponent vectors, descending graded-lex."""
    if nvars < 1:
        raise DomainError("need at least one variable")
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    out = tuple(_exponents_desc(nvars, degree))
    assert len(out) == comb(nvars + degree - 1, degree)
    return out


@lru_cache(maxsize=None)
def slice_ranks(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    """Exponent vector -> position in the descending graded-lex slice."""
    return {m: i for i, m in enumerate(slice_monomials(nvars, degree))}


@lru_cache(maxsize=None)
def promote_table(nvars: int, degree: int) -> np.ndarray:
    """T[s, u] = rank in degree+1 of (monomial s of this degree) * x_u."""
    ranks_up = slice_ranks(nvars, degree + 1)
    mons = slice_monomials(nvars, degree)
    table = np.empty((len(mons), nvars), dtype=np.int64)
    for s, m in enumerate(mons):
        for u in range(nvars):
            bumped = m[:u] + (m[u] + 1,) + m[u + 1 :]
            table[s, u] = ranks_up[bumped]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def parent_table(nvars: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Factor each degree-d monomial as x_j * (degree d-1 monomial).

    j is the first variable with positive exponent. Returns the parent ranks
    and the variable indices as two arrays, used to build slice actions one
    degree at a time.
    """
    if degree < 1:
        raise DomainError("degree must be at least 1")
    ranks_down = slice_ranks(nvars, degree - 1)
    mons = slice_monomials(nvars, degree)
    parent = np.empty(len(mons), dtype=np.int64)
    var = np.empty(len(mons), dtype=np.int64)
    for t, m in enumerate(mons):
        j = next(i for i, e in enumerate(m) if e > 0)
        reduced = m[:j] + (m[j] - 1,) + m[j + 1 :]
        parent[t] = ranks_down[reduced]
        var[t] = j
    parent.setflags(write=False)
    var.setflags(write=False)
    return parent, var


def monomial_basis(nvars: int, degree: int) -> list[Monomial]:
    """The degree-d monomials in nvars variables, descending graded-lex."""
    return [Monomial(m) for m in slice_monomials(nvars, degree)]


def _as_residue(c, p: Prime) -> int:
    if isinstance(c, FieldElement):
        if c.p != p:
            raise ShapeMismatchError(f"mixed moduli: GF({p}) and GF({c.p})")
        return c.residue
    return int(c) % p


class Polynomial:
    """Sparse polynomial over GF(p); ``terms`` maps exponent tuples to residues.

    Instances are treated as immutable; all operations return new objects.
    Zero coefficients are never stored.
    """

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        p = Prime(p)
        if nvars < 1:
            raise DomainError("need at least one variable")
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ShapeMismatchError(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                )
            if any(e < 0 for e in exps):
                raise DomainError(f"negative exponent in {exps}")
            r = _as_residue(c, p)
            if r:
                clean[exps] = r
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p, nvars: int) -> "Polynomial":
        return cls(p, nvars)

    @classmethod
    def constant(cls, p, nvars: int, c) -> "Polynomial":
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, p, nvars: int) -> "Polynomial":
        return cls.constant(p, nvars, 1)

    @classmethod
    def variable(cls, p, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise DomainError(f"variable index {i} outside 0..{nvars - 1}")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(p, nvars, {exps: 1})

    @classmethod
    def monomial(cls, p, nvars: int, exponents: Sequence[int], c=1) -> "Polynomial":
        return cls(p, nvars, {tuple(exponents): c})

    @classmethod
    def from_terms(
        cls, p, nvars: int, terms: Iterable[tuple[Sequence[int], int]]
    ) -> "Polynomial":
        acc: dict[tuple[int, ...], int] = {}
        p = Prime(p)
        for exps, c in terms:
            key = tuple(int(e) for e in exps)
            acc[key] = (acc.get(key, 0) + _as_residue(c, p)) % p
        return cls(p, nvars, acc)

    # ---- ring structure ------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.p != other.p or self.nvars != other.nvars:
            raise ShapeMismatchError(
                f"incompatible polynomials: GF({self.p}) in {self.nvars} vars "
                f"vs GF({other.p}) in {other.nvars} vars"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        p = self.p
        out = dict(self.terms)
        for exps, c in other.terms.items():
            r = (out.get(exps, 0) + c) % p
            if r:
                out[exps] = r
            else:
                out.pop(exps, None)
        return self._wrap(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        p = self.p
        return self._wrap({e: p - c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        p = self.p
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                r = (out.get(key, 0) + c1 * c2) % p
                if r:
                    out[key] = r
                else:
                    out.pop(key, None)
        return self._wrap(out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise DomainError("negative polynomial power")
        result = Polynomial.one(self.p, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        r = _as_residue(c, self.p)
        if r == 0:
            return Polynomial.zero(self.p, self.nvars)
        p = self.p
        return self._wrap({e: cc * r % p for e, cc in self.terms.items()})

    def _wrap(self, terms: dict[tuple[int, ...], int]) -> "Polynomial":
        # internal: terms already reduced, keys already valid
        obj = object.__new__(Polynomial)
        object.__setattr__(obj, "p", self.p)
        object.__setattr__(obj, "nvars", self.nvars)
        object.__setattr__(obj, "terms", terms)
        return obj

    # ---- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.p == other.p
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def leading_monomial(self) -> Monomial:
        """Largest monomial in the support (graded-lex)."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        return Monomial(max(self.terms, key=lambda e: (sum(e), e)))

    def coefficient(self, exponents: Sequence[int]) -> FieldElement:
        return FieldElement(self.terms.get(tuple(exponents), 0), self.p)

    def homogeneous_component(self, d: int) -> "Polynomial":
        """Sum of the terms of total degree exactly d."""
        return self._wrap({e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict[tuple[int, ...], int]] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: self._wrap(t) for d, t in sorted(parts.items())}

    # ---- evaluation and substitution --------------------------------------

    def evaluate(self, point: Sequence) -> FieldElement:
        """Value at a point of GF(p)^nvars."""
        if len(point) != self.nvars:
            raise ShapeMismatchError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        p = self.p
        vals = [_as_residue(v, p) for v in point]
        total = 0
        for exps, c in self.terms.items():
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t = t * pow(v, e, p) % p
                    if t == 0:
                        break
            total = (total + t) % p
        return FieldElement(total, p)

    def substitute(self, matrix) -> "Polynomial":
        """Linear change of variables: x_i is replaced by sum_j M[i][j]*x_j.

        Row i of the matrix is the image of x_i. Composing substitutions
        multiplies the matrices: f.substitute(M).substitute(N) equals
        f.substitute(M @ N mod p), and evaluating satisfies
        f.substitute(M).evaluate(v) == f.evaluate(M @ v mod p).
        """
        p = self.p
        n = self.nvars
        m = np.asarray(getattr(matrix, "entries", matrix), dtype=np.int64) % p
        if m.shape != (n, n):
            raise ShapeMismatchError(
                f"substitution matrix has shape {m.shape}, expected {(n, n)}"
            )
        images = [
            Polynomial(p, n, {tuple(int(j == k) for k in range(n)): int(m[i, j]) for j in range(n)})
            for i in range(n)
        ]
        # cache powers of each variable image up to the largest exponent used
        powers: list[list[Polynomial]] = [[Polynomial.one(p, n)] for _ in range(n)]
        for exps in self.terms:
            for i, e in enumerate(exps):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * images[i])
        out = Polynomial.zero(p, n)
        for exps, c in self.terms.items():
            term = Polynomial.constant(p, n, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def coordinates(self, degree: int) -> np.ndarray:
        """Coefficient vector over the descending graded-lex slice basis."""
        if any(sum(e) != degree for e in self.terms):
            raise DomainError(f"polynomial is not homogeneous of degree {degree}")
        ranks = slice_ranks(self.nvars, degree)
        vec = np.zeros(len(ranks), dtype=np.int64)
        for exps, c in self.terms.items():
            vec[ranks[exps]] = c
        return vec

    @classmethod
    def from_coordinates(cls, p, nvars: int, degree: int, vec) -> "Polynomial":
        mons = slice_monomials(nvars, degree)
        if len(vec) != len(mons):
            raise ShapeMismatchError(
                f"coordinate vector has length {len(vec)}, expected {len(mons)}"
            )
        return cls(p, nvars, {mons[i]: int(v) for i, v in enumerate(vec) if v})

    # ---- formatting --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[exps]
            mon = str(Monomial(exps))
            if mon == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial(GF({self.p}), {self.nvars} vars, {self})"
