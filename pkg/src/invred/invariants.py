"""Invariant slices, separating degrees, and the orbit norm.

The degree-d slice of the polynomial ring is finite dimensional, with the
descending graded-lex monomials as coordinates. Each group element acts on a
slice by an exact matrix over GF(p); invariants of degree d are the common
nullspace of (action - identity) over the generators, computed by exact
Gaussian elimination.

epsilon(spec, v) is the least positive degree of a homogeneous invariant that
does not vanish at v. For a nonzero fixed point of a finite group it is
always finite: the orbit norm of a coordinate functional nonzero at v is an
invariant of degree |G| with value l(v)^|G| != 0 there. That makes |G| an
exact default search bound, and the maximum of epsilon over the nonzero fixed
points (delta_over_fixed_points) well defined.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, FixedSpaceLimitError, SliceLimitError
from .gfp import Prime
from .group import (
    DEFAULT_GROUP_CAP,
    GroupSpec,
    MatrixGFp,
    as_vector,
    enumerate_group,
    fixed_space,
)
from .poly import Polynomial, parent_table, promote_table

__all__ = [
    "DegreeSliceBasis",
    "EpsilonResult",
    "induced_slice_matrix",
    "invariant_basis",
    "epsilon",
    "orbit_norm",
    "delta_over_fixed_points",
    "enumerate_fixed_points",
    "slice_dimension",
    "slice_limit",
    "DEFAULT_SLICE_LIMIT",
    "DEFAULT_FIXED_POINT_LIMIT",
]

DEFAULT_SLICE_LIMIT = 20_000
DEFAULT_FIXED_POINT_LIMIT = 65_536


def slice_dimension(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


def slice_limit() -> int:
    """Slice-dimension guard; INVRED_SLICE_LIMIT overrides the default."""
    raw = os.environ.get("INVRED_SLICE_LIMIT", "")
    if raw.strip():
        try:
            value = int(raw)
        except ValueError as exc:
            raise DomainError(f"INVRED_SLICE_LIMIT={raw!r} is not an integer") from exc
        if value < 1:
            raise DomainError("INVRED_SLICE_LIMIT must be positive")
        return value
    return DEFAULT_SLICE_LIMIT


def slice_images(subst: np.ndarray, degree: int, p: Prime) -> np.ndarray:
    """Row t = coordinates of the image of the t-th degree-d monomial.

    ``subst`` is the substitution matrix (row i = image of x_i). Images are
    built one degree at a time: a monomial is a parent monomial times one
    variable, so its image is the parent image times one substituted variable.
    """
    n = subst.shape[0]
    level = np.ones((1, 1), dtype=np.int64)
    for k in range(1, degree + 1):
        parent_rank, parent_var = parent_table(n, k)
        promote = promote_table(n, k - 1)
        level = _kernels.next_slice_level(level, parent_rank, parent_var, promote, subst, p)
    return level


def induced_slice_matrix(g: MatrixGFp, degree: int) -> MatrixGFp:
    """Matrix of the action of g on the degree-d slice.

    Coordinates of act(g, f) equal this matrix times the coordinates of f,
    in descending graded-lex monomial coordinates.
    """
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    images = slice_images(g.inv().entries, degree, g.p)
    return MatrixGFp(images.T, g.p)


@dataclass(frozen=True)
class DegreeSliceBasis:
    """Basis of the invariant subspace of one graded slice."""

    degree: int
    basis: tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def invariant_basis(spec: GroupSpec, degree: int) -> DegreeSliceBasis:
    """Deterministic basis of the degree-d invariants of the group.

    Stacks (slice action - identity) for every generator and takes one exact
    nullspace over GF(p). Raises SliceLimitError when the slice dimension
    exceeds the configured guard.
    """
    if degree < 1:
        raise DomainError(f"degree must be positive, got {degree}")
    n, p = spec.n, spec.p
    dim = slice_dimension(n, degree)
    limit = slice_limit()
    if dim > limit:
        raise SliceLimitError(
            f"slice dimension {dim} at degree {degree} exceeds limit {limit}"
        )
    eye = np.eye(dim, dtype=np.int64)
    blocks = []
    for g in spec.generators:
        action = slice_images(g.inv().entries, degree, p).T
        blocks.append((action - eye) % p)
    rows = _kernels.nullspace_mod(np.vstack(blocks), p)
    basis = tuple(Polynomial.from_coordinates(p, n, degree, row) for row in rows)
    return DegreeSliceBasis(degree=degree, basis=basis)


@dataclass(frozen=True)
class EpsilonResult:
    """Outcome of the minimal separating-degree search.

    ``value`` is None when no invariant of degree 1..searched_bound is nonzero
    at the query point; for a nonzero fixed point with the default bound |G|
    that cannot happen, so None is only seen with explicit small bounds or
    non-fixed query points.
    """

    value: int | None
    witness: Polynomial | None
    searched_bound: int

    @property
    def is_finite(self) -> bool:
        return self.value is not None


def _pick_witness(candidates: list[Polynomial]) -> Polynomial:
    # smallest leading monomial in graded-lex; earliest basis element on ties
    return min(candidates, key=lambda b: b.leading_monomial())


def epsilon(
    spec: GroupSpec,
    v: Sequence,
    bound: int | None = None,
    cap: int = DEFAULT_GROUP_CAP,
) -> EpsilonResult:
    """Least degree of a homogeneous invariant nonzero at v, with a witness.

    Searches degrees 1..bound. When ``bound`` is omitted the group is
    enumerated and |G| is used, which is exact for nonzero fixed points.
    """
    vec = as_vector(v, spec.n, spec.p)
    if not vec.any():
        raise DomainError("epsilon is undefined at the zero vector")
    if bound is None:
        bound = enumerate_group(spec, cap).order
    elif bound < 1:
        raise DomainError("bound must be positive")
    for d in range(1, bound + 1):
        slice_basis = invariant_basis(spec, d)
        candidates = [b for b in slice_basis.basis if b.evaluate(vec)]
        if candidates:
            return EpsilonResult(value=d, witness=_pick_witness(candidates), searched_bound=bound)
    return EpsilonResult(value=None, witness=None, searched_bound=bound)


def orbit_norm(spec: GroupSpec, l: Polynomial, cap: int = DEFAULT_GROUP_CAP) -> Polynomial:
    """Product of the images of a linear form over the whole group.

    An invariant of degree |G|. At any fixed point v its value is l(v)^|G|,
    so it separates v from zero whenever l does.
    """
    if l.is_zero or not l.is_homogeneous() or l.degree() != 1:
        raise DomainError("orbit norm needs a homogeneous linear form")
    from .group import act

    result = Polynomial.one(l.p, l.nvars)
    for g in enumerate_group(spec, cap):
        result = result * act(g, l)
    return result


def enumerate_fixed_points(
    spec: GroupSpec, max_points: int = DEFAULT_FIXED_POINT_LIMIT
) -> Iterator[np.ndarray]:
    """All nonzero GF(p)-points of the fixed space, deterministic order."""
    basis = fixed_space(spec)
    p = int(spec.p)
    if basis:
        total = p ** len(basis)
        if total > max_points:
            raise FixedSpaceLimitError(
                f"fixed space has {total} points, over the limit of {max_points}"
            )
    mat = np.array(basis, dtype=np.int64).reshape(len(basis), spec.n)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        vec = np.asarray(coeffs, dtype=np.int64) @ mat % p
        yield vec


def delta_over_fixed_points(
    spec: GroupSpec,
    cap: int = DEFAULT_GROUP_CAP,
    max_points: int = DEFAULT_FIXED_POINT_LIMIT,
) -> int:
    """Maximum of epsilon over the nonzero fixed points; 0 if there are none.

    Each point search is bounded by |G|, which the orbit norm makes exact,
    so every epsilon here is finite.
    """
    order = enumerate_group(spec, cap).order
    best = 0
    for vec in enumerate_fixed_points(spec, max_points):
        result = epsilon(spec, vec, bound=order, cap=cap)
        assert result.value is not None  # orbit norm guarantees a witness
        best = max(best, result.value)
    return best
