"""Projective points, flats, incidence and position predicates.

Flats are represented by spanning bases in reduced row echelon form, so two
flats are equal exactly when their basis tuples are equal; that makes
deduplication and hashing trivial.  All values are immutable and all
functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from .errors import InvalidInputError
from .fields import Field, ensure_same_field
from .linalg import Matrix, mat_vec, rank, rref


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^n with normalized homogeneous coordinates.

    The first nonzero coordinate is scaled to 1, so equal points compare
    equal as plain tuples.
    """

    field: Field
    n: int
    coords: tuple

    @classmethod
    def make(cls, field: Field, coords) -> "ProjectivePoint":
        coords = [field.coerce(c) for c in coords]
        if len(coords) < 2:
            raise InvalidInputError("a projective point needs at least 2 coordinates (n >= 1)")
        lead = next((c for c in coords if not field.is_zero(c)), None)
        if lead is None:
            raise InvalidInputError("projective coordinates cannot all be zero")
        inv = field.inv(lead)
        return cls(field, len(coords) - 1, tuple(field.mul(inv, c) for c in coords))


@lru_cache(maxsize=None)
def primitive_coords(point: ProjectivePoint) -> tuple[int, ...]:
    """Integer representative of the coordinate vector.

    Rational mode: clear denominators and divide out the content (sign fixed
    by the leading 1).  Prime mode: the residues themselves.
    """
    if point.field.kind != "rational":
        return tuple(int(c) for c in point.coords)
    denom = 1
    for c in point.coords:
        if isinstance(c, Fraction):
            denom = denom * c.denominator // gcd(denom, c.denominator)
    vals = [int(c * denom) for c in point.coords]
    g = 0
    for v in vals:
        g = gcd(g, v)
    return tuple(v // g for v in vals)


@dataclass(frozen=True)
class Flat:
    """Linear subspace of P^n with canonical rref basis; dim = rows - 1."""

    field: Field
    n: int
    basis: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1


@dataclass(frozen=True)
class InducedFlat:
    """A flat spanned by configuration points plus its maximal incident set."""

    flat: Flat
    incident: tuple[int, ...]


def _check_points(points) -> tuple[Field, int]:
    points = list(points)
    if not points:
        raise InvalidInputError("empty point list")
    field, n = points[0].field, points[0].n
    for p in points[1:]:
        ensure_same_field(field, p.field, "points")
        if p.n != n:
            raise InvalidInputError(f"ambient dimension mismatch: {p.n} != {n}")
    return field, n


def _coord_matrix(points) -> Matrix:
    field, n = _check_points(points)
    return Matrix.from_rows(field, [list(p.coords) for p in points], cols=n + 1)


def span_dim(points) -> int:
    """Projective dimension of the span: rank of the coordinate matrix minus 1."""
    return rank(_coord_matrix(points)) - 1


def flat_from_points(points) -> Flat:
    """Canonical flat spanned by the points; independent of order and spanning subset."""
    field, n = _check_points(points)
    basis = rref(_coord_matrix(points))
    return Flat(field, n, tuple(basis.row(i) for i in range(basis.rows)))


def contains(f: Flat, p: ProjectivePoint) -> bool:
    """True iff p lies in the row space of the flat's basis."""
    ensure_same_field(f.field, p.field, "flat and point")
    if f.n != p.n:
        raise InvalidInputError(f"ambient dimension mismatch: {f.n} != {p.n}")
    field = f.field
    vec = list(p.coords)
    for row in f.basis:
        pivot = next(j for j, x in enumerate(row) if not field.is_zero(x))
        c = vec[pivot]
        if not field.is_zero(c):
            vec = [field.sub(a, field.mul(c, b)) for a, b in zip(vec, row)]
    return all(field.is_zero(x) for x in vec)


def ensure_distinct(points) -> None:
    seen = set()
    for p in points:
        if p.coords in seen:
            raise InvalidInputError(f"duplicate point {p.coords}")
        seen.add(p.coords)


def induced_flats(points) -> list[InducedFlat]:
    """Every span of a point subset, with its maximal incident index set.

    Subsets of size at most n+1 suffice: any flat is spanned by dim+1
    independent incident points.  Output is deduplicated by canonical basis
    and sorted by (dim, basis) for determinism.
    """
    points = list(points)
    _check_points(points)
    ensure_distinct(points)
    n = points[0].n
    found: dict[tuple, Flat] = {}
    incidents: dict[tuple, tuple[int, ...]] = {}
    for size in range(1, min(len(points), n + 1) + 1):
        for subset in combinations(range(len(points)), size):
            f = flat_from_points([points[i] for i in subset])
            if f.basis in found:
                continue
            found[f.basis] = f
            incidents[f.basis] = tuple(i for i, p in enumerate(points) if contains(f, p))
    out = [InducedFlat(found[b], incidents[b]) for b in found]
    out.sort(key=lambda ind: (ind.flat.dim, ind.flat.basis))
    return out


def is_collinear(points) -> bool:
    return span_dim(points) <= 1


def is_nondegenerate(points, n: int | None = None) -> bool:
    _, ambient = _check_points(points)
    if n is not None and n != ambient:
        raise InvalidInputError(f"ambient dimension mismatch: {n} != {ambient}")
    return span_dim(points) == ambient


def in_linearly_general_position(points) -> bool:
    """No j+2 points on a j-dimensional flat for any j < n.

    Equivalently, every subset of at most n+1 points is projectively
    independent.
    """
    points = list(points)
    _check_points(points)
    ensure_distinct(points)
    n = points[0].n
    return _independent_small_subsets(points, n + 1)


def in_general_position_on_span(points) -> bool:
    """Linearly general position inside the span of the points.

    With r the span dimension: no j+2 points on a j-flat for j < r, i.e.
    every subset of at most r+1 points is independent.
    """
    points = list(points)
    _check_points(points)
    ensure_distinct(points)
    r = span_dim(points)
    return _independent_small_subsets(points, r + 1)


def _independent_small_subsets(points, max_size: int) -> bool:
    for size in range(2, min(len(points), max_size) + 1):
        for subset in combinations(points, size):
            if span_dim(subset) != size - 1:
                return False
    return True


def apply_matrix(a: Matrix, p: ProjectivePoint) -> ProjectivePoint:
    """Image of p under the linear map given by a ((N+1) x (n+1) over the same field)."""
    ensure_same_field(a.field, p.field, "map and point")
    if a.cols != p.n + 1:
        raise InvalidInputError(f"map expects {a.cols - 1 if a.cols else '?'}-dim points, got n={p.n}")
    return ProjectivePoint.make(p.field, mat_vec(a, list(p.coords)))
