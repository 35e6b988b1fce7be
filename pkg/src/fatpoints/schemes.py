"""Fat point schemes: condition matrices, Hilbert functions, regularity.

A scheme Z = m_1 P_1 + ... + m_s P_s is stored as points with multiplicities;
its ideal is represented implicitly through degreewise condition matrices.
The degree-t block of a point (P, m) consists of the derivative conditions of
order exactly m-1: row (alpha) has entry

    d^alpha X^nu (P) = prod_l perm(nu_l, alpha_l) * P_l^(nu_l - alpha_l)

(zero unless nu >= alpha componentwise).  By Euler's relation these rows cut
out the full vanishing-to-order-m conditions for every t >= m-1 in
characteristic zero, and in a prime field as long as p > t (the
characteristic guard).  For t below the largest multiplicity the graded piece
is zero outright (a nonzero degree-t form has multiplicity at most t at a
point), so dimension queries dispatch without building a matrix.

The Hilbert function is the rank of the condition matrix; the regularity
index is found by an ascending search that skips degrees with
C(t+n, n) < e, certifies stabilized degrees by a full-row-rank check mod a
large prime (rank mod p never exceeds the rational rank, so a full rank mod p
is an exact certificate), and confirms the degree just below by one exact
rational rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb, perm

import numpy as np

from .errors import (
    InternalInvariantViolationError,
    InvalidInputError,
    UnsupportedCharacteristicError,
)
from .fields import DEFAULT_PRIME, Field, ensure_same_field
from .geometry import (
    Flat,
    ProjectivePoint,
    apply_matrix,
    contains,
    ensure_distinct,
    primitive_coords,
)
from .linalg import (
    Matrix,
    invert,
    nullspace_basis,
    rank,
    rank_int,
    rank_mod_p_array,
)
from .monomials import exponent_index, exponents, monomial_count


@dataclass(frozen=True)
class FatPointScheme:
    """Z = m_1 P_1 + ... + m_s P_s in P^n; points pairwise distinct, m_i >= 1."""

    field: Field
    n: int
    points: tuple[ProjectivePoint, ...]
    multiplicities: tuple[int, ...]

    @classmethod
    def make(cls, field: Field, n: int, items) -> "FatPointScheme":
        items = list(items)
        if not items:
            raise InvalidInputError("a fat point scheme needs at least one point")
        if n < 1:
            raise InvalidInputError("ambient projective dimension must be >= 1")
        points = []
        mults = []
        for point, m in items:
            ensure_same_field(field, point.field, "scheme and point")
            if point.n != n:
                raise InvalidInputError(f"point lives in P^{point.n}, scheme in P^{n}")
            if not isinstance(m, int) or m < 1:
                raise InvalidInputError(f"multiplicity must be a positive integer, got {m!r}")
            points.append(point)
            mults.append(m)
        ensure_distinct(points)
        return cls(field, n, tuple(points), tuple(mults))

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def items(self) -> tuple[tuple[ProjectivePoint, int], ...]:
        return tuple(zip(self.points, self.multiplicities))

    @property
    def m_max(self) -> int:
        return max(self.multiplicities)

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)


@dataclass(frozen=True)
class ConditionMatrix:
    """Degree-t vanishing conditions; the nullspace is the graded piece I_t."""

    scheme: FatPointScheme
    t: int
    matrix: Matrix


@dataclass(frozen=True)
class HilbertProfile:
    """Table of H(t) and dim I_t for t in [0, t_max], with e and reg if reached."""

    scheme: FatPointScheme
    t_max: int
    hilbert_values: tuple[int, ...]
    ideal_dims: tuple[int, ...]
    multiplicity: int
    regularity: int | None


def multiplicity(z: FatPointScheme) -> int:
    """e(Z) = sum_i C(m_i + n - 1, n), the stable Hilbert value."""
    return sum(comb(m + z.n - 1, z.n) for m in z.multiplicities)


def condition_row_count(z: FatPointScheme) -> int:
    return sum(comb(m - 1 + z.n, z.n) for m in z.multiplicities)


def _check_degree(z: FatPointScheme, t: int) -> None:
    if not isinstance(t, int) or t < 0:
        raise InvalidInputError(f"degree must be a nonnegative integer, got {t!r}")
    if z.field.kind == "prime" and t >= z.field.p:
        raise UnsupportedCharacteristicError(
            f"degree {t} >= characteristic {z.field.p}; derivative conditions would degenerate"
        )


def _point_tables_int(coords: tuple[int, ...], m: int, t: int) -> list[list[list[int]]]:
    """tab[l][a][v] = perm(v, a) * coords[l]^(v-a), zero when v < a."""
    tabs = []
    for c in coords:
        powers = [1] * (t + 1)
        for k in range(1, t + 1):
            powers[k] = powers[k - 1] * c
        tab = [[perm(v, a) * powers[v - a] if v >= a else 0 for v in range(t + 1)] for a in range(m)]
        tabs.append(tab)
    return tabs


def _condition_rows_int(z: FatPointScheme, t: int) -> list[list[int]]:
    """Exact integer condition rows (rational mode; rows scaled per point)."""
    nvars = z.n + 1
    cols = exponents(nvars, t)
    rows: list[list[int]] = []
    for point, m in z.items:
        tabs = _point_tables_int(primitive_coords(point), m, t)
        for alpha in exponents(nvars, m - 1):
            row = []
            for nu in cols:
                val = 1
                for l in range(nvars):
                    val *= tabs[l][alpha[l]][nu[l]]
                    if not val:
                        break
                row.append(val)
            rows.append(row)
    return rows


def _condition_array_mod_p(z: FatPointScheme, t: int, p: int) -> np.ndarray:
    """Condition rows reduced mod p, built residue-first (int64)."""
    nvars = z.n + 1
    exps = np.array(exponents(nvars, t), dtype=np.int64).T  # (nvars, N)
    ncols = exps.shape[1]
    blocks = []
    for point, m in z.items:
        coords = [c % p for c in primitive_coords(point)]
        tabs = []
        for c in coords:
            powers = [1] * (t + 1)
            for k in range(1, t + 1):
                powers[k] = (powers[k - 1] * c) % p
            tab = np.array(
                [[(perm(v, a) % p) * powers[v - a] % p if v >= a else 0 for v in range(t + 1)] for a in range(m)],
                dtype=np.int64,
            )
            tabs.append(tab)
        for alpha in exponents(nvars, m - 1):
            val = np.ones(ncols, dtype=np.int64)
            for l in range(nvars):
                val = (val * tabs[l][alpha[l]][exps[l]]) % p
            blocks.append(val)
    return np.vstack(blocks) if blocks else np.zeros((0, ncols), dtype=np.int64)


def conditions_matrix(z: FatPointScheme, t: int) -> ConditionMatrix:
    """Degree-t condition matrix over the scheme's field.

    C(t+n, n) columns in the global monomial order; one block of
    C(m_i - 1 + n, n) derivative rows per point.
    """
    _check_degree(z, t)
    if z.field.kind == "rational":
        rows = _condition_rows_int(z, t)
    else:
        rows = _condition_array_mod_p(z, t, z.field.p).tolist()
    m = Matrix.from_rows(z.field, rows, cols=monomial_count(z.n, t))
    return ConditionMatrix(z, t, m)


@lru_cache(maxsize=None)
def _hilbert_value(z: FatPointScheme, t: int) -> int:
    _check_degree(z, t)
    if t < z.m_max:
        # a nonzero form of degree t has multiplicity <= t at every point,
        # so the graded piece is zero and H(t) = dim R_t
        return monomial_count(z.n, t)
    if z.field.kind == "rational":
        return rank_int(_condition_rows_int(z, t))
    a = _condition_array_mod_p(z, t, z.field.p)
    return rank_mod_p_array(a, z.field.p)


def hilbert(z: FatPointScheme, t: int) -> int:
    """H(t) = dim of the degree-t piece of the coordinate ring."""
    return _hilbert_value(z, t)


def ideal_dim(z: FatPointScheme, t: int) -> int:
    """dim I_t = C(t+n, n) - H(t)."""
    return monomial_count(z.n, t) - _hilbert_value(z, t)


def regularity_index(z: FatPointScheme) -> int:
    """Least t with H(t) = e(Z).

    Ascends from max(0, max_i m_i - 1) and is capped at sum m_i - 1 (the
    collinear worst case); the result is asserted against the Segre bound.
    """
    e = multiplicity(z)
    cap = z.total_multiplicity - 1
    t = max(0, z.m_max - 1)
    while t <= cap and monomial_count(z.n, t) < e:
        t += 1  # H(t) <= C(t+n, n) < e: cannot have stabilized yet
    start = t
    reg = None
    if z.field.kind == "prime":
        p = z.field.p
        while t <= cap:
            _check_degree(z, t)
            if rank_mod_p_array(_condition_array_mod_p(z, t, p), p) == e:
                reg = t
                break
            t += 1
    else:
        while t <= cap:
            a = _condition_array_mod_p(z, t, DEFAULT_PRIME)
            if rank_mod_p_array(a, DEFAULT_PRIME) == e:
                reg = t  # full row rank mod p certifies H(t) = e over Q
                break
            t += 1
        if reg is not None:
            # one exact rank certifies H(reg-1) < e; walk left if a modular
            # rank ever dropped during the ascent
            while reg > start and _hilbert_value(z, reg - 1) == e:
                reg -= 1
    if reg is None:
        raise InternalInvariantViolationError(
            f"Hilbert function did not stabilize by the unconditional cap {cap}"
        )
    from .segre import segre_bound  # runtime import; segre depends on this module

    bound = segre_bound(z).bound
    if reg > bound:
        raise InternalInvariantViolationError(
            f"computed regularity {reg} exceeds the Segre bound {bound}"
        )
    return reg


def hilbert_profile(z: FatPointScheme, t_max: int) -> HilbertProfile:
    """Tabulate H and dim I_t on [0, t_max]; reg is included once reached."""
    if not isinstance(t_max, int) or t_max < 0:
        raise InvalidInputError(f"t_max must be a nonnegative integer, got {t_max!r}")
    e = multiplicity(z)
    hs = tuple(_hilbert_value(z, t) for t in range(t_max + 1))
    dims = tuple(monomial_count(z.n, t) - h for t, h in enumerate(hs))
    reg = next((t for t, h in enumerate(hs) if h == e), None)
    return HilbertProfile(z, t_max, hs, dims, e, reg)


def subscheme(z: FatPointScheme, indices) -> FatPointScheme:
    """Restriction to a subset of the support, multiplicities kept."""
    indices = list(indices)
    if not indices:
        raise InvalidInputError("subscheme needs at least one index")
    if len(set(indices)) != len(indices):
        raise InvalidInputError("subscheme indices must be distinct")
    if any(not isinstance(i, int) or i < 0 or i >= z.s for i in indices):
        raise InvalidInputError(f"index out of range for a {z.s}-point scheme")
    return FatPointScheme.make(z.field, z.n, [(z.points[i], z.multiplicities[i]) for i in indices])


def identity_block_map(field: Field, n: int, target_n: int) -> Matrix:
    rows = [[field.one if j == i else field.zero for j in range(n + 1)] for i in range(target_n + 1)]
    return Matrix.from_rows(field, rows)


def random_full_column_rank_map(field: Field, n: int, target_n: int, seed: int) -> Matrix:
    """Seeded (target_n+1) x (n+1) integer map of full column rank."""
    rng = random.Random(seed)
    for _ in range(200):
        rows = [[field.coerce(rng.randint(-9, 9)) for _ in range(n + 1)] for _ in range(target_n + 1)]
        m = Matrix.from_rows(field, rows)
        if rank(m) == n + 1:
            return m
    raise InternalInvariantViolationError("could not draw a full-column-rank map")


def embed(
    z: FatPointScheme,
    target_n: int,
    mapping: Matrix | None = None,
    seed: int | None = None,
) -> FatPointScheme:
    """Push the scheme into P^target_n by a full-column-rank linear map.

    Default map is the identity block over zero rows; pass ``seed`` for a
    seeded random map instead, or ``mapping`` explicitly.
    """
    if target_n < z.n:
        raise InvalidInputError(f"target dimension {target_n} < ambient {z.n}")
    if mapping is None:
        if seed is None:
            mapping = identity_block_map(z.field, z.n, target_n)
        else:
            mapping = random_full_column_rank_map(z.field, z.n, target_n, seed)
    ensure_same_field(z.field, mapping.field, "scheme and embedding map")
    if mapping.rows != target_n + 1 or mapping.cols != z.n + 1:
        raise InvalidInputError(
            f"embedding map must be {target_n + 1}x{z.n + 1}, got {mapping.rows}x{mapping.cols}"
        )
    if rank(mapping) != z.n + 1:
        raise InvalidInputError("embedding map must have full column rank")
    items = [(apply_matrix(mapping, p), m) for p, m in z.items]
    return FatPointScheme.make(z.field, target_n, items)


def restrict_to_flat(z: FatPointScheme, f: Flat) -> FatPointScheme:
    """View a scheme supported on a flat as a scheme in P^dim(f).

    Coordinates are the unique representations in the flat's rref basis;
    with pivot columns j_0 < ... < j_r those are just the pivot coordinates.
    """
    ensure_same_field(z.field, f.field, "scheme and flat")
    if f.n != z.n:
        raise InvalidInputError(f"flat lives in P^{f.n}, scheme in P^{z.n}")
    if f.dim < 1:
        raise InvalidInputError("restriction target must have dimension >= 1")
    field = z.field
    pivot_cols = [next(j for j, x in enumerate(row) if not field.is_zero(x)) for row in f.basis]
    items = []
    for p, m in z.items:
        if not contains(f, p):
            raise InvalidInputError(f"support point {p.coords} does not lie on the flat")
        items.append((ProjectivePoint.make(field, [p.coords[j] for j in pivot_cols]), m))
    return FatPointScheme.make(field, f.dim, items)


def apply_projectivity(z: FatPointScheme, a: Matrix) -> FatPointScheme:
    """Apply one invertible (n+1) x (n+1) coordinate change to every point."""
    ensure_same_field(z.field, a.field, "scheme and coordinate change")
    if a.rows != z.n + 1 or a.cols != z.n + 1 or rank(a) != z.n + 1:
        raise InvalidInputError("coordinate change must be square and invertible")
    return FatPointScheme.make(z.field, z.n, [(apply_matrix(a, p), m) for p, m in z.items])


def with_field(z: FatPointScheme, field: Field) -> FatPointScheme:
    """Recast a rational scheme over a prime field (explicit, never implicit)."""
    if field == z.field:
        return z
    if z.field.kind != "rational" or field.kind != "prime":
        raise InvalidInputError("field conversion is only rational -> prime")
    items = []
    for p, m in z.items:
        coords = [c % field.p for c in primitive_coords(p)]
        items.append((ProjectivePoint.make(field, coords), m))
    return FatPointScheme.make(field, z.n, items)


# ---------------------------------------------------------------------------
# graded pieces of J + q^a


def _single_point_scheme(p: ProjectivePoint, a: int) -> FatPointScheme:
    return FatPointScheme.make(p.field, p.n, [(p, a)])


def _validate_sum_args(j_scheme: FatPointScheme, p: ProjectivePoint, a: int) -> None:
    ensure_same_field(j_scheme.field, p.field, "scheme and point")
    if p.n != j_scheme.n:
        raise InvalidInputError("ambient dimension mismatch")
    if not isinstance(a, int) or a < 1:
        raise InvalidInputError(f"order must be a positive integer, got {a!r}")
    if any(q.coords == p.coords for q in j_scheme.points):
        raise InvalidInputError("the extra point must be distinct from the scheme's support")


def sum_graded_dim(j_scheme: FatPointScheme, p: ProjectivePoint, a: int, t: int) -> int:
    """dim (J + q^a)_t where q is the ideal of p.

    Computed as dim J_t + dim (q^a)_t - dim (J cap q^a)_t; the intersection
    is the ideal of the combined scheme, so every term is an exact graded
    dimension (equivalently, the rank of the two stacked nullspace bases).
    """
    _validate_sum_args(j_scheme, p, a)
    dim_j = ideal_dim(j_scheme, t)
    dim_q = ideal_dim(_single_point_scheme(p, a), t)
    combined = FatPointScheme.make(
        j_scheme.field, j_scheme.n, list(j_scheme.items) + [(p, a)]
    )
    return dim_j + dim_q - ideal_dim(combined, t)


def quotient_sum_reg(j_scheme: FatPointScheme, p: ProjectivePoint, a: int) -> int:
    """Least t with (J + q^a)_t = R_t, i.e. the quotient's graded pieces vanish."""
    _validate_sum_args(j_scheme, p, a)
    cap = j_scheme.total_multiplicity + a - 1
    for t in range(cap + 1):
        if sum_graded_dim(j_scheme, p, a, t) == monomial_count(j_scheme.n, t):
            return t
    raise InternalInvariantViolationError(
        f"(J + q^a)_t never filled R_t up to the unconditional cap {cap}"
    )


def _ideal_basis(z: FatPointScheme, t: int) -> list[tuple]:
    """Basis of the graded piece I_t as coefficient vectors."""
    _check_degree(z, t)
    if t < z.m_max:
        return []
    return nullspace_basis(conditions_matrix(z, t).matrix)


def graded_sum_contains(
    j_scheme: FatPointScheme | None,
    p: ProjectivePoint,
    order: int,
    t: int,
    exponent: tuple[int, ...],
) -> bool:
    """Is the monomial X^exponent in the degree-t piece of J + q^order?

    Membership by rank comparison: appending the coefficient vector to the
    stacked spanning sets must not raise the rank.  ``j_scheme=None`` tests
    against q^order alone.
    """
    field, n = p.field, p.n
    if len(exponent) != n + 1 or any(e < 0 for e in exponent) or sum(exponent) != t:
        raise InvalidInputError(f"malformed degree-{t} exponent vector: {exponent!r}")
    spanning = list(_ideal_basis(_single_point_scheme(p, order), t))
    if j_scheme is not None:
        _validate_sum_args(j_scheme, p, order)
        spanning += list(_ideal_basis(j_scheme, t))
    ncols = monomial_count(n, t)
    vec = [field.zero] * ncols
    vec[exponent_index(n + 1, t)[tuple(exponent)]] = field.one
    base = Matrix.from_rows(field, spanning, cols=ncols)
    extended = Matrix.from_rows(field, spanning + [vec], cols=ncols)
    return rank(extended) == rank(base)


def monomial_in_sum(
    b: int,
    i: int,
    m_tail: tuple[int, ...],
    j_scheme: FatPointScheme,
    p: ProjectivePoint,
) -> bool:
    """Is X_0^(b-i) * M in the degree-b piece of J + q^(i+1)?

    M is the degree-i monomial in X_1..X_n with exponents ``m_tail``.  The
    point p is moved to (1, 0, ..., 0) by an internal coordinate change
    (applied to the scheme as well), where q = (X_1, ..., X_n).
    """
    n = j_scheme.n
    if not isinstance(i, int) or i < 0 or not isinstance(b, int) or b < i:
        raise InvalidInputError(f"need 0 <= i <= b, got i={i!r}, b={b!r}")
    if len(m_tail) != n or any(not isinstance(e, int) or e < 0 for e in m_tail) or sum(m_tail) != i:
        raise InvalidInputError(f"malformed degree-{i} tail monomial: {m_tail!r}")
    _validate_sum_args(j_scheme, p, i + 1)
    change = _normalizing_change(p)
    moved_scheme = apply_projectivity(j_scheme, change)
    moved_p = apply_matrix(change, p)
    exponent = (b - i,) + tuple(m_tail)
    return graded_sum_contains(moved_scheme, moved_p, i + 1, b, exponent)


def _normalizing_change(p: ProjectivePoint) -> Matrix:
    """Invertible map sending p to (1, 0, ..., 0)."""
    field, n = p.field, p.n
    coords = list(p.coords)
    pivot = next(j for j, c in enumerate(coords) if not field.is_zero(c))
    cols = [coords] + [
        [field.one if r == j else field.zero for r in range(n + 1)] for j in range(n + 1) if j != pivot
    ]
    a = Matrix.from_rows(field, [list(row) for row in zip(*cols)])
    return invert(a)
