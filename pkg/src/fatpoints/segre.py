"""Segre-type bound T(Z) with witnesses, and closed-form regularity formulas.

T_j(Z) maximizes floor((w + j - 2)/j) over point subsets lying on some flat
of dimension at most j (containment reading), with w the subset's total
multiplicity.  Because enlarging a subset on a fixed flat only increases w,
the maximum is attained on the full incident set of an induced flat, so the
computation scans induced flats; a brute-force subset scan stays available
as an independent test oracle.

``closed_form_reg`` evaluates the catalog of exact regularity formulas after
validating the corresponding hypothesis; it never falls back to linear
algebra, so formula and computation stay independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import HypothesisNotMetError, InvalidInputError
from .fields import ensure_same_field
from .geometry import (
    Flat,
    InducedFlat,
    in_general_position_on_span,
    in_linearly_general_position,
    induced_flats,
    is_collinear,
    span_dim,
)
from .linalg import Matrix, invert, mat_vec
from .schemes import FatPointScheme


@dataclass(frozen=True)
class SegreWitness:
    """Attaining flat for one T_j: its incident points and weight."""

    j: int
    value: int
    flat: Flat
    incident: tuple[int, ...]
    weight: int


@dataclass(frozen=True)
class SegreReport:
    """All T_j with witnesses, the overall bound T and the least attaining j."""

    scheme: FatPointScheme
    witnesses: tuple[SegreWitness, ...]
    bound: int
    p_min: int

    def t_value(self, j: int) -> int:
        return self.witnesses[j - 1].value


def weight_on_flat(z: FatPointScheme, f: Flat) -> int:
    """Sum of multiplicities of the support points lying on the flat."""
    ensure_same_field(z.field, f.field, "scheme and flat")
    if f.n != z.n:
        raise InvalidInputError(f"flat lives in P^{f.n}, scheme in P^{z.n}")
    from .geometry import contains

    return sum(m for p, m in z.items if contains(f, p))


@lru_cache(maxsize=None)
def _scheme_flats(z: FatPointScheme) -> tuple[tuple[InducedFlat, int], ...]:
    flats = induced_flats(list(z.points))
    return tuple(
        (ind, sum(z.multiplicities[i] for i in ind.incident)) for ind in flats
    )


def segre_T_j(z: FatPointScheme, j: int) -> int:
    """T_j(Z): max of floor((w + j - 2)/j) over flats of dimension <= j."""
    if not isinstance(j, int) or j < 1 or j > z.n:
        raise InvalidInputError(f"j must lie in [1, {z.n}], got {j!r}")
    return _witness_for_j(z, j).value


def _witness_for_j(z: FatPointScheme, j: int) -> SegreWitness:
    best = None
    for ind, w in _scheme_flats(z):
        if ind.flat.dim > j:
            continue
        val = (w + j - 2) // j
        if best is None or val > best.value:
            best = SegreWitness(j, val, ind.flat, ind.incident, w)
    assert best is not None  # dim-0 flats always qualify
    return best


@lru_cache(maxsize=None)
def segre_bound(z: FatPointScheme) -> SegreReport:
    """Full report: T_j witnesses for j = 1..n, T = max T_j, least attaining j."""
    witnesses = tuple(_witness_for_j(z, j) for j in range(1, z.n + 1))
    bound = max(w.value for w in witnesses)
    p_min = next(w.j for w in witnesses if w.value == bound)
    return SegreReport(z, witnesses, bound, p_min)


# ---------------------------------------------------------------------------
# closed-form regularity catalog

FORMULA_TAGS = (
    "davis_geramita",
    "ctv_rnc",
    "ctv_general_position",
    "thien_s_plus_2",
    "ts_general_on_flat",
    "ts_equimultiple",
    "equimultiple_small_s",
    "thm_4_3",
)


@dataclass(frozen=True)
class FormulaHypothesis:
    """One closed-form case; ``curve_map`` carries a rational normal curve
    as an invertible coordinate change from the standard curve (identity
    means the standard curve itself)."""

    tag: str
    curve_map: Matrix | None = None

    def __post_init__(self):
        if self.tag not in FORMULA_TAGS:
            raise InvalidInputError(f"unknown formula tag {self.tag!r}")


def _require(condition: bool, description: str) -> None:
    if not condition:
        raise HypothesisNotMetError(description)


def _sorted_mults(z: FatPointScheme) -> list[int]:
    return sorted(z.multiplicities, reverse=True)


def _on_standard_rnc(point) -> bool:
    field = point.field
    coords = point.coords
    n = point.n
    if field.is_zero(coords[0]):
        # the only curve point with first coordinate zero is (0, ..., 0, 1)
        return all(field.is_zero(c) for c in coords[1:-1]) and not field.is_zero(coords[-1])
    u = coords[1]  # normalized: coords[0] == 1
    power = field.one
    for k in range(n + 1):
        if coords[k] != power:
            return False
        power = field.mul(power, u)
    return True


def _points_on_rnc(z: FatPointScheme, curve_map: Matrix | None) -> bool:
    if z.n == 1:
        return True  # the curve of degree 1 in P^1 is the whole line
    if curve_map is None:
        points = z.points
    else:
        ensure_same_field(z.field, curve_map.field, "scheme and curve map")
        if curve_map.rows != z.n + 1 or curve_map.cols != z.n + 1:
            raise InvalidInputError("curve map must be a square coordinate change")
        back = invert(curve_map)
        from .geometry import ProjectivePoint

        points = [ProjectivePoint.make(z.field, mat_vec(back, list(p.coords))) for p in z.points]
    return all(_on_standard_rnc(p) for p in points)


def validate_hypothesis(z: FatPointScheme, hyp: FormulaHypothesis) -> None:
    """Raise HypothesisNotMetError naming the first failed condition."""
    tag = hyp.tag
    mults = _sorted_mults(z)
    if tag == "davis_geramita":
        _require(is_collinear(z.points), "support must lie on a line")
    elif tag == "ctv_rnc":
        _require(z.s >= 2, "needs at least two points")
        _require(_points_on_rnc(z, hyp.curve_map), "support must lie on the given rational normal curve")
    elif tag == "ctv_general_position":
        _require(z.n >= 3, "needs ambient dimension n >= 3")
        _require(2 <= z.s <= z.n + 2, "needs 2 <= s <= n + 2")
        _require(mults[0] >= 2, "needs largest multiplicity >= 2")
        _require(in_linearly_general_position(z.points), "points must be in linearly general position")
    elif tag == "thien_s_plus_2":
        k = z.s - 2
        _require(1 <= k <= z.n, "needs s = k + 2 points with 1 <= k <= n")
        _require(span_dim(z.points) >= k, "points must not lie in a (k-1)-dimensional flat")
    elif tag == "ts_general_on_flat":
        r = span_dim(z.points)
        _require(r >= 1, "span must be at least a line")
        _require(z.s <= r + 3, "needs s <= r + 3 with r the span dimension")
        _require(in_general_position_on_span(z.points), "points must be in general position on their span")
    elif tag == "ts_equimultiple":
        _require(len(set(z.multiplicities)) == 1, "scheme must be equimultiple")
        _require(z.multiplicities[0] != 2, "needs multiplicity m != 2")
        k = z.s - 3
        _require(1 <= k <= z.n, "needs s = k + 3 points with 1 <= k <= n")
        _require(span_dim(z.points) >= k, "points must not lie in a (k-1)-dimensional flat")
    elif tag == "equimultiple_small_s":
        _require(len(set(z.multiplicities)) == 1, "scheme must be equimultiple")
        _require(z.s <= 5, "needs at most 5 points")
    elif tag == "thm_4_3":
        _require(len(set(z.multiplicities)) == 1, "scheme must be equimultiple")
        _require(z.s <= z.n + 3, "needs s <= n + 3")
        _require(span_dim(z.points) == z.n, "support must span the ambient space")


def closed_form_reg(z: FatPointScheme, hyp: FormulaHypothesis) -> int:
    """Exact regularity by formula, after hypothesis validation.

    Only geometry (spans, flats) is used; no condition matrices.
    """
    validate_hypothesis(z, hyp)
    tag = hyp.tag
    mults = _sorted_mults(z)
    if tag == "davis_geramita":
        return z.total_multiplicity - 1
    if tag == "ctv_rnc":
        return max(mults[0] + mults[1] - 1, (z.total_multiplicity + z.n - 2) // z.n)
    if tag == "ctv_general_position":
        return mults[0] + mults[1] - 1
    if tag == "ts_general_on_flat":
        r = span_dim(z.points)
        t1 = mults[0] + mults[1] - 1 if z.s >= 2 else mults[0] - 1
        return max(t1, (z.total_multiplicity + r - 2) // r)
    # the remaining cases all assert attainment of the Segre bound
    return segre_bound(z).bound
