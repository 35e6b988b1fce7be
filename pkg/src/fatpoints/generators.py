"""Seeded generators for the configuration families under study.

Every family verifies its defining predicate on the emitted scheme instead
of trusting the construction; random draws that land on a measure-zero bad
locus are simply redrawn (bounded retries, then a generation failure).
Equal specs, including the seed, produce identical schemes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import GenerationFailureError, InvalidInputError
from .fields import QQ
from .geometry import (
    ProjectivePoint,
    flat_from_points,
    in_linearly_general_position,
    is_collinear,
    is_nondegenerate,
    span_dim,
)
from .schemes import FatPointScheme

FAMILIES = (
    "generic",
    "collinear",
    "simplex",
    "rnc",
    "on_flat_general_position",
    "example_4_4",
    "corollary_4_5",
)

DEFAULT_COORD_BOUND = 10_000
DEFAULT_MAX_TRIES = 64


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one configuration family draw."""

    family: str
    n: int
    s: int | None = None
    m: int | tuple[int, ...] = 1
    seed: int = 0
    r: int | None = None  # flat dimension for on_flat_general_position
    coord_bound: int = DEFAULT_COORD_BOUND
    max_tries: int = DEFAULT_MAX_TRIES


class ResampleResult(NamedTuple):
    scheme: FatPointScheme
    tries: int


def _mult_list(spec: GenSpec, s: int) -> list[int]:
    if isinstance(spec.m, int):
        if spec.m < 1:
            raise InvalidInputError(f"multiplicity must be >= 1, got {spec.m}")
        return [spec.m] * s
    mults = list(spec.m)
    if len(mults) != s or any(not isinstance(m, int) or m < 1 for m in mults):
        raise InvalidInputError(f"need {s} positive multiplicities, got {spec.m!r}")
    return mults


def _rng(spec: GenSpec, attempt: int) -> random.Random:
    return random.Random(spec.seed * 1_000_003 + attempt)


def _random_point(rng: random.Random, n: int, bound: int) -> ProjectivePoint:
    while True:
        coords = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if any(coords):
            return ProjectivePoint.make(QQ, coords)


def _distinct_points(rng: random.Random, n: int, s: int, bound: int) -> list[ProjectivePoint]:
    points: list[ProjectivePoint] = []
    seen = set()
    guard = 0
    while len(points) < s:
        guard += 1
        if guard > 50 * s:
            raise GenerationFailureError("could not draw distinct points")
        p = _random_point(rng, n, bound)
        if p.coords not in seen:
            seen.add(p.coords)
            points.append(p)
    return points


def generate(spec: GenSpec) -> FatPointScheme:
    """Draw the family deterministically from the seed; predicate-checked."""
    if spec.family not in FAMILIES:
        raise InvalidInputError(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise InvalidInputError("ambient dimension must be >= 1")
    builder = _BUILDERS[spec.family]
    return resample_until(lambda z: True, spec, spec.max_tries, _builder=builder).scheme


def resample_until(
    predicate: Callable[[FatPointScheme], bool],
    spec: GenSpec,
    max_tries: int,
    _builder: Callable[[GenSpec, random.Random], FatPointScheme] | None = None,
) -> ResampleResult:
    """First draw of the family satisfying ``predicate``, with the try count.

    Family predicates are always enforced by the builders themselves;
    ``predicate`` is an extra filter on top.
    """
    if max_tries < 1:
        raise InvalidInputError("max_tries must be >= 1")
    builder = _builder if _builder is not None else _BUILDERS.get(spec.family)
    if builder is None:
        raise InvalidInputError(f"unknown family {spec.family!r}")
    last_reason = "family predicate failed"
    for attempt in range(max_tries):
        rng = _rng(spec, attempt)
        try:
            scheme = builder(spec, rng)
        except _RetryDraw as retry:
            last_reason = str(retry)
            continue
        if predicate(scheme):
            return ResampleResult(scheme, attempt + 1)
        last_reason = "caller predicate failed"
    raise GenerationFailureError(
        f"{spec.family}: no valid sample in {max_tries} tries ({last_reason})"
    )


class _RetryDraw(Exception):
    """Internal: this draw failed its family predicate; try the next seed."""


def _need_s(spec: GenSpec) -> int:
    if spec.s is None or spec.s < 1:
        raise InvalidInputError(f"family {spec.family!r} needs a point count s >= 1")
    return spec.s


def _build_generic(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    s = _need_s(spec)
    mults = _mult_list(spec, s)
    points = _distinct_points(rng, spec.n, s, spec.coord_bound)
    if not in_linearly_general_position(points):
        raise _RetryDraw("points not in linearly general position")
    return FatPointScheme.make(QQ, spec.n, list(zip(points, mults)))


def _build_collinear(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    s = _need_s(spec)
    mults = _mult_list(spec, s)
    bound = min(spec.coord_bound, 30)
    a = _random_point(rng, spec.n, bound)
    b = _random_point(rng, spec.n, bound)
    if span_dim([a, b]) != 1:
        raise _RetryDraw("base points of the line coincide")
    params = rng.sample(range(-(5 * s + 10), 5 * s + 11), s)
    points = [
        ProjectivePoint.make(QQ, [x + t * y for x, y in zip(a.coords, b.coords)])
        for t in params
    ]
    if len({p.coords for p in points}) != s or not is_collinear(points):
        raise _RetryDraw("degenerate draw on the line")
    return FatPointScheme.make(QQ, spec.n, list(zip(points, mults)))


def _build_simplex(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    s = spec.n + 1 if spec.s is None else spec.s
    if s != spec.n + 1:
        raise InvalidInputError(f"simplex in P^{spec.n} has exactly {spec.n + 1} points")
    mults = _mult_list(spec, s)
    points = [
        ProjectivePoint.make(QQ, [1 if j == i else 0 for j in range(spec.n + 1)])
        for i in range(s)
    ]
    return FatPointScheme.make(QQ, spec.n, list(zip(points, mults)))


def _build_rnc(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    s = _need_s(spec)
    mults = _mult_list(spec, s)
    bound = max(s, min(spec.coord_bound, 30))
    params = rng.sample(range(-bound, bound + 1), s)
    points = [
        ProjectivePoint.make(QQ, [t**k for k in range(spec.n + 1)]) for t in params
    ]
    return FatPointScheme.make(QQ, spec.n, list(zip(points, mults)))


def _build_on_flat(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    s = _need_s(spec)
    if spec.r is None or not (1 <= spec.r <= spec.n):
        raise InvalidInputError("on_flat_general_position needs a flat dimension r in [1, n]")
    mults = _mult_list(spec, s)
    inner = _distinct_points(rng, spec.r, s, spec.coord_bound)
    if not in_linearly_general_position(inner):
        raise _RetryDraw("points not in general position inside the flat")
    pad = spec.n - spec.r
    points = [ProjectivePoint.make(QQ, list(p.coords) + [0] * pad) for p in inner]
    return FatPointScheme.make(QQ, spec.n, list(zip(points, mults)))


def _line_through(p, q):
    return flat_from_points([p, q])


def _build_example_4_4(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    """Six points in P^2: three on one line, two on a second, one off both
    and off every line through two of the first five."""
    if spec.n != 2:
        raise InvalidInputError("the two-line configuration lives in P^2")
    if spec.s not in (None, 6):
        raise InvalidInputError("the two-line configuration has exactly 6 points")
    mults = _mult_list(spec, 6)
    bound = min(spec.coord_bound, 40)
    from .geometry import contains

    # l1 = {X_2 = 0}; P_1..P_3 on it
    xs = rng.sample(range(-bound, bound + 1), 3)
    p123 = [ProjectivePoint.make(QQ, [1, x, 0]) for x in xs]
    l1 = _line_through(p123[0], p123[1])
    # P_4, P_5 span l2, both off l1
    for _ in range(50):
        p4 = _random_point(rng, 2, bound)
        p5 = _random_point(rng, 2, bound)
        if contains(l1, p4) or contains(l1, p5) or span_dim([p4, p5]) != 1:
            continue
        l2 = _line_through(p4, p5)
        if any(contains(l2, q) for q in p123):
            continue
        break
    else:
        raise _RetryDraw("no valid second line")
    first5 = p123 + [p4, p5]
    avoid = [l1, l2] + [_line_through(a, b) for k, a in enumerate(first5) for b in first5[k + 1 :]]
    for _ in range(200):
        p6 = _random_point(rng, 2, bound)
        if all(not contains(line, p6) for line in avoid):
            break
    else:
        raise _RetryDraw("no valid sixth point")
    points = first5 + [p6]
    if len({p.coords for p in points}) != 6:
        raise _RetryDraw("duplicate point")
    return FatPointScheme.make(QQ, 2, list(zip(points, mults)))


def _build_corollary_4_5(spec: GenSpec, rng: random.Random) -> FatPointScheme:
    """The two-line configuration inside a 2-flat of P^n, completed by points
    that put P_4..P_{n+4} in linearly general position spanning P^n."""
    n = spec.n
    if n < 2:
        raise InvalidInputError("the nonattainment construction needs n >= 2")
    if spec.s not in (None, n + 4):
        raise InvalidInputError(f"the nonattainment construction has exactly {n + 4} points")
    mults = _mult_list(spec, n + 4)
    if len(set(mults)) != 1:
        raise InvalidInputError("the nonattainment construction is equimultiple")
    planar_spec = GenSpec(
        "example_4_4",
        n=2,
        m=spec.m if isinstance(spec.m, int) else spec.m[0],
        seed=spec.seed,
        coord_bound=spec.coord_bound,
        max_tries=spec.max_tries,
    )
    planar = generate(planar_spec)
    if n == 2:
        return planar
    pad = n - 2
    base = [ProjectivePoint.make(QQ, list(p.coords) + [0] * pad) for p in planar.points]
    bound = min(spec.coord_bound, 40)
    extra = _distinct_points(rng, n, n - 2, bound)
    spanning = base[3:6] + extra  # P_4 .. P_{n+4}: n+1 points
    if len({p.coords for p in base + extra}) != n + 4:
        raise _RetryDraw("duplicate point")
    if span_dim(spanning) != n or not in_linearly_general_position(spanning):
        raise _RetryDraw("completion points do not span in general position")
    points = base + extra
    if not is_nondegenerate(points, n):
        raise _RetryDraw("configuration is degenerate")
    return FatPointScheme.make(QQ, n, list(zip(points, mults)))


_BUILDERS = {
    "generic": _build_generic,
    "collinear": _build_collinear,
    "simplex": _build_simplex,
    "rnc": _build_rnc,
    "on_flat_general_position": _build_on_flat,
    "example_4_4": _build_example_4_4,
    "corollary_4_5": _build_corollary_4_5,
}
