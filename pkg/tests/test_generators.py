"""Family generators: determinism, soundness, resampling contracts."""

import pytest

from fatpoints.errors import GenerationFailureError, InvalidInputError
from fatpoints.generators import GenSpec, generate, resample_until
from fatpoints.geometry import (
    contains,
    flat_from_points,
    in_linearly_general_position,
    is_collinear,
    is_nondegenerate,
    span_dim,
)
from fatpoints.schemes import regularity_index
from fatpoints.segre import segre_T_j, segre_bound


def test_determinism():
    spec = GenSpec("generic", n=3, s=5, m=(2, 1, 1, 2, 1), seed=77)
    assert generate(spec) == generate(spec)
    other = GenSpec("generic", n=3, s=5, m=(2, 1, 1, 2, 1), seed=78)
    assert generate(other) != generate(spec)


def test_simplex():
    z = generate(GenSpec("simplex", n=3, m=2, seed=0))
    assert z.s == 4
    coords = sorted(p.coords for p in z.points)
    assert coords == [
        (0, 0, 0, 1),
        (0, 0, 1, 0),
        (0, 1, 0, 0),
        (1, 0, 0, 0),
    ]
    assert in_linearly_general_position(list(z.points))
    with pytest.raises(InvalidInputError):
        generate(GenSpec("simplex", n=3, s=5))


def test_generic_soundness():
    z = generate(GenSpec("generic", n=4, s=7, m=2, seed=5, coord_bound=100))
    assert in_linearly_general_position(list(z.points))
    assert is_nondegenerate(list(z.points), 4)


def test_collinear_soundness():
    z = generate(GenSpec("collinear", n=3, s=5, m=(1, 2, 3, 1, 1), seed=9))
    assert is_collinear(list(z.points))
    assert z.multiplicities == (1, 2, 3, 1, 1)


def test_rnc_soundness():
    z = generate(GenSpec("rnc", n=4, s=7, m=1, seed=11))
    for p in z.points:
        t = p.coords[1]
        assert p.coords == tuple(t**k for k in range(5))
    from fatpoints.segre import FormulaHypothesis, closed_form_reg

    assert closed_form_reg(z, FormulaHypothesis("ctv_rnc")) == regularity_index(z)


def test_on_flat_soundness():
    z = generate(GenSpec("on_flat_general_position", n=4, r=2, s=5, m=1, seed=2, coord_bound=60))
    assert span_dim(list(z.points)) == 2
    from fatpoints.geometry import in_general_position_on_span

    assert in_general_position_on_span(list(z.points))


def test_two_line_soundness():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    pts = list(z.points)
    l1 = flat_from_points(pts[:3])
    assert l1.dim == 1
    l2 = flat_from_points(pts[3:5])
    assert l2.dim == 1 and l1 != l2
    assert all(not contains(l2, q) for q in pts[:3])
    assert not contains(l1, pts[5]) and not contains(l2, pts[5])
    # the sixth point avoids every line through two of the first five
    for i in range(5):
        for j in range(i + 1, 5):
            assert not contains(flat_from_points([pts[i], pts[j]]), pts[5])
    assert generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40)) == z
    with pytest.raises(InvalidInputError):
        generate(GenSpec("example_4_4", n=3, m=2))


def test_two_line_values():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    assert segre_bound(z).bound == 6
    assert regularity_index(z) == 5


def test_nonattainment_family_t_values():
    for n, m in ((3, 1), (3, 2), (4, 2)):
        z = generate(GenSpec("corollary_4_5", n=n, m=m, seed=5, coord_bound=30))
        assert z.s == n + 4
        assert is_nondegenerate(list(z.points), n)
        assert segre_T_j(z, 1) == 3 * m - 1
        assert segre_T_j(z, 2) == 3 * m
        for j in range(3, n):
            assert segre_T_j(z, j) == m + (4 * m + j - 2) // j
        assert segre_bound(z).bound == 3 * m
    with pytest.raises(InvalidInputError):
        generate(GenSpec("corollary_4_5", n=1, m=2))


def test_resample_until_contracts():
    spec = GenSpec("generic", n=4, s=7, m=1, seed=3, coord_bound=10_000)
    result = resample_until(lambda z: True, spec, max_tries=5)
    assert result.tries == 1
    assert in_linearly_general_position(list(result.scheme.points))

    with pytest.raises(GenerationFailureError):
        resample_until(lambda z: False, spec, max_tries=3)
    with pytest.raises(InvalidInputError):
        resample_until(lambda z: True, spec, max_tries=0)


def test_unknown_family_rejected():
    with pytest.raises(InvalidInputError):
        generate(GenSpec("not-a-family", n=2, s=3))


def test_bad_multiplicities_rejected():
    with pytest.raises(InvalidInputError):
        generate(GenSpec("generic", n=2, s=3, m=(1, 2)))
    with pytest.raises(InvalidInputError):
        generate(GenSpec("generic", n=2, s=3, m=0))
