"""Condition matrices, Hilbert functions, regularity and graded sums."""

import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import make_point, make_scheme
from fatpoints.errors import (
    InvalidInputError,
    UnsupportedCharacteristicError,
)
from fatpoints.fields import DEFAULT_PRIME, PrimeField, QQ
from fatpoints.generators import GenSpec, generate
from fatpoints.geometry import flat_from_points
from fatpoints.linalg import Matrix, rank
from fatpoints.monomials import monomial_count
from fatpoints.schemes import (
    FatPointScheme,
    apply_projectivity,
    conditions_matrix,
    embed,
    graded_sum_contains,
    hilbert,
    hilbert_profile,
    ideal_dim,
    monomial_in_sum,
    multiplicity,
    quotient_sum_reg,
    regularity_index,
    restrict_to_flat,
    subscheme,
    sum_graded_dim,
    with_field,
)
from oracles import substitution_ideal_dim, sum_graded_dim_stacked


def random_small_scheme(rng, n_max=3, s_max=4, m_max=3, bound=9):
    n = rng.randint(1, n_max)
    s = rng.randint(1, s_max)
    pts = []
    seen = set()
    while len(pts) < s:
        c = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if not any(c):
            continue
        p = make_point(c)
        if p.coords not in seen:
            seen.add(p.coords)
            pts.append(p)
    mults = [rng.randint(1, m_max) for _ in range(s)]
    return FatPointScheme.make(QQ, n, list(zip(pts, mults)))


# --- condition matrices ----------------------------------------------------


def test_simple_point_row():
    z = make_scheme(3, [((1, 2, 3, 4), 1)])
    cm = conditions_matrix(z, 1)
    assert cm.matrix.rows == 1 and cm.matrix.cols == 4
    assert rank(cm.matrix) == 1


def test_double_point_in_p1():
    z = make_scheme(1, [((1, 5), 2)])
    cm = conditions_matrix(z, 2)
    assert cm.matrix.rows == 2 and cm.matrix.cols == 3
    assert rank(cm.matrix) == 2
    assert ideal_dim(z, 2) == 1  # the square of the line through the point


def test_double_point_matrix_entries_golden():
    # columns X_0^2, X_0X_1, X_1^2; rows d/dX_0, d/dX_1 at P = (1, 5)
    z = make_scheme(1, [((1, 5), 2)])
    cm = conditions_matrix(z, 2)
    assert cm.matrix.to_rows() == [[2, 5, 0], [0, 1, 10]]


def test_monomial_order_golden():
    from fatpoints.monomials import exponents

    assert exponents(3, 2) == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )


def test_block_shape_matches_multiplicities():
    z = make_scheme(2, [((1, 0, 0), 3), ((0, 1, 0), 1)])
    cm = conditions_matrix(z, 4)
    # blocks of C(m-1+n, n) rows: C(4,2)=6 and C(2,2)=1
    assert cm.matrix.rows == 7
    assert cm.matrix.cols == monomial_count(2, 4)


def test_negative_degree_rejected():
    z = make_scheme(1, [((1, 1), 1)])
    with pytest.raises(InvalidInputError):
        conditions_matrix(z, -1)


def test_characteristic_guard():
    f = PrimeField(5)
    z = make_scheme(1, [((1, 2), 2)], field=f)
    conditions_matrix(z, 4)
    with pytest.raises(UnsupportedCharacteristicError):
        conditions_matrix(z, 5)
    with pytest.raises(UnsupportedCharacteristicError):
        hilbert(z, 7)


@given(st.integers(0, 100_000))
def test_derivative_rows_match_substitution_oracle(seed):
    rng = random.Random(seed)
    z = random_small_scheme(rng)
    t_top = min(z.total_multiplicity - 1, 6)
    for t in range(t_top + 1):
        assert ideal_dim(z, t) == substitution_ideal_dim(z, t)


# --- Hilbert function ------------------------------------------------------


def test_ideal_dim_examples():
    # two distinct simple points in P^2 at t=1: the one line through them
    z = make_scheme(2, [((1, 0, 0), 1), ((1, 1, 1), 1)])
    assert ideal_dim(z, 1) == 1
    # constants never vanish
    z2 = make_scheme(2, [((1, 0, 0), 2), ((1, 1, 1), 1)])
    assert ideal_dim(z2, 0) == 0
    assert hilbert(z2, 0) == 1


def test_multiplicity_examples():
    z = generate(GenSpec("generic", n=4, s=7, m=2, seed=3, coord_bound=50))
    assert multiplicity(z) == 35
    assert multiplicity(make_scheme(3, [((1, 2, 3, 4), 1)])) == 1
    z3 = make_scheme(2, [((1, 0, 0), 1), ((0, 1, 0), 2), ((0, 0, 1), 3)])
    assert multiplicity(z3) == 1 + 3 + 6


def test_seven_generic_double_points_in_p4():
    z = generate(GenSpec("generic", n=4, s=7, m=2, seed=3, coord_bound=50))
    assert hilbert(z, 3) == 34
    assert ideal_dim(z, 3) == 1
    assert regularity_index(z) == 4
    assert hilbert(z, 4) == 35


def test_single_fat_point_regularity():
    p = (1, 2, 3)
    for m in (1, 2, 4):
        z = make_scheme(2, [(p, m)])
        assert regularity_index(z) == m - 1


def test_collinear_triple_regularity():
    z = make_scheme(2, [((1, 0, 0), 1), ((1, 1, 0), 1), ((1, 2, 0), 1)])
    assert regularity_index(z) == 2


def test_two_line_configuration_regularity():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    assert regularity_index(z) == 5


def test_hilbert_profile_collinear():
    z = make_scheme(2, [((1, 0, 0), 1), ((1, 1, 0), 1), ((1, 2, 0), 1)])
    prof = hilbert_profile(z, 3)
    assert prof.hilbert_values == (1, 2, 3, 3)
    assert prof.ideal_dims == (0, 1, 3, 7)
    assert prof.multiplicity == 3
    assert prof.regularity == 2


def test_hilbert_profile_double_point():
    z = make_scheme(2, [((1, 1, 1), 2)])
    prof = hilbert_profile(z, 2)
    assert prof.hilbert_values == (1, 3, 3)
    assert prof.multiplicity == 3
    assert prof.regularity == 1


def test_hilbert_profile_before_stabilization():
    z = make_scheme(2, [((1, 0, 0), 1), ((1, 1, 0), 1), ((1, 2, 0), 1)])
    assert hilbert_profile(z, 1).regularity is None


@given(st.integers(0, 100_000))
def test_conservation_and_monotone_stabilization(seed):
    rng = random.Random(seed)
    z = random_small_scheme(rng)
    e = multiplicity(z)
    reg = regularity_index(z)
    prev = None
    for t in range(reg + 2):
        h = hilbert(z, t)
        assert h + ideal_dim(z, t) == monomial_count(z.n, t)
        assert h <= e
        if prev is not None:
            assert h >= prev
            if prev < e:
                assert h > prev  # strict increase below the multiplicity
        prev = h
    assert hilbert(z, reg) == e
    if reg > 0:
        assert hilbert(z, reg - 1) < e


@given(st.integers(0, 100_000))
def test_projective_invariance_of_hilbert_data(seed):
    rng = random.Random(seed)
    z = random_small_scheme(rng, n_max=2, s_max=3)
    n = z.n
    for _ in range(50):
        t = Matrix.from_rows(QQ, [[rng.randint(-4, 4) for _ in range(n + 1)] for _ in range(n + 1)])
        if rank(t) == n + 1:
            break
    else:
        pytest.skip("no invertible matrix drawn")
    moved = apply_projectivity(z, t)
    assert multiplicity(moved) == multiplicity(z)
    reg = regularity_index(z)
    assert regularity_index(moved) == reg
    for tt in range(reg + 1):
        assert hilbert(moved, tt) == hilbert(z, tt)


def test_prime_mode_agrees_on_small_schemes():
    rng = random.Random(12)
    f = PrimeField(DEFAULT_PRIME)
    for _ in range(5):
        z = random_small_scheme(rng)
        zp = with_field(z, f)
        assert regularity_index(zp) == regularity_index(z)
        for t in range(regularity_index(z) + 1):
            assert hilbert(zp, t) == hilbert(z, t)


# --- subschemes, embeddings, restriction -----------------------------------


def test_subscheme_examples():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    assert subscheme(z, range(6)) == z
    u = subscheme(z, [0, 1, 2, 3, 4])
    assert u.s == 5 and regularity_index(u) == 5
    single = subscheme(z, [3])
    assert regularity_index(single) == 1
    with pytest.raises(InvalidInputError):
        subscheme(z, [])
    with pytest.raises(InvalidInputError):
        subscheme(z, [0, 0])
    with pytest.raises(InvalidInputError):
        subscheme(z, [17])


def test_embed_identity_block_is_identity():
    z = make_scheme(2, [((1, 2, 3), 2), ((1, 0, 1), 1)])
    assert embed(z, 2) == z


def test_embed_two_line_configuration_keeps_regularity():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    widened = embed(z, 5, seed=4)
    assert widened.n == 5
    assert regularity_index(widened) == 5


def test_embed_changes_multiplicity_not_regularity():
    z = make_scheme(1, [((1, 0), 2), ((1, 1), 2), ((1, 3), 1)])
    widened = embed(z, 3, seed=8)
    assert multiplicity(z) == 2 + 2 + 1
    assert multiplicity(widened) == 4 + 4 + 1
    assert regularity_index(widened) == regularity_index(z) == 4


def test_embed_rejects_bad_maps():
    z = make_scheme(1, [((1, 0), 1), ((1, 1), 1)])
    bad = Matrix.from_rows(QQ, [[1, 0], [2, 0], [3, 0]])
    with pytest.raises(InvalidInputError):
        embed(z, 2, mapping=bad)
    with pytest.raises(InvalidInputError):
        embed(z, 0)


def test_restrict_collinear_doubles_to_their_line():
    z = make_scheme(3, [((1, 1, 2, 3), 2), ((1, 2, 4, 6), 2), ((1, 0, 0, 0), 2)])
    line = flat_from_points(list(z.points))
    assert line.dim == 1
    restricted = restrict_to_flat(z, line)
    assert restricted.n == 1
    assert regularity_index(z) == 5
    assert regularity_index(restricted) == 5


def test_restrict_to_ambient_space_is_projectively_trivial():
    z = make_scheme(2, [((1, 0, 0), 2), ((0, 1, 0), 1), ((1, 1, 1), 1)])
    ambient = flat_from_points(list(z.points))
    assert ambient.dim == 2
    back = restrict_to_flat(z, ambient)
    assert back.n == 2
    assert regularity_index(back) == regularity_index(z)
    assert [hilbert(back, t) for t in range(4)] == [hilbert(z, t) for t in range(4)]


def test_restrict_requires_points_on_flat():
    z = make_scheme(2, [((1, 0, 0), 1), ((0, 0, 1), 1)])
    line = flat_from_points([make_point((1, 0, 0)), make_point((0, 1, 0))])
    with pytest.raises(InvalidInputError):
        restrict_to_flat(z, line)


def test_restrict_round_trip_profiles():
    z = generate(GenSpec("rnc", n=2, s=4, m=(2, 1, 1, 2), seed=6))
    widened = embed(z, 4, seed=11)
    span = flat_from_points(list(widened.points))
    back = restrict_to_flat(widened, span)
    reg = regularity_index(z)
    assert regularity_index(back) == reg
    for t in range(reg + 2):
        assert hilbert(back, t) == hilbert(z, t)


# --- graded pieces of J + q^a ----------------------------------------------


def test_sum_graded_dim_examples():
    n = 3
    j = make_scheme(n, [((0, 1, 0, 0), 1)])
    p = make_point((1, 0, 0, 0))
    assert sum_graded_dim(j, p, 1, 1) == n + 1
    assert sum_graded_dim(j, p, 1, 0) == 0
    for t in range(4):
        lhs = sum_graded_dim(j, p, 2, t)
        assert lhs >= ideal_dim(j, t)
        assert lhs >= ideal_dim(make_scheme(n, [((1, 0, 0, 0), 2)]), t)


@given(st.integers(0, 100_000))
def test_sum_graded_dim_matches_stacked_nullspaces(seed):
    rng = random.Random(seed)
    z = random_small_scheme(rng, n_max=2, s_max=3, m_max=2)
    p = make_point([rng.randint(1, 9) for _ in range(z.n + 1)])
    if any(p.coords == q.coords for q in z.points):
        return
    a = rng.randint(1, 2)
    for t in range(z.total_multiplicity + a):
        assert sum_graded_dim(z, p, a, t) == sum_graded_dim_stacked(z, p, a, t)


def test_sum_rejects_support_point():
    z = make_scheme(1, [((1, 0), 1)])
    with pytest.raises(InvalidInputError):
        sum_graded_dim(z, make_point((1, 0)), 1, 1)


def test_quotient_sum_reg_simple():
    j = make_scheme(2, [((0, 1, 0), 1)])
    assert quotient_sum_reg(j, make_point((1, 0, 0)), 1) == 1


def test_quotient_sum_reg_two_line_configuration():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=1, coord_bound=40))
    u = subscheme(z, [0, 1, 2, 3, 4])
    assert quotient_sum_reg(u, z.points[5], 2) <= 5


@given(st.integers(0, 100_000))
def test_decomposition_identity(seed):
    rng = random.Random(seed)
    z = random_small_scheme(rng, n_max=2, s_max=3, m_max=2)
    if z.s < 2:
        return
    k = rng.randrange(z.s)
    rest = subscheme(z, [i for i in range(z.s) if i != k])
    a = z.multiplicities[k]
    value = max(a - 1, regularity_index(rest), quotient_sum_reg(rest, z.points[k], a))
    assert value == regularity_index(z)


def test_monomial_in_sum_basic():
    j = make_scheme(2, [((0, 1, 0), 1)])  # X_0 vanishes on the support
    p = make_point((1, 0, 0))
    assert monomial_in_sum(3, 0, (0, 0), j, p)
    blocker = make_scheme(2, [((0, 0, 1), 5)])  # no degree-3 forms in J
    assert not monomial_in_sum(3, 1, (1, 0), blocker, p)
    assert graded_sum_contains(None, p, 1, 3, (1, 2, 0))
    with pytest.raises(InvalidInputError):
        monomial_in_sum(3, 1, (1, 1), j, p)


def test_quotient_reg_monomial_equivalence():
    z = generate(GenSpec("example_4_4", n=2, m=2, seed=2, coord_bound=30))
    u = subscheme(z, [0, 1, 2, 3, 4])
    p = z.points[5]
    a = 2
    q = quotient_sum_reg(u, p, a)

    def all_monomials_in(b):
        for i in range(a):
            for exps in product(range(i + 1), repeat=u.n):
                if sum(exps) == i and not monomial_in_sum(b, i, exps, u, p):
                    return False
        return True

    for b in (q - 1, q, q + 1):
        assert (q <= b) == all_monomials_in(b)


# --- validation ------------------------------------------------------------


def test_scheme_validation():
    with pytest.raises(InvalidInputError):
        FatPointScheme.make(QQ, 2, [])
    with pytest.raises(InvalidInputError):
        make_scheme(2, [((1, 0, 0), 0)])
    with pytest.raises(InvalidInputError):
        make_scheme(2, [((1, 0, 0), 1), ((2, 0, 0), 1)])  # same projective point


def test_with_field_round_trip_values():
    z = make_scheme(2, [((1, 2, 3), 2), ((1, 0, 1), 1)])
    zp = with_field(z, PrimeField(DEFAULT_PRIME))
    assert zp.field.p == DEFAULT_PRIME
    with pytest.raises(InvalidInputError):
        with_field(zp, QQ)
