"""Exact linear algebra: vectors, rref, hyperplanes, ambient reduction."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polykap.errors import DimensionMismatchError, PreconditionError
from polykap.exact import (
    AffineSubspace,
    Hyperplane,
    affine_rank,
    as_vec,
    dot,
    hyperplane_through,
    matrix_rank,
    null_space,
    primitive_int,
    rref,
    side_of,
    solve_linear,
    sum_constraint_space,
    unit,
    vadd,
    vscale,
    vsub,
)

rats = st.fractions(
    min_value=-50, max_value=50, max_denominator=12
)


def test_vector_ops():
    a = as_vec((1, Fraction(1, 2), -3))
    b = as_vec((0, 2, 1))
    assert vadd(a, b) == (1, Fraction(5, 2), -2)
    assert vsub(a, b) == (1, Fraction(-3, 2), -4)
    assert vscale(2, a) == (2, 1, -6)
    assert dot(a, b) == Fraction(1, 2) * 2 - 3


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        dot((1, 2), (1, 2, 3))


def test_unit_and_primitive():
    assert unit(2, 3) == (0, 1, 0)
    assert primitive_int((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
    assert primitive_int((-2, 4, -6)) == (1, -2, 3)
    assert primitive_int((-2, 4, -6), orient=True) == (-1, 2, -3)
    assert primitive_int((0, 0)) == (0, 0)


@given(st.lists(rats, min_size=2, max_size=4), st.fractions(max_denominator=6))
@settings(max_examples=60, deadline=None)
def test_primitive_scale_invariance(entries, scale):
    if all(x == 0 for x in entries) or scale == 0:
        return
    v = as_vec(entries)
    assert primitive_int(v) == primitive_int(vscale(scale, v))
    if scale > 0:
        assert primitive_int(v, orient=True) == primitive_int(
            vscale(scale, v), orient=True
        )


def test_rref_and_rank():
    rows, pivots = rref([(1, 2, 3), (2, 4, 6), (0, 1, 1)])
    assert pivots == [0, 1]
    assert matrix_rank([(1, 2, 3), (2, 4, 6), (0, 1, 1)]) == 2
    assert matrix_rank([]) == 0


def test_null_space_orthogonality():
    rows = [(1, 1, 1, 0), (0, 1, 2, 1)]
    basis = null_space(rows, 4)
    assert len(basis) == 2
    for v in basis:
        for r in rows:
            assert dot(as_vec(r), v) == 0


@given(
    st.lists(st.lists(rats, min_size=3, max_size=3), min_size=1, max_size=3),
    st.lists(rats, min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_solve_linear_solves(rows, x):
    rows = [as_vec(r) for r in rows]
    x = as_vec(x)
    rhs = [dot(r, x) for r in rows]
    sol = solve_linear(rows, rhs)
    assert sol is not None
    for r, b in zip(rows, rhs):
        assert dot(r, sol) == b


def test_solve_linear_inconsistent():
    assert solve_linear([(1, 0), (1, 0)], (1, 2)) is None


def test_affine_rank():
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(5, 5)]) == 0


def test_hyperplane_canonical():
    h1 = Hyperplane((0, 2, -2), 4)
    h2 = Hyperplane((0, -1, 1), -2)
    assert h1.same_flat(h2)
    assert h1.canonical() == Hyperplane((0, 1, -1), 2)
    with pytest.raises(PreconditionError):
        Hyperplane((0, 0), 1)


def test_side_of():
    h = Hyperplane((1, 1), 3)
    assert side_of(h, (1, 1)) == -1
    assert side_of(h, (2, 1)) == 0
    assert side_of(h, (9, 9)) == 1


def test_sum_constraint_space():
    amb = sum_constraint_space(3, 6)
    assert amb.subspace_dim == 2
    assert amb.contains((1, 2, 3))
    assert not amb.contains((1, 2, 4))


def test_reduce_inequality_projects_offset():
    # on x1+x2+x3 = 6, the inequality x2+x3 <= 5 has the same canonical
    # form as -x1 <= -1, i.e. primitive (-2,1,1) <= 4 after projection
    amb = sum_constraint_space(3, 6)
    a = amb.reduce_inequality((0, 1, 1), 5)
    b = amb.reduce_inequality((-1, 0, 0), -1)
    assert a == b
    assert a.normal == (-2, 1, 1)
    # consistency: a point of the flat satisfies both forms with equality
    p = (1, 2, 3)
    assert dot(a.normal, p) == a.offset


def test_reduce_inequality_vanishing():
    amb = sum_constraint_space(3, 0)
    with pytest.raises(PreconditionError):
        amb.reduce_inequality((1, 1, 1), 2)


def test_hyperplane_through():
    amb = sum_constraint_space(3, 6)
    h = hyperplane_through([(1, 2, 3), (2, 1, 3)], amb)
    assert h is not None
    assert side_of(h, (1, 2, 3)) == 0
    assert side_of(h, (2, 1, 3)) == 0
    # order independence
    assert h == hyperplane_through([(2, 1, 3), (1, 2, 3)], amb)
    # too few points: spans codimension 2, not a hyperplane of the flat
    assert hyperplane_through([(1, 2, 3)], amb) is None


def test_affine_subspace_project_normal():
    amb = sum_constraint_space(4, 0)
    proj = amb.project_normal((1, 0, 0, 0))
    assert sum(proj) == 0
    # projection fixes vectors already orthogonal to the constraints
    w = (1, -1, 0, 0)
    assert amb.project_normal(w) == as_vec(w)
