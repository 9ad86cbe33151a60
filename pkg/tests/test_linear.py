from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.components import linear as la
from src.components.errors import ConsistencyError, InputError
from src.components.linear import FieldSpec


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-3, max_value=3), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def test_field_spec_rejects_composite_modulus():
    with pytest.raises(InputError):
        FieldSpec.prime(4)
    with pytest.raises(InputError):
        FieldSpec("R")


def test_field_spec_json_and_labels():
    assert FieldSpec.from_json("Q") == FieldSpec.rationals()
    assert FieldSpec.from_json({"Fp": 5}) == FieldSpec.prime(5)
    assert FieldSpec.prime(5).to_json() == {"Fp": 5}
    assert FieldSpec.rationals().label == "QQ"
    assert FieldSpec.prime(5).label == "GF(5)"


def test_prime_field_scalars_reduce(gf7):
    assert gf7.format(gf7.scalar(Fraction(1, 2))) == 4
    assert gf7.format(gf7.scalar(-1)) == 6
    assert gf7.format(gf7.scalar("3/5")) == 2


def test_rational_formatting(qq):
    assert qq.format(qq.scalar("3/6")) == "1/2"
    assert qq.format(qq.scalar(4)) == "4"


def test_rank_depends_on_the_field(qq, gf7):
    rows = [[1, 2], [3, 6 + 7]]
    assert la.rank(la.matrix(qq, rows)) == 2
    assert la.rank(la.matrix(gf7, rows)) == 1


def test_subspace_quotient_kills_the_basis(qq):
    sub = la.row_space(la.matrix(qq, [[1, 1, 0], [0, 1, 1]]))
    assert sub.dim == 2
    assert sub.codim == 1
    assert la.is_zero(sub.basis * sub.quotient_matrix())
    assert sub.contains(la.vector(qq, [1, 2, 1]))
    assert not sub.contains(la.vector(qq, [1, 0, 0]))


def test_quotient_coords_rejects_mismatched_vectors(qq):
    sub = la.zero_subspace(qq, 3)
    with pytest.raises(InputError):
        la.quotient_coords(3, sub, [1, 2])
    assert la.quotient_coords(3, sub, [1, 2, 3]) == [qq.scalar(1), qq.scalar(2), qq.scalar(3)]


def test_solve_left_inconsistent_system(qq):
    a = la.matrix(qq, [[1, 0], [2, 0]])
    with pytest.raises(ConsistencyError):
        la.solve_left(a, la.vector(qq, [0, 1]))


def test_assemble_places_blocks(qq):
    m = la.assemble(qq, (3, 3), [(1, 1, la.identity(qq, 2))])
    assert la.format_matrix(qq, m) == [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


@settings(max_examples=60, deadline=None, derandomize=True)
@given(small_matrices)
def test_rank_nullity(rows):
    field = FieldSpec.rationals()
    m = la.matrix(field, rows, len(rows[0]))
    assert la.rank(m) + la.kernel_basis(m).dim == m.shape[1]
    assert la.rank(m) + la.left_kernel(m).dim == m.shape[0]
    assert la.is_zero(m * la.kernel_basis(m).basis.transpose())


@settings(max_examples=60, deadline=None, derandomize=True)
@given(small_matrices, st.integers(min_value=0, max_value=10_000))
def test_solve_left_recovers_row_space_targets(rows, seed):
    field = FieldSpec.prime(7)
    a = la.matrix(field, rows, len(rows[0]))
    rng = random.Random(seed)
    x = la.random_matrix(field, 2, a.shape[0], rng)
    b = x * a
    solution = la.solve_left(a, b, rng)
    assert la.equal(solution * a, b)


def test_single_row_vectors_are_not_zero(qq, gf7):
    assert not la.is_zero(la.vector(qq, [1, 0]))
    assert not la.is_zero(la.vector(gf7, [0, 3]))
    assert la.is_zero(la.vector(gf7, [7, 0]))
    assert not la.equal(la.vector(qq, [1, 2]), la.vector(qq, [1, 3]))
    assert not la.row_space(la.vector(qq, [0, 1])).contains(la.vector(qq, [1, 0]))


@pytest.mark.parametrize(
    "field, rows, expected",
    [
        (FieldSpec.rationals(), [[1, 1], [1, 1]], [["1", "-1"]]),
        (FieldSpec.prime(2), [[1, 1]], [[1, 1]]),
    ],
)
def test_kernel_basis_is_canonical(field, rows, expected):
    kernel = la.kernel_basis(la.matrix(field, rows))
    assert la.format_matrix(field, kernel.basis) == expected
    assert la.row_space(kernel.basis).pivots == kernel.pivots


def test_kernel_of_the_identity(qq):
    assert la.kernel_basis(la.identity(qq, 3)).dim == 0


def test_quotient_coordinates(qq):
    first_axis = la.row_space(la.vector(qq, [1, 0]))
    assert la.quotient_coords(2, first_axis, [3, 5]) == [qq.scalar(5)]
    assert la.quotient_coords(2, la.full_subspace(qq, 2), [3, 5]) == []
    diagonal = la.row_space(la.vector(qq, [1, 1]))
    assert la.quotient_coords(2, diagonal, [1, 0]) == [qq.scalar(-1)]
    assert la.quotient_coords(2, diagonal, [2, 2]) == [qq.scalar(0)]
