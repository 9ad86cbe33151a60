from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.components import linear as la
from src.components.errors import InputError
from src.components.homology import adjunction_matrix
from src.components.modules import (
    Bimodule,
    RightModule,
    bar_bimodule,
    direct_sum,
    free_bimodule,
    injective_module,
    module_maps,
    projective_module,
    random_module,
    regular_bimodule,
    simple_module,
    tensor_over,
    tensor_product,
    top,
    top_bimodule,
)
from src.data.catalog import catalog_algebra


def test_kronecker_indecomposables(kronecker):
    assert projective_module(kronecker, 0).dimension_vector() == (1, 2)
    assert projective_module(kronecker, 1).dimension_vector() == (0, 1)
    assert simple_module(kronecker, 0).dimension_vector() == (1, 0)
    assert injective_module(kronecker, 0).dimension_vector() == (1, 0)
    assert injective_module(kronecker, 1).dimension_vector() == (2, 1)


def test_constructed_modules_validate(kronecker, dual_numbers):
    for a in (kronecker, dual_numbers):
        for m in (regular_bimodule(a), top_bimodule(a), bar_bimodule(a), free_bimodule(a, 2)):
            m.validate()
    assert bar_bimodule(dual_numbers).dim == 4
    assert top_bimodule(dual_numbers).dim == 1


def test_module_rejects_wrong_shapes(kronecker, qq):
    with pytest.raises(InputError):
        RightModule(kronecker, 2, tuple(la.zeros(qq, 2, 2) for _ in range(3)))
    with pytest.raises(InputError):
        RightModule(kronecker, 2, tuple(la.zeros(qq, 1, 1) for _ in range(4)))


def test_non_multiplicative_action_is_rejected(dual_numbers, qq):
    # x acting invertibly contradicts x*x = 0
    m = RightModule(dual_numbers, 1, (la.identity(qq, 1), la.identity(qq, 1)))
    with pytest.raises(InputError):
        m.validate()


def test_tensor_with_regular_bimodule_is_identity(kronecker):
    reg = regular_bimodule(kronecker)
    for i in range(2):
        p = projective_module(kronecker, i)
        assert tensor_product(p, reg).dim == p.dim
    s = simple_module(kronecker, 0)
    assert tensor_over(s, reg).dimension_vector() == (1, 0)


def test_tensor_with_top_gives_the_top(kronecker):
    p = projective_module(kronecker, 0)
    assert tensor_over(p, top_bimodule(kronecker)).dimension_vector() == (1, 0)
    quotient, _ = top(p)
    assert quotient.dim == 1


def test_free_tensor_powers_multiply_dimension(k_alg):
    sigma = free_bimodule(k_alg, 2)
    square = tensor_over(sigma, sigma)
    assert square.dim == 4
    assert tensor_over(square, sigma).dim == 8


def test_hom_from_projective_reads_the_vertex_space(kronecker):
    m = direct_sum(kronecker, [simple_module(kronecker, 0), injective_module(kronecker, 1)])
    for i in range(2):
        assert module_maps(projective_module(kronecker, i), m).dim == m.vertex_space(i).dim


def test_bimodule_opposite_round_trip(dual_numbers):
    bar = bar_bimodule(dual_numbers)
    op = bar.opposite()
    assert isinstance(op, Bimodule)
    op.validate()
    assert op.opposite().dim == bar.dim


@pytest.mark.parametrize("name", ["kronecker", "dual-numbers", "a3-rad2"])
def test_random_modules_are_modules(name):
    a = catalog_algebra(name)
    rng = random.Random(7)
    for _ in range(10):
        m = random_module(a, 6, rng)
        m.validate()
        assert 0 < m.dim <= 6


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000), st.sampled_from(["kronecker", "a2", "dual-numbers"]))
def test_tensor_hom_adjunction_is_invertible(seed, name):
    a = catalog_algebra(name)
    rng = random.Random(seed)
    m = random_module(a, 3, rng)
    n = random_module(a, 3, rng)
    sigma = regular_bimodule(a) if seed % 2 else top_bimodule(a)
    matrix = adjunction_matrix(m, sigma, n)
    assert matrix.shape[0] == matrix.shape[1]
    assert la.rank(matrix) == matrix.shape[0]
