from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.components import linear as la
from src.components.algebra import dual_bimodule
from src.components.errors import HypothesisNotSatisfied, UndeterminedError
from src.components.homology import (
    check_two_dimensional_hypothesis,
    ext,
    ext_bimodule,
    hom_over,
    hom_space,
    minimal_resolution,
    projective_cover,
    purity_power,
    purity_stabilization,
    rhom_purity_2dim,
    tor,
    tor_dimension,
    tor_dimension_mirrored,
)
from src.components.modules import (
    free_bimodule,
    injective_module,
    projective_module,
    random_module,
    regular_bimodule,
    regular_module,
    simple_module,
    top_bimodule,
)
from src.data.catalog import catalog_algebra


# --- resolutions --------------------------------------------------------------


def test_kronecker_simple_resolution(kronecker):
    res = minimal_resolution(simple_module(kronecker, 0), 4)
    res.verify()
    assert res.complete
    assert res.length == 1
    assert [t.vertices for t in res.terms] == [(0,), (1, 1)]
    assert res.term_dims() == [3, 2]


def test_projective_resolves_in_one_term(kronecker):
    res = minimal_resolution(projective_module(kronecker, 0), 4)
    assert res.complete and res.length == 0


def test_monomial_algebra_has_length_two_resolution(a3_rad2):
    res = minimal_resolution(simple_module(a3_rad2, 0), 4)
    res.verify()
    assert res.complete
    assert [t.vertices for t in res.terms] == [(0,), (1,), (2,)]


def test_dual_numbers_resolution_is_periodic(dual_numbers):
    res = minimal_resolution(simple_module(dual_numbers, 0), 3)
    res.verify()
    assert not res.complete
    assert res.term_dims() == [2, 2, 2, 2]
    assert all(d.is_radical() for d in res.differentials)


def test_non_basic_algebra_covers_are_minimal():
    m2 = catalog_algebra("m2")
    vertices, images = projective_cover(regular_module(m2))
    assert vertices == (0, 0)
    assert la.rank(images) == 2
    assert projective_cover(simple_module(m2, 0))[0] == (0,)
    assert projective_cover(simple_module(m2, 1))[0] == (0,)
    res = minimal_resolution(simple_module(m2, 1), 2)
    res.verify()
    assert res.complete and res.length == 0
    assert res.term_dims() == [2]


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000), st.sampled_from(["kronecker", "a3-rad2", "dual-numbers"]))
def test_random_resolutions_are_minimal_and_exact(seed, name):
    a = catalog_algebra(name)
    m = random_module(a, 5, random.Random(seed))
    res = minimal_resolution(m, 3)
    res.verify()
    assert all(d.is_radical() for d in res.differentials)


# --- Tor ----------------------------------------------------------------------


def test_tor_of_the_residue_field(dual_numbers):
    k = simple_module(dual_numbers, 0)
    s = top_bimodule(dual_numbers)
    res = minimal_resolution(k, 4)
    assert [tor_dimension(k, s, i, res) for i in range(4)] == [1, 1, 1, 1]
    group = tor(k, s, 2, res)
    group.validate()
    assert group.dim == 1


def test_tor_beyond_the_resolution_is_undetermined(dual_numbers):
    k = simple_module(dual_numbers, 0)
    res = minimal_resolution(k, 1)
    with pytest.raises(UndeterminedError):
        tor_dimension(k, top_bimodule(dual_numbers), 3, res)


def test_tor_against_the_regular_bimodule(kronecker, rng):
    reg = regular_bimodule(kronecker)
    for _ in range(5):
        m = random_module(kronecker, 5, rng)
        assert tor_dimension(m, reg, 0) == m.dim
        assert tor_dimension(m, reg, 1) == 0


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000), st.sampled_from(["kronecker", "a2", "a3-rad2"]), st.integers(0, 2))
def test_tor_balance(seed, name, degree):
    a = catalog_algebra(name)
    rng = random.Random(seed)
    m = random_module(a, 4, rng)
    sigma = top_bimodule(a) if seed % 2 else dual_bimodule(a)
    assert tor_dimension(m, sigma, degree) == tor_dimension_mirrored(m, sigma, degree)


# --- Ext ----------------------------------------------------------------------


def test_kronecker_ext_between_simples(kronecker):
    s1, s2 = simple_module(kronecker, 0), simple_module(kronecker, 1)
    assert ext(s1, s2, 1).dim == 2
    assert ext(s2, s1, 1).dim == 0
    assert ext(s1, s1, 0).dim == 1
    assert ext(projective_module(kronecker, 0), s1, 0).dim == 1


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000), st.sampled_from(["a2", "kronecker", "a3-rad2"]))
def test_ext_actions_do_not_depend_on_chain_lifts(seed, name):
    a = catalog_algebra(name)
    n = random_module(a, 4, random.Random(seed))
    first = ext(dual_bimodule(a), n, 1, rng=random.Random(seed + 1)).module
    second = ext(dual_bimodule(a), n, 1, rng=random.Random(seed + 2)).module
    assert first.dim == second.dim
    for x, y in zip(first.action, second.action):
        assert la.equal(x, y)
    first.validate()


def test_ext_actions_on_the_dual_over_a2(a2):
    first = ext(dual_bimodule(a2), regular_bimodule(a2), 1, rng=random.Random(1)).module
    second = ext(dual_bimodule(a2), regular_bimodule(a2), 1, rng=random.Random(2)).module
    assert first.dim == second.dim
    for x, y in zip(first.action, second.action):
        assert la.equal(x, y)


def test_ext_bimodule_of_the_dual(kronecker):
    theta = ext_bimodule(dual_bimodule(kronecker), regular_bimodule(kronecker), 1)
    assert theta.dim == 12
    assert theta.dimension_vector() == (5, 7)
    assert ext_bimodule(dual_bimodule(kronecker), regular_bimodule(kronecker), 0).dim == 0


def test_hom_from_the_regular_bimodule(kronecker):
    i2 = injective_module(kronecker, 1)
    assert hom_over(regular_bimodule(kronecker), i2).dimension_vector() == (2, 1)


def test_hom_space_round_trip(kronecker):
    p = projective_module(kronecker, 0)
    group = hom_space(regular_bimodule(kronecker), p)
    assert group.dim == p.dim
    for r in range(group.dim):
        coords = la.unit_rows(kronecker.field, [r], group.dim)
        assert la.equal(group.from_matrix(group.to_matrix(coords)), coords)


# --- purity -------------------------------------------------------------------


def test_residue_field_bimodule_is_impure(dual_numbers):
    ledger = purity_power(top_bimodule(dual_numbers), 2, 4)
    assert not ledger.pure
    assert ledger.verdict == "impure"
    assert ledger.witness == {"stage": 2, "degree": 1, "dim": 1}


def test_free_bimodule_powers_are_pure(k_alg):
    ledger = purity_power(free_bimodule(k_alg, 2), 4, 2)
    assert ledger.pure
    assert [s.dim for s in ledger.stages] == [2, 4, 8, 16]


def test_stabilization_negative_control(dual_numbers):
    report = purity_stabilization(simple_module(dual_numbers, 0), top_bimodule(dual_numbers), 6, 2, 3)
    assert not report.found
    assert report.verdict == "not-found"
    assert not report.sigma_pure
    assert len(report.ladder) == 9


def test_stabilization_over_the_regular_bimodule(dual_numbers):
    report = purity_stabilization(simple_module(dual_numbers, 0), regular_bimodule(dual_numbers), 2, 2, 3)
    assert report.found and report.m0 == 0
    assert report.sigma_pure


def test_two_dimensional_hypothesis_fails_for_dual_numbers(dual_numbers):
    with pytest.raises(HypothesisNotSatisfied):
        check_two_dimensional_hypothesis(regular_bimodule(dual_numbers), 3)


@pytest.mark.parametrize("name", ["kronecker", "a2", "a3-rad2"])
def test_rhom_purity_for_small_global_dimension(name):
    a = catalog_algebra(name)
    sigma = regular_bimodule(a)
    gldim = check_two_dimensional_hypothesis(sigma, 4)
    rng = random.Random(3)
    for _ in range(20):
        report = rhom_purity_2dim(sigma, random_module(a, 6, rng), 4, gldim=gldim)
        assert report.pure, report.to_json()
