from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.components import linear as la
from src.components.errors import InputError, PurityError
from src.components.graded import (
    GradedFreeModule,
    GradedMap,
    build_tower,
    coherence_check,
    flat_test,
    graded_kernel,
    graded_resolution,
    make_instance,
    map_evidence,
    mu_map,
    random_graded_map,
    stabilization_degree,
    tensor_graded_data,
    tower_extend,
)
from src.components.modules import free_bimodule, projective_module, regular_bimodule, simple_module, top_bimodule
from src.components.monomials import MonomialMap, MonomialModel, random_monomial_map
from src.data.catalog import catalog_algebra


# --- towers -------------------------------------------------------------------


def test_free_algebra_tower_dims(k_alg):
    tower = build_tower(free_bimodule(k_alg, 2), 3, 2)
    assert tower.dims() == [1, 2, 4, 8]
    assert [s.stage for s in tower.ledger] == [1, 2, 3]


def test_polynomial_tower_over_dual_numbers(dual_numbers):
    tower = build_tower(regular_bimodule(dual_numbers), 4, 3)
    assert tower.dims() == [2, 2, 2, 2, 2]


def test_impure_tower_is_refused(dual_numbers):
    with pytest.raises(PurityError) as info:
        build_tower(top_bimodule(dual_numbers), 3, 4)
    assert info.value.witness == {"stage": 2, "degree": 1, "dim": 1}


def test_purity_waiver_builds_the_tower(dual_numbers):
    tower = build_tower(top_bimodule(dual_numbers), 3, 4, waive_purity=True)
    assert tower.dims() == [2, 1, 1, 1]
    assert tower.waived
    assert tower.to_json()["purity_waived"] is True


def test_tower_extension_keeps_components(k_alg):
    small = build_tower(free_bimodule(k_alg, 2), 2, 2)
    big = tower_extend(small, 4)
    assert big.dims()[:3] == small.dims()
    assert big.dims()[4] == 16
    with pytest.raises(InputError):
        tower_extend(big, 1)
    with pytest.raises(InputError):
        big.component(5)


def test_tower_multiplication_is_associative(k_alg):
    tower = build_tower(free_bimodule(k_alg, 2), 3, 2)
    rng = random.Random(5)
    f = k_alg.field
    x, y, z = (la.random_matrix(f, 1, 2, rng) for _ in range(3))
    xy = tower.multiply(1, x, 1, y)
    left = tower.multiply(2, xy, 1, z)
    right = tower.multiply(1, x, 2, tower.multiply(1, y, 1, z))
    assert la.equal(left, right)


def test_instances(dual_numbers):
    assert make_instance("bar", dual_numbers).dim == 4
    assert make_instance("free", dual_numbers, 2).dim == 4
    with pytest.raises(InputError):
        make_instance("free", dual_numbers, 0)
    with pytest.raises(InputError):
        make_instance("cofree", dual_numbers)


# --- flatness -----------------------------------------------------------------


def test_flat_test(k_alg, dual_numbers):
    assert flat_test(free_bimodule(k_alg, 1), 2).flat
    assert flat_test(make_instance("bar", dual_numbers), 3).flat
    impure = flat_test(top_bimodule(dual_numbers), 3)
    assert not impure.flat
    assert impure.flat_dimension == 3


# --- graded modules and kernels -----------------------------------------------


def test_tensor_graded_data_has_identity_mu(kronecker):
    tower = build_tower(regular_bimodule(kronecker), 3, 2)
    data = tensor_graded_data(simple_module(kronecker, 0), tower, 3)
    assert data.dims() == {0: 1, 1: 1, 2: 1, 3: 1}
    assert mu_map(data, 0, 3).is_isomorphism()
    assert stabilization_degree(data) == 0


def test_multiplication_by_the_variable_is_injective(k_alg):
    tower = build_tower(free_bimodule(k_alg, 1), 4, 2)
    f = GradedMap(GradedFreeModule(tower, (1,)), GradedFreeModule(tower, (0,)), {(0, 0): la.vector(k_alg.field, [1])})
    result = graded_kernel(f, 4)
    assert result.kernel_dims() == {0: 0, 1: 0, 2: 0, 3: 0, 4: 0}
    assert result.cokernel_dims() == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}
    assert result.cokernel.mu[0].shape == (1, 0)
    assert result.generators == []


def test_multiplication_by_a_nilpotent_coefficient(dual_numbers):
    tower = build_tower(regular_bimodule(dual_numbers), 4, 3)
    x = la.vector(dual_numbers.field, [0, 1])
    f = GradedMap(GradedFreeModule(tower, (0,)), GradedFreeModule(tower, (0,)), {(0, 0): x})
    result = graded_kernel(f, 4)
    assert result.kernel_dims() == {s: 1 for s in range(5)}
    assert result.generator_degrees() == [0]
    assert stabilization_degree(result.kernel) == 0
    assert all(result.cokernel.mu[s].shape == (1, 1) for s in range(4))
    assert stabilization_degree(result.cokernel) == 0
    assert all(result.slice_exact(s) for s in range(5))
    model = MonomialModel(dual_numbers, "free")
    assert MonomialMap(model, (0,), (0,), {(0, 0): {(1, ()): 1}}).kernel_dims(4) == result.kernel_dims()


def test_kernel_cap_cannot_exceed_the_tower(k_alg):
    tower = build_tower(free_bimodule(k_alg, 1), 2, 2)
    f = GradedMap(GradedFreeModule(tower, (0,)), GradedFreeModule(tower, (0,)), {})
    with pytest.raises(InputError):
        graded_kernel(f, 3)


def test_graded_map_rejects_negative_degrees(k_alg):
    tower = build_tower(free_bimodule(k_alg, 1), 2, 2)
    with pytest.raises(InputError):
        GradedMap(GradedFreeModule(tower, (0,)), GradedFreeModule(tower, (1,)), {(0, 0): la.vector(k_alg.field, [1])})


@pytest.mark.parametrize(
    "name, rank, cap",
    [("k", 1, 5), ("k", 2, 4), ("dual-numbers", 1, 4), ("dual-numbers", 2, 4), ("a2", 1, 4), ("a2", 2, 3)],
)
def test_sampled_kernels_match_monomial_slices(name, rank, cap):
    model = MonomialModel(catalog_algebra(name), "free", rank)
    tower = build_tower(model.sigma(), cap, 2)
    assert coherence_check(model.sigma(), cap, 2, tower=tower).verdict == "certified-flat-path"
    rng = random.Random(11)
    for _ in range(50):
        mmap = random_monomial_map(model, rng, max_generator_degree=3)
        f = mmap.graded_map(tower)
        result = graded_kernel(f, cap)
        assert result.kernel_dims() == mmap.kernel_dims(cap)
        assert all(d <= f.high for d in result.generator_degrees())


def test_monomial_elements_multiply_like_words(a2):
    model = MonomialModel(a2, "free", 2)
    tower = build_tower(model.sigma(), 3, 2)
    x, y = (0, (0,)), (2, (1, 0))
    product = tower.multiply(1, model.element(tower, x), 2, model.element(tower, y))
    expected = la.zeros(a2.field, 1, tower.component(3).dim)
    for mono, c in model.multiply(x, y).items():
        expected = expected + la.scale(model.element(tower, mono), c)
    assert la.equal(product, expected)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10_000))
def test_maps_commute_with_mu(seed):
    a = catalog_algebra("kronecker")
    tower = build_tower(regular_bimodule(a), 3, 2)
    f = random_graded_map(tower, random.Random(seed), max_generator_degree=2)
    assert all(f.compatible(m, 3) for m in range(f.low, 3))


def test_free_module_mu_is_an_isomorphism_past_the_top_degree(a2):
    tower = build_tower(free_bimodule(a2, 2), 4, 2)
    rng = random.Random(8)
    for _ in range(5):
        p = random_graded_map(tower, rng, max_generator_degree=2).source
        data = p.graded_data(0, 4)
        assert stabilization_degree(data) <= p.high
        for s in range(p.high, 4):
            assert mu_map(data, s, 4 - s).is_isomorphism()


def test_bar_algebra_kernels(dual_numbers):
    model = MonomialModel(dual_numbers, "bar")
    assert flat_test(model.sigma(), 3).flat
    tower = build_tower(model.sigma(), 5, 3)
    rng = random.Random(2)
    for _ in range(20):
        mmap = random_monomial_map(model, rng, max_generator_degree=2, max_rank=1)
        assert graded_kernel(mmap.graded_map(tower), 5).kernel_dims() == mmap.kernel_dims(5)


# --- certificates -------------------------------------------------------------


def test_free_algebra_is_certified(k_alg):
    cert = coherence_check(free_bimodule(k_alg, 1), 4, 2, samples=5, seed=0)
    assert cert.verdict == "certified-flat-path"
    assert cert.affirmative
    assert len(cert.maps) == 5
    assert cert.to_json()["global_dimension"] == {"right": "0", "left": "0"}


def test_coherence_reports_purity_failure(dual_numbers):
    cert = coherence_check(top_bimodule(dual_numbers), 3, 3)
    assert cert.verdict == "hypothesis-failure"
    assert not cert.affirmative
    assert cert.witness["stage"] == 2


def test_coherence_is_reproducible(a2):
    sigma = free_bimodule(a2, 1)
    first = coherence_check(sigma, 3, 2, samples=4, seed=9).to_json()
    second = coherence_check(sigma, 3, 2, samples=4, seed=9).to_json()
    assert first == second


def test_map_evidence_checks(dual_numbers):
    tower = build_tower(regular_bimodule(dual_numbers), 3, 3)
    f = random_graded_map(tower, random.Random(4))
    evidence = map_evidence(f, 3, 3)
    assert evidence.checks == {"slices_exact": True, "compatibility": True, "diagram": True}
    assert evidence.q == f.high


# --- graded resolutions -------------------------------------------------------


def test_residue_field_over_polynomials(k_alg):
    tower = build_tower(free_bimodule(k_alg, 2), 4, 2)
    res = graded_resolution(simple_module(k_alg, 0), tower, 4, 4, concentrated=True)
    assert res.complete
    assert res.length == 1
    assert res.terms[0].degrees == [0]
    assert res.terms[1].degrees == [1, 1]


def test_induced_modules_are_free(kronecker):
    tower = build_tower(regular_bimodule(kronecker), 3, 2)
    res = graded_resolution(projective_module(kronecker, 0), tower, 3, 3)
    assert res.complete
    assert res.length == 0
    assert res.verdict == "complete"
