from __future__ import annotations

import json

import pytest

from src.components.data import (
    algebra_from_json,
    graded_map_from_json,
    graded_map_to_json,
    load_algebra,
    load_graded_map,
    load_json,
    load_module,
    module_from_json,
    module_to_json,
)
from src.components.errors import InputError
from src.components.linear import FieldSpec
from src.components.modules import Bimodule


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_json(tmp_path / "absent.json")


def test_syntax_errors_carry_a_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n"a": 1,\n"b": }', encoding="utf-8")
    with pytest.raises(InputError) as info:
        load_json(path)
    assert info.value.position.startswith(f"{path}:3:")


def test_algebra_from_quiver():
    raw = {"field": {"Fp": 5}, "quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]}}
    a = algebra_from_json(raw, name="a2")
    assert a.dim == 3
    assert a.field == FieldSpec.prime(5)
    assert a.name == "a2"


def test_algebra_from_structure_constants():
    raw = {"basis": ["1", "x"], "mult": [[0, 0, [1, 0]], [0, 1, [0, 1]], [1, 0, [0, 1]]], "unit": [1, 0]}
    a = algebra_from_json(raw)
    assert a.dim == 2
    assert a.vertex_count == 1


def test_algebra_needs_a_presentation():
    with pytest.raises(InputError):
        algebra_from_json({"field": "Q"})
    with pytest.raises(InputError):
        algebra_from_json({"basis": ["1"], "mult": [[0, 0]]})
    with pytest.raises(InputError):
        algebra_from_json([1, 2])


def test_load_algebra_from_file_overrides_field(tmp_path):
    path = _write(tmp_path, "twoloops.json", {"quiver": {"vertices": ["1"], "arrows": [["x", "1", "1"]], "relations": [["x", "x"]]}})
    a = load_algebra(str(path), field=FieldSpec.prime(3))
    assert a.name == "twoloops"
    assert a.field == FieldSpec.prime(3)
    assert load_algebra("kronecker").dim == 4


def test_module_from_json(a2):
    s1 = module_from_json(a2, {"dim": 1, "action": [[[1]], [], []]}, name="S1")
    assert s1.dimension_vector() == (1, 0)
    assert module_to_json(s1) == {"name": "S1", "dim": 1, "action": [[["1"]], [["0"]], [["0"]]]}


def test_module_from_json_validates(a2):
    with pytest.raises(InputError):
        module_from_json(a2, {"dim": 1, "action": [[[1]], [[1]], []]})
    with pytest.raises(InputError):
        module_from_json(a2, {"action": []})


def test_bimodule_from_json(k_alg):
    m = module_from_json(k_alg, {"dim": 2, "action": [[[1, 0], [0, 1]]], "left_action": [[[1, 0], [0, 1]]]})
    assert isinstance(m, Bimodule)
    assert "left_action" in module_to_json(m)


def test_named_modules(kronecker):
    assert load_module(kronecker, "free:2").dim == 8
    assert load_module(kronecker, "S1").dimension_vector() == (1, 0)
    assert load_module(kronecker, "P2").dimension_vector() == (0, 1)
    assert load_module(kronecker, "dual").dim == 4
    with pytest.raises(InputError):
        load_module(kronecker, "S3")


# --- graded maps --------------------------------------------------------------

TOWER = {"algebra": "k", "sigma": "free:1", "cap": 3}


def test_graded_map_file(tmp_path):
    raw = {"tower": TOWER, "source_degrees": [1], "target_degrees": [0], "entries": [[0, 0, 1, ["1"]]]}
    path = _write(tmp_path, "shift.json", raw)
    f = load_graded_map(str(path), gldim_bound=2)
    assert f.source.tower.dims() == [1, 1, 1, 1]
    assert graded_map_to_json(f, TOWER) == raw


def test_graded_map_cap_is_raised(tmp_path):
    raw = {"tower": TOWER, "source_degrees": [0], "target_degrees": [0], "entries": []}
    f = load_graded_map(str(_write(tmp_path, "zero.json", raw)), cap=5, gldim_bound=2)
    assert f.source.tower.cap == 5


def test_graded_map_entries_are_checked():
    bad_degree = {"tower": TOWER, "source_degrees": [1], "target_degrees": [0], "entries": [[0, 0, 2, [1]]]}
    with pytest.raises(InputError):
        graded_map_from_json(bad_degree, gldim_bound=2)
    missing = {"tower": TOWER, "source_degrees": [1], "target_degrees": [0], "entries": [[1, 0, 1, [1]]]}
    with pytest.raises(InputError):
        graded_map_from_json(missing, gldim_bound=2)
    with pytest.raises(InputError):
        graded_map_from_json({"tower": TOWER}, gldim_bound=2)
