from __future__ import annotations

import re
from typing import Callable, Dict, Optional

from src.components.algebra import DEFAULT_PATH_CAP, Algebra, QuiverPresentation, dual_bimodule, path_algebra
from src.components.errors import InputError
from src.components.linear import FieldSpec
from src.components.modules import (
    RightModule,
    bar_bimodule,
    free_bimodule,
    injective_module,
    projective_module,
    regular_bimodule,
    simple_module,
    top_bimodule,
)


QUIVERS: Dict[str, Dict] = {
    "k": {"vertices": ["1"], "arrows": []},
    "dual-numbers": {"vertices": ["1"], "arrows": [["x", "1", "1"]], "relations": [["x", "x"]]},
    "a2": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
    "kronecker": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"], ["b", "1", "2"]]},
    "a3-rad2": {
        "vertices": ["1", "2", "3"],
        "arrows": [["a", "1", "2"], ["b", "2", "3"]],
        "relations": [["a", "b"]],
    },
}

# Semisimple algebras given by structure constants; their radical comes from the trace form.
STRUCTURE_CONSTANTS: Dict[str, Dict] = {
    "kxk": {
        "basis": ["e1", "e2"],
        "mult": [[0, 0, [1, 0]], [1, 1, [0, 1]]],
        "unit": [1, 1],
        "idempotents": [[1, 0], [0, 1]],
    },
    "m2": {
        "basis": ["e11", "e12", "e21", "e22"],
        "mult": [
            [0, 0, [1, 0, 0, 0]],
            [0, 1, [0, 1, 0, 0]],
            [1, 2, [1, 0, 0, 0]],
            [1, 3, [0, 1, 0, 0]],
            [2, 0, [0, 0, 1, 0]],
            [2, 1, [0, 0, 0, 1]],
            [3, 2, [0, 0, 1, 0]],
            [3, 3, [0, 0, 0, 1]],
        ],
        "unit": [1, 0, 0, 1],
        "idempotents": [[1, 0, 0, 0], [0, 0, 0, 1]],
    },
}

CATALOG = tuple(sorted(list(QUIVERS) + list(STRUCTURE_CONSTANTS)))


def catalog_algebra(name: str, field: FieldSpec = FieldSpec(), *, path_cap: int = DEFAULT_PATH_CAP) -> Algebra:
    if name in QUIVERS:
        return path_algebra(QuiverPresentation.from_json(QUIVERS[name]), field, cap=path_cap, name=name)
    if name in STRUCTURE_CONSTANTS:
        raw = STRUCTURE_CONSTANTS[name]
        mult = {(i, j): coords for i, j, coords in raw["mult"]}
        return Algebra.from_structure_constants(field, raw["basis"], mult, raw["unit"], raw["idempotents"], name=name)
    raise InputError(f"Unknown catalog algebra {name!r}; choose from {', '.join(CATALOG)}")


_INDEXED: Dict[str, Callable[[Algebra, int], RightModule]] = {
    "S": simple_module,
    "P": projective_module,
    "I": injective_module,
}

_NAMED: Dict[str, Callable[[Algebra], RightModule]] = {
    "regular": regular_bimodule,
    "dual": dual_bimodule,
    "top": top_bimodule,
    "bar": bar_bimodule,
}


def named_module(a: Algebra, ref: str) -> Optional[RightModule]:
    """Built-in modules by name; ``None`` when ``ref`` is not a known name."""
    if ref in _NAMED:
        return _NAMED[ref](a)
    match = re.fullmatch(r"free:(\d+)", ref)
    if match:
        return free_bimodule(a, int(match.group(1)))
    match = re.fullmatch(r"([SPI])(\d+)", ref)
    if match:
        index = int(match.group(2)) - 1
        if not 0 <= index < a.vertex_count:
            raise InputError(f"{ref}: vertex {index + 1} does not exist")
        return _INDEXED[match.group(1)](a, index)
    return None
