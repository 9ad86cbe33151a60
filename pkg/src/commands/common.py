from __future__ import annotations

import random
from typing import Any, Dict, List, Optional

from src.components.algebra import Algebra
from src.components.data import load_algebra, load_module
from src.components.errors import InputError
from src.components.modules import Bimodule, RightModule, random_module
from src.pipeline import CommandReport, CommandRequest


def make_report(
    request: CommandRequest,
    verdict: str,
    affirmative: bool,
    result: Dict[str, Any],
    tables: Optional[Dict[str, List[Dict[str, Any]]]] = None,
) -> CommandReport:
    return CommandReport(
        command=request.command,
        verdict=verdict,
        affirmative=affirmative,
        field=request.field_label,
        bounds=dict(request.bounds),
        inputs=list(request.inputs),
        result=result,
        tables=tables or {},
    )


def algebra_input(request: CommandRequest, index: int = 0) -> Algebra:
    a = load_algebra(
        request.input(index, "an algebra (catalog name or file)"),
        path_cap=request.options.get("path_cap", 500),
        field=request.field_spec,
    )
    request.field_spec = a.field
    return a


def module_input(request: CommandRequest, a: Algebra, index: int, what: str = "a module") -> RightModule:
    return load_module(a, request.input(index, what))


def bimodule_input(request: CommandRequest, a: Algebra, index: int) -> Bimodule:
    module = module_input(request, a, index, "a bimodule")
    if not isinstance(module, Bimodule):
        raise InputError(f"{request.inputs[index]} is a right module; a bimodule (with left_action) is required")
    return module


def sampled_modules(request: CommandRequest, a: Algebra, first: int) -> List[RightModule]:
    """Modules named from ``first`` on, or seeded random modules when none are named."""
    if len(request.inputs) > first:
        return [module_input(request, a, i) for i in range(first, len(request.inputs))]
    rng = random.Random(request.bound("seed"))
    count = request.options.get("samples", 20)
    max_dim = request.options.get("max_module_dim", 6)
    return [random_module(a, max_dim, rng) for _ in range(count)]


def dims_table(values: Dict[int, int], key: str = "degree") -> List[Dict[str, int]]:
    return [{key: k, "dim": v} for k, v in sorted(values.items())]
