from __future__ import annotations

"""Algebra and module invariants, minimal resolutions, Tor and Ext tables."""

import logging
from typing import Dict, List, Optional

from src.commands.common import algebra_input, bimodule_input, make_report, module_input
from src.components.algebra import global_dimension, radical
from src.components.errors import UndeterminedError
from src.components.homology import ext, minimal_resolution, tor_dimension, tor_dimension_mirrored
from src.components.modules import Bimodule, projective_module, simple_module
from src.pipeline import CommandReport, CommandRequest


logger = logging.getLogger(__name__)


def _validate(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    a.validate()
    bound = request.bound("gldim_bound")
    right = global_dimension(a, bound)
    left = global_dimension(a.opposite(), bound)
    vertices = [
        {
            "vertex": i + 1,
            "projective": str(list(projective_module(a, i).dimension_vector())),
            "simple_pd": right.projective_dimensions[i],
        }
        for i in range(a.vertex_count)
    ]
    modules = []
    for index in range(1, len(request.inputs)):
        m = module_input(request, a, index)
        modules.append(
            {
                "input": request.inputs[index],
                "dim": m.dim,
                "dimension_vector": str(list(m.dimension_vector())),
                "bimodule": isinstance(m, Bimodule),
            }
        )
    result = {
        "algebra": a.name,
        "dim": a.dim,
        "vertices": a.vertex_count,
        "radical_dim": radical(a).dim,
        "global_dimension": {"right": right.to_json(), "left": left.to_json()},
    }
    tables = {"vertices": vertices}
    if modules:
        tables["modules"] = modules
    return make_report(request, "valid", True, result, tables)


def _resolve(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    m = module_input(request, a, 1)
    res = minimal_resolution(m, request.bound("length"))
    res.verify()
    terms = [
        {"position": k, "generators": str([v + 1 for v in t.vertices]), "dim": t.dim}
        for k, t in enumerate(res.terms)
    ]
    verdict = "complete" if res.complete else "length exceeded"
    result = {"module_dim": m.dim, "length": res.length if res.complete else None}
    return make_report(request, verdict, res.complete, result, {"terms": terms})


def _mirrored(m, s, i: int) -> Optional[int]:
    try:
        return tor_dimension_mirrored(m, s, i)
    except UndeterminedError:
        return None


def _tor(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    m = module_input(request, a, 1).underlying()
    s = bimodule_input(request, a, 2)
    top = request.bound("length")
    res = minimal_resolution(m, top + 1)
    rows: List[Dict] = []
    for i in range(top + 1):
        if not res.available(i + 1):
            logger.info("Tor_%d undetermined within length %d", i, top)
            break
        rows.append({"degree": i, "dim": tor_dimension(m, s, i, res), "mirrored": _mirrored(m, s, i)})
    balanced = all(r["mirrored"] is None or r["mirrored"] == r["dim"] for r in rows)
    complete = len(rows) == top + 1
    verdict = "computed" if complete else "undetermined"
    return make_report(request, verdict, complete, {"balanced": balanced}, {"tor": rows})


def _ext(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    x = module_input(request, a, 1).underlying()
    y = module_input(request, a, 2).underlying()
    top = request.bound("length")
    res = minimal_resolution(x, top + 1)
    rows = []
    for i in range(top + 1):
        if not res.available(i + 1):
            break
        rows.append({"degree": i, "dim": ext(x, y, i, resolution=res).dim})
    complete = len(rows) == top + 1
    verdict = "computed" if complete else "undetermined"
    return make_report(request, verdict, complete, {"resolution_complete": res.complete}, {"ext": rows})


COMMANDS = {
    "validate": _validate,
    "resolve": _resolve,
    "tor": _tor,
    "ext": _ext,
}


def run(request: CommandRequest) -> CommandReport:
    return COMMANDS[request.command](request)
