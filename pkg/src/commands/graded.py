from __future__ import annotations

"""Graded kernels, coherence certificates and graded resolutions over ``T_A(sigma)``."""

from typing import Dict, List

from src.commands.common import algebra_input, bimodule_input, dims_table, make_report, module_input
from src.components.data import load_graded_map
from src.components.errors import PurityError
from src.components.graded import (
    MapEvidence,
    build_tower,
    coherence_check,
    graded_resolution,
    map_evidence,
)
from src.pipeline import CommandReport, CommandRequest


def _evidence_rows(evidence: List[MapEvidence]) -> Dict[str, List[Dict]]:
    maps, kernels = [], []
    for index, e in enumerate(evidence):
        maps.append(
            {
                "map": index,
                "source_degrees": str(e.source_degrees),
                "target_degrees": str(e.target_degrees),
                "q": e.q,
                "generator_degrees": str(e.generator_degrees),
                "stabilization_degree": e.stabilization_degree,
                "tor_offset": e.tor_offset,
                "checks": all(e.checks.values()),
            }
        )
        for s, d in sorted(e.kernel_dims.items()):
            kernels.append({"map": index, "degree": s, "kernel": d, "cokernel": e.cokernel_dims[s]})
    return {"maps": maps, "kernel_dims": kernels}


def _graded_kernel(request: CommandRequest) -> CommandReport:
    cap = request.bound("cap")
    gldim_bound = request.bound("gldim_bound")
    f = load_graded_map(
        request.input(0, "a graded map file"),
        cap=cap,
        path_cap=request.options.get("path_cap", 500),
        gldim_bound=gldim_bound,
    )
    request.field_spec = f.source.tower.algebra.field
    evidence = map_evidence(f, cap, gldim_bound)
    verdict = "stabilized" if evidence.stabilized else "not stabilized within bound"
    return make_report(request, verdict, evidence.stabilized, {"evidence": evidence.to_json()}, _evidence_rows([evidence]))


def _coherence(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    sigma = bimodule_input(request, a, 1)
    cap = request.bound("cap")
    gldim_bound = request.bound("gldim_bound")
    tower, maps = None, []
    if len(request.inputs) > 2:
        try:
            tower = build_tower(sigma, cap, gldim_bound)
        except PurityError:
            tower = None
        else:
            path_cap = request.options.get("path_cap", 500)
            maps = [load_graded_map(ref, cap=cap, path_cap=path_cap, gldim_bound=gldim_bound) for ref in request.inputs[2:]]
    cert = coherence_check(
        sigma,
        cap,
        gldim_bound,
        maps=maps,
        samples=request.options.get("samples", 0),
        seed=request.bound("seed"),
        max_generator_degree=request.options.get("max_generator_degree", 3),
        coefficient_range=request.options.get("coefficient_range", 2),
        tower=tower,
    )
    tables = _evidence_rows(cert.maps)
    tables["tower"] = dims_table(dict(enumerate(cert.tower_dims)), key="power")
    return make_report(request, cert.verdict, cert.affirmative, {"certificate": cert.to_json()}, tables)


def _graded_resolve(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    sigma = bimodule_input(request, a, 1)
    m = module_input(request, a, 2)
    cap = request.bound("cap")
    tower = build_tower(sigma, cap, request.bound("gldim_bound"))
    res = graded_resolution(m, tower, cap, request.bound("length"), concentrated=request.options.get("concentrated", False))
    terms = [
        {
            "position": k,
            "generator_degrees": str(t.degrees),
            "vertices": str([v + 1 if v is not None else None for v in t.vertices]),
            "dims": str([d for _, d in sorted(t.slice_dims.items())]),
        }
        for k, t in enumerate(res.terms)
    ]
    result = {"length": res.length if res.complete else None, "module_dims": {str(s): d for s, d in res.module_dims.items()}}
    return make_report(request, res.verdict, res.complete, result, {"terms": terms, "module": dims_table(res.module_dims)})


COMMANDS = {
    "graded-kernel": _graded_kernel,
    "coherence": _coherence,
    "graded-resolve": _graded_resolve,
}


def run(request: CommandRequest) -> CommandReport:
    return COMMANDS[request.command](request)
