from __future__ import annotations

import json

from src.commands.common import algebra_input, bimodule_input, make_report, module_input, sampled_modules
from src.components.homology import check_two_dimensional_hypothesis, purity_power, purity_stabilization, rhom_purity_2dim
from src.pipeline import CommandReport, CommandRequest


def _tor_cell(dims) -> str:
    return json.dumps({str(k): v for k, v in sorted(dims.items())}, sort_keys=True)


def _purity(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    sigma = bimodule_input(request, a, 1)
    ledger = purity_power(sigma, request.bound("max_power"), request.bound("gldim_bound"))
    stages = [{"stage": s.stage, "dim": s.dim, "pure": s.pure, "tor_dims": _tor_cell(s.tor_dims)} for s in ledger.stages]
    return make_report(request, ledger.verdict, ledger.pure, {"witness": ledger.witness}, {"stages": stages})


def _stabilize(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    m = module_input(request, a, 1)
    sigma = bimodule_input(request, a, 2)
    report = purity_stabilization(m, sigma, request.bound("max_s"), request.bound("max_power"), request.bound("gldim_bound"))
    ladder = [{"power": row["power"], "dim": row["dim"], "tor_dims": json.dumps(row["tor_dims"], sort_keys=True)} for row in report.ladder]
    result = {"m0": report.m0, "sigma_pure": report.sigma_pure}
    return make_report(request, report.verdict, report.found, result, {"ladder": ladder})


def _rhom_purity(request: CommandRequest) -> CommandReport:
    a = algebra_input(request)
    sigma = bimodule_input(request, a, 1)
    gldim = check_two_dimensional_hypothesis(sigma, request.bound("gldim_bound"))
    rows = []
    for index, m in enumerate(sampled_modules(request, a, 2)):
        report = rhom_purity_2dim(sigma, m, request.bound("gldim_bound"), gldim=gldim)
        rows.append(
            {
                "module": f"{index}:{m.name}",
                "dim": report.module_dim,
                "tensor_dim": report.tensor_dim,
                "ext1": report.ext_dims[1],
                "ext2": report.ext_dims[2],
                "pure": report.pure,
            }
        )
    pure = all(r["pure"] for r in rows)
    verdict = "pure" if pure else "counterexample-alert"
    return make_report(request, verdict, pure, {"gldim": gldim, "modules": len(rows)}, {"modules": rows})


COMMANDS = {
    "purity": _purity,
    "stabilize": _stabilize,
    "lemma34": _rhom_purity,
}


def run(request: CommandRequest) -> CommandReport:
    return COMMANDS[request.command](request)
