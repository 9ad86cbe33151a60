from __future__ import annotations

from src.commands.common import algebra_input, dims_table, make_report, module_input, sampled_modules
from src.components.ar import build_theta, eta_stabilization, preprojective_truncation, tau_pair
from src.components.data import module_to_json
from src.pipeline import CommandReport, CommandRequest


def _theta_for(request: CommandRequest):
    return build_theta(algebra_input(request), request.bound("n"), request.bound("gldim_bound"))


def _theta(request: CommandRequest) -> CommandReport:
    t = _theta_for(request)
    split = t.split()
    rows = [{"vertex": i + 1, "theta_e": r, "e_theta": l} for i, (r, l) in enumerate(zip(split["right"], split["left"]))]
    result = {**t.to_json(), "theta": module_to_json(t.theta)}
    return make_report(request, "concentrated", True, result, {"split": rows})


def _preprojective(request: CommandRequest) -> CommandReport:
    t = _theta_for(request)
    table = preprojective_truncation(t, request.bound("cap"))
    result = {"theta_dim": t.theta.dim, "tower": table.tower.to_json()}
    return make_report(request, "computed", True, result, {"dims": dims_table(dict(enumerate(table.dims)), key="power")})


def _tau(request: CommandRequest) -> CommandReport:
    t = _theta_for(request)
    m = module_input(request, t.algebra, 1)
    pair = tau_pair(t, m)
    return make_report(request, "computed", True, {"module_dim": m.dim, **pair.to_json()})


def _eta(request: CommandRequest) -> CommandReport:
    t = _theta_for(request)
    s_max = request.bound("max_s")
    tower = preprojective_truncation(t, s_max + 1).tower
    rows, reports = [], []
    for index, m in enumerate(sampled_modules(request, t.algebra, 1)):
        report = eta_stabilization(t, m, s_max, tower=tower)
        reports.append(report.to_json())
        rows.append(
            {
                "module": f"{index}:{m.name}",
                "dim": report.module_dim,
                "s0": report.s0,
                "hom_dims": str(report.hom_dims),
                "tensor_dims": str(report.tensor_dims),
                "composites": all(report.composites),
            }
        )
    stabilized = all(r["s0"] is not None for r in rows)
    verdict = "stabilized" if stabilized else "not stabilized within bound"
    return make_report(request, verdict, stabilized, {"reports": reports}, {"modules": rows})


COMMANDS = {
    "theta": _theta,
    "preprojective": _preprojective,
    "tau": _tau,
    "eta": _eta,
}


def run(request: CommandRequest) -> CommandReport:
    return COMMANDS[request.command](request)
