from __future__ import annotations

"""
The bimodule ``theta = Ext^n(D(L), L)``, truncations of the tensor algebra
``T_L(theta)``, the translations ``- (x) theta`` and ``Hom(theta, -)`` and the
ladder ``Hom(theta^s, M (x) theta^s) -> Hom(theta^(s+1), M (x) theta^(s+1))``.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

from src.components import linear as la
from src.components.algebra import Algebra, GlobalDimension, dual_bimodule, global_dimension
from src.components.errors import HypothesisNotSatisfied, InputError, ThetaNotConcentratedError
from src.components.graded import TensorTower, build_tower, tower_extend
from src.components.homology import ExtGroup, ext, hom_space, minimal_resolution
from src.components.linear import Matrix
from src.components.modules import (
    Bimodule,
    ModuleMap,
    RightModule,
    TensorProduct,
    regular_bimodule,
    tensor_product,
)


logger = logging.getLogger(__name__)


@dataclass
class ThetaData:
    algebra: Algebra
    n: int
    theta: Bimodule
    gldim: GlobalDimension
    validation: Dict[int, int] = dc_field(default_factory=dict)

    def split(self) -> Dict[str, List[int]]:
        """Dimensions of ``theta e_i`` and ``e_i theta``."""
        count = self.algebra.vertex_count
        return {
            "right": [self.theta.vertex_space(i).dim for i in range(count)],
            "left": [self.theta.left_vertex_space(i).dim for i in range(count)],
        }

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "dim": self.theta.dim,
            "split": self.split(),
            "gldim": self.gldim.to_json(),
            "validation": {str(i): d for i, d in self.validation.items()},
        }


def build_theta(lam: Algebra, n: int, gldim_bound: int) -> ThetaData:
    if n < 0:
        raise InputError("n must be non-negative")
    gd = global_dimension(lam, gldim_bound)
    if not gd.exact:
        raise HypothesisNotSatisfied(f"global dimension is {gd}, not finite within the bound")
    dual = dual_bimodule(lam)
    regular = regular_bimodule(lam)
    res = minimal_resolution(dual.underlying(), gd.value + 1)
    validation = {}
    for i in range(gd.value + 1):
        if i == n:
            continue
        d = ext(dual.underlying(), regular.underlying(), i, resolution=res).dim
        validation[i] = d
        if d:
            raise ThetaNotConcentratedError(f"Ext^{i}(D(A), A) does not vanish", {"degree": i, "dim": d})
    group = ext(dual, regular, n, resolution=res)
    theta = group.module
    theta.validate()
    logger.info("theta for n=%d has dimension %d", n, theta.dim)
    return ThetaData(lam, n, Bimodule(lam, theta.dim, theta.action, "theta", theta.left_action), gd, validation)


@dataclass
class PreprojectiveTable:
    tower: TensorTower
    dims: List[int]

    def to_json(self) -> Dict:
        return {"cap": self.tower.cap, "dims": self.dims, "tower": self.tower.to_json()}


def preprojective_truncation(t: ThetaData, cap: int, *, tower: Optional[TensorTower] = None) -> PreprojectiveTable:
    if tower is None:
        tower = build_tower(t.theta, cap, t.gldim.value)
    else:
        tower = tower_extend(tower, cap)
    dims = tower.dims()[: cap + 1]
    logger.debug("preprojective dimensions %s", dims)
    return PreprojectiveTable(tower, dims)


@dataclass
class TauPair:
    tau: RightModule
    tau_minus: RightModule
    unit: ModuleMap

    def to_json(self) -> Dict:
        return {
            "tau": {"formula": "M (x) theta", "dim": self.tau.dim, "dimension_vector": list(self.tau.dimension_vector())},
            "tau_minus": {"formula": "Hom(theta, M)", "dim": self.tau_minus.dim, "dimension_vector": list(self.tau_minus.dimension_vector())},
            "unit_rank": self.unit.rank,
        }


def tau_pair(t: ThetaData, m: RightModule) -> TauPair:
    theta = t.theta
    m = m.underlying()
    tp = tensor_product(m, theta, name=f"tau({m.name})")
    back = hom_space(theta, tp.module)
    rows = [_pure_tensor_map(tp, la.unit_rows(m.field, [p], m.dim)) for p in range(m.dim)]
    matrix = la.vstack(m.field, [back.from_matrix(r) for r in rows], back.dim) if rows else la.zeros(m.field, 0, back.dim)
    unit = ModuleMap(m, back.module, matrix)
    return TauPair(tp.module, hom_space(theta, m).module, unit)


def _pure_tensor_map(tp: TensorProduct, x: Matrix) -> Matrix:
    """Full matrix of ``t -> x (x) t``."""
    f = tp.left.field
    dim = tp.right.dim
    rows = [tp.pure(x, la.unit_rows(f, [q], dim)) for q in range(dim)]
    return la.vstack(f, rows, tp.dim) if rows else la.zeros(f, 0, tp.dim)


@dataclass
class EtaReport:
    module: str
    module_dim: int
    s_max: int
    hom_dims: List[int]
    tensor_dims: List[int]
    ranks: List[int]
    isomorphisms: List[bool]
    composites: List[bool]
    s0: Optional[int]
    tower_cap: int = 0

    @property
    def stabilized(self) -> bool:
        return self.s0 is not None

    @property
    def verdict(self) -> str:
        return "stabilized" if self.stabilized else "not stabilized within bound"

    def to_json(self) -> Dict:
        return {
            "module": self.module,
            "module_dim": self.module_dim,
            "s_max": self.s_max,
            "tower_cap": self.tower_cap,
            "verdict": self.verdict,
            "s0": self.s0,
            "hom_dims": self.hom_dims,
            "tensor_dims": self.tensor_dims,
            "connecting_ranks": self.ranks,
            "isomorphisms": self.isomorphisms,
            "composites_consistent": self.composites,
        }


def _push(f: Matrix, s: int, tower: TensorTower, tensors: List[TensorProduct]) -> Matrix:
    """``F (x) id_theta`` from ``theta^(s+1)`` to ``X_(s+1)``; degree 0 uses ``L (x) theta = theta``."""
    if s == 0:
        one = tower.algebra.unit * f
        return _pure_tensor_map(tensors[0], one)
    return tower.products[s].map_left(f, tensors[s])


def eta_stabilization(t: ThetaData, m: RightModule, s_max: int, *, tower: Optional[TensorTower] = None) -> EtaReport:
    if s_max < 1:
        raise InputError("s_max must be at least 1")
    # theta^(s_max+1) has to pass the purity check too
    tower = preprojective_truncation(t, s_max + 1, tower=tower).tower
    m = m.underlying()
    theta = t.theta
    tensors: List[TensorProduct] = []
    modules = [m]
    for s in range(s_max):
        tp = tensor_product(modules[-1], theta)
        tensors.append(tp)
        modules.append(tp.module)
    homs: List[ExtGroup] = [hom_space(tower.component(s), modules[s]) for s in range(s_max + 1)]

    connecting: List[Matrix] = []
    for s in range(s_max):
        source, target = homs[s], homs[s + 1]
        rows = []
        for r in range(source.dim):
            full = source.to_matrix(la.unit_rows(m.field, [r], source.dim))
            rows.append(target.from_matrix(_push(full, s, tower, tensors)))
        connecting.append(la.vstack(m.field, rows, target.dim) if rows else la.zeros(m.field, 0, target.dim))
        logger.debug("eta ladder step %d: dims %d -> %d", s, source.dim, target.dim)

    ranks = [la.rank(c) for c in connecting]
    isos = [homs[s].dim == homs[s + 1].dim == ranks[s] for s in range(s_max)]
    composites = []
    for s in range(s_max - 1):
        source, target = homs[s], homs[s + 2]
        direct = []
        for r in range(source.dim):
            full = source.to_matrix(la.unit_rows(m.field, [r], source.dim))
            twice = _push(_push(full, s, tower, tensors), s + 1, tower, tensors)
            direct.append(target.from_matrix(twice))
        expected = connecting[s] * connecting[s + 1]
        actual = la.vstack(m.field, direct, target.dim) if direct else la.zeros(m.field, 0, target.dim)
        composites.append(la.equal(expected, actual))

    s0: Optional[int] = None
    for s in range(s_max - 1, -1, -1):
        if not isos[s]:
            break
        s0 = s
    report = EtaReport(
        m.name,
        m.dim,
        s_max,
        [h.dim for h in homs],
        [x.dim for x in modules],
        ranks,
        isos,
        composites,
        s0,
        tower.cap,
    )
    logger.info("eta ladder for %s: %s", m.name or "module", report.verdict)
    return report
