from __future__ import annotations

"""
Truncated tensor algebras ``T = A + s + s^2 + ...`` and graded modules over them.

Tensor powers are left-associated: ``s^(k+1)`` is stored as ``s^k (x) s``, so
multiplying ``x`` in ``s^a`` onto ``s^k`` reduces to tensoring the map for
``s^(k-1)`` with the identity of ``s``. Graded modules are kept degree by
degree together with the single-step maps ``mu_s: X_s (x) s -> X_(s+1)``.
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from src.components import linear as la
from src.components.algebra import Algebra, global_dimension
from src.components.errors import InputError, PurityError
from src.components.homology import (
    PurityStage,
    higher_tor_dims,
    projective_cover,
    tor_dimension,
)
from src.components.linear import Matrix, Subspace
from src.components.modules import (
    Bimodule,
    ModuleMap,
    RightModule,
    TensorProduct,
    bar_bimodule,
    direct_sum,
    free_bimodule,
    quotient_module,
    regular_bimodule,
    simple_module,
    submodule,
    tensor_product,
    zero_module,
)


logger = logging.getLogger(__name__)


# --- the tower ----------------------------------------------------------------


@dataclass(eq=False)
class TensorTower:
    algebra: Algebra
    sigma: Bimodule
    cap: int
    gldim_bound: int
    components: List[Bimodule]
    products: Dict[int, TensorProduct]
    ledger: List[PurityStage] = dc_field(default_factory=list)
    waived: bool = False

    def component(self, k: int) -> Bimodule:
        if not 0 <= k <= self.cap:
            raise InputError(f"Degree {k} lies outside the tower cap {self.cap}")
        return self.components[k]

    def dims(self) -> List[int]:
        return [c.dim for c in self.components]

    def left_multiplication(self, a: int, x: Matrix, k: int) -> Matrix:
        """Matrix of ``u -> x (x) u`` from ``s^k`` to ``s^(a+k)`` for ``x`` in ``s^a``."""
        if a + k > self.cap:
            raise InputError(f"Product of degrees {a} and {k} exceeds the cap {self.cap}")
        f = self.algebra.field
        if k == 0:
            act = self.components[a]
            rows = [x * act.act(self.algebra.basis_element(r)) for r in range(self.algebra.dim)]
            return la.vstack(f, rows, act.dim)
        if a == 0:
            return self.components[k].left_act(x)
        if k == 1:
            tp = self.products[a]
            rows = [tp.pure(x, la.unit_rows(f, [q], self.sigma.dim)) for q in range(self.sigma.dim)]
            return la.vstack(f, rows, tp.dim)
        previous = self.left_multiplication(a, x, k - 1)
        return self.products[k - 1].map_left(previous, self.products[a + k - 1])

    def multiply(self, a: int, x: Matrix, b: int, y: Matrix) -> Matrix:
        if b == 1 and a >= 1:
            return self.products[a].pure(x, y)
        return y * self.left_multiplication(a, x, b)

    def to_json(self) -> Dict:
        return {
            "cap": self.cap,
            "dims": self.dims(),
            "gldim_bound": self.gldim_bound,
            "purity_waived": self.waived,
            "ledger": [s.to_json() for s in self.ledger],
        }


def build_tower(sigma: Bimodule, cap: int, gldim_bound: int, *, waive_purity: bool = False) -> TensorTower:
    a = sigma.algebra
    tower = TensorTower(a, sigma, 0, gldim_bound, [regular_bimodule(a)], {}, [PurityStage(1, sigma.dim, True)], waive_purity)
    return tower_extend(tower, cap)


def tower_extend(t: TensorTower, new_cap: int) -> TensorTower:
    if new_cap < t.cap:
        raise InputError(f"Cannot shrink a tower from cap {t.cap} to {new_cap}")
    if new_cap == t.cap:
        return t
    components = list(t.components)
    products = dict(t.products)
    ledger = list(t.ledger)
    sigma = t.sigma
    for k in range(t.cap, new_cap):
        if k == 0:
            components.append(sigma)
            continue
        dims: Dict[int, int] = {}
        if not t.waived:
            dims = higher_tor_dims(components[k].underlying(), sigma, t.gldim_bound)
            bad = next(((i, d) for i, d in sorted(dims.items()) if d), None)
            if bad is not None:
                raise PurityError("Tensor power is not pure", {"stage": k + 1, "degree": bad[0], "dim": bad[1]})
        tp = tensor_product(components[k], sigma, name=f"{sigma.name}^{k + 1}")
        products[k] = tp
        components.append(tp.module)
        if not t.waived:
            ledger.append(PurityStage(k + 1, tp.dim, True, dims))
        logger.debug("tower component %d has dimension %d", k + 1, tp.dim)
    return TensorTower(t.algebra, sigma, new_cap, t.gldim_bound, components, products, ledger, t.waived)


def make_instance(kind: str, a: Algebra, rank: int = 1) -> Bimodule:
    """``free`` gives ``A^rank`` (tower ``A<X_1..X_r>``); ``bar`` gives ``A (x)_k A``."""
    if kind == "free":
        if rank < 1:
            raise InputError("A free instance needs rank at least 1")
        return free_bimodule(a, rank)
    if kind == "bar":
        return bar_bimodule(a)
    raise InputError(f"Unknown instance kind {kind!r}")


# --- graded modules -----------------------------------------------------------


@dataclass(eq=False)
class GradedModuleData:
    """Degree slices ``X_low .. X_cap`` with ``mu[s]: X_s (x) s -> X_(s+1)``."""

    tower: TensorTower
    low: int
    cap: int
    modules: Dict[int, RightModule]
    mu: Dict[int, Matrix]
    name: str = ""
    _tensors: Dict[int, TensorProduct] = dc_field(default_factory=dict, repr=False)

    def module(self, s: int) -> RightModule:
        if s in self.modules:
            return self.modules[s]
        if s < self.low:
            return zero_module(self.tower.algebra)
        raise InputError(f"Degree {s} lies outside the computed range {self.low}..{self.cap}")

    def dims(self) -> Dict[int, int]:
        return {s: m.dim for s, m in sorted(self.modules.items())}

    def tensor(self, s: int) -> TensorProduct:
        if s not in self._tensors:
            self._tensors[s] = tensor_product(self.module(s), self.tower.sigma)
        return self._tensors[s]

    def mu_single(self, s: int) -> Matrix:
        if s < self.low:
            return la.zeros(self.tower.algebra.field, self.tensor(s).dim, self.module(s + 1).dim)
        if s not in self.mu:
            raise InputError(f"mu is not available at degree {s}")
        return self.mu[s]

    def act(self, x: Matrix, d: int, k: int) -> Matrix:
        """Matrix of ``u -> x . u`` from ``s^k`` to ``X_(d+k)`` for ``x`` in ``X_d``."""
        tower, f = self.tower, self.tower.algebra.field
        if k == 0:
            m = self.module(d)
            rows = [x * m.act(tower.algebra.basis_element(r)) for r in range(tower.algebra.dim)]
            return la.vstack(f, rows, m.dim)
        if k == 1:
            tp = self.tensor(d)
            rows = [tp.pure(x, la.unit_rows(f, [q], tower.sigma.dim)) for q in range(tower.sigma.dim)]
            return la.vstack(f, rows, tp.dim) * self.mu_single(d)
        previous = self.act(x, d, k - 1)
        return tower.products[k - 1].map_left(previous, self.tensor(d + k - 1)) * self.mu_single(d + k - 1)

    def to_json(self) -> Dict:
        return {"name": self.name, "low": self.low, "cap": self.cap, "dims": {str(s): d for s, d in self.dims().items()}}


def mu_map(x: GradedModuleData, m: int, n: int) -> ModuleMap:
    """``mu_{X,m,n}`` on the left-associated power ``((X_m (x) s) (x) ...) (x) s``."""
    if n < 0 or m + n > x.cap or m < x.low:
        raise InputError(f"mu_({m},{n}) is outside the range {x.low}..{x.cap}")
    f = x.tower.algebra.field
    domain = x.module(m)
    matrix = la.identity(f, domain.dim)
    for k in range(n):
        tp = tensor_product(domain, x.tower.sigma)
        matrix = tp.map_left(matrix, x.tensor(m + k)) * x.mu_single(m + k)
        domain = tp.module
    return ModuleMap(domain, x.module(m + n), matrix)


def is_isomorphism(matrix: Matrix, source_dim: int, target_dim: int) -> bool:
    return source_dim == target_dim and la.rank(matrix) == target_dim


def stabilization_degree(x: GradedModuleData) -> Optional[int]:
    """Least ``d`` with ``mu_{X,s,1}`` an isomorphism for every ``d <= s < cap``."""
    found: Optional[int] = None
    for s in range(x.cap - 1, x.low - 1, -1):
        if not is_isomorphism(x.mu_single(s), x.tensor(s).dim, x.module(s + 1).dim):
            break
        found = s
    return found


def graded_submodule(x: GradedModuleData, spaces: Dict[int, Subspace], name: str = "") -> GradedModuleData:
    """Restriction to ``mu``-stable subspaces of each slice."""
    modules = {s: submodule(x.module(s), spaces[s], name=f"{name}_{s}") for s in range(x.low, x.cap + 1)}
    sub = GradedModuleData(x.tower, x.low, x.cap, modules, {}, name)
    for s in range(x.low, x.cap):
        tp = sub.tensor(s)
        image = tp.map_left(spaces[s].basis, x.tensor(s)) * x.mu_single(s)
        sub.mu[s] = spaces[s + 1].coords(image)
    return sub


def graded_quotient(x: GradedModuleData, spaces: Dict[int, Subspace], name: str = "") -> Tuple[GradedModuleData, Dict[int, Matrix]]:
    modules, projections = {}, {}
    for s in range(x.low, x.cap + 1):
        modules[s], projections[s] = quotient_module(x.module(s), spaces[s], name=f"{name}_{s}")
    quo = GradedModuleData(x.tower, x.low, x.cap, modules, {}, name)
    for s in range(x.low, x.cap):
        lifted = x.tensor(s).map_left(projections[s], quo.tensor(s))
        # lifted * mu = mu_x * proj, with lifted surjective
        target = x.mu_single(s) * projections[s + 1]
        quo.mu[s] = la.solve_left(lifted.transpose(), target.transpose()).transpose()
    return quo, projections


def tensor_graded_data(m: RightModule, tower: TensorTower, cap: int, name: str = "") -> GradedModuleData:
    """``M (x)_A T`` truncated at ``cap``: slice ``s`` is ``M (x) s^s`` and every ``mu`` is the identity."""
    if cap > tower.cap:
        raise InputError(f"Cap {cap} exceeds the tower cap {tower.cap}")
    f = tower.algebra.field
    data = GradedModuleData(tower, 0, cap, {0: m.underlying()}, {}, name or f"{m.name}(x)T")
    for s in range(cap):
        tp = data.tensor(s)
        data.modules[s + 1] = tp.module
        data.mu[s] = la.identity(f, tp.dim)
    return data


def concentrated_graded_data(m: RightModule, tower: TensorTower, cap: int, degree: int = 0) -> GradedModuleData:
    """``M`` placed in a single degree; ``s`` acts by zero."""
    f = tower.algebra.field
    zero = zero_module(tower.algebra)
    modules = {s: (m.underlying() if s == degree else zero) for s in range(degree, cap + 1)}
    data = GradedModuleData(tower, degree, cap, modules, {}, m.name)
    for s in range(degree, cap):
        data.mu[s] = la.zeros(f, data.tensor(s).dim, modules[s + 1].dim)
    return data


# --- graded free modules and maps ---------------------------------------------


@dataclass(frozen=True)
class Summand:
    generator: int
    power: int
    space: Subspace
    offset: int


@dataclass(eq=False)
class GradedFreeModule:
    """``sum_g e_(v_g) T(-d_g)``; a generator without a vertex stands for all of ``T(-d_g)``."""

    tower: TensorTower
    degrees: Tuple[int, ...]
    vertices: Tuple[Optional[int], ...] = ()
    _data: Dict[int, GradedModuleData] = dc_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.vertices:
            self.vertices = tuple(None for _ in self.degrees)
        if len(self.vertices) != len(self.degrees):
            raise InputError("Generator vertices and degrees differ in length")

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def low(self) -> int:
        return min(self.degrees, default=0)

    @property
    def high(self) -> int:
        return max(self.degrees, default=0)

    def summand_space(self, g: int, k: int) -> Subspace:
        comp = self.tower.component(k)
        v = self.vertices[g]
        return la.full_subspace(comp.field, comp.dim) if v is None else comp.left_vertex_space(v)

    def layout(self, s: int) -> List[Summand]:
        out, offset = [], 0
        for g, d in enumerate(self.degrees):
            if s < d:
                continue
            space = self.summand_space(g, s - d)
            out.append(Summand(g, s - d, space, offset))
            offset += space.dim
        return out

    def slice_dim(self, s: int) -> int:
        return sum(piece.space.dim for piece in self.layout(s))

    def slice_module(self, s: int) -> RightModule:
        pieces = [submodule(self.tower.component(p.power).underlying(), p.space) for p in self.layout(s)]
        return direct_sum(self.tower.algebra, pieces, name=f"P_{s}")

    def graded_data(self, low: int, cap: int) -> GradedModuleData:
        """Slices ``low..cap`` with ``mu`` read off the tower multiplication."""
        key = (low, cap)
        if key in self._data:
            return self._data[key]
        tower, f = self.tower, self.tower.algebra.field
        data = GradedModuleData(tower, low, cap, {s: self.slice_module(s) for s in range(low, cap + 1)}, {}, "P")
        for s in range(low, cap):
            tp = data.tensor(s)
            source, target = self.layout(s), {p.generator: p for p in self.layout(s + 1)}
            rows = []
            for vertex, p, q in tp.pure_tensors():
                u = la.row(tp.left_spaces[vertex].basis, p)
                w = la.row(tp.right_spaces[vertex].basis, q)
                blocks = []
                for piece in source:
                    cols = list(range(piece.offset, piece.offset + piece.space.dim))
                    coords = la.select_columns(u, cols)
                    if la.is_zero(coords):
                        continue
                    product = tower.multiply(piece.power, coords * piece.space.basis, 1, w)
                    landing = target[piece.generator]
                    blocks.append((0, landing.offset, landing.space.coords(product)))
                rows.append(la.assemble(f, (1, data.modules[s + 1].dim), blocks))
            data.mu[s] = la.vstack(f, rows, data.modules[s + 1].dim) if rows else la.zeros(f, 0, data.modules[s + 1].dim)
        self._data[key] = data
        return data


@dataclass(eq=False)
class GradedMap:
    """``gen_i -> sum_j gen_j x_ji`` with ``x_ji`` in ``s^(d_i - d_j)``."""

    source: GradedFreeModule
    target: GradedFreeModule
    entries: Dict[Tuple[int, int], Matrix] = dc_field(default_factory=dict)
    _slices: Dict[int, Matrix] = dc_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.source.tower is not self.target.tower:
            raise InputError("Graded map between modules over different towers")
        for (j, i), x in self.entries.items():
            power = self.source.degrees[i] - self.target.degrees[j]
            if power < 0:
                raise InputError(f"Entry ({j}, {i}) would have negative degree {power}")
            if x.shape != (1, self.source.tower.component(power).dim):
                raise InputError(f"Entry ({j}, {i}) has the wrong length for degree {power}")

    @property
    def low(self) -> int:
        return min(self.source.low, self.target.low)

    @property
    def high(self) -> int:
        return max(self.source.high, self.target.high)

    def slice(self, s: int) -> Matrix:
        if s not in self._slices:
            self._slices[s] = self._compute_slice(s)
        return self._slices[s]

    def _compute_slice(self, s: int) -> Matrix:
        tower, f = self.source.tower, self.source.tower.algebra.field
        src, tgt = self.source.layout(s), {p.generator: p for p in self.target.layout(s)}
        blocks = []
        for piece in src:
            for (j, i), x in self.entries.items():
                if i != piece.generator or j not in tgt:
                    continue
                power = self.source.degrees[i] - self.target.degrees[j]
                landing = tgt[j]
                mult = tower.left_multiplication(power, x, piece.power)
                blocks.append((piece.offset, landing.offset, landing.space.coords(piece.space.basis * mult)))
        return la.assemble(f, (self.source.slice_dim(s), self.target.slice_dim(s)), blocks)

    def compatible(self, m: int, cap: Optional[int] = None) -> bool:
        """``f_(m+1) o mu_P = mu_Q o (f_m (x) id)`` at degree ``m``."""
        cap = m + 1 if cap is None else cap
        p = self.source.graded_data(self.low, cap)
        q = self.target.graded_data(self.low, cap)
        left = p.mu_single(m) * self.slice(m + 1)
        right = p.tensor(m).map_left(self.slice(m), q.tensor(m)) * q.mu_single(m)
        return la.equal(left, right)


def random_graded_map(
    tower: TensorTower,
    rng: random.Random,
    *,
    max_generator_degree: int = 3,
    coefficient_range: int = 2,
    max_rank: int = 2,
) -> GradedMap:
    f = tower.algebra.field
    top = min(max_generator_degree, tower.cap)
    target = GradedFreeModule(tower, tuple(sorted(rng.randint(0, top) for _ in range(rng.randint(1, max_rank)))))
    source = GradedFreeModule(tower, tuple(sorted(rng.randint(0, top) for _ in range(rng.randint(1, max_rank)))))
    entries = {}
    for i, di in enumerate(source.degrees):
        for j, dj in enumerate(target.degrees):
            if di >= dj:
                x = la.random_matrix(f, 1, tower.component(di - dj).dim, rng, coefficient_range)
                if not la.is_zero(x):
                    entries[(j, i)] = x
    return GradedMap(source, target, entries)


# --- kernels ------------------------------------------------------------------


@dataclass
class KernelGenerator:
    degree: int
    vertex: int
    vector: Matrix


@dataclass(eq=False)
class GradedKernel:
    graded_map: GradedMap
    cap: int
    source: GradedModuleData
    target: GradedModuleData
    kernel: GradedModuleData
    cokernel: GradedModuleData
    kernel_spaces: Dict[int, Subspace]
    image_spaces: Dict[int, Subspace]
    generators: List[KernelGenerator]

    def kernel_dims(self) -> Dict[int, int]:
        return {s: sub.dim for s, sub in self.kernel_spaces.items()}

    def image_dims(self) -> Dict[int, int]:
        return {s: sub.dim for s, sub in self.image_spaces.items()}

    def cokernel_dims(self) -> Dict[int, int]:
        return {s: sub.codim for s, sub in self.image_spaces.items()}

    def generator_degrees(self) -> List[int]:
        return [g.degree for g in self.generators]

    def slice_exact(self, s: int) -> bool:
        """Ranks of ``0 -> K_s -> P_s -> I_s -> 0`` and ``0 -> I_s -> Q_s -> C_s -> 0`` add up."""
        kernel, image = self.kernel_spaces[s], self.image_spaces[s]
        if kernel.dim + image.dim != self.source.module(s).dim:
            return False
        return image.dim + self.cokernel.module(s).dim == self.target.module(s).dim

    def connecting_kernel_dim(self, s: int) -> int:
        """``dim ker(I_s (x) s -> Q_s (x) s)``, the image of the connecting map from ``Tor_1(C_s, s)``."""
        image = self.image_spaces[s]
        tp = tensor_product(submodule(self.target.module(s), image), self.target.tower.sigma)
        induced = tp.map_left(image.basis, self.target.tensor(s))
        return la.left_kernel(induced).dim

    def diagram_consistent(self, s: int) -> bool:
        """
        ``I_s (x) s -> Q_s (x) s -> C_s (x) s -> 0`` is exact, and over a pure tower
        the kernel on the left is all of ``Tor_1(C_s, s)`` since ``Tor_1(Q_s, s) = 0``.
        """
        sigma = self.target.tower.sigma
        kernel = self.connecting_kernel_dim(s)
        image_tensor = tensor_product(submodule(self.target.module(s), self.image_spaces[s]), sigma).dim
        cokernel_tensor = tensor_product(self.cokernel.module(s), sigma).dim
        if self.target.tensor(s).dim - (image_tensor - kernel) != cokernel_tensor:
            return False
        if self.target.tower.waived:
            return True
        return kernel == tor_dimension(self.cokernel.module(s), sigma, 1)


def graded_generators(x: GradedModuleData) -> List[KernelGenerator]:
    """Minimal generators degree by degree: the top of ``X_s`` modulo the image of ``mu``."""
    found: List[KernelGenerator] = []
    f = x.tower.algebra.field
    for s in range(x.low, x.cap + 1):
        m = x.module(s)
        if m.dim == 0:
            continue
        image = la.row_space(x.mu_single(s - 1)) if s > x.low else la.zero_subspace(f, m.dim)
        for v, lift in _new_generators(m, image):
            found.append(KernelGenerator(s, v, lift))
    return found


def _new_generators(m: RightModule, covered: Subspace) -> List[Tuple[int, Matrix]]:
    """Vertices and lifts (in ``M e_v``) of a minimal generating set of ``M / covered``."""
    quotient, _ = quotient_module(m, covered)
    vertices, lifts = projective_cover(quotient)
    lifts = lifts * covered.section_matrix()
    idempotents = m.algebra.idempotents
    return [(v, la.row(lifts, r) * m.act(idempotents[v])) for r, v in enumerate(vertices)]


def graded_kernel(f: GradedMap, cap: int) -> GradedKernel:
    tower = f.source.tower
    if cap > tower.cap:
        raise InputError(f"Cap {cap} exceeds the tower cap {tower.cap}")
    low = f.low
    p = f.source.graded_data(low, cap)
    q = f.target.graded_data(low, cap)
    kernels, images = {}, {}
    for s in range(low, cap + 1):
        fs = f.slice(s)
        kernels[s] = la.left_kernel(fs)
        images[s] = la.row_space(fs)
    k = graded_submodule(p, kernels, name="K")
    c, _ = graded_quotient(q, images, name="C")
    result = GradedKernel(f, cap, p, q, k, c, kernels, images, graded_generators(k))
    logger.debug("graded kernel dims %s", result.kernel_dims())
    return result


# --- certificates -------------------------------------------------------------


@dataclass
class FlatTest:
    flat: bool
    gldim_bound: int
    tor_dims: Dict[int, Dict[int, int]]

    @property
    def flat_dimension(self) -> int:
        return max((i for dims in self.tor_dims.values() for i, d in dims.items() if d), default=0)

    def to_json(self) -> Dict:
        return {
            "flat": self.flat,
            "gldim_bound": self.gldim_bound,
            "left_flat_dimension_at_least": self.flat_dimension,
            "tor_dims": {str(v): {str(i): d for i, d in dims.items()} for v, dims in self.tor_dims.items()},
        }


def flat_test(sigma: Bimodule, gldim_bound: int) -> FlatTest:
    """``Tor_i(S, sigma)`` for every simple ``S``; all zero means ``sigma`` is flat on the left."""
    a = sigma.algebra
    dims = {v: higher_tor_dims(simple_module(a, v), sigma, gldim_bound) for v in range(a.vertex_count)}
    return FlatTest(not any(d for per in dims.values() for d in per.values()), gldim_bound, dims)


@dataclass
class MapEvidence:
    source_degrees: List[int]
    target_degrees: List[int]
    q: int
    kernel_dims: Dict[int, int]
    cokernel_dims: Dict[int, int]
    generators: List[Dict]
    stabilization_degree: Optional[int]
    tor_evidence: Dict[int, Dict[int, int]]
    tor_offset: Optional[int]
    checks: Dict[str, bool]

    @property
    def generator_degrees(self) -> List[int]:
        return [g["degree"] for g in self.generators]

    @property
    def stabilized(self) -> bool:
        return self.stabilization_degree is not None

    def to_json(self) -> Dict:
        return {
            "source_degrees": self.source_degrees,
            "target_degrees": self.target_degrees,
            "q": self.q,
            "kernel_dims": {str(s): d for s, d in self.kernel_dims.items()},
            "cokernel_dims": {str(s): d for s, d in self.cokernel_dims.items()},
            "generators": self.generators,
            "stabilization_degree": self.stabilization_degree,
            "tor_evidence": {str(s): {str(i): d for i, d in dims.items()} for s, dims in self.tor_evidence.items()},
            "tor_offset": self.tor_offset,
            "checks": self.checks,
        }


@dataclass
class CoherenceCertificate:
    verdict: str
    cap: int
    gldim_bound: int
    seed: Optional[int]
    tower_dims: List[int]
    flat: Optional[FlatTest]
    global_dimension: Dict[str, str]
    maps: List[MapEvidence] = dc_field(default_factory=list)
    witness: Optional[Dict] = None

    @property
    def evidence_range(self) -> Tuple[int, int]:
        lows = [min(m.kernel_dims, default=0) for m in self.maps]
        return (min(lows, default=0), self.cap)

    @property
    def affirmative(self) -> bool:
        if self.verdict == "certified-flat-path":
            return True
        return self.verdict == "bounded-evidence" and bool(self.maps) and all(m.stabilized for m in self.maps)

    def to_json(self) -> Dict:
        return {
            "verdict": self.verdict,
            "cap": self.cap,
            "gldim_bound": self.gldim_bound,
            "seed": self.seed,
            "evidence_range": list(self.evidence_range),
            "tower_dims": self.tower_dims,
            "flat_test": self.flat.to_json() if self.flat else None,
            "global_dimension": self.global_dimension,
            "witness": self.witness,
            "maps": [m.to_json() for m in self.maps],
        }


def map_evidence(f: GradedMap, cap: int, gldim_bound: int) -> MapEvidence:
    result = graded_kernel(f, cap)
    field = f.source.tower.algebra.field
    q = f.high
    tor_evidence = {}
    for s in range(q, cap + 1):
        tor_evidence[s] = higher_tor_dims(result.cokernel.module(s), f.source.tower.sigma, gldim_bound)
    tor_offset = None
    for n in range(cap - q + 1):
        if all(not any(dims.values()) for s, dims in tor_evidence.items() if s >= q + n):
            tor_offset = n
            break
    checks = {
        "slices_exact": all(result.slice_exact(s) for s in range(f.low, cap + 1)),
        "compatibility": all(f.compatible(m, cap) for m in range(f.low, cap)),
        "diagram": all(result.diagram_consistent(s) for s in range(f.low, cap + 1)),
    }
    generators = [
        {"degree": g.degree, "vertex": g.vertex, "vector": [field.format(v) for v in la.entries(g.vector)[0]]}
        for g in result.generators
    ]
    return MapEvidence(
        list(f.source.degrees),
        list(f.target.degrees),
        q,
        result.kernel_dims(),
        result.cokernel_dims(),
        generators,
        stabilization_degree(result.kernel),
        tor_evidence,
        tor_offset,
        checks,
    )


def coherence_check(
    sigma: Bimodule,
    cap: int,
    gldim_bound: int,
    *,
    maps: Optional[Sequence[GradedMap]] = None,
    samples: int = 0,
    seed: Optional[int] = None,
    max_generator_degree: int = 3,
    coefficient_range: int = 2,
    tower: Optional[TensorTower] = None,
) -> CoherenceCertificate:
    a = sigma.algebra
    right = global_dimension(a, gldim_bound)
    left = global_dimension(a.opposite(), gldim_bound)
    gldims = {"right": str(right), "left": str(left)}
    try:
        tower = tower_extend(tower, cap) if tower is not None else build_tower(sigma, cap, gldim_bound)
    except PurityError as exc:
        logger.info("coherence check stopped by purity failure %s", exc.witness)
        return CoherenceCertificate("hypothesis-failure", cap, gldim_bound, seed, [], None, gldims, witness=exc.witness)

    flat = flat_test(sigma, gldim_bound)
    verdict = "certified-flat-path" if flat.flat else "bounded-evidence"
    sampled = list(maps or [])
    if samples:
        rng = random.Random(seed)
        sampled.extend(
            random_graded_map(tower, rng, max_generator_degree=max_generator_degree, coefficient_range=coefficient_range)
            for _ in range(samples)
        )
    evidence = [map_evidence(f, cap, gldim_bound) for f in sampled]
    cert = CoherenceCertificate(verdict, cap, gldim_bound, seed, tower.dims(), flat, gldims, evidence)
    logger.info("coherence verdict %s over %d maps", verdict, len(evidence))
    return cert


# --- graded resolutions -------------------------------------------------------


@dataclass
class GradedTerm:
    degrees: List[int]
    vertices: List[int]
    slice_dims: Dict[int, int]

    def to_json(self) -> Dict:
        return {
            "generators": [{"degree": d, "vertex": v} for d, v in zip(self.degrees, self.vertices)],
            "slice_dims": {str(s): d for s, d in self.slice_dims.items()},
        }


@dataclass
class GradedResolution:
    cap: int
    length_bound: int
    module_dims: Dict[int, int]
    terms: List[GradedTerm]
    complete: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def verdict(self) -> str:
        return "complete" if self.complete else "length exceeded"

    def to_json(self) -> Dict:
        return {
            "cap": self.cap,
            "length_bound": self.length_bound,
            "verdict": self.verdict,
            "length": self.length if self.complete else None,
            "module_dims": {str(s): d for s, d in self.module_dims.items()},
            "terms": [t.to_json() for t in self.terms],
        }


def graded_cover(x: GradedModuleData) -> Tuple[GradedFreeModule, Dict[int, Matrix]]:
    """A minimal graded free cover of ``x`` and its degree slices."""
    tower, f = x.tower, x.tower.algebra.field
    degrees: List[int] = []
    vertices: List[int] = []
    images: List[Matrix] = []
    slices: Dict[int, Matrix] = {}
    for s in range(x.low, x.cap + 1):
        m = x.module(s)
        blocks, offset = [], 0
        for g, d in enumerate(degrees):
            space = tower.component(s - d).left_vertex_space(vertices[g])
            if space.dim:
                blocks.append((offset, 0, space.basis * x.act(images[g], d, s - d)))
            offset += space.dim
        covered = la.assemble(f, (offset, m.dim), blocks)
        for v, lift in _new_generators(m, la.row_space(covered)):
            degrees.append(s)
            vertices.append(v)
            images.append(lift)
            space = tower.component(0).left_vertex_space(v)
            blocks.append((offset, 0, space.basis * x.act(images[-1], s, 0)))
            offset += space.dim
        slices[s] = la.assemble(f, (offset, m.dim), blocks)
    return GradedFreeModule(tower, tuple(degrees), tuple(vertices)), slices


def resolve_graded(x: GradedModuleData, length_bound: int) -> GradedResolution:
    terms: List[GradedTerm] = []
    current = x
    for k in range(length_bound + 1):
        if all(current.module(s).dim == 0 for s in range(current.low, current.cap + 1)):
            return GradedResolution(x.cap, length_bound, x.dims(), terms, complete=True)
        free, slices = graded_cover(current)
        data = free.graded_data(current.low, current.cap)
        terms.append(GradedTerm(list(free.degrees), list(free.vertices), data.dims()))
        kernels = {s: la.left_kernel(slices[s]) for s in range(current.low, current.cap + 1)}
        current = graded_submodule(data, kernels, name=f"Omega{k + 1}")
        logger.debug("graded resolution term %d: generator degrees %s", k, list(free.degrees))
    done = all(current.module(s).dim == 0 for s in range(current.low, current.cap + 1))
    return GradedResolution(x.cap, length_bound, x.dims(), terms, complete=done)


def graded_resolution(m: RightModule, tower: TensorTower, cap: int, length_bound: int, *, concentrated: bool = False) -> GradedResolution:
    """Minimal graded free resolution of ``M (x)_A T`` (or of ``M`` in degree 0) up to ``cap``."""
    if m.algebra is not tower.algebra:
        raise InputError("Module and tower live over different algebras")
    x = concentrated_graded_data(m, tower, cap) if concentrated else tensor_graded_data(m, tower, cap)
    return resolve_graded(x, length_bound)


