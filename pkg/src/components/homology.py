from __future__ import annotations

"""
Minimal projective resolutions, Tor, Ext and the purity checks built on them.

A free module ``sum_g e_{v_g} A`` is described by its generator vertices and a
map between free modules by one algebra element per pair of generators:
``d(gen_j) = sum_i gen_i * x_ji`` with ``x_ji`` in ``e_{v_i} A e_{v_j}``. The
same data yields the matrix of the map, its tensor with a left module and the
precomposition map on Hom spaces, so Tor and Ext never build large tensor
products of free modules.
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from src.components import linear as la
from src.components.algebra import Algebra, global_dimension, radical
from src.components.errors import ConsistencyError, HypothesisNotSatisfied, InputError, UndeterminedError
from src.components.linear import Matrix, Subspace
from src.components.modules import (
    Bimodule,
    LeftModule,
    RightModule,
    direct_sum,
    flatten,
    module_maps,
    projective_basis,
    projective_module,
    radical_subspace,
    submodule,
    tensor_over,
    tensor_product,
    unflatten,
)


logger = logging.getLogger(__name__)


# --- free modules and maps ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class FreeModule:
    algebra: Algebra
    vertices: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @cached_property
    def module(self) -> RightModule:
        return direct_sum(self.algebra, [projective_module(self.algebra, v) for v in self.vertices], name="P")

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out, total = [], 0
        for v in self.vertices:
            out.append(total)
            total += projective_basis(self.algebra, v).dim
        return tuple(out)

    @property
    def dim(self) -> int:
        return self.module.dim

    def generator_vectors(self) -> Matrix:
        a = self.algebra
        blocks = []
        for g, v in enumerate(self.vertices):
            coords = projective_basis(a, v).coords(a.idempotents[v])
            blocks.append((g, self.offsets[g], coords))
        return la.assemble(a.field, (self.rank, self.dim), blocks)

    def project_to_generators(self, rows: Matrix) -> Matrix:
        """Multiply row ``g`` by ``e_{v_g}``."""
        a = self.algebra
        blocks = [(g, 0, la.row(rows, g) * self.module.act(a.idempotents[v])) for g, v in enumerate(self.vertices)]
        return la.assemble(a.field, rows.shape, blocks)

    def dimension_vector(self) -> Tuple[int, ...]:
        counts = [0] * self.algebra.vertex_count
        for v in self.vertices:
            counts[v] += 1
        return tuple(counts)


def _spaces_offsets(vertices: Sequence[int], space) -> Tuple[List[Subspace], List[int], int]:
    spaces, offsets, total = [], [], 0
    for v in vertices:
        s = space(v)
        spaces.append(s)
        offsets.append(total)
        total += s.dim
    return spaces, offsets, total


@dataclass(frozen=True, eq=False)
class FreeMap:
    source: FreeModule
    target: FreeModule
    entries: Dict[Tuple[int, int], Matrix] = dc_field(default_factory=dict)

    @classmethod
    def from_vectors(cls, source: FreeModule, target: FreeModule, images: Matrix) -> "FreeMap":
        """Read generator images (rows in ``target.module`` coordinates) as algebra elements."""
        a = target.algebra
        entries: Dict[Tuple[int, int], Matrix] = {}
        for j in range(source.rank):
            image = la.row(images, j)
            for i, v in enumerate(target.vertices):
                basis = projective_basis(a, v)
                cols = range(target.offsets[i], target.offsets[i] + basis.dim)
                coords = la.select_columns(image, list(cols))
                if not la.is_zero(coords):
                    entries[(j, i)] = coords * basis.basis
        return cls(source, target, entries)

    def matrix(self) -> Matrix:
        return self._matrix

    @cached_property
    def _matrix(self) -> Matrix:
        a = self.source.algebra
        blocks = []
        for (j, i), x in self.entries.items():
            src = projective_basis(a, self.source.vertices[j])
            tgt = projective_basis(a, self.target.vertices[i])
            blocks.append((self.source.offsets[j], self.target.offsets[i], tgt.coords(src.basis * a.left_matrix(x))))
        return la.assemble(a.field, (self.source.dim, self.target.dim), blocks)

    def tensor_matrix(self, n) -> Matrix:
        """``d (x) N`` from ``sum_j e_{v_j} N`` to ``sum_i e_{v_i} N``."""
        a = self.source.algebra
        src, src_off, src_dim = _spaces_offsets(self.source.vertices, n.left_vertex_space)
        tgt, tgt_off, tgt_dim = _spaces_offsets(self.target.vertices, n.left_vertex_space)
        blocks = []
        for (j, i), x in self.entries.items():
            if src[j].dim and tgt[i].dim:
                blocks.append((src_off[j], tgt_off[i], tgt[i].coords(src[j].basis * n.left_act(x))))
        return la.assemble(a.field, (src_dim, tgt_dim), blocks)

    def hom_matrix(self, y: RightModule) -> Matrix:
        """Precomposition ``Hom(target, Y) -> Hom(source, Y)``."""
        a = self.source.algebra
        src, src_off, src_dim = _spaces_offsets(self.source.vertices, y.vertex_space)
        tgt, tgt_off, tgt_dim = _spaces_offsets(self.target.vertices, y.vertex_space)
        blocks = []
        for (j, i), x in self.entries.items():
            if src[j].dim and tgt[i].dim:
                blocks.append((tgt_off[i], src_off[j], src[j].coords(tgt[i].basis * y.act(x))))
        return la.assemble(a.field, (tgt_dim, src_dim), blocks)

    def is_radical(self) -> bool:
        rad = radical(self.source.algebra)
        return all(rad.contains(x) for x in self.entries.values())



def cover_matrix(p: FreeModule, images: Matrix, m: RightModule) -> Matrix:
    """Matrix of ``P -> M`` sending generator ``g`` to row ``g`` of ``images``."""
    a = p.algebra
    blocks = []
    for g, v in enumerate(p.vertices):
        basis = projective_basis(a, v)
        image = la.row(images, g)
        rows = [image * m.act(la.row(basis.basis, r)) for r in range(basis.dim)]
        if rows:
            blocks.append((p.offsets[g], 0, la.vstack(a.field, rows, m.dim)))
    return la.assemble(a.field, (p.dim, m.dim), blocks)


def projective_cover(m: RightModule) -> Tuple[Tuple[int, ...], Matrix]:
    """
    Generator vertices and generator images of a projective cover of ``m``.

    Vertices are taken in order and each one only contributes the part of its
    top not already generated by earlier vertices, so idempotent systems with
    isomorphic ``e_i A`` (non-basic algebras) are covered minimally as well.
    """
    a, f = m.algebra, m.field
    rad = radical_subspace(m)
    covered = la.zero_subspace(f, m.dim)
    vertices: List[int] = []
    rows: List[Matrix] = []
    for i in range(a.vertex_count):
        vi = m.vertex_space(i)
        if vi.dim == 0:
            continue
        idempotent = m.act(a.idempotents[i])
        parts = [sub.basis * idempotent for sub in (rad, covered) if sub.dim]
        rad_i = la.row_space(la.vstack(f, parts, m.dim)) if parts else la.zero_subspace(f, m.dim)
        classes = la.row_space(vi.basis * rad_i.quotient_matrix())
        if classes.dim == 0:
            continue
        lifts = classes.basis * rad_i.section_matrix() * idempotent
        for r in range(classes.dim):
            vertices.append(i)
            rows.append(la.row(lifts, r))
        generated = [lifts * m.act(a.basis_element(b)) for b in range(a.dim)]
        covered = la.row_space(la.vstack(f, [covered.basis, *generated], m.dim))
    images = la.vstack(f, rows, m.dim) if rows else la.zeros(f, 0, m.dim)
    return tuple(vertices), images


# --- resolutions --------------------------------------------------------------


@dataclass(eq=False)
class Resolution:
    module: RightModule
    terms: List[FreeModule]
    differentials: List[FreeMap]
    cover_images: Matrix
    augmentation: Matrix
    complete: bool
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term_dims(self) -> List[int]:
        return [t.dim for t in self.terms]

    def available(self, k: int) -> bool:
        """Whether ``d^{-k}`` is known (zero maps past a finished resolution count as known)."""
        return k <= self.length or self.complete

    def differential(self, k: int) -> Optional[FreeMap]:
        return self.differentials[k - 1] if 1 <= k <= self.length else None

    @cached_property
    def section(self) -> Matrix:
        """A linear right inverse of the augmentation."""
        return la.solve_left(self.augmentation, la.identity(self.module.field, self.module.dim))

    def verify(self) -> None:
        """Raise :class:`ConsistencyError` unless the resolution is exact, minimal and ``d o d = 0``."""
        maps = [d.matrix() for d in self.differentials]
        eps = self.augmentation
        if la.rank(eps) != self.module.dim:
            raise ConsistencyError("Augmentation is not surjective")
        previous = eps
        for k, d in enumerate(maps, start=1):
            if not la.is_zero(d * previous):
                raise ConsistencyError(f"d o d != 0 at position {k}")
            if la.rank(d) + la.rank(previous) != self.terms[k - 1].dim:
                raise ConsistencyError(f"Resolution is not exact at position {k - 1}")
            previous = d
        if self.complete and la.rank(previous) != self.terms[-1].dim:
            raise ConsistencyError("Last differential is not injective")
        if self.minimal and not all(d.is_radical() for d in self.differentials):
            raise ConsistencyError("Resolution is not minimal")


def minimal_resolution(m: RightModule, length_bound: int) -> Resolution:
    if length_bound < 0:
        raise InputError("Resolution length bound must be non-negative")
    m = m.underlying()
    a = m.algebra
    vertices, images = projective_cover(m)
    p0 = FreeModule(a, vertices)
    eps = cover_matrix(p0, images, m)
    terms, differentials = [p0], []
    kernel = la.left_kernel(eps)
    for k in range(1, length_bound + 1):
        if kernel.dim == 0:
            break
        syzygy = submodule(terms[-1].module, kernel)
        vertices, gen_images = projective_cover(syzygy)
        pk = FreeModule(a, vertices)
        d = FreeMap.from_vectors(pk, terms[-1], gen_images * kernel.basis)
        terms.append(pk)
        differentials.append(d)
        kernel = la.left_kernel(d.matrix())
        logger.debug("resolution of %s: term %d has rank %d", m.name, k, pk.rank)
    return Resolution(m, terms, differentials, images, eps, complete=kernel.dim == 0)


# --- subquotients -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subquotient:
    """``Z / B`` inside an ambient coordinate space; ``boundaries`` lives in ``Z`` coordinates."""

    cycles: Subspace
    boundaries: Subspace

    @property
    def dim(self) -> int:
        return self.boundaries.codim

    def representatives(self) -> Matrix:
        return self.boundaries.section_matrix() * self.cycles.basis

    def project(self, vectors: Matrix) -> Matrix:
        return self.cycles.coords(vectors) * self.boundaries.quotient_matrix()

    def induced(self, g: Matrix, target: "Subquotient") -> Matrix:
        return target.project(self.representatives() * g)


def subquotient(cycles: Subspace, boundaries: Subspace) -> Subquotient:
    inner = la.row_space(cycles.coords(boundaries.basis)) if boundaries.dim else la.zero_subspace(cycles.field, cycles.dim)
    return Subquotient(cycles, inner)


def _homology(ambient: int, field, outgoing: Optional[Matrix], incoming: Optional[Matrix]) -> Subquotient:
    cycles = la.left_kernel(outgoing) if outgoing is not None else la.full_subspace(field, ambient)
    boundaries = la.row_space(incoming) if incoming is not None else la.zero_subspace(field, ambient)
    return subquotient(cycles, boundaries)


# --- Tor ----------------------------------------------------------------------


def _resolve_for(m: RightModule, degree: int, resolution: Optional[Resolution]) -> Resolution:
    res = resolution if resolution is not None else minimal_resolution(m, degree + 1)
    if not res.available(degree + 1):
        raise UndeterminedError(f"Resolution of {m.name or 'module'} is undetermined beyond length {res.length}")
    return res


def _tor_space(res: Resolution, n, i: int) -> Tuple[Subquotient, List[Subspace]]:
    field = res.module.field
    if i > res.length:
        return Subquotient(la.zero_subspace(field, 0), la.zero_subspace(field, 0)), []
    spaces, _, dim = _spaces_offsets(res.terms[i].vertices, n.left_vertex_space)
    outgoing = res.differential(i).tensor_matrix(n) if i >= 1 else None
    nxt = res.differential(i + 1)
    incoming = nxt.tensor_matrix(n) if nxt is not None else None
    return _homology(dim, field, outgoing, incoming), spaces


def tor(m: RightModule, s: Bimodule, i: int, resolution: Optional[Resolution] = None) -> RightModule:
    if m.algebra is not s.algebra:
        raise InputError("Tor arguments live over different algebras")
    if i < 0:
        raise InputError("Tor degree must be non-negative")
    res = _resolve_for(m, i, resolution)
    space, spaces = _tor_space(res, s, i)
    a = m.algebra
    action = []
    for x in range(a.dim):
        chain = la.block_diagonal(a.field, [w.coords(w.basis * s.action[x]) for w in spaces]) if spaces else la.zeros(a.field, 0, 0)
        action.append(space.induced(chain, space))
    return RightModule(a, space.dim, tuple(action), name=f"Tor_{i}({m.name},{s.name})")


def tor_dimension(m: RightModule, n, i: int, resolution: Optional[Resolution] = None) -> int:
    res = _resolve_for(m, i, resolution)
    return _tor_space(res, n, i)[0].dim


def tor_dimension_mirrored(m: RightModule, s: Bimodule, i: int) -> int:
    """``dim Tor_i(m, s)`` computed by resolving ``s`` as a left module (over the opposite algebra)."""
    op = m.algebra.opposite()
    s_op = RightModule(op, s.dim, s.left_action, name=f"{s.name}^op")
    m_op = LeftModule(op, m.dim, m.action, name=f"{m.name}^op")
    return tor_dimension(s_op, m_op, i)


# --- chain maps and Ext -------------------------------------------------------


def lift_chain_map(res: Resolution, endo: Matrix, degree: int, rng: Optional[random.Random] = None) -> List[FreeMap]:
    """Lift a module endomorphism of the resolved module to ``phi^0 .. phi^degree``."""
    maps: List[FreeMap] = []
    p0 = res.terms[0]
    targets = res.cover_images * endo
    solution = la.solve_left(res.augmentation, targets, rng) if p0.rank else la.zeros(res.module.field, 0, p0.dim)
    maps.append(FreeMap.from_vectors(p0, p0, p0.project_to_generators(solution)))
    for k in range(1, min(degree, res.length) + 1):
        pk = res.terms[k]
        d = res.differentials[k - 1].matrix()
        if pk.rank == 0:
            maps.append(FreeMap(pk, pk, {}))
            continue
        targets = pk.generator_vectors() * d * maps[-1].matrix()
        solution = la.solve_left(d, targets, rng)
        maps.append(FreeMap.from_vectors(pk, pk, pk.project_to_generators(solution)))
    return maps


@dataclass(eq=False)
class ExtGroup:
    source: RightModule
    target: RightModule
    degree: int
    resolution: Resolution
    space: Subquotient
    module: object

    @property
    def dim(self) -> int:
        return self.space.dim

    def _cochain_spaces(self) -> Tuple[List[Subspace], List[int], int]:
        return _spaces_offsets(self.resolution.terms[0].vertices, self.target.vertex_space)

    def to_matrix(self, coords: Matrix) -> Matrix:
        """Degree 0 only: the module map ``source -> target`` with the given coordinates."""
        self._require_hom()
        y, res = self.target, self.resolution
        cochain = coords * self.space.representatives()
        spaces, offsets, _ = self._cochain_spaces()
        rows = []
        for g, s in enumerate(spaces):
            block = la.select_columns(cochain, list(range(offsets[g], offsets[g] + s.dim)))
            rows.append(block * s.basis)
        images = la.vstack(y.field, rows, y.dim) if rows else la.zeros(y.field, 0, y.dim)
        return res.section * cover_matrix(res.terms[0], images, y)

    def from_matrix(self, f: Matrix) -> Matrix:
        """Degree 0 only: coordinates of a module map ``source -> target``."""
        self._require_hom()
        images = self.resolution.cover_images * f
        spaces, offsets, total = self._cochain_spaces()
        blocks = [(0, offsets[g], s.coords(la.row(images, g))) for g, s in enumerate(spaces)]
        cochain = la.assemble(self.target.field, (1, total), blocks)
        return self.space.project(cochain)

    def _require_hom(self) -> None:
        if self.degree != 0:
            raise InputError("Only degree-0 classes are module maps")


def ext(x: RightModule, y: RightModule, i: int, *, rng: Optional[random.Random] = None, resolution: Optional[Resolution] = None) -> ExtGroup:
    """``Ext^i(x, y)`` with every action the arguments support.

    The left action comes from a left action on ``y``; the right action comes
    from a left action on ``x``, lifted to the resolution.
    """
    if x.algebra is not y.algebra:
        raise InputError("Ext arguments live over different algebras")
    if i < 0:
        raise InputError("Ext degree must be non-negative")
    a, field = x.algebra, x.field
    res = _resolve_for(x, i, resolution)
    if i > res.length:
        space = Subquotient(la.zero_subspace(field, 0), la.zero_subspace(field, 0))
        spaces: List[Subspace] = []
    else:
        spaces, _, dim = _spaces_offsets(res.terms[i].vertices, y.vertex_space)
        nxt = res.differential(i + 1)
        outgoing = nxt.hom_matrix(y) if nxt is not None else None
        incoming = res.differential(i).hom_matrix(y) if i >= 1 else None
        space = _homology(dim, field, outgoing, incoming)

    right = left = None
    if isinstance(x, Bimodule):
        right = []
        for b in range(a.dim):
            if not spaces:
                right.append(la.zeros(field, 0, 0))
                continue
            phi = lift_chain_map(res, x.left_action[b], i, rng)[i]
            right.append(space.induced(phi.hom_matrix(y), space))
    if isinstance(y, Bimodule):
        left = []
        for b in range(a.dim):
            chain = la.block_diagonal(field, [s.coords(s.basis * y.left_action[b]) for s in spaces]) if spaces else la.zeros(field, 0, 0)
            left.append(space.induced(chain, space))

    label = f"Ext^{i}({x.name},{y.name})"
    if right is not None and left is not None:
        module: object = Bimodule(a, space.dim, tuple(right), label, tuple(left))
    elif right is not None:
        module = RightModule(a, space.dim, tuple(right), label)
    elif left is not None:
        module = LeftModule(a, space.dim, tuple(left), label)
    else:
        module = None
    return ExtGroup(x, y, i, res, space, module)


def ext_bimodule(x: Bimodule, y: Bimodule, i: int, *, rng: Optional[random.Random] = None, validate: bool = True) -> Bimodule:
    group = ext(x, y, i, rng=rng)
    module = group.module
    if validate:
        module.validate()
    return module


def hom_space(s: Bimodule, n: RightModule, *, rng: Optional[random.Random] = None) -> ExtGroup:
    return ext(s, n.underlying(), 0, rng=rng)


def hom_over(s: Bimodule, n: RightModule) -> RightModule:
    """``Hom_A(s, n)`` with right action ``(f a)(t) = f(a t)``."""
    if s.algebra is not n.algebra:
        raise InputError("Hom arguments live over different algebras")
    return hom_space(s, n).module


def adjunction_matrix(m: RightModule, s: Bimodule, n: RightModule) -> Matrix:
    """Matrix of ``Hom(M (x) s, N) -> Hom(M, Hom(s, N))``, ``g -> (x -> (t -> g(x (x) t)))``."""
    field = m.field
    tp = tensor_product(m, s)
    inner = hom_space(s, n)
    source = module_maps(tp.module, n)
    target = module_maps(m, inner.module)
    rows = []
    for r in range(source.dim):
        g = unflatten(field, la.row(source.basis, r), tp.dim, n.dim)
        images = []
        for p in range(m.dim):
            x = la.unit_rows(field, [p], m.dim)
            values = [tp.pure(x, la.unit_rows(field, [q], s.dim)) * g for q in range(s.dim)]
            full = la.vstack(field, values, n.dim) if values else la.zeros(field, 0, n.dim)
            images.append(inner.from_matrix(full))
        phi = la.vstack(field, images, inner.dim) if images else la.zeros(field, 0, inner.dim)
        rows.append(target.coords(flatten(phi)))
    return la.vstack(field, rows, target.dim) if rows else la.zeros(field, 0, target.dim)


# --- purity -------------------------------------------------------------------


@dataclass
class PurityStage:
    stage: int
    dim: int
    pure: bool
    tor_dims: Dict[int, int] = dc_field(default_factory=dict)

    def to_json(self) -> Dict:
        return {"stage": self.stage, "dim": self.dim, "pure": self.pure, "tor_dims": {str(k): v for k, v in self.tor_dims.items()}}


@dataclass
class PurityLedger:
    n_max: int
    gldim_bound: int
    stages: List[PurityStage]
    witness: Optional[Dict[str, int]] = None

    @property
    def pure(self) -> bool:
        return self.witness is None

    @property
    def verdict(self) -> str:
        return "bounded-evidence-pure" if self.pure else "impure"

    def to_json(self) -> Dict:
        return {
            "n_max": self.n_max,
            "gldim_bound": self.gldim_bound,
            "verdict": self.verdict,
            "witness": self.witness,
            "stages": [s.to_json() for s in self.stages],
        }


def default_gldim_bound(a: Algebra, fallback: int) -> int:
    gd = global_dimension(a, fallback)
    return gd.value if gd.exact else fallback


def higher_tor_dims(m: RightModule, s, gldim_bound: int) -> Dict[int, int]:
    res = minimal_resolution(m, gldim_bound + 1)
    return {i: tor_dimension(m, s, i, res) for i in range(1, gldim_bound + 1) if res.available(i + 1)}


def purity_power(s: Bimodule, n_max: int, gldim_bound: int, *, powers: Optional[List[Bimodule]] = None) -> PurityLedger:
    """Stage ``k`` is pure iff stage ``k-1`` was and ``Tor_i(s^{k-1}, s) = 0`` for ``1 <= i <= gldim_bound``."""
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    power = s
    if powers is not None:
        powers[:] = [s]
    stages = [PurityStage(1, s.dim, True)]
    for k in range(2, n_max + 1):
        dims = higher_tor_dims(power.underlying(), s, gldim_bound)
        bad = next(((i, d) for i, d in sorted(dims.items()) if d), None)
        if bad is not None:
            stages.append(PurityStage(k, 0, False, dims))
            logger.info("purity fails at stage %d: Tor_%d has dimension %d", k, bad[0], bad[1])
            return PurityLedger(n_max, gldim_bound, stages, {"stage": k, "degree": bad[0], "dim": bad[1]})
        power = tensor_over(power, s, name=f"{s.name}^{k}")
        if powers is not None:
            powers.append(power)
        stages.append(PurityStage(k, power.dim, True, dims))
        logger.debug("purity stage %d: dim %d", k, power.dim)
    return PurityLedger(n_max, gldim_bound, stages)


@dataclass
class StabilizationReport:
    found: bool
    m0: Optional[int]
    m_max: int
    n_max: int
    gldim_bound: int
    sigma_pure: bool
    ladder: List[Dict]

    @property
    def verdict(self) -> str:
        return "bounded-evidence" if self.found else "not-found"

    def to_json(self) -> Dict:
        return {
            "verdict": self.verdict,
            "m0": self.m0,
            "m_max": self.m_max,
            "n_max": self.n_max,
            "gldim_bound": self.gldim_bound,
            "sigma_pure": self.sigma_pure,
            "ladder": self.ladder,
        }


def purity_stabilization(m: RightModule, s: Bimodule, m_max: int, n_max: int, gldim_bound: int) -> StabilizationReport:
    """Least ``m0`` with ``Tor_i(m (x) s^j, s) = 0`` for ``m0 <= j <= m0 + n_max``; bounded evidence only."""
    sigma_pure = purity_power(s, max(1, m_max + n_max), gldim_bound).pure
    ladder: List[Dict] = []
    current = m.underlying()
    flags: List[bool] = []
    for j in range(m_max + n_max + 1):
        dims = higher_tor_dims(current, s, gldim_bound)
        flags.append(not any(dims.values()))
        ladder.append({"power": j, "dim": current.dim, "tor_dims": {str(k): v for k, v in dims.items()}})
        if j < m_max + n_max:
            current = tensor_over(current, s, name=f"{m.name}(x){s.name}^{j + 1}")
    for m0 in range(m_max + 1):
        if all(flags[m0:m0 + n_max + 1]):
            return StabilizationReport(True, m0, m_max, n_max, gldim_bound, sigma_pure, ladder)
    return StabilizationReport(False, None, m_max, n_max, gldim_bound, sigma_pure, ladder)


@dataclass
class RHomReport:
    module_dim: int
    tensor_dim: int
    ext_dims: Dict[int, int]
    gldim: int

    @property
    def pure(self) -> bool:
        return not any(self.ext_dims.values())

    def to_json(self) -> Dict:
        return {
            "module_dim": self.module_dim,
            "tensor_dim": self.tensor_dim,
            "gldim": self.gldim,
            "ext_dims": {str(k): v for k, v in self.ext_dims.items()},
            "verdict": "pure" if self.pure else "counterexample-alert",
        }


def check_two_dimensional_hypothesis(s: Bimodule, gldim_bound: int) -> int:
    gd = global_dimension(s.algebra, gldim_bound)
    if not gd.exact or gd.value > 2:
        raise HypothesisNotSatisfied(f"global dimension is {gd}, not at most 2")
    for i in (1, 2):
        d = ext(s.underlying(), s.underlying(), i).dim
        if d:
            raise HypothesisNotSatisfied(f"Ext^{i}(sigma, sigma) has dimension {d}")
    return gd.value


def rhom_purity_2dim(s: Bimodule, m: RightModule, gldim_bound: int, *, gldim: Optional[int] = None) -> RHomReport:
    """``Ext^{1,2}(s, m (x) s)``; nonzero values contradict the two-dimensional purity lemma."""
    if gldim is None:
        gldim = check_two_dimensional_hypothesis(s, gldim_bound)
    target = tensor_over(m.underlying(), s)
    dims = {i: ext(s.underlying(), target, i).dim for i in (1, 2)}
    report = RHomReport(m.dim, target.dim, dims, gldim)
    if not report.pure:
        logger.warning("RHom(sigma, M (x) sigma) is not pure: %s", dims)
    return report
