from __future__ import annotations

"""
Right modules, left modules and bimodules over an :class:`Algebra`.

Conventions: vectors are rows and every action matrix multiplies on the
right. A right action satisfies ``action(ab) = action(a) action(b)``; a left
action ``a . v = v L(a)`` satisfies ``L(ab) = L(b) L(a)``. Left and right
action matrices of a bimodule commute.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.components import linear as la
from src.components.algebra import Algebra, radical
from src.components.errors import InputError
from src.components.linear import FieldSpec, Matrix, Subspace


logger = logging.getLogger(__name__)


def _combine(algebra: Algebra, x: Matrix, mats: Sequence[Matrix], dim: int) -> Matrix:
    return la.linear_combination(algebra.field, la.entries(x)[0], mats, (dim, dim))


@dataclass(frozen=True, eq=False)
class RightModule:
    algebra: Algebra
    dim: int
    action: Tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.action) != self.algebra.dim:
            raise InputError(f"Module {self.name or ''} needs one action matrix per basis element")
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise InputError(f"Action matrix of shape {m.shape} does not match module dimension {self.dim}")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def act(self, x: Matrix) -> Matrix:
        return _combine(self.algebra, x, self.action, self.dim)

    def vertex_space(self, i: int) -> Subspace:
        """``M e_i``."""
        return _vertex_space(self, i)

    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.vertex_space(i).dim for i in range(self.algebra.vertex_count))

    def validate(self) -> None:
        a = self.algebra
        for j in range(a.dim):
            for k in range(a.dim):
                product = la.row(a.right_mult[k], j)
                if not la.equal(self.action[j] * self.action[k], self.act(product)):
                    raise InputError(f"Right action of {self.name or 'module'} is not multiplicative on ({a.basis[j]}, {a.basis[k]})")
        if not la.equal(self.act(a.unit), la.identity(self.field, self.dim)):
            raise InputError(f"Unit does not act as the identity on {self.name or 'module'}")

    def underlying(self) -> "RightModule":
        return self


@dataclass(frozen=True, eq=False)
class LeftModule:
    algebra: Algebra
    dim: int
    left_action: Tuple[Matrix, ...]
    name: str = ""

    def left_act(self, x: Matrix) -> Matrix:
        return _combine(self.algebra, x, self.left_action, self.dim)

    def left_vertex_space(self, i: int) -> Subspace:
        """``e_i N``."""
        return _left_vertex_space(self, i)


@dataclass(frozen=True, eq=False)
class Bimodule(RightModule):
    left_action: Tuple[Matrix, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.left_action) != self.algebra.dim:
            raise InputError(f"Bimodule {self.name or ''} needs one left action matrix per basis element")
        for m in self.left_action:
            if m.shape != (self.dim, self.dim):
                raise InputError(f"Left action matrix of shape {m.shape} does not match dimension {self.dim}")

    def left_act(self, x: Matrix) -> Matrix:
        return _combine(self.algebra, x, self.left_action, self.dim)

    def left_vertex_space(self, i: int) -> Subspace:
        return _left_vertex_space(self, i)

    def validate(self) -> None:
        super().validate()
        a = self.algebra
        for j in range(a.dim):
            for k in range(a.dim):
                product = la.row(a.right_mult[k], j)
                if not la.equal(self.left_action[k] * self.left_action[j], self.left_act(product)):
                    raise InputError(f"Left action of {self.name or 'bimodule'} is not multiplicative on ({a.basis[j]}, {a.basis[k]})")
            for k in range(a.dim):
                if not la.equal(self.left_action[j] * self.action[k], self.action[k] * self.left_action[j]):
                    raise InputError(f"Left and right actions of {self.name or 'bimodule'} do not commute")
        if not la.equal(self.left_act(a.unit), la.identity(self.field, self.dim)):
            raise InputError(f"Unit does not act as the identity on the left of {self.name or 'bimodule'}")

    def underlying(self) -> RightModule:
        return RightModule(self.algebra, self.dim, self.action, self.name)

    def left_module(self) -> LeftModule:
        return LeftModule(self.algebra, self.dim, self.left_action, self.name)

    def opposite(self) -> "Bimodule":
        return Bimodule(self.algebra.opposite(), self.dim, self.left_action, f"{self.name}^op", self.action)


@lru_cache(maxsize=None)
def _vertex_space(m: RightModule, i: int) -> Subspace:
    return la.row_space(m.act(m.algebra.idempotents[i]))


@lru_cache(maxsize=None)
def _left_vertex_space(n, i: int) -> Subspace:
    return la.row_space(n.left_act(n.algebra.idempotents[i]))


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: RightModule
    target: RightModule
    matrix: Matrix

    def is_homomorphism(self) -> bool:
        return all(
            la.equal(s * self.matrix, self.matrix * t)
            for s, t in zip(self.source.action, self.target.action)
        )

    @property
    def rank(self) -> int:
        return la.rank(self.matrix)

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_surjective()

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``other o self``."""
        return ModuleMap(self.source, other.target, self.matrix * other.matrix)


# --- constructions ------------------------------------------------------------


def regular_module(a: Algebra) -> RightModule:
    return RightModule(a, a.dim, a.right_mult, name=f"{a.name or 'A'}_A")


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a.dim, a.right_mult, f"{a.name or 'A'}", a.left_mult)


def zero_module(a: Algebra) -> RightModule:
    z = la.zeros(a.field, 0, 0)
    return RightModule(a, 0, tuple(z for _ in range(a.dim)), name="0")


def submodule(m: RightModule, sub: Subspace, name: str = "") -> RightModule:
    """Restriction of ``m`` to an invariant subspace, in the subspace's RREF basis."""
    action = tuple(sub.coords(sub.basis * x) for x in m.action)
    if isinstance(m, Bimodule):
        left = tuple(sub.coords(sub.basis * x) for x in m.left_action)
        return Bimodule(m.algebra, sub.dim, action, name, left)
    return RightModule(m.algebra, sub.dim, action, name)


def quotient_module(m: RightModule, sub: Subspace, name: str = "") -> Tuple[RightModule, Matrix]:
    """``m / sub`` on the canonical complement, with the projection matrix."""
    q = sub.quotient_matrix()
    s = sub.section_matrix()
    action = tuple(s * x * q for x in m.action)
    if isinstance(m, Bimodule):
        left = tuple(s * x * q for x in m.left_action)
        return Bimodule(m.algebra, sub.codim, action, name, left), q
    return RightModule(m.algebra, sub.codim, action, name), q


def direct_sum(a: Algebra, mods: Sequence[RightModule], name: str = "") -> RightModule:
    if not mods:
        return zero_module(a)
    dim = sum(m.dim for m in mods)
    action = tuple(la.block_diagonal(a.field, [m.action[k] for m in mods]) for k in range(a.dim))
    return RightModule(a, dim, action, name)


def radical_subspace(m: RightModule) -> Subspace:
    """``M rad(A)``."""
    rad = radical(m.algebra)
    if rad.dim == 0 or m.dim == 0:
        return la.zero_subspace(m.field, m.dim)
    blocks = [m.act(la.row(rad.basis, r)) for r in range(rad.dim)]
    return la.row_space(la.vstack(m.field, blocks, m.dim))


def top(m: RightModule) -> Tuple[RightModule, Matrix]:
    return quotient_module(m, radical_subspace(m), name=f"top({m.name})")


@lru_cache(maxsize=None)
def projective_basis(a: Algebra, i: int) -> Subspace:
    """Basis of ``e_i A`` inside ``A``."""
    return la.row_space(a.left_matrix(a.idempotents[i]))


def projective_module(a: Algebra, i: int) -> RightModule:
    return submodule(regular_module(a), projective_basis(a, i), name=f"P{i + 1}")


def simple_module(a: Algebra, i: int) -> RightModule:
    p = projective_module(a, i)
    s, _ = quotient_module(p, radical_subspace(p), name=f"S{i + 1}")
    return s


def injective_module(a: Algebra, i: int) -> RightModule:
    """``e_i D(A) = D(A e_i)``."""
    from src.components.algebra import dual_bimodule

    dual = dual_bimodule(a)
    sub = dual.left_vertex_space(i)
    return submodule(dual.underlying(), sub, name=f"I{i + 1}")


def top_bimodule(a: Algebra) -> Bimodule:
    """``A / rad A`` as a bimodule."""
    quotient, _ = quotient_module(regular_bimodule(a), radical(a), name=f"{a.name or 'A'}/rad")
    return quotient


def free_bimodule(a: Algebra, rank: int) -> Bimodule:
    reg = regular_bimodule(a)
    action = tuple(la.block_diagonal(a.field, [x] * rank) for x in reg.action)
    left = tuple(la.block_diagonal(a.field, [x] * rank) for x in reg.left_action)
    return Bimodule(a, a.dim * rank, action, f"{a.name or 'A'}^{rank}", left)


def bar_bimodule(a: Algebra) -> Bimodule:
    """``A (x)_k A`` with the outer actions."""
    f, d = a.field, a.dim
    ident = la.identity(f, d)
    action = tuple(la.kron(ident, r) for r in a.right_mult)
    left = tuple(la.kron(l, ident) for l in a.left_mult)
    return Bimodule(a, d * d, action, f"{a.name or 'A'}(x)k{a.name or 'A'}", left)


def corner_basis(a: Algebra, i: int, j: int) -> Subspace:
    """Basis of ``e_i A e_j``."""
    rows = la.vstack(a.field, [a.corner(i, a.basis_element(k), j) for k in range(a.dim)], a.dim)
    return la.row_space(rows)


# --- tensor products ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """``M (x)_A N`` realised as a quotient of ``sum_i M e_i (x)_k e_i N``."""

    left: RightModule
    right: object
    left_spaces: Tuple[Subspace, ...]
    right_spaces: Tuple[Subspace, ...]
    offsets: Tuple[int, ...]
    reduced_dim: int
    relations: Subspace
    module: RightModule

    @property
    def quotient(self) -> Matrix:
        return _quotient_matrix(self)

    @property
    def section(self) -> Matrix:
        return _section_matrix(self)

    @property
    def dim(self) -> int:
        return self.module.dim

    def reduced(self, x: Matrix, t: Matrix) -> Matrix:
        f = self.left.field
        blocks = []
        for i, (u, w) in enumerate(zip(self.left_spaces, self.right_spaces)):
            if u.dim == 0 or w.dim == 0:
                continue
            xe = u.coords(x * self.left.act(self.left.algebra.idempotents[i]))
            et = w.coords(t * self.right.left_act(self.left.algebra.idempotents[i]))
            blocks.append((0, self.offsets[i], la.kron(xe, et)))
        return la.assemble(f, (1, self.reduced_dim), blocks)

    def pure(self, x: Matrix, t: Matrix) -> Matrix:
        """Coordinates of ``x (x) t``."""
        return self.reduced(x, t) * self.quotient

    def pure_tensors(self) -> List[Tuple[int, int, int]]:
        """For each basis vector of the result: ``(vertex, left index, right index)``."""
        result = []
        for col in self.relations.complement:
            for i in range(len(self.offsets)):
                w = self.right_spaces[i].dim
                start = self.offsets[i]
                if start <= col < start + self.left_spaces[i].dim * w:
                    p, q = divmod(col - start, w)
                    result.append((i, p, q))
                    break
        return result

    def map_left(self, f: Matrix, target: "TensorProduct") -> Matrix:
        """``F (x) id`` for a right-module map ``F: M -> M'``."""
        field = self.left.field
        blocks = []
        for i, (u, w) in enumerate(zip(self.left_spaces, self.right_spaces)):
            if u.dim == 0 or w.dim == 0:
                continue
            image = target.left_spaces[i].coords(u.basis * f)
            blocks.append((self.offsets[i], target.offsets[i], la.kron(image, la.identity(field, w.dim))))
        lifted = la.assemble(field, (self.reduced_dim, target.reduced_dim), blocks)
        return self.section * lifted * target.quotient

    def map_right(self, g: Matrix, target: "TensorProduct") -> Matrix:
        """``id (x) G`` for a left-module map ``G: N -> N'``."""
        field = self.left.field
        blocks = []
        for i, (u, w) in enumerate(zip(self.left_spaces, self.right_spaces)):
            if u.dim == 0 or w.dim == 0:
                continue
            image = target.right_spaces[i].coords(w.basis * g)
            blocks.append((self.offsets[i], target.offsets[i], la.kron(la.identity(field, u.dim), image)))
        lifted = la.assemble(field, (self.reduced_dim, target.reduced_dim), blocks)
        return self.section * lifted * target.quotient


@lru_cache(maxsize=None)
def _quotient_matrix(tp: TensorProduct) -> Matrix:
    return tp.relations.quotient_matrix()


@lru_cache(maxsize=None)
def _section_matrix(tp: TensorProduct) -> Matrix:
    return tp.relations.section_matrix()


def _relation_rows(m: RightModule, n, left_spaces, right_spaces, offsets, reduced_dim) -> Matrix:
    a, f = m.algebra, m.field
    blocks = []
    row = 0
    for g in a.generators:
        for i in range(a.vertex_count):
            u_i, w_i = left_spaces[i], right_spaces[i]
            if u_i.dim == 0:
                continue
            for j in range(a.vertex_count):
                u_j, w_j = left_spaces[j], right_spaces[j]
                if w_j.dim == 0:
                    continue
                piece = a.corner(i, g, j)
                if la.is_zero(piece):
                    continue
                moved_left = u_j.coords(u_i.basis * m.act(piece))
                moved_right = w_i.coords(w_j.basis * n.left_act(piece))
                height = u_i.dim * w_j.dim
                if u_j.dim:
                    blocks.append((row, offsets[j], la.kron(moved_left, la.identity(f, w_j.dim))))
                if w_i.dim:
                    blocks.append((row, offsets[i], la.scale(la.kron(la.identity(f, u_i.dim), moved_right), -f.domain.one)))
                row += height
    return la.assemble(f, (row, reduced_dim), blocks)


def tensor_product(m: RightModule, n, name: str = "") -> TensorProduct:
    """``m (x)_A n`` for a right module ``m`` and a left module or bimodule ``n``."""
    if m.algebra is not n.algebra:
        raise InputError("Tensor factors live over different algebras")
    a = m.algebra
    left_spaces = tuple(m.vertex_space(i) for i in range(a.vertex_count))
    right_spaces = tuple(n.left_vertex_space(i) for i in range(a.vertex_count))
    offsets, total = [], 0
    for u, w in zip(left_spaces, right_spaces):
        offsets.append(total)
        total += u.dim * w.dim
    rel = la.row_space(_relation_rows(m, n, left_spaces, right_spaces, offsets, total))
    logger.debug("tensor %s (x) %s: reduced %d, relations %d", m.name, getattr(n, "name", ""), total, rel.dim)

    placeholder = RightModule(a, rel.codim, tuple(la.zeros(a.field, rel.codim, rel.codim) for _ in range(a.dim)), name)
    tp = TensorProduct(m, n, left_spaces, right_spaces, tuple(offsets), total, rel, placeholder)
    if not isinstance(n, Bimodule):
        return tp
    action = tuple(tp.map_right(x, tp) for x in n.action)
    if isinstance(m, Bimodule):
        left = tuple(tp.map_left(x, tp) for x in m.left_action)
        module: RightModule = Bimodule(a, rel.codim, action, name, left)
    else:
        module = RightModule(a, rel.codim, action, name)
    return TensorProduct(m, n, left_spaces, right_spaces, tuple(offsets), total, rel, module)


def tensor_over(m: RightModule, s: Bimodule, name: str = "") -> RightModule:
    return tensor_product(m, s, name or f"{m.name}(x){s.name}").module


# --- Hom by brute force -------------------------------------------------------


def module_maps(m: RightModule, n: RightModule) -> Subspace:
    """All right-module maps ``m -> n`` as row-major flattened matrices."""
    a, f = m.algebra, m.field
    unknowns = m.dim * n.dim
    constraints = []
    for x in a.generators + a.idempotents:
        left = la.kron(m.act(x), la.identity(f, n.dim))
        right = la.kron(la.identity(f, m.dim), n.act(x).transpose())
        constraints.append(left - right)
    stacked = la.vstack(f, constraints, unknowns)
    return la.kernel_basis(stacked)


def unflatten(field: FieldSpec, flat: Matrix, rows: int, cols: int) -> Matrix:
    values = la.entries(flat)[0] if flat.shape[1] else []
    return la.matrix(field, [values[r * cols:(r + 1) * cols] for r in range(rows)], cols)


def flatten(m: Matrix) -> Matrix:
    field = la.field_of(m)
    flat = [v for r in la.entries(m) for v in r]
    return la.matrix(field, [flat], len(flat))


# --- sampling -----------------------------------------------------------------


def random_element(a: Algebra, i: int, j: int, rng: random.Random, coefficient_range: int = 2) -> Matrix:
    basis = corner_basis(a, i, j)
    if basis.dim == 0:
        return la.zeros(a.field, 1, a.dim)
    return la.random_matrix(a.field, 1, basis.dim, rng, coefficient_range) * basis.basis


def random_module(a: Algebra, max_dim: int, rng: random.Random, *, attempts: int = 50) -> RightModule:
    """Cokernel of a random map between small free modules; finitely presented by construction."""
    from src.components.homology import FreeMap, FreeModule

    for _ in range(attempts):
        gens = tuple(rng.randrange(a.vertex_count) for _ in range(rng.randint(1, 2)))
        rels = tuple(rng.randrange(a.vertex_count) for _ in range(rng.randint(0, 2)))
        target, source = FreeModule(a, gens), FreeModule(a, rels)
        entries = {
            (j, i): random_element(a, gens[i], rels[j], rng)
            for j in range(len(rels))
            for i in range(len(gens))
        }
        phi = FreeMap(source, target, entries)
        image = la.row_space(phi.matrix())
        if 0 < image.codim <= max_dim:
            module, _ = quotient_module(target.module, image, name="M")
            return module
    return simple_module(a, rng.randrange(a.vertex_count))
