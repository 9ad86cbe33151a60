from __future__ import annotations

"""
Finite-dimensional algebras given by structure constants or by a quiver with
monomial relations.

Multiplication of paths is concatenation: ``p * q`` is nonzero only when ``p``
ends where ``q`` starts. With this convention ``e_i A`` is spanned by the
paths starting at ``i`` and is the indecomposable projective right module
``P_i``.
"""

import logging
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.components import linear as la
from src.components.errors import InputError, NonAdmissibleError, RadicalUnavailableError
from src.components.linear import FieldSpec, Matrix, Subspace


logger = logging.getLogger(__name__)

DEFAULT_PATH_CAP = 500


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]
    relations: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("Quiver vertices must be distinct")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names) or set(names) & set(self.vertices):
            raise InputError("Arrow names must be distinct from each other and from vertices")
        for name, src, tgt in self.arrows:
            if src not in self.vertices or tgt not in self.vertices:
                raise InputError(f"Arrow {name} has an endpoint outside the vertex list")
        ends = {name: (src, tgt) for name, src, tgt in self.arrows}
        for rel in self.relations:
            if len(rel) < 2:
                raise InputError(f"Relation {rel} must have length at least 2")
            for a, b in zip(rel, rel[1:]):
                if a not in ends or b not in ends:
                    raise InputError(f"Relation {rel} uses an unknown arrow")
                if ends[a][1] != ends[b][0]:
                    raise InputError(f"Relation {rel} is not a composable path")

    @classmethod
    def from_json(cls, raw: Dict) -> "QuiverPresentation":
        try:
            return cls(
                vertices=tuple(str(v) for v in raw["vertices"]),
                arrows=tuple((str(n), str(s), str(t)) for n, s, t in raw.get("arrows", [])),
                relations=tuple(tuple(str(a) for a in rel) for rel in raw.get("relations", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Malformed quiver description: {exc}") from exc

    def to_json(self) -> Dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [list(a) for a in self.arrows],
            "relations": [list(r) for r in self.relations],
        }

    def opposite(self) -> "QuiverPresentation":
        return QuiverPresentation(
            vertices=self.vertices,
            arrows=tuple((n, t, s) for n, s, t in self.arrows),
            relations=tuple(tuple(reversed(r)) for r in self.relations),
        )


@dataclass(frozen=True, eq=False)
class Algebra:
    """Basis ``b_0..b_{d-1}``; ``right_mult[j]`` is ``x -> x b_j`` and ``left_mult[i]`` is ``y -> b_i y``."""

    field: FieldSpec
    basis: Tuple[str, ...]
    right_mult: Tuple[Matrix, ...]
    left_mult: Tuple[Matrix, ...]
    unit: Matrix
    idempotents: Tuple[Matrix, ...]
    quiver: Optional[QuiverPresentation] = None
    path_lengths: Optional[Tuple[int, ...]] = None
    arrow_indices: Tuple[int, ...] = ()
    name: str = ""
    _opposite: List["Algebra"] = dc_field(default_factory=list, repr=False)

    @classmethod
    def from_structure_constants(
        cls,
        field: FieldSpec,
        basis: Sequence[str],
        mult: Dict[Tuple[int, int], Sequence],
        unit: Sequence,
        idempotents: Sequence[Sequence],
        *,
        quiver: Optional[QuiverPresentation] = None,
        path_lengths: Optional[Sequence[int]] = None,
        arrow_indices: Sequence[int] = (),
        name: str = "",
    ) -> "Algebra":
        d = len(basis)
        dom = field.domain
        right: List[Dict[int, Dict[int, object]]] = [{} for _ in range(d)]
        left: List[Dict[int, Dict[int, object]]] = [{} for _ in range(d)]
        for (i, j), coords in mult.items():
            if not (0 <= i < d and 0 <= j < d) or len(coords) != d:
                raise InputError(f"Structure constant entry ({i}, {j}) is malformed")
            row = {k: field.scalar(c) for k, c in enumerate(coords)}
            row = {k: v for k, v in row.items() if v != dom.zero}
            if row:
                right[j][i] = row
                left[i][j] = row
        algebra = cls(
            field=field,
            basis=tuple(basis),
            right_mult=tuple(la.from_dict(field, r, (d, d)) for r in right),
            left_mult=tuple(la.from_dict(field, l, (d, d)) for l in left),
            unit=la.vector(field, list(unit)),
            idempotents=tuple(la.vector(field, list(e)) for e in idempotents),
            quiver=quiver,
            path_lengths=tuple(path_lengths) if path_lengths is not None else None,
            arrow_indices=tuple(arrow_indices),
            name=name,
        )
        algebra.validate()
        return algebra

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertex_count(self) -> int:
        return len(self.idempotents)

    def basis_element(self, index: int) -> Matrix:
        return la.unit_rows(self.field, [index], self.dim)

    def element(self, coords: Sequence) -> Matrix:
        return la.vector(self.field, list(coords))

    def right_matrix(self, x: Matrix) -> Matrix:
        return la.linear_combination(self.field, la.entries(x)[0], self.right_mult, (self.dim, self.dim))

    def left_matrix(self, x: Matrix) -> Matrix:
        return la.linear_combination(self.field, la.entries(x)[0], self.left_mult, (self.dim, self.dim))

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        return x * self.right_matrix(y)

    def corner(self, i: int, x: Matrix, j: int) -> Matrix:
        """``e_i x e_j``."""
        return self.multiply(self.multiply(self.idempotents[i], x), self.idempotents[j])

    @property
    def generators(self) -> Tuple[Matrix, ...]:
        """Elements that generate the algebra together with the idempotents."""
        if self.quiver is not None:
            return tuple(self.basis_element(i) for i in self.arrow_indices)
        return tuple(self.basis_element(i) for i in range(self.dim))

    def validate(self) -> None:
        d, f = self.dim, self.field
        for j in range(d):
            for k in range(d):
                product = la.row(self.right_mult[k], j)
                if not la.equal(self.right_mult[j] * self.right_mult[k], self.right_matrix(product)):
                    raise InputError(f"Multiplication is not associative on basis elements {self.basis[j]}, {self.basis[k]}")
        ident = la.identity(f, d)
        if not la.equal(self.right_matrix(self.unit), ident) or not la.equal(self.left_matrix(self.unit), ident):
            raise InputError("Unit law fails")
        if not self.idempotents:
            raise InputError("At least one idempotent is required")
        total = la.zeros(f, 1, d)
        for i, e in enumerate(self.idempotents):
            total = total + e
            for j, other in enumerate(self.idempotents):
                expected = e if i == j else la.zeros(f, 1, d)
                if not la.equal(self.multiply(e, other), expected):
                    raise InputError(f"Idempotents {i} and {j} are not orthogonal idempotents")
        if not la.equal(total, self.unit):
            raise InputError("Idempotents do not sum to the unit")

    def opposite(self) -> "Algebra":
        if not self._opposite:
            self._opposite.append(
                Algebra(
                    field=self.field,
                    basis=self.basis,
                    right_mult=self.left_mult,
                    left_mult=self.right_mult,
                    unit=self.unit,
                    idempotents=self.idempotents,
                    quiver=self.quiver.opposite() if self.quiver is not None else None,
                    path_lengths=self.path_lengths,
                    arrow_indices=self.arrow_indices,
                    name=f"{self.name}^op" if self.name else "",
                )
            )
        return self._opposite[0]

    def to_json(self) -> Dict:
        mult = []
        for i in range(self.dim):
            rows = la.sparse_rows(self.left_mult[i])
            for j in sorted(rows):
                coords = la.entries(la.row(self.left_mult[i], j))[0]
                mult.append([i, j, [self.field.format(c) for c in coords]])
        payload = {
            "field": self.field.to_json(),
            "basis": list(self.basis),
            "unit": [self.field.format(c) for c in la.entries(self.unit)[0]],
            "idempotents": [[self.field.format(c) for c in la.entries(e)[0]] for e in self.idempotents],
            "mult": mult,
        }
        if self.quiver is not None:
            payload["quiver"] = self.quiver.to_json()
        return payload


# --- quiver front-end -----------------------------------------------------


def _enumerate_paths(q: QuiverPresentation, cap: int) -> List[Tuple[str, str, Tuple[str, ...]]]:
    ends = {name: (src, tgt) for name, src, tgt in q.arrows}
    relations = set(q.relations)
    longest = max((len(r) for r in relations), default=0)
    paths = [(v, v, ()) for v in q.vertices]
    frontier = [(ends[a][0], ends[a][1], (a,)) for a, _, _ in q.arrows]
    while frontier:
        paths.extend(frontier)
        if len(paths) > cap:
            raise NonAdmissibleError(f"Path enumeration exceeded the cap of {cap}; the presentation is not admissible")
        extended = []
        for src, tgt, word in frontier:
            for name, a_src, a_tgt in q.arrows:
                if a_src != tgt:
                    continue
                candidate = word + (name,)
                if any(candidate[-k:] in relations for k in range(2, min(longest, len(candidate)) + 1)):
                    continue
                extended.append((src, a_tgt, candidate))
        frontier = extended
    return paths


def path_algebra(q: QuiverPresentation, field: FieldSpec = FieldSpec(), *, cap: int = DEFAULT_PATH_CAP, name: str = "") -> Algebra:
    paths = _enumerate_paths(q, cap)
    index = {p: k for k, p in enumerate(paths)}
    d = len(paths)
    logger.debug("path algebra %s: %d basis paths", name or "<anonymous>", d)

    def label(p) -> str:
        return f"e{p[0]}" if not p[2] else "*".join(p[2])

    mult: Dict[Tuple[int, int], List[int]] = {}
    for i, (s1, t1, w1) in enumerate(paths):
        for j, (s2, t2, w2) in enumerate(paths):
            if t1 != s2:
                continue
            product = (s1, t2, w1 + w2)
            k = index.get(product)
            if k is None:
                continue
            coords = [0] * d
            coords[k] = 1
            mult[(i, j)] = coords

    unit = [1 if not p[2] else 0 for p in paths]
    idempotents = [[1 if k == index[(v, v, ())] else 0 for k in range(d)] for v in q.vertices]
    arrow_indices = [index[(s, t, (a,))] for a, s, t in q.arrows]
    return Algebra.from_structure_constants(
        field,
        [label(p) for p in paths],
        mult,
        unit,
        idempotents,
        quiver=q,
        path_lengths=[len(p[2]) for p in paths],
        arrow_indices=arrow_indices,
        name=name,
    )


# --- structure --------------------------------------------------------------


@lru_cache(maxsize=None)
def radical(a: Algebra) -> Subspace:
    f = a.field
    if a.path_lengths is not None:
        rows = [k for k, length in enumerate(a.path_lengths) if length >= 1]
        return la.row_space(la.unit_rows(f, rows, a.dim))
    if f.kind != "Q":
        raise RadicalUnavailableError("Radical unavailable in positive characteristic without a quiver presentation")
    traces = [sum(la.entries(r)[i][i] for i in range(a.dim)) if a.dim else f.domain.zero for r in a.right_mult]
    gram: Dict[int, Dict[int, object]] = {}
    for i in range(a.dim):
        for j in range(a.dim):
            coords = la.entries(la.row(a.right_mult[j], i))[0]
            value = sum((c * t for c, t in zip(coords, traces)), f.domain.zero)
            if value:
                gram.setdefault(i, {})[j] = value
    return la.left_kernel(la.from_dict(f, gram, (a.dim, a.dim)))


@dataclass(frozen=True)
class GlobalDimension:
    bound: int
    value: Optional[int]
    projective_dimensions: Tuple[Optional[int], ...]

    @property
    def exact(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.exact else f"at least {self.bound + 1}"

    def to_json(self) -> Dict:
        return {"bound": self.bound, "value": self.value, "verdict": str(self), "projective_dimensions": list(self.projective_dimensions)}


def global_dimension(a: Algebra, bound: int) -> GlobalDimension:
    """Maximum projective dimension of the simple right modules, searched up to ``bound``."""
    from src.components.homology import minimal_resolution
    from src.components.modules import simple_module

    if bound < 0:
        raise InputError("Global dimension bound must be non-negative")
    dims: List[Optional[int]] = []
    for i in range(a.vertex_count):
        resolution = minimal_resolution(simple_module(a, i), bound + 1)
        dims.append(resolution.length if resolution.complete and resolution.length <= bound else None)
    value = None if any(d is None for d in dims) else max(dims, default=0)
    result = GlobalDimension(bound=bound, value=value, projective_dimensions=tuple(dims))
    logger.info("global dimension of %s: %s", a.name or "algebra", result)
    return result


def dual_bimodule(a: Algebra):
    """``D(A)`` on the dual basis; actions are transposed regular multiplications."""
    from src.components.modules import Bimodule

    return Bimodule(
        algebra=a,
        dim=a.dim,
        action=tuple(m.transpose() for m in a.left_mult),
        left_action=tuple(m.transpose() for m in a.right_mult),
        name=f"D({a.name})" if a.name else "D(A)",
    )
