from __future__ import annotations

"""
Exact linear algebra over the rationals or a prime field.

Matrices are sympy ``DomainMatrix`` objects kept in sparse format. Vectors are
rows and maps act on the right (``v -> v * M``) everywhere in the package, so
"image" means row space and "kernel" of a map means left kernel. The one
exception is :func:`kernel_basis`, which returns the right null space.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from src.components.errors import ConsistencyError, InputError


Scalar = Union[int, str, Fraction]


@lru_cache(maxsize=None)
def _domain(kind: str, p: int):
    if kind == "Q":
        return QQ
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "Q"
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("Q", "Fp"):
            raise InputError(f"Unknown field kind {self.kind!r}")
        if self.kind == "Fp" and not isprime(self.p):
            raise InputError(f"Prime field requires a prime, got {self.p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", int(p))

    @classmethod
    def from_json(cls, raw) -> "FieldSpec":
        if raw == "Q":
            return cls.rationals()
        if isinstance(raw, dict) and "Fp" in raw:
            return cls.prime(raw["Fp"])
        raise InputError(f"Field must be \"Q\" or {{\"Fp\": p}}, got {raw!r}")

    def to_json(self):
        return "Q" if self.kind == "Q" else {"Fp": self.p}

    @property
    def domain(self):
        return _domain(self.kind, self.p)

    @property
    def label(self) -> str:
        return "QQ" if self.kind == "Q" else f"GF({self.p})"

    def scalar(self, value: Scalar):
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except ValueError as exc:
                raise InputError(f"Cannot parse scalar {value!r}") from exc
        if isinstance(value, Fraction):
            if self.kind == "Q":
                return QQ(value.numerator, value.denominator)
            inv = pow(value.denominator % self.p, -1, self.p)
            return self.domain(value.numerator * inv % self.p)
        if isinstance(value, int):
            return self.domain.convert(value % self.p if self.kind == "Fp" else value)
        return self.domain.convert(value)

    def format(self, value) -> Union[int, str]:
        if self.kind == "Fp":
            return int(value) % self.p
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"


Matrix = DomainMatrix


# --- construction ---------------------------------------------------------


def from_dict(field: FieldSpec, rows: Dict[int, Dict[int, object]], shape: Tuple[int, int]) -> Matrix:
    dom = field.domain
    clean = {
        i: {j: v for j, v in row.items() if v}
        for i, row in rows.items()
    }
    clean = {i: row for i, row in clean.items() if row}
    return DomainMatrix(clean, shape, dom)


def matrix(field: FieldSpec, rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> Matrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise InputError("Column count is required for a matrix with no rows")
        ncols = len(rows[0])
    data: Dict[int, Dict[int, object]] = {}
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise InputError(f"Row {i} has {len(row)} entries, expected {ncols}")
        data[i] = {j: field.scalar(v) for j, v in enumerate(row)}
    return from_dict(field, data, (len(rows), ncols))


def zeros(field: FieldSpec, nrows: int, ncols: int) -> Matrix:
    return DomainMatrix({}, (nrows, ncols), field.domain)


def identity(field: FieldSpec, n: int) -> Matrix:
    one = field.domain.one
    return DomainMatrix({i: {i: one} for i in range(n)}, (n, n), field.domain)


def unit_rows(field: FieldSpec, indices: Sequence[int], ncols: int) -> Matrix:
    one = field.domain.one
    return DomainMatrix({r: {c: one} for r, c in enumerate(indices)}, (len(indices), ncols), field.domain)


def vector(field: FieldSpec, values: Sequence[Scalar]) -> Matrix:
    return matrix(field, [values], len(values))


# --- inspection -----------------------------------------------------------


def field_of(m: Matrix) -> FieldSpec:
    dom = m.domain
    if dom == QQ:
        return FieldSpec.rationals()
    return FieldSpec.prime(int(dom.mod))


def sparse_rows(m: Matrix) -> Dict[int, Dict[int, object]]:
    return m.to_sparse().rep


def entries(m: Matrix) -> List[List[object]]:
    return m.to_list()


def is_zero(m: Matrix) -> bool:
    return not any(v for row in sparse_rows(m).values() for v in row.values())


def equal(a: Matrix, b: Matrix) -> bool:
    if a.shape != b.shape:
        return False
    return is_zero(a.to_sparse() - b.to_sparse())


def row(m: Matrix, index: int) -> Matrix:
    return select_rows(m, [index])


# --- structural helpers ---------------------------------------------------


def select_rows(m: Matrix, indices: Sequence[int]) -> Matrix:
    rows = sparse_rows(m)
    data = {new: dict(rows[old]) for new, old in enumerate(indices) if old in rows}
    return DomainMatrix(data, (len(indices), m.shape[1]), m.domain)


def select_columns(m: Matrix, indices: Sequence[int]) -> Matrix:
    position = {old: new for new, old in enumerate(indices)}
    data: Dict[int, Dict[int, object]] = {}
    for i, row_ in sparse_rows(m).items():
        picked = {position[j]: v for j, v in row_.items() if j in position}
        if picked:
            data[i] = picked
    return DomainMatrix(data, (m.shape[0], len(indices)), m.domain)


def assemble(field: FieldSpec, shape: Tuple[int, int], blocks: Iterable[Tuple[int, int, Matrix]]) -> Matrix:
    """Place blocks at (row offset, column offset), summing overlaps."""
    data: Dict[int, Dict[int, object]] = {}
    for r0, c0, block in blocks:
        for i, row_ in sparse_rows(block).items():
            target = data.setdefault(r0 + i, {})
            for j, v in row_.items():
                target[c0 + j] = target.get(c0 + j, field.domain.zero) + v
    return from_dict(field, data, shape)


def hstack(field: FieldSpec, blocks: Sequence[Matrix], nrows: int) -> Matrix:
    offset, placed = 0, []
    for block in blocks:
        placed.append((0, offset, block))
        offset += block.shape[1]
    return assemble(field, (nrows, offset), placed)


def vstack(field: FieldSpec, blocks: Sequence[Matrix], ncols: int) -> Matrix:
    offset, placed = 0, []
    for block in blocks:
        placed.append((offset, 0, block))
        offset += block.shape[0]
    return assemble(field, (offset, ncols), placed)


def block_diagonal(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    r = c = 0
    placed = []
    for block in blocks:
        placed.append((r, c, block))
        r += block.shape[0]
        c += block.shape[1]
    return assemble(field, (r, c), placed)


def kron(a: Matrix, b: Matrix) -> Matrix:
    (ar, ac), (br, bc) = a.shape, b.shape
    brows = sparse_rows(b)
    data: Dict[int, Dict[int, object]] = {}
    for i, arow in sparse_rows(a).items():
        for j, av in arow.items():
            for k, brow in brows.items():
                target = data.setdefault(i * br + k, {})
                for l, bv in brow.items():
                    target[j * bc + l] = av * bv
    return DomainMatrix(data, (ar * br, ac * bc), a.domain)


def scale(m: Matrix, value) -> Matrix:
    data = {i: {j: v * value for j, v in r.items()} for i, r in sparse_rows(m).items()}
    return from_dict(field_of(m), data, m.shape)


def linear_combination(field: FieldSpec, coeffs: Sequence[object], mats: Sequence[Matrix], shape: Tuple[int, int]) -> Matrix:
    total = zeros(field, *shape)
    for c, m in zip(coeffs, mats):
        if c:
            total = total + scale(m, c)
    return total


# --- echelon reduction ----------------------------------------------------


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped; pivots ascend."""
    if m.shape[0] == 0 or m.shape[1] == 0:
        return DomainMatrix({}, (0, m.shape[1]), m.domain), ()
    reduced, pivots = m.to_sparse().rref()
    pivots = tuple(pivots)
    return select_rows(reduced, range(len(pivots))), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient_dim: int
    basis: Matrix
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def complement(self) -> Tuple[int, ...]:
        taken = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in taken)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def coords(self, vectors: Matrix) -> Matrix:
        """Coordinates of rows lying in the subspace, w.r.t. the RREF basis."""
        return select_columns(vectors, self.pivots)

    def contains(self, vectors: Matrix) -> bool:
        return is_zero(vectors * self.quotient_matrix())

    def quotient_matrix(self) -> Matrix:
        """Projection onto the canonical complement (non-pivot coordinates)."""
        complement = self.complement
        position = {j: k for k, j in enumerate(complement)}
        basis_rows = sparse_rows(self.basis)
        data: Dict[int, Dict[int, object]] = {}
        for j in complement:
            data[j] = {position[j]: self.field.domain.one}
        for r, pivot in enumerate(self.pivots):
            data[pivot] = {position[j]: -v for j, v in basis_rows.get(r, {}).items() if j in position}
        return from_dict(self.field, data, (self.ambient_dim, len(complement)))

    def section_matrix(self) -> Matrix:
        """Rows are the unit vectors of the complement coordinates."""
        return unit_rows(self.field, self.complement, self.ambient_dim)


def row_space(m: Matrix) -> Subspace:
    reduced, pivots = rref(m)
    return Subspace(field_of(m), m.shape[1], reduced, pivots)


def zero_subspace(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, zeros(field, 0, ambient_dim), ())


def full_subspace(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, identity(field, ambient_dim), tuple(range(ambient_dim)))


def kernel_basis(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}`` as a canonical RREF subspace."""
    field = field_of(m)
    ncols = m.shape[1]
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    rows = sparse_rows(reduced)
    data: Dict[int, Dict[int, object]] = {}
    for k, free in enumerate(j for j in range(ncols) if j not in pivot_set):
        vec = {free: field.domain.one}
        for r, p in enumerate(pivots):
            v = rows.get(r, {}).get(free)
            if v:
                vec[p] = -v
        data[k] = vec
    null = from_dict(field, data, (ncols - len(pivots), ncols))
    return row_space(null)


def left_kernel(m: Matrix) -> Subspace:
    """``{v : v m = 0}``."""
    return kernel_basis(m.transpose())


def image(m: Matrix) -> Subspace:
    return row_space(m)


def quotient_coords(ambient_dim: int, sub: Subspace, v: Sequence[object]) -> List[object]:
    length = v.shape[1] if isinstance(v, DomainMatrix) else len(v)
    if sub.ambient_dim != ambient_dim or length != ambient_dim:
        raise InputError(
            f"Dimension mismatch: ambient {ambient_dim}, subspace in {sub.ambient_dim}, vector of length {length}"
        )
    vec = v if isinstance(v, DomainMatrix) else matrix(sub.field, [list(v)], ambient_dim)
    result = vec * sub.quotient_matrix()
    return entries(result)[0] if result.shape[1] else []


def solve_left(a: Matrix, b: Matrix, rng: Optional[random.Random] = None) -> Matrix:
    """Return X with ``X a = b``; a random kernel shift is added when ``rng`` is given."""
    field = field_of(a)
    n, m = a.shape
    if b.shape[1] != m:
        raise InputError(f"Cannot solve X*A = B with A {a.shape} and B {b.shape}")
    k = b.shape[0]
    augmented = hstack(field, [a.transpose(), b.transpose()], m)
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] >= n:
        raise ConsistencyError("Linear system X*A = B has no solution")
    rows = sparse_rows(reduced)
    data: Dict[int, Dict[int, object]] = {}
    for r, p in enumerate(pivots):
        for j, v in rows.get(r, {}).items():
            if j >= n:
                data.setdefault(j - n, {})[p] = v
    solution = from_dict(field, data, (k, n))
    if rng is not None:
        null = left_kernel(a)
        if null.dim:
            shift = random_matrix(field, k, null.dim, rng, 3)
            solution = solution + shift * null.basis
    return solution


def random_matrix(field: FieldSpec, nrows: int, ncols: int, rng: random.Random, coefficient_range: int = 2) -> Matrix:
    data = {
        i: {j: field.scalar(rng.randint(-coefficient_range, coefficient_range)) for j in range(ncols)}
        for i in range(nrows)
    }
    return from_dict(field, data, (nrows, ncols))


def format_matrix(field: FieldSpec, m: Matrix) -> List[List[Union[int, str]]]:
    return [[field.format(v) for v in r] for r in entries(m)]
