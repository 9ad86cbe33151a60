from __future__ import annotations

"""
Free and bar tensor algebras written out on monomials.

For ``s = A^r`` the algebra ``T`` is ``A<X_1..X_r>`` with the ``X_q`` central
over ``A``; a degree ``n`` monomial ``(b, (q_1, ..., q_n))`` is the basis
element ``b`` times the word ``X_q1 ... X_qn``. For the bar bimodule
``s = A (x)_k A`` the degree ``n`` part is ``A^((x)(n+1))`` over ``k`` and a
monomial ``(b_0, (b_1, ..., b_n))`` is a pure tensor of basis elements.

Slice matrices of maps between graded free modules are built here from
monomial products alone, without the tower, so kernel dimensions can be
checked against :func:`src.components.graded.graded_kernel`.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.components import linear as la
from src.components.algebra import Algebra
from src.components.errors import InputError
from src.components.graded import GradedFreeModule, GradedMap, TensorTower, make_instance
from src.components.linear import Matrix
from src.components.modules import Bimodule


logger = logging.getLogger(__name__)

Monomial = Tuple[int, Tuple[int, ...]]
Polynomial = Dict[Monomial, int]


@dataclass(frozen=True)
class MonomialModel:
    algebra: Algebra
    kind: str
    rank: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("free", "bar"):
            raise InputError(f"No monomial model for instance kind {self.kind!r}")

    @property
    def letters(self) -> int:
        return self.rank if self.kind == "free" else self.algebra.dim

    def sigma(self) -> Bimodule:
        return make_instance(self.kind, self.algebra, self.rank)

    def monomials(self, n: int) -> List[Monomial]:
        return [(b, w) for b in range(self.algebra.dim) for w in itertools.product(range(self.letters), repeat=n)]

    def _basis_product(self, i: int, j: int) -> List[Tuple[int, object]]:
        a = self.algebra
        row = la.entries(a.multiply(a.basis_element(i), a.basis_element(j)))[0]
        return [(k, v) for k, v in enumerate(row) if v]

    def multiply(self, x: Monomial, y: Monomial) -> Dict[Monomial, object]:
        (b, w), (c, u) = x, y
        if self.kind == "free" or not w:
            return {(k, w + u): v for k, v in self._basis_product(b, c)}
        return {(b, w[:-1] + (k,) + u): v for k, v in self._basis_product(w[-1], c)}

    def _letter(self, q: int) -> Matrix:
        a, f = self.algebra, self.algebra.field
        if self.kind == "free":
            return la.kron(la.unit_rows(f, [q], self.rank), a.unit)
        return la.kron(a.unit, a.basis_element(q))

    def element(self, tower: TensorTower, monomial: Monomial) -> Matrix:
        """Tower coordinates of a monomial."""
        b, w = monomial
        x = self.algebra.basis_element(b)
        for k, q in enumerate(w):
            x = tower.multiply(k, x, 1, self._letter(q))
        return x


@dataclass
class MonomialMap:
    """``gen_i -> sum_j gen_j x_ji`` with each ``x_ji`` a homogeneous polynomial of degree ``d_i - d_j``."""

    model: MonomialModel
    source_degrees: Tuple[int, ...]
    target_degrees: Tuple[int, ...]
    entries: Dict[Tuple[int, int], Polynomial]

    def graded_map(self, tower: TensorTower) -> GradedMap:
        f = tower.algebra.field
        entries = {}
        for (j, i), poly in self.entries.items():
            power = self.source_degrees[i] - self.target_degrees[j]
            mons = list(poly)
            vectors = [self.model.element(tower, mono) for mono in mons]
            coeffs = [f.scalar(poly[mono]) for mono in mons]
            entries[(j, i)] = la.linear_combination(f, coeffs, vectors, (1, tower.component(power).dim))
        return GradedMap(GradedFreeModule(tower, self.source_degrees), GradedFreeModule(tower, self.target_degrees), entries)

    def _basis(self, degrees: Tuple[int, ...], s: int) -> Dict[Tuple[int, Monomial], int]:
        keys = [(g, mono) for g, d in enumerate(degrees) if d <= s for mono in self.model.monomials(s - d)]
        return {key: index for index, key in enumerate(keys)}

    def slice_matrix(self, s: int) -> Matrix:
        f = self.model.algebra.field
        rows, cols = self._basis(self.source_degrees, s), self._basis(self.target_degrees, s)
        data: Dict[int, Dict[int, object]] = {}
        for (i, mono), r in rows.items():
            target = data.setdefault(r, {})
            for (j, src), poly in self.entries.items():
                if src != i:
                    continue
                for x, c in poly.items():
                    for product, v in self.model.multiply(x, mono).items():
                        col = cols[(j, product)]
                        target[col] = target.get(col, f.domain.zero) + f.scalar(c) * v
        return la.from_dict(f, data, (len(rows), len(cols)))

    def kernel_dims(self, cap: int) -> Dict[int, int]:
        low = min(self.source_degrees + self.target_degrees, default=0)
        out = {}
        for s in range(low, cap + 1):
            m = self.slice_matrix(s)
            out[s] = m.shape[0] - la.rank(m)
        logger.debug("monomial kernel dims %s", out)
        return out


def random_monomial_map(
    model: MonomialModel,
    rng: random.Random,
    *,
    max_generator_degree: int = 3,
    coefficient_range: int = 2,
    max_rank: int = 2,
) -> MonomialMap:
    target = tuple(sorted(rng.randint(0, max_generator_degree) for _ in range(rng.randint(1, max_rank))))
    source = tuple(sorted(rng.randint(0, max_generator_degree) for _ in range(rng.randint(1, max_rank))))
    entries: Dict[Tuple[int, int], Polynomial] = {}
    for i, di in enumerate(source):
        for j, dj in enumerate(target):
            if di < dj:
                continue
            poly = {mono: rng.randint(-coefficient_range, coefficient_range) for mono in model.monomials(di - dj)}
            poly = {mono: c for mono, c in poly.items() if c}
            if poly:
                entries[(j, i)] = poly
    return MonomialMap(model, source, target, entries)
