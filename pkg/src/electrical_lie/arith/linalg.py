"""Exact linear algebra over Q and over polynomial rings.

Polynomial matrices are handled by fraction-free (Bareiss) elimination:
every intermediate entry is a minor of the input, so each division is
exact and no rational-function type is ever needed.  Rational matrices
use ordinary Gaussian elimination over :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .poly import Poly, coeff_is_zero


class NonGenericSpecialization(RuntimeError):
    """Independent random specializations disagreed on a rank."""


@dataclass
class Echelon:
    rank: int
    pivots: list[tuple[int, int]]  # (row, column) of each pivot
    matrix: list[list]  # fraction-free reduced echelon form
    scale: object = 1  # common pivot value of the reduced form


def _check_rect(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for r in m:
        if len(r) != cols:
            raise ValueError("matrix rows have unequal lengths")
    return rows, cols


def ff_echelon(m: Sequence[Sequence]) -> Echelon:
    """Fraction-free Gauss-Jordan elimination.

    On return every pivot entry equals ``scale`` (the determinant of the
    pivot minor) and every other entry of a pivot column is zero.
    """
    rows, cols = _check_rect(m)
    a = [list(r) for r in m]
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not coeff_is_zero(a[i][c])), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        pivot_row = a[r]
        for i in range(rows):
            if i == r:
                continue
            row = a[i]
            factor = row[c]
            if coeff_is_zero(factor):
                new = [piv * x for x in row]
            else:
                new = [piv * x - factor * y for x, y in zip(row, pivot_row)]
            a[i] = [x / prev for x in new] if prev != 1 else new
        pivots.append((r, c))
        prev = piv
        r += 1
    return Echelon(rank=r, pivots=pivots, matrix=a, scale=prev)


def ff_rank(m: Sequence[Sequence]) -> tuple[int, list[int]]:
    """Rank over the fraction field and the pivot columns."""
    if not m:
        return 0, []
    ech = ff_echelon(m)
    return ech.rank, [c for _, c in ech.pivots]


def ff_kernel(m: Sequence[Sequence]) -> list[list]:
    """Kernel basis with denominator-free entries.

    For each non-pivot column ``f`` the vector has ``scale`` at ``f``
    and ``-M[r][f]`` at the pivot column of row ``r``.
    """
    if not m:
        return []
    rows, cols = _check_rect(m)
    ech = ff_echelon(m)
    pivot_cols = {c: r for r, c in ech.pivots}
    zero = _zero_like(m)
    basis = []
    for f in range(cols):
        if f in pivot_cols:
            continue
        v = [zero] * cols
        v[f] = ech.scale if ech.rank else _one_like(m)
        for c, r in pivot_cols.items():
            v[c] = -ech.matrix[r][f]
        basis.append(v)
    return basis


def _zero_like(m):
    for row in m:
        for x in row:
            if isinstance(x, Poly):
                return x.ring.zero()
    return Fraction(0)


def _one_like(m):
    for row in m:
        for x in row:
            if isinstance(x, Poly):
                return x.ring.one()
    return Fraction(1)


def mat_vec(m: Sequence[Sequence], v: Sequence):
    return [sum((a * b for a, b in zip(row, v)), _zero_like([v])) for row in m]


# ---------------------------------------------------------------------------
# rational matrices


def rank_rational(m: Sequence[Sequence]) -> int:
    span = EchelonSpan()
    for row in m:
        span.add({k: Fraction(x) for k, x in enumerate(row) if x})
    return span.dim


def evaluate_matrix(m: Sequence[Sequence], assignment: Mapping[str, Fraction]) -> list[list[Fraction]]:
    out = []
    for row in m:
        out.append([x.evaluate(assignment) if isinstance(x, Poly) else Fraction(x) for x in row])
    return out


def random_assignment(names: Iterable[str], rng: random.Random, bound: int = 10**4) -> dict[str, Fraction]:
    return {n: Fraction(rng.randint(-bound, bound)) for n in names}


def generic_rank(
    m: Sequence[Sequence[Poly]],
    rng: random.Random,
    trials: int = 3,
    bound: int = 10**4,
) -> tuple[int, list[dict]]:
    """Rank at ``trials`` independent integer specializations.

    All trials must agree; otherwise :class:`NonGenericSpecialization`
    is raised with every observed rank.
    """
    names = sorted({n for row in m for x in row if isinstance(x, Poly) for n in x.variables()})
    ranks = []
    points = []
    for _ in range(trials):
        pt = random_assignment(names, rng, bound)
        points.append(pt)
        ranks.append(rank_rational(evaluate_matrix(m, pt)))
    if len(set(ranks)) != 1:
        raise NonGenericSpecialization(f"ranks {ranks} at points {points}")
    return ranks[0], points


# ---------------------------------------------------------------------------
# incremental spans of sparse rational vectors


@dataclass
class EchelonSpan:
    """Row-echelon basis of a growing subspace of a sparse vector space.

    Vectors are ``{key: Fraction}`` dicts.  Each stored row is monic at
    its pivot key and the pivot key is absent from every other row.
    """

    rows: list[tuple[Hashable, dict]] = field(default_factory=list)
    pivot_index: dict = field(default_factory=dict)
    key_order: dict | None = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _pick_pivot(self, vec: dict):
        if self.key_order is None:
            return next(iter(vec))
        return min(vec, key=self.key_order.__getitem__)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        if not v:
            return v
        for piv, row in self.rows:
            c = v.get(piv)
            if c:
                for k, x in row.items():
                    s = v.get(k, 0) - c * x
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns False when it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = self._pick_pivot(v)
        inv = 1 / v[piv]
        v = {k: c * inv for k, c in v.items()}
        # keep the basis fully reduced at pivots
        for idx, (p, row) in enumerate(self.rows):
            c = row.get(piv)
            if c:
                for k, x in v.items():
                    s = row.get(k, 0) - c * x
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self.rows.append((piv, v))
        self.pivot_index[piv] = len(self.rows) - 1
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list:
        return [p for p, _ in self.rows]
