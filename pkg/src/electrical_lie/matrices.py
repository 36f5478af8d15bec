"""Matrix realizations: classical Chevalley generators and the affine loop model.

Classical conventions (all ``e_i`` upper triangular, indices 1-based):

* ``sl_n`` (type A_{n-1}): ``e_i = E_{i,i+1}``.
* ``sp_{2n}`` (C_n): invariant form ``J_{k,2n+1-k} = (-1)^(k+1)``;
  ``e_i = E_{i,i+1} + E_{2n-i,2n+1-i}`` for ``i < n`` and ``e_n = E_{n,n+1}``.
* ``so_{2n+1}`` (B_n, short root ``n``): form ``J_{k,2n+2-k} = (-1)^k``;
  ``e_i = E_{i,i+1} + E_{2n+1-i,2n+2-i}``, ``e_n = E_{n,n+1} + E_{n+1,n+2}``.
* ``so_{2n}`` (D_n): form ``J_{k,2n+1-k} = 1``; ``e_i = E_{i,i+1} - E_{2n-i,2n+1-i}`` for ``i < n`` and
  ``e_n = E_{n-1,n+1} - E_{n,n+2}``.

Each ``f_i`` is the transpose of ``e_i`` scaled so that ``[[e_i, f_i], e_i] = 2 e_i``,
and ``h_i = [e_i, f_i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith.poly import Poly, coeff_is_zero
from .cartan import GCM, builtin_gcm
from .lie import LieModel, SparseElement, _add_into


class ShapeMismatch(ValueError):
    pass


class PolyMatrix(SparseElement):
    """Square matrix stored as ``{(row, col): coefficient}``, 0-based."""

    __slots__ = ()

    @property
    def n(self) -> int:
        return self.model.n

    def entry(self, r: int, c: int):
        return self.terms.get((r, c), 0)

    def rows(self) -> list[list]:
        return [[self.terms.get((r, c), 0) for c in range(self.n)] for r in range(self.n)]

    def transpose(self) -> "PolyMatrix":
        return self._like({(c, r): v for (r, c), v in self.terms.items()})

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        by_row: dict = {}
        for (k, c), v in other.terms.items():
            by_row.setdefault(k, []).append((c, v))
        out: dict = {}
        for (r, k), u in self.terms.items():
            for c, v in by_row.get(k, ()):
                _add_into(out, (r, c), u * v)
        return self._like(out)

    def trace(self):
        t = 0
        for (r, c), v in self.terms.items():
            if r == c:
                t = t + v
        return t

    def apply(self, v: Sequence):
        return std_rep_action(self, v)


class MatrixAlgebra(LieModel):
    """``gl_n`` with commutator bracket, optionally carrying a Chevalley set."""

    kind = "matrix"
    element_class = PolyMatrix

    def __init__(self, n: int, gcm: GCM | None = None, form=None):
        super().__init__(gcm)
        self.n = n
        self.form = form  # Gram matrix of the invariant form, or None
        self._e: dict = {}
        self._f: dict = {}

    def matrix(self, rows: Sequence[Sequence]) -> PolyMatrix:
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ShapeMismatch(f"expected a {self.n}x{self.n} matrix")
        return PolyMatrix.from_pairs(self, (((r, c), x) for r, row in enumerate(rows) for c, x in enumerate(row)))

    def unit(self, r: int, c: int, coeff=Fraction(1)) -> PolyMatrix:
        """``E_{r,c}`` with 1-based indices."""
        return self.element({(r - 1, c - 1): coeff})

    def identity(self) -> PolyMatrix:
        return self.element({(k, k): Fraction(1) for k in range(self.n)})

    def e(self, i):
        return self._e[i]

    def f(self, i):
        return self._f[i]

    def bracket(self, x, y):
        return (x @ y) - (y @ x)

    def key_sort(self, key):
        return key

    def describe_key(self, key) -> str:
        return f"entry({key[0] + 1},{key[1] + 1})"

    def positive_part(self, x):
        return self.element({k: v for k, v in x.terms.items() if k[0] < k[1]})

    def preserves_form(self, x) -> bool:
        j = self.form
        return (x.transpose() @ j + j @ x).is_zero()


def std_rep_action(x: PolyMatrix, v: Sequence) -> list:
    """Matrix-vector product on the basis ``v_1..v_n`` of the defining module."""
    if len(v) != x.n:
        raise ShapeMismatch(f"vector of length {len(v)} for a {x.n}x{x.n} matrix")
    out = [0] * x.n
    for (r, c), a in x.terms.items():
        if not coeff_is_zero(v[c]):
            out[r] = out[r] + a * v[c]
    return out


@dataclass
class ChevalleySet:
    gcm: GCM
    model: LieModel
    e: dict
    f: dict
    h: dict

    def invariant_failures(self) -> list[str]:
        """Names of the defining relations that fail (empty when all hold)."""
        m = self.model
        bad = []
        for i in self.gcm.labels:
            for j in self.gcm.labels:
                a = self.gcm.a(i, j)
                if m.bracket(self.e[i], self.f[j]) != (self.h[i] if i == j else m.zero()):
                    bad.append(f"[e{i},f{j}]")
                if m.bracket(self.h[i], self.e[j]) != self.e[j] * a:
                    bad.append(f"[h{i},e{j}]")
                if m.bracket(self.h[i], self.f[j]) != self.f[j] * (-a):
                    bad.append(f"[h{i},f{j}]")
                if not m.bracket(self.h[i], self.h[j]).is_zero():
                    bad.append(f"[h{i},h{j}]")
                if i != j:
                    if not m.ad_pow(self.e[i], 1 - a, self.e[j]).is_zero():
                        bad.append(f"serre(e{i},e{j})")
                    if not m.ad_pow(self.f[i], 1 - a, self.f[j]).is_zero():
                        bad.append(f"serre(f{i},f{j})")
        return bad


def _antidiag(n: int, signs: Sequence[int]) -> list[list[Fraction]]:
    j = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        j[k][n - 1 - k] = Fraction(signs[k])
    return j


def _e_positions(family: str, rank: int) -> tuple[int, list, list[list[tuple[int, int, int]]]]:
    """Matrix size, form signs and ``(row, col, sign)`` entries of each ``e_i``."""
    n = rank
    if family == "A":
        return n + 1, None, [[(i, i + 1, 1)] for i in range(1, n + 1)]
    if family == "C":
        N = 2 * n
        es = [[(i, i + 1, 1), (N - i, N + 1 - i, 1)] for i in range(1, n)]
        es.append([(n, n + 1, 1)])
        return N, [(-1) ** (k + 1) for k in range(1, N + 1)], es
    if family == "B":
        N = 2 * n + 1
        es = [[(i, i + 1, 1), (N - i, N + 1 - i, 1)] for i in range(1, n)]
        es.append([(n, n + 1, 1), (n + 1, n + 2, 1)])
        return N, [(-1) ** k for k in range(1, N + 1)], es
    if family == "D":
        N = 2 * n
        es = [[(i, i + 1, 1), (N - i, N + 1 - i, -1)] for i in range(1, n)]
        es.append([(n - 1, n + 1, 1), (n, n + 2, -1)])
        return N, [1] * N, es
    raise ValueError(f"no matrix model for family {family!r}")


def chevalley(family: str, rank: int) -> ChevalleySet:
    fam = family.upper()
    if fam not in ("A", "B", "C", "D"):
        raise ValueError(f"no matrix model for family {family!r}")
    if rank < (3 if fam == "D" else 2 if fam in ("B", "C") else 1):
        raise ValueError(f"rank {rank} is invalid for family {fam}")
    gcm = builtin_gcm(fam, rank)
    size, signs, epos = _e_positions(fam, rank)
    model = MatrixAlgebra(size, gcm)
    if signs is not None:
        model.form = model.matrix(_antidiag(size, signs))
    es, fs, hs = {}, {}, {}
    for lab, entries in zip(gcm.labels, epos):
        e = model.element({(r - 1, c - 1): Fraction(s) for r, c, s in entries})
        f0 = e.transpose()
        lam = _eigen(model, model.bracket(e, f0), e)
        f = f0 * Fraction(2, 1) / lam
        es[lab], fs[lab] = e, f
        hs[lab] = model.bracket(e, f)
    model._e, model._f = es, fs
    return ChevalleySet(gcm, model, es, fs, hs)


def _eigen(model, h, e) -> Fraction:
    """The scalar ``c`` with ``[h, e] = c e``."""
    he = model.bracket(h, e)
    k, v = next(iter(e.terms.items()))
    c = Fraction(he.terms.get(k, 0)) / Fraction(v)
    if he != e * c:
        raise AssertionError("e is not an eigenvector of ad h")
    return c


def sl_model(n: int) -> ChevalleySet:
    """Chevalley set of ``sl_n`` (type A_{n-1})."""
    return chevalley("A", n - 1)


# ---------------------------------------------------------------------------
# loop model of untwisted affine sl_n


class LoopElement(SparseElement):
    """``sum_m x_m t^m + lambda c``; keys ``(m, row, col)`` and ``("c",)``."""

    __slots__ = ()

    @property
    def central(self):
        return self.terms.get(CENTRAL, 0)

    def degrees(self) -> set:
        return {k[0] for k in self.terms if k != CENTRAL}


CENTRAL = ("c",)


class LoopAlgebra(LieModel):
    kind = "loop"
    element_class = LoopElement

    def __init__(self, n: int, gcm: GCM | None = None):
        super().__init__(gcm)
        self.n = n
        self._e: dict = {}
        self._f: dict = {}

    def term(self, m: int, r: int, c: int, coeff=Fraction(1)) -> LoopElement:
        """``E_{r,c} t^m`` with 1-based matrix indices."""
        return self.element({(m, r - 1, c - 1): coeff})

    def c(self, coeff=Fraction(1)) -> LoopElement:
        return self.element({CENTRAL: coeff})

    def e(self, i):
        return self._e[i]

    def f(self, i):
        return self._f[i]

    def bracket(self, x, y):
        by_row: dict = {}
        by_col: dict = {}
        for k, v in y.terms.items():
            if k != CENTRAL:
                by_row.setdefault(k[1], []).append((k[0], k[2], v))
                by_col.setdefault(k[2], []).append((k[0], k[1], v))
        out: dict = {}
        for k1, u in x.terms.items():
            if k1 == CENTRAL:
                continue
            m, r, s = k1
            for m2, c, v in by_row.get(s, ()):
                uv = u * v
                _add_into(out, (m + m2, r, c), uv)
                if m + m2 == 0 and c == r and m:
                    _add_into(out, CENTRAL, uv * m)  # m tr(xy) c
            for m2, r2, v in by_col.get(r, ()):
                _add_into(out, (m + m2, r2, s), -(u * v))
        return self.element(out)

    def key_sort(self, key):
        if key == CENTRAL:
            return (1, 0, 0, 0)
        return (0,) + key

    def describe_key(self, key) -> str:
        if key == CENTRAL:
            return "c"
        m, r, c = key
        return f"entry({r + 1},{c + 1})t^{m}"

    def positive_part(self, x):
        return self.element({k: v for k, v in x.terms.items() if k != CENTRAL and (k[0] > 0 or (k[0] == 0 and k[1] < k[2]))})


def affine_chevalley(n: int) -> ChevalleySet:
    """Untwisted affine ``sl_n``: ``e_0 = E_{n,1} t``, ``f_0 = E_{1,n} t^-1``."""
    if n < 2:
        raise ValueError("affine sl_n needs n >= 2")
    gcm = builtin_gcm("AFFINE_A", n)
    model = LoopAlgebra(n, gcm)
    es, fs = {}, {}
    for i in range(1, n):
        es[i] = model.term(0, i, i + 1)
        fs[i] = model.term(0, i + 1, i)
    es[0] = model.term(1, n, 1)
    fs[0] = model.term(-1, 1, n)
    model._e, model._f = es, fs
    hs = {i: model.bracket(es[i], fs[i]) for i in gcm.labels}
    return ChevalleySet(gcm, model, es, fs, hs)


def loop_to_matrix_rows(x: LoopElement, degree: int) -> list[list]:
    n = x.model.n
    return [[x.terms.get((degree, r, c), 0) for c in range(n)] for r in range(n)]

