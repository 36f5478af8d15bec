"""Height-truncated Kac-Moody algebras presented by Chevalley-Serre relations.

The positive part is the free Lie algebra on ``e_i`` modulo the ideal
generated by ``(ad e_i)^(1-a_ij)(e_j)``, computed one multidegree at a
time in the Lyndon basis.  For symmetrizable matrices (every family the
package ships) this is the nilpotent part of ``g_A``; for a
non-symmetrizable matrix it is the Serre-presented algebra, which may be
larger.  The negative part is the same quotient in the letters ``f_i``.

Convention: ``[h_i, e_j] = a_ij e_j``.

Basis keys are ``(root, index)`` where ``root`` is a signed tuple of
simple-root multiplicities.  Cartan keys use the zero root:
``(0...0, i)`` stands for ``h_i``.

Mixed brackets reduce by two rules:

* ``[f_j, P_w(e)]`` is the derivation ``D_j`` with ``D_j(e_i) = -delta_ij h_i``,
  pushed through the standard factorization of ``w``;
* ``[e_j, P_w(f)]`` is its image under ``e <-> f, h -> -h``;

and larger positive factors are split with the Jacobi identity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from ..arith.linalg import EchelonSpan
from ..cartan import GCM
from ..lie import BudgetExceeded, LieModel, SparseElement
from .lyndon import assoc_commutator, expand, lyndon_words, standard_factorization, to_lyndon

DEFAULT_MAX_FREE_DIM = int(os.environ.get("ELECTRICAL_LIE_MAX_FREE_DIM", "20000"))


class HeightBudgetError(BudgetExceeded):
    def __init__(self, root, budget):
        self.root = root
        self.budget = budget
        super().__init__(f"root {root} (height {sum(abs(x) for x in root)}) exceeds height budget H={budget}")


class ScaleLimitExceeded(BudgetExceeded):
    pass


@dataclass
class RootSpace:
    content: tuple
    words: list  # every Lyndon word of this content
    ideal: EchelonSpan  # Serre ideal component, in Lyndon coordinates
    basis: list = field(default_factory=list)  # words spanning the quotient
    index: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)


class KMElement(SparseElement):
    __slots__ = ()


def _height(root) -> int:
    return sum(root)


class KMModel(LieModel):
    kind = "km"
    element_class = KMElement

    def __init__(self, gcm: GCM, max_height: int, max_free_dim: int | None = None):
        super().__init__(gcm)
        if max_height < 1:
            raise ValueError("height budget must be at least 1")
        self.H = max_height
        self.r = gcm.rank
        self.A = gcm.entries
        self.max_free_dim = max_free_dim or DEFAULT_MAX_FREE_DIM
        self.zero_root = (0,) * self.r
        self.spaces: dict[tuple, RootSpace] = {}
        # once a whole height layer vanishes, every higher one does too
        self.top_height: int | None = None
        self._pp: dict = {}
        self._pn: dict = {}
        self._der: dict = {}
        self._build()

    # -- construction -----------------------------------------------------

    def _unit(self, i: int) -> tuple:
        return tuple(1 if k == i else 0 for k in range(self.r))

    def _build(self) -> None:
        layer = []
        for i in range(self.r):
            c = self._unit(i)
            sp = RootSpace(c, [(i,)], EchelonSpan(), [(i,)], {(i,): 0})
            self.spaces[c] = sp
            layer.append(c)
        for h in range(2, self.H + 1):
            cands = sorted(
                {tuple(x + (k == i) for k, x in enumerate(c)) for c in layer if self.spaces[c].dim for i in range(self.r)}
            )
            layer = []
            for c in cands:
                self.spaces[c] = self._root_space(c)
                layer.append(c)
            if not any(self.spaces[c].dim for c in layer):
                self.top_height = h - 1
                break

    def _serre_vectors(self, content: tuple):
        for i in range(self.r):
            for j in range(self.r):
                if i == j:
                    continue
                m = 1 - self.A[i][j]
                if content[i] == m and content[j] == 1 and sum(content) == m + 1:
                    x = {(j,): 1}
                    for _ in range(m):
                        x = assoc_commutator({(i,): 1}, x)
                    yield to_lyndon(x)

    def _root_space(self, content: tuple) -> RootSpace:
        words = lyndon_words(content)
        if len(words) > self.max_free_dim:
            raise ScaleLimitExceeded(
                f"free Lie dimension {len(words)} at {content} exceeds the bound {self.max_free_dim}"
            )
        order = {w: -k for k, w in enumerate(words)}  # pivots on the largest words
        ideal = EchelonSpan(key_order=order)
        for k in range(self.r):
            if not content[k]:
                continue
            beta = tuple(x - (i == k) for i, x in enumerate(content))
            if not any(beta):
                continue
            sp = self.spaces.get(beta)
            if sp is None:
                gens = [{w: 1} for w in lyndon_words(beta)]
            else:
                gens = [row for _, row in sp.ideal.rows]
            for vec in gens:
                assoc: dict = {}
                for w, c in vec.items():
                    for x, d in assoc_commutator({(k,): 1}, expand(w)).items():
                        assoc[x] = assoc.get(x, 0) + c * d
                ideal.add(to_lyndon({x: c for x, c in assoc.items() if c}))
                if ideal.dim == len(words):
                    break
        for vec in self._serre_vectors(content):
            ideal.add(vec)
        pivots = set(ideal.pivots())
        basis = [w for w in words if w not in pivots]
        return RootSpace(content, words, ideal, basis, {w: k for k, w in enumerate(basis)})

    # -- queries ----------------------------------------------------------

    def _check_height(self, root) -> None:
        ht = sum(abs(x) for x in root)
        if ht > self.H and self.top_height is None:
            raise HeightBudgetError(tuple(root), self.H)

    def root_space_dim(self, root) -> int:
        root = tuple(root)
        if len(root) != self.r:
            raise ValueError(f"root must have {self.r} entries")
        if not any(root):
            return self.r
        if all(x >= 0 for x in root):
            c = root
        elif all(x <= 0 for x in root):
            c = tuple(-x for x in root)
        else:
            return 0
        self._check_height(c)
        sp = self.spaces.get(c)
        return sp.dim if sp else 0

    def positive_roots(self, max_height: int | None = None) -> dict:
        """``{root: multiplicity}`` for all computed roots up to ``max_height``."""
        lim = self.H if max_height is None else max_height
        return {c: sp.dim for c, sp in sorted(self.spaces.items()) if sp.dim and sum(c) <= lim}

    def basis_words(self, root) -> list:
        sp = self.spaces.get(tuple(abs(x) for x in root))
        return list(sp.basis) if sp else []

    # -- generators -------------------------------------------------------

    def _pos_of(self, i) -> int:
        return self.gcm.pos(i)

    def e(self, i):
        return self.element({(self._unit(self._pos_of(i)), 0): Fraction(1)})

    def f(self, i):
        u = tuple(-x for x in self._unit(self._pos_of(i)))
        return self.element({(u, 0): Fraction(1)})

    def h(self, i):
        return self.element({(self.zero_root, self._pos_of(i)): Fraction(1)})

    def e_word(self, labels):
        """Image of the standard bracketing of a Lyndon word in ``e``'s."""
        w = tuple(self._pos_of(x) for x in labels)
        return self.element(self._lyndon_element(w))

    def f_word(self, labels):
        return self.element(self._flip(self._lyndon_element(tuple(self._pos_of(x) for x in labels))))

    # -- reduction --------------------------------------------------------

    def _reduce(self, content: tuple, lyn: dict) -> dict:
        """Quotient coordinates ``{(content, idx): Fraction}`` of a Lyndon vector."""
        if sum(content) > self.H:
            if self.top_height is not None:
                return {}
            raise HeightBudgetError(content, self.H)
        sp = self.spaces.get(content)
        if sp is None or not sp.dim:
            return {}
        rest = sp.ideal.reduce(lyn)
        return {(content, sp.index[w]): c for w, c in rest.items()}

    def _lyndon_element(self, w: tuple) -> dict:
        c = [0] * self.r
        for x in w:
            c[x] += 1
        return self._reduce(tuple(c), {w: Fraction(1)})

    @staticmethod
    def _flip(terms: dict) -> dict:
        """``e <-> f, h -> -h`` on a terms dict."""
        out = {}
        for (root, idx), c in terms.items():
            if any(root):
                out[(tuple(-x for x in root), idx)] = c
            else:
                out[(root, idx)] = -c
        return out

    # -- structure constants ----------------------------------------------

    def _pos_pos(self, a: tuple, p: int, b: tuple, q: int) -> dict:
        key = (a, p, b, q)
        hit = self._pp.get(key)
        if hit is not None:
            return hit
        g = tuple(x + y for x, y in zip(a, b))
        if sum(g) > self.H:
            self._check_height(g)
            res = {}
        elif g not in self.spaces or not self.spaces[g].dim:
            res = {}
        else:
            wp = self.spaces[a].basis[p]
            wq = self.spaces[b].basis[q]
            comm = assoc_commutator(expand(wp), expand(wq))
            res = self._reduce(g, {w: Fraction(c) for w, c in to_lyndon(comm).items()})
        self._pp[key] = res
        self._pp[(b, q, a, p)] = {k: -v for k, v in res.items()}
        return res

    def _derive(self, j: int, w: tuple) -> dict:
        """``[f_j, P_w(e)]`` in reduced coordinates, for any Lyndon word ``w``."""
        key = (j, w)
        hit = self._der.get(key)
        if hit is not None:
            return hit
        if j not in w:
            res = {}
        elif len(w) == 1:
            res = {(self.zero_root, j): Fraction(-1)}
        else:
            u, v = standard_factorization(w)
            res = _lin_add(
                self._bracket_terms(self._derive(j, u), self._lyndon_element(v)),
                self._bracket_terms(self._lyndon_element(u), self._derive(j, v)),
            )
        self._der[key] = res
        return res

    def _pos_neg(self, a: tuple, p: int, b: tuple, q: int) -> dict:
        """``[x, y]`` for ``x`` basis vector ``p`` at ``a`` and ``y`` basis vector ``q`` at ``-b``."""
        key = (a, p, b, q)
        hit = self._pn.get(key)
        if hit is not None:
            return hit
        wp = self.spaces[a].basis[p]
        wq = self.spaces[b].basis[q]
        if len(wp) == 1:
            res = self._flip(self._derive(wp[0], wq))
        elif len(wq) == 1:
            res = {k: -c for k, c in self._derive(wq[0], wp).items()}
        else:
            u, v = standard_factorization(wp)
            xu = self._lyndon_element(u)
            xv = self._lyndon_element(v)
            y = {(tuple(-x for x in b), q): Fraction(1)}
            res = _lin_add(
                self._bracket_terms(xu, self._bracket_terms(xv, y)),
                {k: -c for k, c in self._bracket_terms(xv, self._bracket_terms(xu, y)).items()},
            )
        self._pn[key] = res
        return res

    def _basis_bracket(self, k1, k2) -> dict:
        r1, i1 = k1
        r2, i2 = k2
        s1 = _sign(r1)
        s2 = _sign(r2)
        if s1 == 0 and s2 == 0:
            return {}
        if s1 == 0:
            c = sum(r2[k] * self.A[i1][k] for k in range(self.r))
            return {k2: Fraction(c)} if c else {}
        if s2 == 0:
            c = sum(r1[k] * self.A[i2][k] for k in range(self.r))
            return {k1: Fraction(-c)} if c else {}
        if s1 > 0 and s2 > 0:
            return self._pos_pos(r1, i1, r2, i2)
        if s1 < 0 and s2 < 0:
            a = tuple(-x for x in r1)
            b = tuple(-x for x in r2)
            g = tuple(x + y for x, y in zip(a, b))
            if sum(g) > self.H:
                self._check_height(tuple(-x for x in g))
            return {(tuple(-x for x in root), idx): c for (root, idx), c in self._pos_pos(a, i1, b, i2).items()}
        if s1 > 0:
            return self._pos_neg(r1, i1, tuple(-x for x in r2), i2)
        return {k: -c for k, c in self._pos_neg(r2, i2, tuple(-x for x in r1), i1).items()}

    def _bracket_terms(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                tab = self._basis_bracket(k1, k2)
                if not tab:
                    continue
                c = c1 * c2
                for k, t in tab.items():
                    s = out.get(k, 0) + c * t
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def bracket(self, x, y):
        if x.model is not self or y.model is not self:
            raise TypeError("elements belong to different models")
        return self.element(_bracket_poly(self, x.terms, y.terms))

    # -- presentation helpers ---------------------------------------------

    def key_sort(self, key):
        root, idx = key
        return (sum(root), root, idx)

    def describe_key(self, key) -> str:
        root, idx = key
        lab = self.gcm.labels
        if not any(root):
            return f"h{lab[idx]}"
        c = tuple(abs(x) for x in root)
        w = self.spaces[c].basis[idx]
        name = "e" if sum(root) > 0 else "f"
        return f"{name}[{','.join(str(lab[x]) for x in w)}]@{root}"

    def positive_part(self, x):
        return self.element({k: v for k, v in x.terms.items() if sum(k[0]) > 0})

    def component(self, x, root):
        root = tuple(root)
        return self.element({k: v for k, v in x.terms.items() if k[0] == root})

    def degree_support(self, x) -> set:
        return {k[0] for k in x.terms}


def _sign(root) -> int:
    for x in root:
        if x:
            return 1 if x > 0 else -1
    return 0


def _lin_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _bracket_poly(model: KMModel, x: dict, y: dict) -> dict:
    """Bracket with arbitrary (e.g. polynomial) coefficients."""
    from ..arith.poly import coeff_is_zero

    out: dict = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            tab = model._basis_bracket(k1, k2)
            if not tab:
                continue
            c = c1 * c2
            for k, t in tab.items():
                v = c * t
                cur = out.get(k)
                s = v if cur is None else cur + v
                if coeff_is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
    return out
