"""Electrical generator families.

Vertex type: ``u_i = e_i + a_i h_i - a_i^2 f_i``.

Edge type: ``u_i = e_i + (lower terms in f)`` built per model kind.  Each
family records the Cartan matrix its deformed Serre relations are checked
against and the ``b_ij`` entering the rank-one correction term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..arith.poly import Poly, PolyRing
from ..cartan import GCM, ParamFamily, RootedTree, edge_key, graph_of, root_tree
from ..lie import LieModel


class MalformedKind(ValueError):
    pass


EDGE_KINDS = (
    "TYPE_A_ROOT",
    "B_CHAIN",
    "C_CHAIN",
    "RANK2",
    "D_BRANCH",
    "AFFINE_A",
    "CONICAL",
    "STAR",
    "PEACOCK",
    "MIN_CARTAN",
)


@dataclass
class GeneratorFamily:
    model: LieModel
    u: dict  # label -> element
    params: ParamFamily
    provenance: str
    gcm: GCM  # Cartan matrix of the relations the family should satisfy
    ring: PolyRing | None = None
    # b_ij of the correction term, keyed by frozenset edge
    relation_params: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    @property
    def labels(self):
        return self.gcm.labels

    def specialize(self, assignment) -> "GeneratorFamily":
        """Same family with every parameter replaced by an exact rational."""

        def ev(c):
            return c.evaluate(assignment) if isinstance(c, Poly) else Fraction(c)

        return GeneratorFamily(
            self.model,
            {i: x.specialize(assignment) for i, x in self.u.items()},
            ParamFamily(self.params.kind, {k: ev(v) for k, v in self.params.items()}),
            self.provenance,
            self.gcm,
            None,
            {k: ev(v) for k, v in self.relation_params.items()},
            dict(self.options),
        )

    def parameter_names(self) -> list[str]:
        return list(self.ring.names) if self.ring else []


# ---------------------------------------------------------------------------
# parameter helpers


def vertex_param_names(gcm: GCM) -> list[str]:
    return [f"a{i}" for i in gcm.labels]


def edge_name(gcm: GCM, i, j) -> str:
    """``b{i}`` for a chain edge ``(i, i+1)``, otherwise ``b{i}_{j}``."""
    if gcm.pos(i) > gcm.pos(j):
        i, j = j, i
    if isinstance(i, int) and isinstance(j, int) and j == i + 1:
        return f"b{i}"
    return f"b{i}_{j}"


def symbolic_vertex_params(gcm: GCM, ring: PolyRing | None = None) -> tuple[PolyRing, ParamFamily]:
    ring = ring or PolyRing(vertex_param_names(gcm))
    return ring, ParamFamily("vertex", {i: ring.gen(f"a{i}") for i in gcm.labels})


def symbolic_edge_params(gcm: GCM, edges, ring: PolyRing | None = None) -> tuple[PolyRing, ParamFamily]:
    names = [edge_name(gcm, i, j) for i, j in edges]
    ring = ring or PolyRing(names)
    return ring, ParamFamily("edge", {edge_key(i, j): ring.gen(n) for (i, j), n in zip(edges, names)})


def _b(params: ParamFamily, i, j):
    return params.get((i, j), 0)


# ---------------------------------------------------------------------------
# vertex type


def vertex_generators(model: LieModel, a: ParamFamily, ring: PolyRing | None = None) -> GeneratorFamily:
    gcm = model.gcm
    u = {}
    for i in gcm.labels:
        ai = a.get(i, 0)
        u[i] = model.e(i) + model.h(i) * ai - model.f(i) * (ai * ai)
    rel = {}
    for i in gcm.labels:
        for j in gcm.labels:
            if i != j and gcm.a(i, j) == -1:
                # b_ij = a_ji a_i a_j makes the vertex relation an edge relation
                rel[(i, j)] = a.get(i, 0) * a.get(j, 0) * gcm.a(j, i)
    fam = GeneratorFamily(model, u, a, "vertex", gcm, ring)
    fam.relation_params = rel
    return fam


# ---------------------------------------------------------------------------
# edge type


def _f_or_zero(model, i):
    return model.f(i) if i is not None else model.zero()


def edge_edges(kind: str, gcm: GCM, **opts) -> list[tuple]:
    """Edges carrying a ``b`` parameter for the given kind, in label order."""
    labels = gcm.labels
    if kind in ("TYPE_A_ROOT", "B_CHAIN", "C_CHAIN"):
        return [(labels[k], labels[k + 1]) for k in range(len(labels) - 1)]
    if kind == "RANK2":
        return [(labels[0], labels[1])]
    if kind == "D_BRANCH":
        n = gcm.rank
        chain = [(labels[k], labels[k + 1]) for k in range(n - 2)]
        return chain + [(labels[n - 3], labels[n - 1])]
    if kind == "AFFINE_A":
        n = gcm.rank
        return sorted(
            {tuple(sorted((labels[k], labels[(k - 1) % n]), key=gcm.pos)) for k in range(n)}, key=lambda e: (gcm.pos(e[0]), gcm.pos(e[1]))
        )
    if kind == "MIN_CARTAN":
        r = opts["r"]
        d = gcm.rank - r
        chain = [(labels[k], labels[k + 1]) for k in range(r - 1)]
        return chain + [(labels[r - 1], labels[r + t]) for t in range(d)]
    raise MalformedKind(f"kind {kind} takes vertex parameters")


def min_cartan_name(gcm: GCM, r: int, i, j) -> str:
    """``b_j`` for chain edge ``(j, j+1)``, ``b_i`` for fan edge ``(r, i)``."""
    pi, pj = sorted((gcm.pos(i), gcm.pos(j)))
    if pj - pi == 1 and pj < r:
        return f"b{gcm.labels[pi]}"
    return f"b{gcm.labels[pj]}"


def edge_generators(
    kind: str,
    model: LieModel,
    b: ParamFamily | None = None,
    ring: PolyRing | None = None,
    **opts,
) -> GeneratorFamily:
    """Edge-type family of the given kind.

    ``b`` is an edge ParamFamily for the chain-like kinds and a vertex
    ParamFamily (the ``a_i``) for ``CONICAL``, ``STAR`` and ``PEACOCK``.
    When ``b`` is omitted, symbolic parameters are created.
    """
    kind = kind.upper()
    if kind not in EDGE_KINDS:
        raise MalformedKind(f"unknown edge model kind {kind!r}")
    gcm = model.gcm
    if kind in ("CONICAL", "STAR", "PEACOCK"):
        if b is None:
            ring, b = symbolic_vertex_params(gcm, ring)
        return _tree_family(kind, model, b, ring, **opts)
    if b is None:
        edges = edge_edges(kind, gcm, **opts)
        if kind == "MIN_CARTAN":
            names = [min_cartan_name(gcm, opts["r"], i, j) for i, j in edges]
            ring = ring or PolyRing(names)
            b = ParamFamily("edge", {edge_key(i, j): ring.gen(n) for (i, j), n in zip(edges, names)})
        else:
            ring, b = symbolic_edge_params(gcm, edges, ring)
    builder = {
        "TYPE_A_ROOT": _type_a_root,
        "B_CHAIN": _b_chain,
        "C_CHAIN": _c_chain,
        "RANK2": _rank2,
        "D_BRANCH": _d_branch,
        "AFFINE_A": _affine_a,
        "MIN_CARTAN": _min_cartan,
    }[kind]
    u, rel_gcm, provenance = builder(model, b, **opts)
    rel = {}
    for p, q in edge_edges(kind, gcm, **opts):
        # the named parameter is b_pq; the opposite direction is rescaled
        # the way a_qp a_p a_q rescales to a_pq a_p a_q for vertex parameters
        val = b.get((p, q), 0)
        rel[(p, q)] = val
        apq, aqp = rel_gcm.a(p, q), rel_gcm.a(q, p)
        rel[(q, p)] = val * Fraction(apq, aqp) if aqp else val
    return GeneratorFamily(model, u, b, provenance, rel_gcm, ring, rel, dict(opts, kind=kind))


def _chain_labels(gcm: GCM) -> list:
    g = graph_of(gcm)
    labels = list(gcm.labels)
    for k in range(len(labels) - 1):
        if frozenset((labels[k], labels[k + 1])) not in g.edges:
            raise MalformedKind(f"{gcm.name or 'matrix'} is not a chain in label order")
    if len(g.edges) != len(labels) - 1:
        raise MalformedKind("chain kinds need a path-shaped diagram")
    return labels


def _type_a_root(model, b, k=1, root_sign=-1, **_):
    """Chain rooted at ``k``.

    ``root_sign`` is the sign of the cubic term in ``u_k``.  The relations
    hold with ``-1``; ``+1`` reproduces the displayed statement, which fails.
    """
    gcm = model.gcm
    L = _chain_labels(gcm)
    if k not in L:
        raise MalformedKind(f"root {k} is not a vertex")
    pk = L.index(k)
    u = {}
    for p, i in enumerate(L):
        if p < pk:
            lower = L[p - 1] if p > 0 else None
            u[i] = model.e(i) + (_f_or_zero(model, lower) * _b(b, lower, i) if lower is not None else model.zero())
        elif p > pk:
            upper = L[p + 1] if p + 1 < len(L) else None
            u[i] = model.e(i) + (model.f(upper) * _b(b, i, upper) if upper is not None else model.zero())
        else:
            x = model.e(i)
            lo = L[p - 1] if p > 0 else None
            hi = L[p + 1] if p + 1 < len(L) else None
            if lo is not None:
                x = x + model.f(lo) * _b(b, lo, i)
            if hi is not None:
                x = x + model.f(hi) * _b(b, i, hi)
            if lo is not None and hi is not None:
                cubic = model.bracket(model.f(lo), model.bracket(model.f(hi), model.f(i)))
                x = x + cubic * (_b(b, lo, i) * _b(b, i, hi) * root_sign)
            u[i] = x
    return u, gcm, f"TYPE_A_ROOT_{k}"


def _b_chain(model, b, **_):
    gcm = model.gcm
    L = _chain_labels(gcm)
    u = {}
    for p, i in enumerate(L):
        u[i] = model.e(i) + (model.f(L[p - 1]) * _b(b, L[p - 1], i) if p else model.zero())
    return u, gcm, "B_CHAIN"


def _c_chain(model, b, **_):
    gcm = model.gcm
    L = _chain_labels(gcm)
    u, _, _ = _b_chain(model, b)
    n, m = L[-1], L[-2]
    # squared coefficient is the same b_{n-1,n} as the linear term
    bn = _b(b, m, n)
    corr = model.bracket(model.f(m), model.bracket(model.f(m), model.f(n)))
    u[n] = u[n] - corr * (bn * bn * Fraction(1, 2))
    return u, gcm, "C_CHAIN"


def _rank2(model, b, **_):
    gcm = model.gcm
    if gcm.rank != 2:
        raise MalformedKind("RANK2 needs a rank-2 matrix")
    i, j = gcm.labels
    return {i: model.e(i), j: model.e(j) + model.f(i) * _b(b, i, j)}, gcm, "RANK2"


def _d_branch(model, b, **_):
    gcm = model.gcm
    n = gcm.rank
    L = gcm.labels
    if n < 3:
        raise MalformedKind("D_BRANCH needs rank >= 3")
    br = L[n - 3]
    for x in (L[n - 2], L[n - 1]):
        if gcm.a(br, x) != -1:
            raise MalformedKind("D_BRANCH needs the branch at the third-to-last label")
    u = {}
    for p, i in enumerate(L):
        if p <= n - 3:
            u[i] = model.e(i) + (model.f(L[p - 1]) * _b(b, L[p - 1], i) if p else model.zero())
        else:
            u[i] = model.e(i) + model.f(br) * _b(b, br, i)
    return u, gcm, "D_BRANCH"


def _affine_a(model, b, **_):
    gcm = model.gcm
    L = gcm.labels
    n = len(L)
    u = {}
    for p, i in enumerate(L):
        prev = L[(p - 1) % n]
        u[i] = model.e(i) + model.f(prev) * _b(b, prev, i)
    return u, gcm, "AFFINE_A"


def min_cartan_gcm(gcm: GCM, r: int) -> GCM:
    """Effective matrix ``A''`` of the chain-plus-fan model (``A'`` when no fan)."""
    n = gcm.rank
    A = gcm.entries
    out = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    # positions are 0-based; the chain is 0..r-1, the fan is r..n-1 attached to r-1
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i < r and j < r:
                if {i, j} == {0, 1}:
                    out[i][j] = A[i][j]
                elif i >= 1 and j >= 1:
                    out[i][j] = min(A[i - 1][j - 1], A[i][j])
                else:
                    out[i][j] = A[i][j]
            elif min(i, j) == r - 1:
                out[i][j] = min(A[i - 1][j - 1], A[i][j])
            else:
                out[i][j] = 0
    return GCM(gcm.labels, tuple(tuple(r_) for r_ in out), f"min({gcm.name})")


def _min_cartan(model, b, r=None, **_):
    gcm = model.gcm
    n = gcm.rank
    if r is None:
        r = n
    L = gcm.labels
    u = {}
    for p, i in enumerate(L):
        if p == 0:
            u[i] = model.e(i)
        elif p < r:
            u[i] = model.e(i) + model.f(L[p - 1]) * _b(b, L[p - 1], i)
        else:
            u[i] = model.e(i) + model.f(L[r - 1]) * _b(b, L[r - 1], i)
    return u, min_cartan_gcm(gcm, r), f"MIN_CARTAN(r={r})"


def min_cartan_hypotheses(gcm: GCM, r: int, injective: bool = False) -> list[str]:
    """Names of violated hypotheses for the min-rule construction (empty if all hold).

    Positions are 1-based in the messages; the chain is ``1..r`` and the
    fan ``r+1..r+d`` hangs off ``r``.
    """
    A = gcm.entries
    n = gcm.rank
    a = lambda i, j: A[i - 1][j - 1]  # noqa: E731
    bad = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            adjacent = (i <= r and j <= r and abs(i - j) == 1) or (min(i, j) == r and max(i, j) > r)
            if (a(i, j) * a(j, i) != 0) != adjacent:
                bad.append(f"shape: a_{i}{j}a_{j}{i} != 0 iff chain/fan edge")
    if r >= 2 and not ((a(1, 2) == a(2, 1) == -1) or a(2, 1) < -1):
        bad.append("bullet 1: a_12 = a_21 = -1 or a_21 < -1")
    for i in range(2, r):
        if injective:
            if not (a(i - 1, i) == a(i, i + 1) == a(i, i - 1) == -1 or (a(i, i + 1) < -1 and a(i, i + 1) <= a(i - 1, i))):
                bad.append(f"bullet 2 at i={i}")
            if not (a(i + 1, i) == a(i, i - 1) == a(i, i + 1) == -1 or (a(i + 1, i) < -1 and a(i + 1, i) <= a(i, i - 1))):
                bad.append(f"bullet 3 at i={i}")
        else:
            if not (a(i - 1, i) * a(i, i + 1) > 1 or a(i - 1, i) == a(i, i + 1) == a(i, i - 1) == -1):
                bad.append(f"bullet 2 at i={i}")
            if not (a(i, i - 1) * a(i + 1, i) > 1 or a(i + 1, i) == a(i, i - 1) == a(i, i + 1) == -1):
                bad.append(f"bullet 3 at i={i}")
    if injective:
        for i in range(2, n + 1):
            for j in range(2, n + 1):
                if i != j and min(i, j) == r and a(i, j) > a(i - 1, j - 1):
                    bad.append(f"bullet 4 at ({i},{j})")
    for s in range(r + 1, n + 1):
        for t in range(r + 1, n + 1):
            if s != t and a(s, t) != 0:
                bad.append(f"fan vertices {s},{t} adjacent")
    return bad


# ---------------------------------------------------------------------------
# tree-shaped vertex conjugations


def tree_conjugator(tree: RootedTree, a: ParamFamily, model) -> list:
    """Factors of ``g_a = e^{a_0 f_0} prod_{i != 0} e^{a_i f_i}`` (decreasing product)."""
    factors = [(a[tree.root], model.f(tree.root))]
    for v in tree.order[1:]:
        factors.append((a[v], model.f(v)))
    return factors


def bold_f(tree: RootedTree, a: ParamFamily, model, exclude=()):
    """``sum a_j f_j`` over the children ``j`` of the root not in ``exclude``."""
    out = model.zero()
    for j in tree.children[tree.root]:
        if j not in exclude:
            out = out + model.f(j) * a[j]
    return out


def conical_root_image(model, tree: RootedTree, a: ParamFamily, variant: str = "derived", f0=None, bf=None, max_terms: int = 64):
    """Closed form of ``Ad(g_a)(u_0)`` for a conical tree.

    ``variant="derived"`` uses ``(ad f_hat)^(k-2)`` in the tail series, which
    is what the conjugation actually produces; ``"printed"`` uses the
    exponent ``k-1`` as displayed in the source statement; ``"star"``
    uses the overall signs of the star corollary as displayed.
    """
    r = tree.root
    a0 = a[r]
    f0 = model.f(r) if f0 is None else f0
    bf = bold_f(tree, a, model) if bf is None else bf
    fhat = bf + model.bracket(f0, bf) * a0
    seed = model.bracket(bf, model.bracket(bf, f0))
    out = model.e(r) - bf * a0 - seed * (a0 * a0 * Fraction(1, 2))
    tail = model.zero()
    # derived: (ad fhat)^(k-2) applied to the seed; displayed forms use k-1
    term = seed if variant == "derived" else model.bracket(fhat, seed)
    k = 3
    while True:
        term = model.bracket(fhat, term)
        if term.is_zero():
            break
        tail = tail + term * Fraction(1, factorial(k))
        k += 1
        if k > max_terms:
            raise MalformedKind("tail series did not terminate")
    if variant == "star":
        return model.e(r) - bf * a0 + seed * (a0 * a0 * Fraction(1, 2)) + tail * (a0 * a0)
    return out - tail * (a0 * a0)


def _check_conical(gcm: GCM, tree: RootedTree, star: bool = False) -> None:
    if not tree.conical:
        raise MalformedKind("tree is not conical")
    r = tree.root
    for i in gcm.labels:
        for j in gcm.labels:
            if i != j and j != r and gcm.a(i, j) not in (0, -1):
                raise MalformedKind(f"conical kinds need a_ij in {{0,-1}} for j != root; a_{i}{j} = {gcm.a(i, j)}")
    if star:
        for i in gcm.labels:
            if i != r and (tree.children[i] or gcm.a(i, r) != -1 or gcm.a(r, i) != -1):
                raise MalformedKind("STAR needs every non-root to be a leaf joined by a simple edge")


def _tree_family(kind, model, a: ParamFamily, ring, root=None, J_plus=(), variant="derived", **opts):
    gcm = model.gcm
    if root is None:
        raise MalformedKind(f"{kind} needs a root vertex")
    tree = root_tree(graph_of(gcm), root)
    rel = {}
    if kind == "PEACOCK":
        J_plus = tuple(J_plus)
        _check_peacock(gcm, tree, J_plus)
        factors = peacock_conjugator(tree, a, model, J_plus)
        u = {}
        for i in gcm.labels:
            ai = a[i]
            ui = model.e(i) + model.h(i) * ai - model.f(i) * (ai * ai)
            u[i] = model.conjugate(factors, ui)
        for i in gcm.labels:
            for j in gcm.labels:
                if i != j and gcm.a(i, j) == -1:
                    rel[(i, j)] = a[i] * a[j] * gcm.a(j, i)
        return GeneratorFamily(model, u, a, f"PEACOCK(root={root}, J+={list(J_plus)})", gcm, ring, rel, dict(opts, kind=kind, root=root, J_plus=J_plus))
    _check_conical(gcm, tree, star=(kind == "STAR"))
    u = {}
    for i in gcm.labels:
        if i == root:
            u[i] = conical_root_image(model, tree, a, variant="star" if variant == "printed" and kind == "STAR" else variant)
        else:
            lo = tree.only_child(i)
            if lo is None:
                u[i] = model.e(i)
            else:
                u[i] = model.e(i) - model.f(lo) * (a[lo] * a[i])
    for i in gcm.labels:
        for j in gcm.labels:
            if i != j and gcm.a(i, j) == -1:
                rel[(i, j)] = a[i] * a[j] * gcm.a(j, i)
    return GeneratorFamily(model, u, a, f"{kind}(root={root})", gcm, ring, rel, dict(opts, kind=kind, root=root, variant=variant))


def _check_peacock(gcm: GCM, tree: RootedTree, J_plus) -> None:
    r = tree.root
    if not tree.conical:
        raise MalformedKind("PEACOCK needs a conical tree")
    for j in J_plus:
        if tree.parent.get(j) != r or tree.children[j]:
            raise MalformedKind(f"{j} is not a leaf attached to the root")
        if gcm.a(j, r) != -1:
            raise MalformedKind(f"PEACOCK needs a_{j}{r} = -1")
    rest = [i for i in gcm.labels if i not in J_plus]
    for i in rest:
        for j in rest:
            if i != j and j != r and gcm.a(i, j) not in (0, -1):
                raise MalformedKind(f"PEACOCK needs a_ij in {{0,-1}} off J+; a_{i}{j} = {gcm.a(i, j)}")


def peacock_conjugator(tree: RootedTree, a: ParamFamily, model, J_plus) -> list:
    """Factors of ``e^{f_+} e^{a_0 f_0} prod e^{a_i f_i}`` (decreasing product)."""
    fplus = model.zero()
    for j in J_plus:
        fplus = fplus + model.f(j) * a[j]
    factors = [(1, fplus), (a[tree.root], model.f(tree.root))]
    for v in tree.order[1:]:
        if v not in J_plus:
            factors.append((a[v], model.f(v)))
    return factors


# ---------------------------------------------------------------------------
# iterated elements of the deformed Serre recursion


def gen_binomial(x: int, k: int) -> Fraction:
    """``binom(x, k)`` as falling factorial over ``k!``; valid for negative ``x``."""
    if k < 0:
        return Fraction(0)
    num = 1
    for t in range(k):
        num *= x - t
    return Fraction(num, factorial(k))


def e_iter(model, i, k: int, j):
    """``e_{i^k j} = (ad e_i)^k(e_j) / k!``."""
    if k < 0:
        return model.zero()
    return model.ad_pow(model.e(i), k, model.e(j)) * Fraction(1, factorial(k))


def f_iter(model, i, k: int, j):
    if k < 0:
        return model.zero()
    return model.ad_pow(model.f(i), k, model.f(j)) * Fraction(1, factorial(k))


def iterated_u(fam: GeneratorFamily, i, r: int, j):
    """``u_{i^r j}`` of a vertex family."""
    if fam.params.kind != "vertex":
        raise MalformedKind("iterated_u is defined for vertex families")
    m = fam.model
    ai, aj = fam.params[i], fam.params[j]
    aij = fam.gcm.a(i, j)
    sign = -1 if r % 2 else 1
    out = m.zero()
    for k in range(r + 1):
        c = gen_binomial(aij + r - 1, r - k)
        if not c:
            continue
        coeff = c * ai ** (r - k) if r - k else c
        term = e_iter(m, i, k, j) - f_iter(m, i, k, j) * (sign * ai ** (2 * k) * aj * aj if k else sign * aj * aj)
        out = out + term * coeff
    return out
