"""Generalized Cartan matrices, Dynkin graphs and rooted trees.

Convention throughout the package: ``[h_i, e_j] = a_ij e_j``, so the
Serre element for the pair ``(i, j)`` is ``(ad e_i)^(1 - a_ij)(e_j)``.

Built-in labelings follow Bourbaki/Kac: ``B_n`` has its short simple
root at index ``n`` (``a_{n,n-1} = -2``), ``C_n`` has its long root at
index ``n`` (``a_{n-1,n} = -2``), ``D_n`` branches at ``n-2``, and the
untwisted affine ``A`` family uses the cyclic index set ``0..n-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

Label = Hashable


class InvalidCartanMatrix(ValueError):
    pass


@dataclass(frozen=True)
class GCM:
    labels: tuple
    entries: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InvalidCartanMatrix("duplicate labels")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise InvalidCartanMatrix("matrix must be square and match the label set")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise InvalidCartanMatrix(f"diagonal entry {i} is {self.entries[i][i]}, not 2")
            for j in range(n):
                if i == j:
                    continue
                a, b = self.entries[i][j], self.entries[j][i]
                if a > 0:
                    raise InvalidCartanMatrix(f"positive off-diagonal entry at ({i},{j})")
                if (a == 0) != (b == 0):
                    raise InvalidCartanMatrix(f"zero pattern not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], labels: Iterable | None = None, name: str = "") -> "GCM":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        labels = tuple(labels) if labels is not None else tuple(range(1, len(rows) + 1))
        return cls(labels, rows, name)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def pos(self, label) -> int:
        return self.labels.index(label)

    def a(self, i, j) -> int:
        """Entry ``a_ij`` addressed by labels."""
        return self.entries[self.pos(i)][self.pos(j)]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def restrict(self, labels: Sequence) -> "GCM":
        idx = [self.pos(x) for x in labels]
        return GCM(tuple(labels), tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.rank) for j in range(self.rank))

    def __str__(self):
        body = "; ".join(" ".join(f"{x:d}" for x in r) for r in self.entries)
        return f"{self.name or 'GCM'}[{body}]"


def _chain(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def builtin_gcm(family: str, rank: int | None = None, p: int | None = None, q: int | None = None) -> GCM:
    """Cartan matrix of a named family.

    ``RANK2`` takes ``p, q`` and returns ``[[2, -p], [-q, 2]]``.  For
    ``AFFINE_A`` the ``rank`` argument is the size ``n`` of the cyclic
    index set ``{0, ..., n-1}``.
    """
    fam = family.upper()
    if fam == "RANK2":
        if p is None or q is None or p < 1 or q < 1:
            raise InvalidCartanMatrix("RANK2 needs positive p and q")
        return GCM.from_rows([[2, -p], [-q, 2]], name=f"RANK2({p},{q})")
    if fam in ("AFFINE_D4", "AFFINED4"):
        m = [[2 if i == j else 0 for j in range(5)] for i in range(5)]
        for leaf in (0, 1, 3, 4):
            m[leaf][2] = m[2][leaf] = -1
        return GCM.from_rows(m, labels=range(5), name="D4^(1)")
    if rank is None:
        raise InvalidCartanMatrix(f"{family} needs a rank")
    n = rank
    if fam == "A":
        if n < 1:
            raise InvalidCartanMatrix("A_n needs n >= 1")
        return GCM.from_rows(_chain(n), name=f"A{n}")
    if fam == "B":
        if n < 2:
            raise InvalidCartanMatrix("B_n needs n >= 2")
        m = _chain(n)
        m[n - 1][n - 2] = -2
        return GCM.from_rows(m, name=f"B{n}")
    if fam == "C":
        if n < 2:
            raise InvalidCartanMatrix("C_n needs n >= 2")
        m = _chain(n)
        m[n - 2][n - 1] = -2
        return GCM.from_rows(m, name=f"C{n}")
    if fam == "D":
        if n < 3:
            raise InvalidCartanMatrix("D_n needs n >= 3")
        m = _chain(n)
        # branch at n-2: drop edge (n-1, n), add edge (n-2, n)
        m[n - 2][n - 1] = m[n - 1][n - 2] = 0
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
        return GCM.from_rows(m, name=f"D{n}")
    if fam == "E":
        if n not in (6, 7, 8):
            raise InvalidCartanMatrix("E_n needs n in {6,7,8}")
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 2
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] + [(k, k + 1) for k in range(6, n)]
        for i, j in edges:
            m[i - 1][j - 1] = m[j - 1][i - 1] = -1
        return GCM.from_rows(m, name=f"E{n}")
    if fam == "F":
        if n != 4:
            raise InvalidCartanMatrix("F_n needs n = 4")
        return GCM.from_rows([[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]], name="F4")
    if fam == "G":
        if n != 2:
            raise InvalidCartanMatrix("G_n needs n = 2")
        return GCM.from_rows([[2, -1], [-3, 2]], name="G2")
    if fam in ("AFFINE_A", "AFFINEA", "A_AFFINE"):
        if n < 2:
            raise InvalidCartanMatrix("affine A needs n >= 2")
        if n == 2:
            return GCM.from_rows([[2, -2], [-2, 2]], labels=(0, 1), name="A1^(1)")
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 2
            m[i][(i + 1) % n] = m[(i + 1) % n][i] = -1
        return GCM.from_rows(m, labels=range(n), name=f"A{n - 1}^(1)")
    raise InvalidCartanMatrix(f"unknown family {family!r}")


def read_gcm_file(path: str | Path) -> GCM:
    """Plain-text GCM: first line the rank, then one row of integers per line."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidCartanMatrix(f"{path}: empty file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in ln.replace(",", " ").split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidCartanMatrix(f"{path}: {exc}") from None
    if len(rows) != n:
        raise InvalidCartanMatrix(f"{path}: rank {n} but {len(rows)} rows")
    return GCM.from_rows(rows, name=Path(path).stem)


def write_gcm_file(gcm: GCM, path: str | Path) -> None:
    text = f"{gcm.rank}\n" + "\n".join(" ".join(str(x) for x in r) for r in gcm.entries) + "\n"
    Path(path).write_text(text)


# ---------------------------------------------------------------------------
# graphs and trees


@dataclass(frozen=True)
class DynkinGraph:
    vertices: tuple
    edges: frozenset  # of frozenset({i, j})

    def neighbors(self, v) -> list:
        return [w for w in self.vertices if frozenset((v, w)) in self.edges]

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1 and self.is_connected()

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def is_cycle(self) -> bool:
        return self.is_connected() and len(self.vertices) >= 3 and all(self.degree(v) == 2 for v in self.vertices)


def graph_of(gcm: GCM) -> DynkinGraph:
    edges = set()
    for i in gcm.labels:
        for j in gcm.labels:
            if i != j and gcm.a(i, j) < 0:
                edges.add(frozenset((i, j)))
    return DynkinGraph(gcm.labels, frozenset(edges))


class NotATree(ValueError):
    pass


@dataclass(frozen=True)
class RootedTree:
    root: Label
    parent: Mapping  # i -> i^+ (root absent)
    children: Mapping  # i -> tuple of children in label order
    order: tuple  # decreasing order: every parent precedes its children

    @property
    def conical(self) -> bool:
        return all(len(self.children[v]) <= 1 for v in self.children if v != self.root)

    def only_child(self, v):
        """``v^-`` for a non-root, non-leaf vertex of a conical tree."""
        kids = self.children[v]
        if v == self.root or len(kids) != 1:
            return None
        return kids[0]

    def leaves(self) -> list:
        return [v for v in self.order if not self.children[v]]

    def precedes(self, u, v) -> bool:
        """``u`` is a strict ancestor of ``v``."""
        w = self.parent.get(v)
        while w is not None:
            if w == u:
                return True
            w = self.parent.get(w)
        return False


def root_tree(graph: DynkinGraph, root) -> RootedTree:
    if root not in graph.vertices:
        raise ValueError(f"{root!r} is not a vertex")
    if not graph.is_tree():
        raise NotATree("graph is not a tree (it has a cycle or is disconnected)")
    rank_of = {v: k for k, v in enumerate(graph.vertices)}
    parent = {}
    children = {v: [] for v in graph.vertices}
    order = [root]
    queue = deque([root])
    seen = {root}
    while queue:
        v = queue.popleft()
        for w in sorted(graph.neighbors(v), key=rank_of.__getitem__):
            if w in seen:
                continue
            seen.add(w)
            parent[w] = v
            children[v].append(w)
            order.append(w)
            queue.append(w)
    return RootedTree(root, parent, {v: tuple(c) for v, c in children.items()}, tuple(order))


# ---------------------------------------------------------------------------
# parameter families


def edge_key(i, j) -> frozenset:
    return frozenset((i, j))


@dataclass
class ParamFamily:
    """Vertex parameters ``a_i`` or symmetric edge parameters ``b_ij``."""

    kind: str  # "vertex" or "edge"
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("vertex", "edge"):
            raise ValueError("kind must be 'vertex' or 'edge'")
        if self.kind == "edge":
            self.values = {edge_key(*k) if not isinstance(k, frozenset) else k: v for k, v in self.values.items()}

    def __getitem__(self, key):
        if self.kind == "edge":
            if not isinstance(key, frozenset):
                key = edge_key(*key)
        return self.values[key]

    def get(self, key, default=0):
        try:
            return self[key]
        except KeyError:
            return default

    def items(self):
        return self.values.items()


def simple_edges(gcm: GCM) -> list[tuple]:
    """Edges with ``a_ij = -1`` (either direction), as ordered label pairs."""
    out = []
    for x, i in enumerate(gcm.labels):
        for j in gcm.labels[x + 1 :]:
            if gcm.a(i, j) == -1 or gcm.a(j, i) == -1:
                out.append((i, j))
    return out


def edge_param_name(i, j) -> str:
    return f"b{i}_{j}"


def vertex_param_name(i) -> str:
    return f"a{i}"
