"""Quivers, exchange matrices, diagram classification and root systems.

Vertices are numbered 1..n in every public interface. Arrows are ordered
pairs (source, target); parallel arrows are allowed, loops are not. The
exchange matrix convention is b_ij = #arrows(i -> j) - #arrows(j -> i), so
b_ij > 0 means arrows from i to j.

Instances are immutable and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import linalg

__all__ = [
    "Quiver",
    "DiagramClass",
    "EulerData",
    "exchange_matrix",
    "quiver_from_matrix",
    "mutate_matrix",
    "classify_diagram",
    "positive_roots",
    "builtin_quiver",
    "BUILTIN_QUIVER_NAMES",
    "load_quiver_json",
    "quiver_to_json",
]

IntMatrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with 1-based vertices and an ordered arrow list."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("quiver needs at least one vertex")
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for s, t in self.arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError(f"arrow ({s},{t}) out of range 1..{self.n}")
            if s == t:
                raise ValueError(f"loop at vertex {s} not allowed")

    def arrows_from(self, v: int) -> list[tuple[int, tuple[int, int]]]:
        return [(i, a) for i, a in enumerate(self.arrows) if a[0] == v]

    def arrows_into(self, v: int) -> list[tuple[int, tuple[int, int]]]:
        return [(i, a) for i, a in enumerate(self.arrows) if a[1] == v]

    def arrow_count(self, s: int, t: int) -> int:
        return sum(1 for a in self.arrows if a == (s, t))

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except ValueError:
            return False

    def topological_order(self) -> list[int]:
        """Vertices ordered so every arrow goes forward; raises on a cycle."""
        indeg = {v: 0 for v in range(1, self.n + 1)}
        for _, t in self.arrows:
            indeg[t] += 1
        queue = sorted(v for v, d in indeg.items() if d == 0)
        order: list[int] = []
        while queue:
            v = queue.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
            queue.sort()
        if len(order) != self.n:
            raise ValueError("quiver has an oriented cycle")
        return order

    def is_connected(self) -> bool:
        seen = {1}
        frontier = [1]
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.n

    def opposite(self) -> "Quiver":
        return Quiver(self.n, tuple((t, s) for s, t in self.arrows))


def exchange_matrix(q: Quiver) -> IntMatrix:
    """Skew-symmetric matrix b_ij = #(i->j) - #(j->i)."""
    b = [[0] * q.n for _ in range(q.n)]
    for s, t in q.arrows:
        b[s - 1][t - 1] += 1
        b[t - 1][s - 1] -= 1
    return tuple(tuple(row) for row in b)


def quiver_from_matrix(b) -> Quiver:
    """Quiver of a skew-symmetric integer matrix (b_ij > 0 arrows i->j)."""
    n = len(b)
    for i in range(n):
        for j in range(n):
            if b[i][j] != -b[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    arrows = []
    for i in range(n):
        for j in range(n):
            if b[i][j] > 0:
                arrows.extend([(i + 1, j + 1)] * b[i][j])
    return Quiver(n, tuple(arrows))


def mutate_matrix(b, k: int) -> IntMatrix:
    """Matrix mutation at vertex k (1-based).

    b'_ij = -b_ij when i = k or j = k, otherwise
    b'_ij = b_ij + [b_ik]_+ [b_kj]_+ - [-b_ik]_+ [-b_kj]_+.
    """
    n = len(b)
    if not (1 <= k <= n):
        raise IndexError(f"mutation vertex {k} out of range 1..{n}")
    kk = k - 1
    pos = lambda x: x if x > 0 else 0
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + pos(b[i][kk]) * pos(b[kk][j]) - pos(-b[i][kk]) * pos(-b[kk][j]))
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# diagram classification


@dataclass(frozen=True)
class DiagramClass:
    """Shape of the underlying undirected diagram.

    kind is "dynkin", "affine" or "other"; label is a human-readable name
    like "A3", "D4", "E6", "A~(2,1)", "D~4".
    """

    kind: str
    label: str
    rank: int


def _edge_multiplicities(q: Quiver) -> dict[tuple[int, int], int]:
    edges: dict[tuple[int, int], int] = {}
    for s, t in q.arrows:
        key = (min(s, t), max(s, t))
        edges[key] = edges.get(key, 0) + 1
    return edges


def _branch_lengths(adj: dict[int, list[int]], center: int) -> list[int]:
    lengths = []
    for start in adj[center]:
        ln = 1
        prev, cur = center, start
        while len(adj[cur]) == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            ln += 1
        if len(adj[cur]) > 2:
            raise ValueError("not a simple branch")
        lengths.append(ln)
    return sorted(lengths)


def _cycle_orientation_split(q: Quiver) -> tuple[int, int]:
    # Walk the unique cycle and count arrows agreeing/disagreeing with the
    # walk direction. Returns (p, q) with p >= q.
    adj: dict[int, list[int]] = {v: [] for v in range(1, q.n + 1)}
    for s, t in q.arrows:
        adj[s].append(t)
        adj[t].append(s)
    walk = [1, adj[1][0]]
    while walk[-1] != 1:
        nbrs = adj[walk[-1]]
        walk.append(nbrs[0] if nbrs[0] != walk[-2] else nbrs[1])
    along = 0
    against = 0
    for u, v in zip(walk, walk[1:]):
        along += q.arrow_count(u, v)
        against += q.arrow_count(v, u)
    return (max(along, against), min(along, against))


def classify_diagram(q: Quiver) -> DiagramClass:
    """Classify the underlying diagram as Dynkin ADE, affine, or other.

    Raises ValueError on a disconnected quiver.
    """
    if not q.is_connected():
        raise ValueError("diagram is disconnected")
    n = q.n
    edges = _edge_multiplicities(q)
    if n == 1 and not edges:
        return DiagramClass("dynkin", "A1", 1)
    multi = [e for e, m in edges.items() if m > 1]
    if multi:
        if n == 2 and len(edges) == 1 and edges[multi[0]] == 2:
            p, qq = _cycle_orientation_split(q)
            return DiagramClass("affine", f"A~({p},{qq})", 1)
        return DiagramClass("other", "other", n)
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for s, t in edges:
        adj[s].append(t)
        adj[t].append(s)
    degs = sorted((len(adj[v]) for v in adj), reverse=True)
    num_edges = len(edges)
    if num_edges == n:
        # connected with |E| = |V| and all degrees 2: a single cycle
        if all(len(adj[v]) == 2 for v in adj):
            p, qq = _cycle_orientation_split(q)
            return DiagramClass("affine", f"A~({p},{qq})", n - 1)
        return DiagramClass("other", "other", n)
    if num_edges != n - 1:
        return DiagramClass("other", "other", n)
    # tree from here on
    big = [v for v in adj if len(adj[v]) >= 3]
    if not big:
        return DiagramClass("dynkin", f"A{n}", n)
    if len(big) == 1:
        center = big[0]
        if len(adj[center]) == 4:
            if n == 5 and all(len(adj[v]) == 1 for v in adj if v != center):
                return DiagramClass("affine", "D~4", 4)
            return DiagramClass("other", "other", n)
        if len(adj[center]) > 4:
            return DiagramClass("other", "other", n)
        try:
            branches = tuple(_branch_lengths(adj, center))
        except ValueError:
            return DiagramClass("other", "other", n)
        if branches[0] == 1 and branches[1] == 1:
            return DiagramClass("dynkin", f"D{n}", n)
        table = {
            (1, 2, 2): ("dynkin", "E6"),
            (1, 2, 3): ("dynkin", "E7"),
            (1, 2, 4): ("dynkin", "E8"),
            (2, 2, 2): ("affine", "E~6"),
            (1, 3, 3): ("affine", "E~7"),
            (1, 2, 5): ("affine", "E~8"),
        }
        if branches in table:
            kind, label = table[branches]
            return DiagramClass(kind, label, n if kind == "dynkin" else n - 1)
        return DiagramClass("other", "other", n)
    if len(big) == 2 and all(len(adj[v]) == 3 for v in big):
        # affine D~: both branch vertices carry two leaf branches of length 1
        ok = True
        for center in big:
            leaf_nbrs = [w for w in adj[center] if len(adj[w]) == 1]
            if len(leaf_nbrs) < 2:
                ok = False
        if ok and n >= 6:
            return DiagramClass("affine", f"D~{n - 1}", n - 1)
        return DiagramClass("other", "other", n)
    return DiagramClass("other", "other", n)


# ---------------------------------------------------------------------------
# root system


def positive_roots(q: Quiver) -> frozenset[Vector]:
    """Positive roots of the underlying Dynkin diagram.

    Computed as the closure of the simple roots under all simple
    reflections, then restricted to nonnegative vectors. Raises ValueError
    when the diagram is not Dynkin ADE.
    """
    cls = classify_diagram(q)
    if cls.kind != "dynkin":
        raise ValueError(f"positive roots require a Dynkin diagram, got {cls.label}")
    n = q.n
    mult = [[0] * n for _ in range(n)]
    for (s, t), m in _edge_multiplicities(q).items():
        mult[s - 1][t - 1] += m
        mult[t - 1][s - 1] += m

    def reflect(d: Vector, i: int) -> Vector:
        new_i = -d[i] + sum(mult[i][j] * d[j] for j in range(n))
        return tuple(new_i if j == i else d[j] for j in range(n))

    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen: set[Vector] = set(simples)
    frontier = list(simples)
    while frontier:
        d = frontier.pop()
        for i in range(n):
            r = reflect(d, i)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
        if len(seen) > 4 * n * n + 2 * n:
            raise ValueError("reflection closure did not stay finite")
    return frozenset(d for d in seen if all(x >= 0 for x in d) and any(d))


# ---------------------------------------------------------------------------
# Euler form and Coxeter transformation


class EulerData:
    """Euler form and Coxeter transformation of an acyclic quiver.

    The form is <d, e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j, which
    equals dim Hom(M, N) - dim Ext^1(M, N) for representations with
    dim M = d, dim N = e. The Coxeter matrix Phi = -E^{-1} E^T is the
    dimension shadow of the AR translate: Phi dim M = dim tau M for
    non-projective indecomposables and Phi dim P_i = -dim I_i; the inverse
    transform plays the same role for the inverse translate.
    """

    def __init__(self, q: Quiver):
        if not q.is_acyclic():
            raise ValueError("Euler data requires an acyclic quiver")
        self.quiver = q
        n = q.n
        e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for s, t in q.arrows:
            e[s - 1][t - 1] -= 1
        self._e = e
        e_inv = linalg.inverse(e)
        et = linalg.transpose(e)
        phi = linalg.mat_neg(linalg.mat_mul(e_inv, et))
        phi_inv = linalg.mat_neg(linalg.mat_mul(linalg.inverse(et), e))
        # acyclic E is unitriangular in a topological order, so both are integral
        self.matrix = tuple(tuple(r) for r in linalg.to_int_matrix(phi))
        self.inverse_matrix = tuple(tuple(r) for r in linalg.to_int_matrix(phi_inv))
        self.euler_matrix = tuple(tuple(r) for r in linalg.to_int_matrix(e))

    def euler_form(self, d, e) -> int:
        total = 0
        em = self.euler_matrix
        for i, di in enumerate(d):
            if di:
                for j, ej in enumerate(e):
                    if ej and em[i][j]:
                        total += di * em[i][j] * ej
        return total

    def coxeter_transform(self, d) -> Vector:
        return tuple(sum(row[j] * d[j] for j in range(len(d))) for row in self.matrix)

    def inverse_coxeter_transform(self, d) -> Vector:
        return tuple(sum(row[j] * d[j] for j in range(len(d))) for row in self.inverse_matrix)


# ---------------------------------------------------------------------------
# named quivers and file formats

BUILTIN_QUIVER_NAMES = ("A2", "A3", "A4", "D4", "Atilde21")


def builtin_quiver(name: str) -> Quiver:
    """Named quivers used throughout the test surface.

    A2/A3/A4 are linearly ordered 1 -> 2 -> ... -> n; D4 is the 3-branch
    star with center 2 (arrows 1->2, 2->3, 2->4); Atilde21 is the acyclic
    affine triangle 1->2, 2->3, 1->3.
    """
    key = name.strip()
    if key in ("A2", "A3", "A4"):
        n = int(key[1])
        return Quiver(n, tuple((i, i + 1) for i in range(1, n)))
    if key == "D4":
        return Quiver(4, ((1, 2), (2, 3), (2, 4)))
    if key == "Atilde21":
        return Quiver(3, ((1, 2), (2, 3), (1, 3)))
    raise KeyError(f"unknown quiver name {name!r}; known: {', '.join(BUILTIN_QUIVER_NAMES)}")


def load_quiver_json(source) -> tuple[Quiver, tuple[tuple[int, ...], ...]]:
    """Read a quiver (and optional monomial relations) from JSON.

    Format: {"vertices": n, "arrows": [[s, t], ...], "relations": [...]},
    vertices 1-based, each relation a list of 0-based arrow indices forming
    a path. Returns (quiver, relations).
    """
    if isinstance(source, (str, Path)):
        data = json.loads(Path(source).read_text())
    else:
        data = source
    if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
        raise ValueError("quiver JSON needs 'vertices' and 'arrows'")
    q = Quiver(int(data["vertices"]), tuple((int(s), int(t)) for s, t in data["arrows"]))
    relations = tuple(tuple(int(i) for i in rel) for rel in data.get("relations", []))
    for rel in relations:
        for i in rel:
            if not (0 <= i < len(q.arrows)):
                raise ValueError(f"relation arrow index {i} out of range")
    return q, relations


def quiver_to_json(q: Quiver, relations=()) -> dict:
    out = {"vertices": q.n, "arrows": [[s, t] for s, t in q.arrows]}
    if relations:
        out["relations"] = [list(r) for r in relations]
    return out
