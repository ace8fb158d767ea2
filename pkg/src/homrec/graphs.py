"""Finite simple graphs, optionally decorated with vertex colours or labels.

Vertices are the dense integers ``0..order-1``. Adjacency is kept as a tuple of
Python ints used as bitsets, which is what every counting and search routine
in the package works on.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "ColouredGraph",
    "LabelledGraph",
    "GraphError",
    "CapExceeded",
    "make_graph",
    "from_adjacency",
    "complement",
    "disjoint_union",
    "induced_subgraph",
    "relabel",
    "kneser",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "diamond",
    "petersen",
    "is_connected",
    "components",
    "chromatic_number",
    "odd_girth",
]


class GraphError(ValueError):
    """Raised for malformed graph input."""


class CapExceeded(RuntimeError):
    """An exhaustive routine was asked to go beyond its size cap."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    order: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.order
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @property
    def size(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def graph(self) -> "Graph":
        return self

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={list(self.edges)})"


@dataclass(frozen=True)
class ColouredGraph:
    """A graph with a colour id on every vertex."""

    graph: Graph
    colours: tuple[int, ...]

    def __post_init__(self):
        if len(self.colours) != self.graph.order:
            raise GraphError("colour must be defined for every vertex")
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def edges(self):
        return self.graph.edges

    @property
    def adj(self):
        return self.graph.adj


@dataclass(frozen=True)
class LabelledGraph:
    """A graph whose labels each name one vertex.

    ``labels`` is a sorted tuple of ``(label, vertex)`` pairs; two labels may
    name the same vertex.
    """

    graph: Graph
    labels: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        raw = self.labels.items() if isinstance(self.labels, Mapping) else self.labels
        pairs = tuple(sorted((int(a), int(v)) for a, v in raw))
        seen = set()
        for a, v in pairs:
            if a in seen:
                raise GraphError(f"label {a} names more than one vertex")
            if not 0 <= v < self.graph.order:
                raise GraphError(f"label {a} names missing vertex {v}")
            seen.add(a)
        object.__setattr__(self, "labels", pairs)

    @property
    def order(self) -> int:
        return self.graph.order

    @property
    def edges(self):
        return self.graph.edges

    @property
    def adj(self):
        return self.graph.adj

    @cached_property
    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    def vertex_labels(self) -> list[frozenset]:
        out = [set() for _ in range(self.order)]
        for a, v in self.labels:
            out[v].add(a)
        return [frozenset(s) for s in out]


AnyGraph = Graph | ColouredGraph | LabelledGraph


def make_graph(order: int, edge_list: Iterable[Sequence[int]] = (), strict: bool = False) -> Graph:
    """Build a normalised :class:`Graph`.

    Duplicate edges are dropped with a warning, or rejected when ``strict``.
    """
    if order < 0:
        raise GraphError("order must be non-negative")
    seen: set[tuple[int, int]] = set()
    for e in edge_list:
        u, v = (int(x) for x in e)
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"edge {{{u},{v}}} has an endpoint outside 0..{order - 1}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            if strict:
                raise GraphError(f"duplicate edge {key}")
            warnings.warn(f"duplicate edge {key} dropped", stacklevel=2)
            continue
        seen.add(key)
    return Graph(order, tuple(sorted(seen)))


def from_adjacency(adj: Sequence[int]) -> Graph:
    n = len(adj)
    edges = tuple((u, v) for v in range(n) for u in _bits(adj[v] & ((1 << v) - 1)))
    return Graph(n, tuple(sorted(edges)))


def _decorate_like(template: AnyGraph, base: Graph, keep: Sequence[int] | None = None) -> AnyGraph:
    if isinstance(template, ColouredGraph):
        cols = template.colours if keep is None else [template.colours[v] for v in keep]
        return ColouredGraph(base, tuple(cols))
    if isinstance(template, LabelledGraph):
        if keep is None:
            return LabelledGraph(base, template.labels)
        pos = {v: i for i, v in enumerate(keep)}
        return LabelledGraph(base, tuple((a, pos[v]) for a, v in template.labels if v in pos))
    return base


def complement(G: AnyGraph) -> AnyGraph:
    base = G.graph
    n = base.order
    full = (1 << n) - 1
    adj = [(full ^ row) & ~(1 << v) for v, row in enumerate(base.adj)]
    return _decorate_like(G, from_adjacency(adj))


def disjoint_union(G: AnyGraph, H: AnyGraph) -> AnyGraph:
    """Vertices of ``H`` are shifted up by ``|V(G)|``.

    Both graphs must be of the same kind. Labelled graphs may not share labels.
    """
    if type(G) is not type(H):
        raise GraphError("disjoint union needs graphs of the same kind")
    shift = G.order
    base = Graph(G.order + H.order, G.edges + tuple((u + shift, v + shift) for u, v in H.edges))
    if isinstance(G, ColouredGraph):
        return ColouredGraph(base, G.colours + H.colours)
    if isinstance(G, LabelledGraph):
        if set(G.label_map) & set(H.label_map):
            raise GraphError("labelled disjoint union with a shared label")
        return LabelledGraph(base, G.labels + tuple((a, v + shift) for a, v in H.labels))
    return base


def union_all(graphs: Iterable[AnyGraph], multiplicities: Iterable[int] | None = None) -> AnyGraph:
    graphs = list(graphs)
    mult = [1] * len(graphs) if multiplicities is None else list(multiplicities)
    out = None
    for g, m in zip(graphs, mult):
        for _ in range(m):
            out = g if out is None else disjoint_union(out, g)
    return out if out is not None else Graph(0, ())


def induced_subgraph(G: AnyGraph, U: Iterable[int]) -> AnyGraph:
    """``G[U]`` with vertices renumbered in increasing order."""
    keep = sorted(set(int(u) for u in U))
    for u in keep:
        if not 0 <= u < G.order:
            raise GraphError(f"vertex {u} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    edges = tuple((pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos)
    return _decorate_like(G, Graph(len(keep), edges), keep)


def relabel(G: AnyGraph, perm: Sequence[int]) -> AnyGraph:
    """Apply the vertex map ``v -> perm[v]``."""
    n = G.order
    if sorted(perm) != list(range(n)):
        raise GraphError("not a permutation")
    edges = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in G.edges))
    base = Graph(n, edges)
    if isinstance(G, ColouredGraph):
        cols = [0] * n
        for v, c in enumerate(G.colours):
            cols[perm[v]] = c
        return ColouredGraph(base, tuple(cols))
    if isinstance(G, LabelledGraph):
        return LabelledGraph(base, tuple((a, perm[v]) for a, v in G.labels))
    return base


# named graphs


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Centre 0 joined to ``leaves`` leaves."""
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def diamond() -> Graph:
    """K4 minus the edge {2,3}."""
    return make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def kneser(r: int, s: int) -> Graph:
    """Kneser graph on the r-subsets of range(s), adjacent when disjoint."""
    if not (r >= 1 and 2 * r < s):
        raise GraphError(f"kneser needs 1 <= r < s/2, got r={r}, s={s}")
    subsets = [sum(1 << x for x in c) for c in combinations(range(s), r)]
    edges = [(i, j) for i, j in combinations(range(len(subsets)), 2) if not subsets[i] & subsets[j]]
    return Graph(len(subsets), tuple(edges))


def petersen() -> Graph:
    return kneser(2, 5)


# structure


def components(G: AnyGraph) -> list[list[int]]:
    adj = G.adj
    seen = 0
    out = []
    for s in range(G.order):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def is_connected(G: AnyGraph) -> bool:
    return G.order <= 1 or len(components(G)) == 1


CHROMATIC_CAP = 30


def chromatic_number(G: AnyGraph, cap: int = CHROMATIC_CAP) -> int:
    """Exact chromatic number by DSATUR-ordered backtracking."""
    n = G.order
    if n > cap:
        raise CapExceeded(f"chromatic_number is capped at {cap} vertices, got {n}")
    if n == 0:
        return 0
    adj = G.adj
    if not any(adj):
        return 1
    for k in range(2, n + 1):
        if _colourable(adj, n, k):
            return k
    return n


def _colourable(adj: Sequence[int], n: int, k: int) -> bool:
    colour = [-1] * n
    # forbidden[v] = bitmask of colours used by neighbours
    forbidden = [0] * n

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colour[v] < 0:
                sat = forbidden[v].bit_count()
                cand = (sat, adj[v].bit_count())
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def solve(coloured: int, used: int) -> bool:
        if coloured == n:
            return True
        v = pick()
        # new colours are interchangeable, so try at most one unused one
        for c in range(min(used + 1, k)):
            if forbidden[v] >> c & 1:
                continue
            colour[v] = c
            changed = [u for u in _bits(adj[v]) if colour[u] < 0 and not forbidden[u] >> c & 1]
            for u in changed:
                forbidden[u] |= 1 << c
            if solve(coloured + 1, max(used, c + 1)):
                return True
            for u in changed:
                forbidden[u] &= ~(1 << c)
            colour[v] = -1
        return False

    return solve(0, 0)


def odd_girth(G: AnyGraph) -> float:
    """Length of a shortest odd cycle, ``math.inf`` for bipartite graphs."""
    best = float("inf")
    adj = G.adj
    for s in range(G.order):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in _bits(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                elif dist[w] == dist[u]:
                    best = min(best, 2 * dist[u] + 1)
    return best


def edge_count(G: AnyGraph) -> int:
    return len(G.edges)


def max_edges(n: int) -> int:
    return comb(n, 2)
