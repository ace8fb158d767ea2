"""Explicit graphs with prescribed clique or triangle counts.

Clique counts come from a clique K_{n'-1} plus a few fresh vertices, each
joined to a_i clique vertices, where the a_i solve a binomial sum problem.
Triangle counts on n+1 vertices beyond C(n-1, 3) come from complements of
trees, whose degree sequences are steered by the splitting calculus on
degree multisets: a split raises the complement's triangle count by one.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .graphs import CapExceeded, Graph, _bits, complement, from_adjacency, make_graph

__all__ = [
    "GAMMA_KNOWN",
    "GAMMA_CONJECTURED",
    "ConstructionError",
    "BinomialDecomposition",
    "DegreeMultiset",
    "SplitChain",
    "kamke_decompose",
    "default_part_cap",
    "construct_clique_graph",
    "clique_vertex_budget",
    "multiset_initial",
    "multiset_split",
    "staircase_chain",
    "long_chain",
    "staircase_length",
    "tree_from_degrees",
    "complement_triangle_formula",
    "forest_complement_count",
    "construct_triangle_graph",
    "longest_chain_length",
    "direct_triangle_count",
    "clique_count",
]

# proven values of gamma(k); the k=3 value is only used as a search hint
GAMMA_KNOWN = {1: 1, 2: 3}
GAMMA_CONJECTURED = {3: 5}


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BinomialDecomposition:
    k: int
    parts: tuple[int, ...]
    target: int

    def __post_init__(self):
        if sum(comb(a, self.k) for a in self.parts) != self.target:
            raise ConstructionError("parts do not sum to the target")

    def __len__(self):
        return len(self.parts)


def default_part_cap(k: int) -> int:
    if k in GAMMA_KNOWN:
        return GAMMA_KNOWN[k]
    return 2 * k * math.ceil(math.log2(k + 2))


def kamke_decompose(target: int, k: int, part_cap: int | None = None, max_part: int | None = None) -> BinomialDecomposition:
    """Write ``target`` as a sum of as few C(a_i, k) as possible.

    Parts are returned in non-increasing order. Iterative deepening on the
    number of parts, up to ``part_cap``; each a_i is at most ``max_part``.
    """
    if target < 0 or k < 1:
        raise ValueError("need target >= 0 and k >= 1")
    cap = default_part_cap(k) if part_cap is None else part_cap
    if target == 0:
        return BinomialDecomposition(k, (), 0)
    values = []  # C(a, k) for a = k, k+1, ... while it fits
    a = k
    while comb(a, k) <= target and (max_part is None or a <= max_part):
        values.append(comb(a, k))
        a += 1
    if not values:
        raise ConstructionError(f"no part a <= {max_part} has 0 < C(a,{k}) <= {target}")
    index = {v: i for i, v in enumerate(values)}

    @lru_cache(maxsize=None)
    def search(rem: int, t: int, top: int):
        # parts drawn from values[0..top], non-increasing
        if rem == 0:
            return ()
        if t == 0 or rem > t * values[top]:
            return None
        if t == 1:
            i = index.get(rem)
            return (i,) if i is not None and i <= top else None
        for i in range(top, -1, -1):
            c = values[i]
            if c > rem:
                continue
            if rem > t * c:
                break
            rest = search(rem - c, t - 1, i)
            if rest is not None:
                return (i,) + rest
        return None

    top = len(values) - 1
    for t in range(1, cap + 1):
        found = search(target, t, top)
        if found is not None:
            return BinomialDecomposition(k, tuple(i + k for i in found), target)
    raise ConstructionError(
        f"no decomposition of {target} into at most {cap} terms C(a,{k})"
        + (f" with a <= {max_part}" if max_part is not None else "")
        + "; raise part_cap")


def clique_vertex_budget(n: int, k: int, parts_used: int) -> int:
    """Vertex count of the clique construction: n + gamma(k-1) - 1 when known."""
    gamma = GAMMA_KNOWN.get(k - 1)
    return n + (gamma if gamma is not None else parts_used) - 1


def construct_clique_graph(n: int, k: int, h: int, part_cap: int | None = None) -> Graph:
    """A graph with exactly h copies of K_k on about n + gamma(k-1) - 1 vertices.

    The returned graph has attribute-free structure; the number of fresh
    vertices used is ``len(kamke_decompose(...))`` and can be recovered via
    :func:`clique_parts`.
    """
    return _clique_construction(n, k, h, part_cap)[0]


def clique_parts(n: int, k: int, h: int, part_cap: int | None = None) -> BinomialDecomposition | None:
    return _clique_construction(n, k, h, part_cap)[1]


def _clique_construction(n: int, k: int, h: int, part_cap):
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    if not 0 <= h <= comb(n, k):
        raise ValueError(f"need 0 <= h <= C({n},{k}) = {comb(n, k)}")
    if h == 0:
        return Graph(clique_vertex_budget(n, k, 1), ()), None
    n1 = k
    while comb(n1, k) < h:
        n1 += 1
    base = n1 - 1
    rest = h - comb(base, k)
    try:
        dec = kamke_decompose(rest, k - 1, part_cap=part_cap, max_part=base)
    except ConstructionError as exc:
        raise ConstructionError(f"clique construction n={n} k={k} h={h}: {exc}") from exc
    edges = [(u, v) for u in range(base) for v in range(u + 1, base)]
    for i, a in enumerate(dec.parts):
        fresh = base + i
        edges.extend((u, fresh) for u in range(a))
    t = len(dec.parts)
    order = max(base + t, clique_vertex_budget(n, k, t))
    return make_graph(order, edges), dec


# degree multisets


@dataclass(frozen=True)
class DegreeMultiset:
    p: int
    entries: tuple[int, ...]  # non-increasing

    def __post_init__(self):
        ent = tuple(sorted(self.entries, reverse=True))
        if any(e < 1 for e in ent):
            raise ConstructionError("entries must be positive")
        if len(ent) != self.p + 2 or sum(ent) != 2 * self.p + 2:
            raise ConstructionError(f"need {self.p + 2} entries summing to {2 * self.p + 2}")
        object.__setattr__(self, "entries", ent)

    def count(self, c: int) -> int:
        return self.entries.count(c)

    def square_sum(self) -> int:
        return sum(e * e for e in self.entries)

    def __repr__(self):
        return "{" + ",".join(map(str, self.entries)) + "}"


@dataclass(frozen=True)
class SplitChain:
    p: int
    steps: tuple[int, ...]

    def multisets(self) -> list[DegreeMultiset]:
        out = [multiset_initial(self.p)]
        for c in self.steps:
            out.append(multiset_split(out[-1], c))
        return out

    def final(self) -> DegreeMultiset:
        return self.multisets()[-1]

    def __len__(self):
        return len(self.steps)


def multiset_initial(p: int) -> DegreeMultiset:
    if p < 0:
        raise ValueError("p must be non-negative")
    return DegreeMultiset(p, (2,) * p + (1, 1))


def multiset_split(D: DegreeMultiset, c: int) -> DegreeMultiset:
    """Replace two entries equal to c by c+1 and c-1."""
    if c < 2 or D.count(c) < 2:
        raise ConstructionError(f"cannot split {c}: needs c >= 2 occurring twice in {D}")
    ent = list(D.entries)
    ent.remove(c)
    ent.remove(c)
    ent += [c + 1, c - 1]
    return DegreeMultiset(D.p, tuple(ent))


def _staircase_x(p: int) -> int:
    x = 1
    while comb(x + 1, 2) <= p:
        x += 1
    return x


def staircase_length(p: int) -> int:
    """Number of splits the staircase construction provides in D^p: C(x, 3)."""
    return comb(_staircase_x(p), 3)


def _staircase_steps(x: int):
    # stage y lifts {y, y-1, ..., 2, 1...} plus y spare 2s to {y+1, y, ..., 2, 1...}
    for y in range(2, x):
        for j in range(1, y):
            for c in range(2, y + 2 - j):
                yield c


def staircase_chain(p: int, steps: int) -> SplitChain:
    """The first ``steps`` splits of the staircase chain in D^p."""
    avail = staircase_length(p)
    if not 0 <= steps <= avail:
        raise ConstructionError(f"the staircase in D^{p} has {avail} splits, {steps} requested")
    out = []
    for c in _staircase_steps(_staircase_x(p)):
        if len(out) == steps:
            break
        out.append(c)
    chain = SplitChain(p, tuple(out))
    chain.final()  # validates every step
    return chain


def tree_from_degrees(D) -> Graph:
    """A tree realising a multiset of D^p.

    Accepts a :class:`SplitChain` (replayed step by step from the path) or a
    :class:`DegreeMultiset`, for which a chain is first found by search.
    """
    if isinstance(D, DegreeMultiset):
        D = _chain_to(D)
    if not isinstance(D, SplitChain):
        raise TypeError("expected a SplitChain or DegreeMultiset")
    p = D.p
    n = p + 2
    adj = [0] * n
    for i in range(n - 1):
        adj[i] |= 1 << (i + 1)
        adj[i + 1] |= 1 << i
    cur = multiset_initial(p)
    for c in D.steps:
        cur = multiset_split(cur, c)
        same = [v for v in range(n) if adj[v].bit_count() == c]
        if len(same) < 2:
            raise ConstructionError("malformed chain")
        v1, v2 = same[0], same[1]
        on_path = _tree_path(adj, v1, v2)
        v3 = next(u for u in _bits(adj[v1]) if u not in on_path)
        adj[v1] &= ~(1 << v3)
        adj[v3] &= ~(1 << v1)
        adj[v2] |= 1 << v3
        adj[v3] |= 1 << v2
    return from_adjacency(adj)


def _tree_path(adj, s, t) -> set[int]:
    prev = {s: None}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == t:
            break
        for w in _bits(adj[u]):
            if w not in prev:
                prev[w] = u
                stack.append(w)
    path = set()
    u = t
    while u is not None:
        path.add(u)
        u = prev[u]
    return path


def _chain_to(D: DegreeMultiset, cap: int = 40) -> SplitChain:
    if D.p > cap:
        raise CapExceeded(f"chain search is capped at p={cap}")
    goal = D.entries
    start = multiset_initial(D.p).entries
    parent = {start: None}
    frontier = [start]
    # splitting strictly raises the square sum, so search by layers
    while frontier and goal not in parent:
        nxt = []
        for ent in frontier:
            for c, m in Counter(ent).items():
                if c >= 2 and m >= 2:
                    child = multiset_split(DegreeMultiset(D.p, ent), c).entries
                    if child not in parent:
                        parent[child] = (ent, c)
                        nxt.append(child)
        frontier = nxt
    if goal not in parent:
        raise ConstructionError(f"{D} is not reachable from the initial multiset")
    steps = []
    cur = goal
    while parent[cur] is not None:
        cur, c = parent[cur]
        steps.append(c)
    return SplitChain(D.p, tuple(reversed(steps)))


def direct_triangle_count(G) -> int:
    """Triangle count by a plain triple loop over vertex triples (O(n^3))."""
    adj = G.adj
    n = G.order
    t = 0
    for a in range(n):
        ra = adj[a]
        for b in range(a + 1, n):
            if not ra >> b & 1:
                continue
            rb = adj[b]
            for c in range(b + 1, n):
                if ra >> c & 1 and rb >> c & 1:
                    t += 1
    return t


def clique_count(G, k: int) -> int:
    """Number of k-cliques, by extending cliques through common neighbourhoods."""
    adj = G.adj

    def rec(cand: int, depth: int) -> int:
        if depth == 1:
            return cand.bit_count()
        total = 0
        for v in _bits(cand):
            total += rec(cand & adj[v] & ~((1 << (v + 1)) - 1), depth - 1)
        return total

    if k == 0:
        return 1
    return rec((1 << G.order) - 1, k)


def complement_triangle_formula(G) -> int:
    """Triangles in the complement of G from counts in G itself."""
    n = G.order
    m = G.size
    return comb(n, 3) - m * (n - 2) + sum(comb(d, 2) for d in G.degrees()) - clique_count(G, 3)


def forest_complement_count(p: int, n: int) -> int:
    """Triangles in the complement of the path on p+2 vertices padded to n+1 vertices."""
    if p > n - 1:
        raise ValueError("need p <= n-1")
    return comb(n + 1, 3) - (p + 1) * (n - 1) + p


def construct_triangle_graph(n: int, h: int) -> Graph:
    """A graph on exactly n+1 vertices with exactly h triangles, for h <= C(n,3)."""
    if n < 1 or not 0 <= h <= comb(n, 3):
        raise ValueError(f"need n >= 1 and 0 <= h <= C(n,3) = {comb(n, 3)}")
    if h == 0:
        return make_graph(n + 1, [])
    if n >= 2 and h <= comb(n - 1, 3):
        G = construct_clique_graph(n - 1, 3, h)
        return Graph(n + 1, G.edges)
    # band with forest_complement_count(p+1) < h <= forest_complement_count(p)
    p = n - 2
    while forest_complement_count(p, n) < h:
        p -= 1
        if p < 0:
            raise ConstructionError("no band found")
    steps = h - forest_complement_count(p + 1, n)
    if steps <= staircase_length(p + 1):
        chain = staircase_chain(p + 1, steps)
    else:
        # only small n get here; the staircase suffices from n = 130 on
        chain = long_chain(p + 1, steps)
    tree = tree_from_degrees(chain)
    forest = Graph(n + 1, tree.edges)
    return complement(forest)


def _successors(ent: tuple) -> list[tuple]:
    out = []
    for c, m in Counter(ent).items():
        if c >= 2 and m >= 2:
            lst = list(ent)
            lst.remove(c)
            lst.remove(c)
            lst += [c + 1, c - 1]
            out.append(tuple(sorted(lst, reverse=True)))
    return out


LONGEST_CHAIN_CAP = 12
CHAIN_SEARCH_CAP = 40


@lru_cache(maxsize=None)
def _longest_from(ent: tuple) -> int:
    return 1 + max((_longest_from(s) for s in _successors(ent)), default=0)


def long_chain(p: int, steps: int) -> SplitChain:
    """Any chain of exactly ``steps`` splits from D_0^p, found by memoised search."""
    if p > CHAIN_SEARCH_CAP:
        raise CapExceeded(f"chain search is capped at p={CHAIN_SEARCH_CAP}")
    ent = multiset_initial(p).entries
    if _longest_from(ent) - 1 < steps:
        raise ConstructionError(f"the longest chain in D^{p} has {_longest_from(ent) - 1} splits, {steps} requested")
    out = []
    for remaining in range(steps, 0, -1):
        nxt = next(s for s in _successors(ent) if _longest_from(s) >= remaining)
        c = next(c for c in set(ent) if c >= 2 and ent.count(c) >= 2
                 and multiset_split(DegreeMultiset(p, ent), c).entries == nxt)
        out.append(c)
        ent = nxt
    return SplitChain(p, tuple(out))


def longest_chain_length(p: int, cap: int = LONGEST_CHAIN_CAP) -> int:
    """s(p): number of multisets in a longest chain of D^p."""
    if p > cap:
        raise CapExceeded(f"longest_chain_length is capped at p={cap}")

    return _longest_from(multiset_initial(p).entries)
