"""Exact homomorphism and subgraph counts by bitset backtracking.

Pattern vertices are mapped one at a time in an order where each vertex,
where possible, has an already-mapped neighbour; the candidate set for a
vertex is then the intersection of the host neighbourhoods of its mapped
neighbours. The last vertex is counted with a popcount instead of a loop.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .canon import aut_count
from .graphs import ColouredGraph, Graph, GraphError, LabelledGraph, _bits, components, induced_subgraph

__all__ = [
    "hom_count",
    "inj_count",
    "sub_count",
    "indsub_count",
    "surj_count",
    "surj_via_inclusion_exclusion",
    "hom_via_sub_decomposition",
    "hom_via_indsub_decomposition",
    "LabelError",
]


class LabelError(GraphError):
    """A pattern label does not occur in the host."""


def _kind(G) -> str:
    if isinstance(G, ColouredGraph):
        return "coloured"
    if isinstance(G, LabelledGraph):
        return "labelled"
    if isinstance(G, Graph):
        return "plain"
    raise TypeError(f"not a graph: {type(G).__name__}")


def _allowed_masks(F, G, induced: bool = False) -> list[int]:
    kf, kg = _kind(F), _kind(G)
    if kf != kg:
        raise GraphError(f"pattern is {kf} but host is {kg}")
    full = (1 << G.order) - 1
    allowed = [full] * F.order
    if kf == "coloured":
        by_colour: dict[int, int] = {}
        for v, c in enumerate(G.colours):
            by_colour[c] = by_colour.get(c, 0) | 1 << v
        allowed = [by_colour.get(c, 0) for c in F.colours]
    elif kf == "labelled":
        gmap = G.label_map
        for a, v in F.labels:
            if a not in gmap:
                raise LabelError(f"label {a} of the pattern is missing from the host")
            allowed[v] &= 1 << gmap[a]
        if induced:
            # G[U] may not carry labels the pattern does not have
            fl = F.label_map
            foreign = 0
            for a, v in G.labels:
                if a not in fl:
                    foreign |= 1 << v
            allowed = [m & ~foreign for m in allowed]
    return allowed


def _search_order(F, allowed: list[int], full: int) -> list[int]:
    n = F.order
    adj = F.adj
    placed: list[int] = []
    mask = 0
    remaining = set(range(n))
    while remaining:
        def key(v):
            return ((adj[v] & mask).bit_count(), allowed[v] != full, adj[v].bit_count(), -v)

        v = max(remaining, key=key)
        placed.append(v)
        mask |= 1 << v
        remaining.discard(v)
    return placed


def _backtrack(F, G, allowed: list[int], mode: str) -> int:
    """mode: 'hom', 'inj', 'ind' or 'surj'."""
    nf, ng = F.order, G.order
    if nf == 0:
        if mode == "surj":
            return 1 if ng == 0 else 0
        return 1
    if mode == "surj" and ng > nf:
        return 0
    if mode in ("inj", "ind") and ng < nf:
        return 0
    if any(a == 0 for a in allowed):
        return 0
    full = (1 << ng) - 1
    order = _search_order(F, allowed, full)
    pos = {v: i for i, v in enumerate(order)}
    fadj = F.adj
    gadj = G.adj
    back_nb = [[pos[u] for u in _bits(fadj[v]) if pos[u] < i] for i, v in enumerate(order)]
    back_non = [[j for j in range(i) if not fadj[v] >> order[j] & 1] for i, v in enumerate(order)]
    alw = [allowed[v] for v in order]
    img = [0] * nf
    last = nf - 1
    injective = mode in ("inj", "ind")
    induced = mode == "ind"
    surj = mode == "surj"

    def rec(i: int, used: int) -> int:
        cand = alw[i]
        for j in back_nb[i]:
            cand &= gadj[img[j]]
            if not cand:
                return 0
        if injective:
            cand &= ~used
            if induced:
                for j in back_non[i]:
                    cand &= ~gadj[img[j]]
        if surj:
            missing = (full & ~used).bit_count()
            if missing > nf - i:
                return 0
            if i == last:
                if missing == 0:
                    return cand.bit_count()
                if missing == 1:
                    return 1 if cand & ~used & full else 0
                return 0
        elif i == last:
            return cand.bit_count()
        total = 0
        for w in _bits(cand):
            img[i] = w
            total += rec(i + 1, used | 1 << w)
        return total

    return rec(0, 0)


def hom_count(F, G) -> int:
    """Number of homomorphisms F -> G respecting colours or labels."""
    allowed = _allowed_masks(F, G)
    comps = components(F)
    if len(comps) <= 1:
        return _backtrack(F, G, allowed, "hom")
    # hom is multiplicative over the components of the pattern
    total = 1
    for comp in comps:
        part = induced_subgraph(F, comp)
        total *= _backtrack(part, G, [allowed[v] for v in comp], "hom")
        if not total:
            return 0
    return total


def inj_count(F, G) -> int:
    return _backtrack(F, G, _allowed_masks(F, G), "inj")


def sub_count(F, G) -> int:
    """Number of subgraphs of G isomorphic to F."""
    inj = inj_count(F, G)
    return inj // aut_count(F) if inj else 0


def indsub_count(F, G) -> int:
    """Number of vertex sets U with G[U] isomorphic to F."""
    emb = _backtrack(F, G, _allowed_masks(F, G, induced=True), "ind")
    return emb // aut_count(F) if emb else 0


def surj_count(F, G) -> int:
    """Homomorphisms F -> G that hit every vertex of G."""
    return _backtrack(F, G, _allowed_masks(F, G), "surj")


def surj_via_inclusion_exclusion(F, G) -> int:
    """sum over U of (-1)^{|V(G) minus U|} hom(F, G[U])."""
    n = G.order
    total = 0
    for size in range(n + 1):
        sign = -1 if (n - size) % 2 else 1
        for U in combinations(range(n), size):
            H = induced_subgraph(G, U)
            try:
                total += sign * hom_count(F, H)
            except LabelError:
                # a sub-host missing one of the pattern's labels admits no homomorphism
                pass
    return total


def _types_on(k: int):
    from .generate import enumerate_nonisomorphic
    return list(enumerate_nonisomorphic(k, exactly=True))


def hom_via_sub_decomposition(F, G) -> int:
    """sub(F, G) as the sum over graphs H on |V(F)| vertices of sub(F, H) * indsub(H, G)."""
    if _kind(F) != "plain" or _kind(G) != "plain":
        raise GraphError("the decomposition is implemented for plain graphs")
    total = 0
    for H in _types_on(F.order):
        s = sub_count(F, H)
        if s:
            total += s * indsub_count(H, G)
    return total


def hom_via_indsub_decomposition(F, G) -> int:
    """hom(F, G) from induced counts of graphs on at most k = |V(F)| vertices.

    Valid only for hosts with more than k vertices.
    """
    if _kind(F) != "plain" or _kind(G) != "plain":
        raise GraphError("the decomposition is implemented for plain graphs")
    k, n = F.order, G.order
    if n <= k:
        raise ValueError(f"host needs more than {k} vertices, has {n}")
    total = 0
    for size in range(k + 1):
        coeff = comb(n - size - 1, k - size) * (-1 if (k - size) % 2 else 1)
        for H in _types_on(size):
            h = hom_count(F, H)
            if h:
                total += coeff * h * indsub_count(H, G)
    return total
