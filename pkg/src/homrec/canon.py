"""Canonical labelling by partition refinement and individualisation.

The search follows the usual individualise-refine scheme: refine the
colour partition to an equitable one, branch on the first non-singleton
cell, and take the largest leaf code as canonical. Leaves with equal codes
give automorphisms, which are used to skip branches that lie in the same
orbit as one already explored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import ColouredGraph, Graph, LabelledGraph, _bits

__all__ = ["CanonicalCode", "CanonResult", "canonical_code", "canonical_form", "aut_count", "automorphisms_generators", "canon"]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    code: bytes

    def __repr__(self) -> str:
        return f"CanonicalCode({self.code.hex()})"


@dataclass
class CanonResult:
    code: tuple          # (n, colour keys in canonical order, adjacency int)
    order: list          # canonical position -> vertex
    generators: list     # automorphisms as lists v -> g(v)


def _vertex_keys(G) -> list:
    if isinstance(G, ColouredGraph):
        return [(c,) for c in G.colours]
    if isinstance(G, LabelledGraph):
        return [tuple(sorted(s)) for s in G.vertex_labels()]
    return [()] * G.order


def _initial_cells(n: int, keys: Sequence, individualised: Sequence[int] = ()) -> list[list[int]]:
    pinned = {v: i for i, v in enumerate(individualised)}
    groups: dict = {}
    for v in range(n):
        k = (0, pinned[v]) if v in pinned else (1, keys[v])
        groups.setdefault(k, []).append(v)
    return [groups[k] for k in sorted(groups)]


def refine(adj: Sequence[int], cells: list[list[int]], active: Sequence[int] | None = None) -> list[list[int]]:
    """Coarsest equitable refinement, splitting in an isomorphism-invariant way.

    Splitter-queue version: a cell is only re-examined against splitters
    that changed, and only cells touching the splitter's neighbourhood are
    inspected. ``active`` lists the cell positions to start from; the
    default is all of them. Passing only the freshly individualised cell is
    enough when the rest of the partition was already equitable.
    """
    cells = [list(c) for c in cells]
    n = sum(len(c) for c in cells)
    cell_of = [0] * n
    for i, c in enumerate(cells):
        for v in c:
            cell_of[v] = i
    queue = list(range(len(cells))) if active is None else list(active)  # positions, processed FIFO
    queued = [False] * len(cells)
    for i in queue:
        queued[i] = True
    masks = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
    head = 0
    while head < len(queue):
        si = queue[head]
        head += 1
        queued[si] = False
        smask = masks[si]
        touched = 0
        for v in _bits(smask):
            touched |= adj[v]
        hit = sorted({cell_of[v] for v in _bits(touched)})
        for ci in hit:
            c = cells[ci]
            if len(c) == 1:
                continue
            groups: dict = {}
            for v in c:
                groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(groups) == 1:
                continue
            parts = [groups[k] for k in sorted(groups)]
            # the first fragment keeps position ci, the rest get new positions
            was_queued = queued[ci]
            big = max(range(len(parts)), key=lambda j: (len(parts[j]), -j))
            ids = [ci]
            for _ in parts[1:]:
                cells.append(None)
                masks.append(0)
                queued.append(False)
                ids.append(len(cells) - 1)
            for j, (pid, part) in enumerate(zip(ids, parts)):
                cells[pid] = part
                m = 0
                for v in part:
                    m |= 1 << v
                    cell_of[v] = pid
                masks[pid] = m
                if (was_queued or j != big) and not queued[pid]:
                    queue.append(pid)
                    queued[pid] = True
    # cells stay in creation order, which the splitting process fixes invariantly
    return cells
def _leaf_code(adj: Sequence[int], order: list[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for v in order:
        row = 0
        for u in _bits(adj[v]):
            row |= 1 << (n - 1 - pos[u])
        code = (code << n) | row
    return code


def _orbit_roots(n: int, gens: list[list[int]], start: list[int] | None = None) -> list[int]:
    parent = list(start) if start is not None else list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            if g[v] == v:
                continue
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canon(n: int, adj: Sequence[int], keys: Sequence, individualised: Sequence[int] = ()) -> CanonResult:
    """Canonical labelling of a (coloured) graph given as bitset rows."""
    root = refine(adj, _initial_cells(n, keys, individualised))
    seen: dict[int, list[int]] = {}
    gens: list[list[int]] = []
    best = [None, None]  # code, order

    def record_auto(a: list[int], b: list[int]):
        g = [0] * n
        for x, y in zip(a, b):
            g[x] = y
        if any(g[v] != v for v in range(n)):
            gens.append(g)

    def dfs(cells: list[list[int]], prefix: list[int]):
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), -1)
        if idx < 0:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            prev = seen.get(code)
            if prev is not None:
                record_auto(prev, order)
                return
            if len(seen) < 64:
                seen[code] = order
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
                seen[code] = order
            return
        cell = cells[idx]
        explored: list[int] = []
        known, parent = 0, {}  # sparse union-find over orbits of generators fixing the prefix

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for w in cell:
            if explored and gens:
                if len(gens) != known:
                    for g in gens[known:]:
                        if all(g[p] == p for p in prefix):
                            for v in cell:
                                a, b = find(v), find(g[v])
                                if a != b:
                                    parent[max(a, b)] = min(a, b)
                    known = len(gens)
                if parent:
                    rw = find(w)
                    if any(find(e) == rw for e in explored):
                        continue
            rest = [x for x in cell if x != w]
            child = cells[:idx] + [[w], rest] + cells[idx + 1:]
            dfs(refine(adj, child, [idx]), prefix + [w])
            explored.append(w)

    dfs(root, [])
    order = best[1] if best[1] is not None else []
    colour_seq = tuple(keys[v] for v in order)
    pin = tuple(order.index(v) for v in individualised) if individualised else ()
    return CanonResult((n, colour_seq, pin, best[0] or 0), order, gens)


def _encode(code: tuple) -> bytes:
    n, colours, pin, adjcode = code
    return repr((n, colours, pin)).encode() + b"|" + adjcode.to_bytes((n * n + 7) // 8 or 1, "big")


def canonical_code(G, individualised: Sequence[int] = ()) -> CanonicalCode:
    """Relabelling-invariant code; colour- and label-aware."""
    res = canon(G.order, G.adj, _vertex_keys(G), individualised)
    return CanonicalCode(_encode(res.code))


def canonical_form(G):
    """Return ``(code, order)`` where ``order[i]`` is the vertex placed at position i."""
    res = canon(G.order, G.adj, _vertex_keys(G))
    return CanonicalCode(_encode(res.code)), res.order


def automorphisms_generators(G) -> list[list[int]]:
    return canon(G.order, G.adj, _vertex_keys(G)).generators


def _aut(n: int, adj, keys, pinned: list[int]) -> int:
    cells = refine(adj, _initial_cells(n, keys, pinned))
    idx = next((i for i, c in enumerate(cells) if len(c) > 1), -1)
    if idx < 0:
        return 1
    cell = cells[idx]
    v = cell[0]
    base = canon(n, adj, keys, pinned)
    roots = _orbit_roots(n, base.generators) if base.generators else list(range(n))
    target = canon(n, adj, keys, pinned + [v]).code[3]
    orbit = 1
    for w in cell[1:]:
        if roots[w] == roots[v] or canon(n, adj, keys, pinned + [w]).code[3] == target:
            orbit += 1
    return orbit * _aut(n, adj, keys, pinned + [v])


def aut_count(G, fixed: Sequence[int] = ()) -> int:
    """Order of the automorphism group, optionally of the pointwise stabiliser of ``fixed``."""
    return _aut(G.order, G.adj, _vertex_keys(G), list(fixed))
