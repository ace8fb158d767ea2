"""Isomorph-free enumeration of graphs by canonical vertex augmentation.

Each graph on n vertices is produced from exactly one parent on n-1
vertices: the one obtained by deleting a distinguished vertex. A child is
kept iff the newly added vertex lies in the orbit of that distinguished
vertex. The distinguished vertex is the first vertex, in canonical order,
among those maximising (degree, sorted neighbour degrees).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterator

from .canon import _orbit_roots, canon
from .graphs import CapExceeded, Graph, _bits, from_adjacency

__all__ = ["enumerate_nonisomorphic", "enumerate_adjacency", "KNOWN_CLASS_COUNTS", "MAX_ENUM_ORDER"]

MAX_ENUM_ORDER = 9
# OEIS A000088
KNOWN_CLASS_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668)

_PLAIN = ()


def _keys(n):
    return [_PLAIN] * n


def _subset_orbit_reps(m: int, gens: list[list[int]]) -> list[int]:
    total = 1 << m
    if not gens:
        return list(range(total))
    # per generator, image of each single bit
    images = [[1 << g[v] for v in range(m)] for g in gens]
    seen = bytearray(total)
    reps = []
    for s in range(total):
        if seen[s]:
            continue
        reps.append(s)
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for img in images:
                y = 0
                for v in _bits(x):
                    y |= img[v]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


def _invariants(adj: list[int]) -> list[tuple]:
    deg = [r.bit_count() for r in adj]
    return [(deg[v], tuple(sorted(deg[u] for u in _bits(adj[v])))) for v in range(len(adj))]


def _children(parent: tuple[int, ...], gens: list[list[int]], want_gens: bool) -> list[tuple]:
    m = len(parent)
    n = m + 1
    keys = _keys(n)
    new_bit = 1 << m
    out = []
    seen_codes = set()
    for s in _subset_orbit_reps(m, gens):
        adj = [row | new_bit if s >> v & 1 else row for v, row in enumerate(parent)]
        adj.append(s)
        inv = _invariants(adj)
        top = max(inv)
        if inv[m] != top:
            continue
        res = canon(n, adj, keys)
        if inv.count(top) > 1:
            w = next(v for v in res.order if inv[v] == top)
            if w != m:
                roots = _orbit_roots(n, res.generators)
                if roots[w] != roots[m]:
                    if canon(n, adj, keys, [w]).code[3] != canon(n, adj, keys, [m]).code[3]:
                        continue
        code = res.code[3]
        if code in seen_codes:
            continue
        seen_codes.add(code)
        out.append((tuple(adj), res.generators if want_gens else None))
    return out


def _expand_chunk(args) -> list[tuple]:
    parents, want_gens = args
    out = []
    for adj, gens in parents:
        out.extend(_children(adj, gens, want_gens))
    return out


def _expand(level: list[tuple], want_gens: bool, workers: int | None) -> list[tuple]:
    if not workers or workers <= 1 or len(level) < 64:
        return _expand_chunk((level, want_gens))
    size = max(1, len(level) // (workers * 8))
    chunks = [(level[i:i + size], want_gens) for i in range(0, len(level), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_expand_chunk, chunks):
            out.extend(part)
    return out


@lru_cache(maxsize=None)
def _level(n: int) -> tuple:
    # cached for n < MAX_ENUM_ORDER; each entry is (adjacency rows, automorphism generators)
    if n == 0:
        return (((), []),)
    return tuple(_expand(list(_level(n - 1)), True, None))


def _resolve_workers(workers):
    if workers is None:
        env = os.environ.get("HOMREC_THREADS")
        return int(env) if env else None
    return workers


def enumerate_adjacency(n: int, exactly: bool = True, workers: int | None = None) -> Iterator[tuple[int, ...]]:
    """Like :func:`enumerate_nonisomorphic` but yields bitset rows."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ENUM_ORDER:
        raise CapExceeded(f"enumeration is capped at {MAX_ENUM_ORDER} vertices, got {n}")
    orders = [n] if exactly else range(n + 1)
    workers = _resolve_workers(workers)
    for k in orders:
        if k < MAX_ENUM_ORDER:
            for adj, _ in _level(k):
                yield adj
        else:
            for adj, _ in _expand(list(_level(k - 1)), False, workers):
                yield adj


def enumerate_nonisomorphic(n: int, exactly: bool = True, workers: int | None = None) -> Iterator[Graph]:
    """One graph per isomorphism class on exactly ``n`` (or at most ``n``) vertices.

    The order is deterministic and independent of ``workers``.
    """
    for adj in enumerate_adjacency(n, exactly, workers):
        yield from_adjacency(adj)
