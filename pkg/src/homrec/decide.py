"""Deciders for reconstructability instances and the count-region explorer.

Two exact search methods back :func:`decide_bounded`:

``enumerate``
    scan isomorphism classes of hosts by ascending order (plus colourings or
    label placements for decorated graphs).
``images``
    if G realises every constraint, so does the subgraph formed by the
    images of all homomorphisms (or copies, for subgraph counts) of the
    patterns with positive count. That subgraph is a quotient of the
    disjoint union D of h_i copies of each such F_i, so it suffices to search
    partitions of V(D) into independent, colour-homogeneous classes. Partial
    quotients only grow, and hom/sub counts are monotone under growth, which
    gives strong pruning.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from itertools import product
from math import comb, isqrt
from typing import Iterable, Sequence

from .counting import _allowed_masks, _backtrack, hom_count, sub_count
from .canon import aut_count
from .generate import MAX_ENUM_ORDER, KNOWN_CLASS_COUNTS, enumerate_adjacency
from .graphs import (
    CapExceeded,
    ColouredGraph,
    Graph,
    GraphError,
    LabelledGraph,
    _bits,
    components,
    from_adjacency,
    induced_subgraph,
)

__all__ = [
    "Constraint",
    "Instance",
    "Verdict",
    "YES",
    "NO",
    "UNKNOWN",
    "decide_bounded",
    "decide_unbounded",
    "verify_witness",
    "region_map",
    "region_csv",
    "kk_bound",
    "edge_vertex_feasible",
    "default_cap",
]

YES, NO, UNKNOWN = "yes", "no", "unknown"
KINDS = ("hom", "sub")
DEFAULT_UNBOUNDED_CAP = 16
COLOURED_ATTEMPT_CAP = 10**8
DEFAULT_NODE_BUDGET = 2_000_000


def default_cap() -> int:
    env = os.environ.get("HOMREC_CAP")
    return int(env) if env else DEFAULT_UNBOUNDED_CAP


def graph_kind(G) -> str:
    if isinstance(G, ColouredGraph):
        return "coloured"
    if isinstance(G, LabelledGraph):
        return "labelled"
    return "plain"


@dataclass(frozen=True)
class Constraint:
    pattern: object
    count: int
    kind: str = "hom"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if int(self.count) < 0:
            raise ValueError("counts are non-negative")
        object.__setattr__(self, "count", int(self.count))

    def evaluate(self, G) -> int:
        return hom_count(self.pattern, G) if self.kind == "hom" else sub_count(self.pattern, G)


@dataclass(frozen=True)
class Instance:
    constraints: tuple
    size_bound: int | None = None

    def __post_init__(self):
        cons = tuple(self.constraints)
        if not cons:
            raise ValueError("an instance needs at least one constraint")
        if len({c.kind for c in cons}) > 1:
            raise ValueError("constraints must share one count kind")
        if len({graph_kind(c.pattern) for c in cons}) > 1:
            raise ValueError("patterns must share one graph kind")
        object.__setattr__(self, "constraints", cons)

    @property
    def kind(self) -> str:
        return self.constraints[0].kind

    @property
    def graph_kind(self) -> str:
        return graph_kind(self.constraints[0].pattern)

    def images_bound(self) -> int:
        """Size of the union of all images: sum of h_i * |V(F_i)|."""
        return sum(c.count * c.pattern.order for c in self.constraints)


@dataclass
class Verdict:
    status: str
    witness: object = None
    reason: str = ""
    bound: int | None = None
    recipe: list | None = None
    stats: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {YES: 0, NO: 1, UNKNOWN: 2}[self.status]

    def __bool__(self):
        return self.status == YES


def verify_witness(instance: Instance, G, size_bound: int | None = None) -> bool:
    if size_bound is not None and G.order > size_bound:
        return False
    try:
        return all(c.evaluate(G) == c.count for c in instance.constraints)
    except GraphError:
        return False


# enumeration method


def _palette(instance: Instance) -> list[int]:
    cols = set()
    for c in instance.constraints:
        cols.update(c.pattern.colours)
    return sorted(cols)


def _label_set(instance: Instance) -> list[int]:
    labels = set()
    for c in instance.constraints:
        labels.update(c.pattern.label_map)
    return sorted(labels)


def _decorations(instance: Instance, n: int):
    gk = instance.graph_kind
    if gk == "plain":
        yield None
    elif gk == "coloured":
        pal = _palette(instance)
        yield from product(pal, repeat=n)
    else:
        labels = _label_set(instance)
        if n == 0 and labels:
            return
        for placement in product(range(n), repeat=len(labels)):
            yield tuple(zip(labels, placement))


def _decorated(base: Graph, deco, gk: str):
    if gk == "coloured":
        return ColouredGraph(base, deco)
    if gk == "labelled":
        return LabelledGraph(base, deco)
    return base


def _enumerate_attempts(instance: Instance, bound: int) -> int:
    gk = instance.graph_kind
    total = 0
    for n in range(bound + 1):
        classes = KNOWN_CLASS_COUNTS[n]
        if gk == "coloured":
            total += classes * max(1, len(_palette(instance))) ** n
        elif gk == "labelled":
            total += classes * n ** len(_label_set(instance))
        else:
            total += classes
    return total


def _decide_enumerate(instance: Instance, bound: int, workers=None) -> Verdict:
    if bound > MAX_ENUM_ORDER:
        return Verdict(UNKNOWN, reason=f"enumeration capped at {MAX_ENUM_ORDER} vertices", bound=bound)
    attempts = _enumerate_attempts(instance, bound)
    if attempts > COLOURED_ATTEMPT_CAP:
        return Verdict(UNKNOWN, reason=f"{attempts} host candidates exceed the cap {COLOURED_ATTEMPT_CAP}", bound=bound)
    gk = instance.graph_kind
    checked = 0
    for n in range(bound + 1):
        for adj in enumerate_adjacency(n, exactly=True, workers=workers):
            base = from_adjacency(adj)
            for deco in _decorations(instance, n):
                G = _decorated(base, deco, gk)
                checked += 1
                if verify_witness(instance, G):
                    return Verdict(YES, witness=G, bound=bound, stats={"checked": checked})
    return Verdict(NO, reason=f"no host on at most {bound} vertices", bound=bound, stats={"checked": checked})


# images method


class _Budget(Exception):
    pass


class _ImageSearch:
    def __init__(self, instance: Instance, max_order: int, node_budget: int):
        self.instance = instance
        self.kind = instance.kind
        self.gk = instance.graph_kind
        self.max_order = max_order
        self.node_budget = node_budget
        self.nodes = 0
        self.best = None
        self.best_order = max_order + 1

        # D: copies of positive patterns, vertices listed copy by copy
        verts = []       # (copy id, pattern vertex)
        copies = []      # (constraint index, first D index, pattern)
        for ci, c in enumerate(instance.constraints):
            if c.count == 0 or c.pattern.order == 0:
                continue
            F = c.pattern
            order = _connected_order(F)
            for _ in range(c.count):
                start = len(verts)
                copies.append((ci, start, F, order))
                for v in order:
                    verts.append((len(copies) - 1, v))
        self.verts = verts
        self.copies = copies
        self.size = len(verts)
        # per D vertex: earlier D vertices adjacent in its copy
        self.back = []
        self.colour = []
        self.labels = []
        copy_pos = {}
        for idx, (cid, v) in enumerate(verts):
            copy_pos[(cid, v)] = idx
        for idx, (cid, v) in enumerate(verts):
            F = copies[cid][2]
            self.back.append([copy_pos[(cid, u)] for u in _bits(F.adj[v]) if copy_pos[(cid, u)] < idx])
            self.colour.append(F.colours[v] if self.gk == "coloured" else None)
            if self.gk == "labelled":
                self.labels.append(sorted(a for a, w in F.labels if w == v))
            else:
                self.labels.append([])
        self.prev_start = [None] * len(copies)
        for cid in range(1, len(copies)):
            if copies[cid][0] == copies[cid - 1][0]:
                self.prev_start[cid] = copies[cid - 1][1]
        self.copy_end = {}
        for cid, (_, start, F, _) in enumerate(copies):
            self.copy_end[start + F.order - 1] = cid
        self.all_labels = _label_set(instance) if self.gk == "labelled" else []
        self.zero = [c for c in instance.constraints if c.count == 0]
        self.positive = [c for c in instance.constraints if c.count > 0]
        self.pos_parts = []
        for c in self.positive:
            F = c.pattern
            comps = components(F)
            parts = [induced_subgraph(F, comp) for comp in comps] if self.kind == "hom" and len(comps) > 1 else []
            self.pos_parts.append(parts)
        self.auts = {id(c.pattern): aut_count(c.pattern) for c in instance.constraints if c.kind == "sub"}

    # quotient bookkeeping: classes get ids 0..k-1 in order of creation
    def _graph(self, k: int, adj: list[int], ccol: list, clabels: dict):
        base = from_adjacency(adj[:k])
        if self.gk == "coloured":
            return ColouredGraph(base, tuple(ccol[:k]))
        if self.gk == "labelled":
            return LabelledGraph(base, tuple(clabels.items()))
        return base

    def _count(self, c: Constraint, G, pattern=None) -> int:
        F = c.pattern if pattern is None else pattern
        try:
            allowed = _allowed_masks(F, G)
        except GraphError:
            return 0
        if c.kind == "hom":
            return _backtrack(F, G, allowed, "hom")
        inj = _backtrack(F, G, allowed, "inj")
        return inj // self.auts[id(c.pattern)]

    def _feasible(self, G, partial_labels: bool) -> bool:
        for c in self.zero:
            if self._count(c, G):
                return False
        for c, parts in zip(self.positive, self.pos_parts):
            if parts:
                prod = 1
                for P in parts:
                    x = self._count(c, G, P)
                    if x > c.count:
                        return False
                    prod *= x
                if prod > c.count:
                    return False
            elif self._count(c, G) > c.count:
                return False
        return True

    def run(self) -> Verdict:
        n = self.size
        assign = [-1] * n
        adj: list[int] = [0] * (n + 1)
        ccol: list = [None] * (n + 1)
        clabels: dict = {}
        images: dict = {}  # constraint index -> set of copy images
        self._images = images

        def rec(i: int, k: int):
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise _Budget
            if k >= self.best_order:
                return
            if i == n:
                self._leaf(k, adj, ccol, dict(clabels))
                return
            forced = None
            for a in self.labels[i]:
                if a in clabels:
                    if forced is not None and forced != clabels[a]:
                        return
                    forced = clabels[a]
            cid = self.verts[i][0]
            ci, start, F, _ = self.copies[cid]
            options = list(range(k)) if forced is None else [forced]
            if forced is None and k + 1 < self.best_order and k + 1 <= self.max_order:
                options.append(k)
            back_classes = [assign[j] for j in self.back[i]]
            # copies of one pattern are placed with strictly increasing class tuples
            prev = self.prev_start[cid]
            floor = -1
            if prev is not None:
                p = i - start
                if assign[start:i] == assign[prev:prev + p]:
                    floor = assign[prev + p]
            last_in_copy = i in self.copy_end
            for c in options:
                if c < floor or (last_in_copy and c == floor):
                    continue
                if c < k:
                    if self.gk == "coloured" and ccol[c] != self.colour[i]:
                        continue
                    if c in back_classes:
                        continue
                    if self.kind == "sub" and any(assign[j] == c for j in range(start, i)):
                        continue
                newk = k + 1 if c == k else k
                saved_row = adj[c]
                saved_rows = [(b, adj[b]) for b in back_classes]
                added = False
                for b in back_classes:
                    if not adj[c] >> b & 1:
                        added = True
                    adj[c] |= 1 << b
                    adj[b] |= 1 << c
                if c == k:
                    ccol[c] = self.colour[i]
                new_labels = [a for a in self.labels[i] if a not in clabels]
                for a in new_labels:
                    clabels[a] = c
                assign[i] = c
                ok = True
                key = None
                if i in self.copy_end:
                    key = self._copy_key(cid, assign, adj)
                    seen = images.setdefault(ci, set())
                    if key in seen:
                        ok = False
                if ok and (added or c == k or new_labels):
                    ok = self._feasible(self._graph(newk, adj, ccol, clabels), True)
                if ok:
                    if key is not None:
                        images[ci].add(key)
                    rec(i + 1, newk)
                    if key is not None:
                        images[ci].discard(key)
                assign[i] = -1
                for a in new_labels:
                    del clabels[a]
                for b, row in saved_rows:
                    adj[b] = row
                adj[c] = saved_row
                if c == k:
                    adj[c] = 0
                    ccol[c] = None

        try:
            rec(0, 0)
        except _Budget:
            if self.best is not None:
                return Verdict(UNKNOWN, witness=self.best, reason="node budget exhausted before minimality was proven",
                               bound=self.max_order, stats={"nodes": self.nodes})
            return Verdict(UNKNOWN, reason=f"node budget {self.node_budget} exhausted", bound=self.max_order,
                           stats={"nodes": self.nodes})
        if self.best is not None:
            return Verdict(YES, witness=self.best, bound=self.max_order, stats={"nodes": self.nodes})
        return Verdict(NO, reason=f"no host on at most {self.max_order} vertices", bound=self.max_order,
                       stats={"nodes": self.nodes})

    def _copy_key(self, cid, assign, adj):
        _, start, F, order = self.copies[cid]
        if self.kind == "hom":
            return tuple(assign[start:start + F.order])
        # a subgraph copy is its vertex set together with its edge set
        cls = assign[start:start + F.order]
        where = {v: cls[p] for p, v in enumerate(order)}
        edges = frozenset(frozenset((where[u], where[v])) for u, v in F.edges)
        return (frozenset(cls), edges)

    def _leaf(self, k, adj, ccol, clabels):
        missing = [a for a in self.all_labels if a not in clabels]
        room = self.best_order - 1 - k
        for placement in _label_placements(missing, k, room):
            extra = max((p - k + 1 for p in placement if p >= k), default=0)
            total = k + extra
            if total >= self.best_order or total > self.max_order:
                continue
            rows = adj[:k] + [0] * extra
            labels = dict(clabels)
            labels.update(zip(missing, placement))
            base = from_adjacency(rows)
            if self.gk == "coloured":
                G = ColouredGraph(base, tuple(ccol[:k]))
            elif self.gk == "labelled":
                G = LabelledGraph(base, tuple(labels.items()))
            else:
                G = base
            if verify_witness(self.instance, G):
                self.best = G
                self.best_order = total


def _label_placements(missing: list, k: int, room: int):
    """Place each missing label on an existing class or on a fresh isolated vertex."""
    if not missing:
        yield ()
        return

    def rec(i, fresh, acc):
        if i == len(missing):
            yield tuple(acc)
            return
        for p in range(k + fresh):
            yield from rec(i + 1, fresh, acc + [p])
        if fresh < room:
            yield from rec(i + 1, fresh + 1, acc + [k + fresh])

    yield from rec(0, 0, [])


def _connected_order(F) -> list[int]:
    adj = F.adj
    order, mask = [], 0
    left = set(range(F.order))
    while left:
        v = max(left, key=lambda u: ((adj[u] & mask).bit_count(), adj[u].bit_count(), -u))
        order.append(v)
        mask |= 1 << v
        left.discard(v)
    return order


def _decide_images(instance: Instance, bound: int, node_budget: int) -> Verdict:
    search = _ImageSearch(instance, bound, node_budget)
    verdict = search.run()
    verdict.stats["union_size"] = search.size
    return verdict


def decide_bounded(instance: Instance, bound: int | None = None, method: str = "auto",
                   node_budget: int = DEFAULT_NODE_BUDGET, workers: int | None = None) -> Verdict:
    """Is there a host on at most ``bound`` vertices meeting every constraint?

    Yes verdicts carry a witness of minimum order.
    """
    bound = instance.size_bound if bound is None else bound
    if bound is None:
        raise ValueError("decide_bounded needs a size bound")
    if method not in ("auto", "enumerate", "images"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        small_plain = instance.graph_kind == "plain" and bound <= 7
        method = "enumerate" if small_plain else "images"
        if method == "images" and instance.images_bound() > 40 and bound <= MAX_ENUM_ORDER \
                and _enumerate_attempts(instance, bound) <= COLOURED_ATTEMPT_CAP:
            method = "enumerate"
    if method == "enumerate":
        verdict = _decide_enumerate(instance, bound, workers)
    else:
        verdict = _decide_images(instance, bound, node_budget)
    verdict.stats["method"] = method
    if verdict.status == YES:
        assert verify_witness(instance, verdict.witness, bound)
    return verdict


def decide_unbounded(instance: Instance, cap: int | None = None, node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Decide without a size bound, using the union-of-images bound when it is small enough."""
    cap = default_cap() if cap is None else cap
    bound = instance.images_bound()
    if bound > cap:
        return Verdict(UNKNOWN, reason=f"union-of-images bound {bound} exceeds cap {cap}", bound=bound)
    verdict = _decide_images(instance, bound, node_budget)
    verdict.bound = bound
    return verdict


# region map and closed forms


def _fast_counter(F, kind: str):
    edges = F.order == 2 and F.size == 1
    tri = F.order == 3 and F.size == 3
    if kind == "sub" and edges:
        return lambda G: G.size
    if kind == "sub" and tri:
        return triangle_count
    if kind == "hom":
        return lambda G: hom_count(F, G)
    if kind == "sub":
        a = aut_count(F)
        return lambda G: _backtrack(F, G, _allowed_masks(F, G), "inj") // a
    if kind == "indsub":
        a = aut_count(F)
        return lambda G: _backtrack(F, G, _allowed_masks(F, G, True), "ind") // a
    raise ValueError(f"unknown count kind {kind!r}")


def triangle_count(G) -> int:
    """Triangles counted once each as v < u < w with bitset intersections."""
    adj = G.adj
    t = 0
    for v in range(G.order):
        higher = adj[v] >> (v + 1) << (v + 1)
        for u in _bits(higher):
            t += ((adj[u] & higher) >> (u + 1)).bit_count()
    return t


def region_map(n: int, patterns: Sequence, kind: str | Sequence[str] = "sub", exactly: bool = True,
               workers: int | None = None) -> set[tuple[int, ...]]:
    """All count vectors realised by plain hosts on exactly (or at most) n vertices."""
    if n > MAX_ENUM_ORDER:
        raise CapExceeded(f"region_map is capped at {MAX_ENUM_ORDER} vertices")
    kinds = [kind] * len(patterns) if isinstance(kind, str) else list(kind)
    counters = [_fast_counter(F, k) for F, k in zip(patterns, kinds)]
    out = set()
    for adj in enumerate_adjacency(n, exactly=exactly, workers=workers):
        G = from_adjacency(adj)
        out.add(tuple(f(G) for f in counters))
    return out


def region_csv(vectors: Iterable[Sequence[int]], width: int | None = None) -> str:
    rows = sorted(tuple(v) for v in vectors)
    k = width if width is not None else (len(rows[0]) if rows else 0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"v{i + 1}" for i in range(k)])
    w.writerows(rows)
    return buf.getvalue()


def kk_bound(m: int) -> int:
    """Largest triangle count allowed by the Kruskal-Katona bound for m edges.

    With x real and C(x,2) = m this is floor(x(x-1)(x-2)/6) = floor(m(s-3)/6)
    where s = sqrt(1+8m), computed in exact integer arithmetic.
    """
    if m < 0:
        raise ValueError("edge count must be non-negative")
    return (isqrt(m * m * (1 + 8 * m)) - 3 * m) // 6


def edge_vertex_feasible(h1: int, h2: int) -> bool:
    """Is there a graph with h1 vertices and h2 / 2 edges?"""
    return h1 >= 0 and h2 >= 0 and h2 % 2 == 0 and h2 <= h1 * (h1 - 1)
