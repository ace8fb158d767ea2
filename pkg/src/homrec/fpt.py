"""Parameterised deciders: one hom constraint, or equal-size subgraph constraints.

For a connected pattern F, counts realised by disjoint unions of small hosts
form the numerical semigroup generated by the spectrum S(F), while every
realisable count lies in the group generated by S(F). Beyond a Bezout
threshold N both agree with the multiples of y = gcd S(F), which settles all
large h; small h fall back to an exhaustive host search.

Equal-size subgraph constraints reduce to a non-negative integer linear
system whose columns are the graphs on k vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd
from typing import Callable, Sequence

from .canon import canonical_code
from .counting import hom_count, sub_count
from .decide import NO, UNKNOWN, YES, Constraint, Instance, Verdict, decide_bounded
from .generate import enumerate_nonisomorphic
from .graph6 import emit_graph6
from .graphs import CapExceeded, Graph, is_connected, union_all

__all__ = [
    "Spectrum",
    "SemigroupData",
    "small_spectrum",
    "extended_gcd",
    "bezout_coefficients",
    "bezout_threshold",
    "semigroup_member",
    "semigroup_recipe",
    "single_hom_decide",
    "equisize_sub_decide",
    "solve_nonneg_linear",
    "minimal_feasible_sets",
    "recipe_json",
    "assemble_recipe",
]

SPECTRUM_CAP = 6
DEFAULT_SEARCH_CAP = 8
ASSEMBLE_LIMIT = 5000  # vertices; larger recipes are returned without a materialised witness


def all_graphs(G) -> bool:
    return True


@dataclass
class Spectrum:
    patterns: tuple
    values: tuple           # sorted; ints for one pattern, tuples for several
    hosts: dict = field(repr=False, default_factory=dict)  # value -> smallest host realising it
    host_kind: str = "all graphs"


@dataclass
class SemigroupData:
    generators: tuple
    gcd: int
    coefficients: tuple
    threshold: int
    gaps: tuple
    _reach: list = field(repr=False, default=None)  # DP predecessor table below the threshold

    def is_gap(self, h: int) -> bool:
        return h in set(self.gaps)


def small_spectrum(F, cap: int = SPECTRUM_CAP, host_class: Callable = all_graphs, kind: str = "hom") -> Spectrum:
    """Counts realised by hosts with at most max |V(F)| vertices, the empty host included."""
    patterns = tuple(F) if isinstance(F, (list, tuple)) else (F,)
    k = max(P.order for P in patterns)
    if k > cap:
        raise CapExceeded(f"spectrum enumeration is capped at {cap} vertices")
    count = hom_count if kind == "hom" else sub_count
    hosts: dict = {}
    for G in enumerate_nonisomorphic(k, exactly=False):
        if not host_class(G):
            continue
        vec = tuple(count(P, G) for P in patterns)
        key = vec[0] if len(patterns) == 1 else vec
        hosts.setdefault(key, G)
    return Spectrum(patterns, tuple(sorted(hosts)), hosts)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def bezout_coefficients(gens: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Left fold of the extended gcd: gcd and integer coefficients."""
    g = gens[0]
    coeffs = [1]
    for y in gens[1:]:
        g2, s, t = extended_gcd(g, y)
        coeffs = [s * c for c in coeffs] + [t]
        g = g2
    return g, tuple(coeffs)


def bezout_threshold(generators: Sequence[int]) -> SemigroupData:
    gens = tuple(sorted(set(int(g) for g in generators)))
    if not gens or any(g <= 0 for g in gens):
        raise ValueError("generators must be a nonempty set of positive integers")
    y, gamma = bezout_coefficients(gens)
    if min(gamma) >= 0:
        N = 0
    else:
        c = -min(gamma)
        N = c * gens[0] * sum(gens)
    # reach[v] = a generator g with v - g representable, None if unreachable
    reach: list = [None] * (N + 1)
    if N >= 0:
        reach[0] = 0
    for v in range(1, N + 1):
        for g in gens:
            if g <= v and reach[v - g] is not None:
                reach[v] = g
                break
    gaps = tuple(v for v in range(0, N, y) if reach[v] is None)
    return SemigroupData(gens, y, gamma, N, gaps, reach)


def semigroup_member(data: SemigroupData, h: int) -> bool:
    if h < 0:
        return False
    if h % data.gcd:
        return False
    if h >= data.threshold:
        return True
    return data._reach[h] is not None


def semigroup_recipe(data: SemigroupData, h: int) -> dict[int, int] | None:
    """Multiplicities m_g with sum m_g * g = h, or None."""
    if not semigroup_member(data, h):
        return None
    gens = data.generators
    if h < data.threshold or data.threshold == 0 and h == 0:
        out: dict[int, int] = {}
        v = h
        while v:
            g = data._reach[v]
            out[g] = out.get(g, 0) + 1
            v -= g
        return out
    if data.threshold == 0:
        # all coefficients are non-negative, so y itself is a combination
        q = h // data.gcd
        return {g: q * c for g, c in zip(gens, data.coefficients) if q * c}
    # the constructive step of the Bezout threshold argument
    y, y1 = data.gcd, gens[0]
    c = -min(data.coefficients)
    rest = (h - data.threshold) // y
    b = rest % (y1 // y)
    a = (rest - b) // (y1 // y)
    mult = [c * y1 + b * g for g in data.coefficients]
    mult[0] += a
    assert all(m >= 0 for m in mult)
    assert sum(m * g for m, g in zip(mult, gens)) == h
    return {g: m for g, m in zip(gens, mult) if m}


def recipe_json(recipe: Sequence[tuple]) -> str:
    return json.dumps([[g6, int(m)] for g6, m in recipe])


def assemble_recipe(recipe: Sequence[tuple], hosts: Sequence) -> Graph:
    return union_all(hosts, [m for _, m in recipe])


def _finish(recipe_pairs: list, verdict_reason: str, bound=None) -> Verdict:
    recipe = [(emit_graph6(H), m) for H, m in recipe_pairs]
    total = sum(H.order * m for H, m in recipe_pairs)
    witness = union_all([H for H, _ in recipe_pairs], [m for _, m in recipe_pairs]) if total <= ASSEMBLE_LIMIT else None
    return Verdict(YES, witness=witness, reason=verdict_reason, bound=bound, recipe=recipe)


@lru_cache(maxsize=64)
def _host_values(F, cap: int) -> dict:
    """hom value -> first host (smallest order) over all graphs with at most cap vertices."""
    out: dict = {}
    for G in enumerate_nonisomorphic(cap, exactly=False):
        out.setdefault(hom_count(F, G), G)
    return out


def single_hom_decide(F, h: int, search_cap: int = DEFAULT_SEARCH_CAP, host_class: Callable = all_graphs) -> Verdict:
    """Is there a graph G with hom(F, G) = h?  F must be connected."""
    if F.order == 0 or not is_connected(F):
        raise ValueError("the pattern must be a connected graph with at least one vertex")
    if h < 0:
        return Verdict(NO, reason="counts are non-negative")
    spec = small_spectrum(F, host_class=host_class)
    gens = [v for v in spec.values if v > 0]
    data = bezout_threshold(gens)
    if h % data.gcd:
        return Verdict(NO, reason=f"h is not a multiple of gcd S(F) = {data.gcd}")
    rec = semigroup_recipe(data, h)
    if rec is not None:
        pairs = [(spec.hosts[g], m) for g, m in sorted(rec.items())]
        branch = "threshold" if h >= data.threshold else "semigroup"
        return _finish(pairs, f"{branch}: disjoint union of small hosts (N = {data.threshold})")
    bound = h * F.order
    cap = min(bound, search_cap)
    hit = _host_values(F, cap).get(h)
    if hit is not None:
        return Verdict(YES, witness=hit, reason=f"host search on at most {cap} vertices", bound=cap,
                       recipe=[(emit_graph6(hit), 1)])
    if bound <= search_cap:
        return Verdict(NO, reason=f"no host on at most h*|V(F)| = {bound} vertices", bound=bound)
    return Verdict(UNKNOWN, reason=f"searched hosts up to {cap} vertices; the locality bound is {bound}", bound=bound)


# equal-size subgraph constraints


def solve_nonneg_linear(A: Sequence[Sequence[int]], b: Sequence[int], all_solutions: bool = False):
    """First solution of A x = b over the non-negative integers, or None.

    Columns are fixed in the given order; each variable is tried from its
    upper bound min_i floor(b_i / A[i][j]) downwards. With ``all_solutions``
    a list of every solution is returned instead.
    """
    rows = len(A)
    if rows != len(b):
        raise ValueError("A and b have different row counts")
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise ValueError("ragged matrix")
    if any(x < 0 for r in A for x in r) or any(x < 0 for x in b):
        raise ValueError("entries must be non-negative")
    for j in range(cols):
        if not any(A[i][j] for i in range(rows)):
            raise ValueError(f"column {j} is zero")
    # rows still coverable by columns j.. onwards
    cover = [0] * (cols + 1)
    for j in range(cols - 1, -1, -1):
        m = cover[j + 1]
        for i in range(rows):
            if A[i][j]:
                m |= 1 << i
        cover[j] = m
    x = [0] * cols
    found = []

    def rec(j: int, res: list) -> bool:
        for i in range(rows):
            if res[i] and not cover[j] >> i & 1:
                return False
        if j == cols:
            found.append(tuple(x))
            return not all_solutions
        ub = min(res[i] // A[i][j] for i in range(rows) if A[i][j])
        for v in range(ub, -1, -1):
            x[j] = v
            if rec(j + 1, [res[i] - v * A[i][j] for i in range(rows)]):
                return True
        x[j] = 0
        return False

    rec(0, list(b))
    if all_solutions:
        return found
    return found[0] if found else None


def minimal_feasible_sets(A, b) -> list[tuple[int, ...]]:
    """Column sets C admitting a solution positive exactly on C, minimal under inclusion."""
    cols = len(A[0]) if A else 0
    out: list[tuple[int, ...]] = []
    if not any(b):
        return [()]
    for size in range(1, cols + 1):
        for C in combinations(range(cols), size):
            if any(set(M) <= set(C) for M in out):
                continue
            sub = [[row[j] for j in C] for row in A]
            # positive solution on C: substitute x = 1 + x'
            shifted = [bi - sum(r) for bi, r in zip(b, sub)]
            if any(s < 0 for s in shifted):
                continue
            if solve_nonneg_linear(sub, shifted) is not None:
                out.append(C)
    return out


def _equisize_columns(k: int, patterns: Sequence) -> tuple[list, list[list[int]]]:
    hosts = sorted(enumerate_nonisomorphic(k, exactly=True), key=canonical_code)
    A = [[sub_count(F, H) for H in hosts] for F in patterns]
    keep = [j for j in range(len(hosts)) if any(A[i][j] for i in range(len(patterns)))]
    return [hosts[j] for j in keep], [[row[j] for j in keep] for row in A]


def equisize_sub_decide(constraints: Sequence) -> Verdict:
    """Decide sub(F_i, G) = h_i for connected patterns that all have k vertices."""
    pairs = []
    for c in constraints:
        if isinstance(c, Constraint):
            if c.kind != "sub":
                raise ValueError("equal-size deciding needs subgraph constraints")
            pairs.append((c.pattern, c.count))
        else:
            pairs.append((c[0], int(c[1])))
    if not pairs:
        raise ValueError("no constraints")
    k = pairs[0][0].order
    if any(F.order != k for F, _ in pairs):
        raise ValueError("all patterns need the same number of vertices")
    if any(not is_connected(F) or F.order == 0 for F, _ in pairs):
        raise ValueError("patterns must be connected")
    if k > SPECTRUM_CAP:
        raise CapExceeded(f"equal-size deciding is capped at {SPECTRUM_CAP} vertices")
    hosts, A = _equisize_columns(k, [F for F, _ in pairs])
    b = [h for _, h in pairs]
    if not hosts:
        ok = not any(b)
        return _finish([], "all counts zero") if ok else Verdict(NO, reason="no graph on k vertices contains a pattern")
    x = solve_nonneg_linear(A, b)
    if x is None:
        return Verdict(NO, reason="A x = b has no non-negative integer solution")
    used = [(H, m) for H, m in zip(hosts, x) if m]
    return _finish(used, "non-negative solution of the subgraph count system")
