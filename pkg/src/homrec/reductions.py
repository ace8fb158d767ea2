"""Instance generators, witnesses and extractors for the three hardness reductions.

Colour and label ids are dense integers. Each reduction reserves its own
palette:

SetSplitting
    ``B = 0``, ``E = 1``, ``P = 2`` and ground element ``i`` (1-based) gets
    colour ``2 + i``.
QPoly
    ``R, A, X, B, Y, M1, M2 = 0 .. 6``.
EC-3-Colouring
    vertex ``s_i`` of the chosen subset carries label ``i`` (0-based, in the
    order the subset is given).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .counting import hom_count
from .decide import Constraint, Instance
from .graphs import ColouredGraph, Graph, LabelledGraph, complete_graph, make_graph, union_all

__all__ = [
    "ReductionError",
    "SetSplittingInput",
    "QPolyInput",
    "EC3ColInput",
    "SS_B",
    "SS_E",
    "SS_P",
    "element_colour",
    "QP",
    "gen_setsplitting",
    "setsplitting_witness",
    "setsplitting_extract",
    "setsplitting_solvable",
    "gen_qpoly",
    "qpoly_patterns",
    "qpoly_witness",
    "qpoly_extract",
    "qpoly_to_bpoly",
    "gen_ec3col",
    "ec3col_witness",
]


class ReductionError(ValueError):
    pass


# SetSplitting

SS_B, SS_E, SS_P = 0, 1, 2


def element_colour(i: int) -> int:
    return 2 + i


@dataclass(frozen=True)
class SetSplittingInput:
    k: int
    collection: tuple

    def __post_init__(self):
        coll = tuple(frozenset(int(x) for x in T) for T in self.collection)
        for T in coll:
            if not T:
                raise ReductionError("the collection may not contain the empty set")
            if min(T) < 1 or max(T) > self.k:
                raise ReductionError(f"subset {sorted(T)} leaves the ground set 1..{self.k}")
        object.__setattr__(self, "collection", coll)


def _star(centre: int, leaves: Sequence[int]) -> ColouredGraph:
    n = 1 + len(leaves)
    return ColouredGraph(make_graph(n, [(0, j) for j in range(1, n)]), (centre, *leaves))


def _stars(specs: Iterable[tuple[int, Sequence[int]]]) -> ColouredGraph:
    return union_all(_star(c, leaves) for c, leaves in specs)


def gen_setsplitting(inp: SetSplittingInput) -> Instance:
    """Three coloured hom constraints with size bound 2k + 6."""
    k = inp.k
    elems = [element_colour(i) for i in range(1, k + 1)]
    specs = [(SS_B, [SS_E, *elems])]
    specs += [(SS_B, [element_colour(i), SS_P]) for i in range(1, k + 1)]
    specs += [(SS_B, [element_colour(i) for i in sorted(T)]) for T in inp.collection]
    F1 = _stars(specs)
    F2 = _star(SS_B, [SS_P])
    F3 = ColouredGraph(make_graph(3, [(0, 1), (1, 2)]), (SS_E, SS_B, SS_P))
    cons = (Constraint(F1, 1), Constraint(F2, 2), Constraint(F3, 0))
    return Instance(cons, size_bound=2 * k + 6)


def setsplitting_witness(S1: Iterable[int], S2: Iterable[int], inp: SetSplittingInput) -> ColouredGraph:
    S1, S2 = sorted(set(S1)), sorted(set(S2))
    if set(S1) & set(S2) or set(S1) | set(S2) != set(range(1, inp.k + 1)):
        raise ReductionError("S1 and S2 must partition the ground set")
    elems = [element_colour(i) for i in range(1, inp.k + 1)]
    return _stars([
        (SS_B, [SS_E, *elems]),
        (SS_B, [SS_P, *map(element_colour, S1)]),
        (SS_B, [SS_P, *map(element_colour, S2)]),
    ])


def setsplitting_extract(G: ColouredGraph, inp: SetSplittingInput) -> tuple[frozenset, frozenset]:
    """Read the split off the two B-P edges of a satisfying graph."""
    inst = gen_setsplitting(inp)
    for c in inst.constraints:
        if hom_count(c.pattern, G) != c.count:
            raise ReductionError("graph does not satisfy the generated constraints")
    col = G.colours
    # hom(F2) = 2 means exactly two B-P edges
    (b1, _), (b2, _) = [(b, p) for b in range(G.order) if col[b] == SS_B
                        for p in G.graph.neighbours(b) if col[p] == SS_P]

    def elements_at(b):
        return frozenset(col[u] - 2 for u in G.graph.neighbours(b) if col[u] > SS_P)

    S1 = elements_at(b1)
    S2 = elements_at(b2) if b2 != b1 else frozenset()
    return S1, S2


def setsplitting_solvable(inp: SetSplittingInput) -> tuple[frozenset, frozenset] | None:
    """Brute-force oracle over all 2^k splits."""
    ground = range(1, inp.k + 1)
    for mask in range(1 << inp.k):
        S1 = frozenset(i for i in ground if mask >> (i - 1) & 1)
        S2 = frozenset(ground) - S1
        if all(not T <= S1 and not T <= S2 for T in inp.collection):
            return S1, S2
    return None


# QPoly

class QP:
    R, A, X, B, Y, M1, M2 = range(7)


@dataclass(frozen=True)
class QPolyInput:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ReductionError("QPoly coefficients are natural numbers")


def qpoly_patterns() -> tuple[ColouredGraph, ...]:
    """The nine coloured stars (a)-(i); they do not depend on the input."""
    return (
        _star(QP.R, [QP.A]),
        _star(QP.R, [QP.B]),
        _star(QP.R, [QP.A, QP.X, QP.X, QP.B, QP.Y]),
        ColouredGraph(make_graph(1), (QP.R,)),
        _star(QP.R, [QP.M1]),
        _star(QP.R, [QP.M2]),
        _star(QP.R, [QP.M1, QP.M2]),
        _star(QP.R, [QP.M1, QP.B, QP.Y]),
        _star(QP.R, [QP.M2, QP.A, QP.X]),
    )


def gen_qpoly(inp: QPolyInput) -> Instance:
    counts = (inp.a + 1, inp.b + 1, inp.c, 2, 1, 1, 0, 1, 1)
    return Instance(tuple(Constraint(F, h) for F, h in zip(qpoly_patterns(), counts)))


def qpoly_witness(a: int, b: int, x: int, y: int) -> ColouredGraph:
    left = [QP.M1, QP.B, QP.Y] + [QP.A] * a + [QP.X] * x
    right = [QP.M2, QP.A, QP.X] + [QP.B] * b + [QP.Y] * y
    return _stars([(QP.R, left), (QP.R, right)])


def qpoly_extract(G: ColouredGraph, inp: QPolyInput) -> tuple[int, int]:
    inst = gen_qpoly(inp)
    for c in inst.constraints:
        if hom_count(c.pattern, G) != c.count:
            raise ReductionError("graph does not satisfy the generated constraints")
    col = G.colours

    def r_next_to(colour):
        return next(v for v in range(G.order) if col[v] == QP.R
                    and any(col[u] == colour for u in G.graph.neighbours(v)))

    v1, v2 = r_next_to(QP.M1), r_next_to(QP.M2)
    x = sum(col[u] == QP.X for u in G.graph.neighbours(v1))
    y = sum(col[u] == QP.Y for u in G.graph.neighbours(v2))
    return x, y


def qpoly_to_bpoly(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Map a x^2 + b y = c (x odd) to 4a X(X-1) + b Y = c - a."""
    if c < a:
        raise ReductionError("the transform needs c >= a")
    return 4 * a, b, c - a


# EC-3-Colouring

@dataclass(frozen=True)
class EC3ColInput:
    graph: Graph
    subset: tuple
    k: int

    def __post_init__(self):
        S = tuple(int(v) for v in self.subset)
        if len(set(S)) != len(S):
            raise ReductionError("subset has repeated vertices")
        if any(not 0 <= v < self.graph.order for v in S):
            raise ReductionError("subset is not inside V(F)")
        object.__setattr__(self, "subset", S)


def gen_ec3col(inp: EC3ColInput, bounded: bool = True) -> Instance:
    m = len(inp.subset)
    Fp = LabelledGraph(inp.graph, {i: s for i, s in enumerate(inp.subset)})
    cons = [
        Constraint(Fp, inp.k),
        Constraint(LabelledGraph(complete_graph(1)), 3),
        Constraint(LabelledGraph(complete_graph(2)), 6),
    ]
    cons += [Constraint(LabelledGraph(complete_graph(1), {i: 0}), 1) for i in range(m)]
    return Instance(tuple(cons), size_bound=3 if bounded else None)


def ec3col_witness(inp: EC3ColInput, parts: Sequence[Iterable[int]]) -> LabelledGraph:
    """K3 whose vertex j carries the labels of ``parts[j]``."""
    parts = [set(p) for p in parts]
    if len(parts) > 3:
        raise ReductionError("at most three parts")
    labels = {}
    for j, p in enumerate(parts):
        for a in p:
            if a in labels:
                raise ReductionError(f"label {a} in two parts")
            labels[a] = j
    if set(labels) != set(range(len(inp.subset))):
        raise ReductionError("parts must cover every label")
    return LabelledGraph(complete_graph(3), labels)
