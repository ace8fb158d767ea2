"""Kneser-graph gadgets that trade colours and labels for plain graph structure.

A gadget family assigns a Kneser graph with a designated tip to each role.
Encoders splice copies of these graphs into a pattern through long paths, so
that homomorphisms between encoded graphs are forced to respect the gadgets.

Certification of pairwise incomparability uses the chromatic number and the
odd girth only: if chi(G) > chi(H) there is no map G -> H, and if
og(G) < og(H) there is no map G -> H. Two graphs whose pairs strictly cross
are therefore incomparable. That Kneser graphs are cores is taken as known.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .canon import aut_count, canonical_code
from .graphs import (
    CHROMATIC_CAP,
    CapExceeded,
    Graph,
    GraphError,
    LabelledGraph,
    chromatic_number,
    complete_graph,
    from_adjacency,
    is_connected,
    kneser,
    make_graph,
    odd_girth,
)

__all__ = [
    "GadgetError",
    "Gadget",
    "GadgetFamily",
    "LABELLED_ROLES",
    "DIRECTED_ROLES",
    "kneser_chi",
    "kneser_odd_girth",
    "kneser_tip_aut",
    "kneser_family_params",
    "build_gadget_family",
    "search_gadget_family",
    "toy_family",
    "encode_directed",
    "encode_labelled",
    "label_bits",
    "noninjective_images",
    "ImagePlaceholder",
    "EncodedInstance",
    "encode_ec3col",
]

LABELLED_ROLES = ("I0", "I1", "D0", "D1", "A", "Z", "0", "1")
DIRECTED_ROLES = ("D0", "D1", "I0", "I1")

AUT_SEARCH_CAP = 150  # orders above this use the closed form r!(s-r)!
MATERIALISE_CAP = 5000
IMAGE_ORDER_CAP = 64


class GadgetError(ValueError):
    pass


def kneser_chi(r: int, s: int) -> int:
    return s - 2 * r + 2


def kneser_odd_girth(r: int, s: int) -> int:
    return 2 * -(-r // (s - 2 * r)) + 1


def kneser_tip_aut(r: int, s: int) -> int:
    # Aut K(r,s) = Sym(s) for s > 2r; a vertex stabiliser is Sym(r) x Sym(s-r)
    return factorial(r) * factorial(s - r)


def kneser_family_params(ns: Iterable[int], ks: Iterable[int]) -> list[tuple[int, int]]:
    """Parameters K(k(n-2), (2k+1)(n-2)): chromatic number n, odd girth 2k+1."""
    return [(k * (n - 2), (2 * k + 1) * (n - 2)) for n in ns for k in ks]


@dataclass(frozen=True)
class Gadget:
    role: str
    r: int
    s: int
    order: int
    chi: int
    odd_girth: int
    tip_aut: int
    graph: Graph | None = None
    tip: int = 0
    provenance: str = ""


@dataclass(frozen=True)
class GadgetFamily:
    gadgets: Mapping[str, Gadget]
    certified: bool

    @property
    def ell(self) -> int:
        return max(g.order for g in self.gadgets.values())

    @property
    def tip_aut(self) -> dict[str, int]:
        return {role: g.tip_aut for role, g in self.gadgets.items()}

    def __getitem__(self, role: str) -> Gadget:
        try:
            return self.gadgets[role]
        except KeyError:
            raise GadgetError(f"family has no role {role!r}") from None

    def require(self, roles: Iterable[str]):
        missing = [r for r in roles if r not in self.gadgets]
        if missing:
            raise GadgetError(f"family is missing roles {missing}")


def _crossing(a: Gadget, b: Gadget) -> bool:
    return (a.chi - b.chi) * (a.odd_girth - b.odd_girth) < 0


def _make_gadget(role: str, r: int, s: int, materialise: bool) -> Gadget:
    if not 1 <= r < s / 2:
        raise GadgetError(f"K({r},{s}) needs 1 <= r < s/2")
    order = comb(s, r)
    if not materialise or order > MATERIALISE_CAP:
        return Gadget(role, r, s, order, kneser_chi(r, s), kneser_odd_girth(r, s), kneser_tip_aut(r, s),
                      provenance="closed form")
    G = kneser(r, s)
    if not is_connected(G):
        raise GadgetError(f"K({r},{s}) is disconnected")
    notes = []
    if order <= CHROMATIC_CAP:
        chi = chromatic_number(G)
        notes.append("chi searched")
    else:
        chi = kneser_chi(r, s)
    og = odd_girth(G)
    if order <= AUT_SEARCH_CAP:
        a = aut_count(G, fixed=(0,))
        notes.append("aut searched")
    else:
        a = kneser_tip_aut(r, s)
    return Gadget(role, r, s, order, chi, og, a, graph=G, tip=0, provenance=", ".join(notes) or "closed form")


def build_gadget_family(spec: Mapping[str, tuple[int, int]], certify: bool = True,
                        materialise: bool = True) -> GadgetFamily:
    """Validate a role -> (r, s) assignment.

    The tip is vertex 0, the lexicographically first r-subset. With
    ``certify=False`` the incomparability check is skipped; such families are
    only good for structural experiments.
    """
    gadgets = {role: _make_gadget(role, r, s, materialise) for role, (r, s) in spec.items()}
    if certify:
        for a, b in combinations(gadgets.values(), 2):
            if not _crossing(a, b):
                raise GadgetError(
                    f"{a.role}=K({a.r},{a.s}) and {b.role}=K({b.r},{b.s}) are not certified incomparable: "
                    f"(chi, odd girth) = ({a.chi}, {a.odd_girth}) vs ({b.chi}, {b.odd_girth})")
    return GadgetFamily(gadgets, certify)


def search_gadget_family(candidates: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Largest subset of candidates whose (chi, odd girth) pairs pairwise cross.

    Sorted by chromatic number, a valid family is a chain with strictly
    increasing chi and strictly decreasing odd girth.
    """
    pts = sorted({(kneser_chi(r, s), -kneser_odd_girth(r, s), r, s) for r, s in candidates if 1 <= r < s / 2})
    best: list[list] = []
    for i, (c, og, r, s) in enumerate(pts):
        chain = [(r, s)]
        for j in range(i):
            cj, ogj = pts[j][:2]
            if cj < c and -ogj > -og and len(best[j]) + 1 > len(chain):
                chain = best[j] + [(r, s)]
        best.append(chain)
    return max(best, key=len, default=[])


def toy_family(roles: Sequence[str] = LABELLED_ROLES) -> GadgetFamily:
    """Small, uncertified stand-ins: K(1, 3 + i) for the i-th role."""
    return build_gadget_family({role: (1, 3 + i) for i, role in enumerate(roles)}, certify=False)


# graph assembly


class _Builder:
    def __init__(self, base: Graph):
        self.n = base.order
        self.edges = [tuple(e) for e in base.edges]

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def path(self, u: int, v: int, length: int):
        """Join u and v by a path with ``length`` edges."""
        if length < 1:
            raise GadgetError("paths need length at least 1")
        prev = u
        for _ in range(length - 1):
            w = self.vertex()
            self.edges.append((prev, w))
            prev = w
        self.edges.append((prev, v))

    def kneser(self, g: Gadget) -> int:
        if g.graph is None:
            raise GadgetError(f"gadget {g.role} was not materialised")
        off = self.n
        self.n += g.order
        self.edges.extend((u + off, v + off) for u, v in g.graph.edges)
        return g.tip + off

    def graph(self) -> Graph:
        return make_graph(self.n, self.edges)


def _direction(b: _Builder, fam: GadgetFamily, u: int, v: int):
    ell = fam.ell
    u2, v2 = b.vertex(), b.vertex()
    b.path(u, u2, 10 * ell)
    b.path(u2, b.kneser(fam["D0"]), 2 * ell)
    b.path(u2, v2, 2 * ell)
    b.path(v2, b.kneser(fam["D1"]), 2 * ell)
    b.path(v2, v, 10 * ell)


def _indicator(b: _Builder, fam: GadgetFamily, v: int):
    ell = fam.ell
    b.path(v, b.kneser(fam["I0"]), 2 * ell)
    b.path(v, b.kneser(fam["I1"]), 2 * ell)


def label_bits(label: int, width: int) -> str:
    if label >= 1 << width:
        raise GadgetError(f"label {label} needs more than {width} bits")
    return format(label, f"0{width}b") if width else ""


def _label_gadget(b: _Builder, fam: GadgetFamily, t: int, bits: str):
    ell = fam.ell
    prev = b.kneser(fam["A"])
    b.path(t, prev, 2 * ell)
    for bit in bits:
        nxt = b.kneser(fam[bit])
        b.path(prev, nxt, 2 * ell)
        prev = nxt
    b.path(prev, b.kneser(fam["Z"]), 2 * ell)


def _label_aut(fam: GadgetFamily, bits: str) -> int:
    out = fam["A"].tip_aut * fam["Z"].tip_aut
    for bit in bits:
        out *= fam[bit].tip_aut
    return out


def encode_directed(n: int, arcs: Sequence[tuple[int, int]], fam: GadgetFamily) -> tuple[Graph, int]:
    """Undirected F^U of a directed graph on vertices 0..n-1.

    Returns the graph and the multiplier (a_D0 a_D1)^|E| (a_I0 a_I1)^|V| that
    relates hom(F^U, G^U) to hom(F, G).
    """
    fam.require(DIRECTED_ROLES)
    arcs = list(dict.fromkeys((int(u), int(v)) for u, v in arcs))
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GadgetError(f"bad arc ({u}, {v})")
    b = _Builder(make_graph(n))
    for u, v in arcs:
        _direction(b, fam, u, v)
    for v in range(n):
        _indicator(b, fam, v)
    a = fam.tip_aut
    mult = (a["D0"] * a["D1"]) ** len(arcs) * (a["I0"] * a["I1"]) ** n
    return b.graph(), mult


def _label_width(labels: Iterable[int]) -> int:
    return max([1] + [int(a).bit_length() for a in labels])


def encode_labelled(H, fam: GadgetFamily, count: int, width: int | None = None) -> tuple[Graph, int]:
    """The plain graph [H] and the adjusted count n' for hom(H) = count.

    Label gadgets come first, then an indicator per vertex, then a
    bidirectional gadget (two opposed direction gadgets) per edge.
    ``width`` fixes the number of bits per label; pass the same value for
    every constraint of one instance.
    """
    fam.require(LABELLED_ROLES)
    labels = H.labels if isinstance(H, LabelledGraph) else ()
    base = H.graph if isinstance(H, LabelledGraph) else H
    if width is None:
        width = _label_width(a for a, _ in labels)
    b = _Builder(make_graph(base.order))
    mult = 1
    for a, v in labels:
        bits = label_bits(a, width)
        _label_gadget(b, fam, v, bits)
        mult *= _label_aut(fam, bits)
    for v in range(base.order):
        _indicator(b, fam, v)
    for u, v in base.edges:
        _direction(b, fam, u, v)
        _direction(b, fam, v, u)
    a = fam.tip_aut
    a_I = a["I0"] * a["I1"]
    a_BD = (a["D0"] * a["D1"]) ** 2
    mult *= a_I ** base.order * a_BD ** base.size
    return b.graph(), int(count) * mult


# non-injective images


def noninjective_images(G: Graph, cap: int = 10**6) -> list[Graph]:
    """All non-injective homomorphic images of G, one per isomorphism type.

    An image is a quotient by a partition into independent sets; only
    partitions with a class of size at least two count. Raises CapExceeded
    after ``cap`` partitions or for graphs above IMAGE_ORDER_CAP vertices.
    """
    n, adj = G.order, G.adj
    if n > IMAGE_ORDER_CAP:
        raise CapExceeded(f"image enumeration is limited to {IMAGE_ORDER_CAP} vertices")
    _check_partition_count(adj, cap)
    seen: dict = {}
    visited = 0
    cls_of = [0] * n
    masks: list[int] = []

    def rec(v: int):
        nonlocal visited
        if v == n:
            visited += 1
            if visited > cap:
                raise CapExceeded(f"more than {cap} partitions")
            if len(masks) < n:
                q = _quotient(adj, cls_of, len(masks))
                seen.setdefault(canonical_code(q), q)
            return
        for i, m in enumerate(masks):
            if not adj[v] & m:
                masks[i] |= 1 << v
                cls_of[v] = i
                rec(v + 1)
                masks[i] &= ~(1 << v)
        masks.append(1 << v)
        cls_of[v] = len(masks) - 1
        rec(v + 1)
        masks.pop()

    rec(0)
    return [seen[c] for c in sorted(seen, key=lambda c: c.code)]


def _check_partition_count(adj, cap: int):
    n = len(adj)
    count = 0
    masks: list[int] = []

    def rec(v: int):
        nonlocal count
        if v == n:
            count += 1
            if count > cap:
                raise CapExceeded(f"more than {cap} partitions")
            return
        for i, m in enumerate(masks):
            if not adj[v] & m:
                masks[i] |= 1 << v
                rec(v + 1)
                masks[i] &= ~(1 << v)
        masks.append(1 << v)
        rec(v + 1)
        masks.pop()

    rec(0)


def _quotient(adj, cls_of, k) -> Graph:
    qa = [0] * k
    for v, nb in enumerate(adj):
        for u in range(len(adj)):
            if nb >> u & 1:
                qa[cls_of[v]] |= 1 << cls_of[u]
    return from_adjacency(qa)


@dataclass(frozen=True)
class ImagePlaceholder:
    """Stands for the image constraints hom(F) = 0 when they were not enumerated."""

    sources: tuple[str, ...]
    reason: str


@dataclass
class EncodedInstance:
    constraints: list  # (Graph, count) pairs
    size_bound: int | None
    images: list | ImagePlaceholder = field(default_factory=list)

    @property
    def executable(self) -> bool:
        return not isinstance(self.images, ImagePlaceholder)

    def as_instance(self):
        from .decide import Constraint, Instance

        if not self.executable:
            raise GadgetError("image constraints are a placeholder; the instance cannot be run")
        cons = [Constraint(F, h) for F, h in self.constraints]
        cons += [Constraint(F, 0) for F in self.images]
        return Instance(tuple(cons), self.size_bound)


def encode_ec3col(inp, fam: GadgetFamily, image_cap: int = 10**5, bounded: bool = True) -> EncodedInstance:
    """Plain-graph version of the EC-3-Colouring reduction."""
    m = len(inp.subset)
    width = _label_width(range(m))
    K1, K2, K3 = complete_graph(1), complete_graph(2), complete_graph(3)
    Fp = LabelledGraph(inp.graph, {i: s for i, s in enumerate(inp.subset)})
    plain = [(Fp, inp.k), (K1, 3)]
    plain += [(LabelledGraph(K1, {i: 0}), 1) for i in range(m)]
    plain += [(K2, 6), (K3, 6)]
    cons = [encode_labelled(H, fam, h, width) for H, h in plain]
    EK3, _ = encode_labelled(K3, fam, 0, width)
    bound = None
    if bounded:
        # every label gadget occurs once, whatever the partition
        bound = encode_labelled(LabelledGraph(K3, {i: 0 for i in range(m)}), fam, 0, width)[0].order
    sources = [f"K({g.r},{g.s})" for g in fam.gadgets.values()] + ["[K3]"]
    try:
        images: dict = {}
        for g in fam.gadgets.values():
            for q in noninjective_images(g.graph, cap=image_cap):
                images.setdefault(canonical_code(q), q)
        for q in noninjective_images(EK3, cap=image_cap):
            images.setdefault(canonical_code(q), q)
        image_list: list | ImagePlaceholder = [images[c] for c in sorted(images, key=lambda c: c.code)]
    except CapExceeded as exc:
        image_list = ImagePlaceholder(tuple(sources), str(exc))
    return EncodedInstance(cons, bound, image_list)
