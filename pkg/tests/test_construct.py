from math import comb
import random

import pytest
from hypothesis import given, strategies as st

from homrec.construct import (
    BinomialDecomposition,
    ConstructionError,
    DegreeMultiset,
    SplitChain,
    clique_count,
    clique_parts,
    complement_triangle_formula,
    construct_clique_graph,
    construct_triangle_graph,
    direct_triangle_count,
    forest_complement_count,
    kamke_decompose,
    longest_chain_length,
    multiset_initial,
    multiset_split,
    staircase_chain,
    staircase_length,
    tree_from_degrees,
)
from homrec.canon import canonical_code
from homrec.counting import sub_count
from homrec.graphs import (
    CapExceeded,
    Graph,
    complement,
    complete_graph,
    empty_graph,
    is_connected,
    path_graph,
    star_graph,
)
from strategies import graphs


def degree_multiset(G):
    return tuple(sorted(G.degrees(), reverse=True))


def test_kamke_examples():
    dec = kamke_decompose(10, 2)
    assert dec.parts == (5,)
    # [4, 3, 2] is a valid decomposition, just not a minimal one
    assert BinomialDecomposition(2, (4, 3, 2), 10).target == 10
    assert kamke_decompose(0, 3).parts == ()


def test_kamke_rejects_bad_sum():
    with pytest.raises(ConstructionError):
        BinomialDecomposition(2, (4, 3), 10)


def test_kamke_gamma2_small_range():
    for n in range(1, 2001):
        assert len(kamke_decompose(n, 2)) <= 3


def test_kamke_minimal_against_exhaustive():
    for n in range(1, 60):
        best = min(t for t in range(1, 7)
                   if _reachable(n, 3, t))
        assert len(kamke_decompose(n, 3, part_cap=6)) == best


def _reachable(n, k, t):
    vals = [comb(a, k) for a in range(k, 40) if comb(a, k) <= n]
    cur = {0}
    for _ in range(t):
        cur = cur | {c + v for c in cur for v in vals if c + v <= n}
    return n in cur


def test_kamke_part_cap_failure():
    with pytest.raises(ConstructionError):
        kamke_decompose(5, 2, part_cap=1)


def test_clique_examples():
    G = construct_clique_graph(4, 3, 4)
    assert G.order == 6 and direct_triangle_count(G) == 4
    G = construct_clique_graph(5, 3, 7)
    assert direct_triangle_count(G) == 7
    # K4 plus a vertex on three of its vertices
    assert sorted(G.degrees(), reverse=True)[:5] == [4, 4, 4, 3, 3]
    G = construct_clique_graph(9, 3, 0)
    assert G == empty_graph(11)


def test_clique_all_small():
    for n in range(1, 9):
        for h in range(comb(n, 3) + 1):
            G = construct_clique_graph(n, 3, h)
            assert G.order <= n + 2
            assert clique_count(G, 3) == h


def test_clique_k4_reports_parts():
    for h in (0, 1, 17, 69, 70):
        G = construct_clique_graph(8, 4, h)
        parts = clique_parts(8, 4, h)
        t = len(parts) if parts else 1
        assert clique_count(G, 4) == h
        assert G.order == max(G.order, 8 + t - 1)


def test_clique_precondition():
    with pytest.raises(ValueError):
        construct_clique_graph(4, 3, 5)


def test_clique_count_matches_sub_count():
    G = construct_clique_graph(7, 3, 23)
    assert clique_count(G, 3) == sub_count(complete_graph(3), G)


def test_multiset_examples():
    assert multiset_initial(5).entries == (2, 2, 2, 2, 2, 1, 1)
    assert multiset_split(DegreeMultiset(2, (2, 2, 1, 1)), 2).entries == (3, 1, 1, 1)
    with pytest.raises(ConstructionError):
        multiset_split(DegreeMultiset(1, (3, 1, 1)), 3)
    with pytest.raises(ConstructionError):
        DegreeMultiset(2, (2, 2, 2, 1))


@given(st.integers(0, 12), st.randoms(use_true_random=False))
def test_split_invariants(p, rnd):
    D = multiset_initial(p)
    while True:
        options = [c for c in set(D.entries) if c >= 2 and D.count(c) >= 2]
        if not options:
            break
        D2 = multiset_split(D, rnd.choice(sorted(options)))
        assert len(D2.entries) == p + 2 and sum(D2.entries) == 2 * p + 2
        assert D2.square_sum() > D.square_sum()
        D = D2


def test_staircase_examples():
    chain = staircase_chain(3, 1)
    assert len(chain) == 1 and chain.final().entries[0] == 3
    assert len(staircase_chain(7, 0)) == 0
    chain = staircase_chain(10, 10)
    assert chain.final().entries[:4] == (5, 4, 3, 2)
    assert staircase_length(10) == 10
    with pytest.raises(ConstructionError):
        staircase_chain(10, 11)


def test_tree_examples():
    assert canonical_code(tree_from_degrees(SplitChain(2, ()))) == canonical_code(path_graph(4))
    T = tree_from_degrees(SplitChain(2, (2,)))
    assert canonical_code(T) == canonical_code(star_graph(3))


@pytest.mark.parametrize("p", range(0, 11))
def test_trees_along_staircase(p):
    for steps in range(staircase_length(p) + 1):
        chain = staircase_chain(p, steps)
        T = tree_from_degrees(chain)
        assert T.order == p + 2 and T.size == p + 1 and is_connected(T)
        assert degree_multiset(T) == chain.final().entries


def test_tree_from_multiset_search():
    D = DegreeMultiset(4, (3, 3, 1, 1, 1, 1))
    T = tree_from_degrees(D)
    assert degree_multiset(T) == D.entries


def test_complement_formula_examples():
    assert complement_triangle_formula(empty_graph(5)) == 10
    G = Graph(3, ((0, 1),))
    assert complement_triangle_formula(G) == 0 == direct_triangle_count(complement(G))


@given(graphs(max_n=7))
def test_complement_formula_matches_direct(G):
    assert complement_triangle_formula(G) == direct_triangle_count(complement(G))


def test_forest_complement_examples():
    assert forest_complement_count(2, 5) == 10
    assert forest_complement_count(0, 2) == 0
    for p in range(0, 9):
        assert forest_complement_count(p, 10) - forest_complement_count(p + 1, 10) == 8


def test_forest_complement_direct():
    for n in range(2, 13):
        for p in range(0, n):
            forest = Graph(n + 1, path_graph(p + 2).edges)
            assert direct_triangle_count(complement(forest)) == forest_complement_count(p, n)


def test_triangle_small_clique_range():
    for n in range(1, 12):
        for h in range(comb(n - 1, 3) + 1):
            G = construct_triangle_graph(n, h)
            assert G.order == n + 1
            assert direct_triangle_count(G) == h


def test_triangle_small_top_band_exact_or_refused():
    # the top band is only guaranteed from n = 130; below that either an
    # exact graph comes back or the construction refuses
    built = 0
    for n in range(3, 12):
        for h in range(comb(n - 1, 3) + 1, comb(n, 3) + 1):
            try:
                G = construct_triangle_graph(n, h)
            except ConstructionError:
                continue
            built += 1
            assert G.order == n + 1
            assert direct_triangle_count(G) == h
    assert built > 0


def test_triangle_130_examples():
    G = construct_triangle_graph(130, comb(130, 3))
    assert G.order == 131 and direct_triangle_count(G) == 357760
    G = construct_triangle_graph(130, 0)
    assert G == empty_graph(131)


def test_triangle_130_top_band_sample():
    rnd = random.Random(11)
    for h in rnd.sample(range(comb(129, 3) + 1, comb(130, 3) + 1), 20):
        G = construct_triangle_graph(130, h)
        assert G.order == 131 and direct_triangle_count(G) == h


def test_longest_chain():
    s = [longest_chain_length(p) for p in range(11)]
    assert s == sorted(s)
    assert s[3] >= 1 and s[10] >= 10
    with pytest.raises(CapExceeded):
        longest_chain_length(13)


def test_longest_chain_matches_brute_force():
    def brute(ent):
        best = 1
        for c in set(ent):
            if c >= 2 and ent.count(c) >= 2:
                lst = list(ent)
                lst.remove(c)
                lst.remove(c)
                best = max(best, 1 + brute(tuple(sorted(lst + [c + 1, c - 1], reverse=True))))
        return best

    for p in range(8):
        assert longest_chain_length(p) == brute(multiset_initial(p).entries)
