from itertools import combinations, product
import random

from hypothesis import given, settings, strategies as st
import pytest

from homrec.canon import canonical_code
from homrec.counting import hom_count
from homrec.decide import NO, YES, decide_bounded, verify_witness
from homrec.graphs import ColouredGraph, complete_graph, components, cycle_graph, make_graph, path_graph
from homrec.reductions import (
    QP,
    SS_B,
    SS_E,
    SS_P,
    EC3ColInput,
    QPolyInput,
    ReductionError,
    SetSplittingInput,
    ec3col_witness,
    element_colour,
    gen_ec3col,
    gen_qpoly,
    gen_setsplitting,
    qpoly_extract,
    qpoly_patterns,
    qpoly_to_bpoly,
    qpoly_witness,
    setsplitting_extract,
    setsplitting_solvable,
    setsplitting_witness,
)
from homrec.serialize import dumps_instance, loads_instance


def random_setsplitting(rnd, k):
    ground = list(range(1, k + 1))
    m = rnd.randint(1, 3)
    coll = []
    for _ in range(m):
        size = rnd.randint(1, k)
        coll.append(frozenset(rnd.sample(ground, size)))
    return SetSplittingInput(k, tuple(coll))


def splits(S1, S2, inp):
    return all(not T <= S1 and not T <= S2 for T in inp.collection)


# SetSplitting


def test_setsplitting_shapes():
    inp = SetSplittingInput(2, ({1, 2},))
    inst = gen_setsplitting(inp)
    F1, F2, F3 = (c.pattern for c in inst.constraints)
    assert len(components(F1)) == 4
    assert [c.count for c in inst.constraints] == [1, 2, 0]
    assert inst.size_bound == 2 * 2 + 6
    assert F2 == ColouredGraph(make_graph(2, [(0, 1)]), (SS_B, SS_P))
    assert F3.colours == (SS_E, SS_B, SS_P) and F3.graph == path_graph(3)


def test_setsplitting_validation():
    with pytest.raises(ReductionError):
        SetSplittingInput(2, (set(),))
    with pytest.raises(ReductionError):
        SetSplittingInput(2, ({3},))
    inp = SetSplittingInput(2, ({1, 2},))
    with pytest.raises(ReductionError):
        setsplitting_witness({1}, {1, 2}, inp)
    with pytest.raises(ReductionError):
        setsplitting_witness({1}, set(), inp)


def test_setsplitting_round_trips():
    rnd = random.Random(5)
    done = 0
    while done < 20:
        inp = random_setsplitting(rnd, rnd.randint(1, 3))
        sol = setsplitting_solvable(inp)
        if sol is None:
            continue
        inst = gen_setsplitting(inp)
        G = setsplitting_witness(*sol, inp)
        assert G.order <= inst.size_bound
        assert verify_witness(inst, G)
        S1, S2 = setsplitting_extract(G, inp)
        assert {S1, S2} == {sol[0], sol[1]}
        done += 1


def test_setsplitting_bad_split_violates():
    inp = SetSplittingInput(3, ({1, 2}, {2, 3}))
    G = setsplitting_witness({1, 2}, {3}, inp)
    F1 = gen_setsplitting(inp).constraints[0].pattern
    assert hom_count(F1, G) > 1
    with pytest.raises(ReductionError):
        setsplitting_extract(G, inp)


def test_setsplitting_extract_needs_e_star():
    inp = SetSplittingInput(2, ({1, 2},))
    G = setsplitting_witness({1}, {2}, inp)
    # drop the everything-star (first component, 1 + 1 + k vertices)
    keep = list(range(4, G.order))
    from homrec.graphs import induced_subgraph
    with pytest.raises(ReductionError):
        setsplitting_extract(induced_subgraph(G, keep), inp)


def test_setsplitting_decide_end_to_end():
    # every input with k <= 2, plus some k = 3
    cases = []
    for k in (1, 2):
        subsets = [frozenset(c) for r in range(1, k + 1) for c in combinations(range(1, k + 1), r)]
        for m in (1, 2):
            for coll in combinations(subsets, m):
                cases.append(SetSplittingInput(k, coll))
    cases.append(SetSplittingInput(3, ({1, 2}, {2, 3})))
    cases.append(SetSplittingInput(3, ({1, 2, 3},)))
    for inp in cases:
        inst = gen_setsplitting(inp)
        v = decide_bounded(inst, inst.size_bound)
        truth = setsplitting_solvable(inp) is not None
        assert (v.status == YES) == truth, inp
        if truth:
            S1, S2 = setsplitting_extract(v.witness, inp)
            assert S1 | S2 == frozenset(range(1, inp.k + 1))
            assert not S1 & S2
            assert splits(S1, S2, inp)


def test_setsplitting_singletons_no():
    inp = SetSplittingInput(2, ({1}, {2}))
    inst = gen_setsplitting(inp)
    assert decide_bounded(inst, inst.size_bound).status == NO


# QPoly


def test_qpoly_counts_and_palette():
    inst = gen_qpoly(QPolyInput(3, 4, 7))
    assert [c.count for c in inst.constraints] == [4, 5, 7, 2, 1, 1, 0, 1, 1]
    assert inst.size_bound is None
    assert (QP.R, QP.A, QP.X, QP.B, QP.Y, QP.M1, QP.M2) == tuple(range(7))


def test_qpoly_patterns_constant():
    a = [canonical_code(c.pattern) for c in gen_qpoly(QPolyInput(0, 0, 0)).constraints]
    b = [canonical_code(c.pattern) for c in gen_qpoly(QPolyInput(5, 2, 9)).constraints]
    assert a == b == [canonical_code(F) for F in qpoly_patterns()]


def test_qpoly_polynomial_identity():
    F = qpoly_patterns()[2]
    assert hom_count(F, qpoly_witness(1, 1, 1, 4)) == 5
    for a, b, x, y in product(range(7), repeat=4):
        assert hom_count(F, qpoly_witness(a, b, x, y)) == a * x * x + b * y


def test_qpoly_witnesses_verify_and_extract():
    for a, b, c in product(range(6), repeat=3):
        inp = QPolyInput(a, b, c)
        inst = gen_qpoly(inp)
        sols = [(x, y) for x in range(6) for y in range(6) if a * x * x + b * y == c]
        for x, y in sols:
            G = qpoly_witness(a, b, x, y)
            assert verify_witness(inst, G)
            assert qpoly_extract(G, inp) == (x, y)


def test_qpoly_extract_rejects():
    with pytest.raises(ReductionError):
        qpoly_extract(qpoly_witness(1, 1, 1, 1), QPolyInput(1, 1, 3))
    with pytest.raises(ReductionError):
        QPolyInput(-1, 0, 0)


def test_bpoly_transform():
    assert qpoly_to_bpoly(1, 1, 5) == (4, 1, 4)
    with pytest.raises(ReductionError):
        qpoly_to_bpoly(2, 3, 1)


def test_bpoly_equivalence_brute_force():
    R = range(21)
    for a, b, c in product(range(9), repeat=3):
        if c < a:
            continue
        odd = any(a * x * x + b * y == c for x in R if x % 2 for y in R)
        A, B, C = qpoly_to_bpoly(a, b, c)
        transformed = any(A * X * (X - 1) + B * Y == C for X in R if X >= 1 for Y in R)
        assert odd == transformed, (a, b, c)


# EC-3-Colouring


def extensions(F, subset, colour_of_label):
    """Proper 3-colourings of F that give s_i the colour of label i (oracle)."""
    count = 0
    for col in product(range(3), repeat=F.order):
        if any(col[u] == col[v] for u, v in F.edges):
            continue
        if all(col[s] == colour_of_label[i] for i, s in enumerate(subset)):
            count += 1
    return count


def test_ec3col_examples():
    K3 = complete_graph(3)
    inst = gen_ec3col(EC3ColInput(K3, (), 6))
    assert inst.size_bound == 3
    v = decide_bounded(inst, 3)
    assert v.status == YES and v.witness.graph == K3
    K2 = complete_graph(2)
    inst = gen_ec3col(EC3ColInput(K2, (0, 1), 1))
    assert decide_bounded(inst, 3).status == YES
    assert gen_ec3col(EC3ColInput(K2, (0, 1), 1), bounded=False).size_bound is None


def test_ec3col_validation():
    with pytest.raises(ReductionError):
        EC3ColInput(complete_graph(2), (0, 0), 1)
    with pytest.raises(ReductionError):
        EC3ColInput(complete_graph(2), (2,), 1)
    inp = EC3ColInput(complete_graph(2), (0, 1), 1)
    with pytest.raises(ReductionError):
        ec3col_witness(inp, [{0}, {0, 1}])
    with pytest.raises(ReductionError):
        ec3col_witness(inp, [{0}])
    with pytest.raises(ReductionError):
        ec3col_witness(inp, [{0}, {1}, set(), set()])


@pytest.mark.parametrize("F, subset", [
    (path_graph(4), (0, 3)),
    (cycle_graph(4), (0, 1)),
    (cycle_graph(5), (0, 2, 3)),
])
def test_ec3col_witness_iff_extension_count(F, subset):
    m = len(subset)
    for assign in product(range(3), repeat=m):
        parts = [{i for i in range(m) if assign[i] == j} for j in range(3)]
        ext = extensions(F, subset, assign)
        for k in {ext, ext + 1}:
            inp = EC3ColInput(F, subset, k)
            inst = gen_ec3col(inp)
            G = ec3col_witness(inp, parts)
            assert verify_witness(inst, G, 3) == (k == ext)


def test_ec3col_host_forced_to_k3():
    inst = gen_ec3col(EC3ColInput(complete_graph(3), (), 6))
    v = decide_bounded(inst, 3)
    assert v.witness.graph == complete_graph(3)


# serialisation of every generator


@settings(max_examples=20)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_generated_instances_round_trip(k, rnd):
    inp = random_setsplitting(rnd, k)
    for inst in (gen_setsplitting(inp), gen_qpoly(QPolyInput(k, 2, 3)),
                 gen_ec3col(EC3ColInput(cycle_graph(4), (0, 2), k))):
        assert loads_instance(dumps_instance(inst)) == inst
