import json

from hypothesis import given, strategies as st
import pytest

from homrec.decide import Constraint, Instance
from homrec.graphs import ColouredGraph, LabelledGraph, complete_graph, path_graph
from homrec.serialize import (
    SchemaError,
    dumps_instance,
    graph_from_json,
    graph_to_json,
    instance_from_json,
    loads_instance,
)

from strategies import coloured_graphs, graphs


@given(graphs(0, 9))
def test_plain_graph_round_trip(G):
    assert graph_from_json(graph_to_json(G)) == G


@given(coloured_graphs(0, 6))
def test_coloured_graph_round_trip(G):
    obj = graph_to_json(G)
    assert set(obj) == {"graph6", "colours"}
    assert graph_from_json(obj) == G


def test_labelled_graph_round_trip():
    G = LabelledGraph(path_graph(3), {0: 0, 4: 2})
    obj = graph_to_json(G)
    assert obj["labels"] == [[0, 0], [4, 2]]
    assert graph_from_json(obj) == G


@given(st.lists(st.tuples(graphs(1, 5), st.integers(0, 10 ** 40)), min_size=1, max_size=4),
       st.one_of(st.none(), st.integers(0, 20)), st.sampled_from(["hom", "sub"]))
def test_instance_round_trip(pairs, bound, kind):
    inst = Instance(tuple(Constraint(F, h, kind) for F, h in pairs), bound)
    text = dumps_instance(inst)
    obj = json.loads(text)
    assert all(isinstance(c["count"], str) for c in obj["constraints"])
    assert loads_instance(text) == inst


def test_big_counts_stay_exact():
    h = 3 ** 200
    inst = Instance((Constraint(complete_graph(2), h),))
    assert loads_instance(dumps_instance(inst)).constraints[0].count == h


def test_schema_errors():
    with pytest.raises(SchemaError):
        loads_instance("not json")
    with pytest.raises(SchemaError):
        instance_from_json({"constraints": [{"count": "1"}]})
    with pytest.raises(SchemaError):
        instance_from_json({"constraints": [{"graph6": "Bw", "count": "-1"}]})
    with pytest.raises(SchemaError):
        instance_from_json({"constraints": [{"graph6": "Bw"}]})
    with pytest.raises(SchemaError):
        instance_from_json({"graph_kind": "coloured", "constraints": [{"graph6": "Bw", "count": "1"}]})
    with pytest.raises(SchemaError):
        graph_from_json({"graph6": "A_", "colours": [0, 1], "labels": [[0, 0]]})


def test_coloured_instance_kind_recorded():
    F = ColouredGraph(complete_graph(2), (0, 1))
    obj = json.loads(dumps_instance(Instance((Constraint(F, 2),))))
    assert obj["graph_kind"] == "coloured" and obj["kind"] == "hom"
