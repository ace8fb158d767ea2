"""JSON instance format.

::

    {
      "kind": "hom" | "sub",
      "graph_kind": "plain" | "coloured" | "labelled",
      "constraints": [
        {"graph6": "Bw", "count": "6"},
        {"graph6": "A_", "colours": [0, 2], "count": "2"},
        {"graph6": "@", "labels": [[3, 0]], "count": "1"}
      ],
      "size_bound": 6
    }

Counts are decimal strings so that arbitrarily large values survive any JSON
reader. ``colours`` lists a colour id per vertex; ``labels`` lists
``[label, vertex]`` pairs. ``size_bound`` is optional.
"""

from __future__ import annotations

import json

from .decide import Constraint, Instance, graph_kind
from .graph6 import emit_graph6, parse_graph6
from .graphs import ColouredGraph, LabelledGraph

__all__ = ["SchemaError", "graph_to_json", "graph_from_json", "instance_to_json", "instance_from_json",
           "dumps_instance", "loads_instance"]


class SchemaError(ValueError):
    pass


def graph_to_json(G) -> dict:
    if isinstance(G, ColouredGraph):
        return {"graph6": emit_graph6(G.graph), "colours": list(G.colours)}
    if isinstance(G, LabelledGraph):
        return {"graph6": emit_graph6(G.graph), "labels": [list(p) for p in G.labels]}
    return {"graph6": emit_graph6(G)}


def graph_from_json(obj: dict):
    if "graph6" not in obj:
        raise SchemaError("graph entry needs a graph6 field")
    base = parse_graph6(obj["graph6"])
    if "colours" in obj and "labels" in obj:
        raise SchemaError("a graph is either coloured or labelled")
    if "colours" in obj:
        return ColouredGraph(base, tuple(obj["colours"]))
    if "labels" in obj:
        return LabelledGraph(base, tuple((a, v) for a, v in obj["labels"]))
    return base


def instance_to_json(inst: Instance) -> dict:
    out = {
        "kind": inst.kind,
        "graph_kind": inst.graph_kind,
        "constraints": [{**graph_to_json(c.pattern), "count": str(c.count)} for c in inst.constraints],
    }
    if inst.size_bound is not None:
        out["size_bound"] = inst.size_bound
    return out


def instance_from_json(obj: dict) -> Instance:
    try:
        kind = obj.get("kind", "hom")
        cons = []
        for entry in obj["constraints"]:
            count = entry["count"]
            if isinstance(count, str) and not count.isdigit():
                raise SchemaError(f"count {count!r} is not a decimal string")
            cons.append(Constraint(graph_from_json(entry), int(count), kind))
        inst = Instance(tuple(cons), obj.get("size_bound"))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed instance: {exc}") from exc
    gk = obj.get("graph_kind")
    if gk is not None and gk != graph_kind(cons[0].pattern):
        raise SchemaError(f"graph_kind says {gk} but constraints are {graph_kind(cons[0].pattern)}")
    return inst


def dumps_instance(inst: Instance, indent: int | None = 2) -> str:
    return json.dumps(instance_to_json(inst), indent=indent)


def loads_instance(text: str) -> Instance:
    try:
        return instance_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SchemaError(str(exc)) from exc
