"""hom(K1) = 3 and hom(K2) = 6 pin the host down to a triangle."""

from homrec import Constraint, Instance, complete_graph, decide_bounded, emit_graph6

inst = Instance((Constraint(complete_graph(1), 3), Constraint(complete_graph(2), 6)), size_bound=3)
v = decide_bounded(inst)
print(v.status, emit_graph6(v.witness), v.witness == complete_graph(3))

# an odd edge count is never realisable
inst = Instance((Constraint(complete_graph(1), 3), Constraint(complete_graph(2), 7)), size_bound=3)
print(decide_bounded(inst).status)
