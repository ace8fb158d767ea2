"""SetSplitting as three coloured hom constraints, solved and read back."""

from homrec import (
    SetSplittingInput,
    decide_bounded,
    dumps_instance,
    gen_setsplitting,
    setsplitting_extract,
)

for coll in [({1, 2}, {2, 3}), ({1}, {2, 3})]:
    inp = SetSplittingInput(3, coll)
    inst = gen_setsplitting(inp)
    v = decide_bounded(inst)
    print([sorted(T) for T in inp.collection], v.status)
    if v.status == "yes":
        S1, S2 = setsplitting_extract(v.witness, inp)
        print("  split", sorted(S1), sorted(S2))

print(dumps_instance(gen_setsplitting(SetSplittingInput(2, ({1, 2},))), indent=None)[:120], "...")
