#! /usr/bin/env python
# The monoid version: tiles are padded with e to a common length L and the
# identity state e is allowed in sequences.

from automaton_freeness import (PcpInstance, act, build_monoid, check_free_presentation,
                                dual_act, pad_to_epcp)

inst = pad_to_epcp(PcpInstance.from_tiles(["x", "y"], [("xx", "x"), ("y", "xy")]))
print("L =", inst.L, inst.phi, inst.psi)

art = build_monoid(inst)
T = art.T
print(len(T.states), "states,", len(T.alphabet), "letters")

# a repeated index walks through its tile on alpha_0
block = ["1"] * inst.L
print(act(T, block, ["alpha_0"]), dual_act(T, block, ["alpha_0"]))

rel = art.witness_relation(["1", "2"])
print(rel)
print("extracted:", art.extract_solution(*rel))

for k in (3, 4, 6):
    v = check_free_presentation(art, k)
    print(k, v.verdict, v.violation or "")
