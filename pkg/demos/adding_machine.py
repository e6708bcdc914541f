#! /usr/bin/env python
# The adding machine: two states, binary counting, least significant bit first.

import numpy as np

from automaton_freeness import (act, adding_machine, decide_equal, dual, dual_act,
                                enumerate_relations, export_dot)

AM = adding_machine()
print(AM)

# q adds one.  Applying q^i to 00000000 writes i in reverse binary.
rows = [act(AM, ["q"] * i, "0" * 8) for i in range(16)]
counts = np.array(rows, dtype=int)
print(counts)
print("as integers:", counts @ (2 ** np.arange(8)))

# the residual sequence after reading a word
print(dual_act(AM, ["q", "q", "q"], "000"))

# id acts trivially, powers of q do not
print(decide_equal(AM, ["id"], []))
print(decide_equal(AM, ["q"] * 3, ["q"] * 5))

# every short relation only erases id
for rel in enumerate_relations(AM, 2):
    print(" ".join(rel.left), "=", " ".join(rel.right) or "(empty)")

# letters become states in the dual
print(export_dot(dual(AM)))
