#! /usr/bin/env python
# Encoding a PCP instance as an automaton semigroup.
#
# A solution turns into a relation between #1 i #1 and #1 i #2, so the
# semigroup stops being free.  Without a solution no such relation exists.

from automaton_freeness import (PcpInstance, act, build_semigroup, check_cancellative,
                                check_equidivisible, decide_equal, enumerate_relations, pi_hash)

solvable = PcpInstance.from_tiles(["x", "y"], [("x", "y"), ("y", "x"), ("x", "x")])
hopeless = PcpInstance.from_tiles(["x", "y"], [("x", "y")])

art = build_semigroup(solvable)
T = art.T
print(T)
print("states:", T.state_list)

# the marker states differ on iota ...
print(act(T, ["#1"], ["iota"]), act(T, ["#2"], ["iota"]))
print(decide_equal(T, ["#1"], ["#2"]))

# ... but behind a solution they collapse
rel = art.witness_relation(["3"])
print(rel, decide_equal(T, *rel))
print("extracted:", art.extract_solution(*rel))

# bounded evidence on both instances
for name, inst in [("solvable", solvable), ("hopeless", hopeless)]:
    a = build_semigroup(inst)
    rels = enumerate_relations(a.T, 3)
    mixed = [r for r in rels if pi_hash(r.left) != pi_hash(r.right)]
    print(name, len(rels), "relations,", len(mixed), "with different markers")
    print("  left cancellative:", check_cancellative(a.T, 3, "left").verdict)
    print("  equidivisible:   ", check_equidivisible(a.T, 3).verdict)
