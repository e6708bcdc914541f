import random

import pytest

from automaton_freeness import (EpcpInstance, L_hom, PcpInstance, ReductionError, act,
                                acts_as_identity, build_monoid, check_free_presentation,
                                decide_equal, dual_act, e_equiv, enumerate_relations, factorize,
                                load_fixture, pad_to_epcp, pi_hash, validate)

from oracles import all_sequences, pcp_solutions


def test_fixture_solvability():
    for name, solvable in (("MON-TRIV", True), ("MON-SOLV", True), ("MON-UNSOLV", False)):
        inst = load_fixture(name)
        assert bool(pcp_solutions(inst.phi, inst.psi, 4, erase="e")) == solvable


def test_padding():
    p = pad_to_epcp(PcpInstance.from_tiles(["x", "y"], [("x", "x")]))
    assert p.L == 2 and p.phi["1"] == ("x", "e") and p.psi["1"] == ("x", "e")
    inst = PcpInstance.from_tiles(["x", "y"], [("xx", "x"), ("y", "xy")])
    p = pad_to_epcp(inst)
    assert p == load_fixture("MON-SOLV")
    for i in inst.index:
        assert tuple(c for c in p.phi[i] if c != "e") == inst.phi[i]
    with pytest.raises(ReductionError):
        pad_to_epcp(inst, e="x")


def test_e_equiv_and_L():
    assert e_equiv("xe", "x") and e_equiv("e", "") and not e_equiv("x", "y")
    assert L_hom("12", 2) == tuple("1122") and L_hom("", 2) == () and L_hom("1", 3) == tuple("111")


def test_instance_validation():
    with pytest.raises(ReductionError):
        EpcpInstance.from_tiles(["x"], [("xe", "x")])
    with pytest.raises(ReductionError):
        EpcpInstance.from_tiles(["x"], [("x", "x")])
    with pytest.raises(ReductionError):
        EpcpInstance.from_tiles(["x", "e"], [("xe", "xe")])
    with pytest.raises(ReductionError):
        EpcpInstance(("x", "1"), {"1": ("x", "e")}, {"1": ("x", "e")})


def test_counts(mon_solv):
    inst = mon_solv.instance
    assert len(mon_solv.T.states) == len(inst.lam) + len(inst.index) + 3 == 7
    assert validate(mon_solv.T).ok
    for art_letter in ("iota", "f_alpha", "f_beta", "f"):
        assert art_letter in mon_solv.T.alphabet


def test_identity_state(mon_triv, mon_solv, mon_unsolv):
    for art in (mon_triv, mon_solv, mon_unsolv):
        assert acts_as_identity(art.T, ["e"])


def test_chain_entry(mon_solv, mon_triv):
    assert act(mon_solv.T, ["1", "1"], ["alpha_0"]) == ("alpha_L",)
    assert dual_act(mon_solv.T, ["1", "1"], ["alpha_0"]) == ("x", "x")
    for art in (mon_solv, mon_triv):
        inst = art.instance
        for i in inst.index:
            block = (i,) * inst.L
            for side, hom in (("alpha", inst.phi), ("beta", inst.psi)):
                for start in (f"{side}_0", f"{side}_L"):
                    assert act(art.T, block, [start]) == (f"{side}_L",)
                    assert dual_act(art.T, block, [start]) == hom[i]


def test_markers(mon_solv):
    assert act(mon_solv.T, ["#1"], ["iota"]) == ("alpha_0",)
    assert act(mon_solv.T, ["#2"], ["iota"]) == ("beta_0",)
    assert act(mon_solv.T, ["#1"], ["alpha_L"]) == ("f",)


def test_compatible_examples(mon_solv):
    assert mon_solv.compatible(["#1", "e", "1"], ["#1", "1"])
    assert mon_solv.compatible(["#1"], ["#2"])
    assert mon_solv.compatible(["e"], [])


def test_shift_law_examples(mon_unsolv):
    assert mon_unsolv.shift_law(["#1"], 1) == ("e",)
    assert mon_unsolv.shift_law(["x", "#2", "1"], 1) == ("x", "e", "e")
    assert mon_unsolv.shift_law(["x", "1"], 0) == ("x", "1")
    with pytest.raises(ReductionError):
        mon_unsolv.shift_law(["x"], 1)


def test_shift_law_exhaustive(mon_solv):
    for p in all_sequences(mon_solv.T.states, 4):
        for mu in range(factorize(p).s + 1):
            assert mon_solv.shift_law(p, mu) == dual_act(mon_solv.T, p, ("a",) * mu)


def test_witness_round_trip(mon_triv, mon_solv, mon_unsolv):
    rel = mon_triv.witness_relation(["1"])
    assert (rel.left, rel.right) == (("#1", "1", "1", "#1"), ("#1", "1", "1", "#2"))
    assert mon_triv.extract_solution(*rel) == ("1",)
    rel = mon_solv.witness_relation(["1", "2"])
    assert len(rel.left) == 6 and decide_equal(mon_solv.T, *rel).equal
    assert mon_solv.instance.is_solution(mon_solv.extract_solution(*rel))
    for sol in pcp_solutions(mon_solv.instance.phi, mon_solv.instance.psi, 3, erase="e"):
        assert mon_solv.extract_solution(*mon_solv.witness_relation(sol)) == sol
    with pytest.raises(ReductionError):
        mon_unsolv.witness_relation(["1"])
    with pytest.raises(ReductionError):
        mon_solv.extract_solution(["#1", "1"], ["#1", "1"])


def test_free_presentation(mon_triv, mon_unsolv, mon_solv):
    v = check_free_presentation(mon_triv, 4)
    assert v.verdict == "violation"
    assert set(v.violation) == {("#1", "1", "1", "#1"), ("#1", "1", "1", "#2")}
    assert check_free_presentation(mon_unsolv, 3).verdict == "consistent-up-to-3"
    for art in (mon_triv, mon_unsolv, mon_solv):
        assert check_free_presentation(art, 1).consistent


def test_relations_compatible(mon_solv, mon_unsolv):
    for art in (mon_solv, mon_unsolv):
        for rel in enumerate_relations(art.T, 3):
            assert art.compatible(*rel)


def test_e_erasure(mon_solv):
    rhat = sorted(mon_solv.rhat_states)
    rng = random.Random(5)
    for _ in range(300):
        p = tuple(rng.choice(rhat) for _ in range(rng.randint(0, 3)))
        q = tuple(s for s in p if s != "e")
        for _ in range(rng.randint(0, 2)):
            k = rng.randint(0, len(q))
            q = q[:k] + ("e",) + q[k:]
        assert e_equiv(p, q) and decide_equal(mon_solv.T, p, q).equal


def test_compatible_same_hash_means_equal(mon_solv):
    states = mon_solv.T.state_list
    rng = random.Random(8)
    checked = 0
    for _ in range(400):
        p = tuple(rng.choice(states) for _ in range(rng.randint(0, 4)))
        q = tuple(s for s in p if s != "e")
        k = rng.randint(0, len(q))
        q = q[:k] + ("e",) + q[k:]
        if mon_solv.compatible(p, q) and pi_hash(p) == pi_hash(q):
            checked += 1
            assert decide_equal(mon_solv.T, p, q).equal
    assert checked > 100
