from itertools import product

import pytest

from automaton_freeness import (Transducer, UnsupportedConstruction, act, adding_machine,
                                adjoin_free_generator, build_r_hat_semigroup, decide_equal,
                                dual_act, enumerate_relations, free_semigroup_automaton,
                                power_projection, union_of_powers, validate_free_basis,
                                with_identity_state)
from automaton_freeness.automata import AutomatonError

from oracles import lsb_binary


def test_adding_machine_rows(AM):
    assert adding_machine() == AM
    rows = {"000": "q id id", "100": "q q id", "010": "q id id", "110": "q q q"}
    for u, states in rows.items():
        # state in control before each letter is read
        seen = tuple(dual_act(AM, ["q"], u[:j])[0] for j in range(3))
        assert seen == tuple(states.split())
    assert act(AM, ["q"], "110") == tuple("001")


def test_adding_machine_counts(AM):
    for i in range(256):
        assert act(AM, ["q"] * i, "0" * 8) == lsb_binary(i, 8)
    for u in product("01", repeat=6):
        assert act(AM, ["id"], u) == u


def test_free_automaton(F2):
    assert free_semigroup_automaton(["x", "y"]) == F2
    assert act(F2, ["x"], ["y"]) == ("x",) and dual_act(F2, ["x"], ["y"]) == ("y",)
    assert act(F2, ["y", "x"], ["x", "x"]) == ("y", "x")
    assert not decide_equal(F2, ["x"], ["y"]).equal
    with pytest.raises(AutomatonError):
        free_semigroup_automaton(["x"])


def test_with_identity(F2, F2ID, AM):
    assert decide_equal(F2ID, ["id", "x"], ["x"]).equal
    with pytest.raises(AutomatonError):
        with_identity_state(AM, "id")
    # no merging or splitting of old classes
    old = {(r.left, r.right) for r in enumerate_relations(F2, 3)}
    new = {(r.left, r.right) for r in enumerate_relations(F2ID, 3)
           if "id" not in r.left + r.right}
    assert old == new == set()


def test_union_of_powers(F2):
    assert union_of_powers(F2, 1) == F2
    U = union_of_powers(F2, 2)
    for u in product("xy", repeat=4):
        assert act(U, ["(x,y)"], u) == act(F2, ["x", "y"], u)
    assert decide_equal(U, ["(x,y)"], ["x", "y"]).equal
    assert power_projection(F2, 2)["(x,y)"] == ("x", "y")
    assert validate_free_basis(U, power_projection(F2, 2), 2).ok


def test_r_hat_l1():
    basis = build_r_hat_semigroup(["x", "y"], ["1"], 1)
    assert basis.automaton == free_semigroup_automaton(["x", "y", "1"])
    assert basis.pi == {s: (s,) for s in ("x", "y", "1")}
    assert validate_free_basis(basis.automaton, basis.pi, 3).ok


def test_r_hat_unsupported():
    with pytest.raises(UnsupportedConstruction):
        build_r_hat_semigroup(["x", "y"], ["1"], 2)


def test_r_hat_preconditions():
    for lam, index, L in [(["x"], ["1"], 1), (["x", "y"], [], 1), (["x", "y"], ["x"], 1),
                          (["x", "y"], ["1"], 0)]:
        with pytest.raises(AutomatonError):
            build_r_hat_semigroup(lam, index, L)


class GoodProvider:
    """Correct for free automata: the bigger free automaton."""

    def adjoin(self, S, qname):
        return free_semigroup_automaton(sorted(S.states | {qname}))


class IdentityProvider:
    """Wrong on purpose: the new state acts as the identity."""

    def adjoin(self, S, qname):
        loops = Transducer({qname}, S.alphabet, [(qname, a, a, qname) for a in S.alphabet])
        return Transducer(S.states | {qname}, S.alphabet, S.transitions | loops.transitions)


def test_adjunction_checked(F2):
    T = adjoin_free_generator(F2, "z", GoodProvider())
    assert T.states == {"x", "y", "z"}
    with pytest.raises(UnsupportedConstruction):
        adjoin_free_generator(F2, "z", IdentityProvider())
    with pytest.raises(UnsupportedConstruction):
        adjoin_free_generator(F2, "z")
    with pytest.raises(AutomatonError):
        adjoin_free_generator(F2, "x", GoodProvider())


def test_r_hat_rejects_wrong_provider():
    # the free-automaton provider forgets that (x,y) equals x y in a union of powers
    with pytest.raises(UnsupportedConstruction, match="free-product check"):
        build_r_hat_semigroup(["x", "y"], ["1"], 2, provider=GoodProvider())


def test_free_basis_mutation():
    T = free_semigroup_automaton(["x", "y", "1"])
    pi = {s: (s,) for s in T.states}
    bad_rows = {t for t in T.transitions if (t.source, t.inp) != ("x", "y")}
    bad = Transducer(T.states, T.alphabet, bad_rows | {("x", "y", "x", "x")})
    report = validate_free_basis(bad, pi, 3)
    assert not report.ok
    p, q = report.counterexample
    assert decide_equal(bad, p, q).equal != (pi_image(pi, p) == pi_image(pi, q))


def pi_image(pi, p):
    return tuple(x for s in p for x in pi[s])
