"""The ten acceptance criteria, each timed against its limit.

One PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations, product

import pytest

from automaton_freeness import (Transducer, UnsupportedConstruction, act, acts_as_identity,
                                bounded_separator, build_r_hat_semigroup, check_cancellative,
                                check_equidivisible, check_free_presentation,
                                check_length_function, compose, decide_equal, dual, dual_act,
                                e_equiv, enumerate_relations, factorize, pi_hash, power,
                                tuple_name, validate_free_basis)

from conftest import ACCEPTANCE_LINES
from oracles import all_sequences, lsb_binary, naive_act, naive_dual_act, pcp_solutions


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and elapsed >= limit:
            status = "FAIL"
        ACCEPTANCE_LINES.append((number, f"{status} {number:2d}  {title}  ({elapsed:.2f} s, limit {limit} s)"))
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f} s (limit {limit} s)"


def test_01_adding_machine(AM):
    with criterion(1, "adding machine semantics", 10):
        for i in range(256):
            assert act(AM, ["q"] * i, ["0"] * 8) == lsb_binary(i, 8)
        assert decide_equal(AM, ["id"], []).equal
        for i, j in combinations(range(65), 2):
            d = decide_equal(AM, ["q"] * i, ["q"] * j)
            assert not d.equal
            assert act(AM, ["q"] * i, d.separator) != act(AM, ["q"] * j, d.separator)


def test_02_free_generation(F2):
    with criterion(2, "free generation", 60):
        seqs = list(all_sequences(F2.states, 5, min_len=1))
        for p, q in combinations(seqs, 2):
            assert not decide_equal(F2, p, q).equal
        for p in all_sequences(F2.states, 8, min_len=1):
            for a in ("x", "y"):
                assert act(F2, p, (a,) * len(p)) == p


def _laws(T, p, q, u, v):
    assert act(T, p, u + v) == act(T, p, u) + act(T, dual_act(T, p, u), v)
    assert dual_act(T, q + p, u) == dual_act(T, q, act(T, p, u)) + dual_act(T, p, u)
    assert act(T, p, u) == naive_act(T, p, u) and dual_act(T, p, u) == naive_dual_act(T, p, u)


def _coherence(T, powers, C, p, u):
    k = len(p)
    if 2 <= k <= 3:
        name = tuple_name(p)
        assert act(powers[k], [name], u) == act(T, p, u)
        assert dual_act(powers[k], [name], u) == (tuple_name(dual_act(T, p, u)),)
    if k == 2:
        assert act(C, [tuple_name(p)], u) == act(T, [p[0]], act(T, [p[1]], u))


def _dual_swap(T, D, p, u):
    assert act(D, u[::-1], p[::-1]) == dual_act(T, p, u)[::-1]
    assert dual_act(D, u[::-1], p[::-1]) == act(T, p, u)[::-1]


def test_03_algebra_coherence(AM, F2, F2ID):
    with criterion(3, "algebra coherence", 60):
        rng = random.Random(2024)
        for T in (AM, F2, F2ID):
            powers = {2: power(T, 2), 3: power(T, 3)}
            C = compose(T, T)
            D = dual(T)
            assert dual(D) == T and power(T, 1) == T
            Q, S = T.state_list, T.letter_list

            def seq(n):
                return tuple(rng.choice(Q) for _ in range(n))

            def word(n):
                return tuple(rng.choice(S) for _ in range(n))

            for _ in range(1000):
                p, q = seq(rng.randint(0, 6)), seq(rng.randint(0, 6))
                u, v = word(rng.randint(0, 8)), word(rng.randint(0, 8))
                _laws(T, p, q, u, v)
                _coherence(T, powers, C, seq(rng.randint(2, 3)), u)
                _dual_swap(T, D, p, u)
            seqs = list(all_sequences(Q, 3))
            words = list(all_sequences(S, 3))
            for p in seqs:
                for u in words:
                    _coherence(T, powers, C, p, u)
                    _dual_swap(T, D, p, u)
                    for v in words:
                        assert act(T, p, u + v) == act(T, p, u) + act(T, dual_act(T, p, u), v)
                    for q in seqs:
                        assert dual_act(T, q + p, u) == \
                            dual_act(T, q, act(T, p, u)) + dual_act(T, p, u)


def test_04_semigroup_end_to_end(sgr_solv):
    with criterion(4, "semigroup encoding end to end (SGR-SOLV)", 120):
        T = sgr_solv.T
        assert decide_equal(T, ["#1", "1", "#1"], ["#1", "1", "#2"]).equal
        assert act(T, ["#1"], ["iota"]) == ("alpha",) and act(T, ["#2"], ["iota"]) == ("beta",)
        assert not decide_equal(T, ["#1"], ["#2"]).equal
        rel = sgr_solv.witness_relation(["1"])
        sol = sgr_solv.extract_solution(*rel)
        assert sgr_solv.instance.is_solution(sol)
        assert sol in pcp_solutions(sgr_solv.instance.phi, sgr_solv.instance.psi, len(sol))
        for p in all_sequences(T.states, 4):
            for mu in range(1, factorize(p).s + 1):
                assert sgr_solv.shift_law(p, mu) == dual_act(T, p, ("a",) * mu)


def test_05_semigroup_negative(sgr_unsolv):
    with criterion(5, "semigroup encoding negative fixture (SGR-UNSOLV)", 300):
        T = sgr_unsolv.T
        assert pcp_solutions(sgr_unsolv.instance.phi, sgr_unsolv.instance.psi, 6) == []
        rels = enumerate_relations(T, 3, verify=True)
        for rel in rels:
            assert sgr_unsolv.pi_prime(rel.left) == sgr_unsolv.pi_prime(rel.right)
            assert sgr_unsolv.length_value(rel.left) == sgr_unsolv.length_value(rel.right)
        assert check_length_function(T, sgr_unsolv.weights(), 3, proper=True).holds


def test_06_monoid_end_to_end(mon_triv, mon_solv):
    with criterion(6, "monoid encoding end to end (MON-TRIV, MON-SOLV)", 300):
        for art in (mon_triv, mon_solv):
            T, inst = art.T, art.instance
            assert acts_as_identity(T, ["e"])
            sols = pcp_solutions(inst.phi, inst.psi, 2, erase="e")
            assert sols
            for sol in sols:
                rel = art.witness_relation(sol)
                assert decide_equal(T, rel.left, rel.right).equal
                got = art.extract_solution(*rel)
                assert inst.is_solution(got)
            for i in inst.index:
                for side, hom in (("alpha", inst.phi), ("beta", inst.psi)):
                    for start in (f"{side}_0", f"{side}_L"):
                        assert act(T, (i,) * inst.L, [start]) == (f"{side}_L",)
                        assert dual_act(T, (i,) * inst.L, [start]) == hom[i]
            for p in all_sequences(T.states, 4):
                for mu in range(factorize(p).s + 1):
                    assert art.shift_law(p, mu) == dual_act(T, p, ("a",) * mu)


def test_07_monoid_negative(mon_unsolv):
    with criterion(7, "monoid encoding negative fixture (MON-UNSOLV)", 300):
        T = mon_unsolv.T
        assert check_free_presentation(mon_unsolv, 3).verdict == "consistent-up-to-3"
        for rel in enumerate_relations(T, 3):
            assert mon_unsolv.compatible(rel.left, rel.right)
            for side, other in ((rel.left, rel.right), (rel.right, rel.left)):
                for k in range(len(side) + 1):
                    padded = side[:k] + ("e",) + side[k:]
                    assert decide_equal(T, padded, other).equal


def test_08_consistency_matrix(sgr_solv, sgr_unsolv):
    with criterion(8, "consistency matrix (SGR-SOLV vs SGR-UNSOLV)", 300):
        k = 3
        rels = enumerate_relations(sgr_solv.T, k)
        w = sgr_solv.witness_relation(["1"])
        assert {(w.left, w.right), (w.right, w.left)} & {(r.left, r.right) for r in rels}
        assert any(pi_hash(r.left) != pi_hash(r.right) for r in rels)
        assert not check_cancellative(sgr_solv.T, k, "left").holds
        assert not check_equidivisible(sgr_solv.T, k).holds
        rels = enumerate_relations(sgr_unsolv.T, k)
        assert all(pi_hash(r.left) == pi_hash(r.right) for r in rels)
        assert check_cancellative(sgr_unsolv.T, k, "left").holds
        assert check_equidivisible(sgr_unsolv.T, k).holds


def test_09_oracle_agreement(AM, F2, F2ID, sgr_solv, sgr_unsolv, mon_triv, mon_solv, mon_unsolv):
    with criterion(9, "decide_equal vs bounded_separator on 2000 pairs", 120):
        rng = random.Random(99)
        automata = [AM, F2, F2ID, sgr_solv.T, sgr_unsolv.T, mon_triv.T, mon_solv.T, mon_unsolv.T]
        pools = [enumerate_relations(T, 3) for T in automata]
        equal_seen = separated_seen = 0
        for n in range(2000):
            idx = n % len(automata)
            T, pool = automata[idx], pools[idx]
            if n % 2 == 0 and pool:
                p, q = rng.choice(pool)
                if rng.random() < 0.5:
                    # wrap in a common context; equality must survive
                    ctx = tuple(rng.choice(T.state_list) for _ in range(rng.randint(0, 1)))
                    p, q = ctx + p, ctx + q
            else:
                p = tuple(rng.choice(T.state_list) for _ in range(rng.randint(0, 4)))
                q = tuple(rng.choice(T.state_list) for _ in range(rng.randint(0, 4)))
            d = decide_equal(T, p, q)
            b = bounded_separator(T, p, q, 4)
            if b.separated:
                assert not d.equal
            if d.equal:
                assert not b.separated
                equal_seen += 1
            else:
                separated_seen += 1
                if len(d.separator) <= 4:
                    assert b.separated and len(b.witness) == len(d.separator)
        assert equal_seen > 500 and separated_seen > 500


def test_10_honest_failure():
    with criterion(10, "unsupported adjunction and mutated free basis", 10):
        with pytest.raises(UnsupportedConstruction):
            build_r_hat_semigroup(["x", "y"], ["1"], 2)
        basis = build_r_hat_semigroup(["x", "y"], ["1"], 1)
        R = basis.automaton
        assert validate_free_basis(R, basis.pi, 3).ok
        rows = {t for t in R.transitions if (t.source, t.inp) != ("1", "x")}
        mutated = Transducer(R.states, R.alphabet, rows | {("1", "x", "1", "1")})
        report = validate_free_basis(mutated, basis.pi, 3)
        assert not report.ok
        p, q = report.counterexample
        image = lambda s: tuple(x for st in s for x in basis.pi[st])
        assert decide_equal(mutated, p, q).equal != (image(p) == image(q))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
