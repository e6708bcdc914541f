"""Generator automata for free semigroups and monoids."""

from __future__ import annotations

from itertools import groupby, product
from typing import NamedTuple, Optional, Protocol, Sequence

from .automata import AutomatonError, Transducer, power, tuple_name, union
from .wordproblem import CongruenceTable, decide_equal

__all__ = [
    "UnsupportedConstruction",
    "FreeBasis",
    "FreeBasisReport",
    "AdjunctionProvider",
    "UnsupportedAdjunction",
    "adding_machine",
    "free_semigroup_automaton",
    "with_identity_state",
    "union_of_powers",
    "power_projection",
    "adjoin_free_generator",
    "build_r_hat_semigroup",
    "validate_free_basis",
    "free_product_equal",
]


class UnsupportedConstruction(RuntimeError):
    """A construction this package cannot carry out (never a wrong automaton)."""


class FreeBasis(NamedTuple):
    automaton: Transducer
    pi: dict  # state -> tuple of basis letters


def adding_machine() -> Transducer:
    """The 2-state adding machine: ``q`` increments a binary number, lsb first."""
    return Transducer(
        {"q", "id"}, {"0", "1"},
        [("q", "0", "1", "id"), ("q", "1", "0", "q"),
         ("id", "0", "0", "id"), ("id", "1", "1", "id")],
    )


def free_semigroup_automaton(letters: Sequence[str]) -> Transducer:
    """States = alphabet = ``letters``, with ``a --b/a--> b`` for all ``a, b``.

    Generates the free semigroup over ``letters`` (``|letters| >= 2``).
    """
    letters = set(letters)
    if len(letters) < 2:
        raise AutomatonError("a free generating automaton needs at least two letters")
    return Transducer(letters, letters, [(a, b, a, b) for a in letters for b in letters])


def with_identity_state(T: Transducer, name: str) -> Transducer:
    if name in T.states:
        raise AutomatonError(f"state name {name!r} already in use")
    loops = Transducer({name}, T.alphabet, [(name, c, c, name) for c in T.alphabet])
    return union(T, loops)


def union_of_powers(T: Transducer, L: int) -> Transducer:
    """``T u T^2 u ... u T^L``; the states of ``T^l`` are ``l``-tuples."""
    if L < 1:
        raise AutomatonError("L must be >= 1")
    result = T
    for ell in range(2, L + 1):
        result = union(result, power(T, ell))
    return result


def power_projection(T: Transducer, L: int) -> dict:
    """Map every state of :func:`union_of_powers` to the sequence it stands for."""
    pi = {s: (s,) for s in T.states}
    for ell in range(2, L + 1):
        for p in product(T.state_list, repeat=ell):
            pi[tuple_name(p)] = p
    return pi


def free_product_equal(S: Transducer, a: Sequence[str], b: Sequence[str], q: str,
                       table: Optional[CongruenceTable] = None) -> bool:
    """Equality of two words over ``states(S) + {q}`` in ``S(S) * q^+``.

    Both words are cut into maximal runs of ``q`` and of old states; they are
    equal iff the run patterns agree, ``q``-runs have equal lengths and the
    old-state runs are equal in ``S(S)``.
    """
    def runs(w):
        return [(k, tuple(g)) for k, g in groupby(w, key=lambda s: s == q)]

    ra, rb = runs(a), runs(b)
    if [r[0] for r in ra] != [r[0] for r in rb]:
        return False
    for (is_q, x), (_, y) in zip(ra, rb):
        if is_q:
            if len(x) != len(y):
                return False
        elif table is not None and max(len(x), len(y)) <= table.max_len:
            if not table.equal(x, y):
                return False
        else:
            if not decide_equal(S, x, y).equal:
                return False
    return True


class AdjunctionProvider(Protocol):
    def adjoin(self, S: Transducer, qname: str) -> Transducer:
        """Return an automaton with states ``states(S) + {qname}`` generating ``S(S) * q^+``."""


class UnsupportedAdjunction:
    """The default provider: refuses every request."""

    def adjoin(self, S: Transducer, qname: str) -> Transducer:
        raise UnsupportedConstruction(
            "adjoining a free generator to an arbitrary automaton semigroup needs an "
            "external construction; plug one in through the `provider` argument")


def adjoin_free_generator(S: Transducer, qname: str,
                          provider: Optional[AdjunctionProvider] = None,
                          check_bound: int = 3) -> Transducer:
    """Add a state ``qname`` that is free over ``S(S)``.

    The work is delegated to ``provider``.  Its output is only accepted after a
    bounded check: for all sequences of length ``<= check_bound`` the new
    automaton must relate exactly the pairs that are equal in ``S(S) * q^+``.
    Failure raises :class:`UnsupportedConstruction`.
    """
    if qname in S.states:
        raise AutomatonError(f"state name {qname!r} already in use")
    provider = provider or UnsupportedAdjunction()
    T = provider.adjoin(S, qname)
    if T.states != S.states | {qname}:
        raise UnsupportedConstruction("provider returned the wrong state set")
    old_table = CongruenceTable(S, check_bound)
    table = CongruenceTable(T, check_bound)
    codes = range(table.offsets[1], table.size)
    seqs = [table.decode(c) for c in codes]
    for a, b in product(seqs, repeat=2):
        if a < b and table.equal(a, b) != free_product_equal(S, a, b, qname, old_table):
            raise UnsupportedConstruction(
                f"provider output fails the free-product check on {a} vs {b}")
    return T


def build_r_hat_semigroup(lam: Sequence[str], index: Sequence[str], L: int,
                          provider: Optional[AdjunctionProvider] = None) -> FreeBasis:
    """An automaton on ``Lambda-hat u I`` generating ``(Lambda u I)^+`` freely.

    ``Lambda-hat`` holds one state per nonempty word over ``lam`` of length
    ``<= L``.  For ``L == 1`` this is the free generating automaton over
    ``lam + index``.  For ``L >= 2`` the index generators are adjoined one at a
    time through ``provider``, which by default is unsupported.
    """
    lam, index = list(lam), list(index)
    if len(set(lam)) < 2:
        raise AutomatonError("need |Lambda| >= 2")
    if not index:
        raise AutomatonError("need |I| >= 1")
    if set(lam) & set(index):
        raise AutomatonError("Lambda and I must be disjoint")
    if L < 1:
        raise AutomatonError("L must be >= 1")
    if L == 1:
        T = free_semigroup_automaton(lam + index)
        return FreeBasis(T, {s: (s,) for s in T.states})
    base = free_semigroup_automaton(lam)
    T = union_of_powers(base, L)
    pi = power_projection(base, L)
    for i in index:
        T = adjoin_free_generator(T, i, provider)
        pi[i] = (i,)
    return FreeBasis(T, pi)


class FreeBasisReport(NamedTuple):
    ok: bool
    bound: int
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def validate_free_basis(T: Transducer, pi: dict, k: int) -> FreeBasisReport:
    """Check ``p =_T q  <=>  pi(p) == pi(q)`` for all nonempty sequences of length ``<= k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = CongruenceTable(T, k)
    by_class: dict = {}
    by_image: dict = {}
    for code in range(table.offsets[1], table.size):
        p = table.decode(code)
        image = tuple(x for s in p for x in pi[s])
        cls = int(table.classes[code])
        first = by_class.setdefault(cls, (p, image))
        if first[1] != image:
            return FreeBasisReport(False, k, (first[0], p))
        other = by_image.setdefault(image, (p, cls))
        if other[1] != cls:
            return FreeBasisReport(False, k, (other[0], p))
    return FreeBasisReport(True, k)
