"""Complete deterministic letter-to-letter transducers and their actions.

A state sequence ``p = (p_n, ..., p_1)`` acts on a word with its *rightmost*
state first: ``p_1`` reads the input, ``p_2`` reads ``p_1``'s output, and so
on.  The leftmost state acts last.  Every function in this package follows
that convention; sequences and words are plain tuples of symbol strings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "AutomatonError",
    "InvalidAutomatonError",
    "Transition",
    "Transducer",
    "ValidationReport",
    "validate",
    "act",
    "dual_act",
    "step",
    "union",
    "compose",
    "power",
    "dual",
    "is_invertible",
    "tuple_name",
]


class AutomatonError(ValueError):
    """Raised for unknown symbols and ill-posed automaton operations."""


class InvalidAutomatonError(AutomatonError):
    """The transitions do not form a complete deterministic transducer."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(str(report))


class Transition(NamedTuple):
    source: str
    inp: str
    out: str
    target: str

    def __str__(self):
        return f"{self.source} --{self.inp}/{self.out}--> {self.target}"


@dataclass(frozen=True)
class ValidationReport:
    missing: tuple = ()
    duplicate: tuple = ()
    unknown: tuple = ()
    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return not (self.missing or self.duplicate or self.unknown or self.problems)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        parts = list(self.problems)
        if self.missing:
            parts.append("missing: " + ", ".join(map(repr, self.missing)))
        if self.duplicate:
            parts.append("duplicate: " + ", ".join(map(repr, self.duplicate)))
        if self.unknown:
            parts.append("unknown symbols: " + ", ".join(map(str, self.unknown)))
        return "; ".join(parts)


def validate(states, alphabet=None, transitions=None) -> ValidationReport:
    """Check that ``transitions`` define a total function ``Q x S -> S x Q``.

    Accepts either a :class:`Transducer` (always valid, it was checked on
    construction) or the three raw components.  Never raises.
    """
    if isinstance(states, Transducer):
        states, alphabet, transitions = states.states, states.alphabet, states.transitions
    states, alphabet = set(states), set(alphabet)
    transitions = [Transition(*t) for t in transitions]
    problems = []
    if not states:
        problems.append("empty state set")
    if not alphabet:
        problems.append("empty alphabet")
    unknown = []
    for t in transitions:
        if t.source not in states or t.target not in states:
            unknown.append(t)
        elif t.inp not in alphabet or t.out not in alphabet:
            unknown.append(t)
    counts = Counter((t.source, t.inp) for t in transitions)
    duplicate = sorted(cell for cell, n in counts.items() if n > 1)
    missing = sorted(cell for cell in product(states, alphabet) if cell not in counts)
    return ValidationReport(tuple(missing), tuple(duplicate), tuple(unknown), tuple(problems))


@dataclass(frozen=True)
class Transducer:
    """A complete S-automaton ``(Q, S, delta)``.

    Instances are immutable and compare structurally.  Construction fails with
    :class:`InvalidAutomatonError` unless every ``(state, letter)`` cell has
    exactly one transition.
    """

    states: frozenset
    alphabet: frozenset
    transitions: frozenset = field(repr=False)

    def __post_init__(self):
        trans = tuple(Transition(*t) for t in self.transitions)
        report = validate(self.states, self.alphabet, trans)
        if not report:
            raise InvalidAutomatonError(report)
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(trans))

    @cached_property
    def delta(self) -> dict:
        """``(state, letter) -> (output, next state)``."""
        return {(t.source, t.inp): (t.out, t.target) for t in self.transitions}

    @cached_property
    def state_list(self) -> tuple:
        return tuple(sorted(self.states))

    @cached_property
    def letter_list(self) -> tuple:
        return tuple(sorted(self.alphabet))

    @cached_property
    def tables(self):
        """Integer transition tables ``(out, nxt)`` of shape ``(|Q|, |S|)``.

        Indices follow :attr:`state_list` and :attr:`letter_list`.
        """
        qi = {q: k for k, q in enumerate(self.state_list)}
        ai = {a: k for k, a in enumerate(self.letter_list)}
        out = np.empty((len(qi), len(ai)), dtype=np.int64)
        nxt = np.empty_like(out)
        for (p, a), (b, q) in self.delta.items():
            out[qi[p], ai[a]] = ai[b]
            nxt[qi[p], ai[a]] = qi[q]
        out.setflags(write=False)
        nxt.setflags(write=False)
        return out, nxt

    def sorted_transitions(self) -> list:
        return sorted(self.transitions, key=lambda t: (t.source, t.inp))

    def __len__(self):
        return len(self.states)

    def __repr__(self):
        return (f"Transducer(states={sorted(self.states)}, "
                f"alphabet={sorted(self.alphabet)}, {len(self.transitions)} transitions)")

    def check_sequence(self, p: Iterable[str]) -> tuple:
        p = tuple(p)
        bad = [s for s in p if s not in self.states]
        if bad:
            raise AutomatonError(f"unknown state(s) {bad!r}")
        return p

    def check_word(self, u: Iterable[str]) -> tuple:
        u = tuple(u)
        bad = [c for c in u if c not in self.alphabet]
        if bad:
            raise AutomatonError(f"unknown letter(s) {bad!r}")
        return u


def step(T: Transducer, p: Sequence[str], c: str) -> tuple[str, tuple]:
    """Feed one letter through ``p``; return ``(p o c, p . c)``."""
    delta = T.delta
    residual = list(p)
    for k in range(len(residual) - 1, -1, -1):
        c, residual[k] = delta[residual[k], c]
    return c, tuple(residual)


def act(T: Transducer, p: Sequence[str], u: Sequence[str]) -> tuple:
    """The left action ``p o u``."""
    p, u = T.check_sequence(p), T.check_word(u)
    delta = T.delta
    word = list(u)
    for state in reversed(p):
        for j, c in enumerate(word):
            word[j], state = delta[state, c]
    return tuple(word)


def dual_act(T: Transducer, p: Sequence[str], u: Sequence[str]) -> tuple:
    """The dual (right) action ``p . u``: the residual sequence after ``u``."""
    p, u = T.check_sequence(p), T.check_word(u)
    residual = p
    for c in u:
        _, residual = step(T, residual, c)
    return residual


def union(T1: Transducer, T2: Transducer) -> Transducer:
    """Componentwise union; rejected unless the result is complete and deterministic."""
    return Transducer(T1.states | T2.states, T1.alphabet | T2.alphabet,
                      T1.transitions | T2.transitions)


def tuple_name(seq: Sequence[str]) -> str:
    """Canonical name of a composite state, e.g. ``('x', 'y') -> '(x,y)'``."""
    return "(" + ",".join(seq) + ")"


def compose(T2: Transducer, T1: Transducer) -> Transducer:
    """``T2 o T1``: state ``(q2,q1)`` applies ``q1`` first, then ``q2``."""
    if T1.alphabet != T2.alphabet:
        raise AutomatonError("composition needs identical alphabets")
    trans = []
    for p2, p1 in product(T2.states, T1.states):
        for a in T1.alphabet:
            b, q1 = T1.delta[p1, a]
            c, q2 = T2.delta[p2, b]
            trans.append((tuple_name((p2, p1)), a, c, tuple_name((q2, q1))))
    states = {tuple_name(pair) for pair in product(T2.states, T1.states)}
    return Transducer(states, T1.alphabet, trans)


def power(T: Transducer, k: int) -> Transducer:
    """The ``k``-th power; the state ``(p_k,...,p_1)`` acts as that sequence.

    ``power(T, 1)`` is ``T`` itself (plain state names).
    """
    if k < 1:
        raise AutomatonError("power needs k >= 1")
    if k == 1:
        return T
    trans = []
    for p in product(T.state_list, repeat=k):
        name = tuple_name(p)
        for a in T.alphabet:
            b, q = step(T, p, a)
            trans.append((name, a, b, tuple_name(q)))
    states = {tuple_name(p) for p in product(T.state_list, repeat=k)}
    return Transducer(states, T.alphabet, trans)


def dual(T: Transducer) -> Transducer:
    """Swap states and letters: ``p --a/b--> q`` becomes ``a --p/q--> b``."""
    return Transducer(T.alphabet, T.states,
                      [(t.inp, t.source, t.target, t.out) for t in T.transitions])


def is_invertible(T: Transducer) -> bool:
    """True iff every state permutes the alphabet (a G-automaton)."""
    for p in T.states:
        outs = {T.delta[p, a][0] for a in T.alphabet}
        if len(outs) != len(T.alphabet):
            return False
    return True
