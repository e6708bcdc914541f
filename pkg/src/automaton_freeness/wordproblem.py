"""Deciding equality in the semigroup/monoid generated by a transducer.

Two state sequences are equal (``p =_T q``) when they act identically on every
word.  :func:`decide_equal` settles this exactly by exploring the finitely many
pairs ``(p . u, q . u)``.  :func:`bounded_separator` pushes every short word
through both sequences and serves as an independent check.

For bulk work (relation enumeration, bounded property searches)
:class:`CongruenceTable` partitions all sequences up to a length bound at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .automata import Transducer, step

__all__ = [
    "Decision",
    "Relation",
    "decide_equal",
    "acts_as_identity",
    "bounded_separator",
    "BoundedResult",
    "enumerate_relations",
    "CongruenceTable",
]


@dataclass(frozen=True)
class Decision:
    equal: bool
    separator: Optional[tuple] = None

    @property
    def outcome(self) -> str:
        return "equal" if self.equal else "separated"

    def __bool__(self):
        return self.equal


@dataclass(frozen=True, order=True)
class Relation:
    left: tuple
    right: tuple

    def __iter__(self):
        yield self.left
        yield self.right


def decide_equal(T: Transducer, p: Sequence[str], q: Sequence[str]) -> Decision:
    """Decide ``p =_T q``.

    Breadth-first search over reachable residual pairs, letters tried in
    sorted order, so a returned separator is a shortest one for that order.
    Pairs whose two components coincide are never expanded.
    """
    p, q = T.check_sequence(p), T.check_sequence(q)
    start = (p, q)
    if p == q:
        return Decision(True)
    parent = {start: None}
    queue = deque([start])
    letters = T.letter_list
    while queue:
        pair = queue.popleft()
        for c in letters:
            a, p2 = step(T, pair[0], c)
            b, q2 = step(T, pair[1], c)
            if a != b:
                word = [c]
                node = pair
                while parent[node] is not None:
                    node, letter = parent[node]
                    word.append(letter)
                return Decision(False, tuple(reversed(word)))
            nxt = (p2, q2)
            if p2 != q2 and nxt not in parent:
                parent[nxt] = (pair, c)
                queue.append(nxt)
    return Decision(True)


def acts_as_identity(T: Transducer, p: Sequence[str]) -> bool:
    return decide_equal(T, p, ()).equal


@dataclass(frozen=True)
class BoundedResult:
    separated: bool
    depth: int
    witness: Optional[tuple] = None

    @property
    def verdict(self) -> str:
        return "separated" if self.separated else "equal-up-to-depth"


def _words(n_letters: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((n_letters,) * length).reshape(length, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def _act_all(T: Transducer, p: Sequence[str], words: np.ndarray) -> np.ndarray:
    out_t, nxt_t = T.tables
    qi = {s: k for k, s in enumerate(T.state_list)}
    w = words.copy()
    for s in reversed(p):
        state = np.full(len(w), qi[s], dtype=np.int64)
        for j in range(w.shape[1]):
            col = w[:, j].copy()
            w[:, j] = out_t[state, col]
            state = nxt_t[state, col]
    return w


def bounded_separator(T: Transducer, p: Sequence[str], q: Sequence[str],
                      depth: int) -> BoundedResult:
    """Compare ``p o u`` and ``q o u`` for every word ``u`` with ``|u| <= depth``.

    Pure enumeration: each word is pushed through both sequences in full.
    Words are scanned by length, then lexicographically.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    p, q = T.check_sequence(p), T.check_sequence(q)
    letters = T.letter_list
    for length in range(depth + 1):
        words = _words(len(letters), length)
        diff = np.any(_act_all(T, p, words) != _act_all(T, q, words), axis=1)
        hits = np.flatnonzero(diff)
        if len(hits):
            return BoundedResult(True, depth, tuple(letters[k] for k in words[hits[0]]))
    return BoundedResult(False, depth)


class CongruenceTable:
    """The restriction of ``=_T`` to all sequences of length ``<= max_len``.

    Sequences of a fixed length are closed under the dual action, so the
    congruence on this finite set is the coarsest partition that respects
    single-letter outputs and residuals.  It is computed by Moore-style
    refinement over integer-encoded sequences.

    A sequence of length ``m`` is encoded as ``offset[m]`` plus its base-``|Q|``
    value, leftmost state most significant; within a length, code order is
    lexicographic order of sequences.
    """

    def __init__(self, T: Transducer, max_len: int):
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        self.T = T
        self.max_len = max_len
        self.states = T.state_list
        self.index = {s: k for k, s in enumerate(self.states)}
        n = len(self.states)
        self.offsets = [0]
        for m in range(max_len + 1):
            self.offsets.append(self.offsets[-1] + n ** m)
        self.size = self.offsets[-1]
        self.classes = self._refine()

    def encode(self, p: Sequence[str]) -> int:
        m = len(p)
        if m > self.max_len:
            raise ValueError(f"sequence longer than table bound {self.max_len}")
        n = len(self.states)
        code = 0
        for s in p:
            code = code * n + self.index[s]
        return self.offsets[m] + code

    def decode(self, code: int) -> tuple:
        m = 0
        while self.offsets[m + 1] <= code:
            m += 1
        code -= self.offsets[m]
        n = len(self.states)
        out = []
        for _ in range(m):
            code, r = divmod(code, n)
            out.append(self.states[r])
        return tuple(reversed(out))

    def length_codes(self, m: int) -> range:
        return range(self.offsets[m], self.offsets[m + 1])

    def class_of(self, p: Sequence[str]) -> int:
        return int(self.classes[self.encode(p)])

    def equal(self, p: Sequence[str], q: Sequence[str]) -> bool:
        return self.class_of(p) == self.class_of(q)

    def _transitions(self):
        out_t, nxt_t = self.T.tables
        n, n_letters = out_t.shape
        outputs = np.empty((self.size, n_letters), dtype=np.int64)
        residuals = np.empty((self.size, n_letters), dtype=np.int64)
        outputs[0] = np.arange(n_letters)
        residuals[0] = 0
        for m in range(1, self.max_len + 1):
            digits = np.indices((n,) * m).reshape(m, -1).T
            count = len(digits)
            cur = np.broadcast_to(np.arange(n_letters), (count, n_letters)).copy()
            res = np.zeros((count, n_letters), dtype=np.int64)
            for j in range(m - 1, -1, -1):
                d = digits[:, j][:, None]
                res += nxt_t[d, cur] * n ** (m - 1 - j)
                cur = out_t[d, cur]
            lo, hi = self.offsets[m], self.offsets[m + 1]
            outputs[lo:hi] = cur
            residuals[lo:hi] = res + self.offsets[m]
        return outputs, residuals

    def _refine(self) -> np.ndarray:
        outputs, residuals = self._transitions()
        _, cls = np.unique(outputs, axis=0, return_inverse=True)
        cls = cls.ravel()
        n_classes = cls.max() + 1
        while True:
            sig = np.column_stack([cls, cls[residuals]])
            _, new = np.unique(sig, axis=0, return_inverse=True)
            new = new.ravel()
            if new.max() + 1 == n_classes:
                return new
            cls, n_classes = new, new.max() + 1

    def groups(self, max_len: Optional[int] = None) -> list:
        """Congruence classes with at least two members, as sorted code lists."""
        limit = self.size if max_len is None else self.offsets[max_len + 1]
        cls = self.classes[:limit]
        order = np.argsort(cls, kind="stable")
        bounds = np.flatnonzero(np.diff(cls[order])) + 1
        return [g.tolist() for g in np.split(order, bounds) if len(g) > 1]


def _relation_key(p: tuple, q: tuple):
    return (len(p), p, len(q), q)


def enumerate_relations(T: Transducer, k: int, *, table: Optional[CongruenceTable] = None,
                        verify: bool = False) -> list:
    """All nontrivial relations ``(p, q)`` with ``|q| <= |p| <= k``.

    Within a pair the left side is the longer one, or the lexicographically
    larger one at equal length.  The list is sorted by
    ``(|left|, left, |right|, right)``.  ``verify`` re-confirms every pair
    with :func:`decide_equal`.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if table is None or table.T != T or table.max_len < k:
        table = CongruenceTable(T, k)
    rels = []
    for group in table.groups(k):
        seqs = [table.decode(c) for c in group]
        for a, b in product(seqs, repeat=2):
            if (len(a), a) > (len(b), b):
                rels.append(Relation(a, b))
    rels.sort(key=lambda r: _relation_key(r.left, r.right))
    if verify:
        for r in rels:
            if not decide_equal(T, r.left, r.right).equal:
                raise AssertionError(f"congruence table disagrees with decide_equal on {r}")
    return rels
