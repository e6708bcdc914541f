"""From a PCP instance to an automaton semigroup that is free iff PCP has no solution.

The automaton has states ``R-hat + {#1, #2}`` where ``R-hat`` generates
``(Lambda u I)^+`` freely.  ``#1`` and ``#2`` copy the state ``lambda_sharp``
on the base alphabet.  The extra letters ``a`` and ``b`` peel off
``#``-delimited blocks, and ``iota`` starts a chain that compares the ``phi``
and ``psi`` images of an index block.

Tile words are written leftmost-first, like state sequences, and an index word
``i_K ... i_1`` maps to the concatenation ``phi(i_K) ... phi(i_1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .automata import AutomatonError, Transducer, dual_act
from .blocks import HASH1, HASH2, HASHES, Factorization, factorize, pi_hash
from .free import AdjunctionProvider, FreeBasis, build_r_hat_semigroup
from .wordproblem import Relation, decide_equal

__all__ = [
    "PcpInstance",
    "SemigroupArtifacts",
    "ReductionError",
    "build_semigroup",
    "LETTERS",
]

LETTERS = {
    "a": "a", "b": "b", "iota": "iota",
    "alpha": "alpha", "alpha'": "alpha'", "f_alpha": "f_alpha",
    "beta": "beta", "beta'": "beta'", "f_beta": "f_beta", "f": "f",
}


class ReductionError(ValueError):
    """An invalid instance, or a check inside the encoding that did not hold."""


def _as_word(tile, alphabet) -> tuple:
    if isinstance(tile, str):
        if "," in tile:
            return tuple(x for x in tile.split(",") if x)
        if all(len(a) == 1 for a in alphabet):
            return tuple(tile)
        raise ReductionError(f"ambiguous tile {tile!r}: use a list or comma-separated symbols")
    return tuple(tile)


@dataclass(frozen=True)
class PcpInstance:
    """Tiles ``phi(i) / psi(i)`` over ``lam``, indexed ``"1".."n"``."""

    lam: tuple
    phi: Mapping[str, tuple]
    psi: Mapping[str, tuple]
    lambda_sharp: Optional[str] = None
    lambda_r: Optional[str] = None
    index: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "phi", {i: tuple(w) for i, w in self.phi.items()})
        object.__setattr__(self, "psi", {i: tuple(w) for i, w in self.psi.items()})
        object.__setattr__(self, "index", tuple(self.phi))
        if set(self.phi) != set(self.psi):
            raise ReductionError("phi and psi need the same index set")
        if not self.index:
            raise ReductionError("need at least one tile")
        if len(set(self.lam)) != len(self.lam):
            raise ReductionError("repeated symbol in Lambda")
        if set(self.index) & set(self.lam):
            raise ReductionError("index set and Lambda must be disjoint")
        for i in self.index:
            for w in (self.phi[i], self.psi[i]):
                if not w:
                    raise ReductionError(f"tile {i} has an empty component")
                if not set(w) <= set(self.lam):
                    raise ReductionError(f"tile {i} uses symbols outside Lambda")
        for name in (self.lambda_sharp, self.lambda_r):
            if name is not None and name not in self.lam:
                raise ReductionError(f"{name!r} is not in Lambda")

    @classmethod
    def from_tiles(cls, lam: Sequence[str], tiles, **kw) -> "PcpInstance":
        """``tiles`` is a list of ``(phi, psi)`` pairs; indices become ``"1".."n"``."""
        phi, psi = {}, {}
        for n, (top, bottom) in enumerate(tiles, start=1):
            phi[str(n)] = _as_word(top, lam)
            psi[str(n)] = _as_word(bottom, lam)
        return cls(tuple(lam), phi, psi, **kw)

    @property
    def L(self) -> int:
        return max(len(w) for w in (*self.phi.values(), *self.psi.values()))

    def apply(self, hom: Mapping[str, tuple], word: Sequence[str]) -> tuple:
        return tuple(x for i in word for x in hom[i])

    def is_solution(self, word: Sequence[str]) -> bool:
        word = tuple(word)
        if not word or not set(word) <= set(self.index):
            return False
        return self.apply(self.phi, word) == self.apply(self.psi, word)

    def marker_letters(self) -> tuple:
        """``(lambda_sharp, lambda_r)``: defaults are the two smallest symbols."""
        ordered = sorted(self.lam)
        sharp = self.lambda_sharp or ordered[0]
        r = self.lambda_r or next(x for x in ordered if x != sharp)
        if sharp == r:
            raise ReductionError("lambda_sharp and lambda_r must differ")
        return sharp, r


@dataclass(frozen=True, eq=False)
class SemigroupArtifacts:
    T: Transducer
    instance: PcpInstance
    rhat: FreeBasis
    lambda_sharp: str
    lambda_r: str
    symbols: dict

    @property
    def rhat_states(self) -> frozenset:
        return self.rhat.automaton.states

    def _lr(self, ell: int) -> str:
        return self._word_state[(self.lambda_r,) * ell]

    @cached_property
    def _word_state(self) -> dict:
        return {w: s for s, w in self.rhat.pi.items() if s not in self.instance.index}

    # projections -------------------------------------------------------

    def pi(self, p: Sequence[str]) -> tuple:
        """Flatten an ``R-hat`` sequence to a word over ``Lambda u I``."""
        if any(s in HASHES for s in p):
            raise ReductionError("pi is only defined on R-hat sequences")
        return tuple(x for s in p for x in self.rhat.pi[s])

    def r_equiv(self, p: Sequence[str], q: Sequence[str]) -> bool:
        return self.pi(p) == self.pi(q)

    def r_len(self, p: Sequence[str]) -> int:
        return len(self.pi(p))

    @staticmethod
    def pi_hash(p: Sequence[str]) -> tuple:
        return pi_hash(p)

    def pi_prime(self, p: Sequence[str]) -> tuple:
        return tuple(x for s in p for x in ((s,) if s in HASHES else self.rhat.pi[s]))

    @staticmethod
    def factorize(p: Sequence[str]) -> Factorization:
        return factorize(p)

    def compatible(self, p: Sequence[str], q: Sequence[str]) -> bool:
        fp, fq = factorize(p), factorize(q)
        return fp.s == fq.s and all(self.r_equiv(a, b) for a, b in zip(fp.blocks, fq.blocks))

    def length_value(self, p: Sequence[str]) -> int:
        return sum(1 if s in HASHES else len(self.rhat.pi[s]) for s in p)

    def weights(self) -> dict:
        return {s: self.length_value((s,)) for s in self.T.states}

    # the letter a --------------------------------------------------------

    def shift_law(self, p: Sequence[str], mu: int) -> tuple:
        """``p . a^mu`` from the block factorization alone.

        Blocks above ``p_mu`` stay, ``#x_mu`` becomes ``lambda_sharp``, every
        state further right turns into a power of ``lambda_r`` of the same
        projected length (``#`` counts as one).
        """
        f = factorize(p)
        if not 1 <= mu <= f.s:
            raise ReductionError(f"mu must lie in 1..{f.s}")
        head = []
        for nu in range(f.s, mu, -1):
            head += [*f.blocks[nu], f.marks[nu]]
        head += [*f.blocks[mu], self.lambda_sharp]
        tail = []
        for nu in range(mu - 1, -1, -1):
            tail += [self._lr(len(self.rhat.pi[s])) for s in f.blocks[nu]]
            if nu >= 1:
                tail.append(self.lambda_r)
        return tuple(head + tail)

    # relations and solutions -----------------------------------------------

    def witness_relation(self, solution: Sequence[str], check: bool = True) -> Relation:
        """``(#1 i #1, #1 i #2)`` for a PCP solution ``i``."""
        solution = tuple(solution)
        if not self.instance.is_solution(solution):
            raise ReductionError(f"{solution!r} is not a solution")
        rel = Relation((HASH1, *solution, HASH1), (HASH1, *solution, HASH2))
        if check and not decide_equal(self.T, rel.left, rel.right).equal:
            raise ReductionError(f"witness {rel} is not a relation; construction is broken")
        return rel

    def extract_solution(self, p: Sequence[str], q: Sequence[str]) -> tuple:
        """Read a PCP solution off a relation whose ``#``-projections differ."""
        p, q = tuple(p), tuple(q)
        if pi_hash(p) == pi_hash(q):
            raise ReductionError("the two sequences have the same #-projection")
        if not decide_equal(self.T, p, q).equal:
            raise ReductionError("the two sequences are not equal in S(T)")
        fp, fq = factorize(p), factorize(q)
        if not self.compatible(p, q):
            raise ReductionError(f"consistency failure: relation {p} = {q} is not compatible")
        mu0 = next(mu for mu in range(1, fp.s + 1) if fp.marks[mu] != fq.marks[mu])
        if fp.marks[mu0] != HASH1:
            p, q, fp, fq = q, p, fq, fp
        shift = (LETTERS["a"],) * (mu0 - 1)
        p1 = factorize(dual_act(self.T, p, shift))
        q1 = factorize(dual_act(self.T, q, shift))
        block = p1.blocks[1]
        if not block or not set(block) <= set(self.instance.index):
            raise ReductionError(f"consistency failure: block {block} is not an index word")
        if q1.blocks[1] != block:
            raise ReductionError("consistency failure: index blocks differ")
        if not self.instance.is_solution(block):
            raise ReductionError(f"consistency failure: {block} is not a solution")
        return block


def build_semigroup(instance: PcpInstance,
                    provider: Optional[AdjunctionProvider] = None) -> SemigroupArtifacts:
    """Build the reduction automaton ``T`` for a PCP instance.

    Only ``L == 1`` instances are self-contained; longer tiles need an
    adjunction ``provider`` (see :func:`build_r_hat_semigroup`).
    """
    lam, index = instance.lam, instance.index
    sharp, lr = instance.marker_letters()
    rhat = build_r_hat_semigroup(lam, index, instance.L, provider)
    R = rhat.automaton
    gamma = R.alphabet
    clash = (set(LETTERS.values()) & (gamma | R.states)) | (set(HASHES) & (gamma | R.states))
    if clash:
        raise ReductionError(f"reserved symbols used by the instance: {sorted(clash)}")

    word_state = {w: s for s, w in rhat.pi.items() if s not in index}
    lam_hat = [s for s in R.states if s not in index]

    def lr_state(s):
        return word_state[(lr,) * len(rhat.pi[s])]

    a, b, iota, f = LETTERS["a"], LETTERS["b"], LETTERS["iota"], LETTERS["f"]
    trans = set(R.transitions)
    for x in HASHES:
        for c in gamma:
            d, q = R.delta[sharp, c]
            trans.add((x, c, d, q))
    states = set(R.states) | set(HASHES)

    # T1: a removes the rightmost block, b is inert
    for r in R.states:
        trans.add((r, a, a, lr_state(r)))
    for x in HASHES:
        trans.add((x, a, b, sharp))
    for q in states:
        trans.add((q, b, b, q))

    # T2
    for r in R.states:
        for c in (iota, LETTERS["f_alpha"], LETTERS["f_beta"], f):
            trans.add((r, c, c, lr_state(r)))
    trans.add((HASH1, iota, LETTERS["alpha"], sharp))
    trans.add((HASH2, iota, LETTERS["beta"], sharp))
    for x in HASHES:
        for c in (LETTERS["f_alpha"], LETTERS["f_beta"], f):
            trans.add((x, c, c, sharp))
    for side, hom in (("alpha", instance.phi), ("beta", instance.psi)):
        start, chain, fail = LETTERS[side], LETTERS[side + "'"], LETTERS["f_" + side]
        for i in index:
            target = word_state[hom[i]]
            trans.add((i, start, chain, target))
            trans.add((i, chain, chain, target))
        for s in lam_hat:
            trans.add((s, start, fail, lr_state(s)))
            trans.add((s, chain, fail, lr_state(s)))
        for x in HASHES:
            trans.add((x, start, fail, sharp))
            trans.add((x, chain, f, sharp))

    T = Transducer(states, gamma | set(LETTERS.values()), trans)
    symbols = dict(LETTERS, lambda_sharp=sharp, lambda_r=lr, hash1=HASH1, hash2=HASH2)
    return SemigroupArtifacts(T, instance, rhat, sharp, lr, symbols)
