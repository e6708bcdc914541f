"""From a padded PCP instance to an automaton monoid with a candidate free basis.

The states are ``Lambda u I u {e, #1, #2}`` where ``e`` acts as the identity.
The monoid is free on ``Q \\ {e}`` iff the padded instance has no solution.
Since ``R-hat`` has no power states here, a tile is read letter by letter:
the index ``i`` has to be repeated ``L`` times, and the chain letters
``alpha[i,l]`` remember how far into ``phi(i)`` the reading has got.

A tile word ``phi(i)`` is written ``phi_L(i) ... phi_1(i)``: its rightmost
letter is produced first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence

from .automata import Transducer, dual_act
from .blocks import HASH1, HASH2, HASHES, Factorization, factorize, pi_hash
from .free import free_semigroup_automaton, with_identity_state
from .semigroup_reduction import PcpInstance, ReductionError, _as_word
from .wordproblem import CongruenceTable, Relation, decide_equal, enumerate_relations

__all__ = [
    "EpcpInstance",
    "MonoidArtifacts",
    "PresentationVerdict",
    "pad_to_epcp",
    "e_equiv",
    "L_hom",
    "build_monoid",
    "check_free_presentation",
]


def e_equiv(u: Sequence[str], v: Sequence[str], e: str = "e") -> bool:
    """Equal after deleting every ``e``."""
    return [x for x in u if x != e] == [x for x in v if x != e]


def L_hom(word: Sequence[str], L: int) -> tuple:
    """Repeat every letter ``L`` times: ``"12" -> "1122"`` for ``L = 2``."""
    return tuple(i for i in word for _ in range(L))


@dataclass(frozen=True)
class EpcpInstance:
    lam: tuple
    phi: Mapping[str, tuple]
    psi: Mapping[str, tuple]
    padding: str = "e"
    index: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "phi", {i: tuple(w) for i, w in self.phi.items()})
        object.__setattr__(self, "psi", {i: tuple(w) for i, w in self.psi.items()})
        object.__setattr__(self, "index", tuple(self.phi))
        e = self.padding
        if set(self.phi) != set(self.psi) or not self.index:
            raise ReductionError("phi and psi need the same non-empty index set")
        if set(self.index) & set(self.lam):
            raise ReductionError("index set and Lambda must be disjoint")
        if e in self.lam or e in self.index:
            raise ReductionError(f"padding symbol {e!r} must be fresh")
        if len(self.index) + len(set(self.lam)) < 2:
            raise ReductionError("need |I| + |Lambda| >= 2")
        lengths = {len(w) for w in (*self.phi.values(), *self.psi.values())}
        if len(lengths) != 1:
            raise ReductionError("all tile components must have the same length")
        if lengths.pop() < 2:
            raise ReductionError("tile length must be at least 2")
        for w in (*self.phi.values(), *self.psi.values()):
            if not set(w) <= set(self.lam) | {e}:
                raise ReductionError(f"tile {w} uses symbols outside Lambda and padding")

    @classmethod
    def from_tiles(cls, lam, tiles, padding: str = "e") -> "EpcpInstance":
        alphabet = list(lam) + [padding]
        phi = {str(n): _as_word(t, alphabet) for n, (t, _) in enumerate(tiles, start=1)}
        psi = {str(n): _as_word(b, alphabet) for n, (_, b) in enumerate(tiles, start=1)}
        return cls(tuple(lam), phi, psi, padding)

    @property
    def L(self) -> int:
        return len(next(iter(self.phi.values())))

    def apply(self, hom, word) -> tuple:
        return tuple(x for i in word for x in hom[i])

    def is_solution(self, word: Sequence[str]) -> bool:
        word = tuple(word)
        if not word or not set(word) <= set(self.index):
            return False
        return e_equiv(self.apply(self.phi, word), self.apply(self.psi, word), self.padding)


def pad_to_epcp(inst: PcpInstance, e: str = "e") -> EpcpInstance:
    """Right-pad every tile component with ``e`` to length ``max(2, L)``."""
    if e in inst.lam or e in inst.index:
        raise ReductionError(f"padding symbol {e!r} clashes with the instance")
    L = max(2, inst.L)
    phi = {i: w + (e,) * (L - len(w)) for i, w in inst.phi.items()}
    psi = {i: w + (e,) * (L - len(w)) for i, w in inst.psi.items()}
    return EpcpInstance(inst.lam, phi, psi, e)


def chain_letter(side: str, i: str, ell: int) -> str:
    return f"{side}[{i},{ell}]"


@dataclass(frozen=True, eq=False)
class MonoidArtifacts:
    T: Transducer
    instance: EpcpInstance
    symbols: dict

    @property
    def e(self) -> str:
        return self.instance.padding

    @property
    def rhat_states(self) -> frozenset:
        return self.T.states - set(HASHES)

    def L_hom(self, word: Sequence[str]) -> tuple:
        return L_hom(word, self.instance.L)

    @staticmethod
    def factorize(p: Sequence[str]) -> Factorization:
        return factorize(p)

    @staticmethod
    def pi_hash(p: Sequence[str]) -> tuple:
        return pi_hash(p)

    def pi_prime(self, p: Sequence[str]) -> tuple:
        return tuple(s for s in p if s != self.e)

    def e_equiv(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return e_equiv(u, v, self.e)

    def compatible(self, p: Sequence[str], q: Sequence[str]) -> bool:
        fp, fq = factorize(p), factorize(q)
        return fp.s == fq.s and all(self.e_equiv(a, b) for a, b in zip(fp.blocks, fq.blocks))

    def shift_law(self, p: Sequence[str], mu: int) -> tuple:
        """``p . a^mu``: everything right of ``p_mu`` collapses to ``e``."""
        f = factorize(p)
        if not 0 <= mu <= f.s:
            raise ReductionError(f"mu must lie in 0..{f.s}")
        if mu == 0:
            return tuple(p)
        head = []
        for nu in range(f.s, mu, -1):
            head += [*f.blocks[nu], f.marks[nu]]
        head += f.blocks[mu]
        return tuple(head) + (self.e,) * (len(p) - len(head))

    def witness_relation(self, solution: Sequence[str], check: bool = True) -> Relation:
        """``(#1 L(i) #1, #1 L(i) #2)`` for a solution ``i``."""
        solution = tuple(solution)
        if not self.instance.is_solution(solution):
            raise ReductionError(f"{solution!r} is not a solution")
        body = self.L_hom(solution)
        rel = Relation((HASH1, *body, HASH1), (HASH1, *body, HASH2))
        if check and not decide_equal(self.T, rel.left, rel.right).equal:
            raise ReductionError(f"witness {rel} is not a relation; construction is broken")
        return rel

    def extract_solution(self, p: Sequence[str], q: Sequence[str]) -> tuple:
        p, q = tuple(p), tuple(q)
        if pi_hash(p) == pi_hash(q):
            raise ReductionError("the two sequences have the same #-projection")
        if not decide_equal(self.T, p, q).equal:
            raise ReductionError("the two sequences are not equal in M(T)")
        if not self.compatible(p, q):
            raise ReductionError(f"consistency failure: relation {p} = {q} is not compatible")
        fp, fq = factorize(p), factorize(q)
        mu0 = next(mu for mu in range(1, fp.s + 1) if fp.marks[mu] != fq.marks[mu])
        if fp.marks[mu0] != HASH1:
            p, q, fp, fq = q, p, fq, fp
        shifted = dual_act(self.T, p, (self.symbols["a"],) * (mu0 - 1))
        if decide_equal(self.T, shifted, dual_act(self.T, q, (self.symbols["a"],) * (mu0 - 1))) \
                .equal is False:
            raise ReductionError("consistency failure: shifted sequences differ")
        outputs = self._iota_trace(shifted)
        if self.symbols["f"] not in outputs:
            raise ReductionError("consistency failure: iota never reaches f")
        block = [s for s in factorize(shifted).blocks[1] if s != self.e]
        L = self.instance.L
        if not block or len(block) % L or not set(block) <= set(self.instance.index):
            raise ReductionError(f"consistency failure: block {block} is not L(i)")
        solution = tuple(block[::L])
        if self.L_hom(solution) != tuple(block):
            raise ReductionError(f"consistency failure: block {block} is not L(i)")
        if not self.instance.is_solution(solution):
            raise ReductionError(f"consistency failure: {solution} is not a solution")
        return solution

    def _iota_trace(self, p: Sequence[str]) -> list:
        """Letters seen on the way up when ``p`` reads ``iota``."""
        c, seen = self.symbols["iota"], []
        for s in reversed(p):
            c = self.T.delta[s, c][0]
            seen.append(c)
        return seen


def build_monoid(instance: EpcpInstance) -> MonoidArtifacts:
    e, L, index = instance.padding, instance.L, instance.index
    gamma = set(instance.lam) | set(index)
    R = free_semigroup_automaton(sorted(gamma))
    rhat = with_identity_state(R, e)

    sym = {n: n for n in ("a", "b", "iota", "f_alpha", "f_beta", "f",
                          "alpha_0", "alpha_L", "beta_0", "beta_L")}
    chain = {(side, i, ell): chain_letter(side, i, ell)
             for side in ("alpha", "beta") for i in index for ell in range(1, L)}
    new_letters = set(sym.values()) | set(chain.values())
    clash = new_letters & (gamma | {e}) | set(HASHES) & gamma
    if clash:
        raise ReductionError(f"reserved symbols used by the instance: {sorted(clash)}")

    states = set(rhat.states) | set(HASHES)
    letters = gamma | new_letters
    trans = set(rhat.transitions)
    for x in HASHES:
        for c in gamma:
            trans.add((x, c, c, e))
    for c in new_letters:
        trans.add((e, c, c, e))
    non_e = states - {e}
    base = set(instance.lam) | set(index)

    for r in base:
        trans.add((r, "a", "a", e))
    for x in HASHES:
        trans.add((x, "a", "b", e))
    for q in non_e:
        trans.add((q, "b", "b", q))
    for r in base:
        trans.add((r, "iota", "iota", e))
    trans.add((HASH1, "iota", "alpha_0", e))
    trans.add((HASH2, "iota", "beta_0", e))
    for q in non_e:
        for c in ("f_alpha", "f_beta", "f"):
            trans.add((q, c, c, e))

    for side, hom in (("alpha", instance.phi), ("beta", instance.psi)):
        start, end, fail = f"{side}_0", f"{side}_L", f"f_{side}"

        def nth(i, ell, hom=hom):
            return hom[i][L - ell]

        def emitted(i, ell, side=side, end=end):
            return end if ell == L else chain[side, i, ell]

        for i in index:
            trans.add((i, start, emitted(i, 1), nth(i, 1)))
            trans.add((i, end, emitted(i, 1), nth(i, 1)))
            for ell in range(1, L):
                trans.add((i, chain[side, i, ell], emitted(i, ell + 1), nth(i, ell + 1)))
                for j in index:
                    if j != i:
                        trans.add((j, chain[side, i, ell], fail, e))
        for lam in instance.lam:
            for c in [start, end] + [chain[side, i, ell] for i in index for ell in range(1, L)]:
                trans.add((lam, c, fail, e))
        for x in HASHES:
            trans.add((x, start, fail, e))
            trans.add((x, end, "f", e))
            for i in index:
                for ell in range(1, L):
                    trans.add((x, chain[side, i, ell], fail, e))

    T = Transducer(states, letters, trans)
    symbols = dict(sym, e=e, hash1=HASH1, hash2=HASH2)
    symbols.update({f"{side}[{i},{ell}]": v for (side, i, ell), v in chain.items()})
    return MonoidArtifacts(T, instance, symbols)


class PresentationVerdict(NamedTuple):
    consistent: bool
    bound: int
    violation: Optional[Relation] = None

    @property
    def verdict(self) -> str:
        return f"consistent-up-to-{self.bound}" if self.consistent else "violation"

    def __bool__(self):
        return self.consistent


def check_free_presentation(art: MonoidArtifacts, k: int,
                            table: Optional[CongruenceTable] = None) -> PresentationVerdict:
    """Search relations of length ``<= k`` whose ``#``-projections differ.

    Such a relation means ``Q \\ {e}`` is not a free basis.  Finding none is
    evidence only up to ``k``; the question is undecidable in general.
    """
    for rel in enumerate_relations(art.T, k, table=table):
        if pi_hash(rel.left) != pi_hash(rel.right):
            return PresentationVerdict(False, k, rel)
    return PresentationVerdict(True, k)
