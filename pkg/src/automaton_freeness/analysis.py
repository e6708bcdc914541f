"""Bounded searches for counterexamples to algebraic properties of ``S(T)``.

Every checker here is a semi-decision: it either returns a concrete
counterexample (re-verified with :func:`decide_equal` before it is reported)
or says that nothing was found up to the bound.  The unbounded questions are
undecidable, so a clean report is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .automata import Transducer
from .wordproblem import CongruenceTable, decide_equal, enumerate_relations

__all__ = [
    "PropertyReport",
    "check_cancellative",
    "check_equidivisible",
    "check_length_function",
    "check_hom_extension",
]


@dataclass(frozen=True)
class PropertyReport:
    property: str
    bound: int
    counterexample: Optional[dict] = None
    details: str = ""
    bounds: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    @property
    def verdict(self) -> str:
        if self.holds:
            return f"no-counterexample-up-to-{self.bound}"
        return "counterexample"

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        cex = None
        if self.counterexample is not None:
            cex = {k: list(v) if isinstance(v, tuple) else v
                   for k, v in self.counterexample.items()}
        return {"property": self.property, "bound": self.bound, "verdict": self.verdict,
                "counterexample": cex, "details": self.details, "bounds": dict(self.bounds)}


def _check(k: int):
    if k < 1:
        raise ValueError("k must be >= 1")


def _codes(table: CongruenceTable, lo: int, hi: int):
    """Codes and lengths of all sequences with length in ``lo..hi``."""
    codes = np.arange(table.offsets[lo], table.offsets[hi + 1])
    lengths = np.repeat(np.arange(lo, hi + 1),
                        [table.offsets[m + 1] - table.offsets[m] for m in range(lo, hi + 1)])
    return codes, lengths


def _concat(table: CongruenceTable, left: np.ndarray, left_len: np.ndarray,
            right: np.ndarray, right_len: np.ndarray) -> np.ndarray:
    """Codes of ``u v`` for every ``u`` in ``left`` (rows) and ``v`` in ``right`` (columns)."""
    n = len(table.states)
    off = np.asarray(table.offsets)
    lv = (left - off[left_len])[:, None]
    rv = (right - off[right_len])[None, :]
    return off[left_len[:, None] + right_len[None, :]] + lv * n ** right_len[None, :] + rv


def _verified(T: Transducer, p, q, want_equal: bool) -> None:
    if decide_equal(T, p, q).equal != want_equal:
        raise AssertionError(f"bounded table disagrees with decide_equal on {p} vs {q}")


def _cancel_side(T, table, k, side):
    classes = table.classes
    for t_max in range(1, k + 1):
        t_codes, t_len = _codes(table, 1, t_max)
        ct = classes[t_codes]
        for m in range(1, k + 1):
            s_codes, s_len = _codes(table, m, m)
            if side == "left":
                prod = _concat(table, s_codes, s_len, t_codes, t_len)
            else:
                prod = _concat(table, t_codes, t_len, s_codes, s_len).T
            cp = classes[prod]
            for row in range(len(s_codes)):
                order = np.lexsort((t_codes, ct, cp[row]))
                c, t = cp[row][order], ct[order]
                start = np.r_[True, c[1:] != c[:-1]]
                group = np.cumsum(start) - 1
                first_t = t[start][group]
                bad = np.flatnonzero(t != first_t)
                if not len(bad):
                    continue
                j = bad[0]
                i = np.flatnonzero(start)[group[j]]
                s = table.decode(int(s_codes[row]))
                t1, t2 = table.decode(int(t_codes[order[i]])), table.decode(int(t_codes[order[j]]))
                return s, t1, t2
    return None


def check_cancellative(T: Transducer, k: int, side: str = "both",
                       table: Optional[CongruenceTable] = None) -> PropertyReport:
    """Look for ``s t = s t'`` (left) or ``t s = t' s`` (right) with ``t != t'``.

    All of ``s, t, t'`` are nonempty of length ``<= k``.  Shorter ``t`` is
    tried first.
    """
    _check(k)
    if side not in ("left", "right", "both"):
        raise ValueError("side must be left, right or both")
    if table is None or table.T != T or table.max_len < 2 * k:
        table = CongruenceTable(T, 2 * k)
    sides = ("left", "right") if side == "both" else (side,)
    for sd in sides:
        hit = _cancel_side(T, table, k, sd)
        if hit:
            s, t1, t2 = hit
            lhs, rhs = ((s + t1, s + t2) if sd == "left" else (t1 + s, t2 + s))
            _verified(T, lhs, rhs, True)
            _verified(T, t1, t2, False)
            return PropertyReport(
                f"{side}-cancellative", k,
                {"side": sd, "s": s, "t": t1, "t_prime": t2},
                f"{' '.join(lhs)} = {' '.join(rhs)} but {' '.join(t1)} != {' '.join(t2)}")
    return PropertyReport(f"{side}-cancellative", k)


def check_equidivisible(T: Transducer, k: int, x_bound: Optional[int] = None,
                        table: Optional[CongruenceTable] = None) -> PropertyReport:
    """Look for ``s1 s2 = s1' s2'`` with no middle factor ``x``.

    A middle factor is ``x`` in ``{eps} u Q^{<= x_bound}`` with either
    ``s1 = s1' x, x s2 = s2'`` or ``s1' = s1 x, x s2' = s2``.  The parts are
    nonempty of length ``<= k``; ``x_bound`` defaults to ``k``.  Pairs that
    coincide letter for letter always have a middle factor and are skipped.
    A reported counterexample only says no ``x`` exists up to ``x_bound``.
    """
    _check(k)
    xb = k if x_bound is None else x_bound
    need = max(2 * k, k + xb)
    if table is None or table.T != T or table.max_len < need:
        table = CongruenceTable(T, need)
    classes = table.classes
    x_codes, x_len = _codes(table, 0, xb)
    cache: dict = {}

    def right_mult(u):
        # classes of u x for every candidate x
        if u not in cache:
            c = table.encode(u)
            cache[u] = classes[_concat(table, np.array([c]), np.array([len(u)]),
                                       x_codes, x_len)[0]]
        return cache[u]

    def left_mult(u):
        key = ("L", u)
        if key not in cache:
            c = table.encode(u)
            cache[key] = classes[_concat(table, x_codes, x_len,
                                         np.array([c]), np.array([len(u)]))[:, 0]]
        return cache[key]

    def splits(p):
        return [(p[:i], p[i:]) for i in range(max(1, len(p) - k), min(k, len(p) - 1) + 1)]

    def has_middle(a1, a2, b1, b2):
        for u1, u2, v1, v2 in ((a1, a2, b1, b2), (b1, b2, a1, a2)):
            ok = (right_mult(v1) == classes[table.encode(u1)]) & \
                 (left_mult(u2) == classes[table.encode(v2)])
            if ok.any():
                return True
        return False

    for group in table.groups(2 * k):
        members = [table.decode(c) for c in group if len(table.decode(c)) >= 2]
        for a_idx, P in enumerate(members):
            for Q in members[a_idx:]:
                for a1, a2 in splits(P):
                    for b1, b2 in splits(Q):
                        if P == Q and len(a1) <= len(b1):
                            continue
                        if not has_middle(a1, a2, b1, b2):
                            _verified(T, a1 + a2, b1 + b2, True)
                            return PropertyReport(
                                "equidivisible", k,
                                {"s1": a1, "s2": a2, "s1_prime": b1, "s2_prime": b2},
                                f"no middle factor of length <= {xb} found",
                                {"parts": k, "x": xb})
    return PropertyReport("equidivisible", k, bounds={"parts": k, "x": xb})


def check_length_function(T: Transducer, weights: Mapping[str, int], k: int,
                          proper: bool = False,
                          table: Optional[CongruenceTable] = None) -> PropertyReport:
    """Check that summed state weights are constant on ``=_T`` classes up to ``k``.

    With ``proper`` set, weight 0 is only allowed for sequences equal to the
    empty sequence.
    """
    _check(k)
    missing = set(T.states) - set(weights)
    if missing:
        raise ValueError(f"no weight for states {sorted(missing)}")
    if any(int(w) < 0 for w in weights.values()):
        raise ValueError("weights must be natural numbers")
    if table is None or table.T != T or table.max_len < k:
        table = CongruenceTable(T, k)
    w = np.array([int(weights[s]) for s in table.states], dtype=np.int64)
    n = len(w)
    total = np.zeros(table.offsets[k + 1], dtype=np.int64)
    for m in range(1, k + 1):
        digits = np.indices((n,) * m).reshape(m, -1)
        total[table.length_codes(m)] = w[digits].sum(axis=0)
    classes = table.classes[: len(total)]
    name = "proper-length-function" if proper else "length-function"
    for group in table.groups(k):
        ws = total[group]
        bad = np.flatnonzero(ws != ws[0])
        if len(bad):
            p, q = table.decode(group[bad[0]]), table.decode(group[0])
            _verified(T, p, q, True)
            return PropertyReport(name, k, {"p": p, "q": q,
                                            "weights": [int(ws[bad[0]]), int(ws[0])]},
                                  "equal sequences with different weights")
    if proper:
        zero = np.flatnonzero((total == 0) & (classes != classes[0]))
        if len(zero):
            p = table.decode(int(zero[0]))
            _verified(T, p, (), False)
            return PropertyReport(name, k, {"p": p, "q": (), "weights": [0, 0]},
                                  "weight 0 on a sequence that is not the identity")
    return PropertyReport(name, k)


def check_hom_extension(T1: Transducer, T2: Transducer, f: Mapping[str, Sequence[str]],
                        k: int, table: Optional[CongruenceTable] = None) -> PropertyReport:
    """Does ``f`` respect every relation ``p = q`` of ``S(T1)`` with ``|p|, |q| <= k``?

    ``p`` and ``q`` range over nonempty sequences (a semigroup homomorphism).
    """
    _check(k)
    if set(f) != set(T1.states):
        raise ValueError("map must be defined on exactly the states of the source automaton")
    image = {s: tuple(v) for s, v in f.items()}
    for s, v in image.items():
        if not v or not set(v) <= T2.states:
            raise ValueError(f"image of {s!r} must be a nonempty sequence over the target states")
    for rel in enumerate_relations(T1, k, table=table):
        if not rel.right:
            continue
        fp = tuple(x for s in rel.left for x in image[s])
        fq = tuple(x for s in rel.right for x in image[s])
        d = decide_equal(T2, fp, fq)
        if not d.equal:
            return PropertyReport("hom-extension", k,
                                  {"p": rel.left, "q": rel.right, "f_p": fp, "f_q": fq,
                                   "separator": d.separator},
                                  "a relation of the source is not preserved")
    return PropertyReport("hom-extension", k)
