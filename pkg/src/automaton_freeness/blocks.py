"""Splitting state sequences at the two marker states ``#1`` and ``#2``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

HASH1 = "#1"
HASH2 = "#2"
HASHES = (HASH1, HASH2)


@dataclass(frozen=True)
class Factorization:
    """``p = (p_s #x_s) ... (p_1 #x_1) p_0``.

    ``blocks[mu]`` is ``p_mu`` (so ``blocks[0]`` is the rightmost block) and
    ``marks[mu]`` is the marker closing ``p_mu`` on the right, for ``mu >= 1``.
    ``marks[0]`` is ``None``.
    """

    blocks: tuple
    marks: tuple

    @property
    def s(self) -> int:
        return len(self.blocks) - 1


def factorize(p: Sequence[str]) -> Factorization:
    pieces, marks, current = [], [], []
    for state in p:
        if state in HASHES:
            pieces.append(tuple(current))
            marks.append(state)
            current = []
        else:
            current.append(state)
    pieces.append(tuple(current))
    return Factorization(tuple(reversed(pieces)), (None,) + tuple(reversed(marks)))


def pi_hash(p: Sequence[str]) -> tuple:
    return tuple(s for s in p if s in HASHES)
