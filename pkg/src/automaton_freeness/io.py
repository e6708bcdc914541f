"""File formats: canonical automaton JSON, instance JSON, DOT, bundled fixtures."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Union

from .automata import InvalidAutomatonError, Transducer, dual, validate
from .monoid_reduction import EpcpInstance, MonoidArtifacts
from .semigroup_reduction import PcpInstance, ReductionError, SemigroupArtifacts

__all__ = [
    "FormatError",
    "automaton_to_dict",
    "dumps_automaton",
    "parse_automaton",
    "instance_to_dict",
    "dumps_instance",
    "parse_instance",
    "artifacts_to_dict",
    "export_dot",
    "FIXTURES",
    "load_fixture",
]


class FormatError(ValueError):
    """A document that does not parse or does not describe a valid object."""


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load_json(source: Union[str, Path, dict], what: str):
    if isinstance(source, dict):
        return source
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: malformed JSON at line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from None


# automata ------------------------------------------------------------------

def automaton_to_dict(T: Transducer) -> dict:
    return {
        "states": T.state_list,
        "alphabet": T.letter_list,
        "transitions": [{"from": p, "in": a, "out": b, "to": q}
                        for p, a, b, q in T.sorted_transitions()],
    }


def dumps_automaton(T: Transducer) -> str:
    """Canonical text: sorted states, letters and ``(from, in)``-sorted transitions."""
    return _dumps(automaton_to_dict(T))


def _string_list(doc, key, where):
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FormatError(f"{where}.{key}: expected a list of strings")
    return value


def parse_automaton(source: Union[str, Path, dict]) -> Transducer:
    doc = _load_json(source, "automaton")
    if not isinstance(doc, dict):
        raise FormatError("automaton: top level must be an object")
    states = _string_list(doc, "states", "automaton")
    alphabet = _string_list(doc, "alphabet", "automaton")
    rows = doc.get("transitions")
    if not isinstance(rows, list):
        raise FormatError("automaton.transitions: expected a list")
    transitions = []
    for n, row in enumerate(rows):
        where = f"automaton.transitions[{n}]"
        if not isinstance(row, dict):
            raise FormatError(f"{where}: expected an object")
        missing = [k for k in ("from", "in", "out", "to") if k not in row]
        if missing:
            raise FormatError(f"{where}: missing field(s) {', '.join(missing)}")
        for key, pool in (("from", states), ("to", states), ("in", alphabet), ("out", alphabet)):
            if row[key] not in pool:
                kind = "state" if key in ("from", "to") else "letter"
                raise FormatError(f"{where}.{key}: unknown {kind} {row[key]!r}")
        transitions.append((row["from"], row["in"], row["out"], row["to"]))
    report = validate(states, alphabet, transitions)
    if not report.ok:
        raise FormatError(f"automaton: {report}")
    try:
        return Transducer(states, alphabet, transitions)
    except InvalidAutomatonError as exc:
        raise FormatError(f"automaton: {exc}") from None


# instances -----------------------------------------------------------------

def _word_text(word, symbols) -> Union[str, list]:
    if all(len(s) == 1 and s != "," for s in symbols):
        return "".join(word)
    return list(word)


def instance_to_dict(inst: Union[PcpInstance, EpcpInstance]) -> dict:
    symbols = list(inst.lam) + ([inst.padding] if isinstance(inst, EpcpInstance) else [])
    doc = {
        "lambda": list(inst.lam),
        "tiles": [{"phi": _word_text(inst.phi[i], symbols), "psi": _word_text(inst.psi[i], symbols)}
                  for i in inst.index],
    }
    if isinstance(inst, EpcpInstance):
        doc["padding"] = inst.padding
    else:
        if inst.lambda_sharp is not None:
            doc["lambda_sharp"] = inst.lambda_sharp
        if inst.lambda_r is not None:
            doc["lambda_r"] = inst.lambda_r
    return doc


def dumps_instance(inst) -> str:
    return _dumps(instance_to_dict(inst))


def parse_instance(source: Union[str, Path, dict]) -> Union[PcpInstance, EpcpInstance]:
    """A :class:`PcpInstance`, or an :class:`EpcpInstance` when ``"padding"`` is present.

    Tiles are numbered ``"1".."n"`` in file order.
    """
    doc = _load_json(source, "instance")
    if not isinstance(doc, dict):
        raise FormatError("instance: top level must be an object")
    lam = _string_list(doc, "lambda", "instance")
    tiles = doc.get("tiles")
    if not isinstance(tiles, list) or not tiles:
        raise FormatError("instance.tiles: expected a nonempty list")
    pairs = []
    for n, tile in enumerate(tiles):
        where = f"instance.tiles[{n}]"
        if not isinstance(tile, dict) or "phi" not in tile or "psi" not in tile:
            raise FormatError(f"{where}: expected an object with phi and psi")
        for key in ("phi", "psi"):
            v = tile[key]
            if not (isinstance(v, str) or (isinstance(v, list) and all(isinstance(x, str) for x in v))):
                raise FormatError(f"{where}.{key}: expected a string or a list of strings")
        pairs.append((tile["phi"], tile["psi"]))
    try:
        if "padding" in doc:
            if not isinstance(doc["padding"], str):
                raise FormatError("instance.padding: expected a string")
            return EpcpInstance.from_tiles(lam, pairs, doc["padding"])
        extra = {k: doc[k] for k in ("lambda_sharp", "lambda_r") if doc.get(k) is not None}
        return PcpInstance.from_tiles(lam, pairs, **extra)
    except ReductionError as exc:
        raise FormatError(f"instance: {exc}") from None


def artifacts_to_dict(art: Union[SemigroupArtifacts, MonoidArtifacts]) -> dict:
    doc = automaton_to_dict(art.T)
    doc["symbols"] = dict(sorted(art.symbols.items()))
    return doc


# DOT -----------------------------------------------------------------------

def _q(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r'\"'))


def export_dot(T: Transducer, dualize: bool = False, name: str = "T") -> str:
    """One node per state, one edge ``in/out`` per transition."""
    if dualize:
        T = dual(T)
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    lines += [f"  {_q(s)};" for s in T.state_list]
    for p, a, b, q in T.sorted_transitions():
        lines.append(f"  {_q(p)} -> {_q(q)} [label={_q(f'{a}/{b}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# fixtures ------------------------------------------------------------------

FIXTURES = {
    "AM": "am.json",
    "F2": "f2.json",
    "F2ID": "f2id.json",
    "SGR-SOLV": "sgr-solv.json",
    "SGR-UNSOLV": "sgr-unsolv.json",
    "MON-TRIV": "mon-triv.json",
    "MON-SOLV": "mon-solv.json",
    "MON-UNSOLV": "mon-unsolv.json",
}


def load_fixture(name: str):
    """A bundled automaton (``AM``, ``F2``, ``F2ID``) or instance (the rest)."""
    key = name.upper()
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    text = resources.files(__package__).joinpath("fixtures", FIXTURES[key]).read_text("utf-8")
    doc = json.loads(text)
    return parse_automaton(doc) if "states" in doc else parse_instance(doc)
