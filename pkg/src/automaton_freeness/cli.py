"""Command line front end.

Automaton and instance arguments are file paths or bundled fixture names
(``AM``, ``F2``, ``SGR-SOLV``, ...).  Words and state sequences are
comma-separated symbol lists; commas inside parentheses belong to the symbol,
so ``(x,y),x`` is two symbols.  An empty string is the empty sequence.

Exit codes: 0 success or affirmative answer, 1 negative answer or
counterexample, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import NamedTuple, Optional

from . import analysis, io
from .automata import AutomatonError, act, compose, dual, dual_act, power, union, validate
from .free import (UnsupportedConstruction, adding_machine, build_r_hat_semigroup,
                   free_semigroup_automaton, validate_free_basis, with_identity_state)
from .monoid_reduction import EpcpInstance, build_monoid, check_free_presentation, pad_to_epcp
from .semigroup_reduction import ReductionError, build_semigroup
from .wordproblem import bounded_separator, decide_equal, enumerate_relations


class CommandResult(NamedTuple):
    code: int
    document: dict
    text: str = ""


class UsageError(Exception):
    pass


def split_symbols(text: str) -> tuple:
    """``"(x,y),x"`` -> ``("(x,y)", "x")``."""
    out, cur, depth = [], [], 0
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += {"(": 1, ")": -1}.get(ch, 0)
        cur.append(ch)
    out.append("".join(cur))
    if out == [""]:
        return ()
    if any(s == "" for s in out):
        raise UsageError(f"empty symbol in {text!r}")
    return tuple(out)


def join(seq) -> str:
    return ",".join(seq) if seq else "(empty)"


def _source(arg: str):
    path = Path(arg)
    if path.exists():
        return path
    if arg.upper() in io.FIXTURES:
        return None
    raise UsageError(f"no such file or fixture: {arg}")


def load_automaton(arg: str):
    path = _source(arg)
    obj = io.load_fixture(arg) if path is None else io.parse_automaton(path)
    if not hasattr(obj, "states"):
        raise UsageError(f"{arg} is an instance, not an automaton")
    return obj


def load_instance(arg: str):
    path = _source(arg)
    obj = io.load_fixture(arg) if path is None else io.parse_instance(path)
    if hasattr(obj, "states"):
        raise UsageError(f"{arg} is an automaton, not an instance")
    return obj


def load_artifacts(arg: str, monoid: Optional[bool] = None):
    inst = load_instance(arg)
    if monoid is None:
        monoid = isinstance(inst, EpcpInstance)
    if monoid:
        return build_monoid(inst if isinstance(inst, EpcpInstance) else pad_to_epcp(inst))
    if isinstance(inst, EpcpInstance):
        raise UsageError("the semigroup reduction needs an unpadded instance")
    return build_semigroup(inst)


def _automaton_result(T, args) -> CommandResult:
    text = io.dumps_automaton(T)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
        return CommandResult(0, {"written": args.output, "states": len(T.states)},
                             f"wrote {args.output}")
    return CommandResult(0, io.automaton_to_dict(T), text.rstrip("\n"))


# commands ------------------------------------------------------------------

def cmd_validate(args):
    doc = io._load_json(Path(args.file), "automaton") if Path(args.file).exists() else None
    if doc is None:
        T = load_automaton(args.file)
        return CommandResult(0, {"valid": True, "states": len(T.states)}, "valid")
    try:
        states, alphabet = doc["states"], doc["alphabet"]
        rows = [(t["from"], t["in"], t["out"], t["to"]) for t in doc["transitions"]]
    except (KeyError, TypeError) as exc:
        raise io.FormatError(f"automaton: missing or malformed field {exc}") from None
    report = validate(states, alphabet, rows)
    body = {"valid": report.ok, "missing": [list(c) for c in report.missing],
            "duplicate": [list(c) for c in report.duplicate],
            "unknown": [list(t) for t in report.unknown], "problems": list(report.problems)}
    return CommandResult(0 if report.ok else 1, body, "valid" if report.ok else f"invalid: {report}")


def cmd_act(args):
    T = load_automaton(args.automaton)
    p, u = T.check_sequence(split_symbols(args.seq)), T.check_word(split_symbols(args.word))
    out, res = act(T, p, u), dual_act(T, p, u)
    return CommandResult(0, {"output": list(out), "residual": list(res)},
                         f"output   {join(out)}\nresidual {join(res)}")


def cmd_decide(args):
    T = load_automaton(args.automaton)
    p, q = split_symbols(args.p), split_symbols(args.q)
    if args.depth is not None:
        r = bounded_separator(T, p, q, args.depth)
        return CommandResult(1 if r.separated else 0,
                             {"verdict": r.verdict, "depth": r.depth,
                              "separator": list(r.witness) if r.witness else None},
                             r.verdict + (f" by {join(r.witness)}" if r.separated else ""))
    d = decide_equal(T, p, q)
    return CommandResult(0 if d.equal else 1,
                         {"verdict": d.outcome,
                          "separator": list(d.separator) if d.separator is not None else None},
                         d.outcome + ("" if d.equal else f" by {join(d.separator)}"))


def cmd_relations(args):
    T = load_automaton(args.automaton)
    rels = enumerate_relations(T, args.bound)
    lines = [f"{join(r.left)} = {join(r.right)}" for r in rels] or ["no relations"]
    return CommandResult(1 if rels else 0,
                         {"bound": args.bound,
                          "relations": [[list(r.left), list(r.right)] for r in rels]},
                         "\n".join(lines))


def cmd_build(args):
    if args.kind == "adding-machine":
        T = adding_machine()
    elif args.kind == "free":
        T = free_semigroup_automaton(split_symbols(args.alphabet))
        if args.with_identity:
            T = with_identity_state(T, args.with_identity)
    else:
        try:
            T = build_r_hat_semigroup(split_symbols(args.lam), split_symbols(args.index),
                                      args.len).automaton
        except UnsupportedConstruction as exc:
            return CommandResult(1, {"verdict": "unsupported", "reason": str(exc)},
                                 f"unsupported: {exc}")
    return _automaton_result(T, args)


def cmd_compose(args):
    return _automaton_result(compose(load_automaton(args.second), load_automaton(args.first)), args)


def cmd_power(args):
    return _automaton_result(power(load_automaton(args.automaton), args.k), args)


def cmd_dual(args):
    return _automaton_result(dual(load_automaton(args.automaton)), args)


def cmd_union(args):
    return _automaton_result(union(load_automaton(args.a), load_automaton(args.b)), args)


def cmd_reduce(args):
    art = load_artifacts(args.instance, monoid=args.kind == "monoid")
    doc = io.artifacts_to_dict(art)
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        return CommandResult(0, {"written": args.output, "states": len(art.T.states),
                                 "letters": len(art.T.alphabet)}, f"wrote {args.output}")
    return CommandResult(0, doc, text)


def cmd_witness(args):
    art = load_artifacts(args.instance, monoid=args.monoid or None)
    rel = art.witness_relation(split_symbols(args.solution))
    return CommandResult(0, {"left": list(rel.left), "right": list(rel.right), "verdict": "equal"},
                         f"{join(rel.left)} = {join(rel.right)}")


def cmd_extract(args):
    art = load_artifacts(args.instance, monoid=args.monoid or None)
    sol = art.extract_solution(split_symbols(args.p), split_symbols(args.q))
    return CommandResult(0, {"solution": list(sol)}, join(sol))


def cmd_check(args):
    art = load_artifacts(args.instance, monoid=True)
    v = check_free_presentation(art, args.bound)
    doc = {"verdict": v.verdict, "bound": v.bound,
           "violation": [list(v.violation.left), list(v.violation.right)] if v.violation else None}
    text = v.verdict if v.consistent else \
        f"violation: {join(v.violation.left)} = {join(v.violation.right)}"
    return CommandResult(0 if v.consistent else 1, doc, text)


def _read_mapping(path, what):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise io.FormatError(f"{what}: {exc}") from None
    if not isinstance(doc, dict):
        raise io.FormatError(f"{what}: expected a JSON object")
    return doc


def _automaton_or_encoding(arg):
    """An automaton, or the encoding of an instance together with its artifacts."""
    try:
        return load_automaton(arg), None
    except UsageError:
        art = load_artifacts(arg)
        return art.T, art


def cmd_analyze(args):
    T, art = _automaton_or_encoding(args.target)
    k = args.bound
    if args.check == "cancellative":
        rep = analysis.check_cancellative(T, k, args.side)
    elif args.check == "equidivisible":
        rep = analysis.check_equidivisible(T, k)
    elif args.check == "length":
        if args.weights:
            weights = _read_mapping(args.weights, "weights")
        elif art is not None and hasattr(art, "weights"):
            weights = art.weights()
        else:
            raise UsageError("--weights is required for this input")
        rep = analysis.check_length_function(T, weights, k, proper=args.proper)
    else:
        if not (args.map and args.into):
            raise UsageError("--map and --into are required for --check hom")
        f = {s: split_symbols(v) if isinstance(v, str) else tuple(v)
             for s, v in _read_mapping(args.map, "map").items()}
        rep = analysis.check_hom_extension(T, load_automaton(args.into), f, k)
    doc = rep.to_dict()
    text = rep.verdict
    if not rep.holds:
        text += ": " + ", ".join(f"{key}={join(v) if isinstance(v, tuple) else v}"
                                 for key, v in rep.counterexample.items())
    return CommandResult(0 if rep.holds else 1, doc, text)


def cmd_export(args):
    T, _ = _automaton_or_encoding(args.automaton)
    text = io.export_dot(T, dualize=args.dual)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return CommandResult(0, {"written": args.output}, f"wrote {args.output}")
    return CommandResult(0, {"dot": text}, text.rstrip("\n"))


def cmd_basis(args):
    T = load_automaton(args.automaton)
    pi = {s: split_symbols(v) if isinstance(v, str) else tuple(v)
          for s, v in _read_mapping(args.map, "map").items()}
    r = validate_free_basis(T, pi, args.bound)
    doc = {"ok": r.ok, "bound": r.bound,
           "counterexample": [list(x) for x in r.counterexample] if r.counterexample else None}
    text = "free basis up to bound" if r.ok else \
        f"not a free basis: {join(r.counterexample[0])} vs {join(r.counterexample[1])}"
    return CommandResult(0 if r.ok else 1, doc, text)


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="automaton-freeness",
                                     description=__doc__.split("\n\n")[0])
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output (accepted anywhere on the line)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check that an automaton file is complete and deterministic")
    p.add_argument("file")

    p = add("act", cmd_act, "apply a state sequence to a word")
    p.add_argument("automaton")
    p.add_argument("--seq", required=True)
    p.add_argument("--word", required=True)

    p = add("decide", cmd_decide, "decide equality of two state sequences")
    p.add_argument("automaton")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--depth", type=int, help="brute-force check over words up to this length")

    p = add("relations", cmd_relations, "list relations up to a length bound")
    p.add_argument("automaton")
    p.add_argument("--bound", type=int, required=True)

    p = add("build", cmd_build, "build a standard automaton")
    bsub = p.add_subparsers(dest="kind", required=True)
    bsub.add_parser("adding-machine").add_argument("-o", "--output")
    b = bsub.add_parser("free")
    b.add_argument("--alphabet", required=True)
    b.add_argument("--with-identity", metavar="NAME")
    b.add_argument("-o", "--output")
    b = bsub.add_parser("rhat")
    b.add_argument("--lambda", dest="lam", required=True)
    b.add_argument("--index", required=True)
    b.add_argument("--len", type=int, required=True)
    b.add_argument("-o", "--output")

    p = add("compose", cmd_compose, "composition: apply FIRST, then SECOND")
    p.add_argument("second")
    p.add_argument("first")
    p.add_argument("-o", "--output")

    p = add("power", cmd_power, "k-th power")
    p.add_argument("automaton")
    p.add_argument("k", type=int)
    p.add_argument("-o", "--output")

    p = add("dual", cmd_dual, "dual automaton (states and letters swapped)")
    p.add_argument("automaton")
    p.add_argument("-o", "--output")

    p = add("union", cmd_union, "disjoint union over a common alphabet")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")

    p = add("reduce", cmd_reduce, "encode a PCP instance as an automaton")
    p.add_argument("kind", choices=["semigroup", "monoid"])
    p.add_argument("instance")
    p.add_argument("-o", "--output")

    for name, func, help_ in (("witness", cmd_witness, "relation built from a solution"),
                              ("extract", cmd_extract, "recover a solution from a relation")):
        p = add(name, func, help_)
        p.add_argument("instance")
        if name == "witness":
            p.add_argument("--solution", required=True)
        else:
            p.add_argument("p")
            p.add_argument("q")
        p.add_argument("--monoid", action="store_true",
                       help="use the monoid encoding (default for padded instances)")

    p = add("check", cmd_check, "bounded check of the free presentation of the monoid encoding")
    csub = p.add_subparsers(dest="what", required=True)
    c = csub.add_parser("free-presentation")
    c.add_argument("instance")
    c.add_argument("--bound", type=int, required=True)

    p = add("basis", cmd_basis, "bounded check that a state map is a free basis")
    p.add_argument("automaton")
    p.add_argument("--map", required=True, help="JSON object state -> sequence")
    p.add_argument("--bound", type=int, required=True)

    p = add("analyze", cmd_analyze, "bounded property checks")
    p.add_argument("target", help="automaton, or instance (checks its semigroup/monoid encoding)")
    p.add_argument("--check", required=True,
                   choices=["cancellative", "equidivisible", "length", "hom"])
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    p.add_argument("--weights", help="JSON object state -> natural number")
    p.add_argument("--proper", action="store_true")
    p.add_argument("--map", help="JSON object state -> sequence in the target automaton")
    p.add_argument("--into", help="target automaton for --check hom")

    p = add("export", cmd_export, "export an automaton")
    esub = p.add_subparsers(dest="format", required=True)
    e = esub.add_parser("dot")
    e.add_argument("automaton")
    e.add_argument("--dual", action="store_true")
    e.add_argument("-o", "--output")
    return parser


def run(argv=None) -> CommandResult:
    """Parse and execute; ``--json`` may appear anywhere and is ignored here."""
    argv = [a for a in (sys.argv[1:] if argv is None else argv) if a != "--json"]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(int(exc.code or 0) and 2, {"error": "usage"})
    try:
        return args.func(args)
    except (UsageError, io.FormatError, AutomatonError, ReductionError, ValueError,
            KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return CommandResult(2, {"error": msg}, f"error: {msg}")


def main(argv=None) -> int:
    as_json = "--json" in (sys.argv[1:] if argv is None else argv)
    result = run(argv)
    stream = sys.stdout if result.code in (0, 1) else sys.stderr
    if as_json:
        print(json.dumps({"exit_code": result.code, **result.document}, ensure_ascii=False),
              file=stream)
    elif result.text:
        print(result.text, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
