"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (parse failure, invalid
derivation, failed self-check), 2 on usage errors.  ``--json`` switches any
subcommand to a single JSON object on stdout; Gödel codes are always
rendered as decimal strings there.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .analyzer import DEFAULT_BUDGET, analyze
from .bruteforce import brute_force_truth
from .codec import NOT_A_CODE, decode, encode
from .diagonal import (
    NATURAL_LIAR_TEMPLATE, build_natural_liar, diagonalize, is_prime, prime_term_function,
    quine_string,
)
from .evaluation import EvalConfig, EvaluationError, eval_sentence
from .fuzz import random_bounded_sentence, random_tree
from .kernel import (
    EMPTY_THEORY, RULES, TOY_ARITHMETIC, Derivation, DerivationFormatError,
    EnumerationLimitExceeded, KernelConfig, check_derivation, derive_liar_contradiction,
    enumerate_theorems,
)
from .syntax import (
    ParseError, SyntaxTreeError, from_json, is_term, parse, parse_formula, to_json, to_text,
)

THEORIES = {"toy": TOY_ARITHMETIC, "empty": EMPTY_THEORY}


class DomainError(Exception):
    pass


def _emit(args, payload: dict, lines):
    if args.json:
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise DomainError(f"cannot read {source}: {e.strerror}") from None


def _config(args) -> EvalConfig:
    return EvalConfig(quantifier_search_bound=args.bound)


# ------------------------------------------------------------ subcommands


def cmd_parse(args):
    node = parse(args.text)
    kind = "term" if is_term(node) else "formula"
    _emit(args, {"kind": kind, "text": to_text(node), "tree": to_json(node)},
          [kind, to_text(node)])


def cmd_print(args):
    try:
        node = from_json(json.loads(_read_source(args.source)))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise DomainError(f"not a syntax tree: {e}") from None
    _emit(args, {"text": to_text(node)}, [to_text(node)])


def cmd_encode(args):
    node = parse(args.text)
    code = encode(node)
    _emit(args, {"text": to_text(node), "kind": "term" if is_term(node) else "formula",
                 "code": str(code)}, [str(code)])


def cmd_decode(args):
    try:
        code = int(args.code)
    except ValueError:
        raise DomainError(f"not a decimal natural number: {args.code!r}") from None
    node = decode(code)
    if node is NOT_A_CODE:
        _emit(args, {"code": str(code), "text": None, "kind": "not-a-code"}, ["not-a-code"])
        return
    kind = "term" if is_term(node) else "formula"
    _emit(args, {"code": str(code), "text": to_text(node), "kind": kind}, [to_text(node)])


def cmd_quine(args):
    if args.natural_liar:
        result = build_natural_liar()
        _emit(args, {"input": NATURAL_LIAR_TEMPLATE, "output": result}, [result])
    else:
        result = quine_string(args.string)
        _emit(args, {"input": args.string, "output": result}, [result])


def cmd_diagonalize(args):
    d = diagonalize()
    _emit(args, {"liar": to_text(d.liar), "n": str(d.n), "k": str(d.k),
                 "fixed_point": d.fixed_point},
          [f"liar: {to_text(d.liar)}", f"n: {d.n}", f"k: {d.k}",
           f"fixed_point: {str(d.fixed_point).lower()}"])


def cmd_prime_term(args):
    value = prime_term_function(args.n)
    sentence = to_text(decode(value))
    branch = "prime" if is_prime(args.n) else "composite"
    _emit(args, {"n": str(args.n), "branch": branch, "value": str(value), "sentence": sentence},
          [f"branch: {branch}", f"value: {value}", f"sentence: {sentence}"])


def cmd_eval(args):
    phi = parse_formula(args.sentence)
    v = eval_sentence(phi, _config(args))
    payload = {"verdict": v.name, "bound": str(args.bound)}
    if v.reason:
        payload["reason"] = v.reason
    _emit(args, payload, [str(v)])


def cmd_analyze(args):
    phi = parse_formula(args.sentence)
    result = analyze(phi, _config(args), args.budget)
    g = result.graph
    payload = {
        "verdict": str(result.verdict),
        "root": str(g.root),
        "nodes": {str(c): to_text(p) for c, p in g.nodes.items()},
        "edges": [{"from": str(e.source), "to": str(e.target), "polarity": e.polarity}
                  for e in g.edges],
        "partial": g.partial,
    }
    if args.dot:
        payload["dot"] = g.to_dot()
    lines = [str(result.verdict)]
    if args.dot:
        lines.append(g.to_dot())
    _emit(args, payload, lines)


def cmd_derive_liar(args):
    d = derive_liar_contradiction()
    if args.json:
        print(d.dumps())
        return
    for i, step in enumerate(d.steps):
        refs = f" {list(step.premises)}" if step.premises else ""
        print(f"{i}. {to_text(step.conclusion)}    [{step.rule}{refs}]")


def cmd_check(args):
    d = Derivation.loads(_read_source(args.file))
    kernel = KernelConfig(frozenset(args.disable_rule or ()))
    goal = parse_formula(args.goal) if args.goal else None
    result = check_derivation(d, THEORIES[args.theory], _config(args), kernel, goal)
    payload = {"valid": result.valid, "steps": len(d)}
    if not result.valid:
        payload["failing_step"] = result.failing_step
        payload["reason"] = result.reason
    _emit(args, payload, ["valid"] if result.valid else [f"invalid: {result.reason}"])
    if not result.valid:
        return 1


def cmd_enumerate(args):
    theory = THEORIES[args.theory]
    config = _config(args)
    theorems = enumerate_theorems(theory, args.depth, config, args.max_formulas)
    verdicts = [eval_sentence(phi, config) for phi in theorems]
    payload = {
        "theory": theory.name,
        "depth": args.depth,
        "count": len(theorems),
        "theorems": [{"text": to_text(p), "verdict": str(v)} for p, v in zip(theorems, verdicts)],
        "all_true": all(v.is_true for v in verdicts),
    }
    _emit(args, payload, [f"{to_text(p)}    {v}" for p, v in zip(theorems, verdicts)])


def cmd_selfcheck(args):
    rng = random.Random(args.seed)
    failures = 0
    if args.what == "codec":
        seen: dict = {}
        collisions = 0
        while len(seen) < args.samples:
            tree = random_tree(rng)
            code = encode(tree)
            if decode(code) != tree:
                failures += 1
            if seen.setdefault(code, tree) != tree:
                collisions += 1
        payload = {"check": "codec", "samples": len(seen), "failures": failures,
                   "collisions": collisions}
        failures += collisions
    else:
        config = EvalConfig(quantifier_search_bound=max(args.bound, 10))
        for _ in range(args.samples):
            phi = random_bounded_sentence(rng)
            if eval_sentence(phi, config).value is not brute_force_truth(phi):
                failures += 1
        payload = {"check": "eval", "samples": args.samples, "failures": failures}
    ok = failures == 0
    payload["ok"] = ok
    _emit(args, payload, [f"{k}: {v}" for k, v in payload.items()])
    return 0 if ok else 1


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON object")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS,
                        help="quantifier search bound (default 1000000)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"reference-graph node budget (default {DEFAULT_BUDGET})")

    parser = argparse.ArgumentParser(prog="liarlab", parents=[common],
                                     description="Quining, Gödel codes, the liar and truth in N.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    p = add("parse", cmd_parse, "parse a term or formula and show its tree")
    p.add_argument("text")
    p = add("print", cmd_print, "print a JSON syntax tree in concrete syntax")
    p.add_argument("source", nargs="?", default="-", help="JSON file, or - for stdin")
    p = add("encode", cmd_encode, "Gödel code of a term or formula")
    p.add_argument("text")
    p = add("decode", cmd_decode, "term or formula with the given code")
    p.add_argument("code")

    p = add("quine", cmd_quine, "replace each '#' in a string by the quoted string")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--string")
    g.add_argument("--natural-liar", action="store_true",
                   help="quine the English liar template")
    add("diagonalize", cmd_diagonalize, "build the liar ~T(Q(#n)) and check its fixed point")
    p = add("prime-term", cmd_prime_term, "value of F(#n)")
    p.add_argument("--n", type=int, required=True)

    p = add("eval", cmd_eval, "three-valued truth of a sentence in N")
    p.add_argument("--sentence", required=True)
    p = add("analyze", cmd_analyze, "groundedness class of a sentence with truth atoms")
    p.add_argument("--sentence", required=True)
    p.add_argument("--dot", action="store_true", help="also emit the reference graph in DOT")

    add("derive-liar", cmd_derive_liar, "derivation of false from the liar")
    p = add("check", cmd_check, "check a JSON derivation")
    p.add_argument("file", help="derivation JSON file, or - for stdin")
    p.add_argument("--disable-rule", action="append", choices=RULES, metavar="RULE",
                   help=f"reject a rule family; one of {', '.join(RULES)}")
    p.add_argument("--theory", choices=sorted(THEORIES), default="empty")
    p.add_argument("--goal", help="required final conclusion")
    p = add("enumerate", cmd_enumerate, "theorems of a theory up to an inference depth")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--theory", choices=sorted(THEORIES), default="toy")
    p.add_argument("--max-formulas", type=int, default=100_000)

    p = add("selfcheck", cmd_selfcheck, "fuzzed codec round trip or evaluator cross-check")
    p.add_argument("what", choices=("codec", "eval"))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("bound", 10**6), ("budget", DEFAULT_BUDGET)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.bound < 1:
        parser.error("--bound must be at least 1")
    if args.command == "enumerate" and args.depth < 0:
        parser.error("--depth must be non-negative")
    if args.command == "prime-term" and args.n < 0:
        parser.error("--n must be non-negative")
    try:
        return args.func(args) or 0
    except (ParseError, SyntaxTreeError, EvaluationError, DerivationFormatError,
            EnumerationLimitExceeded, DomainError, ValueError) as e:
        if args.json:
            print(json.dumps({"error": str(e)}))
        else:
            print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
