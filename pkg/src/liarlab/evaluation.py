"""Recursive truth in the standard model, three-valued so that it always halts.

Atomic sentences are settled by computing term values.  Connectives use the
strong Kleene tables.  Quantifiers are decided by enumerating witnesses, and
an enumeration that would pass ``quantifier_search_bound`` stops with
``Unknown(bound-exceeded)`` unless a decisive witness was already found.
Truth atoms are not interpreted here; they yield
``Unknown(truth-atom-encountered)`` unless the caller supplies a ``truth``
callback (the groundedness analyzer does).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .diagonal import DEFAULT_FUNCTIONS, FunctionSymbolDef
from .syntax import (
    Add, And, Eq, Exists, ExistsBelow, Falsum, FnApp, ForAll, ForAllBelow, Formula,
    Iff, Implies, Lt, Mul, Not, NumLit, Or, Succ, Term, TruthAtom, Var, Zero,
    free_vars, to_text,
)

BOUND_EXCEEDED = "quantifier-bound-exceeded"
TRUTH_ATOM = "truth-atom-encountered"


class EvaluationError(ValueError):
    """Open input or an unregistered function symbol."""


@dataclass(frozen=True)
class Verdict:
    value: bool | None
    reason: str | None = None

    @property
    def is_true(self):
        return self.value is True

    @property
    def is_false(self):
        return self.value is False

    @property
    def is_unknown(self):
        return self.value is None

    @property
    def name(self) -> str:
        return {True: "TrueInN", False: "FalseInN", None: "Unknown"}[self.value]

    def __str__(self):
        return self.name if self.reason is None else f"{self.name}({self.reason})"

    def negate(self) -> "Verdict":
        return self if self.value is None else Verdict(not self.value)


TRUE = Verdict(True)
FALSE = Verdict(False)


def unknown(reason: str) -> Verdict:
    return Verdict(None, reason)


def from_bool(b: bool) -> Verdict:
    return TRUE if b else FALSE


def kleene_and(a: Verdict, b: Verdict) -> Verdict:
    if a.is_false or b.is_false:
        return FALSE
    if a.is_unknown:
        return a
    return b


def kleene_or(a: Verdict, b: Verdict) -> Verdict:
    if a.is_true or b.is_true:
        return TRUE
    if a.is_unknown:
        return a
    return b


def kleene_implies(a: Verdict, b: Verdict) -> Verdict:
    return kleene_or(a.negate(), b)


def kleene_iff(a: Verdict, b: Verdict) -> Verdict:
    if a.is_unknown:
        return a
    if b.is_unknown:
        return b
    return from_bool(a.value == b.value)


@dataclass(frozen=True)
class EvalConfig:
    quantifier_search_bound: int = 10**6
    function_registry: Mapping[str, FunctionSymbolDef] = field(
        default_factory=lambda: dict(DEFAULT_FUNCTIONS))
    # Ceiling on formula-node visits; nested unbounded quantifiers cost bound**depth.
    work_limit: int = 5 * 10**6

    def __post_init__(self):
        if self.quantifier_search_bound < 1:
            raise ValueError("quantifier_search_bound must be at least 1")


class _WorkExceeded(Exception):
    pass


def eval_term(t: Term, config: EvalConfig | None = None, env: Mapping[str, int] | None = None) -> int:
    config = config or EvalConfig()
    env = env or {}
    return _term(t, config, env)


def _term(t, config, env) -> int:
    match t:
        case Zero():
            return 0
        case NumLit(value):
            return value
        case Succ(inner):
            return _term(inner, config, env) + 1
        case Add(l, r):
            return _term(l, config, env) + _term(r, config, env)
        case Mul(l, r):
            return _term(l, config, env) * _term(r, config, env)
        case Var(name):
            try:
                return env[name]
            except KeyError:
                raise EvaluationError(f"open term: variable {name!r} is free") from None
        case FnApp(symbol, args):
            fn = config.function_registry.get(symbol)
            if fn is None:
                raise EvaluationError(f"function symbol {symbol!r} is not registered")
            return fn.interpretation(*(_term(a, config, env) for a in args))
    raise TypeError(f"not a term: {t!r}")


class _Evaluator:
    def __init__(self, config: EvalConfig, truth: Callable[[int], Verdict] | None):
        self.config = config
        self.truth = truth
        self.work = 0

    def tick(self):
        self.work += 1
        if self.work > self.config.work_limit:
            raise _WorkExceeded

    def run(self, phi, env) -> Verdict:
        self.tick()
        match phi:
            case Eq(l, r):
                return from_bool(_term(l, self.config, env) == _term(r, self.config, env))
            case Lt(l, r):
                return from_bool(_term(l, self.config, env) < _term(r, self.config, env))
            case Falsum():
                return FALSE
            case Not(inner):
                return self.run(inner, env).negate()
            case And(l, r):
                a = self.run(l, env)
                return FALSE if a.is_false else kleene_and(a, self.run(r, env))
            case Or(l, r):
                a = self.run(l, env)
                return TRUE if a.is_true else kleene_or(a, self.run(r, env))
            case Implies(l, r):
                a = self.run(l, env)
                return TRUE if a.is_false else kleene_implies(a, self.run(r, env))
            case Iff(l, r):
                return kleene_iff(self.run(l, env), self.run(r, env))
            case TruthAtom(arg):
                if self.truth is None:
                    return unknown(TRUTH_ATOM)
                return self.truth(_term(arg, self.config, env))
            case ForAll(v, body):
                return self.quantify(v, body, env, universal=True, stop=None)
            case Exists(v, body):
                return self.quantify(v, body, env, universal=False, stop=None)
            case ForAllBelow(v, bound, body):
                return self.quantify(v, body, env, universal=True, stop=_term(bound, self.config, env))
            case ExistsBelow(v, bound, body):
                return self.quantify(v, body, env, universal=False, stop=_term(bound, self.config, env))
        raise TypeError(f"not a formula: {phi!r}")

    def quantify(self, var, body, env, universal, stop) -> Verdict:
        # Witnesses 0..search_bound inclusive are examined at most.
        limit = self.config.quantifier_search_bound + 1
        capped = stop is None or stop > limit
        end = limit if capped else stop
        decisive = FALSE if universal else TRUE
        pending = None
        inner = dict(env)
        for value in range(end):
            inner[var] = value
            v = self.run(body, inner)
            if v.value is decisive.value:
                return decisive
            if v.is_unknown and pending is None:
                pending = v
        if pending is not None:
            return pending
        if capped:
            return unknown(BOUND_EXCEEDED)
        return decisive.negate()


def eval_sentence(phi: Formula, config: EvalConfig | None = None,
                  truth: Callable[[int], Verdict] | None = None) -> Verdict:
    """Three-valued truth value of the sentence ``phi`` in the natural numbers.

    ``truth`` maps the value of a truth atom's argument to a verdict; without
    it every truth atom is Unknown.  Exhausting ``work_limit`` makes the whole
    evaluation Unknown(bound-exceeded).
    """
    config = config or EvalConfig()
    fv = free_vars(phi)
    if fv:
        raise EvaluationError(f"not a sentence, free variables {sorted(fv)}: {to_text(phi)}")
    try:
        return _Evaluator(config, truth).run(phi, {})
    except _WorkExceeded:
        return unknown(BOUND_EXCEEDED)
