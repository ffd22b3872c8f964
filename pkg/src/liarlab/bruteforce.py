"""Reference evaluator for T-free sentences with bounded quantifiers.

Compiles the sentence to a Python expression built from ``all``/``any``
over ``range`` and evaluates it.  It shares nothing with the three-valued
evaluator beyond the syntax classes, so the two can check each other.
"""
from __future__ import annotations

from .syntax import (
    Add, And, Eq, ExistsBelow, Falsum, ForAllBelow, Iff, Implies, Lt, Mul, Not, NumLit,
    Or, Succ, Var, Zero,
)


class Unsupported(ValueError):
    pass


def _t(t) -> str:
    match t:
        case Zero():
            return "0"
        case NumLit(v):
            return str(v)
        case Succ(inner):
            return f"({_t(inner)} + 1)"
        case Add(l, r):
            return f"({_t(l)} + {_t(r)})"
        case Mul(l, r):
            return f"({_t(l)} * {_t(r)})"
        case Var(name):
            return f"v_{name}"
    raise Unsupported(f"term outside the arithmetic fragment: {t!r}")


def to_python(phi) -> str:
    match phi:
        case Eq(l, r):
            return f"({_t(l)} == {_t(r)})"
        case Lt(l, r):
            return f"({_t(l)} < {_t(r)})"
        case Falsum():
            return "False"
        case Not(inner):
            return f"(not {to_python(inner)})"
        case And(l, r):
            return f"({to_python(l)} and {to_python(r)})"
        case Or(l, r):
            return f"({to_python(l)} or {to_python(r)})"
        case Implies(l, r):
            return f"((not {to_python(l)}) or {to_python(r)})"
        case Iff(l, r):
            return f"({to_python(l)} == {to_python(r)})"
        case ForAllBelow(v, bound, body):
            return f"all({to_python(body)} for v_{v} in range({_t(bound)}))"
        case ExistsBelow(v, bound, body):
            return f"any({to_python(body)} for v_{v} in range({_t(bound)}))"
    raise Unsupported(f"formula outside the bounded T-free fragment: {phi!r}")


def brute_force_truth(phi) -> bool:
    return bool(eval(to_python(phi), {"__builtins__": {}, "all": all, "any": any, "range": range}))
