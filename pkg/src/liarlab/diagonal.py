"""Quining: on strings, on Gödel codes, and the self-referential sentences built from it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .codec import decode, encode, numeral
from .syntax import (
    FUNCTION_ARITIES, Add, Eq, FnApp, Formula, NumLit, Not, Succ, TruthAtom, Var, Zero,
    free_vars, is_formula, substitute,
)

PLACEHOLDER = "#"
QUOTE = "'"

NATURAL_LIAR_TEMPLATE = "The string obtained by quining # is not a true sentence."

# "2 + 2 = 4", the sentence the prime branch of F points at.
TWO_PLUS_TWO = Eq(Add(Succ(Succ(Zero())), Succ(Succ(Zero()))), NumLit(4))


def quine_string(s: str) -> str:
    """Replace every '#' in ``s`` by ``s`` itself in single quotes, in one pass."""
    return s.replace(PLACEHOLDER, QUOTE + s + QUOTE)


def build_natural_liar() -> str:
    return quine_string(NATURAL_LIAR_TEMPLATE)


def q_function(n: int) -> int:
    """Formal quining on codes: code of phi(#n) when n codes phi(x) with one free variable, else 0."""
    phi = decode(n)
    if not is_formula(phi):
        return 0
    fv = free_vars(phi)
    if len(fv) != 1:
        return 0
    (x,) = fv
    return encode(substitute(phi, x, numeral(n)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def prime_term_function(n: int) -> int:
    """Interpretation of F: the code of 2+2=4 for prime n, else the code of ~T(F(#n)).

    0 and 1 take the composite branch.
    """
    if is_prime(n):
        return encode(TWO_PLUS_TWO)
    return encode(Not(TruthAtom(FnApp("F", (NumLit(n),)))))


@dataclass(frozen=True)
class FunctionSymbolDef:
    symbol: str
    arity: int
    interpretation: Callable[..., int]


DEFAULT_FUNCTIONS = {
    "Q": FunctionSymbolDef("Q", FUNCTION_ARITIES["Q"], q_function),
    "F": FunctionSymbolDef("F", FUNCTION_ARITIES["F"], prime_term_function),
}


@dataclass(frozen=True)
class Diagonal:
    liar: Formula
    n: int
    k: int

    @property
    def fixed_point(self) -> bool:
        return self.k == encode(self.liar)


LIAR_TEMPLATE = Not(TruthAtom(FnApp("Q", (Var("x"),))))


def diagonalize(template: Formula = LIAR_TEMPLATE) -> Diagonal:
    """Self-application of a one-variable formula through Q.

    With the default template ``~T(Q(x))`` this yields the liar
    ``~T(Q(#n))`` where ``n`` codes the template; ``k = Q(n)`` is then the
    code of the liar itself.
    """
    if len(free_vars(template)) != 1:
        raise ValueError("template needs exactly one free variable")
    (x,) = free_vars(template)
    n = encode(template)
    sentence = substitute(template, x, numeral(n))
    return Diagonal(sentence, n, q_function(n))
