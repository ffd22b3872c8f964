"""Random syntax trees for round-trip and cross-check runs."""
from __future__ import annotations

import random

from .syntax import (
    Add, And, Eq, Exists, ExistsBelow, Falsum, FnApp, ForAll, ForAllBelow, Iff, Implies,
    Lt, Mul, Not, NumLit, Or, Succ, TruthAtom, Var, Zero, node_count,
)

VAR_NAMES = ("x", "y", "z", "n", "k", "x1", "Var_2")


def random_term(rng: random.Random, depth: int, scope=VAR_NAMES):
    leaves = 3 if scope else 2
    choice = rng.randrange(leaves if depth <= 0 else leaves + 4)
    if choice == 0:
        return Zero()
    if choice == 1:
        # Mostly small numerals, now and then a code-sized one.
        return NumLit(rng.randrange(20) if rng.random() < 0.8 else rng.getrandbits(rng.randrange(1, 200)))
    if choice == 2 and scope:
        return Var(rng.choice(scope))
    choice = rng.randrange(4)
    if choice == 0:
        return Succ(random_term(rng, depth - 1, scope))
    if choice == 1:
        return Add(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
    if choice == 2:
        return Mul(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
    return FnApp(rng.choice("QF"), (random_term(rng, depth - 1, scope),))


def random_formula(rng: random.Random, depth: int, scope=VAR_NAMES):
    if depth <= 0:
        kind = rng.randrange(4)
    else:
        kind = rng.randrange(13)
    d = depth - 1
    match kind:
        case 0:
            return Eq(random_term(rng, d, scope), random_term(rng, d, scope))
        case 1:
            return Lt(random_term(rng, d, scope), random_term(rng, d, scope))
        case 2:
            return TruthAtom(random_term(rng, d, scope))
        case 3:
            return Falsum()
        case 4:
            return Not(random_formula(rng, d, scope))
        case 5 | 6 | 7 | 8:
            cls = (And, Or, Implies, Iff)[kind - 5]
            return cls(random_formula(rng, d, scope), random_formula(rng, d, scope))
        case 9 | 10:
            var = rng.choice(VAR_NAMES)
            return (ForAll if kind == 9 else Exists)(var, random_formula(rng, d, scope))
    var = rng.choice(VAR_NAMES)
    outer = tuple(v for v in scope if v != var)
    bound = random_term(rng, d, outer)
    cls = ForAllBelow if kind == 11 else ExistsBelow
    return cls(var, bound, random_formula(rng, d, scope))


def random_tree(rng: random.Random, max_depth: int = 8):
    """A term or formula of depth at most ``max_depth``."""
    depth = rng.randrange(max_depth)
    if rng.random() < 0.3:
        return random_term(rng, depth)
    return random_formula(rng, depth)


# ---------------------------------------------- bounded arithmetic sentences


def _bounded_term(rng, budget, scope):
    if budget <= 1 or rng.random() < 0.5:
        pick = rng.randrange(3 if scope else 2)
        if pick == 0:
            return Zero()
        if pick == 1:
            return NumLit(rng.randrange(11))
        return Var(rng.choice(scope))
    kind = rng.randrange(3)
    if kind == 0 or budget < 3:
        return Succ(_bounded_term(rng, budget - 1, scope))
    left = rng.randrange(1, budget - 1)
    cls = Add if kind == 1 else Mul
    return cls(_bounded_term(rng, left, scope), _bounded_term(rng, budget - 1 - left, scope))


def _bounded_formula(rng, budget, scope):
    if budget < 3 or rng.random() < 0.25:
        if budget < 3:
            return Falsum()
        left = rng.randrange(1, budget - 1)
        cls = Eq if rng.random() < 0.5 else Lt
        return cls(_bounded_term(rng, left, scope), _bounded_term(rng, budget - 1 - left, scope))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(_bounded_formula(rng, budget - 1, scope))
    if kind == 1 and budget >= 7:
        left = rng.randrange(3, budget - 3)
        cls = rng.choice((And, Or, Implies, Iff))
        return cls(_bounded_formula(rng, left, scope), _bounded_formula(rng, budget - 1 - left, scope))
    var = "xyzw"[len(scope) % 4] if len(scope) < 4 else rng.choice("xyzw")
    bound = NumLit(rng.randrange(11))
    cls = ForAllBelow if rng.random() < 0.5 else ExistsBelow
    return cls(var, bound, _bounded_formula(rng, budget - 2, scope + (var,)))


def random_bounded_sentence(rng: random.Random, max_nodes: int = 12):
    """A T-free sentence over 0, S, +, *, =, < whose quantifiers are all bounded by numerals <= 10."""
    while True:
        phi = _bounded_formula(rng, rng.randrange(3, max_nodes + 1), ())
        if node_count(phi) <= max_nodes:
            return phi
