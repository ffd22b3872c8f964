import random

import pytest
from hypothesis import given, settings, strategies as st

from liarlab.bruteforce import brute_force_truth
from liarlab.diagonal import diagonalize
from liarlab.evaluation import (
    BOUND_EXCEEDED, TRUTH_ATOM, EvalConfig, EvaluationError, eval_sentence, eval_term,
)
from liarlab.fuzz import random_bounded_sentence
from liarlab.syntax import (
    And, Eq, Falsum, FnApp, Implies, Not, NumLit, Or, TruthAtom, Zero, parse_formula, parse_term,
    subformulas, to_text,
)

SMALL = EvalConfig(quantifier_search_bound=50)


def ev(text, config=SMALL):
    return eval_sentence(parse_formula(text), config)


def test_eval_term_examples():
    assert eval_term(parse_term("(S(S(0)) + S(S(0)))")) == 4
    assert eval_term(parse_term("(#15 + #2)")) == 17
    assert eval_term(parse_term("((#3 * S(#4)) + 0)")) == 15
    d = diagonalize()
    assert eval_term(FnApp("Q", (NumLit(d.n),))) == d.k


def test_eval_term_errors():
    with pytest.raises(EvaluationError):
        eval_term(parse_term("(x + 0)"))
    with pytest.raises(EvaluationError):
        eval_term(parse_term("Q(#1)"), EvalConfig(function_registry={}))


def test_eval_sentence_examples():
    assert ev("S(S(0)) + S(S(0)) = #4").name == "TrueInN"
    assert ev("0 = S(0)").name == "FalseInN"
    assert ev("forall x < #10. exists y < #10. (x + y) = #9").name == "TrueInN"
    v = ev("forall x. exists y. x < y", EvalConfig(quantifier_search_bound=100))
    assert v.is_unknown and v.reason == BOUND_EXCEEDED


def test_nine_sums_by_enumeration():
    # 10 x 10 table: for each x < 10 the witness y = 9 - x is < 10.
    expected = all(any(x + y == 9 for y in range(10)) for x in range(10))
    assert expected is True
    assert ev("forall x < #10. exists y < #10. (x + y) = #9").value is expected
    assert ev("forall x < #11. exists y < #10. (x + y) = #9").value is False


def test_unbounded_quantifiers():
    assert ev("exists x. (x * x) = #49").is_true
    assert ev("forall x. x < #30").is_false
    assert ev("exists x. (x * x) = #2").reason == BOUND_EXCEEDED
    assert ev("forall x. x = x").reason == BOUND_EXCEEDED


def test_bounded_quantifier_beyond_search_bound():
    cfg = EvalConfig(quantifier_search_bound=20)
    assert eval_sentence(parse_formula("exists x < #1000. x = #7"), cfg).is_true
    assert eval_sentence(parse_formula("forall x < #1000. x < #1000"), cfg).reason == BOUND_EXCEEDED


def test_truth_atoms_and_falsum():
    v = ev("T(#5)")
    assert v.is_unknown and v.reason == TRUTH_ATOM
    assert ev("(T(#5) & 0 = S(0))").is_false
    assert ev("(T(#5) | 0 = 0)").is_true
    assert ev("(0 = 0 -> T(#5))").reason == TRUTH_ATOM
    assert ev("false").is_false
    assert ev("~false").is_true


def test_open_formula_rejected():
    with pytest.raises(EvaluationError):
        ev("x = 0")


def test_work_limit_yields_unknown():
    cfg = EvalConfig(quantifier_search_bound=10**6, work_limit=10_000)
    v = eval_sentence(parse_formula("forall x. exists y. x < y"), cfg)
    assert v.reason == BOUND_EXCEEDED


def test_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(quantifier_search_bound=0)


def test_oracle_equivalence_on_fuzzed_bounded_sentences():
    rng = random.Random(11)
    for _ in range(1000):
        phi = random_bounded_sentence(rng)
        assert eval_sentence(phi, SMALL).value is brute_force_truth(phi)


seeds = st.integers(min_value=0, max_value=2**32)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_negation_duality(seed):
    phi = random_bounded_sentence(random.Random(seed))
    a = eval_sentence(phi, SMALL)
    b = eval_sentence(Not(phi), SMALL)
    assert b.value is (None if a.value is None else not a.value)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=12))
def test_monotone_in_the_search_bound(seed, low):
    rng = random.Random(seed)
    phi = random_bounded_sentence(rng)
    # unbounded quantifiers around the bounded core make the bound matter
    phi = parse_formula(f"exists z. (z < #6 & {to_text(phi)})") if seed % 2 else phi
    small = eval_sentence(phi, EvalConfig(quantifier_search_bound=low))
    large = eval_sentence(phi, EvalConfig(quantifier_search_bound=low + 20))
    if small.value is not None:
        assert large.value is small.value


def _replace_atoms(phi, atom_value):
    match phi:
        case TruthAtom():
            return atom_value
        case Not(inner):
            return Not(_replace_atoms(inner, atom_value))
        case And(l, r) | Or(l, r) | Implies(l, r):
            return type(phi)(_replace_atoms(l, atom_value), _replace_atoms(r, atom_value))
    return phi


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_decided_verdicts_do_not_depend_on_truth_atoms(seed):
    rng = random.Random(seed)
    parts = [random_bounded_sentence(rng, 6) if rng.random() < 0.6 else TruthAtom(NumLit(rng.randrange(99)))
             for _ in range(3)]
    phi = parts[0]
    for p in parts[1:]:
        phi = rng.choice((And, Or, Implies))(phi, p)
    if rng.random() < 0.5:
        phi = Not(phi)
    v = eval_sentence(phi, SMALL)
    if v.value is not None:
        for replacement in (Eq(Zero(), Zero()), Falsum()):
            assert eval_sentence(_replace_atoms(phi, replacement), SMALL).value is v.value
    elif not any(isinstance(f, TruthAtom) for f in subformulas(phi)):
        pytest.fail("Unknown without truth atoms or unbounded quantifiers")
