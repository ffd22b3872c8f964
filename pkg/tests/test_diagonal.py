import random

from hypothesis import given, strategies as st

from liarlab.codec import decode, encode, numeral
from liarlab.diagonal import (
    NATURAL_LIAR_TEMPLATE, TWO_PLUS_TWO, build_natural_liar, diagonalize, is_prime,
    prime_term_function, q_function, quine_string,
)
from liarlab.fuzz import random_formula
from liarlab.syntax import (
    Eq, FnApp, Not, NumLit, TruthAtom, Var, Zero, free_vars, parse, substitute, to_text,
)


def test_quine_examples():
    assert quine_string("abc") == "abc"
    assert quine_string("ab#c") == "ab'ab#c'c"
    # By hand: each of the two '#' becomes '##' wrapped in quotes.
    assert quine_string("##") == "'##''##'"
    assert quine_string("") == ""


@given(st.text(alphabet="ab#' ", max_size=30))
def test_quine_length_law(s):
    c = s.count("#")
    assert len(quine_string(s)) == len(s) + c * (len(s) + 2 - 1)


@given(st.text(max_size=30))
def test_quine_fixes_exactly_placeholder_free_strings(s):
    assert (quine_string(s) == s) == ("#" not in s)


def test_natural_liar():
    liar = build_natural_liar()
    assert liar == ("The string obtained by quining 'The string obtained by quining # is not "
                    "a true sentence.' is not a true sentence.")
    assert quine_string(NATURAL_LIAR_TEMPLATE) == liar
    # The template holds one placeholder; the liar keeps it only inside its quotation.
    assert NATURAL_LIAR_TEMPLATE.count("#") == 1
    assert liar.count("#") == 1
    quoted = "'" + NATURAL_LIAR_TEMPLATE + "'"
    assert "#" not in liar.replace(quoted, "")
    # The quoted part is what the liar talks about; quining it gives the liar back.
    assert liar.split("'")[1] == NATURAL_LIAR_TEMPLATE
    assert quine_string(quine_string(NATURAL_LIAR_TEMPLATE)) != liar


def test_q_function_examples():
    x = Var("x")
    n = encode(Eq(x, Zero()))
    assert q_function(n) == encode(Eq(NumLit(n), Zero()))
    assert q_function(encode(parse("0 = 0"))) == 0
    n = encode(Not(TruthAtom(FnApp("Q", (x,)))))
    assert q_function(n) == encode(Not(TruthAtom(FnApp("Q", (NumLit(n),)))))


def test_q_function_is_total():
    assert q_function(0) == 0
    assert q_function(5) == 0
    assert q_function(encode(Zero())) == 0
    assert q_function(encode(parse("x = y"))) == 0


def test_q_function_injective_on_one_variable_formulas():
    rng = random.Random(3)
    images = {}
    while len(images) < 300:
        phi = random_formula(rng, rng.randrange(5), ("x",))
        if free_vars(phi) == {"x"}:
            n = encode(phi)
            images[n] = q_function(n)
    assert len(set(images.values())) == len(images)
    for n, k in images.items():
        assert decode(k) == substitute(decode(n), "x", numeral(n))


def test_diagonalize_fixed_point():
    d = diagonalize()
    assert d.n == encode(Not(TruthAtom(FnApp("Q", (Var("x"),)))))
    assert d.liar == Not(TruthAtom(FnApp("Q", (NumLit(d.n),))))
    assert d.k == encode(d.liar)
    assert d.fixed_point
    assert not free_vars(d.liar)
    assert decode(d.k) == d.liar
    assert to_text(d.liar) == f"~T(Q(#{d.n}))"


def _trial_division_prime(n):
    return n >= 2 and all(n % p for p in range(2, n))


def test_is_prime_against_trial_division():
    for n in range(0, 2000):
        assert is_prime(n) == _trial_division_prime(n)


def test_prime_term_function_agrees_with_trial_division():
    two_plus_two = encode(parse("S(S(0)) + S(S(0)) = #4"))
    for n in range(0, 10_001):
        if n < 2000:
            prime = _trial_division_prime(n)
        else:
            prime = all(n % p for p in range(2, int(n**0.5) + 1))
        expected = two_plus_two if prime else encode(Not(TruthAtom(FnApp("F", (NumLit(n),)))))
        assert prime_term_function(n) == expected


def test_prime_term_examples():
    assert prime_term_function(7) == encode(TWO_PLUS_TWO)
    assert decode(prime_term_function(4)) == parse("~T(F(#4))")
    assert decode(prime_term_function(0)) == parse("~T(F(#0))")
    assert decode(prime_term_function(1)) == parse("~T(F(#1))")
