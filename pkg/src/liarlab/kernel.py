"""A small Hilbert-style derivation checker with a truth predicate.

A derivation is a list of steps.  Each step states a conclusion and the rule
that justifies it; premises are 0-based indices of earlier steps.  Rules:

``tautology``
    the conclusion is a propositional tautology, checked by truth table over
    its atomic subformulas (at most 16).
``t-scheme``
    ``T(#c) <-> A`` where ``A`` is a sentence and ``c`` its code.
``eval-equality``
    ``s = t`` for closed terms with the same value.
``theory-axiom``
    an axiom of the theory, named by ``extra["axiom"]``.
``modus-ponens``
    from ``A`` and ``A -> B`` infer ``B``; premises ``[A-step, (A -> B)-step]``.
``term-substitution``
    from ``phi`` and ``s = t`` infer ``phi`` with the occurrences of ``s``
    selected by ``extra["positions"]`` replaced by ``t``.
``universal-instantiation``
    from ``forall x. A`` (or ``forall x < b. A`` with the witness below ``b``)
    infer ``A[w/x]`` for the closed witness ``extra["witness"]``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .codec import encode, numeral
from .diagonal import diagonalize
from .evaluation import EvalConfig, EvaluationError, eval_term
from .syntax import (
    And, Eq, Falsum, ForAll, ForAllBelow, Formula, Iff, Implies, Not, NumLit, Or,
    ParseError, TruthAtom,
    is_closed, is_sentence, parse_formula, parse_term, replace_term_occurrences,
    substitute, to_text,
)

RULES = (
    "tautology", "t-scheme", "eval-equality", "theory-axiom",
    "modus-ponens", "term-substitution", "universal-instantiation",
)

MAX_TAUTOLOGY_ATOMS = 16


class DerivationFormatError(ValueError):
    """A derivation document that does not match the JSON schema."""


@dataclass(frozen=True)
class Step:
    conclusion: Formula
    rule: str
    premises: tuple = ()
    extra: Mapping = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "conclusion": to_text(self.conclusion),
            "rule": self.rule,
            "premises": list(self.premises),
            "extra": dict(self.extra),
        }


@dataclass(frozen=True)
class Derivation:
    steps: tuple

    def __len__(self):
        return len(self.steps)

    @property
    def conclusion(self):
        return self.steps[-1].conclusion if self.steps else None

    def without_step(self, index: int) -> "Derivation":
        """Drop a step; later premise indices are left as they were."""
        return Derivation(self.steps[:index] + self.steps[index + 1:])

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data) -> "Derivation":
        if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
            raise DerivationFormatError("expected an object with a 'steps' list")
        steps = []
        for i, raw in enumerate(data["steps"]):
            if not isinstance(raw, dict):
                raise DerivationFormatError(f"step {i}: expected an object")
            try:
                conclusion = parse_formula(raw["conclusion"])
                rule = raw["rule"]
                premises = tuple(raw.get("premises", ()))
                extra = raw.get("extra", {}) or {}
            except KeyError as e:
                raise DerivationFormatError(f"step {i}: missing field {e}") from None
            except ParseError as e:
                raise DerivationFormatError(f"step {i}: conclusion does not parse: {e}") from None
            if not all(isinstance(p, int) and not isinstance(p, bool) for p in premises):
                raise DerivationFormatError(f"step {i}: premises must be integers")
            if not isinstance(extra, dict):
                raise DerivationFormatError(f"step {i}: extra must be an object")
            steps.append(Step(conclusion, rule, premises, extra))
        return cls(tuple(steps))

    @classmethod
    def loads(cls, text: str) -> "Derivation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DerivationFormatError(f"invalid JSON: {e}") from None
        return cls.from_json(data)


@dataclass(frozen=True)
class Theory:
    name: str
    axioms: tuple  # (axiom-id, Formula) pairs

    def __post_init__(self):
        for ax_id, phi in self.axioms:
            if not is_sentence(phi):
                raise ValueError(f"axiom {ax_id} is not a sentence: {to_text(phi)}")

    def axiom(self, ax_id):
        for name, phi in self.axioms:
            if name == ax_id:
                return phi
        return None

    @classmethod
    def from_texts(cls, name: str, axioms: Iterable[tuple[str, str]]) -> "Theory":
        return cls(name, tuple((ax_id, parse_formula(text)) for ax_id, text in axioms))


EMPTY_THEORY = Theory("empty", ())

# Desk-scale stand-in for PA: its quantifiers are bounded so every theorem
# can be evaluated outright.
TOY_ARITHMETIC = Theory.from_texts("toy-arithmetic", [
    ("refl", "forall x < #4. x = x"),
    ("sym", "forall x < #4. forall y < #4. (x = y -> y = x)"),
    ("succ-inj", "forall x < #4. forall y < #4. (S(x) = S(y) -> x = y)"),
    ("zero-not-succ", "forall x < #4. ~0 = S(x)"),
    ("add-zero", "forall x < #4. (x + 0) = x"),
    ("add-succ", "forall x < #4. forall y < #4. (x + S(y)) = S((x + y))"),
    ("mul-zero", "forall x < #4. (x * 0) = 0"),
])


@dataclass(frozen=True)
class KernelConfig:
    """Which rule families the checker accepts."""

    disabled_rules: frozenset = frozenset()

    def allows(self, rule: str) -> bool:
        return rule not in self.disabled_rules


@dataclass(frozen=True)
class CheckResult:
    valid: bool
    failing_step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


# ------------------------------------------------------------- tautologies

_CONNECTIVES = (Not, And, Or, Implies, Iff, Falsum)


def propositional_atoms(phi: Formula) -> list:
    """Maximal non-connective subformulas, in first-occurrence order."""
    atoms = []

    def walk(f):
        match f:
            case Falsum():
                return
            case Not(inner):
                walk(inner)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                walk(l)
                walk(r)
            case _:
                if f not in atoms:
                    atoms.append(f)

    walk(phi)
    return atoms


def _truth_value(phi, assignment) -> bool:
    match phi:
        case Falsum():
            return False
        case Not(inner):
            return not _truth_value(inner, assignment)
        case And(l, r):
            return _truth_value(l, assignment) and _truth_value(r, assignment)
        case Or(l, r):
            return _truth_value(l, assignment) or _truth_value(r, assignment)
        case Implies(l, r):
            return (not _truth_value(l, assignment)) or _truth_value(r, assignment)
        case Iff(l, r):
            return _truth_value(l, assignment) == _truth_value(r, assignment)
    return assignment[phi]


def is_tautology(phi: Formula) -> bool:
    atoms = propositional_atoms(phi)
    if len(atoms) > MAX_TAUTOLOGY_ATOMS:
        raise ValueError(f"{len(atoms)} atoms exceeds the truth-table cap of {MAX_TAUTOLOGY_ATOMS}")
    for values in itertools.product((False, True), repeat=len(atoms)):
        if not _truth_value(phi, dict(zip(atoms, values))):
            return False
    return True


# ------------------------------------------------------------ axiom forms


def t_scheme_axiom(phi: Formula) -> Formula:
    """``T(#c) <-> phi`` where ``c`` is the code of the sentence ``phi``."""
    if not is_sentence(phi):
        raise ValueError(f"T-scheme instances need a sentence: {to_text(phi)}")
    return Iff(TruthAtom(numeral(encode(phi))), phi)


def is_t_scheme_instance(phi: Formula) -> bool:
    match phi:
        case Iff(TruthAtom(NumLit(c)), body):
            return is_sentence(body) and c == encode(body)
    return False


# ----------------------------------------------------------------- checker


class _StepFailure(Exception):
    pass


def _premise(d: Derivation, index: int, step: Step, k: int) -> Formula:
    if len(step.premises) <= k:
        raise _StepFailure(f"{step.rule} needs {k + 1} premise(s)")
    ref = step.premises[k]
    if not (0 <= ref < index):
        raise _StepFailure(f"premise reference {ref} does not point to an earlier step")
    return d.steps[ref].conclusion


def _check_step(d: Derivation, index: int, theory: Theory, config: EvalConfig,
                kernel: KernelConfig) -> None:
    step = d.steps[index]
    phi = step.conclusion
    rule = step.rule
    if rule not in RULES:
        raise _StepFailure(f"unknown rule {rule!r}")
    if not kernel.allows(rule):
        raise _StepFailure(f"rule {rule!r} is disabled in this kernel")

    if rule == "tautology":
        try:
            ok = is_tautology(phi)
        except ValueError as e:
            raise _StepFailure(str(e)) from None
        if not ok:
            raise _StepFailure("not a propositional tautology")

    elif rule == "t-scheme":
        if not is_t_scheme_instance(phi):
            raise _StepFailure("not of the form T(#c) <-> A with c the code of the sentence A")

    elif rule == "eval-equality":
        if not isinstance(phi, Eq) or not is_closed(phi):
            raise _StepFailure("conclusion must be an equation between closed terms")
        try:
            same = eval_term(phi.left, config) == eval_term(phi.right, config)
        except EvaluationError as e:
            raise _StepFailure(str(e)) from None
        if not same:
            raise _StepFailure("the two sides evaluate to different numbers")

    elif rule == "theory-axiom":
        ax_id = step.extra.get("axiom")
        axiom = theory.axiom(ax_id)
        if axiom is None:
            raise _StepFailure(f"theory {theory.name!r} has no axiom {ax_id!r}")
        if axiom != phi:
            raise _StepFailure(f"conclusion differs from axiom {ax_id!r}")

    elif rule == "modus-ponens":
        a = _premise(d, index, step, 0)
        imp = _premise(d, index, step, 1)
        if imp != Implies(a, phi):
            raise _StepFailure("second premise is not (first premise -> conclusion)")

    elif rule == "term-substitution":
        body = _premise(d, index, step, 0)
        eq = _premise(d, index, step, 1)
        if not isinstance(eq, Eq):
            raise _StepFailure("second premise is not an equation")
        positions = step.extra.get("positions", "all")
        try:
            result, _ = replace_term_occurrences(body, eq.left, eq.right, positions)
        except (ValueError, TypeError) as e:
            raise _StepFailure(str(e)) from None
        if result != phi:
            raise _StepFailure("conclusion is not the stated replacement in the first premise")

    elif rule == "universal-instantiation":
        general = _premise(d, index, step, 0)
        try:
            witness = parse_term(str(step.extra["witness"]))
        except KeyError:
            raise _StepFailure("missing witness") from None
        except ParseError as e:
            raise _StepFailure(f"witness does not parse: {e}") from None
        if not is_closed(witness):
            raise _StepFailure("witness must be a closed term")
        match general:
            case ForAll(v, body):
                pass
            case ForAllBelow(v, bound, body):
                try:
                    inside = eval_term(witness, config) < eval_term(bound, config)
                except EvaluationError as e:
                    raise _StepFailure(str(e)) from None
                if not inside:
                    raise _StepFailure("witness is not below the quantifier bound")
            case _:
                raise _StepFailure("premise is not universally quantified")
        if substitute(body, v, witness) != phi:
            raise _StepFailure("conclusion is not the premise's body at the witness")


def check_derivation(d: Derivation, theory: Theory = EMPTY_THEORY,
                     config: EvalConfig | None = None, kernel: KernelConfig | None = None,
                     goal: Formula | None = None) -> CheckResult:
    """Validate every step in order and report the first one that fails.

    With ``goal`` given, a derivation whose steps all check but whose last
    conclusion differs from ``goal`` fails at its last step.
    """
    config = config or EvalConfig()
    kernel = kernel or KernelConfig()
    for i in range(len(d.steps)):
        try:
            _check_step(d, i, theory, config, kernel)
        except _StepFailure as e:
            return CheckResult(False, i, f"step {i} ({d.steps[i].rule}): {e}")
    if goal is not None:
        if not d.steps:
            return CheckResult(False, None, "empty derivation")
        if d.conclusion != goal:
            last = len(d.steps) - 1
            return CheckResult(False, last, f"step {last}: ends in {to_text(d.conclusion)}, "
                                            f"not {to_text(goal)}")
    return CheckResult(True)


# --------------------------------------------------------- the liar, formally


def derive_liar_contradiction() -> Derivation:
    """Five steps from the T-scheme and term substitution to ``false``."""
    diag = diagonalize()
    liar, k = diag.liar, diag.k
    q_n = liar.inner.arg                      # Q(#n)
    k_bar = numeral(k)
    scheme = t_scheme_axiom(liar)             # T(#k) <-> ~T(Q(#n))
    assert scheme.left == TruthAtom(k_bar)
    equation = Eq(k_bar, q_n)                 # #k = Q(#n)
    swapped, count = replace_term_occurrences(scheme, k_bar, q_n, "all")
    assert count == 1
    contradiction = Implies(swapped, Falsum())
    return Derivation((
        Step(scheme, "t-scheme"),
        Step(equation, "eval-equality"),
        Step(swapped, "term-substitution", (0, 1), {"positions": "all"}),
        Step(contradiction, "tautology", (), {"template": "(P <-> ~P) -> false"}),
        Step(Falsum(), "modus-ponens", (2, 3)),
    ))


# ------------------------------------------------------ bounded enumeration


class EnumerationLimitExceeded(RuntimeError):
    pass


# Tautology templates over metavariables A, B; instantiated with the axioms.
TAUTOLOGY_TEMPLATES = (
    ("A -> A", lambda a, b: Implies(a, a)),
    ("A -> (B -> A)", lambda a, b: Implies(a, Implies(b, a))),
    ("(A & B) -> A", lambda a, b: Implies(And(a, b), a)),
    ("(A & B) -> B", lambda a, b: Implies(And(a, b), b)),
    ("A -> (B -> (A & B))", lambda a, b: Implies(a, Implies(b, And(a, b)))),
    ("A | ~A", lambda a, b: Or(a, Not(a))),
)

WITNESSES = tuple(numeral(i) for i in range(4))


def _instantiations(phi, config):
    match phi:
        case ForAll(v, body):
            for w in WITNESSES:
                yield substitute(body, v, w)
        case ForAllBelow(v, bound, body):
            limit = eval_term(bound, config)
            for w in WITNESSES:
                if w.value < limit:
                    yield substitute(body, v, w)


def enumerate_theorems(theory: Theory, max_steps: int, config: EvalConfig | None = None,
                       max_formulas: int = 100_000) -> list:
    """Conclusions of derivations whose inference depth is at most ``max_steps``.

    Depth 0 holds the axioms and the template tautologies over them; each
    further level closes the previous one under modus ponens and universal
    instantiation with the witnesses #0..#3.  The result is sorted by text.
    """
    config = config or EvalConfig()
    pool = [phi for _, phi in theory.axioms]
    known: set = set(pool)
    for _, template in TAUTOLOGY_TEMPLATES:
        for a in pool:
            for b in pool:
                known.add(template(a, b))

    def admit(phi, bucket):
        if phi not in known:
            bucket.add(phi)
            if len(known) + len(bucket) > max_formulas:
                raise EnumerationLimitExceeded(
                    f"more than {max_formulas} theorems; raise the cap or lower the depth")

    if len(known) > max_formulas:
        raise EnumerationLimitExceeded(f"more than {max_formulas} theorems at depth 0")
    for _ in range(max_steps):
        fresh: set = set()
        for phi in known:
            for inst in _instantiations(phi, config):
                admit(inst, fresh)
            if isinstance(phi, Implies) and phi.left in known:
                admit(phi.right, fresh)
        if not fresh:
            break
        known |= fresh
    return sorted(known, key=to_text)
