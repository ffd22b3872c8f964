"""Abstract syntax of arithmetic with a truth predicate.

Terms and formulas are frozen dataclasses, so trees compare and hash by
value.  The concrete grammar is fully parenthesized infix::

    terms     0  S(t)  (t + u)  (t * u)  #<decimal>  x  Q(t)  F(t)
    formulas  t = u  t < u  ~A  (A & B)  (A | B)  (A -> B)  (A <-> B)
              forall x. A  exists x. A  forall x < t. A  exists x < t. A
              T(t)  false

The printer always emits that form.  The parser additionally accepts
unparenthesized binary operators with conventional precedence, so that
``S(S(0)) + S(S(0)) = #4`` reads as expected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Zero", "Succ", "Add", "Mul", "Var", "NumLit", "FnApp",
    "Eq", "Lt", "Not", "And", "Or", "Implies", "Iff",
    "ForAll", "Exists", "ForAllBelow", "ExistsBelow", "TruthAtom", "Falsum",
    "Term", "Formula", "Node", "ParseError", "SyntaxTreeError",
    "FUNCTION_ARITIES", "RESERVED_WORDS",
    "parse", "parse_term", "parse_formula", "to_text",
    "free_vars", "is_sentence", "is_closed", "substitute",
    "term_occurrences", "replace_term_occurrences",
    "subterms", "subformulas", "node_count",
]

# Function symbols of the object language and their arities.
FUNCTION_ARITIES = {"Q": 1, "F": 1}

RESERVED_WORDS = frozenset({"S", "Q", "F", "T", "forall", "exists", "false"})

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class SyntaxTreeError(ValueError):
    """A tree was built that violates a structural invariant."""


def _check_ident(name: str) -> None:
    if not isinstance(name, str) or not name.isascii() or not _IDENT.match(name):
        raise SyntaxTreeError(f"bad variable name {name!r}")
    if name in RESERVED_WORDS:
        raise SyntaxTreeError(f"{name!r} is a reserved word")


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    inner: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        _check_ident(self.name)


@dataclass(frozen=True)
class NumLit:
    """Compact numeral; same value as the successor tower of height ``value``."""

    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value < 0:
            raise SyntaxTreeError(f"numeral must be a natural number, got {self.value!r}")


@dataclass(frozen=True)
class FnApp:
    symbol: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        arity = FUNCTION_ARITIES.get(self.symbol)
        if arity is None:
            raise SyntaxTreeError(f"unknown function symbol {self.symbol!r}")
        if len(self.args) != arity:
            raise SyntaxTreeError(
                f"{self.symbol} takes {arity} argument(s), got {len(self.args)}")


Term = Union[Zero, Succ, Add, Mul, Var, NumLit, FnApp]
TERM_TYPES = (Zero, Succ, Add, Mul, Var, NumLit, FnApp)


# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    inner: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_ident(self.var)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_ident(self.var)


@dataclass(frozen=True)
class ForAllBelow:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_ident(self.var)
        if self.var in free_vars(self.bound):
            raise SyntaxTreeError(f"bound term mentions its own variable {self.var!r}")


@dataclass(frozen=True)
class ExistsBelow:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_ident(self.var)
        if self.var in free_vars(self.bound):
            raise SyntaxTreeError(f"bound term mentions its own variable {self.var!r}")


@dataclass(frozen=True)
class TruthAtom:
    arg: Term


@dataclass(frozen=True)
class Falsum:
    pass


Formula = Union[Eq, Lt, Not, And, Or, Implies, Iff, ForAll, Exists,
                ForAllBelow, ExistsBelow, TruthAtom, Falsum]
FORMULA_TYPES = (Eq, Lt, Not, And, Or, Implies, Iff, ForAll, Exists,
                 ForAllBelow, ExistsBelow, TruthAtom, Falsum)
Node = Union[Term, Formula]

BINARY_CONNECTIVES = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
QUANTIFIERS = (ForAll, Exists, ForAllBelow, ExistsBelow)


def is_term(node) -> bool:
    return isinstance(node, TERM_TYPES)


def is_formula(node) -> bool:
    return isinstance(node, FORMULA_TYPES)


# ------------------------------------------------------------- printing


def to_text(node: Node) -> str:
    """Canonical concrete syntax of a term or formula."""
    match node:
        case Zero():
            return "0"
        case Succ(inner):
            return f"S({to_text(inner)})"
        case Add(l, r):
            return f"({to_text(l)} + {to_text(r)})"
        case Mul(l, r):
            return f"({to_text(l)} * {to_text(r)})"
        case Var(name):
            return name
        case NumLit(value):
            return f"#{value}"
        case FnApp(symbol, args):
            return f"{symbol}({', '.join(to_text(a) for a in args)})"
        case Eq(l, r):
            return f"{to_text(l)} = {to_text(r)}"
        case Lt(l, r):
            return f"{to_text(l)} < {to_text(r)}"
        case Not(inner):
            return f"~{to_text(inner)}"
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return f"({to_text(l)} {BINARY_CONNECTIVES[type(node)]} {to_text(r)})"
        case ForAll(v, body):
            return f"forall {v}. {to_text(body)}"
        case Exists(v, body):
            return f"exists {v}. {to_text(body)}"
        case ForAllBelow(v, bound, body):
            return f"forall {v} < {to_text(bound)}. {to_text(body)}"
        case ExistsBelow(v, bound, body):
            return f"exists {v} < {to_text(bound)}. {to_text(body)}"
        case TruthAtom(arg):
            return f"T({to_text(arg)})"
        case Falsum():
            return "false"
    raise TypeError(f"not a syntax tree: {node!r}")


# -------------------------------------------------------------- parsing


class ParseError(ValueError):
    """Raised with the offending character offset and the tokens that would fit."""

    def __init__(self, position: int, expected, found: str):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"at offset {position}: expected one of {{{exp}}}, found {found}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\#[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym><->|->|[0()+*=<~&|.,])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, {"<token>"}, repr(text[pos]))
        kind = m.lastgroup
        if kind == "num":
            tokens.append(("num", m.group(), pos))
        elif kind == "ident":
            word = m.group()
            tokens.append(("kw" if word in RESERVED_WORDS else "ident", word, pos))
        elif kind == "sym":
            tokens.append(("sym", m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    # Binary formula connectives, loosest first; '->' associates to the right.
    _FORMULA_LEVELS = (("<->", Iff), ("->", Implies), ("|", Or), ("&", And))

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.error: ParseError | None = None

    # -- helpers

    def peek(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(value)
        err = ParseError(pos, expected, found)
        # Keep the furthest failure; merge expectations at the same offset.
        if self.error is None or pos > self.error.position:
            self.error = err
        elif pos == self.error.position:
            self.error = ParseError(pos, self.error.expected | err.expected, found)
        raise self.error

    def accept(self, value) -> bool:
        if self.peek()[1] == value and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.fail({value})

    def ident(self) -> str:
        kind, value, _ = self.peek()
        if kind != "ident":
            self.fail({"<identifier>"})
        self.i += 1
        return value

    def finish(self):
        if self.peek()[0] != "eof":
            self.fail({"end of input"})

    # -- terms

    def term(self) -> Term:
        left = self.product()
        while self.accept("+"):
            left = Add(left, self.product())
        return left

    def product(self) -> Term:
        left = self.primary_term()
        while self.accept("*"):
            left = Mul(left, self.primary_term())
        return left

    def primary_term(self) -> Term:
        kind, value, _ = self.peek()
        if kind == "sym" and value == "0":
            self.i += 1
            return Zero()
        if kind == "num":
            self.i += 1
            return NumLit(int(value[1:]))
        if kind == "ident":
            self.i += 1
            return Var(value)
        if kind == "kw" and value == "S":
            self.i += 1
            self.expect("(")
            inner = self.term()
            self.expect(")")
            return Succ(inner)
        if kind == "kw" and value in FUNCTION_ARITIES:
            self.i += 1
            self.expect("(")
            args = [self.term()]
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
            try:
                return FnApp(value, tuple(args))
            except SyntaxTreeError:
                self.fail({f"{FUNCTION_ARITIES[value]} argument(s) to {value}"})
        if kind == "sym" and value == "(":
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.fail({"0", "S", "Q", "F", "#<decimal>", "<identifier>", "("})

    # -- formulas

    def formula(self, level: int = 0) -> Formula:
        if level == len(self._FORMULA_LEVELS):
            return self.unary()
        op, cls = self._FORMULA_LEVELS[level]
        left = self.formula(level + 1)
        if op == "->":
            if self.accept("->"):
                return Implies(left, self.formula(level))
            return left
        while self.accept(op):
            left = cls(left, self.formula(level + 1))
        return left

    def unary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "sym" and value == "~":
            self.i += 1
            return Not(self.unary())
        if kind == "kw" and value in ("forall", "exists"):
            self.i += 1
            var = self.ident()
            bound = None
            if self.accept("<"):
                bound = self.term()
            self.expect(".")
            body = self.unary()
            try:
                if bound is None:
                    return (ForAll if value == "forall" else Exists)(var, body)
                return (ForAllBelow if value == "forall" else ExistsBelow)(var, bound, body)
            except SyntaxTreeError:
                self.fail({"bound term without the quantified variable"})
        if kind == "kw" and value == "false":
            self.i += 1
            return Falsum()
        if kind == "kw" and value == "T":
            self.i += 1
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return TruthAtom(arg)
        if kind == "sym" and value == "(":
            # '(' opens either a parenthesized formula or a term such as '(x + y) = z'.
            start = self.i
            try:
                return self.atom()
            except ParseError:
                self.i = start
            self.i += 1
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self) -> Formula:
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("<"):
            return Lt(left, self.term())
        self.fail({"=", "<", "+", "*"})


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    try:
        node = p.formula()
        p.finish()
    except ParseError:
        raise p.error
    return node


def parse_term(text: str) -> Term:
    p = _Parser(text)
    try:
        node = p.term()
        p.finish()
    except ParseError:
        raise p.error
    return node


def parse(text: str) -> Node:
    """Parse a formula, or failing that a term."""
    try:
        return parse_formula(text)
    except ParseError as formula_err:
        try:
            return parse_term(text)
        except ParseError as term_err:
            raise max(formula_err, term_err, key=lambda e: e.position)


# ------------------------------------------------------------ traversal


def subterms(node: Node) -> Iterator[Term]:
    """Every term occurrence in pre-order, left to right."""
    match node:
        case Zero() | Var() | NumLit():
            yield node
        case Succ(inner):
            yield node
            yield from subterms(inner)
        case Add(l, r) | Mul(l, r):
            yield node
            yield from subterms(l)
            yield from subterms(r)
        case FnApp(_, args):
            yield node
            for a in args:
                yield from subterms(a)
        case Eq(l, r) | Lt(l, r):
            yield from subterms(l)
            yield from subterms(r)
        case Not(inner):
            yield from subterms(inner)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from subterms(l)
            yield from subterms(r)
        case ForAll(_, body) | Exists(_, body):
            yield from subterms(body)
        case ForAllBelow(_, bound, body) | ExistsBelow(_, bound, body):
            yield from subterms(bound)
            yield from subterms(body)
        case TruthAtom(arg):
            yield from subterms(arg)
        case Falsum():
            return


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    match phi:
        case Not(inner):
            yield from subformulas(inner)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from subformulas(l)
            yield from subformulas(r)
        case ForAll(_, body) | Exists(_, body) | ForAllBelow(_, _, body) | ExistsBelow(_, _, body):
            yield from subformulas(body)


def node_count(node: Node) -> int:
    """Number of term and formula nodes in the tree."""
    if is_term(node):
        return sum(1 for _ in subterms(node))
    return sum(1 for _ in subformulas(node)) + sum(1 for _ in subterms(node))


def free_vars(node: Node) -> frozenset:
    match node:
        case Var(name):
            return frozenset({name})
        case Zero() | NumLit() | Falsum():
            return frozenset()
        case Succ(inner) | Not(inner):
            return free_vars(inner)
        case Add(l, r) | Mul(l, r) | Eq(l, r) | Lt(l, r):
            return free_vars(l) | free_vars(r)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return free_vars(l) | free_vars(r)
        case FnApp(_, args):
            return frozenset().union(*(free_vars(a) for a in args))
        case ForAll(v, body) | Exists(v, body):
            return free_vars(body) - {v}
        case ForAllBelow(v, bound, body) | ExistsBelow(v, bound, body):
            return free_vars(bound) | (free_vars(body) - {v})
        case TruthAtom(arg):
            return free_vars(arg)
    raise TypeError(f"not a syntax tree: {node!r}")


def is_closed(node: Node) -> bool:
    return not free_vars(node)


def is_sentence(node) -> bool:
    return is_formula(node) and is_closed(node)


# --------------------------------------------------------- substitution


def _subst_term(t: Term, var: str, value: Term) -> Term:
    match t:
        case Var(name):
            return value if name == var else t
        case Zero() | NumLit():
            return t
        case Succ(inner):
            return Succ(_subst_term(inner, var, value))
        case Add(l, r):
            return Add(_subst_term(l, var, value), _subst_term(r, var, value))
        case Mul(l, r):
            return Mul(_subst_term(l, var, value), _subst_term(r, var, value))
        case FnApp(sym, args):
            return FnApp(sym, tuple(_subst_term(a, var, value) for a in args))
    raise TypeError(f"not a term: {t!r}")


def _subst(phi, var: str, value: Term):
    match phi:
        case Eq(l, r):
            return Eq(_subst_term(l, var, value), _subst_term(r, var, value))
        case Lt(l, r):
            return Lt(_subst_term(l, var, value), _subst_term(r, var, value))
        case Not(inner):
            return Not(_subst(inner, var, value))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(phi)(_subst(l, var, value), _subst(r, var, value))
        case ForAll(v, body) | Exists(v, body):
            if v == var:
                return phi
            return type(phi)(v, _subst(body, var, value))
        case ForAllBelow(v, bound, body) | ExistsBelow(v, bound, body):
            new_bound = _subst_term(bound, var, value)
            if v == var:
                return type(phi)(v, new_bound, body)
            return type(phi)(v, new_bound, _subst(body, var, value))
        case TruthAtom(arg):
            return TruthAtom(_subst_term(arg, var, value))
        case Falsum():
            return phi
    return _subst_term(phi, var, value)


def substitute(phi: Node, var: str, t: Term) -> Node:
    """Replace the free occurrences of ``var`` by the closed term ``t``.

    Closedness of ``t`` is enforced; with no free variables in ``t`` there is
    nothing to capture, so no renaming is ever needed.
    """
    if not is_closed(t):
        raise ValueError(f"substituted term must be closed: {to_text(t)}")
    return _subst(phi, var, t)


# ------------------------------------------------ term occurrence rewriting


def term_occurrences(phi: Node, s: Term) -> int:
    return sum(1 for u in subterms(phi) if u == s)


class _Replacer:
    def __init__(self, s, t, selected):
        self.s, self.t = s, t
        self.selected = selected  # None means every occurrence
        self.index = 0
        self.count = 0

    def term(self, u):
        if u == self.s:
            idx = self.index
            self.index += 1
            if self.selected is None or idx in self.selected:
                self.count += 1
                return self.t
            return u
        match u:
            case Succ(inner):
                return Succ(self.term(inner))
            case Add(l, r):
                left = self.term(l)
                return Add(left, self.term(r))
            case Mul(l, r):
                left = self.term(l)
                return Mul(left, self.term(r))
            case FnApp(sym, args):
                return FnApp(sym, tuple(self.term(a) for a in args))
        return u

    def formula(self, phi):
        match phi:
            case Eq(l, r) | Lt(l, r):
                left = self.term(l)
                return type(phi)(left, self.term(r))
            case Not(inner):
                return Not(self.formula(inner))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                left = self.formula(l)
                return type(phi)(left, self.formula(r))
            case ForAll(v, body) | Exists(v, body):
                return type(phi)(v, self.formula(body))
            case ForAllBelow(v, bound, body) | ExistsBelow(v, bound, body):
                new_bound = self.term(bound)
                return type(phi)(v, new_bound, self.formula(body))
            case TruthAtom(arg):
                return TruthAtom(self.term(arg))
            case Falsum():
                return phi
        return self.term(phi)


def replace_term_occurrences(phi: Node, s: Term, t: Term, positions="all") -> tuple[Node, int]:
    """Replace selected occurrences of the closed term ``s`` by the closed term ``t``.

    ``positions`` is ``"all"`` or an iterable of 0-based occurrence indices,
    counted in pre-order.  An occurrence nested inside a replaced one is
    impossible since a term never strictly contains itself.  Returns the new
    tree and the number of replacements.
    """
    if not is_closed(s) or not is_closed(t):
        raise ValueError("term substitution needs closed terms")
    total = term_occurrences(phi, s)
    if positions == "all":
        selected = None
        if total == 0:
            raise ValueError(f"{to_text(s)} does not occur in {to_text(phi)}")
    else:
        selected = frozenset(positions)
        if selected and total == 0:
            raise ValueError(f"{to_text(s)} does not occur in {to_text(phi)}")
        bad = [p for p in selected if not (isinstance(p, int) and 0 <= p < total)]
        if bad:
            raise ValueError(f"occurrence indices {sorted(bad)} out of range (0..{total - 1})")
    r = _Replacer(s, t, selected)
    return r.formula(phi), r.count


# ----------------------------------------------------------- JSON trees

_NODE_TYPES = {cls.__name__: cls for cls in TERM_TYPES + FORMULA_TYPES}


def to_json(node: Node) -> dict:
    """Tagged-dict form of a tree, numerals rendered as decimal strings."""
    out = {"node": type(node).__name__}
    match node:
        case NumLit(value):
            out["value"] = str(value)
        case Var(name):
            out["name"] = name
        case FnApp(symbol, args):
            out["symbol"] = symbol
            out["args"] = [to_json(a) for a in args]
        case _:
            for field, value in vars(node).items():
                out[field] = value if isinstance(value, str) else to_json(value)
    return out


def from_json(data: dict) -> Node:
    try:
        cls = _NODE_TYPES[data["node"]]
    except (KeyError, TypeError):
        raise SyntaxTreeError(f"not a syntax-tree object: {data!r}") from None
    if cls is NumLit:
        return NumLit(int(data["value"]))
    if cls is Var:
        return Var(data["name"])
    if cls is FnApp:
        return FnApp(data["symbol"], tuple(from_json(a) for a in data["args"]))
    kwargs = {}
    for field in cls.__dataclass_fields__:
        value = data[field]
        kwargs[field] = value if field == "var" else from_json(value)
    return cls(**kwargs)
