"""Gödel numbering of terms and formulas.

A tree is printed canonically, cut into tokens from a fixed table of at
most 64 entries, and the 1-based token ids are read as the digits of a
base-65 number, most significant first.  The leading token tags the
namespace (term or formula), so no term shares a code with a formula.
Digit values 0, 63 and 64 never occur, so 0 and every number with such a
digit is "not a code".
"""
from __future__ import annotations

import re

from .syntax import Node, NumLit, ParseError, SyntaxTreeError, is_term, parse_formula, parse_term, to_text

__all__ = ["BASE", "TOKENS", "NOT_A_CODE", "encode", "decode", "numeral", "tokens_of", "digits_of"]

_STRUCTURAL = [
    "<term>", "<formula>",
    "0", "S", "Q", "F", "T", "(", ")", ",", "+", "*", "#",
    "=", "<", "~", "&", "|", "->", "<->", ".", "forall", "exists", "false",
]
_DIGITS = list("0123456789")
_LETTERS = list("abcdefghijklmnopqrstuvwxyz")
_EXTRA = ["_", "^"]  # '^' shifts the next letter to upper case

TOKENS: tuple[str, ...] = tuple(
    [f"sym:{s}" for s in _STRUCTURAL]
    + [f"digit:{d}" for d in _DIGITS]
    + [f"char:{c}" for c in _LETTERS + _EXTRA]
)
assert len(TOKENS) <= 64
BASE = 65

_ID = {tok: i + 1 for i, tok in enumerate(TOKENS)}
_TERM_TAG = _ID["sym:<term>"]
_FORMULA_TAG = _ID["sym:<formula>"]


class _NotACode:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_A_CODE"

    def __bool__(self):
        return False


NOT_A_CODE = _NotACode()

_LEX = re.compile(r"\s*(#[0-9]+|[A-Za-z_][A-Za-z0-9_]*|<->|->|[0()+*=<~&|.,])")
_KEYWORDS = {"S", "Q", "F", "T", "forall", "exists", "false"}


def _ident_ids(name: str) -> list[int]:
    out = []
    for ch in name:
        if ch.isdigit():
            out.append(_ID[f"digit:{ch}"])
        elif ch == "_":
            out.append(_ID["char:_"])
        elif ch.isupper():
            out += [_ID["char:^"], _ID[f"char:{ch.lower()}"]]
        else:
            out.append(_ID[f"char:{ch}"])
    return out


def tokens_of(node: Node) -> list[int]:
    """Token ids of the canonical text of ``node``, tag first."""
    ids = [_TERM_TAG if is_term(node) else _FORMULA_TAG]
    text = to_text(node)
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        lexeme = m.group(1)
        pos = m.end()
        if lexeme.startswith("#"):
            ids.append(_ID["sym:#"])
            ids += [_ID[f"digit:{d}"] for d in lexeme[1:]]
        elif lexeme in _KEYWORDS or not (lexeme[0].isalpha() or lexeme[0] == "_"):
            ids.append(_ID[f"sym:{lexeme}"])
        else:
            ids += _ident_ids(lexeme)
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return ids


def encode(node: Node) -> int:
    code = 0
    for d in tokens_of(node):
        code = code * BASE + d
    return code


def digits_of(code: int) -> list[int] | None:
    """Base-65 digits of ``code``, most significant first; None if any digit has no token."""
    if code <= 0:
        return None
    digits = []
    while code:
        code, d = divmod(code, BASE)
        if d == 0 or d > len(TOKENS):
            return None
        digits.append(d)
    digits.reverse()
    return digits


def _detokenize(ids: list[int]) -> str | None:
    parts = []
    shift = False
    for d in ids:
        kind, _, val = TOKENS[d - 1].partition(":")
        if shift and not (kind == "char" and val.isalpha() and val != "^"):
            return None
        if kind == "sym":
            if val in ("<term>", "<formula>"):
                return None
            parts.append(val if val == "#" else f" {val} ")
        elif kind == "digit":
            parts.append(val)
        elif val == "^":
            shift = True
            continue
        else:
            parts.append(val.upper() if shift else val)
        shift = False
    if shift:
        return None
    return "".join(parts)


def decode(code: int):
    """Inverse of :func:`encode`; returns ``NOT_A_CODE`` off its image."""
    if isinstance(code, bool) or not isinstance(code, int):
        return NOT_A_CODE
    digits = digits_of(code)
    if not digits or digits[0] not in (_TERM_TAG, _FORMULA_TAG):
        return NOT_A_CODE
    text = _detokenize(digits[1:])
    if text is None:
        return NOT_A_CODE
    reader = parse_term if digits[0] == _TERM_TAG else parse_formula
    try:
        node = reader(text)
    except (ParseError, SyntaxTreeError, ValueError, RecursionError):
        return NOT_A_CODE
    # Non-canonical spellings (leading zeros, missing parentheses) parse but
    # are not in the image of encode.
    if encode(node) != code:
        return NOT_A_CODE
    return node


def numeral(n: int) -> NumLit:
    return NumLit(n)
