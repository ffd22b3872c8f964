"""Self-reference in arithmetic with a truth predicate: quining, Gödel codes,
the diagonal liar, a derivation checker and groundedness analysis."""

import sys

# Numerals are written in decimal, and codes of sentences that mention codes
# easily pass the interpreter's default 4300-digit conversion cap.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

__version__ = "0.1.0"
