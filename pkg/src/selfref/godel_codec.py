"""Gödel numbering of wffs and of wff sequences (proofs).

A wff is numbered by reading the codes of its canonical token stream as a
bijective base-19 numeral: digits run over 1..19, so every nonempty string
gets a distinct positive integer and 0 is left for the empty string.  A
sequence is numbered the same way after joining the members' token streams
with the separator code 19.

The number of base-19 digits always equals the number of tokens.
"""

from __future__ import annotations

import gmpy2

from .formula import ParseError, Wff, parse_tokens, tokens

__all__ = [
    "SYMBOLS", "CODES", "SEPARATOR", "NotAWff", "NotASequence",
    "encode_wff", "decode_wff", "encode_sequence", "decode_sequence",
    "encode_tokens", "decode_digits", "digit_count",
]

SYMBOLS = (
    "0", "S", "(", ")", "+", "*", "=", "~", "&", "|", "->",
    "forall", "exists", "x", "'", ",", "Gdl", ".", "§",
)
CODES = {s: i for i, s in enumerate(SYMBOLS, start=1)}
SEPARATOR = CODES["§"]
BASE = 19

# plain base-19 digit characters as gmpy2 reads and writes them
_CHARS = "0123456789abcdefghi"
_CHAR_VAL = {c: i for i, c in enumerate(_CHARS)}


class NotAWff(ValueError):
    pass


class NotASequence(ValueError):
    pass


def _repunit(length: int) -> int:
    # value of a string of `length` ones: (19^length - 1) / 18
    return (BASE ** length - 1) // (BASE - 1)


def from_digits(digits: list[int]) -> int:
    """Bijective base-19 value of ``digits`` (each in 1..19)."""
    if not digits:
        return 0
    # subtract one from every digit to get an ordinary base-19 numeral
    s = "".join(_CHARS[d - 1] for d in digits)
    return int(gmpy2.mpz(s, BASE)) + _repunit(len(digits))


def decode_digits(g: int) -> list[int]:
    """Inverse of :func:`from_digits`."""
    if g < 0:
        raise ValueError("Gödel numbers are natural numbers")
    if g == 0:
        return []
    # length L satisfies repunit(L) <= g < repunit(L + 1)
    length = max(1, int(gmpy2.mpz(g).bit_length() / 4.2479275134435852) - 1)
    while _repunit(length + 1) <= g:
        length += 1
    while _repunit(length) > g:
        length -= 1
    rest = g - _repunit(length)
    s = gmpy2.digits(gmpy2.mpz(rest), BASE) if rest else ""
    s = "0" * (length - len(s)) + s
    return [_CHAR_VAL[c] + 1 for c in s]


def digit_count(g: int) -> int:
    return len(decode_digits(g))


def encode_tokens(toks) -> int:
    return from_digits([CODES[t] for t in toks])


def encode_wff(w: Wff) -> int:
    """Gödel number of a wff (terms are accepted too and numbered alike)."""
    return encode_tokens(tokens(w))


def _parse_segment(digits: list[int], exc):
    if not digits:
        raise exc("empty symbol string")
    toks = [SYMBOLS[d - 1] for d in digits]
    try:
        return parse_tokens(toks, "wff")
    except ParseError as e:
        raise exc(f"symbol string does not parse as a wff: {e}") from None


def decode_wff(g: int) -> Wff:
    digits = decode_digits(g)
    if SEPARATOR in digits:
        raise NotAWff("number codes a sequence, not a single wff")
    return _parse_segment(digits, NotAWff)


def encode_sequence(ws) -> int:
    ws = list(ws)
    if not ws:
        raise ValueError("a sequence must be nonempty")
    digits: list[int] = []
    for i, w in enumerate(ws):
        if i:
            digits.append(SEPARATOR)
        digits.extend(CODES[t] for t in tokens(w))
    return from_digits(digits)


def decode_sequence(g: int) -> list[Wff]:
    digits = decode_digits(g)
    if not digits:
        raise NotASequence("0 codes the empty string")
    out = []
    seg: list[int] = []
    for d in digits + [SEPARATOR]:
        if d == SEPARATOR:
            out.append(_parse_segment(seg, NotASequence))
            seg = []
        else:
            seg.append(d)
    return out
