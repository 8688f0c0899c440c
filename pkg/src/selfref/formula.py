"""Syntax of the first-order arithmetic language used to build the Gödel sentence.

Terms are built from ``0``, variables, ``S``, ``+`` and ``*``; formulas from
equations, the binary ``Gdl`` predicate, the connectives ``~ & | ->`` and the
two quantifiers.  All nodes are frozen dataclasses, so structural equality
(no alpha-conversion) is plain ``==``.

Canonical text::

    term  ::= 0 | var | S(term) | (term + term) | (term * term)
    atom  ::= term = term | Gdl(term, term)
    wff   ::= atom | ~wff | (wff & wff) | (wff | wff) | (wff -> wff)
            | forall var. wff | exists var. wff
    var   ::= x | y | x'' | x''' | ...

Variables are indexed by their prime count over the single base letter ``x``.
Index 1 is spelled ``y`` in canonical text; ``x'`` is accepted on input as a
synonym.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Term", "Wff", "Zero", "Var", "Succ", "Plus", "Times",
    "Eq", "Gdl", "Not", "And", "Or", "Imp", "Forall", "Exists",
    "X", "Y", "ParseError", "parse", "parse_wff", "parse_term", "to_text",
    "numeral", "numeral_value", "substitute", "free_vars", "term_vars",
    "is_closed", "tokens", "parse_tokens", "subformulas", "subterms",
    "var_name", "var_index", "replace_free", "replace_term", "all_vars",
    "fresh_var",
]


# -- variables ---------------------------------------------------------------

_VAR_RE = re.compile(r"^(?:x'*|y)$")


def var_index(name: str) -> int:
    """Prime count of a variable identifier (``y`` counts as one prime)."""
    if not _VAR_RE.match(name):
        raise ValueError(f"not a variable identifier: {name!r}")
    return 1 if name == "y" else len(name) - 1


def var_name(index: int) -> str:
    """Canonical spelling of the variable with ``index`` primes."""
    if index < 0:
        raise ValueError("variable index must be non-negative")
    return "y" if index == 1 else "x" + "'" * index


def _canon_var(name: str) -> str:
    return var_name(var_index(name))


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        object.__setattr__(self, "name", _canon_var(self.name))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Succ:
    t: "Term"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Plus:
    l: "Term"
    r: "Term"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Times:
    l: "Term"
    r: "Term"

    def __str__(self) -> str:
        return to_text(self)


Term = Union[Zero, Var, Succ, Plus, Times]
TERM_TYPES = (Zero, Var, Succ, Plus, Times)


# -- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    l: Term
    r: Term

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Gdl:
    m: Term
    n: Term

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Not:
    w: "Wff"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class And:
    l: "Wff"
    r: "Wff"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Or:
    l: "Wff"
    r: "Wff"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Imp:
    l: "Wff"
    r: "Wff"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Forall:
    v: str
    body: "Wff"

    def __post_init__(self):
        object.__setattr__(self, "v", _canon_var(self.v))

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Exists:
    v: str
    body: "Wff"

    def __post_init__(self):
        object.__setattr__(self, "v", _canon_var(self.v))

    def __str__(self) -> str:
        return to_text(self)


Wff = Union[Eq, Gdl, Not, And, Or, Imp, Forall, Exists]
WFF_TYPES = (Eq, Gdl, Not, And, Or, Imp, Forall, Exists)

X = Var("x")
Y = Var("y")

_BINOPS = {And: "&", Or: "|", Imp: "->"}
_BINOP_CLS = {v: k for k, v in _BINOPS.items()}


# -- printing ----------------------------------------------------------------

def tokens(node) -> Iterator[str]:
    """Yield the canonical token stream of a term or wff.

    A variable contributes ``x`` followed by one ``'`` token per prime, so
    ``y`` yields ``x`` and ``'``.  This is the stream the Gödel codec numbers.
    """
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, str):
            yield n
        elif isinstance(n, Zero):
            yield "0"
        elif isinstance(n, Var):
            yield "x"
            yield from "'" * var_index(n.name)
        elif isinstance(n, Succ):
            stack.extend((")", n.t, "(", "S"))
        elif isinstance(n, Plus):
            stack.extend((")", n.r, "+", n.l, "("))
        elif isinstance(n, Times):
            stack.extend((")", n.r, "*", n.l, "("))
        elif isinstance(n, Eq):
            stack.extend((n.r, "=", n.l))
        elif isinstance(n, Gdl):
            stack.extend((")", n.n, ",", n.m, "(", "Gdl"))
        elif isinstance(n, Not):
            stack.extend((n.w, "~"))
        elif isinstance(n, (And, Or, Imp)):
            stack.extend((")", n.r, _BINOPS[type(n)], n.l, "("))
        elif isinstance(n, (Forall, Exists)):
            q = "forall" if isinstance(n, Forall) else "exists"
            stack.extend((n.body, ".", Var(n.v), q))
        else:
            raise TypeError(f"not a term or wff: {n!r}")


def to_text(node) -> str:
    """Canonical, fully parenthesized text of a term or wff."""
    out: list[str] = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, str):
            out.append(n)
        elif isinstance(n, Zero):
            out.append("0")
        elif isinstance(n, Var):
            out.append(n.name)
        elif isinstance(n, Succ):
            stack.extend((")", n.t, "S("))
        elif isinstance(n, Plus):
            stack.extend((")", n.r, " + ", n.l, "("))
        elif isinstance(n, Times):
            stack.extend((")", n.r, " * ", n.l, "("))
        elif isinstance(n, Eq):
            stack.extend((n.r, " = ", n.l))
        elif isinstance(n, Gdl):
            stack.extend((")", n.n, ", ", n.m, "Gdl("))
        elif isinstance(n, Not):
            stack.extend((n.w, "~"))
        elif isinstance(n, (And, Or, Imp)):
            stack.extend((")", n.r, f" {_BINOPS[type(n)]} ", n.l, "("))
        elif isinstance(n, (Forall, Exists)):
            q = "forall" if isinstance(n, Forall) else "exists"
            stack.extend((n.body, f"{q} {n.v}. "))
        else:
            raise TypeError(f"not a term or wff: {n!r}")
    return "".join(out)


# -- lexing and parsing ------------------------------------------------------

class ParseError(ValueError):
    """Syntax error at ``offset`` (bytes into the input); ``expected`` lists
    the tokens that would have been accepted there."""

    def __init__(self, offset: int, expected, found: str | None = None, unit: str = "byte"):
        self.offset = offset
        self.unit = unit
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        got = "end of input" if found is None else repr(found)
        super().__init__(f"syntax error at {unit} {offset}: expected one of {{{exp}}}, found {got}")


_TOKEN_RE = re.compile(r"->|forall|exists|Gdl|[0S()+*=~&|x',.y]")
_SPACE_RE = re.compile(r"\s*")
_KEYWORDS = ("forall", "exists", "Gdl")


def _lex(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while True:
        pos = _SPACE_RE.match(text, pos).end()
        if pos == len(text):
            return toks
        off = len(text[:pos].encode())
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(off, {"0", "S", "(", "x", "~", "forall", "exists", "Gdl"}, text[pos])
        tok = m.group()
        if tok in _KEYWORDS and m.end() < len(text) and text[m.end()].isalnum():
            raise ParseError(off, {tok}, text[pos:m.end() + 1])
        toks.append((tok, off))
        pos = m.end()


class _Parser:
    """Backtracking recursive descent over a token list.

    Tracks the furthest failure so that errors report a useful offset and
    expected set even after backtracking.
    """

    unit = "byte"

    def __init__(self, toks: list[tuple[str, int]], end_offset: int):
        self.toks = toks
        self.end = end_offset
        self.far = -1
        self.far_expected: set[str] = set()

    def _offset(self, i: int) -> int:
        return self.toks[i][1] if i < len(self.toks) else self.end

    def _fail(self, i: int, expected) -> None:
        if i > self.far:
            self.far = i
            self.far_expected = set(expected)
        elif i == self.far:
            self.far_expected.update(expected)
        return None

    def error(self) -> ParseError:
        i = max(self.far, 0)
        found = self.toks[i][0] if i < len(self.toks) else None
        return ParseError(self._offset(i), self.far_expected or {"end of input"}, found, self.unit)

    def peek(self, i: int) -> str | None:
        return self.toks[i][0] if i < len(self.toks) else None

    def expect(self, i: int, tok: str):
        if self.peek(i) == tok:
            return i + 1
        return self._fail(i, {tok})

    # var ::= x '* | y
    def var(self, i: int):
        t = self.peek(i)
        if t == "y":
            return "y", i + 1
        if t != "x":
            return self._fail(i, {"x", "y"})
        j = i + 1
        while self.peek(j) == "'":
            j += 1
        return var_name(j - i - 1), j

    def term(self, i: int):
        t = self.peek(i)
        if t == "0":
            return Zero(), i + 1
        if t in ("x", "y"):
            r = self.var(i)
            return Var(r[0]), r[1]
        if t == "S":
            j = self.expect(i + 1, "(")
            if j is None:
                return None
            r = self.term(j)
            if r is None:
                return None
            k = self.expect(r[1], ")")
            if k is None:
                return None
            return Succ(r[0]), k
        if t == "(":
            left = self.term(i + 1)
            if left is None:
                return None
            op = self.peek(left[1])
            if op not in ("+", "*"):
                return self._fail(left[1], {"+", "*"})
            right = self.term(left[1] + 1)
            if right is None:
                return None
            k = self.expect(right[1], ")")
            if k is None:
                return None
            cls = Plus if op == "+" else Times
            return cls(left[0], right[0]), k
        return self._fail(i, {"0", "x", "y", "S", "("})

    def wff(self, i: int):
        t = self.peek(i)
        if t == "~":
            r = self.wff(i + 1)
            return None if r is None else (Not(r[0]), r[1])
        if t in ("forall", "exists"):
            r = self.var(i + 1)
            if r is None:
                return None
            j = self.expect(r[1], ".")
            if j is None:
                return None
            b = self.wff(j)
            if b is None:
                return None
            cls = Forall if t == "forall" else Exists
            return cls(r[0], b[0]), b[1]
        if t == "Gdl":
            j = self.expect(i + 1, "(")
            if j is None:
                return None
            m = self.term(j)
            if m is None:
                return None
            j = self.expect(m[1], ",")
            if j is None:
                return None
            n = self.term(j)
            if n is None:
                return None
            j = self.expect(n[1], ")")
            if j is None:
                return None
            return Gdl(m[0], n[0]), j
        if t == "(":
            # (w op w), or a redundantly parenthesized (w)
            left = self.wff(i + 1)
            if left is not None:
                op = self.peek(left[1])
                if op in _BINOP_CLS:
                    right = self.wff(left[1] + 1)
                    if right is not None:
                        k = self.expect(right[1], ")")
                        if k is not None:
                            return _BINOP_CLS[op](left[0], right[0]), k
                elif op == ")":
                    return left[0], left[1] + 1
                else:
                    self._fail(left[1], {"&", "|", "->", ")"})
        return self.equation(i)

    def equation(self, i: int):
        left = self.term(i)
        if left is None:
            if self.peek(i) not in ("0", "x", "y", "S", "("):
                self._fail(i, {"~", "forall", "exists", "Gdl"})
            return None
        j = self.expect(left[1], "=")
        if j is None:
            return None
        right = self.term(j)
        if right is None:
            return None
        return Eq(left[0], right[0]), right[1]


def _parse_with(toks, end_offset: int, kind: str, unit: str = "byte"):
    p = _Parser(toks, end_offset)
    p.unit = unit
    kinds = ("wff", "term") if kind == "any" else (kind,)
    for k in kinds:
        r = p.wff(0) if k == "wff" else p.term(0)
        if r is not None:
            if r[1] == len(toks):
                return r[0]
            p._fail(r[1], {"end of input"})
    raise p.error()


def parse(text: str):
    """Parse canonical text into a ``Wff`` or, failing that, a ``Term``.

    >>> parse("S(0) = S(0)")
    Eq(l=Succ(t=Zero()), r=Succ(t=Zero()))
    """
    return _parse_with(_lex(text), len(text.encode()), "any")


def parse_wff(text: str) -> Wff:
    return _parse_with(_lex(text), len(text.encode()), "wff")


def parse_term(text: str) -> Term:
    return _parse_with(_lex(text), len(text.encode()), "term")


def parse_tokens(toks: list[str], kind: str = "wff"):
    """Parse a bare token list (offsets become token indices)."""
    return _parse_with([(t, i) for i, t in enumerate(toks)], len(toks), kind, "token")


# -- numerals ----------------------------------------------------------------

UNARY_LIMIT = 10


def _unary(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


_TEN = _unary(10)


def numeral(n: int) -> Term:
    """Closed term denoting ``n``.

    Below ``UNARY_LIMIT`` this is the standard ``S(...S(0)...)``.  Larger
    values use decimal Horner form ``((d1 * 10) + d2) * 10 + ...`` with unary
    digits, so a Gödel number with k decimal digits costs O(k) symbols
    instead of O(10^k).
    """
    if n < 0:
        raise ValueError("numerals denote naturals")
    if n < UNARY_LIMIT:
        return _unary(n)
    digits = str(n)
    t = _unary(int(digits[0]))
    for d in digits[1:]:
        t = Times(t, _TEN)
        if d != "0":
            t = Plus(t, _unary(int(d)))
    return t


def numeral_value(t: Term) -> int:
    """Evaluate a closed term in the standard model."""
    stack: list = [t]
    vals: list[int] = []
    while stack:
        n = stack.pop()
        if isinstance(n, Zero):
            vals.append(0)
        elif isinstance(n, Succ):
            stack.append(("S",))
            stack.append(n.t)
        elif isinstance(n, (Plus, Times)):
            stack.append(("+",) if isinstance(n, Plus) else ("*",))
            stack.append(n.r)
            stack.append(n.l)
        elif isinstance(n, Var):
            raise ValueError(f"term is not closed: contains {n.name}")
        elif n == ("S",):
            vals.append(vals.pop() + 1)
        else:
            b = vals.pop()
            a = vals.pop()
            vals.append(a + b if n == ("+",) else a * b)
    return vals[0]


# -- variables, substitution -------------------------------------------------

def term_vars(t: Term) -> frozenset[str]:
    out = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            out.add(n.name)
        elif isinstance(n, Succ):
            stack.append(n.t)
        elif isinstance(n, (Plus, Times)):
            stack.extend((n.l, n.r))
    return frozenset(out)


def free_vars(node) -> frozenset[str]:
    """Free variables of a term or wff."""
    if isinstance(node, TERM_TYPES):
        return term_vars(node)
    if isinstance(node, Eq):
        return term_vars(node.l) | term_vars(node.r)
    if isinstance(node, Gdl):
        return term_vars(node.m) | term_vars(node.n)
    if isinstance(node, Not):
        return free_vars(node.w)
    if isinstance(node, (And, Or, Imp)):
        return free_vars(node.l) | free_vars(node.r)
    if isinstance(node, (Forall, Exists)):
        return free_vars(node.body) - {node.v}
    raise TypeError(f"not a term or wff: {node!r}")


def is_closed(node) -> bool:
    return not free_vars(node)


def _subst_term(t: Term, v: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == v else t
    if isinstance(t, Succ):
        return Succ(_subst_term(t.t, v, s))
    if isinstance(t, Plus):
        return Plus(_subst_term(t.l, v, s), _subst_term(t.r, v, s))
    if isinstance(t, Times):
        return Times(_subst_term(t.l, v, s), _subst_term(t.r, v, s))
    return t


def replace_free(w, v: str, s: Term):
    """Replace free ``v`` by ``s`` without the closedness check.

    Raises ``ValueError`` if a variable of ``s`` would be captured.
    """
    sv = term_vars(s)

    def go(w, bound):
        if isinstance(w, TERM_TYPES):
            return _subst_term(w, v, s)
        if isinstance(w, Eq):
            return Eq(go(w.l, bound), go(w.r, bound))
        if isinstance(w, Gdl):
            return Gdl(go(w.m, bound), go(w.n, bound))
        if isinstance(w, Not):
            return Not(go(w.w, bound))
        if isinstance(w, (And, Or, Imp)):
            return type(w)(go(w.l, bound), go(w.r, bound))
        if isinstance(w, (Forall, Exists)):
            if w.v == v:
                return w
            if v in free_vars(w.body) and w.v in sv:
                raise ValueError(f"substituting for {v} would capture {w.v}")
            return type(w)(w.v, go(w.body, bound | {w.v}))
        raise TypeError(f"not a term or wff: {w!r}")

    return go(w, frozenset())


def substitute(w, v: str, t: Term):
    """Replace every free occurrence of variable ``v`` in ``w`` by closed ``t``."""
    if not is_closed(t):
        raise ValueError(f"substituted term must be closed: {to_text(t)}")
    return replace_free(w, _canon_var(v), t)


def replace_term(node, old: Term, new: Term):
    """Replace every occurrence of the closed term ``old`` by ``new``."""
    if node == old:
        return new
    if isinstance(node, (Zero, Var)):
        return node
    if isinstance(node, Succ):
        return Succ(replace_term(node.t, old, new))
    if isinstance(node, (Plus, Times, Eq, And, Or, Imp)):
        return type(node)(replace_term(node.l, old, new), replace_term(node.r, old, new))
    if isinstance(node, Gdl):
        return Gdl(replace_term(node.m, old, new), replace_term(node.n, old, new))
    if isinstance(node, Not):
        return Not(replace_term(node.w, old, new))
    if isinstance(node, (Forall, Exists)):
        return type(node)(node.v, replace_term(node.body, old, new))
    raise TypeError(f"not a term or wff: {node!r}")


def all_vars(node) -> frozenset[str]:
    """Every variable occurring in ``node``, free or bound."""
    out = {t.name for t in subterms(node) if isinstance(t, Var)}
    if not isinstance(node, TERM_TYPES):
        out.update(w.v for w in subformulas(node) if isinstance(w, (Forall, Exists)))
    return frozenset(out)


def fresh_var(*nodes) -> str:
    used = set()
    for n in nodes:
        used |= all_vars(n)
    i = 0
    while var_name(i) in used:
        i += 1
    return var_name(i)


# -- traversal ---------------------------------------------------------------

def subformulas(w: Wff) -> Iterator[Wff]:
    """All subformula occurrences, pre-order."""
    stack = [w]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, Not):
            stack.append(n.w)
        elif isinstance(n, (And, Or, Imp)):
            stack.extend((n.r, n.l))
        elif isinstance(n, (Forall, Exists)):
            stack.append(n.body)


def subterms(node) -> Iterator[Term]:
    """All term occurrences inside a wff or term, pre-order."""
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, TERM_TYPES):
            yield n
            if isinstance(n, Succ):
                stack.append(n.t)
            elif isinstance(n, (Plus, Times)):
                stack.extend((n.r, n.l))
        elif isinstance(n, Eq):
            stack.extend((n.r, n.l))
        elif isinstance(n, Gdl):
            stack.extend((n.n, n.m))
        elif isinstance(n, Not):
            stack.append(n.w)
        elif isinstance(n, (And, Or, Imp)):
            stack.extend((n.r, n.l))
        elif isinstance(n, (Forall, Exists)):
            stack.append(n.body)
