"""A Hilbert-style calculus for Peano arithmetic and the ``Gdl`` relation.

Checking happens on *core* formulas, built only from ``~``, ``->``,
``forall``, ``=``, ``Gdl`` and arithmetic.  Surface ``&``, ``|`` and ``exists``
are desugared first::

    A & B      ~(A -> ~B)
    A | B      ~A -> B
    exists v.A ~forall v. ~A

so a proof line may be written in either form.

Axiom schemas (``A``, ``B``, ``C`` wffs, ``s``, ``t`` terms):

=====  ==========================================================
P1     A -> (B -> A)
P2     (A -> (B -> C)) -> ((A -> B) -> (A -> C))
P3     (~B -> ~A) -> (A -> B)
Q1     forall v. A -> A[t/v]          t free for v in A
Q2     forall v. (A -> B) -> (A -> forall v. B)   v not free in A
E1     t = t
E2     s = t -> (A -> A')             A' replaces some s by t
PA1-6  successor, addition and multiplication axioms, any term
       instance, optionally under a prefix of universal quantifiers
IND    A[0/v] -> (forall v. (A -> A[S(v)/v]) -> forall v. A)
=====  ==========================================================

Rules are modus ponens and generalization.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Union

from .diagonal import FreeVarMismatch, diagonalize
from .formula import (
    TERM_TYPES, And, Eq, Exists, Forall, Gdl, Imp, Not, Or, Plus, Succ, Term,
    Times, Var, Wff, Zero, all_vars, free_vars, fresh_var, is_closed, numeral,
    numeral_value, replace_free, replace_term, subformulas, subterms,
    term_vars, to_text,
)
from .godel_codec import (
    SEPARATOR, SYMBOLS, NotAWff, decode_digits, decode_wff, encode_sequence,
)
from .formula import ParseError, parse_tokens

__all__ = [
    "AxiomInstance", "ModusPonens", "Generalization", "Justification",
    "ProofLine", "Proof", "InvalidLine", "NotFound", "BoundTooLarge",
    "desugar", "is_core", "axiom_schema", "is_axiom", "check_proof",
    "reconstruct", "line_verdicts", "gdl", "gdl_atom_truth", "ProofBuilder",
    "search_proof", "IND_SIZE_CAP", "MAX_SEARCH_DEPTH",
]

IND_SIZE_CAP = 64
MAX_SEARCH_DEPTH = 10


# -- proofs ------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomInstance:
    schema: str


@dataclass(frozen=True)
class ModusPonens:
    major: int   # index of the line A -> B
    minor: int   # index of the line A


@dataclass(frozen=True)
class Generalization:
    premise: int
    v: str


Justification = Union[AxiomInstance, ModusPonens, Generalization]


@dataclass(frozen=True)
class ProofLine:
    wff: Wff
    justification: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]

    def __post_init__(self):
        if not self.lines:
            raise ValueError("a proof has at least one line")

    @property
    def conclusion(self) -> Wff:
        return self.lines[-1].wff

    @property
    def wffs(self) -> list[Wff]:
        return [ln.wff for ln in self.lines]

    def godel_number(self) -> int:
        return encode_sequence(self.wffs)


class InvalidLine(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"line {index + 1}: {reason}")


class BoundTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class NotFound:
    """Search exhausted its bound.  Says nothing about provability."""
    target: Wff
    depth_bound: int


# -- desugaring --------------------------------------------------------------

def desugar(w: Wff) -> Wff:
    if isinstance(w, (Eq, Gdl)):
        return w
    if isinstance(w, Not):
        return Not(desugar(w.w))
    if isinstance(w, Imp):
        return Imp(desugar(w.l), desugar(w.r))
    if isinstance(w, And):
        return Not(Imp(desugar(w.l), Not(desugar(w.r))))
    if isinstance(w, Or):
        return Imp(Not(desugar(w.l)), desugar(w.r))
    if isinstance(w, Forall):
        return Forall(w.v, desugar(w.body))
    if isinstance(w, Exists):
        return Not(Forall(w.v, Not(desugar(w.body))))
    raise TypeError(f"not a wff: {w!r}")


def is_core(w: Wff) -> bool:
    return not any(isinstance(s, (And, Or, Exists)) for s in subformulas(w))


# -- axiom recognition -------------------------------------------------------

def _size(w) -> int:
    return sum(1 for _ in subformulas(w)) + sum(1 for _ in subterms(w))


def _p1(w):
    return isinstance(w, Imp) and isinstance(w.r, Imp) and w.r.r == w.l


def _p2(w):
    if not (isinstance(w, Imp) and isinstance(w.l, Imp) and isinstance(w.l.r, Imp)):
        return False
    a, b, c = w.l.l, w.l.r.l, w.l.r.r
    return w.r == Imp(Imp(a, b), Imp(a, c))


def _p3(w):
    if not (isinstance(w, Imp) and isinstance(w.l, Imp)):
        return False
    nb, na = w.l.l, w.l.r
    if not (isinstance(nb, Not) and isinstance(na, Not)):
        return False
    return w.r == Imp(na.w, nb.w)


def _instance_term(a, r, v: str, found: list, bound: frozenset) -> bool:
    """Match ``r`` against ``a`` with free ``v`` standing for one term.

    ``found`` holds the term bound to ``v`` so far (empty until first use);
    ``bound`` the variables bound above this position, which the term must
    avoid.
    """
    if isinstance(a, Var) and a.name == v:
        if not isinstance(r, TERM_TYPES) or term_vars(r) & bound:
            return False
        if found:
            return found[0] == r
        found.append(r)
        return True
    if type(a) is not type(r):
        return False
    if isinstance(a, (Zero, Var)):
        return a == r
    if isinstance(a, Succ):
        return _instance_term(a.t, r.t, v, found, bound)
    return (_instance_term(a.l, r.l, v, found, bound)
            and _instance_term(a.r, r.r, v, found, bound))


def _instance(a: Wff, r: Wff, v: str, found: list, bound: frozenset = frozenset()) -> bool:
    if type(a) is not type(r):
        return False
    if isinstance(a, Eq):
        return (_instance_term(a.l, r.l, v, found, bound)
                and _instance_term(a.r, r.r, v, found, bound))
    if isinstance(a, Gdl):
        return (_instance_term(a.m, r.m, v, found, bound)
                and _instance_term(a.n, r.n, v, found, bound))
    if isinstance(a, Not):
        return _instance(a.w, r.w, v, found, bound)
    if isinstance(a, (And, Or, Imp)):
        return _instance(a.l, r.l, v, found, bound) and _instance(a.r, r.r, v, found, bound)
    if a.v != r.v:
        return False
    if a.v == v:
        return a.body == r.body
    return _instance(a.body, r.body, v, found, bound | {a.v})


def _q1(w):
    if not (isinstance(w, Imp) and isinstance(w.l, Forall)):
        return False
    return _instance(w.l.body, w.r, w.l.v, [])


def _q2(w):
    if not (isinstance(w, Imp) and isinstance(w.l, Forall) and isinstance(w.l.body, Imp)):
        return False
    v, a, b = w.l.v, w.l.body.l, w.l.body.r
    return v not in free_vars(a) and w.r == Imp(a, Forall(v, b))


def _e1(w):
    return isinstance(w, Eq) and w.l == w.r


def _leibniz(p, q, s: Term, t: Term, unsafe: frozenset) -> bool:
    """``q`` is ``p`` with some occurrences of ``s`` replaced by ``t``."""
    if p == q:
        return True
    if isinstance(p, TERM_TYPES) and p == s and q == t:
        return not (term_vars(s) | term_vars(t)) & unsafe
    if type(p) is not type(q):
        return False
    if isinstance(p, (Zero, Var)):
        return False
    if isinstance(p, Succ):
        return _leibniz(p.t, q.t, s, t, unsafe)
    if isinstance(p, (Plus, Times, Eq, And, Or, Imp)):
        return _leibniz(p.l, q.l, s, t, unsafe) and _leibniz(p.r, q.r, s, t, unsafe)
    if isinstance(p, Gdl):
        return _leibniz(p.m, q.m, s, t, unsafe) and _leibniz(p.n, q.n, s, t, unsafe)
    if isinstance(p, Not):
        return _leibniz(p.w, q.w, s, t, unsafe)
    if p.v != q.v:
        return False
    return _leibniz(p.body, q.body, s, t, unsafe | {p.v})


def _e2(w):
    if not (isinstance(w, Imp) and isinstance(w.l, Eq) and isinstance(w.r, Imp)):
        return False
    return _leibniz(w.r.l, w.r.r, w.l.l, w.l.r, frozenset())


def _pa(w):
    while isinstance(w, Forall):
        w = w.body
    if isinstance(w, Not):
        e = w.w
        if isinstance(e, Eq) and isinstance(e.l, Succ) and isinstance(e.r, Zero):
            return "PA1"
        return None
    if isinstance(w, Imp):
        a, b = w.l, w.r
        if (isinstance(a, Eq) and isinstance(a.l, Succ) and isinstance(a.r, Succ)
                and b == Eq(a.l.t, a.r.t)):
            return "PA2"
        return None
    if not isinstance(w, Eq):
        return None
    lhs, rhs = w.l, w.r
    if isinstance(lhs, Plus):
        if isinstance(lhs.r, Zero) and rhs == lhs.l:
            return "PA3"
        if isinstance(lhs.r, Succ) and rhs == Succ(Plus(lhs.l, lhs.r.t)):
            return "PA4"
    if isinstance(lhs, Times):
        if isinstance(lhs.r, Zero) and isinstance(rhs, Zero):
            return "PA5"
        if isinstance(lhs.r, Succ) and rhs == Plus(Times(lhs.l, lhs.r.t), lhs.l):
            return "PA6"
    return None


def _ind(w):
    if not (isinstance(w, Imp) and isinstance(w.r, Imp)):
        return False
    base, step, concl = w.l, w.r.l, w.r.r
    if not (isinstance(step, Forall) and isinstance(concl, Forall)
            and step.v == concl.v and isinstance(step.body, Imp)):
        return False
    v, a = concl.v, concl.body
    if step.body.l != a or _size(a) > IND_SIZE_CAP:
        return False
    try:
        return (base == replace_free(a, v, Zero())
                and step.body.r == replace_free(a, v, Succ(Var(v))))
    except ValueError:
        return False


_SCHEMAS = (
    ("P1", _p1), ("P2", _p2), ("P3", _p3), ("Q1", _q1), ("Q2", _q2),
    ("E1", _e1), ("E2", _e2), ("IND", _ind),
)


def axiom_schema(w: Wff) -> str | None:
    """Name of the first schema ``w`` instantiates, or ``None``."""
    w = desugar(w)
    for name, test in _SCHEMAS:
        if test(w):
            return name
    return _pa(w)


def is_axiom(w: Wff) -> bool:
    return axiom_schema(w) is not None


# -- checking ----------------------------------------------------------------

def _check_line(k: int, core: Wff, just: Justification, cores: list[Wff]) -> None:
    if isinstance(just, AxiomInstance):
        found = axiom_schema(core)
        if found is None:
            raise InvalidLine(k, f"not an axiom instance (claimed {just.schema})")
        return
    if isinstance(just, ModusPonens):
        i, j = just.major, just.minor
        if not (0 <= i < k and 0 <= j < k):
            raise InvalidLine(k, "modus ponens cites a line that is not earlier")
        major = cores[i]
        if not isinstance(major, Imp):
            raise InvalidLine(k, f"major premise (line {i + 1}) is not an implication")
        if major.l != cores[j] or major.r != core:
            raise InvalidLine(k, "modus ponens premises do not fit")
        return
    if isinstance(just, Generalization):
        i = just.premise
        if not 0 <= i < k:
            raise InvalidLine(k, "generalization cites a line that is not earlier")
        if core != Forall(just.v, cores[i]):
            raise InvalidLine(k, "not the generalization of the cited line")
        return
    raise InvalidLine(k, f"unknown justification {just!r}")


def check_proof(p: Proof) -> Wff:
    """Check every line of ``p``; return its conclusion."""
    cores: list[Wff] = []
    for k, line in enumerate(p.lines):
        core = desugar(line.wff)
        _check_line(k, core, line.justification, cores)
        cores.append(core)
    return p.conclusion


def _reconstruct(wffs: list[Wff]) -> list[Justification | str]:
    """Rediscover a justification for every line, or a failure reason.

    Lookups run on canonical text so each comparison is a string hash.
    """
    seen: dict[str, int] = {}
    # conclusion text -> [(line index of the implication, antecedent text)]
    implications: dict[str, list[tuple[int, str]]] = {}
    out: list[Justification | str] = []
    for k, w in enumerate(wffs):
        core = desugar(w)
        key = to_text(core)
        just: Justification | str
        schema = axiom_schema(core)
        if schema is not None:
            just = AxiomInstance(schema)
        else:
            just = "no axiom, modus ponens or generalization fits"
            for i, ant in implications.get(key, ()):
                if ant in seen:
                    just = ModusPonens(i, seen[ant])
                    break
            else:
                if isinstance(core, Forall):
                    body = to_text(core.body)
                    if body in seen:
                        just = Generalization(seen[body], core.v)
        out.append(just)
        if isinstance(just, str):
            # an unjustified line cannot serve as a premise
            continue
        seen.setdefault(key, k)
        if isinstance(core, Imp):
            implications.setdefault(to_text(core.r), []).append((k, to_text(core.l)))
    return out


def line_verdicts(wffs: Iterable[Wff]) -> list[Justification | str]:
    """Per-line justification, or a reason string for lines that fail."""
    return _reconstruct(list(wffs))


def reconstruct(wffs: Iterable[Wff]) -> Proof:
    """Turn a bare wff sequence into a justified proof.

    Raises ``InvalidLine`` at the first line no justification fits.
    """
    wffs = list(wffs)
    if not wffs:
        raise ValueError("empty sequence")
    lines = []
    for k, (w, just) in enumerate(zip(wffs, _reconstruct(wffs))):
        if isinstance(just, str):
            raise InvalidLine(k, just)
        lines.append(ProofLine(w, just))
    return Proof(tuple(lines))


# -- the Gdl relation --------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _parse_segment(digits: tuple[int, ...]) -> Wff | None:
    if not digits:
        return None
    try:
        return parse_tokens([SYMBOLS[d - 1] for d in digits], "wff")
    except ParseError:
        return None


def _segments(digits: list[int]) -> list[tuple[int, ...]]:
    out, start = [], 0
    for i, d in enumerate(digits):
        if d == SEPARATOR:
            out.append(tuple(digits[start:i]))
            start = i + 1
    out.append(tuple(digits[start:]))
    return out


def gdl(m: int, n: int) -> bool:
    """True iff ``m`` numbers a proof of the diagonalization of the wff numbered ``n``.

    Total: any decoding or checking failure simply yields ``False``.
    """
    if m <= 0 or n <= 0:
        return False
    try:
        target = diagonalize(decode_wff(n))
    except (NotAWff, FreeVarMismatch):
        return False
    segs = _segments(decode_digits(m))
    # the conclusion is cheap to test first and rules out almost everything
    if _parse_segment(segs[-1]) != target:
        return False
    wffs = []
    for seg in segs:
        w = _parse_segment(seg)
        if w is None:
            return False
        wffs.append(w)
    return not any(isinstance(j, str) for j in _reconstruct(wffs))


def gdl_atom_truth(atom: Gdl) -> bool:
    """Oracle semantics of a closed ``Gdl(m, n)`` atom."""
    return gdl(numeral_value(atom.m), numeral_value(atom.n))


# -- building proofs ---------------------------------------------------------

def _neg(w: Wff) -> Wff:
    return Not(w)


@dataclass
class ProofBuilder:
    """Accumulates a Hilbert proof; derived rules expand into primitive lines.

    Every method returns the index of the line holding its result.  A wff
    proved twice is only written once.
    """

    lines: list[ProofLine] = field(default_factory=list)
    _index: dict[Wff, int] = field(default_factory=dict)

    def wff(self, i: int) -> Wff:
        return self.lines[i].wff

    def _add(self, w: Wff, just: Justification) -> int:
        if w in self._index:
            return self._index[w]
        self.lines.append(ProofLine(w, just))
        self._index[w] = len(self.lines) - 1
        return len(self.lines) - 1

    def axiom(self, w: Wff) -> int:
        schema = axiom_schema(w)
        if schema is None:
            raise InvalidLine(len(self.lines), f"not an axiom: {to_text(w)}")
        return self._add(w, AxiomInstance(schema))

    def mp(self, major: int, minor: int) -> int:
        imp = self.wff(major)
        if not (isinstance(imp, Imp) and imp.l == self.wff(minor)):
            raise InvalidLine(len(self.lines), "modus ponens premises do not fit")
        return self._add(imp.r, ModusPonens(major, minor))

    def gen(self, premise: int, v: str) -> int:
        return self._add(Forall(v, self.wff(premise)), Generalization(premise, v))

    # derived rules; each comment gives the result

    def identity(self, a: Wff) -> int:
        # a -> a
        aa = Imp(a, a)
        s1 = self.axiom(Imp(Imp(a, Imp(aa, a)), Imp(Imp(a, aa), aa)))
        s2 = self.axiom(Imp(a, Imp(aa, a)))
        s3 = self.mp(s1, s2)
        s4 = self.axiom(Imp(a, aa))
        return self.mp(s3, s4)

    def weaken(self, b: int, a: Wff) -> int:
        # from b: a -> b
        return self.mp(self.axiom(Imp(self.wff(b), Imp(a, self.wff(b)))), b)

    def chain(self, ab: int, bc: int) -> int:
        # from a -> b and b -> c: a -> c
        a, b = self.wff(ab).l, self.wff(ab).r
        c = self.wff(bc).r
        a_bc = self.weaken(bc, a)
        p2 = self.axiom(Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))))
        return self.mp(self.mp(p2, a_bc), ab)

    def contract(self, a_ab: int) -> int:
        # from a -> (a -> b): a -> b
        a, b = self.wff(a_ab).l, self.wff(a_ab).r.r
        p2 = self.axiom(Imp(Imp(a, Imp(a, b)), Imp(Imp(a, a), Imp(a, b))))
        return self.mp(self.mp(p2, a_ab), self.identity(a))

    def dne(self, a: Wff) -> int:
        # ~~a -> a
        nna, nnnna = _neg(_neg(a)), _neg(_neg(_neg(_neg(a))))
        s1 = self.axiom(Imp(nna, Imp(nnnna, nna)))
        s2 = self.axiom(Imp(Imp(nnnna, nna), Imp(_neg(a), _neg(nna))))
        s3 = self.axiom(Imp(Imp(_neg(a), _neg(nna)), Imp(nna, a)))
        s4 = self.chain(self.chain(s1, s2), s3)      # ~~a -> (~~a -> a)
        return self.contract(s4)

    def dni(self, a: Wff) -> int:
        # a -> ~~a
        p3 = self.axiom(Imp(Imp(_neg(_neg(_neg(a))), _neg(a)), Imp(a, _neg(_neg(a)))))
        return self.mp(p3, self.dne(_neg(a)))

    def contrapose(self, ab: int) -> int:
        # from a -> b: ~b -> ~a
        a, b = self.wff(ab).l, self.wff(ab).r
        nna_b = self.chain(self.dne(a), ab)
        nna_nnb = self.chain(nna_b, self.dni(b))
        p3 = self.axiom(Imp(Imp(_neg(_neg(a)), _neg(_neg(b))), Imp(_neg(b), _neg(a))))
        return self.mp(p3, nna_nnb)

    def apply_to(self, a: Wff, b: Wff) -> int:
        # a -> ((a -> b) -> b)
        ab = Imp(a, b)
        p2 = self.axiom(Imp(Imp(ab, Imp(a, b)), Imp(Imp(ab, a), Imp(ab, b))))
        s = self.mp(p2, self.identity(ab))           # (ab -> a) -> (ab -> b)
        p1 = self.axiom(Imp(a, Imp(ab, a)))
        return self.chain(p1, s)

    def neg_imp(self, a: int, nb: int) -> int:
        # from a and ~b: ~(a -> b)
        b = self.wff(nb).w
        ab_b = self.mp(self.apply_to(self.wff(a), b), a)
        return self.mp(self.contrapose(ab_b), nb)

    def modus_tollens(self, ad: int, nd: int) -> int:
        # from a -> d and ~d: ~a
        return self.mp(self.contrapose(ad), nd)

    def double_neg(self, a: int) -> int:
        # from a: ~~a
        return self.mp(self.dni(self.wff(a)), a)

    def instantiate(self, forall: int, t: Term) -> int:
        # from forall v. a: a[t/v]
        w = self.wff(forall)
        return self.mp(self.axiom(Imp(w, replace_free(w.body, w.v, t))), forall)

    def conclude(self, surface: Wff) -> int:
        """Close the proof with ``surface``, which must desugar to a proved line.

        The closing line reuses that line's justification, so the proof ends
        in exactly ``surface`` even when it is written with ``&``, ``|`` or
        ``exists``.
        """
        core = desugar(surface)
        for k, line in enumerate(self.lines):
            if desugar(line.wff) == core:
                break
        else:
            raise InvalidLine(len(self.lines), "conclusion was not derived")
        if k == len(self.lines) - 1 and line.wff == surface:
            return k
        if k == len(self.lines) - 1:
            self.lines[-1] = ProofLine(surface, line.justification)
        else:
            self.lines.append(ProofLine(surface, line.justification))
        self._index[surface] = len(self.lines) - 1
        return len(self.lines) - 1

    def proof(self) -> Proof:
        return Proof(tuple(self.lines))


# -- bounded proof search ----------------------------------------------------
#
# Backward search over derivation trees whose inner nodes are primitive rules
# or the derived rules above.  Cut formulas (the minor premise of modus
# ponens, the middle formula of modus tollens) come from a finite pool: the
# subformulas of the target and of its abstractions, their instances at pool
# terms, and negations.  Pool terms are the closed subterms of the target,
# numerals up to 3 and one fresh variable.  The pool makes the search
# incomplete by design.

@dataclass(frozen=True)
class _Node:
    rule: str
    goal: Wff
    premises: tuple["_Node", ...] = ()
    data: object = None


def _maximal_closed_terms(w: Wff) -> list[Term]:
    """Closed compound terms of ``w`` not nested in a larger closed term."""
    out: list[Term] = []
    stack: list = [w]
    while stack:
        n = stack.pop()
        if isinstance(n, TERM_TYPES):
            if is_closed(n):
                if not isinstance(n, Zero) and n not in out:
                    out.append(n)
                continue
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
        elif isinstance(n, Imp):
            stack.extend((n.r, n.l))
        elif isinstance(n, Forall):
            stack.append(n.body)
    return out


def _pool(target: Wff, fresh: str) -> list[Wff]:
    terms = {numeral(k) for k in range(4)} | {Var(fresh)}
    terms.update(t for t in subterms(target) if is_closed(t))
    sources = [target] + [replace_term(target, t, Var(fresh))
                          for t in _maximal_closed_terms(target)]
    base = set()
    for src in sources:
        base.update(subformulas(src))
    inst = set(base)
    for w in base:
        if isinstance(w, Forall):
            for t in terms:
                try:
                    inst.add(replace_free(w.body, w.v, t))
                except ValueError:
                    pass
    pool = inst | {Not(w) for w in inst}
    return sorted(pool, key=lambda w: (len(to_text(w)), to_text(w)))


class _Search:
    def __init__(self, target: Wff):
        self.fresh = fresh_var(target)
        self.pool = _pool(target, self.fresh)
        self.pool_set = set(self.pool)
        self.failed: dict[Wff, int] = {}   # goal -> largest depth known to fail

    def prove(self, goal: Wff, depth: int) -> _Node | None:
        if axiom_schema(goal) is not None:
            return _Node("Ax", goal)
        if depth <= 0 or self.failed.get(goal, -1) >= depth:
            return None
        node = self._expand(goal, depth - 1)
        if node is None:
            self.failed[goal] = max(self.failed.get(goal, -1), depth)
        return node

    def _expand(self, goal: Wff, d: int) -> _Node | None:
        # prove the goal with a closed term abstracted, then instantiate
        if self.fresh not in all_vars(goal):
            for t in _maximal_closed_terms(goal):
                p = self.prove(replace_term(goal, t, Var(self.fresh)), d)
                if p:
                    return _Node("Inst", goal, (p,), (self.fresh, t))
        if isinstance(goal, Forall):
            p = self.prove(goal.body, d)
            if p:
                return _Node("Gen", goal, (p,))
        if isinstance(goal, Imp):
            if goal.l == goal.r:
                return _Node("Id", goal)
            p = self.prove(goal.r, d)
            if p:
                return _Node("K", goal, (p,))
        if isinstance(goal, Not):
            inner = goal.w
            if isinstance(inner, Not):
                p = self.prove(inner.w, d)
                if p:
                    return _Node("DNI", goal, (p,))
            if isinstance(inner, Imp):
                pa = self.prove(inner.l, d)
                if pa:
                    pb = self.prove(Not(inner.r), d)
                    if pb:
                        return _Node("NegImp", goal, (pa, pb))
            for dd in self.pool:
                if dd == inner:
                    continue
                major = Imp(inner, dd)
                if axiom_schema(major) is None and major not in self.pool_set:
                    continue
                pad = self.prove(major, d)
                if pad:
                    pnd = self.prove(Not(dd), d)
                    if pnd:
                        return _Node("MT", goal, (pad, pnd))
        for a in self.pool:
            if a == goal:
                continue
            major = Imp(a, goal)
            if axiom_schema(major) is None and major not in self.pool_set:
                continue
            pmaj = self.prove(major, d)
            if pmaj:
                pa = self.prove(a, d)
                if pa:
                    return _Node("MP", goal, (pmaj, pa))
        return None


def _emit(node: _Node, b: ProofBuilder) -> int:
    if node.rule == "Ax":
        return b.axiom(node.goal)
    if node.rule == "Id":
        return b.identity(node.goal.l)
    idx = [_emit(p, b) for p in node.premises]
    if node.rule == "Inst":
        v, t = node.data
        return b.instantiate(b.gen(idx[0], v), t)
    if node.rule == "Gen":
        return b.gen(idx[0], node.goal.v)
    if node.rule == "K":
        return b.weaken(idx[0], node.goal.l)
    if node.rule == "DNI":
        return b.double_neg(idx[0])
    if node.rule == "NegImp":
        return b.neg_imp(idx[0], idx[1])
    if node.rule == "MT":
        return b.modus_tollens(idx[0], idx[1])
    if node.rule == "MP":
        return b.mp(idx[0], idx[1])
    raise AssertionError(node.rule)


def search_proof(target: Wff, depth_bound: int, max_depth: int = MAX_SEARCH_DEPTH):
    """Iterative-deepening search for a proof of ``target``.

    Returns a :class:`Proof` or :class:`NotFound`.  The enumeration order is
    fixed, so the result is deterministic.
    """
    if depth_bound > max_depth:
        raise BoundTooLarge(f"depth bound {depth_bound} exceeds maximum {max_depth}")
    if depth_bound < 0:
        raise ValueError("depth bound must be non-negative")
    core = desugar(target)
    search = _Search(core)
    for depth in range(1, depth_bound + 1):
        node = search.prove(core, depth)
        if node is not None:
            b = ProofBuilder()
            _emit(node, b)
            b.conclude(target)
            return b.proof()
    return NotFound(target, depth_bound)
