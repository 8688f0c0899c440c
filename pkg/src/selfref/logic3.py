"""Three-valued (weak Kleene / Bochvar internal) semantics and theory checks.

The third value NM ("no meaning") is contagious: a compound with any NM
component is NM.  Quantifiers range only over the individuals where the
body has a meaning; when none do, the quantified sentence is NM too.

Consistency and completeness are judged relative to a derivability oracle.
Derivability is bounded, so every answer is one of ``Provable``,
``NotDerived`` (refuted within the oracle's reach) or ``Inconclusive``.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

__all__ = [
    "TruthValue3", "T", "F", "NM", "Atom", "Pred", "Neg", "Conj", "Disj",
    "Impl", "All", "Some", "Formula3", "Valuation", "UnboundAtom",
    "parse3", "to_text3", "atoms", "eval3", "eval3_forall", "eval3_exists",
    "eval_classical", "LemBranch", "classify_lem", "Derivation", "Step",
    "ClosureOracle", "KernelOracle", "FiniteTheory", "Violation",
    "ConsistencyReport", "CompletenessReport", "NotConsistent",
    "check_consistency", "check_completeness", "load_theory", "parse_value",
]


class TruthValue3(enum.Enum):
    T = "T"
    F = "F"
    NM = "NM"

    def __str__(self) -> str:
        return self.value


T, F, NM = TruthValue3.T, TruthValue3.F, TruthValue3.NM

_VALUE_NAMES = {"T": T, "TRUE": T, "F": F, "FALSE": F, "NM": NM}


def parse_value(s: str) -> TruthValue3:
    try:
        return _VALUE_NAMES[s.strip().upper()]
    except KeyError:
        raise ValueError(f"unknown truth value {s!r} (use T, F or NM)") from None


# -- syntax ------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple


@dataclass(frozen=True)
class Neg:
    w: "Formula3"


@dataclass(frozen=True)
class Conj:
    l: "Formula3"
    r: "Formula3"


@dataclass(frozen=True)
class Disj:
    l: "Formula3"
    r: "Formula3"


@dataclass(frozen=True)
class Impl:
    l: "Formula3"
    r: "Formula3"


@dataclass(frozen=True)
class All:
    v: str
    body: "Formula3"


@dataclass(frozen=True)
class Some:
    v: str
    body: "Formula3"


Formula3 = Union[Atom, Pred, Neg, Conj, Disj, Impl, All, Some]
_BINARY = {Conj: "&", Disj: "|", Impl: "->"}


def to_text3(w: Formula3) -> str:
    if isinstance(w, Atom):
        return w.name
    if isinstance(w, Pred):
        return f"{w.name}({', '.join(w.args)})"
    if isinstance(w, Neg):
        return "~" + to_text3(w.w)
    if isinstance(w, (All, Some)):
        q = "forall" if isinstance(w, All) else "exists"
        return f"{q} {w.v}. {to_text3(w.body)}"
    return f"({to_text3(w.l)} {_BINARY[type(w)]} {to_text3(w.r)})"


_TOKEN = re.compile(r"\s*(->|[~&|().,]|[A-Za-z_][A-Za-z0-9_']*)")


def _lex(text: str) -> list[tuple[str, int]]:
    out, i = [], 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if m is None:
            j = len(text) - len(text[i:].lstrip())
            raise SyntaxError(f"unexpected character {text[j]!r} at offset {j}")
        out.append((m.group(1), m.start(1)))
        i = m.end()
    return out


class _Parser3:
    # precedence, loosest first: ->  |  &  ~ ; -> associates to the right
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0
        self.n = len(text)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, want=None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            at = self.toks[self.i][1] if tok is not None else self.n
            raise SyntaxError(f"expected {want or 'a token'} at offset {at}, found {tok or 'end of input'}")
        self.i += 1
        return tok

    def formula(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Impl(left, self.formula())
        return left

    def disj(self):
        w = self.conj()
        while self.peek() == "|":
            self.take()
            w = Disj(w, self.conj())
        return w

    def conj(self):
        w = self.unary()
        while self.peek() == "&":
            self.take()
            w = Conj(w, self.unary())
        return w

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Neg(self.unary())
        if tok == "(":
            self.take()
            w = self.formula()
            self.take(")")
            return w
        if tok in ("forall", "exists"):
            self.take()
            v = self._ident()
            self.take(".")
            body = self.formula()
            return All(v, body) if tok == "forall" else Some(v, body)
        name = self._ident()
        if self.peek() == "(":
            self.take()
            args = [self._ident()]
            while self.peek() == ",":
                self.take()
                args.append(self._ident())
            self.take(")")
            return Pred(name, tuple(args))
        return Atom(name)

    def _ident(self) -> str:
        tok = self.peek()
        if tok is None or not (tok[0].isalpha() or tok[0] == "_") or tok in ("forall", "exists"):
            self.take("an identifier")
        return self.take()


def parse3(text: str) -> Formula3:
    p = _Parser3(text)
    w = p.formula()
    if p.peek() is not None:
        raise SyntaxError(f"unexpected {p.peek()!r} at offset {p.toks[p.i][1]}")
    return w


def atoms(w: Formula3) -> set[str]:
    if isinstance(w, Atom):
        return {w.name}
    if isinstance(w, Pred):
        return set()
    if isinstance(w, Neg):
        return atoms(w.w)
    if isinstance(w, (All, Some)):
        return atoms(w.body)
    return atoms(w.l) | atoms(w.r)


def subformulas3(w: Formula3):
    yield w
    if isinstance(w, Neg):
        yield from subformulas3(w.w)
    elif isinstance(w, (All, Some)):
        yield from subformulas3(w.body)
    elif isinstance(w, (Conj, Disj, Impl)):
        yield from subformulas3(w.l)
        yield from subformulas3(w.r)


# -- semantics ---------------------------------------------------------------

class UnboundAtom(KeyError):
    def __str__(self) -> str:
        return f"no truth value for {self.args[0]}"


@dataclass(frozen=True)
class Valuation:
    """Truth values of atoms, plus a finite domain and predicate table for
    quantified formulas.  ``preds`` maps ``(name, (individual, ...))``."""

    atoms: Mapping[str, TruthValue3] = field(default_factory=dict)
    domain: tuple = ()
    preds: Mapping[tuple, TruthValue3] = field(default_factory=dict)


def _not3(a):
    return NM if a is NM else (F if a is T else T)


def _and3(a, b):
    if a is NM or b is NM:
        return NM
    return T if a is T and b is T else F


def _or3(a, b):
    if a is NM or b is NM:
        return NM
    return T if a is T or b is T else F


def _imp3(a, b):
    if a is NM or b is NM:
        return NM
    return T if a is F or b is T else F


_OPS = {Conj: _and3, Disj: _or3, Impl: _imp3}


def eval3_forall(values: Iterable[TruthValue3]) -> TruthValue3:
    """Universal quantifier over the individuals where the body is meaningful.

    Individuals with body value NM are dropped from the domain; if none are
    left the result is NM.
    """
    meaningful = [x for x in values if x is not NM]
    if not meaningful:
        return NM
    return F if F in meaningful else T


def eval3_exists(values: Iterable[TruthValue3]) -> TruthValue3:
    meaningful = [x for x in values if x is not NM]
    if not meaningful:
        return NM
    return T if T in meaningful else F


def eval3(w: Formula3, v: Valuation, env: Mapping[str, object] | None = None) -> TruthValue3:
    env = env or {}
    if isinstance(w, Atom):
        if w.name not in v.atoms:
            raise UnboundAtom(w.name)
        return v.atoms[w.name]
    if isinstance(w, Pred):
        key = (w.name, tuple(env.get(a, a) for a in w.args))
        if key not in v.preds:
            raise UnboundAtom(f"{w.name}({', '.join(map(str, key[1]))})")
        return v.preds[key]
    if isinstance(w, Neg):
        return _not3(eval3(w.w, v, env))
    if isinstance(w, (All, Some)):
        vals = [eval3(w.body, v, {**env, w.v: d}) for d in v.domain]
        return eval3_forall(vals) if isinstance(w, All) else eval3_exists(vals)
    return _OPS[type(w)](eval3(w.l, v, env), eval3(w.r, v, env))


def eval_classical(w: Formula3, v: Mapping[str, bool]) -> bool:
    """Two-valued evaluation of a quantifier-free formula."""
    if isinstance(w, Atom):
        return v[w.name]
    if isinstance(w, Neg):
        return not eval_classical(w.w, v)
    a, b = eval_classical(w.l, v), eval_classical(w.r, v)
    if isinstance(w, Conj):
        return a and b
    if isinstance(w, Disj):
        return a or b
    if isinstance(w, Impl):
        return (not a) or b
    raise TypeError(f"not a quantifier-free formula: {w!r}")


class LemBranch(enum.Enum):
    NO_MEANING = "Branch1_NM"
    EXCLUDED_MIDDLE = "Branch2_Excluded_Middle"


def classify_lem(w: Formula3, v: Valuation) -> LemBranch:
    """Either ``w`` is NM, or it has a classical value and ``w | ~w`` is T."""
    if eval3(w, v) is NM:
        return LemBranch.NO_MEANING
    assert eval3(Disj(w, Neg(w)), v) is T
    return LemBranch.EXCLUDED_MIDDLE


# -- derivability ------------------------------------------------------------

PROVABLE, NOT_DERIVED, INCONCLUSIVE = "Provable", "NotDerived", "Inconclusive"


@dataclass(frozen=True)
class Step:
    rule: str
    premises: tuple
    conclusion: Formula3


@dataclass(frozen=True)
class Derivation:
    status: str
    steps: tuple = ()   # the inference steps applied, in order


class ClosureOracle:
    """Forward closure of the axioms under propositional rules.

    Rules: modus ponens, and-introduction, and-elimination and
    or-introduction.  Introductions only build formulas from a finite
    universe (all subformulas of the theory's sentences and of the goals,
    with their negations), so the closure is finite.  ``max_rounds`` bounds
    the saturation; hitting it makes non-derived goals inconclusive.
    """

    def __init__(self, max_rounds: int = 32):
        self.max_rounds = max_rounds
        self._cache: dict = {}

    def closure(self, axioms: tuple, universe: frozenset):
        key = (axioms, universe)
        if key not in self._cache:
            self._cache[key] = self._saturate(axioms, universe)
        return self._cache[key]

    def _saturate(self, axioms, universe):
        known: dict = {a: Step("Axiom", (), a) for a in axioms}
        order = list(known.values())
        conj = [w for w in universe if isinstance(w, Conj)]
        disj = [w for w in universe if isinstance(w, Disj)]
        for _ in range(self.max_rounds):
            new = []
            for w in list(known):
                if isinstance(w, Impl) and w.l in known:
                    new.append(Step("MP", (w.l, w), w.r))
                if isinstance(w, Conj):
                    new.append(Step("AndE", (w,), w.l))
                    new.append(Step("AndE", (w,), w.r))
            for w in conj:
                if w.l in known and w.r in known:
                    new.append(Step("AndI", (w.l, w.r), w))
            for w in disj:
                for side in (w.l, w.r):
                    if side in known:
                        new.append(Step("OrI", (side,), w))
            added = False
            for s in new:
                if s.conclusion not in known:
                    known[s.conclusion] = s
                    order.append(s)
                    added = True
            if not added:
                return known, order, True
        return known, order, False

    def derive(self, axioms: Iterable[Formula3], goal: Formula3, universe: Iterable[Formula3] = ()) -> Derivation:
        axioms = tuple(axioms)
        uni = set(universe)
        for w in list(uni) + [goal]:
            for s in subformulas3(w):
                uni.add(s)
                uni.add(Neg(s))
        known, order, saturated = self.closure(axioms, frozenset(uni))
        if goal not in known:
            return Derivation(NOT_DERIVED if saturated else INCONCLUSIVE)
        return Derivation(PROVABLE, tuple(_support(goal, known)))

    def applied_steps(self, axioms: Iterable[Formula3], universe: Iterable[Formula3]) -> list[Step]:
        """Every inference step used in building the closure."""
        axioms = tuple(axioms)
        uni = set()
        for w in universe:
            for s in subformulas3(w):
                uni.add(s)
                uni.add(Neg(s))
        _, order, _ = self.closure(axioms, frozenset(uni))
        return [s for s in order if s.rule != "Axiom"]


def _support(goal, known) -> list[Step]:
    """The steps a derivation of ``goal`` depends on, premises first."""
    out, seen = [], set()

    def visit(w):
        if w in seen:
            return
        seen.add(w)
        step = known[w]
        for p in step.premises:
            visit(p)
        out.append(step)

    visit(goal)
    return out


class KernelOracle:
    """Derivability in the arithmetic calculus via bounded proof search.

    Atoms are read through ``interpretation`` (atom name to arithmetic
    sentence).  A goal follows from axioms ``A1 .. An`` when
    ``A1 & .. & An -> goal`` has a proof within ``depth_bound``.
    """

    def __init__(self, interpretation: Mapping[str, object], depth_bound: int = 6):
        self.interpretation = dict(interpretation)
        self.depth_bound = depth_bound

    def translate(self, w: Formula3):
        from . import formula as fm
        if isinstance(w, Atom):
            try:
                return self.interpretation[w.name]
            except KeyError:
                raise UnboundAtom(w.name) from None
        if isinstance(w, Neg):
            return fm.Not(self.translate(w.w))
        if isinstance(w, Conj):
            return fm.And(self.translate(w.l), self.translate(w.r))
        if isinstance(w, Disj):
            return fm.Or(self.translate(w.l), self.translate(w.r))
        if isinstance(w, Impl):
            return fm.Imp(self.translate(w.l), self.translate(w.r))
        raise TypeError("quantified three-valued formulas have no arithmetic reading")

    def derive(self, axioms: Iterable[Formula3], goal: Formula3, universe=()) -> Derivation:
        from . import formula as fm
        from .proof_kernel import NotFound, search_proof
        target = self.translate(goal)
        axioms = [self.translate(a) for a in axioms]
        if axioms:
            hyp = axioms[0]
            for a in axioms[1:]:
                hyp = fm.And(hyp, a)
            target = fm.Imp(hyp, target)
        result = search_proof(target, self.depth_bound)
        if isinstance(result, NotFound):
            return Derivation(INCONCLUSIVE)
        steps = tuple(Step(type(line.justification).__name__, (), line.wff) for line in result.lines)
        return Derivation(PROVABLE, steps)

    def applied_steps(self, axioms, universe) -> list[Step]:
        return []


# -- theories ----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteTheory:
    sentences: tuple                 # of (Formula3, TruthValue3)
    axioms: tuple = ()               # of Formula3, each among the sentences
    oracle: object = field(default_factory=ClosureOracle, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple((w, v) for w, v in self.sentences))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        listed = {w for w, _ in self.sentences}
        stray = [to_text3(a) for a in self.axioms if a not in listed]
        if stray:
            raise ValueError(f"axioms not among the sentences: {stray}")

    def value_of(self, w: Formula3) -> TruthValue3 | None:
        """Assigned value, or NM when ``w`` contains an NM-valued sentence."""
        assigned = dict(self.sentences)
        if w in assigned:
            return assigned[w]
        nm = {s for s, v in self.sentences if v is NM}
        if any(s in nm for s in subformulas3(w)):
            return NM
        return None

    def derive(self, goal: Formula3) -> Derivation:
        return self.oracle.derive(self.axioms, goal, [w for w, _ in self.sentences])


@dataclass(frozen=True)
class Violation:
    clause: str            # "a", "b" or "c"
    sentence: str
    detail: str

    def to_json(self) -> dict:
        return {"clause": self.clause, "sentence": self.sentence, "detail": self.detail}


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    violations: tuple
    inconclusive: tuple    # sentences whose derivability was not settled

    def to_json(self) -> dict:
        return {"consistent": self.consistent,
                "violations": [v.to_json() for v in self.violations],
                "inconclusive": list(self.inconclusive)}


class NotConsistent(ValueError):
    def __init__(self, report: ConsistencyReport):
        self.report = report
        super().__init__("completeness is only defined for consistent theories: "
                         + "; ".join(f"({v.clause}) {v.sentence}" for v in report.violations))


def check_consistency(t: FiniteTheory) -> ConsistencyReport:
    """Consistency in the three-valued sense.

    (a) a sentence and its negation are both derivable;
    (b) an NM-valued sentence is derivable;
    (c) an NM-valued sentence is an axiom, or is a premise or conclusion of
        an inference step the oracle applied.
    """
    violations: list[Violation] = []
    inconclusive: list[str] = []
    for a in t.axioms:
        if t.value_of(a) is NM:
            violations.append(Violation("c", to_text3(a), "NM-valued sentence used as an axiom"))
    for step in t.oracle.applied_steps(t.axioms, [w for w, _ in t.sentences]):
        for part in step.premises + (step.conclusion,):
            if t.value_of(part) is NM:
                violations.append(Violation(
                    "c", to_text3(part),
                    f"NM-valued formula in a {step.rule} step concluding {to_text3(step.conclusion)}"))
                break
    for w, v in t.sentences:
        d = t.derive(w)
        if d.status == INCONCLUSIVE:
            inconclusive.append(to_text3(w))
            continue
        if d.status != PROVABLE:
            continue
        if v is NM:
            violations.append(Violation("b", to_text3(w), "NM-valued sentence is derivable"))
        if t.derive(Neg(w)).status == PROVABLE:
            violations.append(Violation("a", to_text3(w), "the sentence and its negation are both derivable"))
        else:
            for line in d.steps:
                if t.value_of(line.conclusion) is NM and not any(
                        x.sentence == to_text3(line.conclusion) for x in violations):
                    violations.append(Violation("c", to_text3(line.conclusion),
                                                "NM-valued line in a derivation"))
    unique = list(dict.fromkeys(violations))
    return ConsistencyReport(not unique, tuple(unique), tuple(inconclusive))


@dataclass(frozen=True)
class CompletenessReport:
    status: str            # "complete" | "incomplete" | "inconclusive"
    undecided: tuple       # meaningful sentences with neither side derived
    inconclusive: tuple
    exempt: tuple          # NM-valued sentences, outside the requirement
    note: str = ""

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_json(self) -> dict:
        return {"status": self.status, "undecided": list(self.undecided),
                "inconclusive": list(self.inconclusive), "exempt": list(self.exempt),
                "note": self.note}


def check_completeness(t: FiniteTheory) -> CompletenessReport:
    """Every sentence with a classical value is decided; NM sentences are exempt."""
    cons = check_consistency(t)
    if not cons.consistent:
        raise NotConsistent(cons)
    undecided, unsettled, exempt = [], [], []
    for w, v in t.sentences:
        if v is NM:
            exempt.append(to_text3(w))
            continue
        pos, neg = t.derive(w), t.derive(Neg(w))
        if PROVABLE in (pos.status, neg.status):
            continue
        if INCONCLUSIVE in (pos.status, neg.status):
            unsettled.append(to_text3(w))
        else:
            undecided.append(to_text3(w))
    status = "incomplete" if undecided else ("inconclusive" if unsettled else "complete")
    note = ""
    if exempt:
        note = (f"NM-valued sentences {', '.join(exempt)} are exempt: having no proof of "
                "them or of their negations does not make the theory incomplete")
    return CompletenessReport(status, tuple(undecided), tuple(unsettled), tuple(exempt), note)


def load_theory(data: Union[str, Mapping]) -> FiniteTheory:
    """Build a theory from JSON ``{"sentences": [{"formula", "value"}], "axioms": [...]}``.

    Optional ``"interpretation"`` (atom to arithmetic sentence text) selects
    the proof-search oracle with ``"depth_bound"``; otherwise the
    propositional closure is used.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        sentences = [(parse3(s["formula"]), parse_value(s["value"])) for s in data["sentences"]]
        axioms = [parse3(a) for a in data.get("axioms", [])]
    except KeyError as e:
        raise ValueError(f"theory JSON lacks field {e}") from None
    if "interpretation" in data:
        from .formula import parse_wff
        interp = {k: parse_wff(v) for k, v in data["interpretation"].items()}
        oracle: object = KernelOracle(interp, int(data.get("depth_bound", 6)))
    else:
        oracle = ClosureOracle(int(data.get("max_rounds", 32)))
    return FiniteTheory(tuple(sentences), tuple(axioms), oracle)
