"""Provability propositions, their set encoding, and the two readings of G.

A proposition makes exactly one claim: that a target is provable, or that
it is unprovable.  The target is either another named proposition or a
ground sentence of the arithmetic language.

A set of propositions whose targets are all members of the set is turned
into sets in three stages:

1. proposition ``L: M is provable`` becomes the function ``f_L`` with
   domain ``{f_M}`` and value 1 (0 for *unprovable*);
2. ``f_L`` is identified with its graph ``{(f_M, bit)}``;
3. the pair is expanded to ``{{f_M}, {f_M, bit}}``.

All ``f`` nodes live in one graph whose point is the set of all of them, so
a proposition that refers to itself, directly or through a chain, shows up
as a membership cycle.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .diagonal import GodelSentenceBundle, diagonalize
from .formula import (
    And, Eq, Exists, Forall, Gdl, Not, ParseError, Var, Wff, is_closed,
    numeral_value, parse_wff, substitute, to_text,
)
from .godel_codec import NotAWff, decode_wff
from .hyperset import SetGraph, find_descending_cycle, is_well_founded

__all__ = [
    "Polarity", "GroundSentence", "Proposition", "PropositionSet",
    "NotTypeP", "EmptySet", "NotSelfReferential", "BoundTooLarge",
    "EncodingReport", "CycleWitness", "ExhaustReport", "UnfoldReport",
    "Mode", "is_type_p", "encode", "lemma1_check", "lemma2_exhaust",
    "unfold", "parse_propositions", "format_proposition", "LEMMA2_MAX_N",
]

LEMMA2_MAX_N = 6


class Polarity(enum.Enum):
    PROVABLE = "provable"
    UNPROVABLE = "unprovable"

    @property
    def bit(self) -> int:
        return 1 if self is Polarity.PROVABLE else 0


@dataclass(frozen=True)
class GroundSentence:
    wff: Wff


@dataclass(frozen=True)
class Proposition:
    name: str
    target: Union[str, GroundSentence]
    polarity: Polarity

    @property
    def self_referential(self) -> bool:
        return self.target == self.name

    def claim(self) -> str:
        t = self.target if isinstance(self.target, str) else f'"{to_text(self.target.wff)}"'
        return f"{t} is {self.polarity.value}"


class PropositionSet(dict):
    """Mapping ``name -> Proposition``; names are unique by construction."""

    @classmethod
    def of(cls, props: Iterable[Proposition]) -> "PropositionSet":
        out = cls()
        for p in props:
            if p.name in out:
                raise ValueError(f"duplicate proposition name {p.name!r}")
            out[p.name] = p
        return out


class NotTypeP(ValueError):
    pass


class EmptySet(ValueError):
    pass


class NotSelfReferential(ValueError):
    pass


class BoundTooLarge(ValueError):
    pass


# -- file format -------------------------------------------------------------

_LINE_RE = re.compile(
    r'^\s*(?P<name>[A-Za-z_][\w]*)\s*:\s*'
    r'(?:ground\s+"(?P<formula>[^"]*)"|(?P<target>[A-Za-z_][\w]*))\s+'
    r'(?P<pol>provable|unprovable)\s*$'
)


def parse_propositions(text: str) -> PropositionSet:
    """Read one proposition per line; blank lines and ``#`` comments skipped.

    ::

        H: H unprovable
        K: ground "0 = 0" provable
    """
    props = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise ValueError(f"line {lineno}: not a proposition: {line.strip()!r}")
        if m["formula"] is not None:
            try:
                w = parse_wff(m["formula"])
            except ParseError as e:
                raise ValueError(f"line {lineno}: {e}") from None
            target: Union[str, GroundSentence] = GroundSentence(w)
        else:
            target = m["target"]
        props.append(Proposition(m["name"], target, Polarity(m["pol"])))
    return PropositionSet.of(props)


def format_proposition(p: Proposition) -> str:
    if isinstance(p.target, GroundSentence):
        return f'{p.name}: ground "{to_text(p.target.wff)}" {p.polarity.value}'
    return f"{p.name}: {p.target} {p.polarity.value}"


# -- type P and the encoding -------------------------------------------------

def is_type_p(s: Mapping[str, Proposition]) -> bool:
    """Every proposition is about the provability of a member of ``s``."""
    return all(isinstance(p.target, str) and p.target in s for p in s.values())


@dataclass(frozen=True)
class EncodingReport:
    functions: dict            # name -> f node id
    set_graph: SetGraph        # point is the set of all f nodes
    well_founded: bool
    cycle: list | None
    per_proposition: dict      # name -> {"well_founded": bool, "cycle": list | None}
    roles: dict                # node id -> role label

    def to_json(self) -> dict:
        return {
            "functions": dict(sorted(self.functions.items())),
            "set_graph": self.set_graph.to_json(),
            "well_founded": self.well_founded,
            "cycle": self.cycle,
            "cycle_roles": None if self.cycle is None else [self.roles[n] for n in self.cycle],
            "propositions": {k: self.per_proposition[k] for k in sorted(self.per_proposition)},
        }


ROOT = "F_p"


def f_node(name: str) -> str:
    return f"f_{name}"


def _encoding_graph(s: Mapping[str, Proposition]):
    """Nodes and edges of the shared encoding, plus role labels.

    For ``L`` targeting ``M`` with bit ``b``::

        f_L = {A_L}             the function as its graph {(f_M, b)}
        A_L = {B_L, C_L}        the pair (f_M, b)
        B_L = {f_M}
        C_L = {f_M, b}
    """
    nodes = {ROOT, "0"}
    edges = set()
    roles = {ROOT: "F_p", "0": "0", "1": "1"}
    for name, p in s.items():
        f, a, b, c = f_node(name), f"A_{name}", f"B_{name}", f"C_{name}"
        fm = f_node(p.target)
        bit = str(p.polarity.bit)
        nodes |= {f, a, b, c, bit}
        edges |= {(ROOT, f), (f, a), (a, b), (a, c), (b, fm), (c, fm), (c, bit)}
        roles.update({f: f, a: "A", b: "B", c: "C"})
    if "1" in nodes:
        edges.add(("1", "0"))
    return nodes, edges, roles


def encode(s: Mapping[str, Proposition]) -> EncodingReport:
    if not s:
        raise EmptySet("the encoding needs a nonempty set of propositions")
    if not is_type_p(s):
        raise NotTypeP("some proposition targets a ground sentence or a non-member")
    nodes, edges, roles = _encoding_graph(s)
    graph = SetGraph(nodes, edges, ROOT)
    functions = {name: f_node(name) for name in s}
    per = {}
    for name, f in functions.items():
        sub = graph.repoint(f)
        per[name] = {"node": f, "well_founded": is_well_founded(sub),
                     "cycle": find_descending_cycle(sub)}
    return EncodingReport(
        functions=functions,
        set_graph=graph,
        well_founded=is_well_founded(graph),
        cycle=find_descending_cycle(graph),
        per_proposition=per,
        roles=roles,
    )


# -- the self-referential cycle -----------------------------------------------

@dataclass(frozen=True)
class CycleWitness:
    cycle: list        # membership order, starting at the proposition's f node
    roles: list

    def render(self) -> str:
        return " ∈ ".join(self.roles + self.roles[:1])


def lemma1_check(p: Proposition) -> CycleWitness:
    """The membership cycle forced by a self-referential proposition."""
    if not p.self_referential:
        raise NotSelfReferential(f"{p.name} is about {p.target!r}, not itself")
    report = encode(PropositionSet.of([p]))
    cycle = report.per_proposition[p.name]["cycle"]
    f = f_node(p.name)
    k = cycle.index(f)
    cycle = cycle[k:] + cycle[:k]
    return CycleWitness(cycle, [report.roles[n] for n in cycle])


# -- exhaustion over type-P sets ---------------------------------------------

@dataclass(frozen=True)
class ExhaustReport:
    n: int
    instances: int
    well_founded: int
    non_well_founded: int
    f_nodes_well_founded: int     # f nodes, over all instances, with no cycle below
    counterexamples: list = field(default_factory=list)

    def summary(self) -> str:
        return f"{self.non_well_founded}/{self.instances} non-well-founded"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "instances": self.instances,
            "well_founded": self.well_founded,
            "non_well_founded": self.non_well_founded,
            "f_nodes_well_founded": self.f_nodes_well_founded,
            "counterexamples": self.counterexamples,
        }


def _instance(names, refs, bits) -> PropositionSet:
    return PropositionSet.of(
        Proposition(nm, names[r], Polarity.PROVABLE if b else Polarity.UNPROVABLE)
        for nm, r, b in zip(names, refs, bits)
    )


def _acyclic(succ: dict, start) -> bool:
    state = {start: 1}
    stack = [(start, iter(succ.get(start, ())))]
    while stack:
        n, it = stack[-1]
        for m in it:
            s = state.get(m)
            if s == 1:
                return False
            if s is None:
                state[m] = 1
                stack.append((m, iter(succ.get(m, ()))))
                break
        else:
            state[n] = 2
            stack.pop()
    return True


def lemma2_exhaust(n: int) -> ExhaustReport:
    """Encode every type-P set on ``n`` names and test foundation.

    There are ``n**n`` reference maps and ``2**n`` polarity choices.  Each
    instance's encoding graph is built and checked for a reachable cycle,
    both from the root and from every ``f`` node.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > LEMMA2_MAX_N:
        raise BoundTooLarge(f"n = {n} exceeds {LEMMA2_MAX_N}")
    names = [f"H{i}" for i in range(1, n + 1)]
    total = wf = f_wf = 0
    counter = []
    for refs in itertools.product(range(n), repeat=n):
        for bits in itertools.product((0, 1), repeat=n):
            nodes, edges, _ = _encoding_graph(_instance(names, refs, bits))
            succ: dict = {}
            for a, b in edges:
                succ.setdefault(a, []).append(b)
            total += 1
            if _acyclic(succ, ROOT):
                wf += 1
                if len(counter) < 10:
                    counter.append({"refs": [names[r] for r in refs], "bits": list(bits)})
            f_wf += sum(_acyclic(succ, f_node(nm)) for nm in names)
    return ExhaustReport(n, total, wf, total - wf, f_wf, counter)


# -- unfolding ---------------------------------------------------------------

class Mode(enum.Enum):
    FORMAL = "formal"
    REFERENTIAL = "referential"


@dataclass(frozen=True)
class UnfoldReport:
    mode: Mode
    status: str                 # "Terminated" | "InfiniteRegress" | "Inconclusive"
    depth: int
    steps: list                 # one rendered reading per depth
    rendering: str              # the deepest reading, nested to at most 3 levels
    note: str = ""

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "status": self.status, "depth": self.depth,
                "steps": self.steps, "rendering": self.rendering, "note": self.note}


_NO_PROOF = "there is no proof to"
_PROOF = "there is a proof to"


def _phrase(pol: Polarity) -> str:
    return _PROOF if pol is Polarity.PROVABLE else _NO_PROOF


def _nest(label: str, phrases: list[str], innermost: str) -> str:
    """``label: p1 'p2 'p3 innermost'''`` with one quote level per claim."""
    body = innermost
    for ph in reversed(phrases[1:]):
        body = f"{ph} '{body}'"
    return f"{label}: {phrases[0]} '{body}'"


def _gdl_claim(w: Wff):
    """If ``w`` reads "no number codes a proof of the diagonalization of phi",
    return (phi, the diagonalization); else ``None``.

    Recognizes ``forall x. ~Gdl(x, t)`` with ``t`` closed, and its
    diagonalized form ``exists y. (y = t & phi)`` via ``phi[t/y]``.
    """
    if isinstance(w, Exists) and isinstance(w.body, And):
        eq = w.body.l
        if isinstance(eq, Eq) and eq.l == Var(w.v) and is_closed(eq.r):
            return _gdl_claim(substitute(w.body.r, w.v, eq.r))
    if (isinstance(w, Forall) and isinstance(w.body, Not) and isinstance(w.body.w, Gdl)
            and w.body.w.m == Var(w.v) and is_closed(w.body.w.n)):
        try:
            phi = decode_wff(numeral_value(w.body.w.n))
            return phi, diagonalize(phi)
        except (NotAWff, ValueError):
            return None
    return None


def _describe(phi: Wff) -> str:
    if phi == Forall("x", Not(Gdl(Var("x"), Var("y")))):
        return "the diagonalization of U"
    return f"the diagonalization of '{to_text(phi)}'"


def _unfold_sentence(label: str, w: Wff, mode: Mode, max_depth: int) -> UnfoldReport:
    claim = _gdl_claim(w)
    if claim is None:
        return UnfoldReport(mode, "Terminated", 0, [], f"{label}: {to_text(w)}",
                            "ground sentence: no provability claim to unfold")
    phi, target = claim
    inner = _describe(phi)
    first = _nest(label, [_NO_PROOF], inner)
    if mode is Mode.FORMAL:
        note = (f"{inner} is a syntactic object, the sentence {to_text(target)}"
                if len(to_text(target)) < 120 else f"{inner} is a syntactic object, a sequence of symbols")
        return UnfoldReport(mode, "Terminated", 1, [first], first, note)
    seen = {target}
    phrases = [_NO_PROOF]
    steps = [first]
    current = target
    for depth in range(2, max_depth + 1):
        nxt = _gdl_claim(current)
        if nxt is None:
            return UnfoldReport(mode, "Terminated", depth - 1, steps, steps[-1],
                                "reached a sentence making no provability claim")
        phrases.append(_NO_PROOF)
        steps.append(_nest(label, phrases, _describe(nxt[0])))
        if nxt[1] in seen:
            # the remaining readings repeat this one; render to depth 3
            while len(phrases) < 3:
                phrases.append(_NO_PROOF)
                steps.append(_nest(label, phrases, _describe(nxt[0])))
            return UnfoldReport(mode, "InfiniteRegress", depth, steps, steps[2],
                                f"{_describe(nxt[0])} is {label} itself; its meaning repeats")
        seen.add(nxt[1])
        current = nxt[1]
    return UnfoldReport(mode, "Inconclusive", max_depth, steps, steps[-1], "depth limit reached")


def _unfold_proposition(p: Proposition, props: Mapping[str, Proposition],
                        mode: Mode, max_depth: int) -> UnfoldReport:
    def target_text(q: Proposition) -> str:
        if isinstance(q.target, GroundSentence):
            return to_text(q.target.wff)
        return f"the proposition {q.target}"

    first = _nest(p.name, [_phrase(p.polarity)], target_text(p))
    if mode is Mode.FORMAL or isinstance(p.target, GroundSentence):
        note = ("ground target: no referential rule applies"
                if isinstance(p.target, GroundSentence)
                else f"the proposition {p.target} is taken as a syntactic object")
        return UnfoldReport(mode, "Terminated", 1, [first], first, note)
    phrases = [_phrase(p.polarity)]
    steps = [first]
    seen = {p.name}
    current = p
    for depth in range(2, max_depth + 1):
        if current.target not in props:
            return UnfoldReport(mode, "Inconclusive", depth - 1, steps, steps[-1],
                                f"{current.target} is not in the proposition set")
        nxt = props[current.target]
        phrases.append(_phrase(nxt.polarity))
        steps.append(_nest(p.name, phrases, target_text(nxt)))
        if isinstance(nxt.target, GroundSentence):
            return UnfoldReport(mode, "Terminated", depth, steps, steps[-1],
                                "reached a ground sentence")
        if nxt.name in seen:
            while len(phrases) < 3:
                q = props.get(nxt.target)
                if q is None:
                    break
                phrases.append(_phrase(q.polarity))
                steps.append(_nest(p.name, phrases, target_text(q)))
                nxt = q
            return UnfoldReport(mode, "InfiniteRegress", depth, steps, steps[min(2, len(steps) - 1)],
                                f"the meaning of {current.target} was already being unfolded")
        seen.add(nxt.name)
        current = nxt
    return UnfoldReport(mode, "Inconclusive", max_depth, steps, steps[-1], "depth limit reached")


def unfold(subject, mode: Mode | str = Mode.REFERENTIAL, max_depth: int = 16,
           props: Mapping[str, Proposition] | None = None) -> UnfoldReport:
    """Read a claim under the formal or the referential interpretation.

    ``subject`` is a :class:`Proposition` (looked up in ``props`` when its
    target is another proposition), a :class:`GodelSentenceBundle`, or a
    closed wff.  The formal reading stops once the target is identified as a
    sentence.  The referential reading keeps replacing the target by what it
    says, and reports an infinite regress as soon as a target recurs.
    """
    mode = Mode(mode)
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if isinstance(subject, GodelSentenceBundle):
        return _unfold_sentence("G", subject.G, mode, max_depth)
    if isinstance(subject, Proposition):
        ps = props if props is not None else {subject.name: subject}
        return _unfold_proposition(subject, ps, mode, max_depth)
    return _unfold_sentence("S", subject, mode, max_depth)
