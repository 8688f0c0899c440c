"""Command-line entry point.

Exit status: 0 when a verdict was produced, 1 when the analysis found a
violation (an invalid proof, an unexpected cycle, an inconsistent theory),
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .diagonal import FreeVarMismatch, build_godel_sentence, diagonalize
from .formula import TERM_TYPES, ParseError, parse, parse_tokens, parse_wff, to_text
from .godel_codec import (
    SEPARATOR, SYMBOLS, NotASequence, NotAWff, decode_digits, decode_sequence,
    decode_wff, encode_sequence, encode_wff,
)
from .hyperset import SetGraph, find_descending_cycle, is_well_founded
from .logic3 import (
    NotConsistent, UnboundAtom, Valuation, check_completeness, check_consistency,
    eval3, load_theory, parse3, parse_value,
)
from .proof_kernel import (
    AxiomInstance, Generalization, ModusPonens, gdl, line_verdicts,
)
from .refprop import (
    EmptySet, NotTypeP, encode, lemma2_exhaust, parse_propositions, unfold,
    LEMMA2_MAX_N,
)

OK, VIOLATION, USAGE = 0, 1, 2
MAX_SEARCH_DEPTH = 10
MAX_UNFOLD_DEPTH = 1024


@dataclass(frozen=True)
class RunConfig:
    search_depth_bound: int = 6
    lemma2_max_n: int = 5
    unfold_max_depth: int = 16
    json: bool = False

    def __post_init__(self):
        if not 0 <= self.search_depth_bound <= MAX_SEARCH_DEPTH:
            raise ValueError(f"search depth must be in 0..{MAX_SEARCH_DEPTH}")
        if not 1 <= self.lemma2_max_n <= LEMMA2_MAX_N:
            raise ValueError(f"lemma2 max n must be in 1..{LEMMA2_MAX_N}")
        if not 1 <= self.unfold_max_depth <= MAX_UNFOLD_DEPTH:
            raise ValueError(f"unfold depth must be in 1..{MAX_UNFOLD_DEPTH}")


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, data, human: str) -> None:
    if cfg.json:
        print(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(human)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _number(arg: str) -> int:
    """A natural number, given literally or as ``@file`` holding its digits."""
    text = _read(arg[1:]) if arg.startswith("@") else arg
    text = text.strip()
    if not text.isdigit():
        raise UsageError(f"not a natural number: {text[:40]!r}")
    return int(text)


def _justification(j) -> str:
    if isinstance(j, AxiomInstance):
        return f"axiom {j.schema}"
    if isinstance(j, ModusPonens):
        return f"MP {j.major + 1}, {j.minor + 1}"
    if isinstance(j, Generalization):
        return f"Gen {j.premise + 1} on {j.v}"
    return f"INVALID: {j}"


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


# -- subcommands -------------------------------------------------------------

def cmd_parse(cfg, args) -> int:
    node = parse(args.formula)
    kind = "term" if isinstance(node, TERM_TYPES) else "wff"
    text = to_text(node)
    _emit(cfg, {"kind": kind, "text": text}, text)
    return OK


def cmd_gnum(cfg, args) -> int:
    if args.action == "encode":
        g = encode_wff(parse(args.value))
        _emit(cfg, {"godel_number": str(g)}, str(g))
        return OK
    g = _number(args.value)
    try:
        w = decode_wff(g)
        _emit(cfg, {"kind": "wff", "wff": to_text(w)}, to_text(w))
        return OK
    except NotAWff:
        pass
    digits = decode_digits(g)
    if digits and SEPARATOR not in digits:
        try:
            t = parse_tokens([SYMBOLS[d - 1] for d in digits], "term")
            _emit(cfg, {"kind": "term", "term": to_text(t)}, to_text(t))
            return OK
        except ParseError:
            pass
    try:
        ws = decode_sequence(g)
    except NotASequence as e:
        raise UsageError(f"{g if g < 10**40 else 'number'} codes neither a wff nor a sequence ({e})") from None
    texts = [to_text(w) for w in ws]
    _emit(cfg, {"kind": "sequence", "wffs": texts}, "\n".join(texts))
    return OK


def cmd_diag(cfg, args) -> int:
    d = diagonalize(parse_wff(args.formula))
    _emit(cfg, {"diagonalization": to_text(d)}, to_text(d))
    return OK


def cmd_godel_sentence(cfg, args) -> int:
    b = build_godel_sentence()
    d = b.to_dict()
    _emit(cfg, d, "\n".join(f"{k}: {d[k]}" for k in ("U", "u_number", "G", "G_expanded")))
    return OK


def cmd_check_proof(cfg, args) -> int:
    texts = _lines(_read(args.file))
    if not texts:
        raise UsageError("the proof file has no lines")
    wffs = [parse_wff(t) for t in texts]
    verdicts = line_verdicts(wffs)
    valid = not any(isinstance(v, str) for v in verdicts)
    rows = [{"line": k + 1, "wff": to_text(w), "justification": _justification(v),
             "valid": not isinstance(v, str)} for k, (w, v) in enumerate(zip(wffs, verdicts))]
    data = {"valid": valid, "conclusion": to_text(wffs[-1]), "lines": rows}
    if args.number:
        data["godel_number"] = str(encode_sequence(wffs))
    human = [f"{r['line']:>4}  {r['wff']}    [{r['justification']}]" for r in rows]
    human.append(("valid proof of " if valid else "not a proof of ") + to_text(wffs[-1]))
    if args.number:
        human.append(f"super Gödel number: {data['godel_number']}")
    _emit(cfg, data, "\n".join(human))
    return OK if valid else VIOLATION


def cmd_gdl(cfg, args) -> int:
    verdict = gdl(_number(args.m), _number(args.n))
    _emit(cfg, {"gdl": verdict}, "true" if verdict else "false")
    return OK


def cmd_wf(cfg, args) -> int:
    try:
        g = SetGraph.loads(_read(args.file))
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad set graph: {e}") from None
    wf = is_well_founded(g)
    cycle = find_descending_cycle(g)
    human = "well-founded" if wf else "not well-founded: " + " ∈ ".join(map(str, cycle + cycle[:1]))
    _emit(cfg, {"well_founded": wf, "cycle": cycle}, human)
    return VIOLATION if args.expect_wf and not wf else OK


def cmd_analyze_refs(cfg, args) -> int:
    try:
        props = parse_propositions(_read(args.file))
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        report = encode(props)
    except EmptySet as e:
        raise UsageError(str(e)) from None
    except NotTypeP as e:
        _emit(cfg, {"type_p": False, "error": str(e)}, f"not type P: {e}")
        return VIOLATION
    print(json.dumps({"type_p": True, **report.to_json()}, sort_keys=True, indent=2, ensure_ascii=False))
    return OK


def cmd_lemma2(cfg, args) -> int:
    ns = [args.n] if args.n is not None else list(range(1, cfg.lemma2_max_n + 1))
    for n in ns:
        if n > cfg.lemma2_max_n:
            raise UsageError(f"--n {n} exceeds the configured maximum {cfg.lemma2_max_n}")
    reports = [lemma2_exhaust(n) for n in ns]
    _emit(cfg, {"reports": [r.to_json() for r in reports]},
          "\n".join((f"n={r.n}: " if len(reports) > 1 else "") + r.summary() for r in reports))
    return VIOLATION if any(r.well_founded for r in reports) else OK


def cmd_unfold(cfg, args) -> int:
    depth = args.depth if args.depth is not None else cfg.unfold_max_depth
    if args.godel:
        report = unfold(build_godel_sentence(), args.mode, depth)
    else:
        if args.file is None:
            raise UsageError("give a proposition file or --godel")
        try:
            props = parse_propositions(_read(args.file))
        except ValueError as e:
            raise UsageError(str(e)) from None
        if not props:
            raise UsageError("the proposition file is empty")
        name = args.name or next(iter(props))
        if name not in props:
            raise UsageError(f"no proposition named {name}")
        report = unfold(props[name], args.mode, depth, props)
    human = [f"status: {report.status} (depth {report.depth})", report.rendering]
    if report.note:
        human.append(f"note: {report.note}")
    _emit(cfg, report.to_json(), "\n".join(human))
    return OK


def _assignment(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"assignment {part!r} is not NAME=VALUE")
        try:
            out[name.strip()] = parse_value(value)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return out


def cmd_eval3(cfg, args) -> int:
    try:
        w = parse3(args.formula)
    except SyntaxError as e:
        raise UsageError(f"syntax error: {e}") from None
    try:
        value = eval3(w, Valuation(_assignment(args.assign or "")))
    except UnboundAtom as e:
        raise UsageError(str(e)) from None
    _emit(cfg, {"value": value.value}, value.value)
    return OK


def cmd_check_theory(cfg, args) -> int:
    try:
        data = json.loads(_read(args.file))
        data.setdefault("depth_bound", cfg.search_depth_bound)
        theory = load_theory(data)
    except (ValueError, SyntaxError, ParseError, AttributeError) as e:
        raise UsageError(f"bad theory file: {e}") from None
    cons = check_consistency(theory)
    data = {"consistency": cons.to_json()}
    human = ["consistent" if cons.consistent else "inconsistent"]
    human += [f"  clause ({v.clause}): {v.sentence}: {v.detail}" for v in cons.violations]
    if cons.inconclusive:
        human.append("  inconclusive: " + ", ".join(cons.inconclusive))
    if not cons.consistent:
        _emit(cfg, data, "\n".join(human))
        return VIOLATION
    try:
        comp = check_completeness(theory)
    except NotConsistent as e:   # pragma: no cover - guarded above
        raise AssertionError(e)
    data["completeness"] = comp.to_json()
    human.append(comp.status)
    if comp.undecided:
        human.append("  undecided: " + ", ".join(comp.undecided))
    if comp.inconclusive:
        human.append("  inconclusive: " + ", ".join(comp.inconclusive))
    if comp.note:
        human.append(f"  note: {comp.note}")
    _emit(cfg, data, "\n".join(human))
    return OK


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfref", description="Gödel numbering, proofs, hypersets and self-reference.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--search-depth", type=int, default=RunConfig.search_depth_bound,
                   help="proof search depth bound (default %(default)s)")
    p.add_argument("--lemma2-max-n", type=int, default=RunConfig.lemma2_max_n,
                   help="largest n for lemma2 (default %(default)s)")
    p.add_argument("--unfold-depth", type=int, default=RunConfig.unfold_max_depth,
                   help="default unfold depth (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("parse", help="parse and print a wff or term in canonical form")
    s.add_argument("formula")
    s.set_defaults(run=cmd_parse)

    s = sub.add_parser("gnum", help="Gödel numbers")
    s.add_argument("action", choices=("encode", "decode"))
    s.add_argument("value", help="a formula to encode, or a number (or @file) to decode")
    s.set_defaults(run=cmd_gnum)

    s = sub.add_parser("diag", help="diagonalize a wff with free variable y")
    s.add_argument("formula")
    s.set_defaults(run=cmd_diag)

    s = sub.add_parser("godel-sentence", help="build U, its number, G and G expanded")
    s.set_defaults(run=cmd_godel_sentence)

    s = sub.add_parser("check-proof", help="check a proof file, one wff per line")
    s.add_argument("file")
    s.add_argument("--number", action="store_true", help="also print the super Gödel number")
    s.set_defaults(run=cmd_check_proof)

    s = sub.add_parser("gdl", help="decide Gdl(m, n)")
    s.add_argument("m", help="number or @file")
    s.add_argument("n", help="number or @file")
    s.set_defaults(run=cmd_gdl)

    s = sub.add_parser("wf", help="well-foundedness of a set graph in JSON")
    s.add_argument("file")
    s.add_argument("--expect-wf", action="store_true", help="exit 1 if the set is not well-founded")
    s.set_defaults(run=cmd_wf)

    s = sub.add_parser("analyze-refs", help="encode a proposition file as sets")
    s.add_argument("file")
    s.set_defaults(run=cmd_analyze_refs)

    s = sub.add_parser("lemma2", help="exhaust all type-P sets on n names")
    s.add_argument("--n", type=int)
    s.set_defaults(run=cmd_lemma2)

    s = sub.add_parser("unfold", help="formal or referential reading of a claim")
    s.add_argument("file", nargs="?")
    s.add_argument("--godel", action="store_true", help="unfold the Gödel sentence")
    s.add_argument("--name", help="proposition to unfold (default: the first)")
    s.add_argument("--mode", choices=("formal", "referential"), default="referential")
    s.add_argument("--depth", type=int)
    s.set_defaults(run=cmd_unfold)

    s = sub.add_parser("eval3", help="three-valued evaluation")
    s.add_argument("formula")
    s.add_argument("--assign", help="e.g. A=T,B=NM")
    s.set_defaults(run=cmd_eval3)

    s = sub.add_parser("check-theory", help="consistency and completeness of a theory in JSON")
    s.add_argument("file")
    s.set_defaults(run=cmd_check_theory)
    return p


def main(argv: list[str] | None = None) -> int:
    sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.search_depth, args.lemma2_max_n, args.unfold_depth, args.json)
        if getattr(args, "depth", None) is not None and not 1 <= args.depth <= MAX_UNFOLD_DEPTH:
            raise UsageError(f"--depth must be in 1..{MAX_UNFOLD_DEPTH}")
        return args.run(cfg, args)
    except (UsageError, ParseError, FreeVarMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
