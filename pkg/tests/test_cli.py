"""End-to-end runs of every subcommand against golden output files.

Set ``UPDATE_GOLDEN=1`` to rewrite the golden files after an intended
change in output.
"""

import json
import os
from pathlib import Path

import pytest

from selfref.cli import RunConfig, main

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def d(name):
    return str(DATA / name)


CASES = [
    ("parse", ["parse", "~(S(x) = 0)"], 0),
    ("parse_term", ["parse", "(x + S(0))"], 0),
    ("parse_error", ["parse", "0 = "], 2),
    ("gnum_encode", ["gnum", "encode", "S(0)"], 0),
    ("gnum_decode_wff", ["gnum", "decode", "495"], 0),
    ("gnum_decode_term", ["gnum", "decode", "14824"], 0),
    ("gnum_decode_zero", ["gnum", "decode", "0"], 2),
    ("gnum_json", ["--json", "gnum", "encode", "forall x. ~Gdl(x, y)"], 0),
    ("diag", ["diag", "y = y"], 0),
    ("diag_bad", ["diag", "x = y"], 2),
    ("godel_sentence", ["godel-sentence"], 0),
    ("godel_sentence_json", ["--json", "godel-sentence"], 0),
    ("check_proof_short", ["check-proof", d("short.proof"), "--number"], 0),
    ("check_proof_bad", ["check-proof", d("bad.proof")], 1),
    ("check_proof_fixture_json", ["--json", "check-proof", d("fixture.proof")], 0),
    ("gdl_fixture", ["gdl", "@" + d("fixture.gnum"), "1930187"], 0),
    ("gdl_wrong_target", ["gdl", "@" + d("fixture.gnum"), "1930188"], 0),
    ("gdl_bad_number", ["gdl", "abc", "1"], 2),
    ("wf_omega", ["wf", d("omega.json")], 0),
    ("wf_omega_expect", ["wf", d("omega.json"), "--expect-wf"], 1),
    ("wf_one_expect", ["wf", d("one.json"), "--expect-wf"], 0),
    ("analyze_refs_h", ["analyze-refs", d("h.props")], 0),
    ("analyze_refs_two", ["analyze-refs", d("two.props")], 0),
    ("analyze_refs_ground", ["analyze-refs", d("ground.props")], 1),
    ("lemma2_3", ["lemma2", "--n", "3"], 0),
    ("lemma2_all_json", ["--json", "--lemma2-max-n", "3", "lemma2"], 0),
    ("lemma2_too_big", ["lemma2", "--n", "6"], 2),
    ("unfold_godel_formal", ["unfold", "--godel", "--mode", "formal"], 0),
    ("unfold_godel_referential", ["unfold", "--godel", "--mode", "referential", "--depth", "10"], 0),
    ("unfold_ground", ["unfold", d("ground.props"), "--mode", "referential"], 0),
    ("unfold_chain_json", ["--json", "unfold", d("chain.props")], 0),
    ("unfold_h", ["unfold", d("h.props")], 0),
    ("eval3_nm", ["eval3", "(A & B)", "--assign", "A=T,B=NM"], 0),
    ("eval3_true", ["eval3", "A | ~A", "--assign", "A=F"], 0),
    ("eval3_unbound", ["eval3", "A & C", "--assign", "A=T"], 2),
    ("check_theory_a", ["check-theory", d("theory_a.json")], 1),
    ("check_theory_c", ["check-theory", d("theory_c.json")], 1),
    ("check_theory_exempt", ["check-theory", d("theory_nm_exempt.json")], 0),
    ("check_theory_exempt_json", ["--json", "check-theory", d("theory_nm_exempt.json")], 0),
]


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys):
    assert main(argv) == code
    out = capsys.readouterr()
    text = out.out + ("" if not out.err else "[stderr]\n" + out.err)
    # file arguments are printed nowhere, so goldens do not depend on paths
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


def test_every_subcommand_covered():
    commands = {"parse", "gnum", "diag", "godel-sentence", "check-proof", "gdl", "wf",
                "analyze-refs", "lemma2", "unfold", "eval3", "check-theory"}
    used = {a for _, argv, _ in CASES for a in argv if a in commands}
    assert used == commands


def test_json_is_stable(capsys):
    main(["--json", "analyze-refs", d("two.props")])
    first = capsys.readouterr().out
    main(["--json", "analyze-refs", d("two.props")])
    assert capsys.readouterr().out == first
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_run_config_bounds():
    assert RunConfig() == RunConfig(6, 5, 16, False)
    with pytest.raises(ValueError):
        RunConfig(search_depth_bound=11)
    with pytest.raises(ValueError):
        RunConfig(lemma2_max_n=7)
