import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from selfref.diagonal import build_godel_sentence, diagonalize
from selfref.formula import Gdl, numeral, parse
from selfref.godel_codec import encode_sequence, encode_wff
from selfref.proof_kernel import (
    AxiomInstance, BoundTooLarge, InvalidLine, ModusPonens, NotFound, Proof,
    ProofBuilder, ProofLine, axiom_schema, check_proof, desugar, gdl,
    gdl_atom_truth, is_axiom, is_core, line_verdicts, reconstruct, search_proof,
)
from proof_fixture import fixture_number, fixture_proof, phi_number
from strategies import random_wff, wffs

P = parse


class TestAxioms:
    @pytest.mark.parametrize("text, schema", [
        ("0 = 0", "E1"),
        ("forall x. ~S(x) = 0", "PA1"),
        ("~S(S(0)) = 0", "PA1"),
        ("(S(x) = S(y) -> x = y)", "PA2"),
        ("(x + 0) = x", "PA3"),
        ("(x + S(y)) = S((x + y))", "PA4"),
        ("(x * 0) = 0", "PA5"),
        ("(x * S(y)) = ((x * y) + x)", "PA6"),
        ("(0 = 0 -> (~0 = 0 -> 0 = 0))", "P1"),
        ("((~0 = 0 -> ~S(0) = 0) -> (S(0) = 0 -> 0 = 0))", "P3"),
        ("(forall x. x = x -> S(0) = S(0))", "Q1"),
        ("(x = 0 -> (S(x) = x -> S(0) = x))", "E2"),
    ])
    def test_instances(self, text, schema):
        assert axiom_schema(P(text)) == schema

    def test_p2(self):
        a, b, c = "0 = 0", "x = 0", "y = 0"
        w = P(f"(({a} -> ({b} -> {c})) -> (({a} -> {b}) -> ({a} -> {c})))")
        assert axiom_schema(w) == "P2"

    def test_q2(self):
        assert is_axiom(P("(forall x. (0 = 0 -> x = x) -> (0 = 0 -> forall x. x = x))"))
        assert not is_axiom(P("(forall x. (x = 0 -> x = x) -> (x = 0 -> forall x. x = x))"))

    def test_induction(self):
        w = P("((0 + 0) = 0 -> (forall x. ((0 + x) = x -> (0 + S(x)) = S(x)) -> forall x. (0 + x) = x))")
        assert axiom_schema(w) == "IND"

    @pytest.mark.parametrize("text", ["0 = S(0)", "x = y", "S(0) = 0", "(0 = 0 -> 0 = S(0))"])
    def test_non_axioms(self, text):
        assert not is_axiom(P(text))

    def test_q1_respects_capture(self):
        # x is not free for y under forall x
        assert not is_axiom(P("(forall y. forall x. x = y -> forall x. x = x)"))


class TestDesugar:
    def test_core(self):
        w = desugar(P("exists y. (y = 0 & (y = y | 0 = 0))"))
        assert is_core(w)
        assert w == P("~forall y. ~~(y = 0 -> ~(~y = y -> 0 = 0))")


class TestCheck:
    def test_one_line(self):
        p = Proof((ProofLine(P("0 = 0"), AxiomInstance("E1")),))
        assert check_proof(p) == P("0 = 0")

    def test_mp_on_non_implication(self):
        lines = (ProofLine(P("0 = 0"), AxiomInstance("E1")),
                 ProofLine(P("S(0) = S(0)"), AxiomInstance("E1")),
                 ProofLine(P("0 = S(0)"), ModusPonens(0, 1)))
        with pytest.raises(InvalidLine, match="line 3"):
            check_proof(Proof(lines))

    def test_non_axiom_claimed(self):
        with pytest.raises(InvalidLine, match="not an axiom"):
            check_proof(Proof((ProofLine(P("0 = S(0)"), AxiomInstance("E1")),)))

    def test_forward_reference(self):
        lines = (ProofLine(P("0 = 0"), ModusPonens(1, 0)),)
        with pytest.raises(InvalidLine):
            check_proof(Proof(lines))

    def test_reconstruct(self):
        ws = [P("0 = 0"), P("(0 = 0 -> (~0 = S(0) -> 0 = 0))"), P("(~0 = S(0) -> 0 = 0)")]
        p = reconstruct(ws)
        assert p.lines[0].justification == AxiomInstance("E1")
        assert p.lines[2].justification == ModusPonens(1, 0)
        assert check_proof(p) == ws[2]

    def test_reconstruct_rejects(self):
        with pytest.raises(InvalidLine):
            reconstruct([P("0 = S(0)")])


class TestBuilder:
    def test_identity(self):
        b = ProofBuilder()
        b.identity(P("0 = S(0)"))
        assert check_proof(b.proof()) == P("(0 = S(0) -> 0 = S(0))")

    def test_instantiate(self):
        b = ProofBuilder()
        pa1 = b.axiom(P("forall x. ~S(x) = 0"))
        b.instantiate(pa1, numeral(7))
        assert check_proof(b.proof()) == P("~S(S(S(S(S(S(S(S(0)))))))) = 0")


class TestFixture:
    def test_checks(self):
        p = fixture_proof()
        assert check_proof(p) == diagonalize(P("y = y"))

    def test_size(self):
        p = fixture_proof()
        assert len(p.lines) == 180
        assert len(str(fixture_number())) == 23814

    def test_gdl_true(self):
        assert gdl(fixture_number(), phi_number())

    def test_wrong_target(self):
        assert not gdl(fixture_number(), phi_number() + 1)

    def test_trivial_numbers(self):
        assert not gdl(0, phi_number())
        assert not gdl(fixture_number(), 0)
        assert not gdl(-1, 5)

    def test_corruptions(self):
        p = fixture_proof()
        rng = random.Random(11)
        n = phi_number()
        for _ in range(100):
            k = rng.randrange(len(p.lines))
            ws = p.wffs
            w = random_wff(rng, 3)
            if w == ws[k]:
                continue
            ws[k] = w
            assert not gdl(encode_sequence(ws), n)
            assert any(isinstance(v, str) for v in line_verdicts(ws)) or ws[-1] != p.conclusion

    def test_atom_oracle_agrees(self):
        m, n = fixture_number(), phi_number()
        for mm, nn in [(m, n), (m, n + 1), (1, n), (m, 495)]:
            assert gdl_atom_truth(Gdl(numeral(mm), numeral(nn))) == gdl(mm, nn)

    def test_fast(self):
        m, n = fixture_number(), phi_number()
        t = time.perf_counter()
        gdl(m, n)
        assert time.perf_counter() - t < 2.0


def test_godel_number_of_proof():
    p = fixture_proof()
    assert p.godel_number() == encode_sequence(p.wffs)


@settings(max_examples=300)
@given(st.integers(1, 10**80))
def test_gdl_u_random(m):
    assert not gdl(m, build_godel_sentence().u_number)


@given(wffs(3))
def test_gdl_total(w):
    # arbitrary wff numbers as m: gdl answers without raising
    assert gdl(encode_wff(w), encode_wff(P("y = y"))) in (True, False)


class TestSearch:
    def test_reflexivity(self):
        p = search_proof(P("0 = 0"), 1)
        assert isinstance(p, Proof) and len(p.lines) == 1
        assert p.lines[0].justification == AxiomInstance("E1")

    def test_false_equation(self):
        r = search_proof(P("0 = S(0)"), 6)
        assert isinstance(r, NotFound) and r.depth_bound == 6

    def test_bound(self):
        with pytest.raises(BoundTooLarge):
            search_proof(P("0 = 0"), 11)

    def test_implication(self):
        w = P("(0 = S(0) -> 0 = S(0))")
        p = search_proof(w, 4)
        assert isinstance(p, Proof) and check_proof(p) == w

    def test_deterministic(self):
        w = P("~S(0) = 0")
        assert search_proof(w, 3) == search_proof(w, 3)

    @pytest.mark.slow
    def test_diagonalization(self):
        target = diagonalize(P("y = y"))
        p = search_proof(target, 7)
        assert isinstance(p, Proof)
        assert check_proof(p) == target
        assert gdl(p.godel_number(), phi_number())
