import pytest
from hypothesis import given

from selfref.diagonal import (
    FreeVarMismatch, build_godel_sentence, build_U, diagonalize,
)
from selfref.formula import (
    And, Eq, Exists, Forall, Gdl, Not, Var, free_vars, numeral, parse,
    replace_free, subterms, to_text,
)
from selfref.godel_codec import encode_wff
from strategies import wffs

X, Y = Var("x"), Var("y")
U_NUMBER = 78404087119023


def code_of_u_by_hand():
    # forall x . ~ Gdl ( x , x ' )
    codes = [12, 14, 18, 8, 17, 3, 14, 16, 14, 15, 4]
    g = 0
    for c in codes:
        g = g * 19 + c
    return g


def test_u_text():
    assert to_text(build_U()) == "forall x. ~Gdl(x, y)"
    assert free_vars(build_U()) == {"y"}


def test_u_number():
    assert encode_wff(build_U()) == code_of_u_by_hand() == U_NUMBER


def test_diagonalize_shape():
    phi = Eq(Y, Y)
    assert diagonalize(phi) == Exists("y", And(Eq(Y, numeral(encode_wff(phi))), phi))


def test_closed_phi():
    phi = parse("0 = 0")
    d = diagonalize(phi)
    assert d.body.r == phi and free_vars(d) == frozenset()


def test_other_free_variable():
    with pytest.raises(FreeVarMismatch):
        diagonalize(parse("x = y"))


class TestGodelSentence:
    def test_structure(self):
        b = build_godel_sentence()
        assert b.U == build_U()
        assert b.u_number == U_NUMBER
        assert b.G == diagonalize(b.U)
        assert b.G == Exists("y", And(Eq(Y, numeral(U_NUMBER)), b.U))
        assert b.G_expanded == Forall("x", Not(Gdl(X, numeral(U_NUMBER))))

    def test_closed(self):
        b = build_godel_sentence()
        assert free_vars(b.G) == frozenset() and free_vars(b.G_expanded) == frozenset()

    def test_deterministic(self):
        assert build_godel_sentence() == build_godel_sentence()

    def test_to_dict(self):
        d = build_godel_sentence().to_dict()
        assert d["U"] == "forall x. ~Gdl(x, y)" and d["u_number"] == str(U_NUMBER)
        assert parse(d["G"]) == build_godel_sentence().G


@given(wffs(3))
def test_mentions_own_code(w):
    phi = w
    for v in free_vars(w) - {"y"}:
        phi = replace_free(phi, v, numeral(0))
    d = diagonalize(phi)
    assert numeral(encode_wff(phi)) in set(subterms(d))
