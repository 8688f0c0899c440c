"""Diagonalization and the Gödel sentence built from it."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    And, Eq, Exists, Forall, Gdl, Not, Var, Wff, free_vars, numeral,
    substitute, to_text,
)
from .godel_codec import encode_wff

__all__ = [
    "FreeVarMismatch", "GodelSentenceBundle", "diagonalize", "build_U",
    "build_godel_sentence",
]


class FreeVarMismatch(ValueError):
    pass


def diagonalize(phi: Wff) -> Wff:
    """``exists y. (y = <code of phi> & phi)``.

    ``phi`` may mention only ``y`` free; a closed ``phi`` is diagonalized all
    the same (the equation then just pins ``y``).
    """
    extra = free_vars(phi) - {"y"}
    if extra:
        raise FreeVarMismatch(f"free variables other than y: {sorted(extra)}")
    return Exists("y", And(Eq(Var("y"), numeral(encode_wff(phi))), phi))


def build_U() -> Wff:
    """``forall x. ~Gdl(x, y)``: no number codes a proof of the diagonalization
    of the wff coded by ``y``."""
    return Forall("x", Not(Gdl(Var("x"), Var("y"))))


@dataclass(frozen=True)
class GodelSentenceBundle:
    U: Wff
    G: Wff
    G_expanded: Wff
    u_number: int

    def to_dict(self) -> dict:
        return {
            "U": to_text(self.U),
            "u_number": str(self.u_number),
            "G": to_text(self.G),
            "G_expanded": to_text(self.G_expanded),
        }


def build_godel_sentence() -> GodelSentenceBundle:
    U = build_U()
    u_number = encode_wff(U)
    return GodelSentenceBundle(
        U=U,
        G=diagonalize(U),
        G_expanded=substitute(U, "y", numeral(u_number)),
        u_number=u_number,
    )
