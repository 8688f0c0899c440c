"""Every wff sequence whose code has at most a given number of tokens.

Generation builds syntax trees by token length; :func:`count_sequences`
counts the same set by a separate recurrence over the grammar, so the two
can be checked against each other.
"""

from functools import lru_cache

from selfref.formula import (
    And, Eq, Exists, Forall, Gdl, Imp, Not, Or, Plus, Succ, Times, Var, Zero,
)


@lru_cache(maxsize=None)
def terms_of_length(n: int) -> tuple:
    if n <= 0:
        return ()
    out = [Var("x" + "'" * (n - 1))]
    if n == 1:
        out.append(Zero())
    out += [Succ(t) for t in terms_of_length(n - 3)]
    for a in range(1, n - 3):
        for l in terms_of_length(a):
            for r in terms_of_length(n - 3 - a):
                out += [Plus(l, r), Times(l, r)]
    return tuple(out)


@lru_cache(maxsize=None)
def wffs_of_length(n: int) -> tuple:
    if n <= 0:
        return ()
    out = []
    for a in range(1, n - 1):                       # t = t
        for l in terms_of_length(a):
            out += [Eq(l, r) for r in terms_of_length(n - 1 - a)]
    for a in range(1, n - 4):                       # Gdl ( t , t )
        for l in terms_of_length(a):
            out += [Gdl(l, r) for r in terms_of_length(n - 4 - a)]
    out += [Not(w) for w in wffs_of_length(n - 1)]
    for a in range(1, n - 3):                       # ( w op w )
        for l in wffs_of_length(a):
            for r in wffs_of_length(n - 3 - a):
                out += [And(l, r), Or(l, r), Imp(l, r)]
    for k in range(1, n - 2):                       # forall v . w, v of k tokens
        v = "x" + "'" * (k - 1)
        for w in wffs_of_length(n - 2 - k):
            out += [Forall(v, w), Exists(v, w)]
    return tuple(out)


def sequences_up_to(max_tokens: int):
    """Yield lists of wffs whose joined token stream (separators included)
    has at most ``max_tokens`` tokens."""
    def extend(prefix, budget):
        for n in range(1, budget + 1):
            for w in wffs_of_length(n):
                seq = prefix + [w]
                yield seq
                if budget - n - 1 >= 1:
                    yield from extend(seq, budget - n - 1)
    yield from extend([], max_tokens)


def count_sequences(max_tokens: int) -> int:
    @lru_cache(maxsize=None)
    def t(n):
        if n <= 0:
            return 0
        return (n == 1) + 1 + t(n - 3) + 2 * sum(t(a) * t(n - 3 - a) for a in range(1, n - 3))

    @lru_cache(maxsize=None)
    def w(n):
        if n <= 0:
            return 0
        return (sum(t(a) * t(n - 1 - a) for a in range(1, n - 1))
                + sum(t(a) * t(n - 4 - a) for a in range(1, n - 4))
                + w(n - 1)
                + 3 * sum(w(a) * w(n - 3 - a) for a in range(1, n - 3))
                + 2 * sum(w(n - 2 - k) for k in range(1, n - 2)))

    @lru_cache(maxsize=None)
    def s(n):
        return w(n) + sum(w(a) * s(n - 1 - a) for a in range(1, n - 1))

    return sum(s(n) for n in range(1, max_tokens + 1))
