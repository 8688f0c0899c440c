"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from selfref.formula import (
    And, Eq, Exists, Forall, Gdl, Imp, Not, Or, Plus, Succ, Times, Var, Zero,
    numeral,
)
from selfref.hyperset import SetGraph

VAR_NAMES = ["x", "y", "x''", "x'''"]

var_names = st.sampled_from(VAR_NAMES)


@st.composite
def terms(draw, depth: int = 3):
    k = draw(st.integers(0, 4 if depth > 0 else 1))
    if k == 0:
        return Zero()
    if k == 1:
        return Var(draw(var_names))
    if k == 2:
        return Succ(draw(terms(depth - 1)))
    l, r = draw(terms(depth - 1)), draw(terms(depth - 1))
    return Plus(l, r) if k == 3 else Times(l, r)


@st.composite
def wffs(draw, depth: int = 4):
    """Random wffs of nesting depth at most ``depth`` (counting connectives)."""
    k = draw(st.integers(0, 7 if depth > 0 else 1))
    if k == 0:
        return Eq(draw(terms(2)), draw(terms(2)))
    if k == 1:
        return Gdl(draw(terms(1)), draw(terms(1)))
    if k == 2:
        return Not(draw(wffs(depth - 1)))
    if k in (3, 4, 5):
        return (And, Or, Imp)[k - 3](draw(wffs(depth - 1)), draw(wffs(depth - 1)))
    q = Forall if k == 6 else Exists
    return q(draw(var_names), draw(wffs(depth - 1)))


def wff_depth(w) -> int:
    if isinstance(w, (Eq, Gdl)):
        return 0
    if isinstance(w, Not):
        return 1 + wff_depth(w.w)
    if isinstance(w, (Forall, Exists)):
        return 1 + wff_depth(w.body)
    return 1 + max(wff_depth(w.l), wff_depth(w.r))


@st.composite
def set_graphs(draw, max_nodes: int = 6):
    """Accessible pointed graphs on integer nodes, point 0.

    A random spanning tree from the point makes every node reachable; extra
    edges may close cycles.
    """
    n = draw(st.integers(1, max_nodes))
    edges = set()
    for k in range(1, n):
        edges.add((draw(st.integers(0, k - 1)), k))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges |= set(extra)
    return SetGraph(set(range(n)), edges, 0)


@st.composite
def well_founded_graphs(draw, max_nodes: int = 6):
    """Acyclic accessible pointed graphs: every edge goes from lower to higher."""
    n = draw(st.integers(1, max_nodes))
    edges = set()
    for k in range(1, n):
        edges.add((draw(st.integers(0, k - 1)), k))
    for a, b in draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n)):
        if a < b:
            edges.add((a, b))
    return SetGraph(set(range(n)), edges, 0)


# plain seeded generators, for bulk runs where shrinking is not wanted

def random_term(rng, depth: int = 2):
    k = rng.randrange(5 if depth > 0 else 3)
    if k == 0:
        return Zero()
    if k == 1:
        return Var(rng.choice(VAR_NAMES))
    if k == 2:
        return numeral(rng.randrange(40))
    l, r = random_term(rng, depth - 1), random_term(rng, depth - 1)
    return Plus(l, r) if k == 3 else Times(l, r)


def random_wff(rng, depth: int = 4):
    k = rng.randrange(8 if depth > 0 else 2)
    if k == 0:
        return Eq(random_term(rng), random_term(rng))
    if k == 1:
        return Gdl(random_term(rng, 1), random_term(rng, 1))
    if k == 2:
        return Not(random_wff(rng, depth - 1))
    if k in (3, 4, 5):
        return (And, Or, Imp)[k - 3](random_wff(rng, depth - 1), random_wff(rng, depth - 1))
    q = Forall if k == 6 else Exists
    return q(rng.choice(VAR_NAMES), random_wff(rng, depth - 1))
