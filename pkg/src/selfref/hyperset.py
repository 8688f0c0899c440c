"""Hereditarily finite, possibly non-well-founded sets as pointed graphs.

A set is an accessible pointed graph: an edge ``a -> b`` says ``b`` is a
member of ``a``, and every node is reachable from the point.  Two graphs
denote the same set when their points are related by the largest
bisimulation between them, so a self-loop is the set ``Omega = {Omega}``.

On a finite graph an infinite descending chain ``... in A3 in A2 in A1``
must revisit a node, so it exists exactly when a cycle is reachable from
the point.  Foundation therefore reduces to acyclicity of the reachable
part.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable

__all__ = [
    "SetGraph", "empty_set", "von_neumann", "make_set", "singleton",
    "kuratowski", "set_eq", "bisimulation_classes", "collapse",
    "is_well_founded", "find_descending_cycle", "node_key",
]

NodeId = Hashable


def node_key(n):
    """Total order on node ids of mixed type (ints before strings)."""
    return (0, n, "") if isinstance(n, int) else (1, 0, str(n))


@dataclass(frozen=True)
class SetGraph:
    nodes: frozenset
    edges: frozenset   # of (parent, member) pairs
    point: NodeId

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        if self.point not in self.nodes:
            raise ValueError(f"point {self.point!r} is not a node")
        for a, b in self.edges:
            if a not in self.nodes or b not in self.nodes:
                raise ValueError(f"edge {a!r} -> {b!r} leaves the node set")
        unreached = self.nodes - self.reachable(self.point)
        if unreached:
            raise ValueError(f"nodes not reachable from the point: {sorted(unreached, key=node_key)}")

    # adjacency is recomputed on demand; graphs here are small
    def members(self, n) -> list:
        return sorted((b for a, b in self.edges if a == n), key=node_key)

    def successors(self) -> dict:
        succ: dict = {n: [] for n in self.nodes}
        for a, b in self.edges:
            succ[a].append(b)
        for v in succ.values():
            v.sort(key=node_key)
        return succ

    def reachable(self, start) -> set:
        succ: dict = {}
        for a, b in self.edges:
            succ.setdefault(a, []).append(b)
        seen = {start}
        todo = [start]
        while todo:
            for m in succ.get(todo.pop(), ()):
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
        return seen

    def repoint(self, point) -> "SetGraph":
        """The sub-graph accessible from another node."""
        keep = self.reachable(point)
        return SetGraph(keep, {e for e in self.edges if e[0] in keep}, point)

    def relabel(self, f) -> "SetGraph":
        return SetGraph({f(n) for n in self.nodes}, {(f(a), f(b)) for a, b in self.edges}, f(self.point))

    def to_json(self) -> dict:
        return {
            "nodes": sorted(self.nodes, key=node_key),
            "edges": sorted(([a, b] for a, b in self.edges), key=lambda e: (node_key(e[0]), node_key(e[1]))),
            "point": self.point,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "SetGraph":
        try:
            return cls(data["nodes"], [tuple(e) for e in data["edges"]], data["point"])
        except KeyError as e:
            raise ValueError(f"set graph JSON lacks field {e}") from None

    @classmethod
    def loads(cls, text: str) -> "SetGraph":
        return cls.from_json(json.loads(text))


def empty_set() -> SetGraph:
    return SetGraph({"0"}, set(), "0")


def von_neumann(b: int) -> SetGraph:
    """The ordinal 0 = {} or 1 = {0}."""
    if b == 0:
        return empty_set()
    if b == 1:
        return SetGraph({"0", "1"}, {("1", "0")}, "1")
    raise ValueError("only the bits 0 and 1 are provided")


def make_set(members: Iterable[SetGraph], point="p") -> SetGraph:
    """The set whose members are the given sets.

    Member graphs are relabelled apart (``m0/...``, ``m1/...``) so their node
    ids cannot clash.
    """
    nodes, edges = {point}, set()
    for i, m in enumerate(members):
        g = m.relabel(lambda n, i=i: f"m{i}/{n}")
        nodes |= g.nodes
        edges |= g.edges
        edges.add((point, g.point))
    return SetGraph(nodes, edges, point)


def singleton(a: SetGraph) -> SetGraph:
    return make_set([a])


def kuratowski(a: SetGraph, b: SetGraph) -> SetGraph:
    """The ordered pair ``(a, b) = {{a}, {a, b}}``.

    The two member nodes share one copy of ``a``'s and ``b``'s graphs.
    """
    ga = a.relabel(lambda n: f"a/{n}")
    gb = b.relabel(lambda n: f"b/{n}")
    nodes = ga.nodes | gb.nodes | {"pair", "{a}", "{a,b}"}
    edges = set(ga.edges | gb.edges)
    edges |= {("pair", "{a}"), ("pair", "{a,b}"), ("{a}", ga.point),
              ("{a,b}", ga.point), ("{a,b}", gb.point)}
    return SetGraph(nodes, edges, "pair")


# -- bisimulation ------------------------------------------------------------

def bisimulation_classes(nodes: Iterable, edges: Iterable) -> dict:
    """Map each node to the index of its class under the largest bisimulation.

    Naive partition refinement: split blocks by the set of blocks their
    members point to, until stable.  Class indices are deterministic.
    """
    nodes = sorted(set(nodes), key=node_key)
    succ: dict = {n: [] for n in nodes}
    for a, b in edges:
        succ[a].append(b)
    block = {n: 0 for n in nodes}
    count = 1
    while True:
        sigs = {n: (block[n], frozenset(block[m] for m in succ[n])) for n in nodes}
        ids: dict = {}
        for n in nodes:
            ids.setdefault(sigs[n], len(ids))
        new = {n: ids[sigs[n]] for n in nodes}
        if len(ids) == count:
            return new
        block, count = new, len(ids)


def _union(x: SetGraph, y: SetGraph):
    nodes = {("x", n) for n in x.nodes} | {("y", n) for n in y.nodes}
    edges = {(("x", a), ("x", b)) for a, b in x.edges} | {(("y", a), ("y", b)) for a, b in y.edges}
    return nodes, edges


def set_eq(x: SetGraph, y: SetGraph) -> bool:
    """Extensional equality: the points are bisimilar."""
    nodes, edges = _union(x, y)
    cls = bisimulation_classes(nodes, edges)
    return cls[("x", x.point)] == cls[("y", y.point)]


def collapse(x: SetGraph) -> SetGraph:
    """Quotient by the largest bisimulation.  Nodes become class indices."""
    cls = bisimulation_classes(x.nodes, x.edges)
    return SetGraph(set(cls.values()), {(cls[a], cls[b]) for a, b in x.edges}, cls[x.point])


# -- foundation --------------------------------------------------------------

def is_well_founded(x: SetGraph) -> bool:
    """No infinite descending membership chain, i.e. no reachable cycle."""
    succ = x.successors()
    state: dict = {}   # 1 = on the current path, 2 = finished
    stack = [(x.point, iter(succ[x.point]))]
    state[x.point] = 1
    while stack:
        n, it = stack[-1]
        for m in it:
            s = state.get(m)
            if s == 1:
                return False
            if s is None:
                state[m] = 1
                stack.append((m, iter(succ[m])))
                break
        else:
            state[n] = 2
            stack.pop()
    return True


def find_descending_cycle(x: SetGraph) -> list | None:
    """A shortest membership cycle ``c1 in c2 in ... in ck in c1``, or ``None``.

    Among shortest cycles, the one whose node list (rotated to start at its
    smallest node) is lexicographically smallest is returned, in that
    rotation.
    """
    succ = x.successors()
    # c1 in c2 is the edge c2 -> c1, so the list walks from members to parents
    parents: dict = {n: [] for n in x.nodes}
    for a, b in x.edges:
        parents[b].append(a)
    for v in parents.values():
        v.sort(key=node_key)
    order = sorted(x.nodes, key=node_key)
    rank = {n: i for i, n in enumerate(order)}

    def forward_dist(s, floor):
        # forward distance s -> p equals the parent-walk distance p -> s
        dist = {s: 0}
        q = deque([s])
        while q:
            n = q.popleft()
            for m in succ[n]:
                if m not in dist and rank[m] >= floor:
                    dist[m] = dist[n] + 1
                    q.append(m)
        return dist

    best = None
    for s in order:
        d = forward_dist(s, 0)
        # a forward path s -> ... -> p closes into a cycle when p is a parent of s
        for p in parents[s]:
            if p in d and (best is None or d[p] + 1 < best):
                best = d[p] + 1
    if best is None:
        return None
    for s in order:
        path = _smallest_cycle(s, best, parents, forward_dist(s, rank[s]), rank)
        if path is not None:
            return path
    raise AssertionError("cycle length measured but no cycle rebuilt")


def _smallest_cycle(s, length, parents, dist, rank):
    """Smallest-first walk along parents from ``s`` back to ``s`` in exactly
    ``length`` steps, through nodes not below ``s``."""
    path = [s]
    on_path = {s}

    def walk(n, remaining):
        for p in parents[n]:
            if rank[p] < rank[s]:
                continue
            if remaining == 1:
                if p == s:
                    return True
                continue
            if p in on_path or dist.get(p, remaining) > remaining - 1:
                continue
            path.append(p)
            on_path.add(p)
            if walk(p, remaining - 1):
                return True
            path.pop()
            on_path.discard(p)
        return False

    return path if walk(s, length) else None
