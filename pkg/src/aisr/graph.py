"""The graph of the length-2 layer of a term, and its parity structure.

Vertices are the variables of the length-2 words; each word ``xy`` gives
the edge {x, y} and each square ``x²`` gives a loop at x.  A loop counts
as an odd cycle of length one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .terms import Term, var_key


@dataclass(frozen=True)
class TermGraph:
    vertices: frozenset[str]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        for e in self.edges:
            if not e <= self.vertices or not 1 <= len(e) <= 2:
                raise ValueError(f"bad edge {set(e)}")

    @property
    def loops(self) -> frozenset[str]:
        return frozenset(next(iter(e)) for e in self.edges if len(e) == 1)

    def neighbours(self, x: str) -> list[str]:
        out = []
        for e in self.edges:
            if x in e:
                out.append(x if len(e) == 1 else next(v for v in e if v != x))
        return sorted(out, key=var_key)

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if len(e) == 1:
                (x,) = e
                adj[x].append(x)
            else:
                x, y = e
                adj[x].append(y)
                adj[y].append(x)
        for v in adj:
            adj[v].sort(key=var_key)
        return adj

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices, key=var_key)

    def sorted_edges(self) -> list[tuple[str, ...]]:
        return sorted((tuple(sorted(e, key=var_key)) for e in self.edges), key=lambda p: [var_key(v) for v in p])


def build(t: Term) -> TermGraph:
    edges = set()
    for w in t.layer(2):
        edges.add(frozenset(w.content))
    vertices = frozenset().union(*edges) if edges else frozenset()
    return TermGraph(frozenset(vertices), frozenset(edges))


def _two_colour(G: TermGraph):
    """BFS 2-colouring; returns (colour, parent, conflict edge or None)."""
    adj = G.adjacency()
    colour: dict[str, int] = {}
    parent: dict[str, Optional[str]] = {}
    for root in G.sorted_vertices():
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    parent[y] = x
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return colour, parent, (x, y)
    return colour, parent, None


def has_odd_cycle(G: TermGraph) -> bool:
    return _two_colour(G)[2] is not None


def bipartition(G: TermGraph) -> Optional[dict[str, int]]:
    """A 0/1 colouring with every edge bichromatic, or None.

    In each component the smallest variable gets colour 0.
    """
    colour, _, conflict = _two_colour(G)
    return None if conflict else colour


def odd_cycle(G: TermGraph) -> Optional[list[str]]:
    """A closed walk of odd length, listed without repeating the start."""
    colour, parent, conflict = _two_colour(G)
    if conflict is None:
        return None
    x, y = conflict
    if x == y:
        return [x]

    def chain(v):
        out = [v]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    px, py = chain(x), chain(y)
    common = set(py)
    i = next(k for k, v in enumerate(px) if v in common)
    j = py.index(px[i])
    # x .. lca .. y, closed by the edge {y, x}; i and j have equal parity
    return px[: i + 1] + py[:j][::-1]


def odd_closure(G: TermGraph) -> frozenset[frozenset[str]]:
    """Pairs joined by a walk of odd length (parity BFS on the double cover).

    Singletons {x} appear when x lies on an odd closed walk.  For graphs
    without odd cycles, walks and paths agree and the result is exactly
    the pairs on opposite sides of the same component.
    """
    adj = G.adjacency()
    out = set()
    for x in G.vertices:
        seen = {(x, 0)}
        queue = deque([(x, 0)])
        while queue:
            v, par = queue.popleft()
            for y in adj[v]:
                state = (y, 1 - par)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        for v, par in seen:
            if par == 1:
                out.add(frozenset((x, v)))
    return frozenset(out)


def component(G: TermGraph, x: str) -> frozenset[str]:
    if x not in G.vertices:
        raise KeyError(f"{x!r} is not a vertex")
    adj = G.adjacency()
    seen = {x}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for y in adj[v]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def components(G: TermGraph) -> list[frozenset[str]]:
    out, seen = [], set()
    for v in G.sorted_vertices():
        if v not in seen:
            c = component(G, v)
            seen |= c
            out.append(c)
    return out
