"""Maximum matching in general graphs and minimum edge cover.

A hand-rolled blossom (odd-cycle contraction) algorithm, O(V^3).  The
free-sensor graph contains odd cycles through its hub vertex, so
bipartite matching would not be enough.  Everything is deterministic:
the same edge ordering always yields the same matching.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import IsolatedVertex, ValidationError


@dataclass(frozen=True)
class Graph:
    """Undirected graph; edges may carry a sensor-id label (or None)."""

    vertex_count: int
    edges: tuple  # of (u, v, label)

    def __post_init__(self):
        for u, v, _ in self.edges:
            if u == v:
                raise ValidationError("self-loops are not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValidationError("edge endpoint out of range")


def _edge_key(edge_index: int, label) -> tuple:
    # parallel edges collapse to the lowest label (unlabeled ones last)
    return (label is None, label if label is not None else 0, edge_index)


def _representatives(g: Graph) -> dict[tuple[int, int], int]:
    """Map each unordered vertex pair to its representative edge index."""
    rep: dict[tuple[int, int], int] = {}
    for i, (u, v, label) in enumerate(g.edges):
        key = (min(u, v), max(u, v))
        if key not in rep or _edge_key(i, label) < _edge_key(
                rep[key], g.edges[rep[key]][2]):
            rep[key] = i
    return rep


def _match_array(n: int, adj: list[list[int]]) -> list[int]:
    """match[v] = partner of v or -1; blossom algorithm."""
    match = [-1] * n

    def find_augmenting(root: int) -> bool:
        p = [-1] * n  # p[v]: the vertex from which the odd vertex v was seen
        base = list(range(n))
        used = [False] * n
        used[root] = True
        q = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]):
            while base[v] != b:
                blossom[base[v]] = True
                blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    # found an odd cycle; contract the blossom
                    b = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, b, to, blossom)
                    mark_path(to, b, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = b
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        # augmenting path found: flip it
                        u = to
                        while u != -1:
                            pv = p[u]
                            nxt = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = nxt
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting(v)
    return match


def maximum_matching(g: Graph) -> set[int]:
    """Edge indices forming a maximum-cardinality matching."""
    rep = _representatives(g)
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for u, v in rep:
        adj[u].append(v)
        adj[v].append(u)
    for neighbors in adj:
        neighbors.sort()
    match = _match_array(g.vertex_count, adj)
    chosen = set()
    for v, w in enumerate(match):
        if w > v:
            chosen.add(rep[(v, w)])
    return chosen


def minimum_edge_cover(g: Graph) -> set[int]:
    """Max matching extended with one cheapest edge per unmatched vertex;
    |cover| = vertex_count - |maximum matching| (Gallai)."""
    rep = _representatives(g)
    incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for (u, v), i in rep.items():
        incident[u].append(i)
        incident[v].append(i)
    for v, edges in enumerate(incident):
        if not edges:
            raise IsolatedVertex(v)
        edges.sort(key=lambda i: _edge_key(i, g.edges[i][2]))

    cover = maximum_matching(g)
    matched = [False] * g.vertex_count
    for i in cover:
        u, v, _ = g.edges[i]
        matched[u] = matched[v] = True
    for v in range(g.vertex_count):
        if not matched[v]:
            cover.add(incident[v][0])
            matched[v] = True

    touched = set()
    for i in cover:
        u, v, _ = g.edges[i]
        touched.update((u, v))
    assert touched == set(range(g.vertex_count)), "cover verification failed"
    return cover
