"""Independent brute-force references and seeded generators shared by
the test modules.  Everything here is deliberately naive."""

import random
from itertools import combinations

from wcr.minnum import FREE_TYPES, classify
from wcr.reductions import Max2Sat3Occ, Sat3_22


def brute_max_matching_size(vertex_count: int, edges) -> int:
    """Exhaustive maximum matching (edge-subset recursion)."""
    edges = list(edges)

    def go(i, used):
        if i == len(edges):
            return 0
        best = go(i + 1, used)
        u, v = edges[i]
        if u not in used and v not in used:
            best = max(best, 1 + go(i + 1, used | {u, v}))
        return best

    return go(0, frozenset())


def occupancy(config, removed=frozenset()):
    rows, cols = set(), set()
    for s in config.sensors:
        if s.id not in removed:
            rows.add(s.y)
            cols.add(s.x)
    return rows, cols


def brute_max_free_set_size(config) -> int:
    """Largest set of free sensors whose removal leaves every occupied
    row and column occupied."""
    free = [sid for sid, t in classify(config).items() if t in FREE_TYPES]
    rows0, cols0 = occupancy(config)
    best = 0
    for k in range(len(free), 0, -1):
        for sub in combinations(free, k):
            if occupancy(config, frozenset(sub)) == (rows0, cols0):
                return k
    return best


def random_graph(rng: random.Random, max_vertices: int = 10):
    """Random simple graph without isolated vertices, as an edge list."""
    while True:
        n = rng.randint(2, max_vertices)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.35]
        if all(any(x in e for e in edges) for x in range(n)):
            return n, edges


def random_sat22_n3(rng: random.Random) -> Sat3_22:
    """Random 3-SAT(2,2) formula on three variables: four clauses over
    {x1,x2,x3}, two positive and two negative occurrences each."""
    while True:
        lits = [s * v for v in (1, 2, 3) for s in (1, 1, -1, -1)]
        rng.shuffle(lits)
        clauses = [tuple(lits[i:i + 3]) for i in range(0, 12, 3)]
        if all(len({abs(l) for l in c}) == 3 for c in clauses):
            return Sat3_22(3, tuple(clauses))


def random_max2sat3occ(rng: random.Random, n: int,
                       t: int | None = None) -> Max2Sat3Occ:
    """Random 3-occurrence Max-2SAT formula; t defaults to the true
    optimum so embeddings are always possible."""
    from wcr.reductions import sat_brute
    while True:
        lits = []
        for v in range(1, n + 1):
            signs = rng.choice(((1, 1, -1), (1, -1, -1)))
            lits.extend(s * v for s in signs)
        rng.shuffle(lits)
        clauses = [tuple(lits[i:i + 2]) for i in range(0, 3 * n, 2)]
        if any(abs(a) == abs(b) for a, b in clauses):
            continue
        f = Max2Sat3Occ(n, tuple(clauses), 0)
        if t is None:
            _, best = sat_brute(f)
            return Max2Sat3Occ(n, tuple(clauses), best)
        return Max2Sat3Occ(n, tuple(clauses), t)
