"""Minimum total movement for homogeneous sensors, Manhattan metric.

The 2D problem separates into two independent 1D problems (sum of
|dx| and sum of |dy| are minimized independently; any pair of optimal
axis solutions combines into an optimal 2D solution).

The 1D problem: points p_1..p_n on a segment [0, L], all radius r,
minimize total movement so the union of [t_i - r, t_i + r] covers
[0, L].  An order-preserving optimum always exists, and some optimum
places every moved sensor on the candidate grid

    C = {p_j + 2rk} U {r + 2rk} U {L - r - 2rk},   |k| <= n,

clamped to [0, L] (translate any rigid sub-chain of touching intervals
until a sensor stops moving or an endpoint anchors).  The solver is a
DP over C with a sliding-window minimum; sensors not needed for
coverage stay where they are.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import Configuration, Solution
from .errors import HeterogeneousRanges, Infeasible, ModeError, SizeLimit

INF = None  # sentinel: Fractions compare poorly with float inf


def _lt(a, b) -> bool:
    """a < b with None acting as +infinity."""
    if a is INF:
        return False
    if b is INF:
        return True
    return a < b


@dataclass(frozen=True)
class Line1DInstance:
    points: tuple[Fraction, ...]
    radius: Fraction
    length: Fraction

    def __post_init__(self):
        if self.radius <= 0 or self.length <= 0:
            raise ValueError("radius and length must be positive")
        for p in self.points:
            if not (0 <= p <= self.length):
                raise ValueError(f"point {p} outside [0, {self.length}]")

    @property
    def feasible(self) -> bool:
        return len(self.points) * 2 * self.radius >= self.length


def candidate_targets(inst: Line1DInstance,
                      keep=lambda v: True) -> list[Fraction]:
    r, L = inst.radius, inst.length
    n = len(inst.points)
    raw = set()
    for k in range(-n, n + 1):
        raw.add(r + 2 * r * k)
        raw.add(L - r - 2 * r * k)
        for p in inst.points:
            raw.add(p + 2 * r * k)
    clamped = {min(max(v, Fraction(0)), L) for v in raw}
    return sorted(v for v in clamped if keep(v))


def solve_minsum_1d(inst: Line1DInstance, *, keep=lambda v: True
                    ) -> tuple[tuple[Fraction, ...], Fraction]:
    """Optimal targets (aligned to input order) and their total cost.

    `keep` optionally filters the candidate grid (used by the integer-
    mode caller to stay on lattice points; safe whenever an optimum
    exists within the filtered set).
    """
    if not inst.feasible:
        raise Infeasible("sum of diameters shorter than the segment")
    n = len(inst.points)
    r, L = inst.radius, inst.length
    order = sorted(range(n), key=lambda i: (inst.points[i], i))
    pts = [inst.points[i] for i in order]
    C = candidate_targets(inst, keep)
    m = len(C)
    done_from = next((c for c in range(m) if C[c] >= L - r), m)

    # suffix DP: best[c] = min cost of sensors i..n-1 given the last
    # placed target is C[c] (chain valid so far); best[m] = nothing
    # placed yet (the next placed target must be <= r).
    # A state c >= done_from is terminal: remaining sensors stay put.
    upper = []  # upper[c] = last c' with C[c'] <= C[c] + 2r
    hi = 0
    for c in range(m):
        hi = max(hi, c)
        while hi + 1 < m and C[hi + 1] <= C[c] + 2 * r:
            hi += 1
        upper.append(hi)
    start_ub = -1
    while start_ub + 1 < m and C[start_ub + 1] <= r:
        start_ub += 1

    best = [Fraction(0) if c >= done_from else INF for c in range(m)]
    best.append(INF)  # start state
    layers = [list(best)]
    for i in range(n - 1, -1, -1):
        nxt = best
        cur = [Fraction(0)] * m + [INF]
        # sliding-window minimum of place-cost f(c') over c' in [c, upper[c]]
        window: deque[int] = deque()

        def f(cp):
            return INF if nxt[cp] is INF else abs(pts[i] - C[cp]) + nxt[cp]

        pushed = -1
        for c in range(min(done_from, m)):
            while pushed < upper[c]:
                pushed += 1
                while window and not _lt(f(window[-1]), f(pushed)):
                    window.pop()
                window.append(pushed)
            while window[0] < c:
                window.popleft()
            placed = f(window[0])
            cur[c] = placed if _lt(placed, nxt[c]) else nxt[c]
        start_best = nxt[m]
        for cp in range(start_ub + 1):
            v = f(cp)
            if _lt(v, start_best):
                start_best = v
        cur[m] = start_best
        best = cur
        layers.append(list(best))
    layers.reverse()  # layers[i] = DP values before placing sensor i

    total = layers[0][m]
    if total is INF:
        raise Infeasible("no covering assignment exists")  # pragma: no cover

    # forward reconstruction; ties broken toward the smallest target,
    # then toward leaving the sensor where it is
    targets_sorted: list[Fraction] = []
    state = m
    for i in range(n):
        nxt = layers[i + 1]
        needed = layers[i][state]
        if state < m and state >= done_from:
            targets_sorted.append(pts[i])
            continue
        options = []
        if nxt[state] is not INF and not _lt(needed, nxt[state]):
            options.append((pts[i], 0, state))  # stay put
        lo = 0 if state == m else state
        hi = start_ub if state == m else upper[state]
        for cp in range(lo, hi + 1):
            if nxt[cp] is INF:
                continue
            if abs(pts[i] - C[cp]) + nxt[cp] == needed:
                options.append((C[cp], 1, cp))
        assert options, "reconstruction lost the optimum"
        t, _, state = min(options, key=lambda o: (o[0], o[1]))
        targets_sorted.append(t)

    targets = [Fraction(0)] * n
    for rank, i in enumerate(order):
        targets[i] = targets_sorted[rank]
    cost = sum((abs(t - p) for t, p in zip(targets, inst.points)),
               Fraction(0))
    assert cost == total
    return tuple(targets), cost


def solve_minsum_manhattan(config: Configuration
                           ) -> tuple[Solution, Fraction]:
    """Exact 2D MinSum for homogeneous ranges under Manhattan distance."""
    ranges = {s.range for s in config.sensors}
    if len(ranges) > 1:
        raise HeterogeneousRanges(
            "heterogeneous MinSum is intractable; see the brute-force oracle")
    if config.metric != "manhattan":
        raise ModeError("MinSum solver is Manhattan-only")
    r = next(iter(ranges))
    keep = (lambda v: (v + HALF_SHIFT).denominator == 1) \
        if config.mode == "integer" else (lambda v: True)

    lo_x, hi_x = config.x_extent
    lo_y, hi_y = config.y_extent
    sensors = sorted(config.sensors, key=lambda s: s.id)
    xin = Line1DInstance(points=tuple(s.x - lo_x for s in sensors),
                         radius=r, length=hi_x - lo_x)
    yin = Line1DInstance(points=tuple(s.y - lo_y for s in sensors),
                         radius=r, length=hi_y - lo_y)
    tx, cx = solve_minsum_1d(xin, keep=keep)
    ty, cy = solve_minsum_1d(yin, keep=keep)
    sol = Solution({s.id: (tx[i] + lo_x, ty[i] + lo_y)
                    for i, s in enumerate(sensors)})
    return sol, cx + cy


HALF_SHIFT = Fraction(1, 2)  # integer-mode axis shift: grid i <-> i - 1/2


def oracle_minsum_1d(inst: Line1DInstance, delta: Fraction
                     ) -> tuple[Fraction, Fraction]:
    """Two independent optimum estimates (A, B).

    A: branch-and-bound over order-preserving assignments into the
    candidate set, coverage verified at the leaves by interval union.
    B: DP over the uniform grid of step delta (order-preserving full
    assignments).  Contract: A <= B <= A + n*delta whenever r, L and
    the input points are multiples of delta.
    """
    n = len(inst.points)
    if n > 6:
        raise SizeLimit("1D oracle limited to 6 sensors")
    if not inst.feasible:
        raise Infeasible("sum of diameters shorter than the segment")
    r, L = inst.radius, inst.length
    pts = sorted(inst.points)

    # --- B: order-preserving full assignments on the uniform grid.
    # State after sensor i = its grid target q; with monotone targets the
    # union's covered prefix is [0, q*delta + r] unless a gap appeared,
    # and gaps are permanent, so a single coordinate suffices.
    if (L / delta).denominator != 1:
        raise ValueError("delta must divide the segment length")
    gq = int(L / delta)
    done_at = L - r  # a target here or beyond completes the cover
    prev: dict = {None: Fraction(0)}  # None = nothing placed yet
    done_cost = INF
    for i in range(n):
        cur: dict = {}
        for state, cost in prev.items():
            if state is not None and state * delta >= done_at:
                # cover complete: sensors i..n-1 go to max(p_j, target)
                tail = cost + sum(
                    (max(Fraction(0), state * delta - pts[j])
                     for j in range(i, n)), Fraction(0))
                if _lt(tail, done_cost):
                    done_cost = tail
                continue
            lo = 0 if state is None else state
            hi_abs = r if state is None else state * delta + 2 * r
            q = lo
            while q <= gq and q * delta <= hi_abs:
                c2 = cost + abs(pts[i] - q * delta)
                if _lt(c2, cur.get(q, INF)):
                    cur[q] = c2
                q += 1
        prev = cur
    b_cost = done_cost
    for state, cost in prev.items():
        if state is not None and state * delta >= done_at and \
                _lt(cost, b_cost):
            b_cost = cost
    if b_cost is INF:
        raise Infeasible("grid oracle found no covering assignment")

    # --- A: branch and bound over monotone assignments into C.  With
    # monotone targets, reach = covered prefix endpoint; a new interval
    # starting past reach leaves a permanent gap.  B is a valid upper
    # bound (true optimum <= B), so pruning on cost > best is safe.
    C = candidate_targets(inst)
    best = [b_cost]

    def dfs(i: int, cost: Fraction, min_c: int, reach: Fraction):
        if _lt(best[0], cost):
            return
        if reach >= L:
            if _lt(cost, best[0]):
                best[0] = cost
            return
        if i == n:
            return
        for c in range(min_c, len(C)):
            t = C[c]
            if t - r > reach:
                break  # permanent gap; larger t only worse
            dfs(i + 1, cost + abs(pts[i] - t), c, max(reach, t + r))

    dfs(0, Fraction(0), 0, Fraction(0))
    a_cost = best[0]
    return a_cost, b_cost
