"""Line-blocking decision problems and exact MinMax on the integer grid.

A sensor destination (x, y) blocks vertical line x and horizontal
line y.  Fractional positions block a line i when the union of sensor
projections covers the unit interval [i - 1/2, i + 1/2]; for integer
positions that degenerates to "some sensor sits exactly on the line".

Search is restricted to integer destinations.  That restriction is
lossless for the D = 1 gadget family (fractional solutions normalize
to integer ones, see reductions.integerize); for other budgets the
result is the integer-restricted optimum and labeled as such.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .core import Configuration, HALF, Solution, covers_interval, \
    identity_solution, rat
from .errors import Infeasible, ModeError, SearchLimit, SizeLimit, \
    ValidationError

DEFAULT_NODE_BUDGET = 10**8


def node_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("WCR_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class VHInstance:
    config: Configuration
    v_lines: frozenset[int]
    h_lines: frozenset[int]
    max_move: Fraction

    def __post_init__(self):
        if self.config.mode != "integer":
            raise ModeError("line-blocking instances are integer mode")
        a, b = int(self.config.width), int(self.config.height)
        if not all(1 <= v <= a for v in self.v_lines):
            raise ValidationError("vertical line index out of range")
        if not all(1 <= h <= b for h in self.h_lines):
            raise ValidationError("horizontal line index out of range")
        if self.max_move < 0:
            raise ValidationError("move budget must be non-negative")


def full_lines(config: Configuration) -> tuple[frozenset[int], frozenset[int]]:
    return (frozenset(range(1, int(config.width) + 1)),
            frozenset(range(1, int(config.height) + 1)))


def _dist_key(metric: str, dx: int, dy: int) -> Fraction:
    dx, dy = abs(dx), abs(dy)
    return Fraction(dx + dy) if metric == "manhattan" \
        else Fraction(dx * dx + dy * dy)


def move_domain(config: Configuration, sensor_id: int,
                budget: Fraction) -> tuple:
    """Integer grid destinations within the move budget, ordered by
    (displacement, x, y).  Under either metric with budget 1 this is
    the 5-point plus (a diagonal step has length sqrt(2) > 1)."""
    s = config.sensor_by_id()[sensor_id]
    a, b = int(config.width), int(config.height)
    x0, y0 = int(s.x), int(s.y)
    reach = int(budget)  # |dx|, |dy| <= floor(budget) under both metrics
    limit_sq = budget * budget
    out = []
    for dx in range(-reach, reach + 1):
        for dy in range(-reach, reach + 1):
            x, y = x0 + dx, y0 + dy
            if not (1 <= x <= a and 1 <= y <= b):
                continue
            if config.metric == "manhattan":
                if abs(dx) + abs(dy) > budget:
                    continue
            elif Fraction(dx * dx + dy * dy) > limit_sq:
                continue
            out.append((x, y))
    out.sort(key=lambda q: (_dist_key(config.metric, q[0] - x0, q[1] - y0),
                            q[0], q[1]))
    return tuple(out)


def lines_blocked(positions, v_lines, h_lines):
    """Required lines blocked by the given (possibly fractional)
    positions, via unit-interval union coverage per line."""
    xs = sorted(x for x, _ in positions)
    ys = sorted(y for _, y in positions)

    def blocked(coords, line):
        lo, hi = line - HALF, line + HALF
        return covers_interval(((c - HALF, c + HALF) for c in coords), lo, hi)

    return ({v for v in v_lines if blocked(xs, v)},
            {h for h in h_lines if blocked(ys, h)})


def verify_vh(inst: VHInstance, positions: dict, *,
              require_integer: bool = True) -> bool:
    """positions: id -> (x, y).  True iff every required line is blocked,
    every move is within budget, and positions stay on the grid."""
    config = inst.config
    if set(positions) != {s.id for s in config.sensors}:
        return False
    a, b = config.width, config.height
    for s in config.sensors:
        x, y = positions[s.id]
        if not (HALF <= x <= a + HALF and HALF <= y <= b + HALF):
            return False
        if require_integer and (x.denominator != 1 or y.denominator != 1):
            return False
        dx, dy = abs(x - s.x), abs(y - s.y)
        if config.metric == "manhattan":
            if dx + dy > inst.max_move:
                return False
        elif dx * dx + dy * dy > inst.max_move * inst.max_move:
            return False
    v, h = lines_blocked(list(positions.values()),
                         inst.v_lines, inst.h_lines)
    return v == set(inst.v_lines) and h == set(inst.h_lines)


def decide_vh(inst: VHInstance, budget: int | None = None
              ) -> tuple[bool, Solution | None]:
    """Backtracking decision: can every required line be blocked with
    per-sensor moves at most max_move?

    Lines are branched on in MRV order (fewest candidate blockers,
    ties (axis, index) with vertical first); candidates are
    (uncommitted sensor, destination on the line) pairs tried by
    smallest displacement.  Raises SearchLimit past the node budget.
    """
    config = inst.config
    limit = node_budget(budget)
    domains = {s.id: move_domain(config, s.id, inst.max_move)
               for s in config.sensors}
    required = [("v", v) for v in sorted(inst.v_lines)] + \
               [("h", h) for h in sorted(inst.h_lines)]
    committed: dict[int, tuple[int, int]] = {}
    nodes = [0]

    def on_line(q, line) -> bool:
        axis, idx = line
        return (q[0] if axis == "v" else q[1]) == idx

    def candidates(line):
        out = []
        for s in config.sensors:
            if s.id in committed:
                continue
            for q in domains[s.id]:
                if on_line(q, line):
                    out.append((_dist_key(config.metric,
                                          q[0] - int(s.x), q[1] - int(s.y)),
                                q[0], q[1], s.id))
        out.sort()
        return out

    def search(unsat: frozenset) -> bool:
        nodes[0] += 1
        if nodes[0] > limit:
            raise SearchLimit(nodes[0])
        if not unsat:
            return True
        axis_rank = {"v": 0, "h": 1}
        best = None
        for line in sorted(unsat, key=lambda l: (axis_rank[l[0]], l[1])):
            cands = candidates(line)
            if not cands:
                return False
            if best is None or len(cands) < len(best[1]):
                best = (line, cands)
                if len(cands) == 1:
                    break
        line, cands = best
        for _, x, y, sid in cands:
            committed[sid] = (x, y)
            now_sat = {l for l in unsat if on_line((x, y), l)}
            if search(unsat - now_sat):
                return True
            del committed[sid]
        return False

    feasible = search(frozenset(required))
    if not feasible:
        return False, None
    sol = Solution({s.id: (Fraction(committed[s.id][0]),
                           Fraction(committed[s.id][1]))
                    if s.id in committed else (s.x, s.y)
                    for s in config.sensors})
    assert verify_vh(inst, dict(sol.positions))
    return True, sol


@dataclass(frozen=True)
class MinMaxResult:
    """Exact optimum.  `value` is the distance when it is rational
    (always under Manhattan; under Euclidean only for perfect squares,
    else None); `value_squared` is always exact."""
    value: Fraction | None
    value_squared: Fraction
    solution: Solution


def _ladder(config: Configuration) -> list[Fraction]:
    """Sorted distinct achievable per-sensor displacement keys
    (distances under Manhattan, squared distances under Euclidean)."""
    a, b = int(config.width), int(config.height)
    keys = set()
    for s in config.sensors:
        for x in range(1, a + 1):
            for y in range(1, b + 1):
                keys.add(_dist_key(config.metric,
                                   x - int(s.x), y - int(s.y)))
    return sorted(keys)


def solve_minmax(config: Configuration, budget: int | None = None
                 ) -> MinMaxResult:
    """Least max-displacement making the configuration blocking
    (integer destinations); binary search over the achievable-distance
    ladder, each step decided by decide_vh."""
    if config.mode != "integer":
        raise ModeError("integer mode required")
    if config.n < max(config.width, config.height):
        raise Infeasible("fewer sensors than the longer side")
    v, h = full_lines(config)

    def feasible_at(key: Fraction):
        # key is a distance (manhattan) or a squared distance (euclidean)
        d = key if config.metric == "manhattan" else _exact_or_upper_sqrt(key)
        return decide_vh(VHInstance(config, v, h, d), budget)

    ladder = _ladder(config)
    lo, hi = 0, len(ladder) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        ok, sol = feasible_at(ladder[mid])
        if ok:
            best = (ladder[mid], sol)
            hi = mid - 1
        else:
            lo = mid + 1
    assert best is not None, "full-move relocation must be feasible"
    key, sol = best
    if config.metric == "manhattan":
        return MinMaxResult(value=key, value_squared=key * key, solution=sol)
    root = math.isqrt(key.numerator)
    exact = Fraction(root) if key.denominator == 1 and \
        root * root == key.numerator else None
    return MinMaxResult(value=exact, value_squared=key, solution=sol)


def _exact_or_upper_sqrt(squared: Fraction) -> Fraction:
    """A budget d with d^2 >= squared that admits exactly the integer
    moves of squared-distance <= squared: integer destinations make the
    squared distance an integer, so any d with squared <= d^2 <
    squared+1 works; use the exact root when it exists, else a tight
    rational upper bound."""
    if squared.denominator == 1:
        root = math.isqrt(squared.numerator)
        if root * root == squared.numerator:
            return Fraction(root)
        # find d with squared <= d^2 < squared + 1
        d = Fraction(math.isqrt(squared.numerator * 4096) + 1, 64)
        assert d * d >= squared and d * d < squared + 1
        return d
    raise ValidationError("euclidean ladder keys are integers")


def oracle_minmax(inst: VHInstance) -> bool:
    """Memoized exhaustive check over sensors x unsatisfied-line sets;
    agrees with decide_vh by construction of the same move domains."""
    config = inst.config
    domains = [move_domain(config, s.id, inst.max_move)
               for s in config.sensors]
    product = 1
    for d in domains:
        product *= max(1, len(d))
        if product > 10**7:
            raise SizeLimit("move-domain product exceeds 10^7")
    lines = [("v", v) for v in sorted(inst.v_lines)] + \
            [("h", h) for h in sorted(inst.h_lines)]
    line_index = {l: i for i, l in enumerate(lines)}
    full = (1 << len(lines)) - 1

    masks = []  # masks[i][j] = lines blocked by destination j of sensor i
    for d in domains:
        row = []
        for (x, y) in d:
            m = 0
            if ("v", x) in line_index:
                m |= 1 << line_index[("v", x)]
            if ("h", y) in line_index:
                m |= 1 << line_index[("h", y)]
            row.append(m)
        masks.append(row)

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def rec(i: int, unsat: int) -> bool:
        if unsat == 0:
            return True
        if i == len(masks):
            return False
        seen = set()
        for m in masks[i]:
            rest = unsat & ~m
            if rest not in seen:
                seen.add(rest)
                if rec(i + 1, rest):
                    return True
        return False

    return rec(0, full)
