import random
from fractions import Fraction

import pytest

from wcr.core import Configuration, Sensor, is_blocking, solution_costs
from wcr.errors import SearchLimit, SizeLimit, ValidationError
from wcr.minmax import (VHInstance, decide_vh, full_lines, lines_blocked,
                        move_domain, node_budget, oracle_minmax,
                        solve_minmax, verify_vh)
from wcr.oracle import random_vh_instance

F = Fraction
H = F(1, 2)


def grid(a, b, cells, metric="manhattan"):
    sensors = tuple(Sensor(id=i, x=F(x), y=F(y), range=H)
                    for i, (x, y) in enumerate(cells, start=1))
    return Configuration(width=F(a), height=F(b), sensors=sensors,
                         mode="integer", metric=metric)


def vh(cfg, v, h, d):
    return VHInstance(cfg, frozenset(v), frozenset(h), F(d))


def test_full_lines():
    v, h = full_lines(grid(3, 2, [(1, 1)]))
    assert v == frozenset({1, 2, 3}) and h == frozenset({1, 2})


def test_move_domain_sorted_by_distance():
    cfg = grid(3, 3, [(2, 2)])
    dom = move_domain(cfg, 1, F(1))
    assert dom[0] == (F(2), F(2))
    assert set(dom) == {(F(2), F(2)), (F(1), F(2)), (F(3), F(2)),
                        (F(2), F(1)), (F(2), F(3))}


def test_lines_blocked_unions():
    # two sensors half a line apart jointly block the line between them
    pos = [(F(3, 2), F(1)), (F(5, 2), F(1))]
    v, h = lines_blocked(pos, {2}, {1})
    assert v == {2} and h == {1}
    v, _ = lines_blocked([(F(3, 2), F(1))], {2}, set())
    assert v == set()


def test_decide_trivial_and_infeasible():
    cfg = grid(2, 2, [(1, 1), (1, 2)])
    ok, wit = decide_vh(vh(cfg, {1, 2}, {1, 2}, 1))
    assert ok and verify_vh(vh(cfg, {1, 2}, {1, 2}, 1), dict(wit.positions))
    ok0, wit0 = decide_vh(vh(cfg, {1, 2}, {1, 2}, 0))
    assert not ok0 and wit0 is None


def test_decide_monotone_in_budget():
    rng = random.Random(13)
    for _ in range(100):
        inst = random_vh_instance(rng)
        ok, _ = decide_vh(inst)
        bigger = VHInstance(inst.config, inst.v_lines, inst.h_lines,
                            inst.max_move + 1)
        ok2, _ = decide_vh(bigger)
        assert ok2 or not ok


def test_decide_matches_oracle():
    rng = random.Random(21)
    for _ in range(150):
        inst = random_vh_instance(rng)
        assert decide_vh(inst)[0] == oracle_minmax(inst)


def test_verify_rejections():
    cfg = grid(2, 2, [(1, 1), (1, 2)])
    inst = vh(cfg, {1, 2}, {1, 2}, 1)
    good = {1: (F(1), F(1)), 2: (F(2), F(2))}
    assert verify_vh(inst, good)
    assert not verify_vh(inst, {1: (F(1), F(1)), 2: (F(2), F(1))})  # line
    assert not verify_vh(inst, {1: (F(1), F(1)), 2: (F(2), F(3))})  # budget
    assert not verify_vh(inst, {1: (F(1), F(1))})                   # ids
    frac = {1: (F(1), F(1)), 2: (F(2), F(3, 2))}
    assert not verify_vh(inst, frac)
    assert not verify_vh(inst, frac, require_integer=False)         # budget


def test_search_limit():
    cfg = grid(4, 4, [(x, y) for x in (1, 2, 3) for y in (1, 2)
                      ][:6])
    inst = vh(cfg, {1, 2, 3, 4}, {1, 2, 3, 4}, 2)
    with pytest.raises(SearchLimit):
        decide_vh(inst, budget=1)


def test_node_budget_env(monkeypatch):
    monkeypatch.setenv("WCR_NODE_BUDGET", "123")
    assert node_budget() == 123
    assert node_budget(7) == 7
    monkeypatch.delenv("WCR_NODE_BUDGET")
    assert node_budget() == 10 ** 8


def test_solve_examples():
    res = solve_minmax(grid(2, 2, [(1, 1), (1, 2)]))
    assert res.value == F(1)
    sol_costs = solution_costs(grid(2, 2, [(1, 1), (1, 2)]), res.solution)
    assert sol_costs.max_cost == F(1)
    assert is_blocking(grid(2, 2, [(1, 1), (1, 2)]), res.solution).blocking
    res3 = solve_minmax(grid(3, 3, [(1, 1), (1, 2), (1, 3)]))
    assert res3.value == F(2)


def test_solve_zero_when_blocking():
    res = solve_minmax(grid(2, 2, [(1, 1), (2, 2)]))
    assert res.value == 0 and res.value_squared == 0


def test_solve_euclidean_squared():
    cfg = grid(3, 3, [(1, 1), (1, 2), (2, 1)], metric="euclidean")
    res = solve_minmax(cfg)
    man = solve_minmax(grid(3, 3, [(1, 1), (1, 2), (2, 1)]))
    # the three sensors must spread onto a permutation pattern; the
    # diagonal step costs 2 manhattan but only sqrt(2) euclidean
    assert man.value == F(2)
    assert res.value_squared == F(2) and res.value is None
    rep = solution_costs(cfg, res.solution)
    assert rep.max_squared == res.value_squared
    assert is_blocking(cfg, res.solution).blocking


def test_oracle_size_limit():
    cells = [(x, y) for x in range(1, 6) for y in range(1, 6)]
    cfg = grid(5, 5, cells)
    inst = vh(cfg, set(range(1, 6)), set(range(1, 6)), 2)
    with pytest.raises(SizeLimit):
        oracle_minmax(inst)


def test_vh_instance_validation():
    cfg = grid(2, 2, [(1, 1)])
    with pytest.raises(ValidationError):
        VHInstance(cfg, frozenset({3}), frozenset(), F(1))
    with pytest.raises(ValidationError):
        VHInstance(cfg, frozenset(), frozenset(), F(-1))
