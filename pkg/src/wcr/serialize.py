"""Canonical JSON serialization for instances, solutions and formulas.

Rationals are written as "p/q" (or a bare integer string) and parsed
exactly; decimal strings like "0.5" are accepted on input.  Output is
canonical: sensors sorted by id, fixed key order, so identical values
serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import Configuration, Sensor, Solution, rat, rat_str
from .errors import ParseError, ValidationError


def _get(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"missing field {where}.{key}")
    return obj[key]


def _rat_field(obj: dict, key: str, where: str) -> Fraction:
    value = _get(obj, key, where)
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError, ValidationError):
        raise ParseError(f"bad rational at {where}.{key}: {value!r}") from None


def _int_field(obj: dict, key: str, where: str) -> int:
    value = _get(obj, key, where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"expected integer at {where}.{key}: {value!r}")
    return value


def _loads(data) -> Any:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None


def config_from_obj(obj: dict) -> Configuration:
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    rect = _get(obj, "rect", "$")
    if not isinstance(rect, dict):
        raise ParseError("$.rect must be an object")
    sensors_obj = _get(obj, "sensors", "$")
    if not isinstance(sensors_obj, list):
        raise ParseError("$.sensors must be an array")
    sensors = []
    for i, s in enumerate(sensors_obj):
        where = f"$.sensors[{i}]"
        if not isinstance(s, dict):
            raise ParseError(f"{where} must be an object")
        sensors.append(Sensor(
            id=_int_field(s, "id", where),
            x=_rat_field(s, "x", where),
            y=_rat_field(s, "y", where),
            range=_rat_field(s, "range", where)))
    return Configuration(
        width=_rat_field(rect, "width", "$.rect"),
        height=_rat_field(rect, "height", "$.rect"),
        sensors=tuple(sensors),
        mode=_get(obj, "mode", "$"),
        metric=obj.get("metric", "manhattan"))


def read_config(data) -> Configuration:
    return config_from_obj(_loads(data))


def config_to_obj(config: Configuration) -> dict:
    return {
        "mode": config.mode,
        "metric": config.metric,
        "rect": {"width": rat_str(config.width),
                 "height": rat_str(config.height)},
        "sensors": [
            {"id": s.id, "x": rat_str(s.x), "y": rat_str(s.y),
             "range": rat_str(s.range)}
            for s in sorted(config.sensors, key=lambda s: s.id)],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_config(config: Configuration) -> str:
    return dumps(config_to_obj(config))


def read_solution(data) -> Solution:
    obj = _loads(data)
    if not isinstance(obj, dict):
        raise ParseError("solution must be a JSON object")
    entries = _get(obj, "positions", "$")
    if not isinstance(entries, list):
        raise ParseError("$.positions must be an array")
    positions = {}
    for i, e in enumerate(entries):
        where = f"$.positions[{i}]"
        if not isinstance(e, dict):
            raise ParseError(f"{where} must be an object")
        sid = _int_field(e, "id", where)
        if sid in positions:
            raise ParseError(f"{where}: duplicate id {sid}")
        positions[sid] = (_rat_field(e, "x", where), _rat_field(e, "y", where))
    return Solution(positions)


def write_solution(sol: Solution) -> str:
    return dumps({"positions": [
        {"id": sid, "x": rat_str(x), "y": rat_str(y)}
        for sid, (x, y) in sorted(sol.positions.items())]})


# VH instances reuse the configuration schema plus v_lines/h_lines/max_move.

def read_vh(data):
    from .minmax import VHInstance
    obj = _loads(data)
    config = config_from_obj(obj)
    v = _get(obj, "v_lines", "$")
    h = _get(obj, "h_lines", "$")
    if not isinstance(v, list) or not isinstance(h, list):
        raise ParseError("$.v_lines and $.h_lines must be arrays")
    return VHInstance(config=config,
                      v_lines=frozenset(v), h_lines=frozenset(h),
                      max_move=_rat_field(obj, "max_move", "$"))


def write_vh(inst) -> str:
    obj = config_to_obj(inst.config)
    obj["v_lines"] = sorted(inst.v_lines)
    obj["h_lines"] = sorted(inst.h_lines)
    obj["max_move"] = rat_str(inst.max_move)
    return dumps(obj)


def read_instance(data):
    """Dispatch: VHInstance if line sets are present, else Configuration."""
    obj = _loads(data)
    if isinstance(obj, dict) and "v_lines" in obj:
        return read_vh(data)
    return config_from_obj(obj)


def write_instance(inst) -> str:
    if isinstance(inst, Configuration):
        return write_config(inst)
    return write_vh(inst)


def read_formula(data):
    from .reductions import Max2Sat3Occ, Sat3_22
    obj = _loads(data)
    if not isinstance(obj, dict):
        raise ParseError("formula must be a JSON object")
    dialect = _get(obj, "dialect", "$")
    n = _int_field(obj, "variables", "$")
    clauses = _get(obj, "clauses", "$")
    if not isinstance(clauses, list):
        raise ParseError("$.clauses must be an array")
    parsed = []
    for i, clause in enumerate(clauses):
        if not isinstance(clause, list) or not all(
                isinstance(l, int) and not isinstance(l, bool) and l != 0
                for l in clause):
            raise ParseError(f"$.clauses[{i}] must be nonzero integers")
        parsed.append(tuple(clause))
    if dialect == "max2sat-3occ":
        return Max2Sat3Occ(n=n, clauses=tuple(parsed),
                           t=_int_field(obj, "t", "$"))
    if dialect == "3sat22":
        return Sat3_22(n=n, clauses=tuple(parsed))
    raise ParseError(f"unknown dialect {dialect!r}")


def read_meta(data):
    """Reduction metadata (forward/backward mapping tables)."""
    from .minmax import VHInstance  # noqa: F401  (via read_vh)
    from .reductions import MinMaxMapping, MinNumMeta, VHMeta
    obj = _loads(data)
    kind = _get(obj, "kind", "$")
    if kind == "minnum":
        return MinNumMeta(
            n=obj["n"], m=obj["m"], t=obj["t"], side=obj["side"],
            occ_sensor={(v, c): sid for v, c, sid in obj["occ_sensor"]},
            alpha={int(k): v for k, v in obj["alpha"].items()},
            beta={int(k): v for k, v in obj["beta"].items()})
    if kind == "vh":
        return VHMeta(
            n=obj["n"], m=obj["m"],
            var_sensor={(v, role): sid for v, role, sid in obj["var_sensor"]},
            clause_sensor={(j, p): sid for j, p, sid in obj["clause_sensor"]},
            slot_row={int(k): v for k, v in obj["slot_row"].items()},
            triples=tuple(tuple(t) for t in obj["triples"]))
    if kind == "minmax":
        return MinMaxMapping(
            vh=read_vh(json.dumps(obj["vh"])),
            padded=config_from_obj(obj["padded"]),
            dx=obj["dx"], dy=obj["dy"],
            v_ids=tuple(obj["v_ids"]), h_ids=tuple(obj["h_ids"]))
    raise ParseError(f"unknown meta kind {kind!r}")


def write_meta(meta) -> str:
    from .reductions import MinMaxMapping, MinNumMeta, VHMeta
    if isinstance(meta, MinNumMeta):
        obj = {"kind": "minnum", "n": meta.n, "m": meta.m, "t": meta.t,
               "side": meta.side,
               "occ_sensor": [[v, c, sid] for (v, c), sid
                              in sorted(meta.occ_sensor.items())],
               "alpha": {str(k): v for k, v in sorted(meta.alpha.items())},
               "beta": {str(k): v for k, v in sorted(meta.beta.items())}}
    elif isinstance(meta, VHMeta):
        obj = {"kind": "vh", "n": meta.n, "m": meta.m,
               "var_sensor": [[v, role, sid] for (v, role), sid
                              in sorted(meta.var_sensor.items())],
               "clause_sensor": [[j, p, sid] for (j, p), sid
                                 in sorted(meta.clause_sensor.items())],
               "slot_row": {str(k): v for k, v
                            in sorted(meta.slot_row.items())},
               "triples": [list(t) for t in meta.triples]}
    elif isinstance(meta, MinMaxMapping):
        obj = {"kind": "minmax", "vh": json.loads(write_vh(meta.vh)),
               "padded": config_to_obj(meta.padded),
               "dx": meta.dx, "dy": meta.dy,
               "v_ids": list(meta.v_ids), "h_ids": list(meta.h_ids)}
    else:
        raise ValidationError(f"not a serializable meta: {type(meta)}")
    return dumps(obj)


def write_formula(f) -> str:
    from .reductions import Max2Sat3Occ
    obj = {"dialect": "max2sat-3occ" if isinstance(f, Max2Sat3Occ) else "3sat22",
           "variables": f.n,
           "clauses": [list(c) for c in f.clauses]}
    if isinstance(f, Max2Sat3Occ):
        obj["t"] = f.t
    return dumps(obj)
