"""JSON encodings shared by the CLI and the report writer.

Exact scalars are strings in ``p/q`` or ``u+v*sqrt(d)`` form, complex
approximations carry 17 significant digits plus their tolerance.
"""

from __future__ import annotations

import json

from .projective import PAIRS, TRIPLES, Configuration, Plane, pair_label, triple_label
from .scalars import ComplexApprox, format_scalar, parse_scalar


def scalar_out(x):
    if isinstance(x, ComplexApprox):
        return {"re": f"{x.re:.16e}", "im": f"{x.im:.16e}", "tol": x.tol}
    return format_scalar(x)


def scalar_in(v):
    if isinstance(v, dict):
        return ComplexApprox(float(v["re"]), float(v["im"]), tol=float(v.get("tol", 1e-9)))
    return parse_scalar(v)


def _vec_out(v):
    return None if v is None else [scalar_out(x) for x in v]


def _vec_in(v):
    return None if v is None else [scalar_in(x) for x in v]


def configuration_to_dict(cfg: Configuration) -> dict:
    return {
        "plane": None if cfg.plane is None else _vec_out(cfg.plane.alpha),
        "kind": cfg.kind,
        "basis": None if cfg.basis is None else [_vec_out(r) for r in cfg.basis],
        "points": {pair_label(p): _vec_out(cfg.points[pair_label(p)]) for p in PAIRS},
        "ambient": {k: _vec_out(v) for k, v in cfg.ambient.items()},
        "lines": {triple_label(t): _vec_out(cfg.lines[triple_label(t)]) for t in TRIPLES},
        "incidence": cfg.incidence,
        "special_points": ["S" + "".join(map(str, p)) for p in cfg.special_points],
        "four_point_lines": ["l" + "".join(map(str, t)) for t in cfg.four_point_lines()],
    }


def configuration_from_dict(d: dict) -> Configuration:
    return Configuration(
        plane=None if d["plane"] is None else Plane(_vec_in(d["plane"])),
        kind=int(d["kind"]),
        basis=None if d["basis"] is None else [_vec_in(r) for r in d["basis"]],
        points={k: _vec_in(v) for k, v in d["points"].items()},
        ambient={k: _vec_in(v) for k, v in d["ambient"].items()},
        lines={k: _vec_in(v) for k, v in d["lines"].items()},
        incidence=[list(map(bool, r)) for r in d["incidence"]],
        special_points=[tuple(int(c) for c in s[1:]) for s in d["special_points"]],
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
