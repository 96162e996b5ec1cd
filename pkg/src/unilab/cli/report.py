"""Report documents: one nested mapping rendered either as key: value lines or as JSON.

Both renderings come from the same normalised document, so they carry identical
content. Floats are rounded to 12 significant digits; ordering is fixed by
construction, never by hashing.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .. import __version__
from ..analysis import (
    Classification,
    SectionScan,
    SetValuedFunction,
    TheoremSuiteReport,
)
from ..axioms import AxiomReport
from ..core import ValidationReport
from ..numerics import ToleranceConfig


def num(v):
    """Deterministic scalar: 12 significant digits, non-finite values as strings."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    v = float(f"{v:.12g}")
    return 0.0 if v == 0 else v


def point(p) -> list | None:
    return None if p is None else [num(c) for c in p]


def header(spec: str, cfg: ToleranceConfig, grid: int | None = None) -> dict:
    doc = {
        "tool": "unilab",
        "version": __version__,
        "spec": spec,
        "tolerances": {"eq_tol": num(cfg.eq_tol), "jump_tol": num(cfg.jump_tol), "bisect_tol": num(cfg.bisect_tol)},
    }
    if grid is not None:
        doc["grid"] = grid
    return doc


def axioms_section(rep: AxiomReport) -> dict:
    out: dict = {"ok": rep.ok}
    for name, r in rep.results.items():
        out[name] = {
            "status": "skipped" if r.skipped else ("pass" if r.passed else "fail"),
            "max_deviation": num(r.max_deviation),
            "witness": point(r.witness) if r.witness and not (r.passed or r.skipped) else None,
        }
    return out


def classification_section(c: Classification) -> dict:
    d = c.to_dict()
    return {
        "in_U": d["in_U"],
        "in_UR": d["in_UR"],
        "side_continuous": d["side_continuous"],
        "witness_point": point(c.witness),
        "t_norm_continuous": d["t_norm_continuous"],
        "t_norm_witness": point(c.t_continuity.witness),
        "t_conorm_continuous": d["t_conorm_continuous"],
        "t_conorm_witness": point(c.s_continuity.witness),
        "level_set_covered": d["level_set_covered"],
        "consistent": d["consistent"],
        "notes": list(d["notes"]),
    }


def structure_section(e: float, A: float, B: float, a: float, d: float) -> dict:
    return {"e": num(e), "A": num(A), "B": num(B), "a": num(a), "d": num(d)}


def sections_section(scan: SectionScan, c: Classification) -> dict:
    counts = [len(p.jumps) for p in scan.profiles]
    jumping = [p for p in scan.profiles if p.jumps]
    D = c.discontinuities
    return {
        "profiled": len(scan.profiles),
        "with_jump": len(jumping),
        "max_jumps_per_section": max(counts, default=0),
        "first_jump": point((jumping[0].x, jumping[0].jump_at)) if jumping else None,
        "last_jump": point((jumping[-1].x, jumping[-1].jump_at)) if jumping else None,
        "discontinuity_points": 0 if D is None else len(D.points),
        "resolution_limited": [] if D is None else [point(p) for p in D.resolution_limited],
    }


def svf_section(r: SetValuedFunction | None, rep: ValidationReport | None) -> dict:
    if r is None:
        return {"available": False}
    out: dict = {
        "valid": bool(rep is not None and rep.ok),
        "pieces": [p.describe() for p in r.pieces],
        "params": {k: num(v) for k, v in sorted(r.params.items()) if isinstance(v, (int, float, np.floating))},
    }
    if rep is not None:
        if "max_cover_distance" in rep.info:
            out["max_cover_distance"] = num(rep.info["max_cover_distance"])
        out["violations"] = [str(v) for v in rep.violations]
    return out


def theorems_section(t: TheoremSuiteReport) -> dict:
    return {
        "in_U": t.in_U,
        "ok": t.ok,
        "claims": [
            {
                "number": c.number,
                "name": c.name,
                "status": c.status.value,
                "witness": point(c.witness) if c.witness else None,
                "detail": c.detail,
            }
            for c in t.claims
        ],
    }


# -- rendering -------------------------------------------------------------------


def _scalar_text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _is_point(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)


def _lines(prefix: str, v, out: list[str]) -> None:
    if isinstance(v, dict):
        for k, item in v.items():
            _lines(f"{prefix}.{k}" if prefix else k, item, out)
    elif _is_point(v):
        out.append(f"{prefix}: (" + ", ".join(_scalar_text(c) for c in v) + ")")
    elif isinstance(v, list):
        if not v:
            out.append(f"{prefix}: []")
        for i, item in enumerate(v):
            _lines(f"{prefix}[{i}]", item, out)
    else:
        out.append(f"{prefix}: {_scalar_text(v)}")


def render(doc: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    out: list[str] = []
    _lines("", doc, out)
    return "\n".join(out) + "\n"
