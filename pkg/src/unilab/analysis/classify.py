"""Membership in the class U (continuous underlying operations) and the class
U_R (characterized by a set-valued function), with a consistency cross-check."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..axioms import GridSpec, check_axioms
from ..core import Operator, ValidationReport
from ..errors import AxiomError
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig
from .sections import ContinuityResult, DiscontinuitySet, continuity_scan, discontinuity_points, quadrant_deviations, scan_sections
from .structure import level_pairs, underlying_ops
from .svf import SetValuedFunction, characterizing_svf, validate_svf

log = logging.getLogger(__name__)


@dataclass
class Classification:
    in_U: bool
    in_UR: bool
    side_continuous: bool
    witness: tuple[float, float] | None
    t_continuity: ContinuityResult
    s_continuity: ContinuityResult
    svf: SetValuedFunction | None = None
    svf_report: ValidationReport | None = None
    level_set_covered: bool = True
    consistent: bool = True
    discontinuities: DiscontinuitySet | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def pt(p):
            return None if p is None else [float(p[0]), float(p[1])]

        return {
            "in_U": self.in_U,
            "in_UR": self.in_UR,
            "side_continuous": self.side_continuous,
            "witness": pt(self.witness),
            "t_norm_continuous": self.t_continuity.continuous,
            "t_conorm_continuous": self.s_continuity.continuous,
            "t_norm_witness": pt(self.t_continuity.witness),
            "t_conorm_witness": pt(self.s_continuity.witness),
            "level_set_covered": self.level_set_covered,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def _require_axioms(U: Operator, grid: GridSpec, cfg: ToleranceConfig) -> None:
    rep = check_axioms(U, GridSpec(min(grid.n, 129), grid.anchor_points), cfg, assoc_n=25)
    if not rep.ok:
        worst = rep.failures()[0]
        raise AxiomError(f"not a uninorm: {worst}", rep)
    if U.neutral is None:
        raise AxiomError("not a uninorm: no neutral element", rep)


def neither_witness(U: Operator, D: DiscontinuitySet, cfg: ToleranceConfig) -> tuple[tuple[float, float] | None, int]:
    """The discontinuity point failing both one-sided tests by the widest margin (x <= y preferred)."""
    P = D.as_array()
    if not len(P):
        return None, 0
    ld, rd = quadrant_deviations(U, P[:, 0], P[:, 1], cfg)
    bad = (ld > cfg.jump_tol) & (rd > cfg.jump_tol)
    if not np.any(bad):
        return None, 0
    idx = np.nonzero(bad)[0]
    score = np.minimum(ld, rd)
    best = max(idx, key=lambda k: (round(float(score[k]), 9), P[k, 0] <= P[k, 1], -P[k, 0]))
    return (float(P[best, 0]), float(P[best, 1])), int(idx.size)


def classify(U: Operator, grid: GridSpec | None = None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Classification:
    grid = grid or GridSpec()
    _require_axioms(U, grid, cfg)
    T, S = underlying_ops(U)
    tc = continuity_scan(T, GridSpec(grid.n), cfg)
    sc = continuity_scan(S, GridSpec(grid.n), cfg)
    in_U = tc.continuous and sc.continuous

    scan = scan_sections(U, grid, cfg)
    D = discontinuity_points(U, grid, cfg, scan)
    witness, n_bad = neither_witness(U, D, cfg)
    side_ok = witness is None

    notes: list[str] = []
    r = characterizing_svf(U, grid, cfg, strict=False)
    rep = validate_svf(r, U, grid, cfg, D)
    e = float(U.neutral)
    xs = scan.grid
    pairs = level_pairs(U, xs[xs < e - cfg.eq_tol], cfg)
    P = np.column_stack([np.concatenate([pairs.xs, pairs.ys, [e]]), np.concatenate([pairs.ys, pairs.xs, [e]])])
    cell = 1.0 / (grid.n - 1) + 1e-12
    covered = bool(np.all(r.graph_distance(P) <= cell))
    in_UR = rep.ok and covered
    if not rep.ok:
        notes.append("set-valued function fails: " + "; ".join(str(v) for v in rep.violations))
    if not covered:
        notes.append("level set {U = e} is not inside the graph of r")
    if n_bad:
        notes.append(f"{n_bad} discontinuity points are neither left- nor right-continuous")

    # the equivalence is argued through points approached from both sides of e,
    # so it is only checked for proper uninorms (0 < e < 1)
    proper = cfg.eq_tol < e < 1.0 - cfg.eq_tol
    consistent = in_U == (in_UR and side_ok) or not proper
    if not proper:
        notes.append("cross-check skipped: neutral element on the boundary")
    if not consistent:
        msg = (
            f"classification cross-check failed for {U.provenance or 'operator'}: in_U={in_U}, "
            f"in_UR={in_UR}, side_continuous={side_ok}"
        )
        log.warning(msg)
        notes.append("INCONSISTENT: " + msg)
    return Classification(in_U, in_UR, side_ok, witness, tc, sc, r, rep, covered, consistent, D, notes)
