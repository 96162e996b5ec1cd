"""Command-line front end: ``unilab <eval|analyze|plot|verify|fmt>``.

Exit codes: 0 success, 1 verification failures, 2 parse or compile error,
3 carrier violation, 4 axiom failure, 5 unwritable output path.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from .. import __version__
from ..analysis import (
    ClaimStatus,
    GridSpec,
    boundary_params,
    characterizing_svf,
    check_axioms,
    classify,
    discontinuity_points,
    e_band,
    scan_sections,
    verify_theorems,
)
from ..errors import AxiomError, CarrierError, DomainError, UnilabError
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig
from ..registry import Example, example
from ..speclang import compile_spec, format_spec, parse
from . import report
from .svg import render_svg

EXIT_OK, EXIT_VERIFY, EXIT_COMPILE, EXIT_CARRIER, EXIT_AXIOM, EXIT_OUTPUT = 0, 1, 2, 3, 4, 5
OVERLAYS = ("discontinuities", "svf", "both", "none")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- input and output ----------------------------------------------------------------


def read_spec(arg: str) -> str:
    """Inline DSL text, or the contents of a .aop file when ``arg`` names one."""
    path = Path(arg)
    if arg.endswith(".aop") or ("(" not in arg and path.is_file()):
        try:
            return path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CliError(EXIT_COMPILE, f"cannot read spec file {arg}: {exc}") from None
    return arg


def load(arg: str, cfg: ToleranceConfig):
    """Parse and compile; returns (canonical text, operator)."""
    try:
        node = parse(read_spec(arg))
        return format_spec(node), compile_spec(node, cfg)
    except CarrierError as exc:
        raise CliError(EXIT_CARRIER, f"carrier error: {exc}") from None
    except UnilabError as exc:
        raise CliError(EXIT_COMPILE, f"{type(exc).__name__}: {exc}") from None


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename, so readers never see partial output."""
    target = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent if str(target.parent) else ".")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            mask = os.umask(0)
            os.umask(mask)
            os.chmod(tmp, 0o666 & ~mask)
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot write {path}: {exc.strerror or exc}") from None


def emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def tolerances(args) -> ToleranceConfig:
    try:
        return ToleranceConfig(
            eq_tol=args.eq_tol if args.eq_tol is not None else DEFAULT_TOLERANCES.eq_tol,
            jump_tol=args.jump_tol if args.jump_tol is not None else DEFAULT_TOLERANCES.jump_tol,
            bisect_tol=min(DEFAULT_TOLERANCES.bisect_tol, args.eq_tol or DEFAULT_TOLERANCES.bisect_tol),
        )
    except ValueError as exc:
        raise CliError(EXIT_COMPILE, f"bad tolerances: {exc}") from None


def coordinate(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def require_full(op, what: str) -> None:
    if not op.is_full:
        raise CliError(EXIT_CARRIER, f"{what} needs an operator on all of [0, 1]; this one lives on {op.carrier}")


# -- commands ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    cfg = tolerances(args)
    _, op = load(args.spec, cfg)
    try:
        v = op(args.x, args.y)
    except (CarrierError, DomainError) as exc:
        raise CliError(EXIT_CARRIER, f"carrier error: {exc}") from None
    print(f"{v:.12g}")
    return EXIT_OK


def cmd_fmt(args) -> int:
    try:
        text = format_spec(parse(read_spec(args.spec)))
    except UnilabError as exc:
        raise CliError(EXIT_COMPILE, f"{type(exc).__name__}: {exc}") from None
    emit(args, text + "\n")
    return EXIT_OK


def cmd_analyze(args) -> int:
    cfg = tolerances(args)
    spec, op = load(args.spec, cfg)
    require_full(op, "analyze")
    grid = GridSpec(args.grid)
    doc = report.header(spec, cfg, grid.n)
    axioms = check_axioms(op, grid, cfg)
    doc["axioms"] = report.axioms_section(axioms)
    try:
        if not axioms.ok:
            raise AxiomError(f"axiom suite failed: {axioms.failures()[0]}", axioms)
        c = classify(op, grid, cfg)
    except AxiomError as exc:
        doc["error"] = str(exc)
        emit(args, report.render(doc, args.format))
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    e = float(op.neutral)
    A, B = boundary_params(op, cfg)
    a, d = e_band(op, grid, cfg)
    scan = scan_sections(op, grid, cfg)
    doc["classification"] = report.classification_section(c)
    doc["structure"] = report.structure_section(e, A, B, a, d)
    doc["sections"] = report.sections_section(scan, c)
    doc["svf"] = report.svf_section(c.svf, c.svf_report)
    doc["theorems"] = report.theorems_section(verify_theorems(op, grid, cfg))
    emit(args, report.render(doc, args.format))
    return EXIT_OK


def cmd_plot(args) -> int:
    cfg = tolerances(args)
    spec, op = load(args.spec, cfg)
    grid = GridSpec(args.grid)
    D = r = None
    if args.overlay != "none":
        require_full(op, "overlays")
        if op.neutral is None:
            print("axiom failure: overlays need a neutral element", file=sys.stderr)
            return EXIT_AXIOM
        try:
            if args.overlay in ("discontinuities", "both"):
                D = discontinuity_points(op, grid, cfg)
            if args.overlay in ("svf", "both"):
                r = characterizing_svf(op, grid, cfg, strict=False)
        except AxiomError as exc:
            print(f"axiom failure: {exc}", file=sys.stderr)
            return EXIT_AXIOM
    emit(args, render_svg(op, spec, grid.n, D, r))
    return EXIT_OK


def _targets(args, cfg):
    if args.all:
        return [(ex.value, example(ex)) for ex in Example]
    if not args.spec:
        raise CliError(EXIT_COMPILE, "verify needs a spec or --all")
    spec, op = load(args.spec, cfg)
    require_full(op, "verify")
    return [(spec, op)]


def cmd_verify(args) -> int:
    cfg = tolerances(args)
    grid = GridSpec(args.grid)
    results = []
    for name, op in _targets(args, cfg):
        ax = check_axioms(op, grid, cfg)
        th = verify_theorems(op, grid, cfg) if ax.ok and op.neutral is not None else None
        results.append((name, ax, th))
    failures = []
    for name, ax, th in results:
        if not ax.ok or th is None:
            failures.append(f"{name}: axioms")
        elif th is not None:
            failures.extend(f"{name}: claim ({c.number}) {c.name}" for c in th.failures())

    if args.format == "json":
        doc = report.header("--all" if args.all else results[0][0], cfg, grid.n)
        doc["operators"] = [
            {"name": name, "axioms": report.axioms_section(ax), "theorems": None if th is None else report.theorems_section(th)}
            for name, ax, th in results
        ]
        doc["ok"] = not failures
        doc["failures"] = failures
        emit(args, report.render(doc, "json"))
    else:
        emit(args, verify_table(results, cfg, grid.n))
    if failures:
        print("failing claims:\n  " + "\n  ".join(failures), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def verify_table(results, cfg: ToleranceConfig, n: int) -> str:
    lines = [
        f"unilab {__version__} verify: grid={n} eq_tol={cfg.eq_tol:g} jump_tol={cfg.jump_tol:g}",
    ]
    if len(results) == 1:
        name, ax, th = results[0]
        lines.append(f"spec: {name}")
        lines.append(f"axioms: {'pass' if ax.ok else 'FAIL'}")
        if th is not None:
            lines.append(f"in_U: {'true' if th.in_U else 'false'}")
            lines.append(th.table())
        return "\n".join(lines) + "\n"
    names = [name for name, _, _ in results]
    widths = [max(len(nm), 5) for nm in names]
    lines.append(f"{'claim':<44} " + " ".join(f"{nm:<{w}}" for nm, w in zip(names, widths)))
    row = [("pass" if ax.ok else "FAIL") for _, ax, _ in results]
    lines.append(f"{'axioms':<44} " + " ".join(f"{s:<{w}}" for s, w in zip(row, widths)))
    row = [("-" if th is None else ("true" if th.in_U else "false")) for _, _, th in results]
    lines.append(f"{'in class U':<44} " + " ".join(f"{s:<{w}}" for s, w in zip(row, widths)))
    claims = next((th.claims for _, _, th in results if th is not None), [])
    for k, claim in enumerate(claims):
        cells = ["-" if th is None else th.claims[k].status.value for _, _, th in results]
        label = f"({claim.number}) {claim.name}"[:44]
        lines.append(f"{label:<44} " + " ".join(f"{s:<{w}}" for s, w in zip(cells, widths)))
    notes = [
        f"{name} {c.row()}"
        for name, _, th in results if th is not None
        for c in th.claims if c.status is not ClaimStatus.PASS
    ]
    if notes:
        lines.append("")
        lines.append("non-pass rows:")
        lines.extend("  " + s for s in notes)
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=257, help="points per axis (default 257)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--eq-tol", type=float, default=None)
    common.add_argument("--jump-tol", type=float, default=None)

    p = argparse.ArgumentParser(prog="unilab", description="Construct and analyse t-norms, t-conorms and uninorms.")
    p.add_argument("--version", action="version", version=f"unilab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate U(x, y)")
    s.add_argument("spec", help="inline spec or .aop file")
    s.add_argument("x", type=coordinate)
    s.add_argument("y", type=coordinate)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("analyze", parents=[common], help="classification, structure, sections, SVF and claims")
    s.add_argument("spec")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("plot", parents=[common], help="SVG heatmap with optional overlays")
    s.add_argument("spec")
    s.add_argument("--overlay", choices=OVERLAYS, default="none")
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("verify", parents=[common], help="run the structural claim battery")
    s.add_argument("spec", nargs="?")
    s.add_argument("--all", action="store_true", help="every registry example")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fmt", parents=[common], help="print the canonical form of a spec")
    s.add_argument("spec")
    s.set_defaults(func=cmd_fmt)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.grid < 3:
        print("unilab: --grid must be at least 3", file=sys.stderr)
        return EXIT_COMPILE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"unilab: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
