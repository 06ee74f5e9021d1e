"""Command-line driver.

Exit codes: 0 ok, 2 parse error, 3 size mismatch, 4 degenerate input,
5 root-finding failure, 6 infeasible design, 7 verification failed.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .design import DesignStatus, design_general, lambda_region, region_contains
from .errors import ConvergenceFailure, DegeneratePolygon, InvalidPolygon, SizeMismatch
from .geometry import normalize_shape
from .spectral import spectrum
from .svg import region_svg, trajectory_svg
from .transform import apply_step, fitted_decay_rate, iterate

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SIZE = 3
EXIT_DEGENERATE = 4
EXIT_CONVERGENCE = 5
EXIT_INFEASIBLE = 6
EXIT_VERIFY = 7

VERIFY_TOL = 1e-6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str, kind: str) -> np.ndarray:
    reader = fileio.read_polygon if kind == "vertices" else fileio.read_weights
    try:
        return reader(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}") from None
    except fileio.FileFormatError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _same_size(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.size != b.size:
        raise CliError(EXIT_SIZE, f"size mismatch: {what} ({a.size} vs {b.size})")


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"`` (a bare ``"re"`` means zero imaginary part)."""
    parts = text.split(",")
    if len(parts) > 2:
        raise ValueError(f"expected re,im but got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"expected re,im but got {text!r}") from None
    z = complex(vals[0], vals[1] if len(vals) == 2 else 0.0)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value {text!r}")
    return z


def cmd_iterate(args) -> int:
    p0 = _load(args.polygon, "vertices")
    w = _load(args.weights, "weights")
    _same_size(p0, w, "polygon vs weights")
    target = None
    if args.target:
        target = _load(args.target, "vertices")
        _same_size(p0, target, "polygon vs target")
        try:
            normalize_shape(target)
        except DegeneratePolygon:
            raise CliError(EXIT_DEGENERATE, "target: all vertices coincide") from None
    try:
        traj = iterate(p0, w, args.steps, target=target)
    except DegeneratePolygon:
        raise CliError(EXIT_DEGENERATE, "polygon: all vertices coincide") from None
    _emit("".join(line + "\n" for line in fileio.trajectory_lines(traj)), args.out)
    if args.svg:
        Path(args.svg).write_text(trajectory_svg([f.shape for f in traj.frames]), encoding="utf-8")
    if traj.collapsed:
        print(f"iterate collapsed to a point polygon after step {traj.frames[-1].step}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_spectrum(args) -> int:
    w = _load(args.weights, "weights")
    try:
        spec = spectrum(w)
    except ConvergenceFailure as exc:
        raise CliError(EXIT_CONVERGENCE, str(exc)) from None
    rows = [
        {"re": float(mu.real), "im": float(mu.imag), "provenance": flag, "residual": float(res)}
        for mu, flag, res in zip(spec.eigenvalues_of_M, spec.provenance, spec.residuals)
    ]
    if args.json:
        sys.stdout.write(fileio.dumps(rows) + "\n")
    else:
        for r in rows:
            print(f"{r['re'] + 0.0:.12g} {r['im'] + 0.0:.12g} {r['provenance']} {r['residual']:.3e}")
    return EXIT_OK


def _report(result) -> dict:
    rep = {
        "status": result.status.value,
        "anchor": result.anchor,
        "lambda": result.lam,
        "dominant": result.dominant,
        "competing": list(result.competing),
        "predicted_rate": result.predicted_rate,
        "margin": result.margin,
        "regions": [r.describe() for r in result.regions],
        "weights": None if result.weights is None else fileio.pairs(result.weights),
    }
    if result.detail:
        rep["detail"] = result.detail
    return rep


def cmd_design(args) -> int:
    v = _load(args.target, "vertices")
    anchor = "best" if args.anchor == "best" else int(args.anchor)
    result = design_general(v, seed=args.seed, anchor=anchor)
    if result.status is DesignStatus.DEGENERATE_TARGET:
        print(f"target: {result.detail}", file=sys.stderr)
        if args.report:
            sys.stdout.write(fileio.dumps(_report(result)) + "\n")
        return EXIT_DEGENERATE
    if result.feasible:
        doc = fileio.weights_document(result.weights)
        if args.out:
            _emit(doc, args.out)
        elif not args.report:
            sys.stdout.write(doc)
    else:
        print(f"design {result.status.value}: {result.detail}", file=sys.stderr)
    if args.report:
        sys.stdout.write(fileio.dumps(_report(result)) + "\n")
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_region(args) -> int:
    if not args.mu:
        raise CliError(EXIT_PARSE, "--mu: at least one value required")
    mus = []
    for text in args.mu:
        try:
            mus.append(parse_complex(text))
        except ValueError as exc:
            raise CliError(EXIT_PARSE, f"--mu: {exc}") from None
    if args.samples < 1 or not args.extent > 0:
        raise CliError(EXIT_PARSE, "--samples must be >= 1 and --extent > 0")
    regions = [lambda_region(mu) for mu in mus]
    for mu, r in zip(mus, regions):
        print(f"mu ({mu.real + 0.0:.12g},{mu.imag + 0.0:.12g}): {r.describe()}")
    side = max(1, math.ceil(math.sqrt(args.samples)))
    ticks = args.extent * ((np.arange(side) + 0.5) / side * 2.0 - 1.0)
    grid = (ticks[None, :] + 1j * ticks[:, None]).ravel()
    inside = np.ones(grid.size, dtype=bool)
    for r in regions:
        inside &= region_contains(r, grid)
    print(f"intersection fraction {inside.mean():.6f} of {grid.size} samples in [-{args.extent:g},{args.extent:g}]^2")
    if args.svg:
        Path(args.svg).write_text(region_svg(regions, args.extent, inside, grid), encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    v = _load(args.target, "vertices")
    w = _load(args.weights, "weights")
    _same_size(v, w, "target vs weights")
    try:
        normalize_shape(v)
    except DegeneratePolygon:
        raise CliError(EXIT_DEGENERATE, "target: all vertices coincide") from None

    # the designed eigenvector may be any translate of the target; work modulo translation
    t = v - v.mean()
    mt = apply_step(t, w)
    mt -= mt.mean()
    mu_t = complex(np.vdot(t, mt) / np.vdot(t, t))
    eig_residual = float(np.linalg.norm(mt - mu_t * t) / np.linalg.norm(t))
    try:
        ev = list(spectrum(w).eigenvalues_of_M)
    except ConvergenceFailure as exc:
        raise CliError(EXIT_CONVERGENCE, str(exc)) from None
    for ref in (1.0, mu_t):
        ev.pop(int(np.argmin([abs(e - ref) for e in ev])))
    max_comp = max((abs(e) for e in ev), default=0.0)
    dominant = abs(mu_t) > max_comp

    rng = np.random.default_rng(args.seed)
    start = rng.normal(size=v.size) + 1j * rng.normal(size=v.size)
    traj = iterate(start, w, args.steps, target=v)
    final = traj.frames[-1].distance
    rate = fitted_decay_rate(traj.distances)
    print(f"target_eigenvalue {mu_t.real + 0.0:.12g} {mu_t.imag + 0.0:.12g}")
    print(f"eigen_residual {eig_residual:.3e}")
    print(f"dominant {'yes' if dominant else 'no'} (|target| {abs(mu_t):.12g}, max competing {max_comp:.12g})")
    print(f"steps {traj.frames[-1].step}{' collapsed' if traj.collapsed else ''}")
    print(f"final_distance {final:.3e}")
    print(f"fitted_rate {'n/a' if rate is None else f'{rate:.6g}'}")
    return EXIT_OK if final < VERIFY_TOL else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_PARSE, f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polytrans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("iterate", help="run the transformation and write a JSON-lines trajectory")
    p.add_argument("polygon")
    p.add_argument("weights")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--target")
    p.add_argument("--svg")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("spectrum", help="eigenvalues of the transition matrix")
    p.add_argument("weights")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("design", help="weights whose iteration converges to a target shape")
    p.add_argument("target")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--report", action="store_true")
    p.add_argument("--anchor", default="0", help='vertex index to translate to 0, or "best"')
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("region", help="describe and sample the admissible scaling regions")
    p.add_argument("--mu", action="append", default=[], help="re,im (use --mu=-1,0 for negatives)")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--extent", type=float, default=4.0)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify", help="check that weights drive the iteration to a target")
    p.add_argument("target")
    p.add_argument("weights")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "steps", 0) < 0:
            raise CliError(EXIT_PARSE, "--steps must be nonnegative")
        if getattr(args, "anchor", "best") != "best":
            try:
                int(args.anchor)
            except ValueError:
                raise CliError(EXIT_PARSE, f"--anchor: expected an integer or 'best', got {args.anchor!r}") from None
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (InvalidPolygon, SizeMismatch) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SIZE if isinstance(exc, SizeMismatch) else EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
