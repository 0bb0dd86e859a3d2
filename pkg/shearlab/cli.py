"""Command-line front end: render, surface, verify, endpoints, serve."""

import argparse
import logging
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

import uvicorn
from pydantic import ValidationError

from shearlab.core.config import get_settings
from shearlab.core.exceptions import NumericalError, ShearLabError
from shearlab.models.grid import DiskGrid, RenderJob
from shearlab.models.maps import (
    ConformalMapSpec,
    FourSlitMap,
    NGonParams,
    RegularNGonMap,
    SlitMapParams,
)
from shearlab.models.numerics import QuadratureConfig
from shearlab.models.shear import MonomialDilatation
from shearlab.services.maps import check_halfline_anchors, slit_omitted_halflines
from shearlab.services.render import render_map, render_surface
from shearlab.services.verify import SCOPES, Scope, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _add_map_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("map")
    group.add_argument("--map", choices=("slit", "ngon"), default="slit")
    group.add_argument("--A", type=float, default=1.0, help="logarithmic weight")
    group.add_argument("--B", type=float, default=1.0, help="rational weight")
    branch = group.add_mutually_exclusive_group()
    branch.add_argument("--c", type=float, help="c = -2 cos(gamma), in [-2, 2]")
    branch.add_argument("--gamma", type=float, help="gamma in radians, in (0, pi)")
    branch.add_argument(
        "--gamma-over-pi", type=Fraction, help="gamma / pi as an exact fraction, e.g. 2/3"
    )
    group.add_argument("--n", type=int, default=3, help="polygon sides")
    group.add_argument("--omega-power", type=int, default=0, help="m in omega = z^m")


def _add_output_arguments(
    parser: argparse.ArgumentParser, formats: Sequence[str], default: str
) -> None:
    group = parser.add_argument_group("grid and output")
    group.add_argument("--grid-rays", type=int, default=16)
    group.add_argument("--grid-circles", type=int, default=12)
    group.add_argument("--r-max", type=float, default=0.98)
    group.add_argument("--samples", type=int, default=256, help="points per curve")
    group.add_argument("--format", choices=formats, default=default)
    group.add_argument("--out", type=Path, help="output file (stdout when omitted)")
    group.add_argument("--tol", type=float, help="relative quadrature tolerance")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per front-end operation."""
    parser = argparse.ArgumentParser(
        prog="harmonic-shears",
        description="Harmonic shears of slit and polygon maps and their minimal surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser("render", help="image of the polar grid (svg or csv)")
    _add_map_arguments(render)
    _add_output_arguments(render, ("svg", "csv"), "svg")
    render.add_argument("--target", choices=("shear", "map"), default="shear")

    surface = sub.add_parser("surface", help="minimal-surface mesh (obj)")
    _add_map_arguments(surface)
    _add_output_arguments(surface, ("obj",), "obj")

    verify = sub.add_parser("verify", help="run the invariant suite")
    verify.add_argument("scope", nargs="?", choices=SCOPES, default="all")
    verify.add_argument("--samples", type=int, help="random points per configuration")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--tol", type=float, help="relative quadrature tolerance")

    endpoints = sub.add_parser("endpoints", help="omitted half-lines of a slit map")
    _add_map_arguments(endpoints)
    endpoints.add_argument("--r", type=float, default=0.9999, help="tracing radius")

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    return parser


def _slit_params(args: argparse.Namespace) -> SlitMapParams:
    if args.gamma_over_pi is not None:
        return SlitMapParams.from_gamma_fraction(args.A, args.B, args.gamma_over_pi)
    if args.gamma is not None:
        return SlitMapParams(A=args.A, B=args.B, gamma=args.gamma)
    return SlitMapParams.from_c(args.A, args.B, 0.0 if args.c is None else args.c)


def map_from_args(args: argparse.Namespace) -> ConformalMapSpec:
    """Catalog map described by the map flags."""
    if args.map == "ngon":
        return RegularNGonMap(params=NGonParams(n=args.n))
    return FourSlitMap(params=_slit_params(args))


def job_from_args(args: argparse.Namespace) -> RenderJob:
    """Render job described by the map, grid and output flags."""
    return RenderJob(
        map=map_from_args(args),
        dilatation=MonomialDilatation(m=args.omega_power),
        grid=DiskGrid(
            n_rays=args.grid_rays,
            n_circles=args.grid_circles,
            r_max=args.r_max,
            samples_per_curve=args.samples,
        ),
        format=args.format,
        target=getattr(args, "target", "shear"),
        out=args.out,
        rel_tol=args.tol,
    )


def _emit(payload: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(payload)


def _cmd_render(args: argparse.Namespace) -> int:
    job = job_from_args(args)
    _emit(render_map(job), job.out)
    return EXIT_OK


def _cmd_surface(args: argparse.Namespace) -> int:
    job = job_from_args(args)
    _emit(render_surface(job), job.out)
    return EXIT_OK


def verify_command(
    scope: Scope = "all",
    samples: int | None = None,
    seed: int | None = None,
    tol: float | None = None,
) -> int:
    """Print the invariant report for scope; 0 iff every invariant holds."""
    cfg = None
    if tol is not None:
        cfg = QuadratureConfig.from_settings().model_copy(update={"rel_tol": tol})
    report = run_verification(scope, samples=samples, seed=seed, cfg=cfg)
    for line in report.lines():
        print(line)
    print(f"{len(report.checks) - len(report.failed)}/{len(report.checks)} invariants hold")
    return EXIT_OK if report.success else EXIT_INVARIANT


def _cmd_verify(args: argparse.Namespace) -> int:
    return verify_command(args.scope, samples=args.samples, seed=args.seed, tol=args.tol)


def _cmd_endpoints(args: argparse.Namespace) -> int:
    if args.map != "slit":
        raise ValueError("endpoints are defined for the slit map only")
    params = _slit_params(args)
    check = check_halfline_anchors(params, args.r)
    lines = slit_omitted_halflines(params)
    for line, traced in zip(lines, check.traced, strict=True):
        towards = "+inf" if line.direction == 1 else "-inf"
        print(
            f"anchor {line.anchor.real:.12g} {line.anchor.imag:+.12g}i -> {towards}"
            f"   traced {traced.real:.12g} {traced.imag:+.12g}i"
        )
    return EXIT_OK if check.success else EXIT_INVARIANT


def _cmd_serve(args: argparse.Namespace) -> int:
    settings = get_settings()
    uvicorn.run(
        "shearlab.main:app",
        host=args.host or settings.host,
        port=args.port or settings.port,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


COMMANDS = {
    "render": _cmd_render,
    "surface": _cmd_surface,
    "verify": _cmd_verify,
    "endpoints": _cmd_endpoints,
    "serve": _cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit status."""
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NumericalError as e:
        logger.error(f"numerical failure: {e}")
        return EXIT_NUMERICAL
    except (ValidationError, ShearLabError, ValueError) as e:
        logger.error(f"invalid input: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"cannot write output: {e}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
