"""
Command-line front end.

Example:
  python -m shellscatter phase-shift --config shells.json --ell 0 --kmin 0.01 --kmax 5 --points 200 --log
  python -m shellscatter threshold --R1 1 --R2 2 --theta1 1
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, NamedTuple, Optional

from pydantic import ValidationError

from shellscatter.core.concurrency import ordered_map
from shellscatter.core.config import settings
from shellscatter.core.errors import ConfigError, InvalidEnergyError, InvalidGridError, ShellScatterError
from shellscatter.core.formatting import to_csv, to_json
from shellscatter.schemas.shell_config import as_double_shell, check_shells, load_config
from shellscatter.schemas.sweep import Spacing, SweepSpec
from shellscatter.services import doubleshell, oracle, smatrix, spectral

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

# k, kappa_max, grid and step arguments are rejected with these before any numerics run.
USAGE_ERRORS = (ConfigError, ValidationError, InvalidEnergyError, InvalidGridError)


class CommandOutput(NamedTuple):
    text: str
    status: int = EXIT_OK


def _sweep(args: argparse.Namespace, ell_list: List[int]) -> SweepSpec:
    return SweepSpec(
        k_min=args.kmin,
        k_max=args.kmax,
        points=args.points,
        spacing=Spacing.LOG if args.log else Spacing.LINEAR,
        ell_list=ell_list,
    )


def cmd_phase_shift(args: argparse.Namespace) -> CommandOutput:
    cfg = load_config(args.config)
    sweep = _sweep(args, [args.ell])
    results, curve = smatrix.sweep_channel(cfg, args.ell, sweep.k_grid(), args.threads)
    rows = [
        [result.k, delta, result.s_value.real, result.s_value.imag, abs(result.det_plus)]
        for result, delta in zip(results, curve.deltas)
    ]
    return CommandOutput(to_csv(["k", "delta", "re_S", "im_S", "abs_det"], rows))


def cmd_cross_section(args: argparse.Namespace) -> CommandOutput:
    cfg = load_config(args.config)
    sweep = _sweep(args, [0])
    grid = sweep.k_grid()
    # One column set for the whole sweep, sized for the largest k.
    ell_max = args.lmax if args.lmax is not None else smatrix.default_ell_max(cfg, float(grid[-1]))
    sections = ordered_map(
        lambda k: smatrix.total_cross_section(cfg, float(k), ell_max), list(grid), args.threads
    )
    header = ["k", "sigma_total"] + [f"sigma_{ell}" for ell in range(ell_max + 1)]
    rows = [[section.k, section.sigma_total, *section.partial_terms] for section in sections]
    return CommandOutput(to_csv(header, rows))


def cmd_scattering_length(args: argparse.Namespace) -> CommandOutput:
    cfg = as_double_shell(load_config(args.config))
    return CommandOutput(to_json(doubleshell.threshold_constants(cfg).model_dump(mode="json")))


def cmd_threshold(args: argparse.Namespace) -> CommandOutput:
    check_shells([args.R1, args.R2], [0.0, 0.0])
    coupling = doubleshell.critical_coupling(args.R1, args.R2, args.theta1)
    regime = coupling.regime_at_critical.value if coupling.regime_at_critical else None
    return CommandOutput(to_json({
        "R1": coupling.r1,
        "R2": coupling.r2,
        "theta1": coupling.theta1,
        "theta2_critical": coupling.theta2_critical,
        "C2": coupling.c2,
        "Gamma0": coupling.gamma0,
        "regime_at_critical": regime,
    }))


def cmd_bound_states(args: argparse.Namespace) -> CommandOutput:
    cfg = load_config(args.config)
    states = spectral.find_bound_states(cfg, args.ell, args.kappa_max, args.grid_points, args.threads)
    return CommandOutput(to_json([state.model_dump(mode="json") for state in states]))


def cmd_zero_energy(args: argparse.Namespace) -> CommandOutput:
    cfg = load_config(args.config)
    return CommandOutput(to_json(oracle.zero_energy_report(cfg).model_dump(mode="json")))


def cmd_oracle_compare(args: argparse.Namespace) -> CommandOutput:
    cfg = load_config(args.config)
    comparison = oracle.compare_routes(cfg, args.ell, args.k, numerov=args.numerov, steps=args.steps)
    status = EXIT_OK if comparison.passed else EXIT_NUMERICAL
    return CommandOutput(to_json(comparison.model_dump(mode="json")), status)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="sweep parallelism (default from settings)")
    common.add_argument("--out", type=Path, default=None, help="write output to PATH instead of stdout")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--kmin", type=float, required=True)
    sweep.add_argument("--kmax", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--log", action="store_true", help="geometric k spacing")

    parser = argparse.ArgumentParser(
        prog="shellscatter",
        description="Partial-wave scattering by concentric delta shells",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-shift", parents=[common, sweep], help="S_l(k) and unwrapped phase shift over a k grid")
    p.add_argument("--config", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(handler=cmd_phase_shift)

    p = sub.add_parser("cross-section", parents=[common, sweep], help="total cross section with per-channel terms")
    p.add_argument("--config", required=True)
    p.add_argument("--lmax", type=int, default=None)
    p.set_defaults(handler=cmd_cross_section)

    p = sub.add_parser("scattering-length", parents=[common], help="threshold report of a double shell")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_scattering_length)

    p = sub.add_parser("threshold", parents=[common], help="critical theta2 for given R1, R2, theta1")
    p.add_argument("--R1", type=float, required=True)
    p.add_argument("--R2", type=float, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.set_defaults(handler=cmd_threshold)

    p = sub.add_parser("bound-states", parents=[common], help="negative-energy eigenvalues of one channel")
    p.add_argument("--config", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--kappa-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=None)
    p.set_defaults(handler=cmd_bound_states)

    p = sub.add_parser("zero-energy", parents=[common], help="zero-energy exterior constants")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_zero_energy)

    p = sub.add_parser("oracle-compare", parents=[common], help="compare all S_l(k) routes")
    p.add_argument("--config", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--numerov", action="store_true", help="also integrate the radial equation")
    p.add_argument("--steps", type=int, default=None)
    p.set_defaults(handler=cmd_oracle_compare)

    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=settings.log_level.upper(),
        format='%(levelname)s:     %(name)s - %(message)s',
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], CommandOutput] = args.handler
    logger.debug("running %s", args.command)

    try:
        output = handler(args)
    except USAGE_ERRORS as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ShellScatterError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    try:
        _emit(output.text, args.out)
    except OSError as e:
        print(f"cannot write {args.out}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return output.status


if __name__ == "__main__":
    raise SystemExit(main())
