"""
Command line interface voor de Saddle Analyzer.

Elk subcommando is een dunne adapter over een async tool uit `tools.py`; de uitvoer is
JSON op stdout, logging gaat naar stderr.

Exit codes:
    0  succes
    1  de analyse liep maar vond een negatief resultaat (bijv. FalsifiedAt), of een analyse fout
    2  configuratie of gebruik fout
"""

import argparse
import asyncio
import json
import logging
import sys
from typing import Any, Awaitable, Callable, Dict, List, Optional, Sequence

from . import tools
from .config import settings
from .logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

ToolCall = Callable[[argparse.Namespace], Awaitable[Dict[str, Any]]]


class UsageError(Exception):
    """Ongeldige argumenten, met een remedie van één regel."""

    def __init__(self, message: str, remedy: str):
        self.remedy = remedy
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> Any:
        raise UsageError(message, f"zie '{self.prog} --help'")


def _variables(args: argparse.Namespace) -> Optional[List[str]]:
    if not args.vars:
        return None
    return [name.strip() for name in args.vars.split(",") if name.strip()]


def _grid(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.replace("x", ",").split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"Ongeldig grid '{text}'", "gebruik bijv. --grid 41x81") from None


def _point(text: str, flag: str) -> List[float]:
    try:
        return tools.parse_point(text)
    except ValueError as e:
        raise UsageError(str(e), f"gebruik bijv. {flag} 0.3,0.1") from None


async def _classify(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.classify_point(args.field, _point(args.point, "--point"), _variables(args))


async def _stepsize(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.plan_step_size(
        args.field,
        args.domain,
        margin=args.margin,
        gamma=args.gamma,
        lipschitz=args.lipschitz,
        grid=_grid(args.grid),
        variables=_variables(args),
    )


async def _invariance(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.check_invariance(
        args.field,
        args.domain,
        args.alpha,
        certify=args.certify,
        density=args.density,
        samples=args.samples,
        seed=args.seed,
        variables=_variables(args),
    )


async def _diffeo(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.check_diffeo(
        args.field,
        args.domain,
        args.alpha,
        point_samples=args.points,
        pair_samples=args.pairs,
        seed=args.seed,
        variables=_variables(args),
    )


async def _lipschitz(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.verify_lipschitz(
        args.field, args.domain, args.lipschitz, pair_samples=args.pairs, seed=args.seed, variables=_variables(args)
    )


async def _run(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.run_trajectory(
        args.field,
        args.alpha,
        _point(args.x0, "--x0"),
        domain=args.domain,
        budget=args.budget,
        out=args.out,
        variables=_variables(args),
    )


async def _experiment(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.run_monte_carlo(
        config_path=args.config, out=args.out, trials_csv=args.trials_csv, workers=args.workers
    )


async def _selfcheck(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.selfcheck(points=args.points, matrices=args.matrices, seed=args.seed)


async def _fields(args: argparse.Namespace) -> Dict[str, Any]:
    return await tools.list_fields()


def _add_field_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", required=True, help="Builtin naam of expressie, bijv. 'x^2 + y^2'")
    p.add_argument("--vars", help="Komma-gescheiden variabelen volgorde voor een expressie")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="saddle-analyzer", description="Gradient descent rond strikte zadelpunten.")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Level voor de applicatie loggers")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log ook naar stderr op het gekozen level")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="Classificeer een punt")
    _add_field_arguments(p)
    p.add_argument("--point", required=True, help="Komma-gescheiden coördinaten")
    p.set_defaults(handler=_classify)

    p = sub.add_parser("stepsize", help="Stapgrootte grenzen uit L en γ")
    _add_field_arguments(p)
    p.add_argument("--domain", required=True, help="Box, bijv. '(-1,1)x(-2,2)'")
    p.add_argument("--margin", type=float, help="α = margin / L (default uit settings)")
    p.add_argument("--gamma", type=float, help="γ voor de noodzakelijke grens 2/γ")
    p.add_argument("--lipschitz", type=float, help="Bekende L; anders grid schatting")
    p.add_argument("--grid", help="Grid per as, bijv. 41x81")
    p.set_defaults(handler=_stepsize)

    p = sub.add_parser("invariance", help="Voorwaartse invariantie van de box")
    _add_field_arguments(p)
    p.add_argument("--domain", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--certify", action="store_true", help="Gebruik separable-certify in plaats van sampling")
    p.add_argument("--density", type=int, help="Grid punten per as voor --certify")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_invariance)

    p = sub.add_parser("diffeo", help="Diffeomorfisme diagnostiek van g")
    _add_field_arguments(p)
    p.add_argument("--domain", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--points", type=int, default=10_000)
    p.add_argument("--pairs", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_diffeo)

    p = sub.add_parser("lipschitz", help="Steekproef van de Lipschitz conditie voor ∇f")
    _add_field_arguments(p)
    p.add_argument("--domain", required=True)
    p.add_argument("--lipschitz", type=float, required=True)
    p.add_argument("--pairs", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_lipschitz)

    p = sub.add_parser("run", help="Eén traject")
    _add_field_arguments(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x0", required=True, help="Startpunt, komma-gescheiden")
    p.add_argument("--domain", help="Stop bij het verlaten van deze box")
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="CSV pad; schrijft ook een JSON sidecar")
    p.set_defaults(handler=_run)

    p = sub.add_parser("experiment", help="Monte Carlo experiment uit een config bestand")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="Rapport pad (overschrijft output.report)")
    p.add_argument("--trials-csv", help="Per-trial CSV (overschrijft output.trials_csv)")
    workers_help = (
        "Aantal processen (default EXPERIMENT_WORKERS, anders alle cores vanaf "
        f"{settings.experiment.PARALLEL_MIN_TRIALS} trials)"
    )
    p.add_argument("--workers", type=int, help=workers_help)
    p.set_defaults(handler=_experiment)

    p = sub.add_parser("selfcheck", help="Finite-difference en eigensolver oracles")
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--matrices", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_selfcheck)

    p = sub.add_parser("fields", help="Catalogus van builtin velden")
    p.set_defaults(handler=_fields)

    return parser


def _exit_code(response: Dict[str, Any]) -> int:
    if response.get("success"):
        return EXIT_NEGATIVE if response.get("negative") else EXIT_OK
    return EXIT_USAGE if response.get("usage_error") else EXIT_NEGATIVE


def _report_usage(message: str, remedy: str) -> None:
    print(f"fout: {message}", file=sys.stderr)
    print(f"oplossing: {remedy}", file=sys.stderr)


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argumenten, voer het subcommando uit en geef de exit code.

    Het resultaat (of de fout) wordt als JSON naar stdout geschreven.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("Geen subcommando opgegeven", "kies er één uit 'saddle-analyzer --help'")
    except UsageError as e:
        _report_usage(str(e), e.remedy)
        return EXIT_USAGE

    setup_logging(log_level=args.log_level, console_level=args.log_level if args.verbose else "WARNING")
    handler: ToolCall = args.handler
    try:
        response = asyncio.run(handler(args))
    except UsageError as e:
        _report_usage(str(e), e.remedy)
        return EXIT_USAGE
    except Exception as e:
        logger.error(
            f"{args.command} onverwachte fout: {type(e).__name__}: {e}",
            exc_info=True,
            extra={"command": args.command, "error_type": type(e).__name__},
        )
        remedy = f"controleer de argumenten met 'saddle-analyzer {args.command} --help'"
        _report_usage(f"{type(e).__name__}: {e}", remedy)
        return EXIT_USAGE

    code = _exit_code(response)
    if response.get("success"):
        print(json.dumps(response["result"], indent=2, sort_keys=True, default=str))
    else:
        print(json.dumps(response, indent=2, sort_keys=True, default=str))
        if code == EXIT_USAGE:
            remedy = "; ".join(response.get("field_errors") or []) or f"zie 'saddle-analyzer {args.command} --help'"
            _report_usage(response.get("error", ""), remedy)
    logger.debug(f"{args.command} klaar met exit code {code}", extra={"command": args.command, "exit_code": code})
    return code


def main() -> int:
    """Console script entry point."""
    return cli_dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
