# File: packetforge/packetforge/cli.py
# This file defines the command-line front end: base configuration, subcommand dispatch,
# report rendering and exit codes (0 pass, 1 mismatch, 2 configuration error).

from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO
import argparse
import logging
import sys

from packetforge.arthur import base_pair, default_base
from packetforge.classical import BaseCusp
from packetforge.commands import COMMANDS
from packetforge.commands.base_command import EXIT_CONFIG, EXIT_MISMATCH, EXIT_PASS
from packetforge.config import settings
from packetforge.core import hi
from packetforge.critical import CATALOG
from packetforge.errors import ConfigError, PacketForgeError
from packetforge.families import CaseKind
from packetforge.schemas.base import load_config
from packetforge.schemas.report import Report
from packetforge.services.verification_service import VerificationService

# Configure logging
logger = logging.getLogger(__name__)

GLOBAL_KEYS = ("config", "alpha", "xi", "format", "jobs", "strict", "eps_override", "command")

# word computations that never look at σ's parameter
BASE_FREE = ("mstar", "mustar")


def _global_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="base configuration JSON (default: $PACKETFORGE_CONFIG_PATH)")
    parent.add_argument("--alpha", help="reducibility exponent for the standard base, e.g. 5/2 or 2.5")
    parent.add_argument("--xi", type=int, choices=(1, -1), default=1, help="ε_σ(1,1) of the standard base at α=1")
    parent.add_argument("--format", choices=("json", "text"), help="report format")
    parent.add_argument("--jobs", type=int, help="worker processes for grid and catalog points")
    parent.add_argument("--strict", action="store_true", default=None, help="fail on uncertified steps")
    parent.add_argument("--eps-override", dest="eps_override", action="store_true", default=None,
                        help="accept ε whose product differs from ε_σ's")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _global_options()
    parser = argparse.ArgumentParser(prog="packetforge", description=f"{settings.APP_NAME} {settings.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("mstar", "M*, m* or M*_GL of a segment word"), ("mustar", "cuspidal strings of word ⋊ σ")):
        p = sub.add_parser(name, parents=[parent], help=helptext)
        p.add_argument("--delta", action="append", help="Delta segment x,y (repeatable)")
        p.add_argument("--zeta", action="append", help="Zeta segment x,y (repeatable)")
        if name == "mstar":
            p.add_argument("--which", choices=("M", "m", "GL"), default="M")
            p.add_argument("--check", action="store_true", help="compare with the closed form")

    p = sub.add_parser("jac", parents=[parent], help="Jac_x chain of a datum")
    p.add_argument("--datum", help="Langlands datum as JSON or a JSON file path")
    p.add_argument("--blocks", help="take π(ψ, ε) instead, e.g. \"(6,1)+,(1,2)-\"")
    p.add_argument("--eps", help="comma-separated ε values for --blocks")
    p.add_argument("--x", action="append", help="exponent (repeat for a chain)")

    for name, helptext in (("packet", "π(ψ, ε) by the reduction recursion"), ("dual", "π(ψ, ε)^t")):
        p = sub.add_parser(name, parents=[parent], help=helptext)
        p.add_argument("--blocks", required=True, help="block list, e.g. \"(6,1)+,(1,2)-\"")
        p.add_argument("--eps", help="comma-separated ε values instead of inline signs")
        if name == "packet":
            p.add_argument("--expect", help="expected datum as JSON or a JSON file path")

    p = sub.add_parser("family", parents=[parent], help="family members against their closed forms")
    p.add_argument("--grid", type=int, default=3, help="grid size")
    p.add_argument("--kind", choices=[k.value for k in CaseKind])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--sign", type=int, choices=(1, -1))
    p.add_argument("--tau", action="store_true")
    p.add_argument("--duality", action="store_true")
    p.add_argument("--endpoints", action="store_true")

    p = sub.add_parser("critical", parents=[parent], help="critical-point catalog")
    p.add_argument("action", nargs="?", choices=("verify", "list", "check"), default="verify")
    p.add_argument("--case", action="append", choices=[tpl.key for tpl in CATALOG])
    p.add_argument("--exponents", help="comma-separated exponents for 'check'")

    p = sub.add_parser("appendix", parents=[parent], help="[x] ⋊ σ by Jac descent")
    p.add_argument("--x", action="append", help="exponent (default: every admissible x)")

    p = sub.add_parser("verify-all", parents=[parent], help="every suite that applies at α")
    p.add_argument("--grid", type=int, default=3)
    return parser


@contextmanager
def _overrides(values: Dict[str, Any]) -> Iterator[None]:
    saved = {key: getattr(settings, key) for key in values}
    try:
        for key, value in values.items():
            setattr(settings, key, value)
        yield
    finally:
        for key, value in saved.items():
            setattr(settings, key, value)


def resolve_base(args: argparse.Namespace) -> BaseCusp:
    """The configured base: --config, then $PACKETFORGE_CONFIG_PATH, then the standard σ at --alpha."""
    path = args.config or settings.CONFIG_PATH
    if path:
        base = load_config(path).to_base()
        if args.alpha is not None and hi(args.alpha) != base.main_line.alpha:
            raise ConfigError(f"--alpha {args.alpha} disagrees with α={base.main_line.alpha} in {path}")
        return base
    if args.alpha is None:
        if args.command in BASE_FREE:
            return default_base(0)
        raise ConfigError("Give --alpha or --config")
    return default_base(hi(args.alpha), args.xi)


def _canonical_inputs(args: argparse.Namespace, base: Optional[BaseCusp]) -> Dict[str, Any]:
    out = {k: v for k, v in vars(args).items() if k not in GLOBAL_KEYS and v is not None and v is not False}
    if base is not None:
        out["alpha"] = str(base.main_line.alpha)
        out["base"] = str(base_pair(base))
    elif args.alpha is not None:
        out["alpha"] = args.alpha
    return out


def _emit(report: Report, fmt: str, out: TextIO) -> None:
    out.write((report.to_text() if fmt == "text" else report.to_json()) + "\n")


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """Parse argv, run one subcommand, write its report and return the exit code."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_CONFIG

    fmt = args.format or settings.DEFAULT_FORMAT
    base: Optional[BaseCusp] = None
    overrides: Dict[str, Any] = {}
    if args.strict:
        overrides["STRICT_CERTIFICATES"] = True
    if args.eps_override:
        overrides["EPS_PRODUCT_OVERRIDE"] = True
    try:
        config_path = args.config or settings.CONFIG_PATH
        if config_path:
            options = load_config(config_path).options
            if options.eps_product_override is not None and "EPS_PRODUCT_OVERRIDE" not in overrides:
                overrides["EPS_PRODUCT_OVERRIDE"] = options.eps_product_override
            if options.max_cuspidal_letters is not None:
                overrides["MAX_CUSPIDAL_LETTERS"] = options.max_cuspidal_letters
            if options.format and args.format is None:
                fmt = options.format
        with _overrides(overrides):
            base = resolve_base(args)
            service = VerificationService(args.jobs)
            command = COMMANDS[args.command](base, service)
            request = {k: v for k, v in vars(args).items() if k not in ("config", "format", "jobs", "command")}
            result = command.run(request)
    except PacketForgeError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        result = {"error": str(e), "detail": e.to_dict(), "exit_code": EXIT_CONFIG}
    except ValueError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        result = {"error": f"Validation Error: {str(e)}", "exit_code": EXIT_CONFIG}

    inputs = _canonical_inputs(args, base)
    if "error" in result:
        report = Report(
            version=settings.VERSION,
            command=args.command,
            inputs=inputs,
            results={"error": result["error"], "detail": result.get("detail", {})},
            passed=False,
        )
        _emit(report, fmt, out)
        return int(result.get("exit_code", EXIT_MISMATCH))
    report = Report(version=settings.VERSION, command=args.command, inputs=inputs, results=result["results"], passed=result["pass"])
    _emit(report, fmt, out)
    return EXIT_PASS if result["pass"] else EXIT_MISMATCH


def main(argv: Optional[List[str]] = None) -> None:
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run(argv))
