import argparse
import logging
import sys
from typing import List, Optional

from app import __version__
from app.adapters import ADAPTERS, get_adapter
from app.config import get_settings
from app.models.api import Report
from app.models.errors import OutputError, ParseError, StrataError
from app.services.action import load_action
from app.services.commands import CommandService

logger = logging.getLogger("cli")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(ADAPTERS), default=settings.OUTPUT_FORMAT,
                        help="Report format (default: %(default)s)")
    common.add_argument("--output", metavar="PATH", help="Write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="strataflux",
        description="Instability strata, Betti numbers, shifted quotients of unstable strata, and sweep cones.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    strata = commands.add_parser("strata", parents=[common], help="Index set and stratum data")
    strata.add_argument("input", help="Action document (JSON)")
    strata.add_argument("--partition", action="store_true", help="Also list the β of every support")
    strata.add_argument("--closure", action="store_true", help="Also list the closure relations")

    betti = commands.add_parser("betti", parents=[common], help="Poincaré series and quotient Betti numbers")
    betti.add_argument("input")

    quotient = commands.add_parser("quotient", parents=[common], help="ε-shifted quotient of an unstable stratum")
    quotient.add_argument("input")
    quotient.add_argument("--beta", required=True,
                          help="β as a rational vector ('1/2,3' or '[1]') or '#k' for the k-th index")
    mode = quotient.add_mutually_exclusive_group()
    mode.add_argument("--epsilon", help="Rational ε > 0, e.g. 1/2")
    mode.add_argument("--family", action="store_true", help="One report per ε-chamber")
    mode.add_argument("--critical", action="store_true", help="The ε = 0 collapse")

    implosion = commands.add_parser("implosion", parents=[common], help="Sweep-cone membership and face data")
    implosion.add_argument("input")
    implosion.add_argument("--xi", required=True, help="Rational vector, e.g. 0,1,0")
    implosion.add_argument("--sp", default="", help="Comma-separated 0-based simple-root indices of S_P")

    plot = commands.add_parser("plot", parents=[common], help="SVG picture of a rank ≤ 2 system")
    plot.add_argument("input")
    plot.add_argument("out", help="SVG path")
    plot.add_argument("--beta", help="β whose ray and walls are drawn")

    return parser


def _read_input(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8") from e


def _write_output(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e


def run(args: argparse.Namespace) -> Report:
    ws, rd = load_action(_read_input(args.input))
    logger.info(f"[CLI] {args.command} on {args.input}")

    if args.command == "strata":
        arguments = {"partition": args.partition, "closure": args.closure}
        payload = CommandService.strata(ws, rd, **arguments)
    elif args.command == "betti":
        arguments = {}
        payload = CommandService.betti(ws, rd)
    elif args.command == "quotient":
        arguments = {"beta": args.beta, "epsilon": args.epsilon, "family": args.family, "critical": args.critical}
        payload = CommandService.quotient(ws, rd, **arguments)
    elif args.command == "implosion":
        arguments = {"xi": args.xi, "sp": args.sp}
        payload = CommandService.implosion(ws, rd, **arguments)
    else:
        arguments = {"out": args.out, "beta": args.beta}
        payload = CommandService.plot(ws, rd, **arguments)

    return CommandService.report(args.command, ws, rd, arguments, payload)


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)

    args = build_parser().parse_args(argv)
    try:
        report = run(args)
        text = get_adapter(args.format).render(report)
        if args.output:
            _write_output(args.output, text)
        else:
            sys.stdout.write(text)
    except StrataError as e:
        print(f"{e.label}: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
