from __future__ import annotations

"""Command-line entry point: ``python app.py COMMAND INPUT... [--cap N] ...``."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.components.linear import FieldSpec
from src.pipeline import CommandReport, CommandRequest, load_config, run_command


BOUND_FLAGS = ("gldim_bound", "cap", "max_power", "max_s", "length", "n")


def load_commands() -> Dict[str, Callable[[CommandRequest], CommandReport]]:
    from src.commands import ar, basics, graded, purity

    registry: Dict[str, Callable[[CommandRequest], CommandReport]] = {}
    for family in (basics, purity, graded, ar):
        for name in family.COMMANDS:
            registry[name] = family.run
    return registry


def parse_field(text: str) -> FieldSpec:
    if text.upper() == "Q":
        return FieldSpec.rationals()
    digits = text[1:] if text[:1] in ("F", "f") else text
    if not digits.isdigit():
        raise argparse.ArgumentTypeError(f"field must be Q, a prime p, or Fp; got {text!r}")
    return FieldSpec.prime(int(digits))


def build_parser(commands: List[str]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensorcoh", description="Exact homological algebra for tensor algebras T_A(sigma).")
    parser.add_argument("command", choices=sorted(commands))
    parser.add_argument("inputs", nargs="*", help="catalog names, named modules or JSON instance files")
    parser.add_argument("--cap", type=int)
    parser.add_argument("--max-power", dest="max_power", type=int)
    parser.add_argument("--max-s", dest="max_s", type=int)
    parser.add_argument("--length", type=int)
    parser.add_argument("--gldim-bound", dest="gldim_bound", type=int)
    parser.add_argument("-n", dest="n", type=int, help="the n of theta = Ext^n(D(L), L)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int, help="random maps or modules to sample")
    parser.add_argument("--field", type=parse_field, help="Q or a prime p")
    parser.add_argument("--concentrated", action="store_true", help="graded-resolve: place M in degree 0 only")
    parser.add_argument("--format", choices=("text", "json"))
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--xlsx", help="also write a styled workbook")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def build_request(args: argparse.Namespace, config: Dict) -> CommandRequest:
    bounds = {name: getattr(args, name) if getattr(args, name) is not None else config["bounds"][name] for name in BOUND_FLAGS}
    bounds["seed"] = args.seed if args.seed is not None else config["sampling"]["seed"]
    sampling = config["sampling"]
    options = {
        "path_cap": config["algebra"]["path_cap"],
        "samples": args.samples if args.samples is not None else sampling["maps"],
        "max_generator_degree": sampling["max_generator_degree"],
        "coefficient_range": sampling["coefficient_range"],
        "max_module_dim": sampling.get("max_module_dim", 6),
        "concentrated": args.concentrated,
    }
    return CommandRequest(
        command=args.command,
        inputs=list(args.inputs),
        bounds=bounds,
        options=options,
        field_spec=args.field,
        output=args.out,
        xlsx=args.xlsx,
        format=args.format or config["output"]["format"],
    )


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    from src.components.export import write_report

    commands = load_commands()
    args = build_parser(list(commands)).parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = load_config()
    except (FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    request = build_request(args, config)
    outcome = run_command(request, commands)
    if outcome.report is None:
        print(f"error: {outcome.error}", file=sys.stderr)
        return outcome.exit_code
    text = write_report(
        outcome.report,
        fmt=request.format,
        out=request.output,
        xlsx=request.xlsx,
        indent=config["output"]["indent"],
    )
    if not request.output:
        sys.stdout.write(text)
    else:
        logging.getLogger(__name__).info("report written to %s", Path(request.output))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
