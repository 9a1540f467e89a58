import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import LOG_LEVEL
from src.commands import CONFIG_CHOICES, REPRODUCE_IDS, SCAN_WHAT, cmd_extremal, cmd_predict, cmd_reproduce, cmd_scan, cmd_verify
from src.errors import FplabError, exit_code_for
from src.linalg import MODES
from src.report import MISMATCH, RunReport, write_reports
from src.typevec import PseudoTypeVector, TypeVector2, parse_vector

logger = logging.getLogger(__name__)


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fplab",
        description="Hilbert functions and graded Betti numbers of reduced and double points in P2",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seed: bool = True, mode: bool = True, workers: bool = False) -> None:
        p.add_argument("--json", metavar="PATH", help="write the report(s) as JSON; '-' for stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="seed for every randomized step (default 0)")
        if mode:
            p.add_argument("--mode", choices=MODES, help="oracle arithmetic (default from FPLAB_ARITHMETIC_MODE)")
        if workers:
            p.add_argument("--workers", type=int, help="worker processes (default from FPLAB_WORKERS)")

    predict = sub.add_parser("predict", help="predictions only, no oracle")
    predict.add_argument("--type", dest="type_vector", help="2-type vector, e.g. 2,4,5")
    predict.add_argument("--pseudo", help="pseudo type vector, e.g. 3,6,6,7,12,14")
    predict.add_argument("--double", action="store_true", help="double points on the linear configuration")
    common(predict, seed=False, mode=False)

    verify = sub.add_parser("verify", help="compare predictions with the oracle on one configuration")
    verify.add_argument("--type", dest="type_vector")
    verify.add_argument("--pseudo")
    verify.add_argument("--ct", nargs=2, type=int, metavar=("T", "R"))
    verify.add_argument("--config", choices=CONFIG_CHOICES, default="standard")
    verify.add_argument("--generic-lines", action="store_true", help="random lines for --config generic")
    verify.add_argument("--double", action="store_true")
    common(verify)

    scan = sub.add_parser("scan", help="classify all type vectors up to --max-sigma, confirming a sample")
    scan.add_argument("--max-sigma", type=int)
    scan.add_argument("--what", choices=SCAN_WHAT, default="hf")
    scan.add_argument("--seeds", type=int, help="generic-lines seeds per confirmed vector")
    scan.add_argument("--sample-every", type=int, help="confirm every k-th vector")
    common(scan, workers=True)

    extremal = sub.add_parser("extremal", help="minimal double-point Hilbert function over sampled supports")
    target = extremal.add_mutually_exclusive_group(required=True)
    target.add_argument("--ct", nargs=2, type=int, metavar=("T", "R"))
    target.add_argument("--delta-h", help="generic support Δh, e.g. 1,2,3,2")
    target.add_argument("--type", dest="type_vector", help="compare C_h against supports of this type's Hilbert function")
    extremal.add_argument("--trials", type=int)
    common(extremal, workers=True)

    reproduce = sub.add_parser("reproduce", help="recompute a printed example in exact arithmetic")
    reproduce.add_argument("example_id", choices=REPRODUCE_IDS)
    common(reproduce, mode=False, workers=True)
    return parser


def run(args: argparse.Namespace) -> List[RunReport]:
    type_vector = TypeVector2.parse(args.type_vector) if getattr(args, "type_vector", None) else None
    pseudo = PseudoTypeVector.parse(args.pseudo) if getattr(args, "pseudo", None) else None
    ct = tuple(args.ct) if getattr(args, "ct", None) else None

    if args.command == "predict":
        return [cmd_predict(type_vector, pseudo, args.double)]
    if args.command == "verify":
        return [
            cmd_verify(
                args.config, type_vector, pseudo, ct, args.double, args.seed, args.mode, args.generic_lines
            )
        ]
    if args.command == "scan":
        return cmd_scan(args.max_sigma, args.what, args.seeds, args.sample_every, args.seed, args.mode, args.workers)
    if args.command == "extremal":
        delta_h = parse_vector(args.delta_h) if args.delta_h else None
        return [cmd_extremal(ct, delta_h, type_vector, args.trials, args.seed, args.mode, args.workers)]
    return [cmd_reproduce(args.example_id, args.seed, args.workers)]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)

    try:
        reports = run(args)
    except FplabError as e:
        logger.error(f"{args.command} failed: {e}")
        return exit_code_for(e)

    if args.json:
        text = write_reports(reports, args.json)
        if text is not None:
            sys.stdout.write(text)
    if args.json != "-":
        for report in reports:
            if report.text:
                print(report.text)

    exit_code = max(report.exit_code for report in reports)
    if any(r.verdict == MISMATCH for r in reports):
        logger.warning(f"{args.command}: at least one mismatch")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
