import argparse
import logging
from pathlib import Path

from . import commands
from .config import Settings


def _global_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--workers", type=int, help="thread pool size")
    parser.add_argument("--block-bits", type=int, help="exhaustive search blocks hold 2^B candidates")
    parser.add_argument("--max-pairs", type=int, help="Buchberger pair budget")
    parser.add_argument("--cap", dest="solution_cap", type=int, help="solutions listed by solve")
    parser.add_argument("--progress", action="store_true", default=None, help="show progress bars")
    parser.add_argument("--verbose", "-v", action="store_true", default=None, help="debug logging")
    return parser


def parse_args(argv=None):
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="ntru-witt", description="NTRU key recovery from Witt vector equations")
    subparsers = parser.add_subparsers(dest="command", required=True)

    keygen = subparsers.add_parser("keygen", parents=[common], help="generate a key set")
    keygen.add_argument("--n", type=int, required=True)
    keygen.add_argument("--q", type=int, required=True)
    keygen.add_argument("--seed", type=int, default=0)
    keygen.add_argument("--out", type=Path, required=True)
    keygen.set_defaults(handler=commands.cmd_keygen)

    attack = subparsers.add_parser("attack", parents=[common], help="write the equation system of a key")
    attack.add_argument("--keys", type=Path, required=True)
    attack.add_argument("--bits", type=int, choices=[2, 3, 4], required=True)
    attack.add_argument("--out", type=Path, required=True)
    attack.add_argument("--method", choices=["symmetric", "fold"], default="symmetric")
    attack.set_defaults(handler=commands.cmd_attack)

    solve = subparsers.add_parser("solve", parents=[common], help="solve an equation system")
    solve.add_argument("--system", type=Path, required=True)
    solve.add_argument("--backend", choices=["exhaustive", "groebner"], default="exhaustive")
    solve.add_argument("--keys", type=Path)
    solve.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    solve.set_defaults(handler=commands.cmd_solve)

    bench = subparsers.add_parser("bench", parents=[common], help="run seeded experiments into a CSV file")
    bench.add_argument("--n-list", type=int, nargs="+", required=True)
    bench.add_argument("--q", type=int, default=128)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--trials", type=int, default=1)
    bench.add_argument("--bits", type=int, choices=[2, 3, 4], default=3)
    bench.add_argument("--backend", choices=["exhaustive", "groebner"], default="exhaustive")
    bench.add_argument("--csv", type=Path, required=True)
    bench.set_defaults(handler=commands.cmd_bench)

    selftest = subparsers.add_parser("selftest", parents=[common], help="run the built-in oracle suites")
    selftest.set_defaults(handler=commands.cmd_selftest)

    export = subparsers.add_parser("export-cnf", parents=[common], help="convert a system file to extended DIMACS")
    export.add_argument("--system", type=Path, required=True)
    export.add_argument("--out", type=Path, required=True)
    export.set_defaults(handler=commands.cmd_export_cnf)

    return parser.parse_args(argv)


def run(argv=None) -> int:
    args = parse_args(argv)
    try:
        settings = Settings.from_dict(vars(args))
    except ValueError as exception:
        logging.basicConfig(format="[%(levelname)s]: %(message)s")
        logging.error(str(exception))
        return commands.EXIT_USAGE

    level = logging.DEBUG if settings.verbose else logging.INFO
    logging.basicConfig(format="[%(levelname)s]: %(message)s", level=level)
    return args.handler(args, settings)
