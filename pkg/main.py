import sys
import logging
import argparse

from src.algebra.errors import ConfigError
from src.cli.config import FORMATS, RunConfig
from src.cli.runner import EXIT_USAGE, run
from src.spectrum.galerkin import METHODS, OPERATORS


def add_common_arguments(parser: argparse.ArgumentParser, n: bool = True, q: bool = False, degree: int = 6):
    """Flags shared by every command"""
    if n:
        parser.add_argument("--n", type=int, default=1, help="Complex dimension")
    if q:
        parser.add_argument("--q", type=int, default=0, help="Form degree (0 <= q <= n)")
    parser.add_argument("--degree", type=int, default=degree, help="Total degree cap D")
    parser.add_argument("--format", choices=FORMATS, default="json", help="Report format on stdout")
    parser.add_argument("--threads", type=int, default=None,
                        help="Worker threads (default: FOCKSPEC_THREADS or min(4, cpu count))")
    parser.add_argument("--progress", action="store_true", help="Show progress bars on stderr")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")


def add_spectrum_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--tolerance", type=float, default=1e-6, help="Cluster tolerance around integers")
    parser.add_argument("--operator", choices=OPERATORS, default="box", help="Operator whose spectrum is computed")
    parser.add_argument("--method", choices=METHODS, default="ldl", help="Generalized eigensolver")
    parser.add_argument("--allow-large-degree", dest="allow_large_degree", action="store_true",
                        help="Permit degree caps above 16")


def add_random_arguments(parser: argparse.ArgumentParser, samples: int):
    parser.add_argument("--seed", type=int, default=0, help="Seed for random inputs")
    parser.add_argument("--samples", type=int, default=samples, help="Random inputs per identity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact verification of the weighted dbar-Neumann and Witten Laplacians for |z|^2")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    eigen_parser = subparsers.add_parser("verify-eigen", help="Verify the closed-form eigenfunctions exactly")
    add_common_arguments(eigen_parser)
    eigen_parser.add_argument("--kmax", type=int, default=8, help="Largest k")
    eigen_parser.add_argument("--mmax", type=int, default=8, help="Largest m")
    add_random_arguments(eigen_parser, samples=200)

    spectrum_parser = subparsers.add_parser("spectrum", help="Truncated spectrum with multiplicities")
    add_common_arguments(spectrum_parser, q=True, degree=12)
    add_spectrum_arguments(spectrum_parser)

    growth_parser = subparsers.add_parser("multiplicity", help="Multiplicity growth over degree caps")
    add_common_arguments(growth_parser, q=True)
    add_spectrum_arguments(growth_parser)
    growth_parser.add_argument("--mu", type=int, default=None, help="Eigenvalue (default: q..q+4)")
    growth_parser.add_argument("--degrees", type=int, nargs="+", default=[4, 8, 12], help="Degree caps")

    operator_parser = subparsers.add_parser("operator-check", help="Identities of the weighted dbar-complex")
    add_common_arguments(operator_parser, degree=4)
    add_random_arguments(operator_parser, samples=200)

    witten_parser = subparsers.add_parser("witten-check", help="Witten complex and Pauli operator identities")
    add_common_arguments(witten_parser, q=True, degree=5)
    add_random_arguments(witten_parser, samples=100)

    hermite_parser = subparsers.add_parser("hermite-check", help="Hermite expansions and Gaussian moments")
    add_common_arguments(hermite_parser, n=False, degree=8)
    add_random_arguments(hermite_parser, samples=50)

    expand_parser = subparsers.add_parser("expand", help="Expand monomials in the eigenbasis")
    add_common_arguments(expand_parser, degree=8)
    expand_parser.add_argument("--monomial", type=str, default=None,
                               help="Single monomial to expand, e.g. 'z1^2 zb1'")
    return parser


def main(argv=None) -> int:
    """Parse arguments, run the command and return its exit status"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s")

    try:
        return run(RunConfig.from_args(args))
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
