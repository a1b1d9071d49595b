import json
import logging
import sys

from argparse import ArgumentParser
from tabulate import tabulate
from typing import List, Optional
from .cli_helpers import check_degree, get_permutations
from .hopf import (
    Basis,
    ScfElement,
    antipode,
    coproduct,
    product,
    star,
    to_pch,
    to_sch,
    unit,
)
from .oracle import Kind, basis_function, check_group_size
from .render import element2json, element2plain, function2csv, supercharacter_table2csv
from .verify import SUITES, run_suite


def _element(args) -> ScfElement:
    perms = get_permutations(args.perm, args.perms)
    if len(perms) != 1:
        raise ValueError(f"Expected one permutation, got {len(perms)}")
    return ScfElement(Basis(args.basis), {perms[0]: 1})


def _write(x, args):
    sys.stdout.write(element2plain(x) if args.plain else element2json(x))


def do_product(args) -> int:
    perms = get_permutations(args.perm, args.perms)
    basis = Basis(args.basis)
    check_degree(sum(len(w) for w in perms), "total degree")
    result = unit(basis=basis)
    for w in perms:
        result = product(result, ScfElement(basis, {w: 1}))
    _write(result, args)
    return 0


def do_coproduct(args) -> int:
    _write(coproduct(_element(args)), args)
    return 0


def do_convert(args) -> int:
    x = _element(args)
    _write(to_pch(x) if x.basis is Basis.SCH else to_sch(x), args)
    return 0


def do_star(args) -> int:
    _write(star(_element(args)), args)
    return 0


def do_antipode(args) -> int:
    x = _element(args)
    if x.basis is Basis.SCH:
        _write(antipode(x), args)
    else:
        _write(to_pch(antipode(to_sch(x))), args)
    return 0


def do_table(args) -> int:
    check_degree(args.n, "n")
    check_group_size(args.n, args.q)
    sys.stdout.write(supercharacter_table2csv(args.n, args.q))
    return 0


def do_oracle(args) -> int:
    perms = get_permutations(args.perm, args.perms)
    if len(perms) != 1:
        raise ValueError(f"Expected one permutation, got {len(perms)}")
    w = perms[0]
    check_group_size(len(w), args.q)
    sys.stdout.write(function2csv(basis_function(Kind(args.kind), w, len(w), args.q)))
    return 0


def do_verify(args) -> int:
    check_degree(args.max_degree, "max-degree")
    check_degree(args.n, "n")
    check_group_size(args.n, args.q)
    if args.jobs < 1:
        raise ValueError(f"--jobs must be at least 1, not {args.jobs}")
    if args.sample < 0:
        raise ValueError(f"--sample must not be negative, not {args.sample}")
    suites = SUITES if args.suite == "all" else [args.suite]
    records = []
    for suite in suites:
        records.extend(
            run_suite(
                suite,
                max_degree=args.max_degree,
                n=args.n,
                q=args.q,
                jobs=args.jobs,
                sample_size=args.sample,
            )
        )
    if args.plain:
        headers = ["suite", "case", "status", "detail"]
        rows = [[r[h] for h in headers] for r in records]
        sys.stdout.write(tabulate(rows, headers=headers) + "\n")
    else:
        for r in records:
            sys.stdout.write(json.dumps(r) + "\n")
    return 1 if any(r["status"] == "fail" for r in records) else 0


def build_parser() -> ArgumentParser:
    p = ArgumentParser(
        prog="fqsym-scf", description="Supercharacter and permutation character model of FQSym"
    )

    # Global options
    p.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG level")
    sub = p.add_subparsers(dest="command", required=True)

    # Output options shared by every subcommand
    output = ArgumentParser(add_help=False)
    fmt = output.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", dest="plain", action="store_false", default=False, help="Write JSON (default)"
    )
    fmt.add_argument(
        "--plain", dest="plain", action="store_true", default=False, help="Write a plain table"
    )

    # Permutation input shared by the algebra subcommands
    element = ArgumentParser(add_help=False)
    element.add_argument("perm", nargs="*", help="Permutation in one-line notation, e.g. 3,1,2")
    element.add_argument("-P", "--perms", help="File containing one permutation per line")
    element.add_argument(
        "-b",
        "--basis",
        choices=[b.value for b in Basis],
        help="Basis: sch (supercharacters) or pch (permutation characters) (default: sch)",
        default="sch",
    )

    for name, function, text in [
        ("product", do_product, "Multiply basis elements from left to right"),
        ("coproduct", do_coproduct, "Coproduct of a basis element"),
        ("convert", do_convert, "Rewrite a basis element in the other basis"),
        ("star", do_star, "Apply the ⋆-involution to a basis element"),
        ("antipode", do_antipode, "Antipode of a basis element"),
    ]:
        cmd = sub.add_parser(name, parents=[output, element], help=text)
        cmd.set_defaults(function=function)

    table = sub.add_parser("table", help="Supercharacter table as CSV")
    table.add_argument("-n", "--n", type=int, help="Matrix size (default: 3)", default=3)
    table.add_argument("-q", "--q", type=int, help="Field size (default: 2)", default=2)
    table.set_defaults(function=do_table)

    oracle = sub.add_parser("oracle", help="Literal class function of a basis function as CSV")
    oracle.add_argument("perm", nargs="*", help="Permutation in one-line notation")
    oracle.add_argument("-P", "--perms", help="File containing the permutation")
    oracle.add_argument(
        "-k",
        "--kind",
        choices=[k.value for k in Kind],
        help="Basis function (default: chi)",
        default="chi",
    )
    oracle.add_argument("-q", "--q", type=int, help="Field size (default: 2)", default=2)
    oracle.set_defaults(function=do_oracle)

    verify = sub.add_parser("verify", parents=[output], help="Run verification suites")
    verify.add_argument(
        "-s",
        "--suite",
        choices=list(SUITES) + ["all"],
        help="Suite to run (default: all)",
        default="all",
    )
    verify.add_argument(
        "-m",
        "--max-degree",
        type=int,
        help="Largest total degree for the algebraic suites (default: 5)",
        default=5,
    )
    verify.add_argument(
        "-n", "--n", type=int, help="Matrix size for the oracle suite (default: 3)", default=3
    )
    verify.add_argument(
        "-q", "--q", type=int, help="Field size for the oracle suite (default: 2)", default=2
    )
    verify.add_argument(
        "-j", "--jobs", type=int, help="Number of worker processes (default: 1)", default=1
    )
    verify.add_argument(
        "--sample",
        type=int,
        help="Number of sampled pch products one degree above --max-degree (default: 1000)",
        default=1000,
    )
    verify.set_defaults(function=do_verify)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code: 0 on success, 1 when a
    verification case fails, 2 on invalid input.

    :param argv: command-line arguments without the program name
    :return: exit code
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.function(args)
    except (ValueError, OSError) as e:
        logging.critical(str(e))
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
