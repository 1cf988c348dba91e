"""Command-line driver.

Verbs: bounds, construct, verify, search, classes, oracle.  Output is plain
text with key=value machine sections and is byte-stable for identical
arguments (timing never reaches stdout; incumbent logs go to stderr behind
--log).

Exit codes: 0 success; 1 verification/property failure; 2 usage or parse
error; 3 resource guard tripped (n too large for the requested operation).
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter

from . import families, search, verify
from .modring import factorize
from .perms import BudgetError

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_CONSTRUCTORS = {
    "p1": families.construct_p1,
    "p2": families.construct_p2,
    "p3": families.construct_p3_prime,
}


def _fmt_value(entry: families.BoundEntry | None) -> str:
    if entry is None:
        return "-"
    if isinstance(entry.value, float):
        return f"{entry.value:.6f}"
    return str(entry.value)


def cmd_bounds(args: argparse.Namespace) -> int:
    rep = families.bounds(args.n, args.quantity)
    provenance = [f"lower={rep.lower.source}"]
    if rep.upper is not None:
        provenance.append(f"upper={rep.upper.source}")
    for alt in rep.uppers[1:]:
        provenance.append(f"alt_upper={alt.value} ({alt.source})")
    if rep.upper_float is not None:
        provenance.append(f"float={rep.upper_float.source}")
    if rep.exact is not None:
        provenance.append(f"exact={rep.exact.source}")
    header = ["quantity", "lower", "upper_exact", "upper_float", "exact_if_known", "provenance"]
    row = [
        f"{rep.quantity}({rep.n})",
        str(rep.lower.value),
        _fmt_value(rep.upper),
        _fmt_value(rep.upper_float),
        _fmt_value(rep.exact),
        "; ".join(provenance),
    ]
    widths = [max(len(h), len(r)) for h, r in zip(header, row)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    print("  ".join(r.ljust(w) for r, w in zip(row, widths)).rstrip())
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    fam = _CONSTRUCTORS[args.prop](factorize(args.n))
    if args.output:
        families.write_family(fam, args.output)
        print(f"written={args.output} n={fam.modulus.n} prop={fam.prop} count={len(fam)}")
    else:
        sys.stdout.write(families.family_to_text(fam))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    _, report = verify.verify_file(args.file)
    sys.stdout.write(verify.format_report(report))
    return EXIT_OK if report.ok else EXIT_FAILED_CHECK


def _thread_count(args: argparse.Namespace) -> int:
    if args.serial:
        return 1
    env = os.environ.get("PERMSUM_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"PERMSUM_THREADS must be an integer, got {env!r}") from None
    if args.threads is not None:
        return max(1, args.threads)
    return os.cpu_count() or 1


def cmd_search(args: argparse.Namespace) -> int:
    on_improve = None
    if args.log:
        def on_improve(size: int, elapsed: float, nodes: int) -> None:
            print(f"incumbent size={size} elapsed={elapsed:.3f}s nodes={nodes}", file=sys.stderr)

    result = search.extremal(
        factorize(args.n),
        args.quantity,
        time_limit=args.time_limit,
        threads=_thread_count(args),
        on_improve=on_improve,
    )
    print(f"quantity={args.quantity} n={args.n}")
    print(f"value={result.value}")
    print(f"status={result.status}")
    print(f"nodes={result.nodes_explored}")
    print(f"certificate_size={len(result.certificate)}")
    if args.log:
        print(f"elapsed={result.elapsed:.3f}s", file=sys.stderr)
    if args.output:
        families.write_family(result.certificate, args.output)
        print(f"certificate={args.output}")
    return EXIT_OK


def cmd_classes(args: argparse.Namespace) -> int:
    classes = verify.equivalence_classes(factorize(args.n))
    print(f"n={args.n}")
    print(f"class_count={len(classes)}")
    histogram = Counter(len(v) for v in classes.values())
    for size in sorted(histogram):
        print(f"size={size} count={histogram[size]}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    value = search.oracle_extremal(factorize(args.n), args.quantity)
    print(f"quantity={args.quantity} n={args.n}")
    print(f"value={value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsum",
        description="Constructions, checks, bounds, and exact search for extremal "
        "families of permutations of Z_n under pairwise sum/difference constraints.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bounds", help="print the closed-form bounds table")
    p.add_argument("n", type=int)
    p.add_argument("quantity", choices=("s", "t", "f"))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build a family and write the family file")
    p.add_argument("prop", choices=("p1", "p2", "p3"))
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a family file pair by pair")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exact extremal value with certificate")
    p.add_argument("quantity", choices=("s", "t", "f"))
    p.add_argument("n", type=int)
    p.add_argument("--time-limit", type=float, default=None, metavar="SECS")
    p.add_argument("--threads", type=int, default=None, metavar="N")
    p.add_argument("--serial", action="store_true")
    p.add_argument("--log", action="store_true")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classes", help="affine equivalence classes of all n! permutations")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("oracle", help="independent reference value (small n)")
    p.add_argument("quantity", choices=("s", "t", "f"))
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
