"""``segre-sigma3`` command line.

Exit codes: 0 member / true, 1 non-member / false, 2 bad input or contract
violation.  All mode indices are 0-based.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import Sigma3Error
from .exact import rank
from .flattening import Bipartition, flattening_rank
from .membership import CaseLabel, classify_case, sigma2, sigma3
from .normal_forms import NormalFormSpec, generate, parse_family
from .strassen import Tripartition, strassen_commutator, strassen_ok
from .symmetric import SymTensor, catalecticant, symmetrization_pipeline
from .tensorfile import format_rational, read_tensor, write_tensor

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _report(cert, as_json: bool) -> int:
    if as_json:
        print(cert.dumps())
    else:
        print(cert.verdict.value)
        w = cert.witness
        if w is not None:
            print(f"witness: {w.family} {w.partition} rank {w.rank} > {w.bound}")
    return EXIT_TRUE if cert.is_member else EXIT_FALSE


def cmd_sigma3(args) -> int:
    return _report(sigma3(read_tensor(args.tensor), full_trace=args.full_trace), args.json)


def cmd_sigma2(args) -> int:
    return _report(sigma2(read_tensor(args.tensor), full_trace=args.full_trace), args.json)


def cmd_rank(args) -> int:
    t = read_tensor(args.tensor)
    p = Bipartition.from_left(args.left, t.order)
    p.validate(t.order)
    print(flattening_rank(t, p))
    return EXIT_TRUE


def cmd_strassen(args) -> int:
    t = read_tensor(args.tensor)
    report = strassen_ok(t, Tripartition.for_pair(args.a, args.b, t.order), args.r)
    print(f"rank {report.rank} bound {report.bound}")
    return EXIT_TRUE if report.ok else EXIT_FALSE


def cmd_commutator(args) -> int:
    entries = strassen_commutator(read_tensor(args.tensor))
    print(" ".join(format_rational(x) for x in entries))
    return EXIT_FALSE if any(entries) else EXIT_TRUE


def cmd_gen(args) -> int:
    family, r = parse_family(args.family)
    t = generate(NormalFormSpec(family, tuple(args.dims), args.seed, rank=r))
    write_tensor(args.out, t, args.format)
    return EXIT_TRUE


def cmd_symmetrize(args) -> int:
    result = symmetrization_pipeline(read_tensor(args.tensor), args.pivot)
    if not result.ok:
        print(f"no invertible kernel element at mode {result.failed_mode}")
        return EXIT_FALSE
    write_tensor(args.out, result.form.to_tensor(), args.format)
    print(f"degree {result.form.degree} form written to {args.out}")
    return EXIT_TRUE


def cmd_catalecticant(args) -> int:
    form = SymTensor(read_tensor(args.form))
    print(rank(catalecticant(form, args.a)))
    return EXIT_TRUE


def cmd_classify(args) -> int:
    label = classify_case(read_tensor(args.tensor))
    print(label.value)
    return EXIT_FALSE if label is CaseLabel.OUTSIDE else EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segre-sigma3", description="Exact membership tests for the third secant variety of a Segre product.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tensor_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--tensor", required=True, metavar="FILE")
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (("sigma3", cmd_sigma3, "decide border rank <= 3"), ("sigma2", cmd_sigma2, "decide border rank <= 2")):
        p = tensor_cmd(name, func, help_)
        p.add_argument("--full-trace", action="store_true", help="evaluate every family instead of stopping at the first failure")
        p.add_argument("--json", action="store_true", help="print the certificate as JSON")

    p = tensor_cmd("rank", cmd_rank, "rank of a flattening")
    p.add_argument("--left", required=True, type=_int_list, metavar="I,J,...")

    p = tensor_cmd("strassen", cmd_strassen, "exterior flattening rank against r (dim A - 1)")
    p.add_argument("--a", required=True, type=int)
    p.add_argument("--b", required=True, type=int)
    p.add_argument("--r", type=int, default=3)

    tensor_cmd("commutator", cmd_commutator, "degree 4 commutator of a 3x3x3 tensor")

    p = sub.add_parser("gen", help="write a seeded normal-form tensor")
    p.add_argument("--family", required=True)
    p.add_argument("--dims", required=True, type=_int_list, metavar="D1,D2,...")
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--format", choices=("dense", "sparse"), default="dense")
    p.set_defaults(func=cmd_gen)

    p = tensor_cmd("symmetrize", cmd_symmetrize, "fold a 2x...x2 tensor into a binary form")
    p.add_argument("--pivot", required=True, type=int)
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--format", choices=("dense", "sparse"), default="dense")

    p = sub.add_parser("catalecticant", help="rank of the (a, d-a) catalecticant of a symmetric tensor")
    p.add_argument("--form", required=True, metavar="FILE")
    p.add_argument("--a", required=True, type=int)
    p.set_defaults(func=cmd_catalecticant)

    tensor_cmd("classify", cmd_classify, "case label of a member")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except (Sigma3Error, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
