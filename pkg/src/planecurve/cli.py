"""Command-line front end.

Exit codes: 0 success, 1 mathematical falsification, 2 usage error,
3 symbolic expansion cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys

from planecurve.curveode import (
    BASES,
    DEFAULT_CAP,
    SymbolicCapExceeded,
    build_full_matrix,
    build_sylvester_matrix,
    curve_ode,
)
from planecurve.invariants import (
    NABLA_D,
    NABLA_E,
    NotInPsiSubring,
    dehomogenize,
    halphen_invariant,
    homogenize,
    monge_invariant,
    nabla,
)
from planecurve.oracle import verify_degree
from planecurve.poly import to_text
from planecurve.render import (
    cleared_text,
    equation_json,
    equation_latex,
    equation_text,
    matrix_latex,
    matrix_text,
    poly_latex,
)
from planecurve.symfunc import lambda_to_psi, reexpress

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _degree(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("curve degree must be at least 2")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planecurve",
        description="Differential equations of plane algebraic curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree_required=True):
        p.add_argument("--degree", type=_degree, required=degree_required)
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                       help="largest matrix side expanded symbolically")

    p = sub.add_parser("emit", help="print the equation of a degree-n curve")
    common(p)
    p.add_argument("--basis", choices=BASES, default="D")

    p = sub.add_parser("check", help="semi-invariance checks")
    common(p, degree_required=False)
    p.add_argument("--halphen", action="store_true", help="check the Halphen invariant")

    p = sub.add_parser("verify", help="vanishing/discrimination on random curves")
    common(p)
    p.add_argument("--trials", type=_positive, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("symbolic", "numeric"), default="symbolic")

    p = sub.add_parser("matrix", help="dump an elimination matrix")
    common(p)
    p.add_argument("--basis", choices=("A", "D"), default="D",
                   help="A: full matrix, D: Sylvester matrix")

    for name in ("monge", "halphen"):
        p = sub.add_parser(name, help=f"print the {name.capitalize()} invariant")
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--basis", choices=("psi", "E", "D"), default="psi")
    return parser


def cmd_emit(args, out) -> int:
    ode = curve_ode(args.degree, args.basis, args.cap)
    if args.format == "json":
        print(_dump(equation_json(ode)), file=out)
    elif args.format == "latex":
        print(equation_latex(ode), file=out)
    else:
        print(equation_text(ode), file=out)
        if args.basis == "derivative":
            print(f"cleared: {cleared_text(ode)}", file=out)
    return EXIT_OK


def _kernel_items(args) -> list:
    items = []
    if args.degree is not None:
        ode = curve_ode(args.degree, "D", args.cap)
        image = nabla(NABLA_D, dehomogenize(ode.poly, "D"))
        items.append((f"degree-{args.degree} equation in ker nabla_D", image.is_zero()))
        items.append(("nabla_E psi_1 = 1", nabla(NABLA_E, lambda_to_psi(1, "E")) == 1))
        for i in range(2, 9):
            image = nabla(NABLA_E, lambda_to_psi(i, "E"))
            items.append((f"psi_{i} in ker nabla_E", image.is_zero()))
    if args.halphen or args.degree is not None:
        image = nabla(NABLA_E, halphen_invariant().to_lambda("E"))
        items.append(("halphen in ker nabla_E", image.is_zero()))
    return items


def cmd_check(args, out) -> int:
    items = _kernel_items(args)
    if args.format == "json":
        print(_dump({"items": [{"name": n, "pass": ok} for n, ok in items],
                     "pass": all(ok for _, ok in items)}), file=out)
    else:
        for name, ok in items:
            print(f"{'PASS' if ok else 'FAIL'} {name}", file=out)
    return EXIT_OK if all(ok for _, ok in items) else EXIT_FALSIFIED


def cmd_verify(args, out) -> int:
    report = verify_degree(args.degree, args.trials, args.seed, args.mode, args.cap)
    if args.format == "json":
        print(_dump(report.to_json()), file=out)
    else:
        print(f"degree {report.n}, mode {report.mode}, seed {report.seed}", file=out)
        print(f"vanishing: {report.passes}/{report.trials}", file=out)
        print(f"discrimination nonzero: {report.discrimination_nonzero}/{report.trials}"
              f" (accidental zeros resampled: {report.accidental_zeros})", file=out)
        for f in report.failures:
            print(f"FAIL trial {f['trial']} ({f['kind']}): value {f['value']}", file=out)
        print("PASS" if report.ok else "FAIL", file=out)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def cmd_matrix(args, out) -> int:
    M = build_full_matrix(args.degree) if args.basis == "A" else build_sylvester_matrix(args.degree)
    if args.format == "json":
        print(_dump(M.to_json()), file=out)
    elif args.format == "latex":
        print(matrix_latex(M), file=out)
    else:
        print(matrix_text(M), file=out)
    return EXIT_OK


def _invariant_output(psi, degree, args, out) -> int:
    if args.basis == "psi":
        lam = None
    elif args.basis == "E":
        lam = homogenize(psi, degree, "E")
    else:
        lam = reexpress(homogenize(psi, degree, "E"), "E", "D")
    if args.format == "json":
        print(_dump({"psi": psi.to_json(),
                     "lambda": lam.to_json() if lam is not None else None}), file=out)
    elif args.format == "latex":
        print(psi.to_latex() if lam is None else poly_latex(lam), file=out)
    else:
        print(psi.to_text() if lam is None else to_text(lam), file=out)
    return EXIT_OK


def cmd_monge(args, out) -> int:
    return _invariant_output(monge_invariant(), 3, args, out)


def cmd_halphen(args, out) -> int:
    psi = halphen_invariant()
    degree = psi.to_lambda("E").degree()
    return _invariant_output(psi, degree, args, out)


COMMANDS = {
    "emit": cmd_emit,
    "check": cmd_check,
    "verify": cmd_verify,
    "matrix": cmd_matrix,
    "monge": cmd_monge,
    "halphen": cmd_halphen,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.degree is None and not args.halphen:
        parser.error("check needs --degree or --halphen")
    try:
        return COMMANDS[args.command](args, out)
    except SymbolicCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotInPsiSubring as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
