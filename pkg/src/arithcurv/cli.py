"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or parse error,
3 a denominator maps to a non-invertible element, 4 the term limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chern
from .errors import ExprParseError, NotInvertibleError, TermLimitError
from .padic import is_prime
from .ratfunc import RatFunc
from .report import render
from .suites import SUITES, SessionConfig, curvature_checks, frobenius_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONINVERTIBLE, EXIT_TERMS = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"--primes expects a comma-separated list of integers, got {text!r}") from None
    if not primes:
        raise UsageError("--primes is empty")
    if len(set(primes)) != len(primes):
        raise UsageError("--primes must be distinct")
    for p in primes:
        if p < 3 or not is_prime(p):
            raise UsageError(f"{p} is not an odd prime")
    return primes


def _load_q(spec: str, n_flag) -> tuple[str, list[list[int]], int]:
    if spec in chern.PRESETS:
        n = 2 if n_flag is None else n_flag
        try:
            return spec, chern.q_preset(spec, n), n
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"--q must be one of {', '.join(chern.PRESETS)} or a JSON matrix file")
    try:
        q = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {spec}: {exc}") from None
    ok = (isinstance(q, list) and q and all(isinstance(r, list) and len(r) == len(q) for r in q)
          and all(isinstance(v, int) and not isinstance(v, bool) for r in q for v in r))
    if not ok:
        raise UsageError(f"{spec} must hold a square JSON array of integers")
    if n_flag is not None and n_flag != len(q):
        raise UsageError(f"--n {n_flag} does not match the {len(q)}x{len(q)} matrix in {spec}")
    if not 1 <= len(q) <= 9:
        raise UsageError("matrix size must be between 1 and 9")
    return path.name, q, len(q)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithcurv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--q", default="split-antisym",
                       help="preset (split-antisym, split-sym, identity) or a JSON matrix file")
        p.add_argument("--n", type=int, default=None, help="matrix size for presets (default 2)")
        p.add_argument("--primes", default="3,5,7", help="comma-separated odd primes")
        p.add_argument("--precision", type=int, default=4, help="p-adic precision K")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    common(sub.add_parser("frobenius", help="Chern Frobenius lifts mod p^K and their diagrams"))
    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", action="append", default=None,
                   help=f"suite name or comma list, repeatable; one of {', '.join(SUITES)} or all")
    c = sub.add_parser("curvature", help="curvature of the structures on one element")
    common(c)
    c.add_argument("--element", required=True, help="rational function in the expression grammar")
    return parser


def _config(args) -> SessionConfig:
    primes = _parse_primes(args.primes)
    if args.precision < 1:
        raise UsageError("--precision must be at least 1")
    name, q, n = _load_q(args.q, args.n)
    suites = ()
    if args.command == "verify":
        requested = []
        for item in args.suite or ["all"]:
            requested += [s.strip() for s in item.split(",") if s.strip()]
        if "all" in requested:
            requested = list(SUITES)
        unknown = [s for s in requested if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
        suites = tuple(dict.fromkeys(requested))
    return SessionConfig(q_name=name, q=q, n=n, primes=primes, precision=args.precision,
                         fmt=args.format, suites=suites, element=getattr(args, "element", None))


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    element = None
    try:
        cfg = _config(args)
        if args.command == "frobenius":
            checks = frobenius_checks(cfg)
        elif args.command == "verify":
            checks = []
            for name in cfg.suites:
                checks += SUITES[name](cfg)
        else:
            element = RatFunc.parse(args.element, cfg.n)
            checks = curvature_checks(cfg, element)
    except (UsageError, ExprParseError) as exc:
        print(f"arithcurv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInvertibleError as exc:
        what = f" while evaluating {args.element!r}" if element is not None else ""
        print(f"arithcurv: non-invertible element{what}: {exc}", file=sys.stderr)
        return EXIT_NONINVERTIBLE
    except TermLimitError as exc:
        print(f"arithcurv: {exc}", file=sys.stderr)
        return EXIT_TERMS
    except ValueError as exc:
        print(f"arithcurv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg.session(args.command), checks, cfg.fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
