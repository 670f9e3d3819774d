"""Command-line entry point: ``powtwo <command> [options]``.

Results go to standard output, progress logging to standard error.  Exit
codes: 0 ok, 2 invalid input, 3 budget exceeded, 4 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from . import beta as B
from . import constants as C
from . import modmath as MM
from . import pipeline as P
from .bounds import DEFAULT_PREC
from .cache import BetaCache, default_cache_dir
from .errors import BudgetExceededError, InvalidInputError, PowtwoError
from .report import emit_report, fraction_decimal

log = logging.getLogger("powtwo")

TABLE1_PRIMES = (22366891, 25781083, 164511353, 616318177)
TABLE1_REFERENCE = {22366891: "3089168.27", 25781083: "15652237.24",
                    164511353: "56626483.49", 616318177: "28269951.69"}


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    precision: int = DEFAULT_PREC
    output_format: str = "json"
    long_run: bool = False
    # execution-only settings; kept out of reports so they stay byte-identical
    jobs: int = 1
    cache_dir: str | None = None

    def for_report(self) -> dict:
        d = asdict(self)
        d.pop("jobs")
        d.pop("cache_dir")
        return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _precision(text: str) -> int:
    v = _positive(text)
    if v < 50:
        raise argparse.ArgumentTypeError(f"precision must be at least 50 digits, got {v}")
    return v


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--prec", type=_precision, default=DEFAULT_PREC,
                        help="decimal digits for certified bounds (>= 50)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="powtwo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("order", parents=[common], help="multiplicative order of 2 mod m")
    p.add_argument("m", type=_integer)
    p = sub.add_parser("factor", parents=[common], help="factor an integer")
    p.add_argument("n", type=_integer)
    p = sub.add_parser("beta", parents=[common], help="beta_l(f d) exactly")
    p.add_argument("--f", type=_integer, required=True)
    p.add_argument("--d", type=_integer, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--algo", choices=sorted(B.ALGORITHMS), default="auto")
    p = sub.add_parser("kappa", parents=[common], help="kappa(h)")
    p.add_argument("h", type=_integer)
    p = sub.add_parser("s-upper", parents=[common], help="upper bound for S(h)")
    p.add_argument("h", type=_integer)
    sub.add_parser("constants", parents=[common], help="certified c3, c3', c4")
    p = sub.add_parser("enumerate", parents=[common], help="admissible moduli f d")
    p.add_argument("--f", type=_integer, required=True)
    p.add_argument("--M", type=_positive, required=True)
    p = sub.add_parser("c0", parents=[common], help="certified c_{0,l}")
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--M1", type=_positive, default=37)
    p.add_argument("--M2", type=_positive, default=39)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--omit-unit", action="store_true",
                   help="drop the d = 1 term (reproduces the reference c0 values)")
    p.add_argument("--long", action="store_true", help="allow l >= 6 at full cutoffs")
    p = sub.add_parser("table1", parents=[common], help="recompute beta_7(3p) rows")
    p.add_argument("--primes", type=_positive, nargs="*", default=list(TABLE1_PRIMES))
    p = sub.add_parser("table2", parents=[common], help="minimum k' for l = 2..8")
    p.add_argument("--lambda0", default=P.LAMBDA0)
    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--long", action="store_true")
    return parser


def _config(args) -> RunConfig:
    skip = {"command", "format", "prec", "verbose", "jobs", "cache_dir", "long"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return RunConfig(args.command, params, args.prec, args.format,
                     bool(getattr(args, "long", False)),
                     getattr(args, "jobs", 1), getattr(args, "cache_dir", None))


def _run(args, cfg: RunConfig) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "order":
        rec = MM.mult_order2(args.m)
        return {"modulus": rec.modulus, "order": rec.order}, 0
    if cmd == "factor":
        fac = MM.factorize(args.n)
        return {"value": fac.value, "factors": [list(x) for x in fac.factors],
                "certified": fac.certified, "text": str(fac)}, 0
    if cmd == "beta":
        rec = B.beta_l(args.f, args.d, args.l, args.algo)
        return {"record": rec, "rows": [_beta_row(rec)]}, 0
    if cmd == "kappa":
        return {"h": args.h, "kappa": C.kappa(args.h)}, 0
    if cmd == "s-upper":
        return {"h": args.h, "S_upper": C.S_upper(args.h, C.c4_bound(prec=args.prec))}, 0
    if cmd == "constants":
        c4p = C.c4_partial(prec=args.prec)
        c3p = C.c3_partial(prec=args.prec)
        return {"c4_partial": c4p, "c4": C.c4_bound(prec=args.prec),
                "c3_partial": c3p, "c3": C.c3_bound(prec=args.prec),
                "c3_prime": C.c3prime(prec=args.prec),
                "c3_prime_exact": C.c3prime_exact()}, 0
    if cmd == "enumerate":
        mods = P.enumerate_admissible(args.f, args.M)
        rows = [{"f": a.f, "d": a.d, "rho_fd": a.rho_fd,
                 "primes": " ".join(f"{p}:{r}" for p, r in a.factor_primes)} for a in mods]
        return {"f": args.f, "M": args.M, "count": len(mods), "rows": rows}, 0
    if cmd == "c0":
        if args.l >= 6 and not args.long and max(args.M1, args.M2) >= 30:
            raise BudgetExceededError("l >= 6 at full cutoffs is a long run; pass --long")
        cache_dir = args.cache_dir or default_cache_dir()
        cache = BetaCache(cache_dir) if cache_dir else None
        rep = P.c0(args.l, args.M1, args.M2, cache=cache, jobs=args.jobs, prec=args.prec,
                   include_unit=not args.omit_unit)
        kp = P.min_kprime(args.l, rep.c0)
        rows = [{"l": rep.l, "M1": rep.M1, "M2": rep.M2, "c1": rep.c1, "c2": rep.c2,
                 "c0": rep.c0, "min_kprime": kp.kprime, "k": kp.k}]
        return {"report": rep, "min_kprime": kp, "rows": rows}, 0
    if cmd == "table1":
        rows = []
        status = 0
        for p in args.primes:
            try:
                rec = B.beta_l(3, p, 7)
                rows.append(_beta_row(rec) | {"reference": TABLE1_REFERENCE.get(p, "")})
            except BudgetExceededError as exc:
                rows.append({"f": 3, "d": p, "l": 7, "rho": "", "N_l": "", "beta": "",
                             "beta_2dp": "", "reference": TABLE1_REFERENCE.get(p, ""),
                             "status": f"budget: {exc}"})
                status = BudgetExceededError.exit_code
        for r in rows:
            r.setdefault("status", "ok")
        return {"rows": rows}, status
    if cmd == "table2":
        res = P.table2(lambda0=args.lambda0)
        rows = [{"l": r.l, "c0": r.c0, "kprime": r.kprime, "k": r.k,
                 "margin": fraction_decimal(r.margin, 12)}
                for r in res]
        return {"lambda0": args.lambda0, "rows": rows}, 0
    if cmd == "verify":
        from .verify import run_checks
        checks = run_checks(long=args.long)
        rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
        failed = [c.name for c in checks if not c.passed]
        return {"rows": rows, "failed": failed}, (4 if failed else 0)
    raise InvalidInputError(f"unknown command {cmd}")


def _beta_row(rec: B.BetaRecord) -> dict:
    return {"f": rec.f, "d": rec.d, "l": rec.l, "rho": rec.rho, "N_l": rec.n_count,
            "beta": f"{rec.beta.numerator}/{rec.beta.denominator}",
            "beta_2dp": fraction_decimal(rec.beta, 2)}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(asctime)s %(name)s: %(message)s")
        cfg = _config(args)
        result, status = _run(args, cfg)
        doc = {"version": __version__, "config": cfg.for_report(), "result": result}
        if cfg.output_format == "csv":
            sys.stdout.write(emit_report(result, "csv"))
        else:
            sys.stdout.write(emit_report(doc, cfg.output_format))
        return status
    except PowtwoError as exc:
        _error(exc, exc.exit_code)
        return exc.exit_code
    except (ValueError, OverflowError) as exc:
        _error(exc, InvalidInputError.exit_code)
        return InvalidInputError.exit_code
    except MemoryError as exc:
        _error(exc, BudgetExceededError.exit_code)
        return BudgetExceededError.exit_code


def _error(exc: BaseException, code: int) -> None:
    doc = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
