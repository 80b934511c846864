"""Command-line driver: ``vsing {verify,type,kernel,relation}``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import singlet, whittaker
from .state import WhittakerParams, format_rational, parse_rational, serialize
from .suite import SuiteConfig, build_report, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    p: int
    zeta: tuple | None = None
    max_weight: int = 6
    mode_window: int = 4
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        if self.p < 2:
            raise UsageError("p must be ≥ 2")
        if self.max_weight < 0:
            raise UsageError("max-weight must be ≥ 0")
        if self.mode_window < 0:
            raise UsageError("mode-window must be ≥ 0")


def parse_zeta(text: str):
    try:
        return tuple(parse_rational(x) for x in text.split(","))
    except ValueError as e:
        raise UsageError(f"bad --zeta: {e}") from None


def _dump(obj, output):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(cfg: RunConfig, verbose=False) -> int:
    suite_cfg = SuiteConfig(cfg.p, cfg.zeta, cfg.max_weight, cfg.mode_window, cfg.seed)
    results = run_suite(suite_cfg)
    report = build_report(suite_cfg, results)
    if cfg.output is not None:
        _dump(report, cfg.output)
    if cfg.output != "-":
        for r in results:
            if verbose or r.status != "pass":
                print(f"{r.status.upper():7} {r.name}: {r.details}")
        s = report["summary"]
        print(f"p={cfg.p}: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
    return EXIT_OK if report["summary"]["fail"] == 0 else EXIT_FAIL


def cmd_type(cfg: RunConfig) -> int:
    if cfg.zeta is None:
        raise UsageError("type needs --zeta")
    if len(cfg.zeta) < 2:
        raise UsageError("zeta needs at least two entries (r >= 1)")
    if cfg.zeta[-1] == 0:
        raise UsageError("last zeta entry must be nonzero")
    params = WhittakerParams.from_zeta(cfg.p, cfg.zeta)
    rec = whittaker.classification_record(params)
    _dump(rec.to_json(), cfg.output)
    return EXIT_OK


def cmd_kernel(cfg: RunConfig) -> int:
    out = []
    for w in range(cfg.max_weight + 1):
        kr = singlet.kernel_basis(cfg.p, w)
        out.append({"weight": w, "dim": kr.dim_M1, "kernel_dim": kr.kernel_dim,
                    "basis": [serialize(b) for b in kr.basis]})
    _dump(out, cfg.output)
    return EXIT_OK


def cmd_relation(cfg: RunConfig) -> int:
    try:
        res = singlet.solve_relation_2_20(cfg.p)
    except singlet.RelationError as e:
        obj = {"p": cfg.p, "coefficient": None, "error": str(e),
               "residual_terms_stated": len(e.residual_stated),
               "residual_terms_alternate": len(e.residual_alternate)}
        code = EXIT_FAIL
    else:
        obj = {
            "p": cfg.p,
            "coefficient": format_rational(res.coefficient),
            "matches": res.matches,
            "stated": format_rational(res.stated),
            "alternate": format_rational(res.alternate),
            "residual_terms_stated": len(res.residual_stated),
            "residual_terms_alternate": len(res.residual_alternate),
            "cross_check_omega0_cubed": res.cross_check,
        }
        code = EXIT_OK
    if cfg.output is not None:
        _dump(obj, cfg.output)
    else:
        for k in sorted(obj):
            print(f"{k}: {obj[k]}")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vsing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--zeta", type=str, default=None,
                        help="comma-separated rationals zeta_0,...,zeta_r (num/den or integers)")
        sp.add_argument("--max-weight", type=int, default=6)
        sp.add_argument("--mode-window", type=int, default=4)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write JSON to PATH ('-' or no value: stdout)")
        sp.add_argument("--verbose", action="store_true")

    for name, helptext in (("verify", "run the full verification suite"),
                           ("type", "classification record of M(1, zeta)"),
                           ("kernel", "screening kernel per weight"),
                           ("relation", "solve the omega/H relation coefficient")):
        common(sub.add_parser(name, help=helptext))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        zeta = parse_zeta(args.zeta) if args.zeta is not None else None
        cfg = RunConfig(args.p, zeta, args.max_weight, args.mode_window, args.seed, args.json)
        if args.command == "verify":
            return cmd_verify(cfg, args.verbose)
        if args.command == "type":
            return cmd_type(cfg)
        if args.command == "kernel":
            return cmd_kernel(cfg)
        return cmd_relation(cfg)
    except UsageError as e:
        print(f"vsing {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
