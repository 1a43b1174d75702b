"""Command-line driver.

  mdverify verify  --suite all|curve,orders,...  --max-n N --trunc T --seed S
                   [--out certs.json] [--mutate]
  mdverify compute xn --n N [--tilde] [--format text|json]
  mdverify encode  --input system.txt --dialect meromorphic|analytic|entire-cm
                   [--out formula.json] [--format json|text]
  mdverify report  --in certs.json

verify exits nonzero exactly when some certificate FAILed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import encoder as encoder_mod
from .curve import multiply_point, specialize_tilde
from .verify import (
    ALL_SUITES,
    CampaignConfig,
    has_failures,
    load_certificates,
    report,
    run_campaign,
)


def _suites_arg(text: str):
    if text == "all":
        return ALL_SUITES
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _cmd_verify(args) -> int:
    cfg = CampaignConfig(
        suites=_suites_arg(args.suite),
        max_n=args.max_n,
        trunc=args.trunc,
        seed=args.seed,
        out=args.out,
        mutate=args.mutate,
    )
    certs = run_campaign(cfg)
    sys.stdout.write(report(certs))
    if args.out:
        print(f"certificates written to {args.out}")
    return 1 if has_failures(certs) else 0


def _cmd_compute_xn(args) -> int:
    pair = multiply_point(args.n)
    if args.tilde:
        x, y = specialize_tilde(pair)
    else:
        x, y = pair.x_n, pair.y_n
    if args.format == "json":
        out = {"n": args.n, "tilde": args.tilde, "x": str(x), "y": str(y)}
        print(json.dumps(out, indent=2))
    else:
        tag = "x~" if args.tilde else "x"
        print(f"{tag}_{args.n} = {x}")
        tag = "y~" if args.tilde else "y"
        print(f"{tag}_{args.n} = {y}")
    return 0


def _cmd_encode(args) -> int:
    with open(args.input) as fh:
        text = fh.read()
    system = encoder_mod.parse_diophantine(text)
    formula = encoder_mod.encode_system(system, args.dialect)
    encoder_mod.assert_positive_existential(formula)
    encoder_mod.dialect_invariants(formula, args.dialect)
    rendered = encoder_mod.render_formula(formula, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
        print(f"formula written to {args.out}")
    else:
        sys.stdout.write(rendered)
    return 0


def _cmd_report(args) -> int:
    certs = load_certificates(args.infile)
    sys.stdout.write(report(certs))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mdverify", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all",
                   help="comma-separated subset of %s or 'all'" % (ALL_SUITES,))
    v.add_argument("--max-n", dest="max_n", type=int, default=12)
    v.add_argument("--trunc", type=int, default=32)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="write certificates as JSON")
    v.add_argument("--mutate", action="store_true",
                   help="tamper with the addition law to prove checks can fail")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("compute", help="compute curve data")
    csub = c.add_subparsers(dest="what", required=True)
    cx = csub.add_parser("xn", help="coordinates of the n-th multiple of (z, 1)")
    cx.add_argument("--n", type=int, required=True)
    cx.add_argument("--tilde", action="store_true", help="specialize delta = -2")
    cx.add_argument("--format", choices=("text", "json"), default="text")
    cx.set_defaults(func=_cmd_compute_xn)

    e = sub.add_parser("encode", help="encode a Diophantine system")
    e.add_argument("--input", required=True)
    e.add_argument("--dialect", choices=encoder_mod.DIALECTS, required=True)
    e.add_argument("--out", default=None)
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=_cmd_encode)

    r = sub.add_parser("report", help="render a certificate file as a table")
    r.add_argument("--in", dest="infile", required=True)
    r.set_defaults(func=_cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
