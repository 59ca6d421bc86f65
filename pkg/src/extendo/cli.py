"""Command-line front end.

    extendo price      --spec S --market M [--form rect|diff] [--reproduce-errata]
    extendo boundaries --spec S --market M
    extendo validate   --spec S --market M [--paths N] [--seed S]
    extendo errata     --spec S --market M [--paths N] [--seed S]

Every command prints one JSON document (or an aligned text table with
``--table``).  Exit codes: 0 success, 2 input error, 3 numeric failure,
4 validation failure.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .boundary import solve_boundaries
from .errors import InputError, SolverError
from .extendible import price, price_put_haug1998, price_put_longstaff1990
from .oracle import McConfig, mc_price, mc_price_two_stage
from .serialize import (
    boundaries_to_dict,
    dumps,
    load_market,
    load_spec,
    market_to_dict,
    report_to_dict,
    spec_to_dict,
)
from .termstructure import period_params

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_VALIDATION = 4

MC_SIGMAS = 3.0
ERRATA_SIGMAS = 10.0


def _manifest(args, spec, market) -> dict:
    stamp = None
    if args.timestamp:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return {
        "command": args.command,
        "inputs": {"spec": str(args.spec), "market": str(args.market)},
        "spec": spec_to_dict(spec),
        "market": market_to_dict(market),
        "version": __version__,
        "timestamp": stamp,
    }


def _flatten(doc, prefix=""):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], doc


def render_table(doc: dict) -> str:
    rows = []
    for key, value in _flatten(doc):
        if isinstance(value, float):
            text = "inf" if math.isinf(value) else f"{value:.12g}"
        else:
            text = "null" if value is None else str(value).lower() if isinstance(value, bool) else str(value)
        rows.append((key, text))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _emit(doc: dict, args) -> None:
    sys.stdout.write(render_table(doc) if args.table else dumps(doc))


def cmd_price(args) -> int:
    spec, market = load_spec(args.spec), load_market(args.market)
    report = price(spec, market, form=args.form)
    doc = {"manifest": _manifest(args, spec, market)}
    doc.update(report_to_dict(report))
    if args.reproduce_errata:
        if spec.kind != "put":
            raise InputError("--reproduce-errata applies to puts only")
        doc["errata"] = {
            "longstaff1990": price_put_longstaff1990(spec, market, reproduce_errata=True),
            "haug1998": price_put_haug1998(spec, market, reproduce_errata=True),
        }
    _emit(doc, args)
    return EXIT_OK


def cmd_boundaries(args) -> int:
    spec, market = load_spec(args.spec), load_market(args.market)
    bounds = solve_boundaries(spec, period_params(market, spec.T1, spec.T2))
    doc = {"manifest": _manifest(args, spec, market)}
    doc.update(boundaries_to_dict(bounds))
    _emit(doc, args)
    return EXIT_OK


def _mc_dict(est) -> dict:
    return {"mean": est.mean, "std_error": est.std_error, "paths": est.paths_used}


def cmd_validate(args) -> int:
    spec, market = load_spec(args.spec), load_market(args.market)
    cfg = McConfig(paths=args.paths, seed=args.seed)
    closed = price(spec, market).price
    one = mc_price(spec, market, cfg)
    two = mc_price_two_stage(spec, market, cfg)
    z_one = (closed - one.mean) / one.std_error if one.std_error > 0 else 0.0
    combined = math.hypot(one.std_error, two.std_error)
    z_two = (closed - two.mean) / combined if combined > 0 else 0.0
    ok = abs(z_one) <= MC_SIGMAS and abs(z_two) <= MC_SIGMAS
    doc = {
        "manifest": _manifest(args, spec, market),
        "closed_form": closed,
        "mc": _mc_dict(one),
        "mc_two_stage": _mc_dict(two),
        "z_mc": z_one,
        "z_two_stage": z_two,
        "criterion_sigmas": MC_SIGMAS,
        "pass": ok,
    }
    _emit(doc, args)
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_errata(args) -> int:
    spec, market = load_spec(args.spec), load_market(args.market)
    if spec.kind != "put":
        raise InputError("errata report is defined for puts only")
    longstaff = price_put_longstaff1990(spec, market, reproduce_errata=True)
    haug = price_put_haug1998(spec, market, reproduce_errata=True)
    corrected = price(spec, market).price
    est = mc_price(spec, market, McConfig(paths=args.paths, seed=args.seed))

    def dev(v):
        return (v - est.mean) / est.std_error if est.std_error > 0 else 0.0

    rows = {
        "corrected": {"value": corrected, "deviation_se": dev(corrected)},
        "longstaff1990": {"value": longstaff, "deviation_se": dev(longstaff)},
        "haug1998": {"value": haug, "deviation_se": dev(haug)},
    }
    ok = abs(dev(corrected)) <= MC_SIGMAS
    doc = {
        "manifest": _manifest(args, spec, market),
        "mc": _mc_dict(est),
        "formulas": rows,
        "corrected_matches_mc": ok,
        "published_rejected": all(
            abs(rows[k]["deviation_se"]) > ERRATA_SIGMAS for k in ("longstaff1990", "haug1998")
        ),
    }
    _emit(doc, args)
    return EXIT_OK if ok else EXIT_VALIDATION


def _paths(text: str) -> int:
    try:
        n = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid path count {text!r}") from None
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extendo", description="Holder-extendible option pricer"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--spec", required=True, help="contract JSON file")
        p.add_argument("--market", required=True, help="market JSON file")
        p.add_argument("--table", action="store_true", help="aligned text instead of JSON")
        p.add_argument(
            "--timestamp", action="store_true", help="record wall-clock time in the manifest"
        )

    p = sub.add_parser("price", help="closed-form price report")
    common(p)
    p.add_argument("--form", choices=("rect", "diff"), default="rect")
    p.add_argument(
        "--reproduce-errata",
        action="store_true",
        help="also report the as-published (erroneous) put formulas",
    )
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("boundaries", help="critical spot levels at T1")
    common(p)
    p.set_defaults(func=cmd_boundaries)

    for name, func, help_ in (
        ("validate", cmd_validate, "closed form vs Monte Carlo"),
        ("errata", cmd_errata, "corrected vs as-published put formulas"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--paths", type=_paths, default=1_000_000)
        p.add_argument("--seed", type=int, default=20100928)
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"extendo {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, ArithmeticError) as exc:
        print(f"extendo {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
