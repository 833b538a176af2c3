"""Command-line front end.

Exit status: 0 success (or FOO verdict), 1 malformed input, 2 numeric
failure, 3 negative FOO verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import foo, gmi, low_gmi, transform
from .constellation import Constellation, ConstellationError, catalog, normalize_to_nbc

EXIT_MALFORMED = 1
EXIT_NUMERIC = 2
EXIT_NOT_FOO = 3

# Example shaping families: (catalog name, M, labeling, bit-probability template).
SHAPING_FAMILIES = {
    "pam8-brgc": ("pam", 8, "brgc-rev", lambda p: [0.5, p, p]),
    "pam8-nbc": ("pam", 8, "nbc", lambda p: [0.5, p, p]),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text}") from exc


def _load(path: str) -> Constellation:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    c = Constellation.from_json(text)
    return c if c.is_nbc else normalize_to_nbc(c)


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_catalog(args) -> int:
    M = None if args.m is None else 1 << args.m
    c = catalog(args.name, M, args.labeling, args.bits)
    _emit(c.to_dict() | {"name": c.name}, args.out)
    return 0


def _cmd_transform(args) -> int:
    with open(args.inp) as fh:
        raw = json.load(fh)
    c = _load(args.inp)
    if args.inverse:
        b = args.bits or raw.get("source_bit_probs")
        if b is None:
            raise UsageError("--inverse needs --bits or a 'source_bit_probs' entry")
        X = transform.inverse(c.points, b)
        out = Constellation(X, b).to_dict()
    else:
        S = transform.forward(c.points, c.bits)
        out = Constellation(S, np.full(c.m, 0.5)).to_dict()
        out["source_bit_probs"] = c.bits.tolist()
    _emit(out, args.out)
    return 0


def _cmd_params(args) -> int:
    c = _load(args.inp)
    _emit(low_gmi.params_via_transform(c.points, c.bits).to_dict())
    return 0


def _cmd_foo_check(args) -> int:
    c = _load(args.inp)
    report = foo.is_foo(c.points, c.bits, args.tol)
    _emit(report.to_dict())
    return 0 if report.is_foo else EXIT_NOT_FOO


def _cmd_gmi(args) -> int:
    c = _load(args.inp)
    point = gmi.gmi_point(c, 10 ** (args.snr_db / 10), args.quad)
    _emit(point.to_dict())
    return 0


def _cmd_sweep(args) -> int:
    c = _load(args.inp)
    curve = gmi.gmi_sweep(c, gmi.db_grid(args.start, args.stop, args.step),
                          args.quad, args.workers)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            curve.write_csv(fh)
    else:
        curve.write_csv(sys.stdout)
    return 0


def _cmd_sweep_shaping(args) -> int:
    if args.name not in SHAPING_FAMILIES:
        raise UsageError(f"unknown family {args.name!r}; choose from {sorted(SHAPING_FAMILIES)}")
    name, M, labeling, template = SHAPING_FAMILIES[args.name]
    rows = []
    for p in args.p_list:
        c = catalog(name, M, labeling, template(p))
        lp = low_gmi.params_via_transform(c.points, c.bits)
        row = {"p": p, "bit_probs": c.bits.tolist(), "alpha": lp.alpha,
               "alpha_inv_db": lp.alpha_inv_db,
               "gmi_ceiling": gmi.bit_entropy_sum(c)}
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            curve = gmi.gmi_sweep(c, gmi.db_grid(args.start, args.stop, args.step),
                                  args.quad, args.workers)
            path = out / f"{args.name}_p{p:g}.csv"
            with open(path, "w", newline="") as fh:
                curve.write_csv(fh)
            row["csv"] = str(path)
        rows.append(row)
    _emit({"family": args.name, "curves": rows})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bicm-lowsnr",
                 description="Low-SNR analysis of shaped BICM constellations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="emit a named constellation as JSON")
    p.add_argument("--name", required=True,
                   help="pam, qam_square, psk, ampm8 or star8qam")
    p.add_argument("--m", type=int, help="bits per symbol")
    p.add_argument("--bits", type=_floats, help="zero-bit probabilities p0,p1,...")
    p.add_argument("--labeling", default="nbc", choices=["nbc", "brgc", "brgc-rev"])
    p.add_argument("--out")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("transform", help="probability-dependent transform of a constellation")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--bits", type=_floats,
                   help="bit probabilities for --inverse (default: source_bit_probs)")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("params", help="low-GMI parameters mu, Es, alpha")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("foo-check", help="first-order optimality test (exit 3 if not FOO)")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--tol", type=float, default=foo.DEFAULT_TOL)
    p.set_defaults(func=_cmd_foo_check)

    def numeric(p):
        p.add_argument("--quad", type=int, default=gmi.DEFAULT_ORDER,
                       help="Gauss-Hermite nodes per dimension")
        p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("gmi", help="CM-MI and BICM-GMI at one SNR")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--quad", type=int, default=gmi.DEFAULT_ORDER)
    p.set_defaults(func=_cmd_gmi)

    p = sub.add_parser("sweep", help="CSV of CM-MI/BICM-GMI over an SNR grid")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--from", dest="start", type=float, default=-35.0)
    p.add_argument("--to", dest="stop", type=float, default=25.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--out")
    numeric(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("sweep-shaping", help="bit-probability family [0.5, p, p]")
    p.add_argument("--name", required=True, help=", ".join(SHAPING_FAMILIES))
    p.add_argument("--p-list", type=_floats, required=True)
    p.add_argument("--out-dir", help="also write one CSV curve per p")
    p.add_argument("--from", dest="start", type=float, default=-35.0)
    p.add_argument("--to", dest="stop", type=float, default=25.0)
    p.add_argument("--step", type=float, default=0.5)
    numeric(p)
    p.set_defaults(func=_cmd_sweep_shaping)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (low_gmi.ZeroEnergyError, gmi.NumericError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ConstellationError, json.JSONDecodeError, OSError,
            KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
