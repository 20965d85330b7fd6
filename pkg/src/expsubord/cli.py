"""``verify`` command line entry point."""

from __future__ import annotations

import argparse
import sys

from .class_maps import catalog_json
from .report import dumps, render, write_report
from .verify import ALL_FUNCTIONALS, ConfigError, RunConfig, TruncationTooLow, run_report


def _complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _functional(text: str) -> str:
    key = text.strip().lower()
    if key == "all" or key in ALL_FUNCTIONALS:
        return key
    raise argparse.ArgumentTypeError(f"unknown functional {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Check coefficient bounds for S*_e and C_e against seeded random search.",
    )
    p.add_argument("--class", dest="class_tag", choices=["star_e", "convex_e"], default="star_e")
    p.add_argument("--functional", action="append", type=_functional, metavar="NAME",
                   help="gamma1..gamma4, t21, zalcman, fekete-szego or all (repeatable; default all)")
    p.add_argument("--samples", type=int, default=10_000, help="random Schwarz draws (default 10000)")
    p.add_argument("--degree", type=int, default=4, help="max Blaschke degree, 0..4 (default 4)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=_complex, default=0j, metavar="RE,IM")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--fs-sweep", action="store_true", help="use the built-in (lambda, mu) grid")
    p.add_argument("--tau-grid", type=int, default=6, help="tau grid density, 0 disables (default 6)")
    p.add_argument("--refine", type=int, default=20, help="local refinement passes (default 20)")
    p.add_argument("--truncation", type=int, default=8)
    p.add_argument("--conjecture", type=int, action="append", default=[], metavar="N",
                   help="also probe |gamma_N| <= 1/(2N), N in 5..7")
    p.add_argument("--format", dest="output_format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--out", dest="output_path", default=None, help="write here instead of stdout")
    p.add_argument("--allow-flags", action="store_true", help="exit 0 even if a report is flagged")
    p.add_argument("--export-catalog", action="store_true", help="print the extremal catalog as JSON and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.export_catalog:
        sys.stdout.write(dumps(catalog_json(args.truncation)) + "\n")
        return 0
    functionals = tuple(args.functional) if args.functional else ("all",)
    try:
        cfg = RunConfig(
            class_tag=args.class_tag,
            functionals=functionals,
            sample_count=args.samples,
            schwarz_degree=args.degree,
            tau_grid_density=args.tau_grid,
            seed=args.seed,
            refine_iterations=args.refine,
            truncation=args.truncation,
            output_format=args.output_format,
            output_path=None,
            lam=args.lam,
            mu=args.mu,
            fs_sweep=args.fs_sweep,
            conjecture=tuple(args.conjecture),
        )
        result = run_report(cfg)
    except (ConfigError, TruncationTooLow) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return 2
    if args.output_path:
        try:
            write_report(result, args.output_path, args.output_format)
        except OSError as exc:
            print(f"verify: error: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(render(result, args.output_format))
    for r in result.reports:
        print(f"{r.verdict:20s} {r.theorem}", file=sys.stderr)
    if result.flagged and not args.allow_flags:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
