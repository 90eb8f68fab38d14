"""Command-line interface.

Subcommands: ``rates``, ``fit``, ``sweep``, ``simulate``, ``reproduce``.
Exit codes: 0 success, 1 reproduction failure, 2 usage error, 3
domain/math error.  The ``PHACKING_OUT_DIR`` environment variable sets
the default output directory for file-writing subcommands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import estimator, mc, rates, sweeps
from .errors import ModelError

EXIT_OK = 0
EXIT_REPRODUCE_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_PAPER_FIG1 = {
    (0.05, 0.0): 0.38,
    (0.005, 0.0): 0.06,
    (0.05, 0.05): 0.57,
    (0.005, 0.05): 0.44,
    (0.05, 0.15): 0.75,
    (0.005, 0.15): 0.71,
}


def _parse_prior_odds(text: str) -> float:
    """``A:B`` odds in favor of H1 -> phi = B / (A + B)."""
    try:
        a, b = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}")
    if a < 0 or b < 0 or a + b == 0:
        raise argparse.ArgumentTypeError(f"bad odds {text!r}")
    return b / (a + b)


def _add_design_flags(parser, default_alpha=0.05):
    parser.add_argument("--alpha", type=float, default=default_alpha,
                        help="operative significance cutoff (default %(default)s)")
    g = parser.add_mutually_exclusive_group()
    g.add_argument("--beta", type=float, help="Type-II error rate at the cutoff")
    g.add_argument("--power", type=float, help="power at the cutoff (default 0.8)")
    g = parser.add_mutually_exclusive_group()
    g.add_argument("--phi", type=float, help="proportion of true nulls")
    g.add_argument("--prior-odds", type=_parse_prior_odds, metavar="A:B",
                   help="odds in favor of H1 (default 1:10)")


def _add_hacking_flags(parser):
    parser.add_argument("--h", type=float, default=0.0, help="hacking rate (default 0)")
    g = parser.add_mutually_exclusive_group()
    g.add_argument("--psi", type=float, help="persistence at the cutoff (default 1)")
    g.add_argument("--pi", type=float,
                   help="persistence parameter; uses the conservative bound psi = pi")
    parser.add_argument("--baseline-alpha", type=float, default=0.05,
                        help="baseline cutoff at which all hacked P-values are "
                             "significant (default %(default)s)")


def _design_from(args) -> rates.TestDesign:
    beta = args.beta if args.beta is not None else 1.0 - (args.power if args.power is not None else 0.8)
    phi = args.phi if args.phi is not None else (args.prior_odds if args.prior_odds is not None else 10.0 / 11.0)
    return rates.TestDesign(args.alpha, beta, phi)


def _regime_from(args) -> rates.HackingRegime:
    if args.pi is not None:
        spec = rates.LowerBoundPsi(args.pi)
    else:
        spec = rates.DirectPsi(args.psi if args.psi is not None else 1.0)
    return rates.HackingRegime(h=args.h, baseline_alpha=args.baseline_alpha, psi_spec=spec)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("PHACKING_OUT_DIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(record: dict) -> None:
    print(json.dumps(record, indent=2, sort_keys=True))


def cmd_rates(args) -> int:
    design = _design_from(args)
    regime = _regime_from(args)
    psi = rates.resolve_psi(regime, design.alpha)
    fpr = rates.fpr_regime(design, regime.h, psi)
    rr = rates.rr_regime(design, regime.h, psi)
    table = rates.table_regime(design, regime.h, psi)
    _emit({
        "inputs": {
            "alpha": design.alpha,
            "beta": design.beta,
            "phi": design.phi,
            "h": regime.h,
            "baseline_alpha": regime.baseline_alpha,
        },
        "resolved_psi": psi,
        "fpr": fpr,
        "rr": rr,
        "table": {
            **table.cells(),
            "phi_sound": table.phi_sound,
            "mass_unsound": table.mass_unsound,
            "mass_sound_false": table.mass_sound_false,
        },
    })
    return EXIT_OK


def _load_replication(args) -> estimator.ReplicationData:
    if args.builtin:
        if args.builtin != "psych-rep":
            raise ModelError(f"unknown builtin dataset {args.builtin!r}")
        return estimator.PSYCH_REP
    if not args.data:
        raise ModelError("supply --builtin psych-rep or --data FILE")
    doc = json.loads(Path(args.data).read_text())
    strata = tuple(
        estimator.ReplicationStratum(s["p_low"], s["p_high"], s["total"], s["replicated"])
        for s in doc.get("strata", [])
    )
    return estimator.ReplicationData(doc["total"], doc["replicated"], strata)


def cmd_fit(args) -> int:
    data = _load_replication(args)
    design = _design_from(args)
    record = {
        "design": {"alpha": design.alpha, "beta": design.beta, "phi": design.phi},
        "observed_rate": data.rate,
    }
    if args.stratified:
        est = estimator.fit_h_stratified(data, design, model=args.model)
        record.update({
            "point": est.point,
            "range_low": est.range_low,
            "range_high": est.range_high,
            "residuals": list(est.residuals),
            "model": args.model,
        })
    else:
        record["point"] = estimator.fit_h(data, design)
    _emit(record)
    return EXIT_OK


def _figure_results(figure: int, h: float | None):
    if figure == 1:
        return [sweeps.sweep_figure1()]
    if figure == 2:
        return [sweeps.sweep_figure2()]
    if figure == 3:
        hs = [h] if h is not None else [0.05, 0.15]
        return [sweeps.sweep_figure3(hh) for hh in hs]
    if figure == 4:
        return [sweeps.sweep_figure4()]
    if figure == 5:
        hs = [h] if h is not None else [0.05, 0.15]
        return [sweeps.sweep_figure5(hh) for hh in hs]
    raise ValueError(figure)


def _write_results(results, out: Path, want_svg: bool) -> list[Path]:
    written = []
    for result in results:
        csv_path = out / f"{result.figure_id}.csv"
        csv_path.write_text(sweeps.render_csv(result))
        written.append(csv_path)
        if want_svg:
            svg_path = out / f"{result.figure_id}.svg"
            svg_path.write_text(sweeps.render_svg(result))
            written.append(svg_path)
    return written


def cmd_sweep(args) -> int:
    if args.figure not in (1, 2, 3, 4, 5):
        print(f"error: unknown figure id {args.figure}", file=sys.stderr)
        return EXIT_USAGE
    results = _figure_results(args.figure, args.h)
    written = _write_results(results, _out_dir(args), args.svg)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_simulate(args) -> int:
    design = _design_from(args)
    regime = _regime_from(args)
    cutoff = args.cutoff if args.cutoff is not None else design.alpha
    config = mc.SimConfig(n_tests=args.n, seed=args.seed, design=design,
                          hacking=regime, cutoff=cutoff)
    report = mc.crosscheck(config)
    out = report.outcome
    _emit({
        "generator": out.generator,
        "seed": out.seed,
        "n_tests": out.n_tests,
        "cells": out.cells(),
        "column_counts": {
            "sound_true": out.n_sound_true,
            "unsound": out.n_unsound,
            "sound_false": out.n_sound_false,
        },
        "empirical_fpr": out.empirical_fpr,
        "empirical_rr": out.empirical_rr,
        "se_fpr": out.se_fpr,
        "se_rr": out.se_rr,
        "empty_denominator": out.empty_denominator,
        "crosscheck": [asdict(row) for row in report.rows],
    })
    return EXIT_OK


def _reproduction_claims(strict: bool):
    """(label, computed, expected, tol, level) tuples; level is CHECK or
    INFO.  INFO entries document gaps between derived values and numbers
    the source read off its own figures; strict mode promotes them."""
    phi = 10.0 / 11.0
    old = rates.TestDesign(0.05, 0.20, phi)
    claims = []

    for (alpha, h), paper in _PAPER_FIG1.items():
        design = rates.TestDesign(alpha, 0.20, phi)
        claims.append((f"fpr(alpha={alpha}, h={h}, power=0.80, psi=1)",
                       rates.fpr_hacked(design, h), paper, 0.005, "CHECK"))

    claims.append(("rr_sound(0.05, power=0.80, odds 1:10)",
                   rates.rr_sound(old), 0.615, 0.005, "CHECK"))
    claims.append(("psych-rep observed rate 36/97",
                   estimator.PSYCH_REP.rate, 36.0 / 97.0, 0.0, "CHECK"))

    h_fit = estimator.fit_h(estimator.PSYCH_REP, old)
    claims.append(("fit_h(36/97) within [0.070, 0.080]",
                   h_fit, 0.075, 0.005, "CHECK"))
    claims.append(("fit_h self-consistency: rr_hacked(h_fit) - 36/97",
                   rates.rr_hacked(old, h_fit) - 36.0 / 97.0, 0.0, 1e-9, "CHECK"))
    claims.append(("paper h point estimate 0.075 vs derived root (documented gap)",
                   h_fit, 0.075, 0.005, "INFO"))

    est = estimator.fit_h_stratified(estimator.PSYCH_REP, old)
    claims.append(("stratified range low vs 0.05", est.range_low, 0.05, 0.03, "CHECK"))
    claims.append(("stratified range high vs 0.15", est.range_high, 0.15, 0.03, "CHECK"))

    new_50 = rates.TestDesign(0.005, 0.50, phi)
    claims.append(("rr ratio at power 0.50, h=0.05, psi=0.75",
                   estimator.rr_ratio(new_50, old, 0.05, 0.75), 1.19, 0.01, "CHECK"))
    claims.append(("rr ratio at power 0.50, h=0.15, psi=1",
                   estimator.rr_ratio(new_50, old, 0.15, 1.0), 0.81, 0.01, "CHECK"))
    claims.append(("rr at power 0.50, h=0.05, psi=0.75",
                   rates.rr_regime(new_50, 0.05, 0.75), 0.51, 0.005, "CHECK"))
    claims.append(("rr at power 0.50, h=0.15, psi=1",
                   rates.rr_regime(new_50, 0.15, 1.0), 0.20, 0.005, "CHECK"))

    new_80 = rates.TestDesign(0.005, 0.20, phi)
    psi_005 = estimator.solve_psi_for_rr_ratio(2.0, new_80, old, 0.05).psi
    claims.append(("doubling persistence threshold at h=0.05",
                   psi_005, 0.154, 0.02, "CHECK"))
    psi_015 = estimator.solve_psi_for_rr_ratio(2.0, new_80, old, 0.15).psi
    claims.append(("doubling threshold at h=0.15: derived root vs figure-read 0.35 (documented gap)",
                   psi_015, 0.35, 0.02, "INFO"))

    claims.append(("bound FPR at pi=0.25, h=0.15 exceeds 0.20",
                   float(rates.fpr_bound(new_80, 0.15, 0.25) > 0.20), 1.0, 0.0, "CHECK"))

    if strict:
        claims = [(label, got, want, tol, "CHECK") for label, got, want, tol, _ in claims]
    return claims


def cmd_reproduce(args) -> int:
    out = _out_dir(args)
    written = []
    for figure in (1, 2, 3, 4, 5):
        written.extend(_write_results(_figure_results(figure, None), out, want_svg=True))
    failures = 0
    for label, got, want, tol, level in _reproduction_claims(args.strict):
        ok = abs(got - want) <= tol
        if level == "INFO":
            status = "INFO"
        else:
            status = "PASS" if ok else "FAIL"
            failures += not ok
        print(f"{status:4s}  {label}: computed {got:.6g}, reference {want:.6g}, tol {tol:g}")
    print(f"wrote {sum(1 for p in written if p.suffix == '.csv')} CSV and "
          f"{sum(1 for p in written if p.suffix == '.svg')} SVG files to {out}")
    return EXIT_OK if failures == 0 else EXIT_REPRODUCE_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phacking",
        description="False positive and replication rates under NHST with P-hacking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", help="closed-form FPR/RR and the outcome table")
    _add_design_flags(p)
    _add_hacking_flags(p)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("fit", help="fit the hacking rate to replication counts")
    _add_design_flags(p)
    p.add_argument("--builtin", choices=["psych-rep"], help="use a built-in dataset")
    p.add_argument("--data", help="JSON file with total, replicated, strata[]")
    p.add_argument("--stratified", action="store_true", help="also fit per-stratum range")
    p.add_argument("--model", default="per_stratum_rate",
                   choices=["per_stratum_rate", "threshold_clustering"],
                   help="stratum model for the range fit")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sweep", help="write figure CSV (and SVG) files")
    p.add_argument("--figure", type=int, required=True, help="figure id 1-5")
    p.add_argument("--h", type=float, help="hacking rate for figures 3 and 5")
    p.add_argument("--out", help="output directory")
    p.add_argument("--svg", action="store_true", help="also write SVG files")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="run the Monte Carlo oracle")
    _add_design_flags(p)
    _add_hacking_flags(p)
    p.add_argument("--n", type=int, default=100_000, help="number of simulated studies")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--cutoff", type=float,
                   help="operative cutoff if different from --alpha")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce", help="write all figures and check the headline numbers")
    p.add_argument("--out", help="output directory")
    p.add_argument("--strict", action="store_true",
                   help="promote documented-gap INFO entries to failures")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
