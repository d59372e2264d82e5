"""Command line front door.

Subcommands:

* ``ccuf run``            -- execute a configured sweep, write metrics CSV
  (and optional SVG plots / per-request event logs).
* ``ccuf analytics``      -- mobility success-probability table (closed
  forms plus a Monte Carlo estimate) as CSV.
* ``ccuf placement-dump`` -- the per-FAP cache contents of a built network
  as CSV rows (fap_id, content_id, segment_id | FULL).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import report as report_mod
from .config import PROFILES, SimConfig
from .mobility import (
    RANDOM_WALK,
    SuccessProbInputs,
    monte_carlo_success,
    success_prob_coded_rw,
    success_prob_coded_simple,
    success_prob_uncoded,
)
from .popularity import ZipfProfile
from .simulate import _Replication


def _load_config(args):
    if args.config:
        cfg = SimConfig.load(args.config)
    else:
        cfg = PROFILES[args.profile]()
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    return cfg.validate()


def _cmd_run(args):
    cfg = _load_config(args)
    os.makedirs(args.out, exist_ok=True)
    if args.events:
        rep, events = report_mod.run(cfg, collect_events=True)
        report_mod.emit_events_csv(events, os.path.join(args.out, "events"))
    else:
        rep = report_mod.run(cfg)
    csv_path = os.path.join(args.out, "metrics.csv")
    report_mod.emit(rep, "csv", csv_path)
    written = [csv_path]
    if args.plots:
        written += report_mod.emit(rep, "svg-plot", args.out)
    for path in written:
        print(path)
    return 0


def _float_list(text):
    return [float(v) for v in text.split(",") if v != ""]


def _cmd_analytics(args):
    rng = np.random.default_rng(args.seed)
    rows = []
    for gamma in args.gamma:
        profile = ZipfProfile.build(args.contents, gamma)
        for alpha in args.alpha:
            inputs = SuccessProbInputs(
                profile=profile,
                alpha=alpha,
                cache_capacity=args.cache,
                n_segments=args.segments,
                model=RANDOM_WALK,
            )
            mc = monte_carlo_success(inputs, args.trials, rng)
            rows.append(
                [
                    alpha,
                    gamma,
                    args.segments,
                    success_prob_uncoded(profile, args.cache),
                    success_prob_coded_simple(profile, alpha, args.cache, args.segments),
                    success_prob_coded_rw(profile, alpha, args.cache, args.segments),
                    success_prob_coded_rw(
                        profile, alpha, args.cache, args.segments, mode="literal"
                    ),
                    mc.estimate,
                    mc.ci_halfwidth,
                ]
            )
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    writer = csv.writer(out)
    writer.writerow(
        ["alpha", "gamma", "n_segments", "p_uc", "p_cc_simple",
         "p_cc_rw_clamped", "p_cc_rw_literal", "mc_estimate", "ci"]
    )
    for row in rows:
        writer.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in row])
    if args.out:
        out.close()
        print(args.out)
    return 0


def _cmd_placement_dump(args):
    cfg = _load_config(args)
    rep = _Replication(cfg, 0)
    if args.out:
        rep.placement.dump_csv(args.out)
        print(args.out)
    else:
        rep.placement.dump_csv(sys.stdout)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ccuf",
        description="Cluster-centric coded UAV-aided femtocaching simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the configured sweep")
    p_run.add_argument("--config", help="JSON config file")
    p_run.add_argument("--profile", choices=sorted(PROFILES), default="desk")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default="ccuf_out")
    p_run.add_argument("--plots", action="store_true", help="also write SVG plots")
    p_run.add_argument(
        "--events", action="store_true", help="also write per-request event logs"
    )
    p_run.set_defaults(func=_cmd_run)

    p_an = sub.add_parser("analytics", help="success-probability table")
    p_an.add_argument("--alpha", type=_float_list, required=True,
                      help="comma separated list")
    p_an.add_argument("--gamma", type=_float_list, required=True,
                      help="comma separated list")
    p_an.add_argument("--segments", type=int, default=7)
    p_an.add_argument("--cache", type=int, default=10)
    p_an.add_argument("--contents", type=int, default=500)
    p_an.add_argument("--trials", type=int, default=100000)
    p_an.add_argument("--seed", type=int, default=0)
    p_an.add_argument("--out", default=None)
    p_an.set_defaults(func=_cmd_analytics)

    p_pd = sub.add_parser("placement-dump", help="dump the cache placement")
    p_pd.add_argument("--config", help="JSON config file")
    p_pd.add_argument("--profile", choices=sorted(PROFILES), default="desk")
    p_pd.add_argument("--seed", type=int, default=None)
    p_pd.add_argument("--out", default=None)
    p_pd.set_defaults(func=_cmd_placement_dump)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
