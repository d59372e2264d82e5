"""Metric collection over sweeps and replications, CSV emission and simple
SVG line plots.

The CSV is long-format: one row per (sweep point, replication) plus, per
sweep point, a ``mean`` row and a ``ci95`` row (normal-approximation 95%
half-width over replications).  Floats are written with a fixed %.12g
format so identical runs emit byte-identical files.
"""

from __future__ import annotations

import csv
import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .simulate import METRIC_COLUMNS, simulate_replication


@dataclass
class MetricsReport:
    axes: tuple[str, ...]
    rows: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)
    metrics: tuple[str, ...] = METRIC_COLUMNS

    @property
    def columns(self):
        return list(self.axes) + ["replication"] + list(self.metrics)


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def sweep_points(sweep):
    """Cross-product of the sweep axes as a list of {path: value} dicts."""
    if not sweep:
        return [{}]
    names = [axis[0] for axis in sweep]
    values = [axis[1] for axis in sweep]
    return [dict(zip(names, combo)) for combo in itertools.product(*values)]


def run(config, collect_events=False):
    """Execute the configured sweep and return a :class:`MetricsReport`.

    Replication r of every sweep point uses the RNG stream derived from
    (seed, r), so execution order cannot change any number in the report.
    A zero-slot horizon yields an empty report.
    """
    config.validate()
    axes = tuple(axis[0] for axis in config.sweep)
    report = MetricsReport(axes=axes)
    if config.horizon_slots == 0:
        return report
    all_events = [] if collect_events else None
    for point in sweep_points(config.sweep):
        cfg = config.with_overrides(point) if point else config
        per_rep = []
        for rep in range(config.replications):
            if collect_events:
                metrics, events = simulate_replication(cfg, rep, collect_events=True)
                all_events.append((point, rep, events))
            else:
                metrics = simulate_replication(cfg, rep)
            row = {name: point[name] for name in axes}
            row["replication"] = rep
            row.update(metrics.as_dict())
            report.rows.append(row)
            per_rep.append(metrics.as_dict())
        for stat in ("mean", "ci95"):
            agg = {name: point[name] for name in axes}
            agg["replication"] = stat
            for metric in report.metrics:
                values = np.array([m[metric] for m in per_rep], dtype=float)
                if stat == "mean":
                    agg[metric] = float(values.mean())
                else:
                    if len(values) > 1:
                        half = 1.96 * values.std(ddof=1) / math.sqrt(len(values))
                    else:
                        half = 0.0
                    agg[metric] = float(half)
            report.aggregates.append(agg)
    if collect_events:
        return report, all_events
    return report


def emit(report, fmt, path):
    """Write the report as ``csv`` (one file) or ``svg-plot`` (one SVG per
    metric in the target directory).  Returns the paths written."""
    if fmt == "csv":
        return [emit_csv(report, path)]
    if fmt == "svg-plot":
        return emit_plots(report, path)
    raise ValueError(f"unknown format {fmt!r}")


def emit_csv(report, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_fmt(row[c]) for c in report.columns])
        for row in report.aggregates:
            writer.writerow([_fmt(row[c]) for c in report.columns])
    return path


def load_report(path):
    """Parse a CSV written by :func:`emit_csv` back into a report."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rep_col = header.index("replication")
        axes = tuple(header[:rep_col])
        metrics = tuple(header[rep_col + 1 :])
        report = MetricsReport(axes=axes, metrics=metrics)
        for record in reader:
            row = {}
            for name, value in zip(header, record):
                if name == "replication":
                    row[name] = int(value) if value.isdigit() else value
                else:
                    row[name] = float(value)
            if isinstance(row["replication"], int):
                report.rows.append(row)
            else:
                report.aggregates.append(row)
    return report


def aggregate_means(report, metric):
    """(point values tuple, mean) pairs for one metric, in sweep order."""
    out = []
    for row in report.aggregates:
        if row["replication"] == "mean":
            out.append((tuple(row[a] for a in report.axes), row[metric]))
    return out


def emit_plots(report, out_dir):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    if not report.axes:
        return []
    x_axis = report.axes[0]
    paths = []
    for metric in report.metrics:
        fig, ax = plt.subplots(figsize=(6, 4))
        series = {}
        for point, mean in aggregate_means(report, metric):
            key = point[1:]
            series.setdefault(key, []).append((point[0], mean))
        for key, pts in sorted(series.items()):
            pts.sort()
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            label = ", ".join(
                f"{a}={v:g}" for a, v in zip(report.axes[1:], key)
            ) or None
            ax.plot(xs, ys, marker="o", label=label)
        ax.set_xlabel(x_axis)
        ax.set_ylabel(metric)
        if len(series) > 1:
            ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fname = os.path.join(out_dir, f"{metric}.svg")
        fig.savefig(fname, format="svg", bbox_inches="tight")
        plt.close(fig)
        paths.append(fname)
    return paths


def emit_events_csv(events, out_dir):
    """One CSV per (sweep point, replication) with the request log."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for i, (point, rep, rows) in enumerate(events):
        tag = "_".join(f"{k.split('.')[-1]}{_fmt(v)}" for k, v in point.items())
        name = f"events_{tag + '_' if tag else ''}rep{rep}.csv"
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["t", "user", "content", "scheme", "node", "hit", "delay", "energy"]
            )
            for row in rows:
                writer.writerow(
                    [row[0], row[1], row[2], row[3], row[4], int(row[5]),
                     _fmt(row[6]), _fmt(row[7])]
                )
        paths.append(path)
    return paths
