"""Seeded ensemble experiments: many independent copies, aggregated statistics.

A run draws `copies` networks from one GenParams, copy c on the stream
derived from (seed, c) with c starting at 1, computes the requested
properties per copy, and reduces them in copy order.  Results are
therefore a pure function of (params, copies, properties); the worker
count only changes wall time, never a byte of output.

Scalar properties keep every per-copy value plus mean/std/min/max;
histogram-valued properties keep per-copy histograms plus the per-value
mean count across copies.  Counts stay exact integers all the way to the
emitters; only summary statistics are floating point.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import HiernetError, NetworkModel, ParamError
from .gen import GenParams, generate_network
from .analytics import (
    clustering_values,
    component_sizes,
    degree_distribution,
    diameter,
    distance_distribution,
    edge_count,
    four_cycle_count,
    triangle_count,
)

__all__ = [
    "SCALAR_PROPERTIES",
    "HISTOGRAM_PROPERTIES",
    "PROPERTIES",
    "EnsembleSpec",
    "compute_properties",
    "run_copy",
    "run_ensemble",
    "report_json",
    "report_csv",
    "summary_json",
]

SCALAR_PROPERTIES = ("edges", "c3", "c4", "diameter")
HISTOGRAM_PROPERTIES = ("degree-dist", "distance-dist", "components", "clustering-dist")
PROPERTIES = (
    "edges",
    "c3",
    "c4",
    "degree-dist",
    "distance-dist",
    "components",
    "diameter",
    "clustering-dist",
)

_UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class EnsembleSpec:
    """One experiment: generation parameters, copy count, property selection."""

    params: GenParams
    copies: int
    properties: tuple[str, ...]

    def __post_init__(self):
        if int(self.copies) != self.copies or self.copies < 1:
            raise ParamError(f"copies must be an integer >= 1, got {self.copies!r}")
        object.__setattr__(self, "copies", int(self.copies))
        props = tuple(self.properties)
        if not props:
            raise ParamError("at least one property must be requested")
        for name in props:
            if name not in PROPERTIES:
                raise ParamError(
                    f"unknown property {name!r}; valid: {', '.join(PROPERTIES)}"
                )
        object.__setattr__(self, "properties", props)


def _clustering_histogram(model: NetworkModel) -> dict:
    """Counts over 0.01-wide bins of the clustering coefficient, keyed by bin start."""
    vals = clustering_values(model)
    bins = np.floor(vals * 100 + 1e-9).astype(np.int64)
    uniq, cnt = np.unique(bins, return_counts=True)
    return {f"{b / 100:.2f}": int(c) for b, c in zip(uniq, cnt)}


def compute_properties(model: NetworkModel, properties) -> dict:
    """Requested property values of one network, keyed by property name."""
    out = {}
    for name in properties:
        if name == "edges":
            out[name] = edge_count(model)
        elif name == "c3":
            out[name] = triangle_count(model)
        elif name == "c4":
            out[name] = four_cycle_count(model)
        elif name == "diameter":
            out[name] = diameter(model)
        elif name == "degree-dist":
            out[name] = degree_distribution(model).as_dict()
        elif name == "distance-dist":
            h = distance_distribution(model)
            d = h.as_dict()
            d[_UNREACHABLE] = h.unreachable
            out[name] = d
        elif name == "components":
            sizes = component_sizes(model)
            uniq, cnt = np.unique(np.array(sizes, dtype=np.int64), return_counts=True)
            out[name] = {int(s): int(c) for s, c in zip(uniq, cnt)}
        elif name == "clustering-dist":
            out[name] = _clustering_histogram(model)
        else:
            raise ParamError(f"unknown property {name!r}")
    return out


def run_copy(params: GenParams, copy: int, properties) -> dict:
    """One ensemble copy: generate on the copy's derived stream, then measure."""
    model = generate_network(params, stream=copy)
    return compute_properties(model, properties)


def _copy_worker(args):
    # module-level so process pools can pickle it
    params, copy, properties = args
    try:
        return run_copy(params, copy, properties)
    except Exception as exc:  # noqa: BLE001 - reported with copy provenance below
        raise HiernetError(
            f"copy {copy} (seed={params.seed}, stream={copy}) failed: {exc}"
        ) from exc


def run_ensemble(spec: EnsembleSpec, workers: int = 1) -> dict:
    """Full report dict: params echo, seed, per-copy results, summary.

    Copy order is the reduction order regardless of `workers`, so the
    report is byte-stable across parallelism degrees.
    """
    if int(workers) != workers or workers < 1:
        raise ParamError(f"workers must be an integer >= 1, got {workers!r}")
    jobs = [(spec.params, c, spec.properties) for c in range(1, spec.copies + 1)]
    if workers == 1 or spec.copies == 1:
        per_copy = [_copy_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            per_copy = list(pool.map(_copy_worker, jobs))
    results = {}
    summary = {}
    for name in spec.properties:
        vals = [pc[name] for pc in per_copy]
        results[name] = vals
        if name in SCALAR_PROPERTIES:
            summary[name] = _scalar_summary(vals)
        else:
            summary[name] = {"mean_counts": _mean_counts(vals, spec.copies)}
    p = spec.params
    return {
        "params": {
            "mode": p.mode,
            "p": p.p,
            "mu": p.mu,
            "n": p.n,
            "gamma": p.gamma,
            "version": __version__,
        },
        "seed": p.seed,
        "copies": spec.copies,
        "results": results,
        "summary": summary,
    }


def _scalar_summary(vals) -> dict:
    mean = sum(vals) / len(vals)
    var = sum((v - mean) ** 2 for v in vals) / len(vals)
    return {
        "mean": float(mean),
        "std": float(math.sqrt(var)),
        "min": min(vals),
        "max": max(vals),
    }


def _hist_items(hist: dict) -> list:
    """Histogram entries sorted by numeric key, the unreachable bucket last."""
    keys = [k for k in hist if k != _UNREACHABLE]
    keys.sort(key=lambda k: float(k))
    items = [(k, hist[k]) for k in keys]
    if _UNREACHABLE in hist:
        items.append((_UNREACHABLE, hist[_UNREACHABLE]))
    return items


def _mean_counts(hists, copies: int) -> dict:
    total: dict = {}
    for h in hists:
        for k, v in h.items():
            total[k] = total.get(k, 0) + v
    return {str(k): v / copies for k, v in _hist_items(total)}


# -- emitters ----------------------------------------------------------------


def _json_hist(hist: dict) -> dict:
    return {str(k): v for k, v in _hist_items(hist)}


def report_json(report: dict) -> str:
    """Render a report as JSON; numeric histogram keys become ordered strings."""
    doc = dict(report)
    doc["results"] = {
        name: [v if isinstance(v, int) else _json_hist(v) for v in vals]
        for name, vals in report["results"].items()
    }
    return json.dumps(doc, indent=2) + "\n"


def _pack_hist(hist: dict) -> str:
    return ";".join(f"{k}:{v}" for k, v in _hist_items(hist))


def report_csv(report: dict) -> str:
    """Per-copy rows in `copy,property,value` form; histograms packed as k:v;k:v."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["copy", "property", "value"])
    copies = report["copies"]
    for c in range(copies):
        for name, vals in report["results"].items():
            v = vals[c]
            w.writerow([c + 1, name, v if isinstance(v, int) else _pack_hist(v)])
    return buf.getvalue()


def summary_json(report: dict) -> str:
    """Summary and metadata alone, for the sidecar next to a CSV report."""
    doc = {
        "params": report["params"],
        "seed": report["seed"],
        "copies": report["copies"],
        "summary": report["summary"],
    }
    return json.dumps(doc, indent=2) + "\n"
