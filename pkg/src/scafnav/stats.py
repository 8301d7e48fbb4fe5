"""Corpus structure statistics over a sealed index.

Class-size histogram, coverage curve, per-level hierarchy counts, scaffold
out-degree distribution and a log-log tail fit. The power-law fit is a
reported quantity, never a pass/fail check. Everything here is a read-only
scan; identical indexes produce byte-identical JSON.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .errors import ScafnavError
from .index import HypergraphIndex

DEFAULT_TAIL_CUTOFF = 10
DEFAULT_TOP_K = 10
CURVE_MAX_POINTS = 1000


class InsufficientPoints(ScafnavError):
    """Tail fit needs at least three histogram bins past the cutoff."""


@dataclass(frozen=True)
class TailFit:
    slope: float
    r2: float
    cutoff: int


def class_size_histogram(idx: HypergraphIndex) -> dict[int, int]:
    """size -> number of non-virtual classes of that size (the sentinel
    class counts as one class when it has members)."""
    hist: dict[int, int] = {}
    for cls in idx.classes:
        if cls.scaffold.virtual:
            continue
        hist[cls.size] = hist.get(cls.size, 0) + 1
    return dict(sorted(hist.items()))


def coverage_curve(idx: HypergraphIndex) -> list[tuple[int, int, float]]:
    """(classes used, molecules covered, fraction) with classes taken in
    decreasing size order, canonical key breaking ties."""
    sizes = sorted(
        ((cls.size, cls.scaffold.key) for cls in idx.classes
         if not cls.scaffold.virtual),
        key=lambda item: (-item[0], item[1]),
    )
    total = idx.molecule_count
    out: list[tuple[int, int, float]] = []
    covered = 0
    for used, (size, _) in enumerate(sizes, start=1):
        covered += size
        out.append((used, covered, covered / total if total else 0.0))
    return out


def hierarchy_histogram(idx: HypergraphIndex) -> dict[int, dict[str, int]]:
    """level -> class/virtual-class/molecule counts."""
    out: dict[int, dict[str, int]] = {}
    for cls in idx.classes:
        level = out.setdefault(cls.scaffold.ring_count, {
            "classes": 0, "virtual_classes": 0, "molecules": 0,
        })
        if cls.scaffold.virtual:
            level["virtual_classes"] += 1
        else:
            level["classes"] += 1
        level["molecules"] += cls.size
    return dict(sorted(out.items()))


def degree_distribution(idx: HypergraphIndex, top_k: int = DEFAULT_TOP_K,
                        seed: int = 0) -> tuple[dict[int, int], dict]:
    """Out-degree histogram over graph scaffolds (the sentinel class sits
    outside the graph) plus, per hierarchy level 1-3, the top-k scaffolds
    by out-degree and a seeded sample of minimal-degree scaffolds."""
    hist: dict[int, int] = {}
    by_level: dict[int, list[tuple[int, str]]] = {}
    for cls in idx.classes:
        if cls.scaffold.is_sentinel:
            continue
        degree = idx.out_degree(cls.scaffold_id)
        hist[degree] = hist.get(degree, 0) + 1
        by_level.setdefault(cls.scaffold.ring_count, []).append(
            (degree, cls.scaffold.key))

    rng = random.Random(seed)
    report: dict[str, dict] = {}
    for level in (1, 2, 3):
        entries = by_level.get(level)
        if not entries:
            continue
        entries.sort(key=lambda item: (-item[0], item[1]))
        top = entries[:top_k]
        min_degree = min(d for d, _ in entries)
        minimal = sorted(key for d, key in entries if d == min_degree)
        sample = sorted(rng.sample(minimal, min(top_k, len(minimal))))
        report[str(level)] = {
            "top": [{"key": key, "out_degree": d} for d, key in top],
            "random_minimal": [{"key": key, "out_degree": min_degree}
                               for key in sample],
        }
    return dict(sorted(hist.items())), report


def fit_tail_slope(hist: dict[int, int],
                   cutoff: int = DEFAULT_TAIL_CUTOFF) -> TailFit:
    """Least-squares slope of log(count) vs log(size) over sizes >= cutoff."""
    points = [(size, count) for size, count in hist.items()
              if size >= cutoff and count > 0]
    if len(points) < 3:
        raise InsufficientPoints(
            f"{len(points)} tail bins at cutoff {cutoff}; need at least 3"
        )
    xs = np.log(np.array([p[0] for p in points], dtype=float))
    ys = np.log(np.array([p[1] for p in points], dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    predicted = slope * xs + intercept
    ss_res = float(np.sum((ys - predicted) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return TailFit(slope=float(slope), r2=r2, cutoff=cutoff)


def compute_stats(idx: HypergraphIndex, tail_cutoff: int = DEFAULT_TAIL_CUTOFF,
                  top_k: int = DEFAULT_TOP_K, seed: int = 0) -> dict:
    """The stats document (JSON-ready, deterministically ordered)."""
    size_hist = class_size_histogram(idx)
    curve = _downsample(coverage_curve(idx))
    hierarchy = hierarchy_histogram(idx)
    degree_hist, top_report = degree_distribution(idx, top_k=top_k, seed=seed)
    try:
        fit = fit_tail_slope(size_hist, cutoff=tail_cutoff)
        tail = {"slope": fit.slope, "r2": fit.r2, "cutoff": fit.cutoff}
    except InsufficientPoints:
        tail = None

    return {
        "totals": {
            "molecules": idx.molecule_count,
            "classes": idx.class_count,
            "non_virtual_classes": idx.class_count - idx.virtual_count,
            "virtual_classes": idx.virtual_count,
            "edges": len(idx.edges),
            "rejects": len(idx.rejects),
        },
        "class_size_hist": {str(k): v for k, v in size_hist.items()},
        "coverage_curve": [[used, covered, round(frac, 12)]
                           for used, covered, frac in curve],
        "hierarchy_hist": {
            str(level): counts for level, counts in hierarchy.items()
        },
        "degree_hist": {str(k): v for k, v in degree_hist.items()},
        "tail_fit": tail,
        "top_scaffolds_by_level": top_report,
    }


def stats_json(idx: HypergraphIndex, **kwargs) -> str:
    """Serialized stats document; byte-identical for identical indexes."""
    return json.dumps(compute_stats(idx, **kwargs), separators=(",", ":"))


def _downsample(curve: list[tuple[int, int, float]]) -> list[tuple[int, int, float]]:
    if len(curve) <= CURVE_MAX_POINTS:
        return curve
    idxs = np.unique(np.linspace(0, len(curve) - 1, CURVE_MAX_POINTS).round()
                     .astype(int))
    return [curve[i] for i in idxs]
