"""Seeded Monte Carlo estimates of per-vertex inclusion probabilities."""

from __future__ import annotations

import csv
import io
import math
import os
import time
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from . import _kernels
from .graph import OrderedGraph
from .validation import check_ordered, check_weights

Z95 = NormalDist().inv_cdf(0.975)
JOBS_ENV = "TRIFREE_JOBS"


class SamplingError(RuntimeError):
    pass


def wilson_interval(hits: int, samples: int, z: float = Z95) -> tuple[float, float]:
    if samples <= 0:
        raise ValueError("samples must be positive")
    p = hits / samples
    z2 = z * z
    denom = 1.0 + z2 / samples
    centre = (p + z2 / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z2 / (4 * samples * samples)) / denom
    # the interval always contains p; clamp away rounding that says otherwise
    return min(max(0.0, centre - half), p), max(min(1.0, centre + half), p)


def standard_error(p: float, samples: int) -> float:
    return math.sqrt(p * (1.0 - p) / samples)


@dataclass(frozen=True)
class VertexEstimate:
    estimate: float
    ci_low: float
    ci_high: float
    hits: int


@dataclass(frozen=True)
class EstimateReport:
    per_vertex: tuple[VertexEstimate, ...]
    samples: int
    seed: int
    wall_time: float

    @property
    def estimates(self) -> np.ndarray:
        return np.array([e.estimate for e in self.per_vertex])

    @property
    def hits(self) -> np.ndarray:
        return np.array([e.hits for e in self.per_vertex], dtype=np.int64)

    def standard_errors(self) -> np.ndarray:
        p = self.estimates
        return np.sqrt(p * (1 - p) / self.samples)

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "wallTime": self.wall_time,
            "perVertex": [
                {"vertex": v, "estimate": e.estimate, "ciLow": e.ci_low, "ciHigh": e.ci_high, "hits": e.hits}
                for v, e in enumerate(self.per_vertex)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["vertex", "estimate", "ciLow", "ciHigh", "hits"])
        for v, e in enumerate(self.per_vertex):
            out.writerow([v, f"{e.estimate:.17g}", f"{e.ci_low:.17g}", f"{e.ci_high:.17g}", e.hits])
        return buf.getvalue()


def default_jobs() -> int:
    return int(os.environ.get(JOBS_ENV, "1"))


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must lie in [0, 2^64), got {seed}")
    return seed


def _prepare(og, w0):
    og = check_ordered(og)
    logw0 = np.log(check_weights(w0, og.n))
    order, lptr, lidx = _kernels.left_csr(og)
    return og, order, lptr, lidx, logw0


def estimate_inclusion(og: OrderedGraph, w0, samples: int, seed: int, jobs: int | None = None) -> EstimateReport:
    """Run ``samples`` independent copies of the process and count inclusions.

    Replica ``r`` draws its uniforms from a stream keyed by ``(seed, r)``, so
    the counts do not depend on ``jobs``.  Every sampled set is re-checked
    for independence; a violation raises ``SamplingError``.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    seed = _check_seed(seed)
    og, order, lptr, lidx, logw0 = _prepare(og, w0)
    _kernels.set_threads(jobs if jobs is not None else default_jobs())
    start = time.perf_counter()
    hits, bad = _kernels.count_hits(order, lptr, lidx, logw0, np.uint64(seed), samples)
    elapsed = time.perf_counter() - start
    if bad:
        raise SamplingError(f"{bad} sampled sets contained an edge")
    per_vertex = []
    for h in hits.tolist():
        lo, hi = wilson_interval(h, samples)
        per_vertex.append(VertexEstimate(h / samples, lo, hi, h))
    return EstimateReport(tuple(per_vertex), samples, seed, elapsed)


def sample_indicators(og: OrderedGraph, w0, samples: int, seed: int, start: int = 0) -> np.ndarray:
    """Boolean matrix whose row ``r`` marks the set sampled by replica ``start + r``."""
    seed = _check_seed(seed)
    og, order, lptr, lidx, logw0 = _prepare(og, w0)
    return _kernels.indicator_matrix(order, lptr, lidx, logw0, np.uint64(seed), start, samples)


def replica_uniforms(seed: int, replica: int, count: int) -> np.ndarray:
    """The uniform stream used by replica ``replica``; feed to ``run_process(uniforms=...)``."""
    return _kernels.replica_uniforms(np.uint64(_check_seed(seed)), replica, count)


def empirical_min_inclusion(report: EstimateReport) -> tuple[int, float, float]:
    """Vertex with the smallest estimate (lowest id on ties), its estimate and lower CI bound."""
    v = int(np.argmin(report.estimates))
    e = report.per_vertex[v]
    return v, e.estimate, e.ci_low
