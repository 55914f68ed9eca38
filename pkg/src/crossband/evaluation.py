"""Evaluation protocol for RGB (mono-modal) and CS (cross-spectral) mappings.

RGB mapping: each pair is matched per channel (R->R, G->G, B->B) and the
three candidate maps are fused by a per-pixel median before scoring.
CS mapping: the six ordered cross-channel tasks are scored individually.

Ground-truth pixels that are non-finite or zero are excluded. Estimator-side
validity (e.g. a failed left-right check) is ignored when scoring: every
evaluable pixel is scored with the unmasked estimate, so masking can never
improve a score.

Aggregation is an unweighted mean over images per task, then an unweighted
mean over tasks. A pooled-pixel variant is reported alongside.

Record schema (CSV, frozen)::

    pair_id,task,epe,bmp3,bmp5,valid_count

One row per scored (pair, task), then one ``ALL,<task>`` row per task, then
``ALL,mean`` (headline) and ``ALL,pooled``.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from crossband.errors import DimensionMismatch, EmptyMask, MissingGroundTruth
from crossband.image import (
    RGB,
    ColorStereoPair,
    DisparityMap,
    StereoDataset,
    StereoPair,
    ValidityMask,
    ground_truth_mask,
)

MAPPINGS = ("rgb", "cs")
THRESHOLDS = (3.0, 5.0)
RECORD_COLUMNS = ("pair_id", "task", "epe", "bmp3", "bmp5", "valid_count")


@dataclass(frozen=True)
class MappingTask:
    source_channel: str
    target_channel: str
    pair_id: int | str = 0

    @property
    def name(self) -> str:
        return f"{self.source_channel}->{self.target_channel}"


def enumerate_tasks(mapping: str, channels=RGB, pair_id: int | str = 0) -> list[MappingTask]:
    mapping = mapping.lower()
    if mapping == "rgb":
        return [MappingTask(c, c, pair_id) for c in channels]
    if mapping == "cs":
        return [MappingTask(s, t, pair_id) for s in channels for t in channels if s != t]
    raise ValueError(f"mapping must be 'rgb' or 'cs', got {mapping!r}")


def fuse_median(candidates) -> DisparityMap:
    maps = [c.values if isinstance(c, DisparityMap) else np.asarray(c, np.float32) for c in candidates]
    if len(maps) != 3:
        raise ValueError(f"expected 3 candidates, got {len(maps)}")
    if len({m.shape for m in maps}) != 1:
        raise DimensionMismatch(f"candidate shapes differ: {[m.shape for m in maps]}")
    return DisparityMap(np.median(np.stack(maps), axis=0))


def _abs_error(est: DisparityMap, gt: DisparityMap, mask: ValidityMask) -> np.ndarray:
    if not (est.shape == gt.shape == mask.shape):
        raise DimensionMismatch(f"est {est.shape}, gt {gt.shape}, mask {mask.shape}")
    m = mask.flags
    if not m.any():
        raise EmptyMask("no valid pixels to score")
    return np.abs(est.values[m].astype(np.float64) - gt.values[m].astype(np.float64))


def epe(est: DisparityMap, gt: DisparityMap, mask: ValidityMask) -> float:
    """Mean absolute disparity error over valid pixels."""
    return float(_abs_error(est, gt, mask).mean())


def bmp(est: DisparityMap, gt: DisparityMap, mask: ValidityMask, tau: float) -> float:
    """Fraction of valid pixels whose error is strictly greater than ``tau``."""
    err = _abs_error(est, gt, mask)
    return float(np.count_nonzero(err > tau)) / err.size


@dataclass(frozen=True)
class TaskMetrics:
    pair_id: int | str
    task: str
    epe: float
    bmp3: float
    bmp5: float
    valid_count: int
    # summed absolute error and bad-pixel counts, for pooled aggregation
    abs_sum: float = 0.0
    bad3: int = 0
    bad5: int = 0


def score(est: DisparityMap, gt: DisparityMap, mask: ValidityMask,
          pair_id: int | str = 0, task: str = "") -> TaskMetrics:
    err = _abs_error(est, gt, mask)
    n = err.size
    b3 = int(np.count_nonzero(err > THRESHOLDS[0]))
    b5 = int(np.count_nonzero(err > THRESHOLDS[1]))
    return TaskMetrics(pair_id, task, float(err.mean()), b3 / n, b5 / n, n,
                       float(err.sum()), b3, b5)


@dataclass
class MetricsReport:
    mapping: str
    epe_mean: float
    bmp3: float
    bmp5: float
    valid_count: int
    rows: list[TaskMetrics] = field(default_factory=list)
    per_task: dict[str, tuple[float, float, float, int]] = field(default_factory=dict)
    pooled: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @classmethod
    def from_rows(cls, mapping: str, rows: list[TaskMetrics]) -> "MetricsReport":
        tasks = list(dict.fromkeys(r.task for r in rows))
        per_task = {}
        for t in tasks:
            rs = [r for r in rows if r.task == t]
            per_task[t] = (float(np.mean([r.epe for r in rs])),
                           float(np.mean([r.bmp3 for r in rs])),
                           float(np.mean([r.bmp5 for r in rs])),
                           sum(r.valid_count for r in rs))
        n = sum(r.valid_count for r in rows)
        if tasks:
            headline = [float(np.mean([per_task[t][i] for t in tasks])) for i in range(3)]
            pooled = (sum(r.abs_sum for r in rows) / n,
                      sum(r.bad3 for r in rows) / n,
                      sum(r.bad5 for r in rows) / n)
        else:
            headline, pooled = [float("nan")] * 3, (float("nan"),) * 3
        return cls(mapping, *headline, n, rows, per_task, pooled)

    def records(self) -> list[tuple]:
        out = [(r.pair_id, r.task, r.epe, r.bmp3, r.bmp5, r.valid_count) for r in self.rows]
        out += [("ALL", t, *v) for t, v in self.per_task.items()]
        out.append(("ALL", "mean", self.epe_mean, self.bmp3, self.bmp5, self.valid_count))
        out.append(("ALL", "pooled", *self.pooled, self.valid_count))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_COLUMNS)
        for pid, task, e, b3, b5, n in self.records():
            w.writerow([pid, task, repr(float(e)), repr(float(b3)), repr(float(b5)), n])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"mapping: {self.mapping.upper()}",
                 f"{'pair':>8} {'task':>8} {'EPE':>9} {'BMP3':>8} {'BMP5':>8} {'valid':>9}"]
        for pid, task, e, b3, b5, n in self.records():
            lines.append(f"{str(pid):>8} {task:>8} {e:9.3f} {100 * b3:7.2f}% {100 * b5:7.2f}% {n:9d}")
        return "\n".join(lines) + "\n"


Matcher = Callable[[StereoPair], object]


def _as_disparity(result) -> DisparityMap:
    # matchers may return a MatchResult, a (disparity, mask) tuple or a bare map
    if isinstance(result, DisparityMap):
        return result
    return result[0]


def _run_task(args):
    matcher, pair = args
    return _as_disparity(matcher(pair))


def evaluate_dataset(dataset: StereoDataset, mapping: str, matcher: Matcher,
                     workers: int = 1) -> MetricsReport:
    """Run every task of ``mapping`` on every pair and aggregate.

    ``matcher`` maps a single-channel :class:`StereoPair` (whose ``id`` is
    the dataset pair id) to a disparity map or a ``(disparity, mask)``
    result. With ``workers > 1`` tasks run in a process pool; results are
    collected in task order, so reports do not depend on scheduling.
    """
    mapping = mapping.lower()
    missing = [p.id for p in dataset.pairs if p.gt_left is None]
    if missing:
        raise MissingGroundTruth(f"pairs without left ground truth: {missing}")

    jobs: list[tuple[ColorStereoPair, MappingTask]] = [
        (p, t) for p in dataset.pairs for t in enumerate_tasks(mapping, RGB, p.id)]
    args = [(matcher, p.channel_pair(t.source_channel, t.target_channel)) for p, t in jobs]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            maps = list(pool.map(_run_task, args))
    else:
        maps = [_run_task(a) for a in args]

    rows = []
    for p in dataset.pairs:
        mask = ground_truth_mask(p.gt_left)
        results = [(t, d) for (q, t), d in zip(jobs, maps) if q is p]
        if mapping == "rgb":
            fused = fuse_median([d for _, d in results])
            rows.append(score(fused, p.gt_left, mask, p.id, "RGB"))
        else:
            rows.extend(score(d, p.gt_left, mask, p.id, t.name) for t, d in results)
    return MetricsReport.from_rows(mapping, rows)
