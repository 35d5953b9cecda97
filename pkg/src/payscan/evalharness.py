"""Dataset ingestion, accuracy tables, threshold sweeps, rotation-suite
generation and timing benchmarks.

Report writers emit CSV plus a rendered matplotlib figure next to it.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import statistics
import time
from dataclasses import dataclass, replace
from pathlib import Path

from .extract import UNKNOWN, OperationCandidate, ValueCandidate, normalize_text
from .imgproc import GrayImage
from .imgproc import _rotate_bicubic  # uncapped rotation for dataset synthesis
from .pipeline import PipelineConfig, recognize
from .pngio import load_gray, save_gray
from .screen import detect_screen

log = logging.getLogger(__name__)

MACHINES = ("POS", "PINPAD")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class DatasetSample:
    image_path: Path
    machine: str
    truth_cents: int
    truth_operation: str  # normalized label, or UNKNOWN


def load_manifest(path) -> list[DatasetSample]:
    """JSON-lines manifest: {file, machine, value_cents, operation} per line."""
    path = Path(path)
    base = path.parent
    samples = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ManifestError(f"{path}:{lineno}: invalid JSON: {e}") from None
            missing = {"file", "machine", "value_cents", "operation"} - set(obj)
            if missing:
                raise ManifestError(f"{path}:{lineno}: missing keys {sorted(missing)}")
            machine = obj["machine"]
            if machine not in MACHINES:
                raise ManifestError(
                    f"{path}:{lineno}: machine must be one of {MACHINES}, got {machine!r}")
            cents = obj["value_cents"]
            if not isinstance(cents, int) or cents < 0:
                raise ManifestError(f"{path}:{lineno}: value_cents must be a non-negative int")
            file_path = base / obj["file"]
            if not file_path.is_file():
                raise ManifestError(f"{path}:{lineno}: no such image: {file_path}")
            samples.append(DatasetSample(
                image_path=file_path, machine=machine, truth_cents=cents,
                truth_operation=normalize_text(str(obj["operation"])) or UNKNOWN))
    return samples


# ---------------------------------------------------------------------------
# per-sample recognition cache
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleResult:
    """Raw best candidates for one sample, captured with thresholds at zero
    so any threshold can be applied afterwards without re-recognizing."""

    sample: DatasetSample
    detected: bool
    value: ValueCandidate | None
    operation: OperationCandidate

    def value_status(self, threshold: float) -> str:
        if self.value is None or self.value.conf < threshold:
            return "unrecognized"
        return "correct" if self.value.cents == self.sample.truth_cents else "incorrect"

    def operation_status(self, threshold: float) -> str:
        label = self.operation.label
        if label != UNKNOWN and self.operation.conf < threshold:
            label = UNKNOWN
        if label == self.sample.truth_operation:
            return "correct"
        return "unrecognized" if label == UNKNOWN else "incorrect"


def _zero_threshold(cfg: PipelineConfig) -> PipelineConfig:
    ex = replace(cfg.extract, value_threshold=0.0, operation_threshold=0.0)
    return replace(cfg, extract=ex)


def collect_results(samples: list[DatasetSample],
                    cfg: PipelineConfig) -> list[SampleResult]:
    """Run detection + recognition once per sample (deterministic order)."""
    raw_cfg = _zero_threshold(cfg)
    results = []
    for sample in sorted(samples, key=lambda s: str(s.image_path)):
        frame = load_gray(sample.image_path)
        det = detect_screen(frame, cfg.screen)
        if det is None:
            log.warning("no screen detected in %s", sample.image_path)
            results.append(SampleResult(sample, False, None,
                                        OperationCandidate(UNKNOWN, 0.0)))
            continue
        outcome = recognize(frame, det, raw_cfg)
        results.append(SampleResult(sample, True, outcome.value, outcome.operation))
    return results


# ---------------------------------------------------------------------------
# accuracy tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalRow:
    machine: str
    metric: str  # "value" | "operation"
    threshold: float
    correct: int
    incorrect: int
    unrecognized: int

    @property
    def total(self) -> int:
        return self.correct + self.incorrect + self.unrecognized

    def pct(self, count: int) -> float:
        return 100.0 * count / self.total if self.total else 0.0


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]
    machine_counts: dict

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["machine", "metric", "threshold",
                        "correct", "incorrect", "unrecognized"])
            for r in self.rows:
                w.writerow([r.machine, r.metric, r.threshold,
                            r.correct, r.incorrect, r.unrecognized])


def evaluate(samples: list[DatasetSample], cfg: PipelineConfig,
             thresholds: list[float],
             results: list[SampleResult] | None = None) -> EvalReport:
    """Correct / incorrect / unrecognized counts per machine and threshold.

    A value counts as correct only on an exact cents match; a sample whose
    confidence falls below the threshold is unrecognized, not incorrect.
    """
    if results is None:
        results = collect_results(samples, cfg)
    machine_counts = {}
    for r in results:
        machine_counts[r.sample.machine] = machine_counts.get(r.sample.machine, 0) + 1
    rows = []
    for machine in MACHINES:
        group = [r for r in results if r.sample.machine == machine]
        if not group:
            continue
        for metric, status_of in (("value", SampleResult.value_status),
                                  ("operation", SampleResult.operation_status)):
            for t in thresholds:
                tally = {"correct": 0, "incorrect": 0, "unrecognized": 0}
                for r in group:
                    tally[status_of(r, t)] += 1
                rows.append(EvalRow(machine, metric, t, tally["correct"],
                                    tally["incorrect"], tally["unrecognized"]))
    return EvalReport(tuple(rows), machine_counts)


@dataclass(frozen=True)
class SweepRow:
    threshold: int
    correct: int
    incorrect: int
    unrecognized: int


def threshold_sweep(samples: list[DatasetSample], cfg: PipelineConfig,
                    thresholds=range(0, 101),
                    results: list[SampleResult] | None = None) -> list[SweepRow]:
    """Value-recognition counts over a threshold range, from one cached pass."""
    if results is None:
        results = collect_results(samples, cfg)
    rows = []
    for t in thresholds:
        tally = {"correct": 0, "incorrect": 0, "unrecognized": 0}
        for r in results:
            tally[r.value_status(t)] += 1
        rows.append(SweepRow(int(t), tally["correct"], tally["incorrect"],
                             tally["unrecognized"]))
    return rows


def sweep_to_csv(rows: list[SweepRow], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "correct", "incorrect", "unrecognized"])
        for r in rows:
            w.writerow([r.threshold, r.correct, r.incorrect, r.unrecognized])


# ---------------------------------------------------------------------------
# rotation suite
# ---------------------------------------------------------------------------

def generate_rotations(src: GrayImage, out_dir) -> list[Path]:
    """Rotated copies of a straight sample: +/-1..50 degrees, with the frame
    kept at original size (corners lost) and with an expanded canvas."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    h, w = src.height, src.width
    for angle in range(1, 51):
        for sign, tag in ((1, "cw"), (-1, "ccw")):
            deg = sign * angle
            rad = math.radians(deg)
            cos_a, sin_a = abs(math.cos(rad)), abs(math.sin(rad))
            full_w = int(math.ceil(w * cos_a + h * sin_a))
            full_h = int(math.ceil(w * sin_a + h * cos_a))
            for cropped in (True, False):
                shape = (h, w) if cropped else (full_h, full_w)
                img = GrayImage(_rotate_bicubic(src.px, deg, shape))
                name = f"rot_{tag}{angle:02d}_{'cropped' if cropped else 'full'}.png"
                path = out_dir / name
                save_gray(img, path)
                paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# timing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimingReport:
    median: float
    mean: float
    stddev: float
    min: float
    max: float
    runs: int

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["median", "mean", "stddev", "min", "max"])
            w.writerow([f"{self.median:.6f}", f"{self.mean:.6f}",
                        f"{self.stddev:.6f}", f"{self.min:.6f}", f"{self.max:.6f}"])


def timing_bench(samples: list[DatasetSample], cfg: PipelineConfig,
                 repetitions: int = 1) -> TimingReport:
    """Wall-clock the recognition step only (detection excluded), serially."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    times = []
    for sample in sorted(samples, key=lambda s: str(s.image_path)):
        frame = load_gray(sample.image_path)
        det = detect_screen(frame, cfg.screen)
        if det is None:
            log.warning("no screen detected in %s; skipping timing", sample.image_path)
            continue
        for _ in range(repetitions):
            t0 = time.perf_counter()
            recognize(frame, det, cfg)
            times.append(time.perf_counter() - t0)
    if not times:
        raise ValueError("no measurable samples (no screens detected)")
    return TimingReport(
        median=statistics.median(times), mean=statistics.fmean(times),
        stddev=statistics.pstdev(times), min=min(times), max=max(times),
        runs=len(times))


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_sweep_figure(rows: list[SweepRow], path) -> None:
    plt = _pyplot()
    ts = [r.threshold for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ts, [r.correct for r in rows], label="correct", color="tab:green")
    ax.plot(ts, [r.incorrect for r in rows], label="incorrect", color="tab:red")
    ax.plot(ts, [r.unrecognized for r in rows], label="unrecognized", color="tab:gray")
    ax.set_xlabel("threshold")
    ax.set_ylabel("samples")
    ax.set_title("Value recognition vs. confidence threshold")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_eval_figure(report: EvalReport, path) -> None:
    plt = _pyplot()
    rows = report.rows
    fig, ax = plt.subplots(figsize=(max(7, len(rows) * 0.8), 4.5))
    labels = [f"{r.machine}\n{r.metric} t={r.threshold:g}" for r in rows]
    xs = range(len(rows))
    ax.bar(xs, [r.correct for r in rows], label="correct", color="tab:green")
    ax.bar(xs, [r.incorrect for r in rows],
           bottom=[r.correct for r in rows], label="incorrect", color="tab:red")
    ax.bar(xs, [r.unrecognized for r in rows],
           bottom=[r.correct + r.incorrect for r in rows],
           label="unrecognized", color="tab:gray")
    ax.set_xticks(list(xs), labels, fontsize=7)
    ax.set_ylabel("samples")
    ax.set_title("Recognition accuracy")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_timing_figure(report: TimingReport, path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 4))
    names = ["median", "mean", "min", "max"]
    values = [report.median, report.mean, report.min, report.max]
    ax.bar(names, values, color="tab:blue")
    ax.errorbar([1], [report.mean], yerr=[report.stddev], fmt="none",
                ecolor="black", capsize=4)
    ax.set_ylabel("seconds")
    ax.set_title(f"Recognition wall time ({report.runs} runs)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
