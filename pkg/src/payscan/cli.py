"""Command-line front door.

Exit codes are a stable contract: 0 success, 1 unreadable input, 2 no screen
found (detect), 3 value unrecognized (recognize).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import evalharness
from .extract import ExtractConfig, format_cents, UNKNOWN
from .pipeline import PipelineConfig, recognize
from .pngio import load_gray
from .screen import FrameFeedback, assess_frame, detect_screen

CONFIG_ENV = "PAYSCAN_CONFIG"


def _build_config(args) -> PipelineConfig:
    cfg = PipelineConfig()
    config_path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if config_path:
        cfg = replace(cfg, extract=ExtractConfig.from_file(config_path))
    extract = cfg.extract
    if getattr(args, "thr_value", None) is not None:
        extract = replace(extract, value_threshold=args.thr_value)
    if getattr(args, "thr_op", None) is not None:
        extract = replace(extract, operation_threshold=args.thr_op)
    cfg = replace(cfg, extract=extract)
    if getattr(args, "ocr", None):
        cfg = replace(cfg, ocr=args.ocr)
    return cfg


def _load_image(path: str):
    try:
        return load_gray(path)
    except (OSError, ValueError) as e:
        print(f"error: cannot read image {path}: {e}", file=sys.stderr)
        return None


def _ocr_choice(value: str) -> str:
    if value == "builtin" or value.startswith("external:"):
        return value
    raise argparse.ArgumentTypeError(
        "OCR engine must be 'builtin' or 'external:<path>'")


def cmd_detect(args) -> int:
    img = _load_image(args.image)
    if img is None:
        return 1
    cfg = _build_config(args)
    det = detect_screen(img, cfg.screen)
    fb = assess_frame(det, (img.width, img.height), cfg.screen)
    out = {"status": fb.value, "rect": None, "rrect": None,
           "angle": None, "focus": None}
    if det is not None:
        out.update({
            "rect": {"x": det.rect.x, "y": det.rect.y,
                     "w": det.rect.w, "h": det.rect.h},
            "rrect": {"cx": det.rrect.cx, "cy": det.rrect.cy,
                      "w": det.rrect.w, "h": det.rrect.h,
                      "angle": det.rrect.angle},
            "angle": det.angle,
            "focus": det.focus,
        })
    print(json.dumps(out))
    return 2 if fb is FrameFeedback.NO_SCREEN else 0


def cmd_recognize(args) -> int:
    img = _load_image(args.image)
    if img is None:
        return 1
    cfg = _build_config(args)
    det = detect_screen(img, cfg.screen)
    if det is None:
        from .extract import OperationCandidate, RecognitionOutcome
        outcome = RecognitionOutcome(None, OperationCandidate(UNKNOWN, 0.0), 0, ())
    else:
        outcome = recognize(img, det, cfg)
    if args.json:
        print(json.dumps(outcome.to_dict()))
    else:
        if outcome.value is not None:
            value_part = (f"VALUE {format_cents(outcome.value.cents)} "
                          f"(conf {outcome.value.conf:.0f})")
        else:
            value_part = "VALUE unrecognized"
        op = outcome.operation
        if op.label != UNKNOWN:
            op_part = f"OPERATION {op.label} (conf {op.conf:.0f})"
        else:
            op_part = "OPERATION UNKNOWN"
        print(f"{value_part} {op_part}")
    return 0 if outcome.value is not None else 3


def _load_manifest_or_fail(path: str):
    try:
        return evalharness.load_manifest(path)
    except (OSError, evalharness.ManifestError) as e:
        print(f"error: {e}", file=sys.stderr)
        return None


def cmd_eval(args) -> int:
    samples = _load_manifest_or_fail(args.manifest)
    if samples is None:
        return 1
    cfg = _build_config(args)
    thresholds = [float(t) for t in args.thresholds.split(",")]
    report = evalharness.evaluate(samples, cfg, thresholds)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.to_csv(out_dir / "eval.csv")
    evalharness.render_eval_figure(report, out_dir / "eval.png")
    for row in report.rows:
        print(f"{row.machine:7s} {row.metric:9s} thr={row.threshold:<5g} "
              f"correct={row.correct} ({row.pct(row.correct):.1f}%) "
              f"incorrect={row.incorrect} ({row.pct(row.incorrect):.1f}%) "
              f"unrecognized={row.unrecognized} ({row.pct(row.unrecognized):.1f}%)")
    print(f"wrote {out_dir / 'eval.csv'} and eval.png")
    return 0


def cmd_sweep(args) -> int:
    samples = _load_manifest_or_fail(args.manifest)
    if samples is None:
        return 1
    cfg = _build_config(args)
    rows = evalharness.threshold_sweep(samples, cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    evalharness.sweep_to_csv(rows, out_dir / "sweep.csv")
    evalharness.render_sweep_figure(rows, out_dir / "sweep.png")
    print(f"wrote {out_dir / 'sweep.csv'} and sweep.png ({len(rows)} thresholds)")
    return 0


def cmd_rotgen(args) -> int:
    img = _load_image(args.image)
    if img is None:
        return 1
    paths = evalharness.generate_rotations(img, args.out_dir)
    print(f"wrote {len(paths)} rotated images to {args.out_dir}")
    return 0


def cmd_bench(args) -> int:
    samples = _load_manifest_or_fail(args.manifest)
    if samples is None:
        return 1
    cfg = _build_config(args)
    report = evalharness.timing_bench(samples, cfg, repetitions=args.reps)
    print(f"recognition time over {report.runs} runs: "
          f"median {report.median:.3f}s, mean {report.mean:.3f} "
          f"+/- {report.stddev:.3f}s, min {report.min:.3f}s, max {report.max:.3f}s")
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report.to_csv(out_dir / "timing.csv")
        evalharness.render_timing_figure(report, out_dir / "timing.png")
        print(f"wrote {out_dir / 'timing.csv'} and timing.png")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = _build_config(args)
    uvicorn.run(create_app(cfg), host=args.host, port=args.port)
    return 0


def _add_common(p: argparse.ArgumentParser, with_thresholds=True) -> None:
    p.add_argument("--config", help=f"config file (fallback: ${CONFIG_ENV})")
    if with_thresholds:
        p.add_argument("--thr-value", type=float, dest="thr_value",
                       help="value confidence threshold (0-100)")
        p.add_argument("--thr-op", type=float, dest="thr_op",
                       help="operation confidence threshold (0-100)")
        p.add_argument("--ocr", type=_ocr_choice,
                       help="OCR engine: builtin | external:<path>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="payscan",
        description="Payment-screen reader: detection, recognition and evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect the screen and print feedback JSON")
    p.add_argument("image")
    _add_common(p, with_thresholds=False)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("recognize", help="recognize value and operation")
    p.add_argument("image")
    p.add_argument("--json", action="store_true", help="emit the full outcome as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("eval", help="accuracy report for a labeled manifest")
    p.add_argument("manifest")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--thresholds", default="0,50,70",
                   help="comma-separated confidence thresholds")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="threshold sweep (0..100) for a manifest")
    p.add_argument("manifest")
    p.add_argument("--out-dir", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rotgen", help="generate the rotated-image suite")
    p.add_argument("image")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_rotgen)

    p = sub.add_parser("bench", help="time the recognition step")
    p.add_argument("manifest")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--out-dir")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    _add_common(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
