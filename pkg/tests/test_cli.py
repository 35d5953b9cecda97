import json

import numpy as np
import pytest

from payscan.cli import main
from payscan.extract import format_cents
from payscan.imgproc import GrayImage, RectI
from payscan.pngio import save_gray
from payscan.synth import render

from conftest import pos_scene


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    frame, _ = render(pos_scene(frame=(960, 1280), screen=RectI(180, 320, 600, 450),
                                scale=2, value_text="123,45"))
    save_gray(frame, tmp / "pos.png")
    noisy, _ = render(pos_scene(frame=(960, 1280), screen=RectI(180, 320, 600, 450),
                                scale=2, value_text="321,09", noise_sigma=10.0,
                                seed=5))
    save_gray(noisy, tmp / "noisy.png")  # reads 32109 at conf ~98
    save_gray(GrayImage(np.zeros((480, 640), np.uint8)), tmp / "black.png")
    lines = []
    for i, cents in enumerate((1111, 2222, 3333)):
        f, _ = render(pos_scene(frame=(960, 1280), screen=RectI(180, 320, 600, 450),
                                scale=2, value_text=format_cents(cents)))
        save_gray(f, tmp / f"m{i}.png")
        lines.append(json.dumps({"file": f"m{i}.png", "machine": "POS",
                                 "value_cents": cents, "operation": "CREDITO"}))
    (tmp / "manifest.jsonl").write_text("\n".join(lines) + "\n")
    return tmp


def test_detect_valid_frame(fixture_dir, capsys):
    rc = main(["detect", str(fixture_dir / "pos.png")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["status"] == "Valid"
    assert set(out["rect"]) == {"x", "y", "w", "h"}
    assert out["focus"] > 0


def test_detect_black_frame_exit_2(fixture_dir, capsys):
    rc = main(["detect", str(fixture_dir / "black.png")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 2
    assert out["status"] == "NoScreen"
    assert out["rect"] is None


def test_detect_missing_file_exit_1(fixture_dir, capsys):
    rc = main(["detect", str(fixture_dir / "missing.png")])
    captured = capsys.readouterr()
    assert rc == 1
    assert "cannot read" in captured.err


def test_recognize_human_output(fixture_dir, capsys):
    rc = main(["recognize", str(fixture_dir / "pos.png")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "VALUE 123,45" in out
    assert "OPERATION CREDITO" in out


def test_recognize_json_schema(fixture_dir, capsys):
    rc = main(["recognize", str(fixture_dir / "pos.png"), "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["value"]["cents"] == 12345
    assert 0 <= out["value"]["conf"] <= 100
    assert out["operation"]["label"] == "CREDITO"
    assert out["regions_examined"] >= 1
    assert all({"rect", "pass", "text", "value_conf", "operation_conf"} == set(d)
               for d in out["debug"])


def test_recognize_below_threshold_exit_3(fixture_dir, capsys):
    rc = main(["recognize", str(fixture_dir / "noisy.png"), "--thr-value", "99",
               "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 3
    assert out["value"] is None


def test_recognize_threshold_zero_recovers_it(fixture_dir, capsys):
    rc = main(["recognize", str(fixture_dir / "noisy.png"), "--thr-value", "0",
               "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["value"]["cents"] == 32109


def test_recognize_black_frame_exit_3(fixture_dir, capsys):
    rc = main(["recognize", str(fixture_dir / "black.png"), "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 3
    assert out["value"] is None
    assert out["operation"]["label"] == "UNKNOWN"


def test_config_file_via_env(fixture_dir, capsys, monkeypatch):
    conf = fixture_dir / "payscan.conf"
    conf.write_text("value_threshold = 99\noperations = CREDITO\n")
    monkeypatch.setenv("PAYSCAN_CONFIG", str(conf))
    # the env config's threshold suppresses a read the default would accept
    rc = main(["recognize", str(fixture_dir / "noisy.png"), "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 3 and out["value"] is None
    # an explicit flag overrides the config file
    rc = main(["recognize", str(fixture_dir / "noisy.png"), "--thr-value", "0",
               "--json"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0 and out["value"]["cents"] == 32109


def test_eval_row_sums(fixture_dir, tmp_path, capsys):
    rc = main(["eval", str(fixture_dir / "manifest.jsonl"),
               "--out-dir", str(tmp_path), "--thresholds", "0,70"])
    assert rc == 0
    lines = (tmp_path / "eval.csv").read_text().strip().splitlines()
    for line in lines[1:]:
        machine, metric, thr, c, i, u = line.split(",")
        assert int(c) + int(i) + int(u) == 3
    assert (tmp_path / "eval.png").exists()


def test_eval_bad_manifest_exit_1(fixture_dir, tmp_path, capsys):
    bad = fixture_dir / "bad.jsonl"
    bad.write_text('{"file": "nope.png", "machine": "POS", "value_cents": 1, '
                   '"operation": "X"}\n')
    rc = main(["eval", str(bad), "--out-dir", str(tmp_path)])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_sweep_has_101_rows(fixture_dir, tmp_path, capsys):
    rc = main(["sweep", str(fixture_dir / "manifest.jsonl"),
               "--out-dir", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 101
    assert (tmp_path / "sweep.png").exists()


def test_rotgen_writes_200_files(tmp_path, capsys):
    frame, _ = render(pos_scene(frame=(200, 266), screen=RectI(40, 70, 120, 90),
                                scale=1))
    src = tmp_path / "src.png"
    save_gray(frame, src)
    rc = main(["rotgen", str(src), "--out-dir", str(tmp_path / "rot")])
    assert rc == 0
    assert len(list((tmp_path / "rot").glob("*.png"))) == 200


def test_bench_writes_report(fixture_dir, tmp_path, capsys):
    rc = main(["bench", str(fixture_dir / "manifest.jsonl"), "--reps", "1",
               "--out-dir", str(tmp_path)])
    assert rc == 0
    assert "median" in capsys.readouterr().out
    assert (tmp_path / "timing.csv").exists()
    assert (tmp_path / "timing.png").exists()
