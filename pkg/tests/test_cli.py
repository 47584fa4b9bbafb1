# Copyright 2024 The wyckoff_detector Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import re

import numpy as np
import pytest
from click.testing import CliRunner

from wyckoff_detector import main
from wyckoff_detector.constants import (EXIT_DATA, EXIT_NUMERIC, EXIT_OK,
                                       EXIT_USAGE, Phase)
from wyckoff_detector.nn.checkpoint import save_model
from wyckoff_detector.nn.model import init_params

EVAL_LINE = re.compile(r"loss=(\d+\.\d{6}) acc=(\d+\.\d{6}) auc=(\d+\.\d{6}) "
                       r"tp=\d+ fp=\d+ tn=\d+ fn=\d+")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path):
    """Run the CLI against a config file that does not exist, so only
    built-in defaults apply."""
    config = str(tmp_path / "absent.cfg")

    def run(*args, config_file=config):
        return runner.invoke(main, ["-c", config_file] + [str(a) for a in args])

    return run


@pytest.fixture
def tr_csv(invoke, tmp_path):
    path = tmp_path / "tr.csv"
    result = invoke("gen", "--phase", "tr", "--valid", 100, "--invalid", 100,
                    "--seed", 1, "--out", path)
    assert result.exit_code == EXIT_OK, result.output
    return path


@pytest.fixture
def st_csv(invoke, tmp_path):
    path = tmp_path / "st.csv"
    result = invoke("gen", "--phase", "st", "--valid", 30, "--invalid", 30,
                    "--seed", 2, "--out", path)
    assert result.exit_code == EXIT_OK, result.output
    return path


@pytest.fixture
def tr_model(tmp_path):
    path = tmp_path / "tr_model.json"
    save_model(init_params(4, 8, seed=0, phase=Phase.TR), str(path))
    return path


def write_ohlc(path, close, header="timestamp,open,high,low,close"):
    lines = [header]
    for i, c in enumerate(close):
        lines.append("t{0},{1},{1},{1},{1}".format(i, c))
    path.write_text("\n".join(lines) + "\n")
    return path


def test_gen_tr_file(tr_csv):
    lines = tr_csv.read_text().splitlines()
    assert lines[0] == "# phase=TR seed=1"
    assert lines[1] == "label,x1,x2,x3,x4"
    assert len(lines) == 202


def test_gen_is_byte_identical(invoke, tr_csv, tmp_path):
    again = tmp_path / "again.csv"
    invoke("gen", "--phase", "tr", "--valid", 100, "--invalid", 100, "--seed",
           1, "--out", again)
    assert again.read_bytes() == tr_csv.read_bytes()


def test_gen_st_header(st_csv):
    header = st_csv.read_text().splitlines()[1]
    assert header == "label," + ",".join("x{}".format(i) for i in range(1, 11))


def test_gen_rejects_unknown_phase(invoke, tmp_path):
    result = invoke("gen", "--phase", "xx", "--valid", 1, "--invalid", 1,
                    "--out", tmp_path / "x.csv")
    assert result.exit_code == EXIT_USAGE


def test_missing_option_is_usage_error(invoke):
    assert invoke("gen", "--phase", "tr").exit_code == EXIT_USAGE


def test_train_writes_history(invoke, tr_csv, tmp_path):
    history = tmp_path / "history.csv"
    result = invoke("train", "--data", tr_csv, "--model-out",
                    tmp_path / "m.json", "--history-out", history, "--epochs",
                    2, "--hidden", 8, "--batch", 16)
    assert result.exit_code == EXIT_OK, result.output
    assert re.search(r"test_loss=\d+\.\d{6} test_acc=\d+\.\d{6}",
                     result.output)
    lines = history.read_text().splitlines()
    assert lines[0] == "epoch,train_loss,train_acc,test_loss,test_acc"
    assert len(lines) == 3


def test_deterministic_training_repeats(invoke, tr_csv, tmp_path):
    outputs = []
    for run in ("a", "b"):
        model = tmp_path / "{}.json".format(run)
        history = tmp_path / "{}.csv".format(run)
        result = invoke("train", "--data", tr_csv, "--model-out", model,
                        "--history-out", history, "--epochs", 2, "--hidden",
                        4, "--deterministic")
        assert result.exit_code == EXIT_OK, result.output
        outputs.append((model.read_bytes(), history.read_bytes()))
    assert outputs[0] == outputs[1]


def test_train_on_missing_file(invoke, tmp_path):
    missing = tmp_path / "missing.csv"
    result = invoke("train", "--data", missing, "--model-out",
                    tmp_path / "m.json")
    assert result.exit_code == EXIT_DATA
    assert "missing.csv" in result.output


def test_config_file_supplies_defaults(invoke, tr_csv, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("[TRAINING]\nEPOCHS = 3\nHIDDEN = 4\n")
    history = tmp_path / "history.csv"
    result = invoke("train", "--data", tr_csv, "--model-out",
                    tmp_path / "m.json", "--history-out", history,
                    config_file=str(config))
    assert result.exit_code == EXIT_OK, result.output
    assert len(history.read_text().splitlines()) == 4


def test_unconfigured_value_is_rejected(invoke, tr_csv, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("[TRAINING]\nEPOCHS = CONFIGURE_ME\n")
    result = invoke("train", "--data", tr_csv, "--model-out",
                    tmp_path / "m.json", config_file=str(config))
    assert result.exit_code == EXIT_USAGE


def test_eval_report_and_roc(invoke, tr_csv, tr_model, tmp_path):
    roc_path = tmp_path / "roc.csv"
    result = invoke("eval", "--model", tr_model, "--data", tr_csv,
                    "--roc-out", roc_path)
    assert result.exit_code == EXIT_OK, result.output
    match = EVAL_LINE.search(result.output)
    assert match
    assert 0.0 <= float(match.group(3)) <= 1.0
    lines = roc_path.read_text().splitlines()
    assert lines[0] == "threshold,fpr,tpr"
    assert lines[1] == "inf,0,0"
    assert lines[-1] == "# auc={}".format(match.group(3))


def test_eval_feature_mismatch(invoke, st_csv, tr_model):
    result = invoke("eval", "--model", tr_model, "--data", st_csv)
    assert result.exit_code == EXIT_DATA
    assert "feature mismatch: model=4 data=10" in result.output


def test_scan_monotone_series(invoke, tr_model, tmp_path):
    ohlc = write_ohlc(tmp_path / "up.csv", np.arange(1.0, 101.0))
    out = tmp_path / "scan.csv"
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    assert out.read_text() == \
        "timestamp,end_index,probability,p1,p2,p3,p4,detected\n"


def test_scan_short_series(invoke, tr_model, tmp_path):
    ohlc = write_ohlc(tmp_path / "short.csv", [1.0, 2.0, 1.0])
    out = tmp_path / "scan.csv"
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    assert len(out.read_text().splitlines()) == 1


def test_scan_zigzag(invoke, tr_model, tmp_path):
    close = np.tile([10.0, 20.0, 30.0, 40.0, 30.0, 20.0], 20)
    ohlc = write_ohlc(tmp_path / "zigzag.csv", close)
    out = tmp_path / "scan.csv"
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out", out,
                    "-k", 2)
    assert result.exit_code == EXIT_OK, result.output
    lines = out.read_text().splitlines()
    assert len(lines) == 37
    first = lines[1].split(",")
    assert first[:2] == ["t12", "12"]
    assert 0.0 < float(first[2]) < 1.0
    assert [float(v) for v in first[3:7]] == [40.0, 10.0, 40.0, 10.0]
    assert first[7] in ("0", "1")
    assert "scanned 36 windows" in result.output


def test_scan_missing_columns(invoke, tr_model, tmp_path):
    ohlc = tmp_path / "bad.csv"
    ohlc.write_text("timestamp,open,close\nt0,1,1\n")
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out",
                    tmp_path / "scan.csv")
    assert result.exit_code == EXIT_DATA
    assert "high, low" in result.output


def test_scan_non_numeric_close(invoke, tr_model, tmp_path):
    ohlc = tmp_path / "bad.csv"
    ohlc.write_text("timestamp,open,high,low,close\n"
                    "t0,1,1,1,1\nt1,1,1,1,1\nt2,1,1,1,oops\n")
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out",
                    tmp_path / "scan.csv")
    assert result.exit_code == EXIT_DATA
    assert "line(s) 4" in result.output


def test_scan_phase_mismatch(invoke, tr_model, tmp_path):
    ohlc = write_ohlc(tmp_path / "up.csv", np.arange(1.0, 50.0))
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out",
                    tmp_path / "scan.csv", "--phase", "st")
    assert result.exit_code == EXIT_DATA
    assert "phase mismatch" in result.output


def test_gradcheck_command(invoke):
    result = invoke("gradcheck", "--trials", 4, "--hidden", 2, "--hidden", 3)
    assert result.exit_code == EXIT_OK, result.output
    assert len(re.findall(r"max_rel_error=\S+ ok", result.output)) == 4


def test_gradcheck_single_phase(invoke):
    result = invoke("gradcheck", "--trials", 2, "--hidden", 2, "--phase", "tr")
    assert result.exit_code == EXIT_OK, result.output
    assert result.output.count("phase=TR") == 2
    assert "phase=ST" not in result.output


def corrupt_line(path, number):
    lines = path.read_bytes().split(b"\n")
    lines[number - 1] = lines[number - 1] + b"\xff"
    path.write_bytes(b"\n".join(lines))
    return path


def test_eval_rejects_non_utf8_dataset(invoke, tr_csv, tr_model):
    corrupt_line(tr_csv, 5)
    result = invoke("eval", "--model", tr_model, "--data", tr_csv)
    assert result.exit_code == EXIT_DATA
    assert "not valid UTF-8 text on line 5" in result.output


def test_train_rejects_non_utf8_dataset(invoke, tr_csv, tmp_path):
    corrupt_line(tr_csv, 1)
    result = invoke("train", "--data", tr_csv, "--model-out",
                    tmp_path / "m.json", "--epochs", 1)
    assert result.exit_code == EXIT_DATA
    assert "on line 1" in result.output


def test_scan_rejects_non_utf8_ohlc(invoke, tr_model, tmp_path):
    ohlc = corrupt_line(write_ohlc(tmp_path / "up.csv", [1.0, 2.0, 3.0]), 3)
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out",
                    tmp_path / "scan.csv")
    assert result.exit_code == EXIT_DATA
    assert "OHLC file" in result.output
    assert "not valid UTF-8 text on line 3" in result.output


def test_scan_counts_blank_lines(invoke, tr_model, tmp_path):
    ohlc = tmp_path / "gappy.csv"
    ohlc.write_text("timestamp,open,high,low,close\n"
                    "t0,1,1,1,1\n\nt1,1,1,1,1\nt2,oops,1,1,1\n")
    result = invoke("scan", "--ohlc", ohlc, "--model", tr_model, "--out",
                    tmp_path / "scan.csv")
    assert result.exit_code == EXIT_DATA
    assert "non-numeric open on line(s) 3, 5" in result.output


def test_train_stops_on_non_finite_loss(invoke, tr_csv, tmp_path,
                                        monkeypatch):
    monkeypatch.setattr("wyckoff_detector.train.loop.bce_loss",
                        lambda p, y: np.full(len(y), np.nan))
    model = tmp_path / "m.json"
    result = invoke("train", "--data", tr_csv, "--model-out", model,
                    "--epochs", 1, "--hidden", 4)
    assert result.exit_code == EXIT_NUMERIC
    assert "Non-finite loss in epoch 1 at batch offset 0" in result.output
    assert not model.exists()


def test_gradcheck_failure_exit_code(invoke, monkeypatch):
    monkeypatch.setattr("wyckoff_detector.cli.gradcheck.grad_check",
                        lambda model, sample, delta: 1.0)
    result = invoke("gradcheck", "--trials", 2, "--hidden", 2)
    assert result.exit_code == EXIT_NUMERIC
    assert result.output.count("FAIL") == 2
    assert "2 of 2 gradient checks exceeded" in result.output


@pytest.mark.parametrize("scale", [0, -1])
def test_train_rejects_bad_kernel_step_scale(invoke, tr_csv, tmp_path, scale):
    result = invoke("train", "--data", tr_csv, "--model-out",
                    tmp_path / "m.json", "--kernel-step-scale", scale)
    assert result.exit_code == EXIT_USAGE
    assert "kernel_step_scale must be positive" in result.output


def test_plot_writes_figures(invoke, tr_csv, tmp_path):
    model = tmp_path / "m.json"
    history = tmp_path / "tr_history.csv"
    roc_path = tmp_path / "tr_roc.csv"
    assert invoke("train", "--data", tr_csv, "--model-out", model,
                  "--history-out", history, "--epochs", 2, "--hidden",
                  4).exit_code == EXIT_OK
    assert invoke("eval", "--model", model, "--data", tr_csv, "--roc-out",
                  roc_path).exit_code == EXIT_OK
    figures = tmp_path / "figures"
    result = invoke("plot", "--history", history, "--roc", roc_path,
                    "--out-dir", figures)
    assert result.exit_code == EXIT_OK, result.output
    for name in ("accuracy.png", "loss.png", "roc.png"):
        assert (figures / name).read_bytes()[:4] == b"\x89PNG"
        assert str(figures / name) in result.output


def test_plot_needs_an_input(invoke, tmp_path):
    result = invoke("plot", "--out-dir", tmp_path)
    assert result.exit_code == EXIT_USAGE
    assert "--history or --roc" in result.output


def test_plot_rejects_foreign_csv(invoke, tr_csv, tmp_path):
    result = invoke("plot", "--history", tr_csv, "--out-dir", tmp_path)
    assert result.exit_code == EXIT_DATA
    assert "must have columns" in result.output


@pytest.mark.slow
def test_scan_finds_embedded_range(invoke, tmp_path):
    data = tmp_path / "big.csv"
    model = tmp_path / "model.json"
    assert invoke("gen", "--phase", "tr", "--valid", 20000, "--invalid",
                  20000, "--seed", 42, "--out", data).exit_code == EXIT_OK
    assert invoke("train", "--data", data, "--model-out",
                  model).exit_code == EXIT_OK

    knots = [30.0, 80.0, 20.0, 60.0, 40.0, 90.0]
    close = np.concatenate([
        np.linspace(a, b, 10, endpoint=False)
        for a, b in zip(knots, knots[1:])
    ] + [[knots[-1]]])
    ohlc = write_ohlc(tmp_path / "range.csv", close)
    out = tmp_path / "scan.csv"
    result = invoke("scan", "--ohlc", ohlc, "--model", model, "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    rows = out.read_text().splitlines()[1:]
    assert len(rows) == 1
    fields = rows[0].split(",")
    assert [float(v) for v in fields[3:7]] == [80.0, 20.0, 60.0, 40.0]
    assert float(fields[2]) > 0.5
    assert fields[7] == "1"
