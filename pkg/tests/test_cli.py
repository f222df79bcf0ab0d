import csv
import dataclasses
import io
import json
import subprocess
import sys

import pytest

from uplink_swap.cli import main
from uplink_swap.config import default_scenario, parse_config
from uplink_swap.output import METRIC_COLUMNS
from uplink_swap.scenario import evaluate_scenario, replace_path


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_emits_header_and_one_row(tmp_path, capsys):
    cfg = write(tmp_path, "s.json", {"altitude_m": 200e3, "ground_separation_m": 300e3})
    assert main(["eval", "--config", cfg]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[0] == ",".join([*METRIC_COLUMNS, "error"])
    m = evaluate_scenario(parse_config(open(cfg).read()))
    assert float(rows(out)[0]["F"]) == pytest.approx(m.fidelity, rel=1e-11)


def test_eval_json(tmp_path):
    cfg = write(tmp_path, "s.json", {})
    out = tmp_path / "o.json"
    assert main(["eval", "--config", cfg, "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data) == 1 and list(data[0]) == [*METRIC_COLUMNS, "error"]


def test_sweep_rows_rederive_and_bytes_repeat(tmp_path):
    cfg = write(tmp_path, "sw.json", {
        "baseline": {"temporal_width_s": 5e-9},
        "axes": [{"path": "altitude_m", "values": [20e3, 300e3, 900e3]},
                 {"path": "ground_separation_m", "values": [600e3, 1500e3]}],
    })
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", cfg, "--out", str(a)]) == 0
    assert main(["sweep", "--config", cfg, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    table = rows(a.read_text())
    assert len(table) == 6
    base = dataclasses.replace(default_scenario(), temporal_width_s=5e-9)
    for r in table:
        p = replace_path(replace_path(base, "altitude_m", float(r["altitude_m"])), "ground_separation_m", float(r["ground_separation_m"]))
        if r["error"]:
            assert r["F"] == ""
            continue
        row = evaluate_scenario(p).as_row()
        for col in METRIC_COLUMNS:
            assert float(r[col]) == pytest.approx(row[col], rel=1e-11)
    assert any(r["error"] for r in table)


def test_figure_fig2_preset(tmp_path):
    out = tmp_path / "fig2.csv"
    assert main(["figure", "--preset", "fig2", "--out", str(out)]) == 0
    table = rows(out.read_text())
    assert list(table[0])[:2] == ["temporal_width_s", "gating_window_s"]
    assert len(table) == 5 * 50
    assert {float(r["temporal_width_s"]) for r in table} == {1e-9, 2e-9, 5e-9, 10e-9, 20e-9}
    assert all(not r["error"] for r in table)


def test_optimize_writes_document_and_flags_budget(tmp_path):
    cfg = write(tmp_path, "o.json", {
        "free": [{"path": "gating_window_s", "lower": 2e-9, "upper": 1e-7},
                 {"path": "altitude_m", "lower": 1e5, "upper": 1.5e6}],
        "max_evaluations": 6,
    })
    out = tmp_path / "o.out.json"
    assert main(["optimize", "--config", cfg, "--out", str(out), "--seed", "2"]) == 3
    doc = json.loads(out.read_text())
    assert doc["converged"] is False
    assert doc["n_evaluations"] == len(doc["trace"]) == 6
    assert set(doc["best_values"]) == {"gating_window_s", "altitude_m"}
    assert parse_config(json.dumps(doc["best"])).gating_window_s == doc["best_values"]["gating_window_s"]


def test_optimize_converged_exit_zero(tmp_path):
    cfg = write(tmp_path, "o.json", {"free": [{"path": "gating_window_s", "lower": 2e-9, "upper": 1e-7}]})
    out = tmp_path / "o.csv"
    assert main(["optimize", "--config", cfg, "--out", str(out), "--format", "csv"]) == 0
    assert rows(out.read_text())[0]["gating_window_s"]


@pytest.mark.parametrize(
    "doc",
    ['{"gating_window_s": 0}', '{"altitdue_m": 5}', '{"altitude_m": '],
)
def test_config_errors_exit_one(tmp_path, caplog, doc):
    cfg = write(tmp_path, "bad.json", doc)
    assert main(["eval", "--config", cfg]) == 1
    assert [r.levelname for r in caplog.records] == ["ERROR"]


def test_missing_config_exits_one(tmp_path):
    assert main(["eval", "--config", str(tmp_path / "nope.json")]) == 1


def test_model_error_exits_two(tmp_path, caplog):
    cfg = write(tmp_path, "s.json", {"altitude_m": 10e3, "ground_separation_m": 2000e3})
    assert main(["eval", "--config", cfg]) == 2
    assert "horizon" in caplog.text


def test_unwritable_output_exits_two(tmp_path):
    cfg = write(tmp_path, "s.json", {})
    assert main(["eval", "--config", cfg, "--out", str(tmp_path / "missing" / "x.csv")]) == 2


def test_defaults_flag(capsys):
    assert main(["--defaults"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert parse_config(json.dumps(doc)) == default_scenario()


def test_no_command_exits_one(capsys):
    assert main([]) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "uplink_swap.cli", "--defaults"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["schema_version"] == 1


def test_errors_reach_stderr(tmp_path):
    cfg = write(tmp_path, "bad.json", '{"altitdue_m": 5}')
    res = subprocess.run([sys.executable, "-m", "uplink_swap.cli", "eval", "--config", cfg], capture_output=True, text=True)
    assert res.returncode == 1
    assert "unknown key 'altitdue_m'" in res.stderr
