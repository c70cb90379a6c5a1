import json

import pytest

from ringcut import cli_main
from ringcut.rc_graph import graph_to_json, make_ring
from ringcut.rc_noise import PRESET_KOLKATA, PRESET_LAGOS


def test_oracle_table(capsys):
    assert cli_main(["oracle"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10
    assert lines[0] == "1,0.7500,9.0000"
    assert lines[-1] == "10,0.9545,11.4545"


def test_oracle_rejects_bad_range(capsys):
    assert cli_main(["oracle", "--p-range", "3", "1"]) == 1
    assert "error" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert cli_main(["sweep", "--help"]) == 0
    assert "--records" in capsys.readouterr().out
    assert cli_main(["teleport"]) == 2
    assert cli_main([]) == 2
    assert cli_main(["--version"]) == 0


def test_devices(tmp_path, capsys):
    assert cli_main(["devices", "list"]) == 0
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert PRESET_KOLKATA in names
    assert PRESET_LAGOS in names

    path = tmp_path / "lagos.json"
    assert cli_main(["devices", "show", PRESET_LAGOS, "--out", str(path), "--quiet"]) == 0
    assert json.loads(path.read_text())["num_qubits"] == 7

    assert cli_main(["devices", "show"]) == 1
    assert cli_main(["devices", "show", "atlantis"]) == 1


def test_grid_analytic(capsys):
    assert cli_main(["grid", "--n", "4", "--analytic", "--resolution", "0.7854", "--quiet"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "gamma,beta,expectation,success_prob"
    assert len(lines) == 1 + 5 * 3


def test_grid_backend(tmp_path):
    path = tmp_path / "grid.csv"
    assert cli_main(["grid", "--n", "4", "--resolution", "0.7854", "--threads", "2", "--out", str(path),
                     "--quiet"]) == 0
    assert len(path.read_text().splitlines()) == 16

    assert cli_main(["grid", "--n", "8", "--device", PRESET_LAGOS, "--resolution", "1.6", "--quiet"]) == 1


def test_graph_file_input(tmp_path, capsys):
    path = tmp_path / "ring4.json"
    path.write_text(graph_to_json(make_ring(4)))

    assert cli_main(["grid", "--graph", str(path), "--resolution", "0.7854", "--quiet"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 16

    assert cli_main(["run", "--graph", str(path), "--restarts", "1", "--max-evals", "20", "--quiet"]) == 0
    fields = capsys.readouterr().out.splitlines()[1].split(",")
    assert fields[0] == "4"
    assert float(fields[3]) == pytest.approx(3.0, abs=1e-3)

    assert cli_main(["transpile", "--graph", str(path), "--device", PRESET_LAGOS, "--level", "1", "--quiet"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("1,trivial,")

    # a path graph has no analytic ring surface
    path.write_text('{"n": 3, "edges": [[0, 1], [1, 2]]}')
    assert cli_main(["grid", "--graph", str(path), "--analytic", "--quiet"]) == 1
    assert cli_main(["grid", "--graph", str(tmp_path / "missing.json"), "--quiet"]) == 1
    assert cli_main(["grid", "--graph", str(path), "--n", "4", "--quiet"]) == 2


def test_mitigation_needs_device(capsys):
    assert cli_main(["grid", "--n", "4", "--mitigation", "on", "--quiet"]) == 2
    assert "--device" in capsys.readouterr().err
    assert cli_main(["run", "--n", "4", "--mitigation", "off", "--quiet"]) == 2
    assert cli_main(["transpile", "--n", "4", "--mitigation", "on", "--quiet"]) == 2


def test_transpile_ladder(capsys):
    assert cli_main(["transpile", "--n", "4", "--device", PRESET_LAGOS, "--quiet"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "level,layout,depth,ops,nonlocal,swaps"
    assert len(lines) == 5
    # no 4-cycle on the lagos tree
    assert all(line.split(",")[1] == "trivial" for line in lines[1:])


def test_transpile_writes_circuit(tmp_path, capsys):
    path = tmp_path / "ring12.txt"
    assert cli_main(["transpile", "--n", "12", "--level", "3", "--out", str(path), "--quiet"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("3,embed,")
    assert path.read_text().startswith("qubits 27\n")


def test_run_summary(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    assert cli_main(["run", "--n", "4", "--restarts", "1", "--max-evals", "20", "--out", str(trace), "--quiet"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header.startswith("n,p,backend,f_star")
    fields = row.split(",")
    assert fields[:3] == ["4", "1", "noiseless_exact"]
    assert float(fields[3]) == pytest.approx(3.0, abs=1e-3)
    assert trace.read_text().splitlines()[0] == "eval,gamma_1,beta_1,value"


def test_run_rejects_bad_start():
    assert cli_main(["run", "--n", "4", "--p", "2", "--start", "0.1", "0.2", "--quiet"]) == 1


def test_sweep_writes_table_and_records(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"ring_sizes": [4], "p_range": [1, 1], "devices": [PRESET_LAGOS],
                                  "runs": 2, "backend_mode": "noisy_exact", "max_evals": 6}))
    out = tmp_path / "table.csv"
    assert cli_main(["sweep", "--config", str(config), "--mitigation", "on", "--out", str(out), "--quiet"]) == 0

    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("4,1,{},on,".format(PRESET_LAGOS))
    records = (tmp_path / "table.csv.jsonl").read_text().splitlines()
    assert len(records) == 2
    assert json.loads(records[0])["mitigation"] == "on"


def test_sweep_bad_config(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"ring_sizes": [4], "colour": "blue"}))
    assert cli_main(["sweep", "--config", str(config), "--quiet"]) == 1
    assert cli_main(["sweep", "--config", str(tmp_path / "missing.json"), "--quiet"]) == 1
