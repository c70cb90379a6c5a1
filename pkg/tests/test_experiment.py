import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ringcut.rc_defines import BACKEND_NOISELESS, BACKEND_NOISY, BACKEND_SHOTS, FAST_P_MAX, FAST_RUNS, FAST_SHOTS
from ringcut.rc_experiment import MITIGATION_OFF, MITIGATION_ON, ExperimentConfig, RunRecord, SweepCell, \
    aggregate, emit_table, make_backend, mitigation_config, records_from_jsonl, records_to_jsonl, run_grid, \
    run_seed, run_sweep, sweep_cells
from ringcut.rc_graph import make_ring
from ringcut.rc_noise import PRESET_KOLKATA, PRESET_LAGOS
from ringcut.rc_qaoa import Backend, GridSpec, grid_search_p1


def _small_config(**changes):
    cfg = ExperimentConfig(ring_sizes=(4,), p_range=(1, 1), devices=(PRESET_LAGOS,), runs=2,
                           backend_mode=BACKEND_NOISY, restarts=1, max_evals=8)
    return cfg.replace(**changes)


def _record(run, ratio, **changes):
    rec = RunRecord(4, 1, PRESET_LAGOS, MITIGATION_ON, run, run_seed(1, 4, 1, run), ratio=ratio, ratio_exact=ratio,
                    f_star=4 * ratio, f_exact=4 * ratio, success_prob=0.5, depth=10 + run, nonlocal_count=8)
    for key, value in changes.items():
        setattr(rec, key, value)
    return rec


#--------------------------------------------------------------------------------------
# configuration

def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(ring_sizes=())
    with pytest.raises(ValueError):
        ExperimentConfig(ring_sizes=(2,))
    with pytest.raises(ValueError):
        ExperimentConfig(ring_sizes=(14,))
    with pytest.raises(ValueError):
        ExperimentConfig(p_range=(3, 2))
    with pytest.raises(ValueError):
        ExperimentConfig(mitigations=("maybe",))
    with pytest.raises(ValueError):
        ExperimentConfig(runs=0)
    with pytest.raises(ValueError):
        ExperimentConfig(backend_mode="guess")
    with pytest.raises(ValueError):
        ExperimentConfig(param_range="huge")

    # statevector runs are not bound by the density matrix limit
    assert ExperimentConfig(ring_sizes=(16,), backend_mode=BACKEND_NOISELESS).ring_sizes == (16,)


def test_config_json():
    cfg = ExperimentConfig.from_json(json.dumps({"ring_sizes": [4, 6], "p_range": [1, 3], "runs": 4}))
    assert cfg.ring_sizes == (4, 6)
    assert cfg.p_values == [1, 2, 3]
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg

    with pytest.raises(ValueError, match="unknown"):
        ExperimentConfig.from_json(json.dumps({"rings": [4]}))
    with pytest.raises(ValueError):
        ExperimentConfig.from_json("[1, 2]")
    with pytest.raises(ValueError):
        ExperimentConfig.from_json("{oops")


def test_config_replace_and_fast():
    cfg = ExperimentConfig(p_range=(2, 10))
    assert cfg.replace(runs=None, shots=7).shots == 7
    assert cfg.replace(runs=None).runs == cfg.runs

    fast = cfg.fast()
    assert fast.runs == FAST_RUNS
    assert fast.shots == FAST_SHOTS
    assert fast.backend_mode == BACKEND_NOISY
    assert fast.p_range == (2, FAST_P_MAX)
    assert ExperimentConfig(p_range=(6, 8)).fast().p_range == (FAST_P_MAX, FAST_P_MAX)


def test_mitigation_configs():
    on, off = mitigation_config(MITIGATION_ON), mitigation_config(MITIGATION_OFF)
    assert on.optimization_level == 3
    assert on.layout_method == "embed"
    assert off.optimization_level == 0
    assert off.layout_method == "trivial"
    with pytest.raises(ValueError):
        mitigation_config("half")


def test_make_backend():
    assert make_backend(BACKEND_NOISELESS, None, None, None, 3) == Backend(BACKEND_NOISELESS, seed=3)

    shots = make_backend(BACKEND_SHOTS, PRESET_LAGOS, MITIGATION_ON, 100, 3)
    assert shots.shots == 100
    assert shots.transpile_cfg == mitigation_config(MITIGATION_ON)

    # shot count is ignored by the exact modes
    assert make_backend(BACKEND_NOISY, PRESET_LAGOS, MITIGATION_OFF, 100, 3).shots is None


def test_run_seed():
    assert run_seed(5, 4, 1, 0) == run_seed(5, 4, 1, 0)
    seeds = {run_seed(5, n, p, r) for n in (4, 6) for p in (1, 2) for r in range(3)}
    assert len(seeds) == 12


def test_sweep_cells_order():
    cfg = _small_config(ring_sizes=(4, 6), p_range=(1, 2))
    cells = sweep_cells(cfg)
    assert len(cells) == 2 * 2 * 1 * 2
    assert cells[0].key == (4, 1, PRESET_LAGOS, MITIGATION_OFF)


#--------------------------------------------------------------------------------------
# aggregation

def test_aggregate_mean_and_standard_error():
    ratios = [0.61, 0.65, 0.7, 0.58]
    row = aggregate([_record(r, v) for r, v in enumerate(ratios)])
    assert abs(row.mean_ratio - np.mean(ratios)) < 1e-12
    assert abs(row.std_error - np.std(ratios, ddof=1) / 2.0) < 1e-12
    assert row.mean_depth == pytest.approx(11.5)
    assert row.runs_ok == 4
    assert not row.degenerate


def test_aggregate_single_run_is_degenerate():
    row = aggregate([_record(0, 0.6)])
    assert row.std_error == 0.0
    assert row.degenerate


def test_aggregate_skips_failed_runs():
    records = [_record(0, 0.6), _record(1, math.nan, error="boom"), _record(2, 0.7)]
    row = aggregate(records)
    assert row.runs_ok == 2
    assert row.mean_ratio == pytest.approx(0.65)
    assert row.errors == ("boom",)

    failed = aggregate([_record(0, math.nan, error="boom")])
    assert failed.runs_ok == 0
    assert math.isnan(failed.mean_ratio)

    with pytest.raises(ValueError):
        aggregate([])
    other = _record(1, 0.5)
    other.n = 6
    with pytest.raises(ValueError):
        aggregate([_record(0, 0.6), other])


def test_emit_table():
    rows = [aggregate([_record(0, 0.6123456), _record(1, 0.7)]),
            aggregate([_record(0, 0.5, mitigation=MITIGATION_OFF)])]
    lines = emit_table(rows).splitlines()
    assert lines[0] == "n,p,device,mitigation,mean_ratio,std_error,mean_fstar,mean_success_prob,depth,nonlocal"
    # sorted by key, "off" before "on"
    assert lines[1].startswith("4,1,{},off,0.5000,0.0000,".format(PRESET_LAGOS))
    assert lines[2].split(",")[4] == "0.6562"
    with pytest.raises(ValueError):
        emit_table([])


def test_records_jsonl():
    records = [_record(1, 0.7), _record(0, 0.6, exhausted=True)]
    text = records_to_jsonl(records)
    assert len(text.splitlines()) == 2
    again = records_from_jsonl(text)
    assert [rec.run for rec in again] == [0, 1]
    assert again[0] == records[1]


#--------------------------------------------------------------------------------------
# sweeps

def test_sweep_cell_records():
    cell = SweepCell(_small_config(), 4, 1, PRESET_LAGOS, MITIGATION_ON)
    records = cell.run()
    assert [rec.run for rec in records] == [0, 1]
    for rec in records:
        assert rec.ok
        assert 0.0 < rec.ratio < 1.0
        assert rec.nonlocal_count >= 8
        assert rec.evals > 0


def test_sweep_cell_oversized_ring_records_errors():
    cell = SweepCell(_small_config(ring_sizes=(8,)), 8, 1, PRESET_LAGOS, MITIGATION_ON)
    records = cell.run()
    assert len(records) == 2
    assert all(not rec.ok for rec in records)
    row = aggregate(records)
    assert row.runs_ok == 0
    assert emit_table([row]).splitlines()[1].split(",")[4] == "nan"


def test_run_sweep_deterministic():
    cfg = _small_config(threads=2)
    records = []
    rows = run_sweep(cfg, records)
    assert [row.mitigation for row in rows] == [MITIGATION_OFF, MITIGATION_ON]
    assert len(records) == 4
    assert all(row.runs_ok == 2 for row in rows)

    again = run_sweep(cfg)
    assert emit_table(again) == emit_table(rows)

    # both arms of a run share the seed
    by_arm = {(rec.mitigation, rec.run): rec.seed for rec in records}
    assert by_arm[(MITIGATION_OFF, 0)] == by_arm[(MITIGATION_ON, 0)]


def test_run_sweep_noiseless_reaches_known_ratio():
    cfg = _small_config(backend_mode=BACKEND_NOISELESS, devices=(PRESET_LAGOS,), mitigations=(MITIGATION_ON,),
                        runs=1, max_evals=100)
    row = run_sweep(cfg)[0]
    assert row.mean_ratio == pytest.approx(0.75, abs=0.01)


@pytest.mark.slow
def test_mitigation_improves_ratio_on_heavy_hex():
    cfg = ExperimentConfig(ring_sizes=(6,), p_range=(1, 2), devices=(PRESET_KOLKATA,), runs=3,
                           backend_mode=BACKEND_NOISY, restarts=2, max_evals=60)
    rows = {row.key: row for row in run_sweep(cfg)}
    for p in (1, 2):
        on = rows[(6, p, PRESET_KOLKATA, MITIGATION_ON)]
        off = rows[(6, p, PRESET_KOLKATA, MITIGATION_OFF)]
        assert on.mean_ratio > off.mean_ratio
        assert on.mean_nonlocal < off.mean_nonlocal


#--------------------------------------------------------------------------------------
# grids

def test_run_grid_matches_serial_search():
    g = make_ring(4)
    backend = Backend(BACKEND_NOISELESS)
    spec = GridSpec(resolution=math.pi / 4)
    grid = run_grid(g, backend, spec, threads=3)
    assert grid.shape == (5, 3)
    serial = grid_search_p1(g, backend, spec)
    assert_allclose(grid.expectation, serial.expectation, atol=1e-12)
    assert_allclose(grid.success_prob, serial.success_prob, atol=1e-12)


def test_run_grid_rejects_oversized_graph():
    backend = make_backend(BACKEND_NOISY, PRESET_LAGOS, MITIGATION_ON, None, 1)
    with pytest.raises(ValueError):
        run_grid(make_ring(8), backend, GridSpec(resolution=math.pi / 2))
