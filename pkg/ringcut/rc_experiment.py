#-----------------------------------------------------------------------------
# rc_experiment.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file runs the experiment sweeps: every (n, p, device, mitigation) cell
# repeats `runs` independent parameter optimizations, the per run records are
# aggregated to mean and standard error, and emitted as a CSV table plus JSON
# lines. Cells and grid rows run as jobs on the worker pool.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-instance-attributes, too-many-locals
#
#-----------------------------------------------------------------------------
import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .rc_act_sweep import RcActGridRow, RcActSweepCell
from .rc_action import RcJob
from .rc_defines import BACKEND_MODES, BACKEND_NOISELESS, BACKEND_NOISY, BACKEND_SHOTS, DEFAULT_MAX_EVALS, \
    DEFAULT_RUNS, DEFAULT_SEED, DEFAULT_SHOTS, DENSITY_MAX_QUBITS, FAST_P_MAX, FAST_RUNS, FAST_SHOTS, \
    PARAM_RANGES, RANGE_REDUCED, RC_PRINT_LEVEL_ERROR, rc_print, verboseprint
from .rc_graph import Graph, brute_force_maxcut, make_ring
from .rc_noise import PRESET_KOLKATA, resolve_device
from .rc_qaoa import Backend, GridResult, GridSpec, optimize_params
from .rc_worker import run_jobs
from .tp.tp import PassConfig
from .tp.tp_defines import TP_LAYOUT_EMBED, TP_LAYOUT_TRIVIAL, TP_OPT_LEVEL_MAX, TP_OPT_LEVEL_NONE, \
    TP_TRANSLATION_RESYNTH1Q, TP_TRANSLATION_RULES

#--------------------------------------------------------------------------------------
# Mitigation settings

MITIGATION_OFF = "off"
MITIGATION_ON  = "on"
MITIGATIONS = (MITIGATION_OFF, MITIGATION_ON)

# "off" still routes and translates, the circuit stays device legal
MITIGATION_CONFIGS = {
    MITIGATION_OFF: PassConfig(TP_OPT_LEVEL_NONE, TP_LAYOUT_TRIVIAL, TP_TRANSLATION_RULES),
    MITIGATION_ON:  PassConfig(TP_OPT_LEVEL_MAX, TP_LAYOUT_EMBED, TP_TRANSLATION_RESYNTH1Q),
}

def mitigation_config(mitigation: str) -> PassConfig:
    if mitigation not in MITIGATION_CONFIGS:
        raise ValueError("mitigation must be one of {}, got {!r}".format(list(MITIGATIONS), mitigation))
    return MITIGATION_CONFIGS[mitigation]

def make_backend(mode: str, device: Optional[str], mitigation: Optional[str], shots: Optional[int],
                 seed: int) -> Backend:
    """Backend for a device name, noiseless without a device."""

    if device is None:
        return Backend(mode, seed=seed)
    profile = resolve_device(device)
    cfg = mitigation_config(mitigation) if mitigation is not None else None
    return Backend(mode, profile, cfg, shots if mode == BACKEND_SHOTS else None, seed)

#--------------------------------------------------------------------------------------
# ExperimentConfig

@dataclass(frozen=True)
class ExperimentConfig:
    ring_sizes: Tuple[int, ...] = (4,)
    p_range: Tuple[int, int] = (1, 1)
    devices: Tuple[str, ...] = (PRESET_KOLKATA,)
    mitigations: Tuple[str, ...] = MITIGATIONS
    runs: int = DEFAULT_RUNS
    shots: int = DEFAULT_SHOTS
    seed: int = DEFAULT_SEED
    backend_mode: str = BACKEND_SHOTS
    restarts: int = 1
    max_evals: int = DEFAULT_MAX_EVALS
    param_range: str = RANGE_REDUCED
    threads: int = 1

    def __post_init__(self):

        object.__setattr__(self, "ring_sizes", tuple(int(n) for n in self.ring_sizes))
        object.__setattr__(self, "p_range", tuple(int(p) for p in self.p_range))
        object.__setattr__(self, "devices", tuple(self.devices))
        object.__setattr__(self, "mitigations", tuple(self.mitigations))

        if not self.ring_sizes:
            raise ValueError("no ring sizes given")
        for n in self.ring_sizes:
            if n < 3:
                raise ValueError("ring size {} is below 3".format(n))
            if self.backend_mode != BACKEND_NOISELESS and n > DENSITY_MAX_QUBITS:
                raise ValueError("ring size {} exceeds the density matrix bound of {}".format(n, DENSITY_MAX_QUBITS))
        if len(self.p_range) != 2 or self.p_range[0] < 1 or self.p_range[0] > self.p_range[1]:
            raise ValueError("p range must be [p_min, p_max] with 1 <= p_min <= p_max, got {}".format(list(self.p_range)))
        if not self.devices:
            raise ValueError("no devices given")
        for mitigation in self.mitigations:
            mitigation_config(mitigation)
        if not self.mitigations:
            raise ValueError("no mitigation settings given")
        if self.runs < 1:
            raise ValueError("runs must be >= 1, got {}".format(self.runs))
        if self.shots < 1:
            raise ValueError("shots must be >= 1, got {}".format(self.shots))
        if self.backend_mode not in BACKEND_MODES:
            raise ValueError("unknown backend mode {!r}".format(self.backend_mode))
        if self.restarts < 1 or self.max_evals < 1:
            raise ValueError("restarts and max_evals must be >= 1")
        if self.param_range not in PARAM_RANGES:
            raise ValueError("unknown parameter range {!r}".format(self.param_range))
        if self.threads < 1:
            raise ValueError("threads must be >= 1, got {}".format(self.threads))

    @property
    def p_values(self) -> List[int]:
        return list(range(self.p_range[0], self.p_range[1] + 1))

    def replace(self, **changes) -> "ExperimentConfig":
        """Copy with the given fields changed, None values ignored."""
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def fast(self) -> "ExperimentConfig":
        """Desk scale preset: 3 runs, 5000 shots, p <= 4, noisy exact."""
        p_min = min(self.p_range[0], FAST_P_MAX)
        return self.replace(runs=FAST_RUNS, shots=FAST_SHOTS, backend_mode=BACKEND_NOISY,
                            p_range=(p_min, min(self.p_range[1], FAST_P_MAX)))

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":

        try:
            doc = json.loads(text)
        except json.JSONDecodeError as error:
            raise ValueError("invalid experiment config: {}".format(error)) from error
        if not isinstance(doc, dict):
            raise ValueError("experiment config must be a JSON object")

        known = {f.name for f in dataclasses.fields(cls)}
        for key in doc:
            if key not in known:
                raise ValueError("unknown experiment config key {!r}".format(key))
        return cls(**doc)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=1, sort_keys=True)

#--------------------------------------------------------------------------------------
# Per run records

@dataclass
class RunRecord:
    n: int
    p: int
    device: str
    mitigation: str
    run: int
    seed: int
    ratio: float = math.nan
    ratio_exact: float = math.nan
    f_star: float = math.nan
    f_exact: float = math.nan
    success_prob: float = math.nan
    depth: int = 0
    nonlocal_count: int = 0
    evals: int = 0
    exhausted: bool = False
    error: Optional[str] = None

    @property
    def key(self) -> Tuple[int, int, str, str]:
        return (self.n, self.p, self.device, self.mitigation)

    @property
    def ok(self) -> bool:
        return self.error is None

def run_seed(seed: int, n: int, p: int, run: int) -> int:
    """Seed of one run; both mitigation arms of a device share it."""
    return int(np.random.SeedSequence([seed, n, p, run]).generate_state(1)[0])

@dataclass(frozen=True)
class SweepCell:
    cfg: ExperimentConfig
    n: int
    p: int
    device: str
    mitigation: str

    @property
    def key(self) -> Tuple[int, int, str, str]:
        return (self.n, self.p, self.device, self.mitigation)

    def run(self) -> List[RunRecord]:

        g = make_ring(self.n)
        solution = brute_force_maxcut(g)
        records = []

        for r in range(self.cfg.runs):
            seed = run_seed(self.cfg.seed, self.n, self.p, r)
            record = RunRecord(self.n, self.p, self.device, self.mitigation, r, seed)
            try:
                backend = make_backend(self.cfg.backend_mode, self.device, self.mitigation, self.cfg.shots, seed)
                result = optimize_params(g, self.p, backend, self.cfg.restarts, self.cfg.max_evals,
                                         param_range=self.cfg.param_range, solution=solution)
                record.ratio = result.ratio
                record.ratio_exact = result.ratio_exact
                record.f_star = result.f_star
                record.f_exact = result.f_exact
                record.success_prob = result.success_prob
                record.depth = result.metrics.depth
                record.nonlocal_count = result.metrics.nonlocal_count
                record.evals = result.evals
                record.exhausted = result.exhausted
            except ValueError as error:
                record.error = str(error)
                rc_print("cell {} run {}: {}".format(self.key, r, error), level=RC_PRINT_LEVEL_ERROR)
            records.append(record)

        return records

def records_to_jsonl(records: Sequence[RunRecord]) -> str:
    ordered = sorted(records, key=lambda rec: rec.key + (rec.run,))
    return "".join(json.dumps(dataclasses.asdict(rec), sort_keys=True) + "\n" for rec in ordered)

def records_from_jsonl(text: str) -> List[RunRecord]:
    return [RunRecord(**json.loads(line)) for line in text.splitlines() if line.strip()]

#--------------------------------------------------------------------------------------
# SweepRow and aggregation

@dataclass(frozen=True)
class SweepRow:
    n: int
    p: int
    device: str
    mitigation: str
    mean_ratio: float
    std_error: float
    mean_fstar: float
    mean_success_prob: float
    mean_depth: float
    mean_nonlocal: float
    runs_ok: int = 0
    degenerate: bool = False
    errors: Tuple[str, ...] = field(default=())

    @property
    def key(self) -> Tuple[int, int, str, str]:
        return (self.n, self.p, self.device, self.mitigation)

def aggregate(records: Sequence[RunRecord]) -> SweepRow:
    """Sample mean and standard error (ddof 1) over the successful runs of one cell."""

    if not records:
        raise ValueError("no records to aggregate")
    keys = {rec.key for rec in records}
    if len(keys) != 1:
        raise ValueError("records of {} cells given to one row".format(len(keys)))
    n, p, device, mitigation = keys.pop()

    good = [rec for rec in records if rec.ok]
    errors = tuple(rec.error for rec in records if not rec.ok)
    if not good:
        return SweepRow(n, p, device, mitigation, math.nan, math.nan, math.nan, math.nan, math.nan, math.nan,
                        0, True, errors)

    ratios = np.array([rec.ratio for rec in good])
    if ratios.size > 1:
        std_error = float(np.std(ratios, ddof=1) / math.sqrt(ratios.size))
    else:
        std_error = 0.0

    return SweepRow(n, p, device, mitigation,
                    float(np.mean(ratios)), std_error,
                    float(np.mean([rec.f_star for rec in good])),
                    float(np.mean([rec.success_prob for rec in good])),
                    float(np.mean([rec.depth for rec in good])),
                    float(np.mean([rec.nonlocal_count for rec in good])),
                    len(good), ratios.size < 2, errors)

#--------------------------------------------------------------------------------------
# run_sweep()

def sweep_cells(cfg: ExperimentConfig) -> List[SweepCell]:
    return [SweepCell(cfg, n, p, device, mitigation)
            for n in cfg.ring_sizes for p in cfg.p_values
            for device in cfg.devices for mitigation in cfg.mitigations]

def run_sweep(cfg: ExperimentConfig, records: List[RunRecord] = None) -> List[SweepRow]:
    """Rows sorted by (n, p, device, mitigation); per run records appended to `records`."""

    cells = sweep_cells(cfg)
    jobs = [RcJob(RcActSweepCell.ACTION_ID, {"cell": cell}) for cell in cells]
    verboseprint("sweep: {} cells x {} runs on {} thread(s)".format(len(cells), cfg.runs, cfg.threads))

    run_jobs([RcActSweepCell()], jobs, cfg.threads)

    rows: List[SweepRow] = []
    for job in jobs:
        cell = job.cell
        if "records" in job:
            cell_records = job.records
        else:
            # the whole cell failed, one record per run keeps the failure auditable
            error = job.get("error", "cell did not run")
            rc_print("cell {}: {}".format(cell.key, error), level=RC_PRINT_LEVEL_ERROR)
            cell_records = [RunRecord(cell.n, cell.p, cell.device, cell.mitigation, r,
                                      run_seed(cfg.seed, cell.n, cell.p, r), error=error)
                            for r in range(cfg.runs)]
        if records is not None:
            records.extend(cell_records)
        rows.append(aggregate(cell_records))

    return sorted(rows, key=lambda row: row.key)

#--------------------------------------------------------------------------------------
# emit_table()

TABLE_HEADER = ["n", "p", "device", "mitigation", "mean_ratio", "std_error", "mean_fstar",
                "mean_success_prob", "depth", "nonlocal"]

def _fmt(value: float) -> str:
    return "{:.4f}".format(value)

def emit_table(rows: Sequence[SweepRow]) -> str:

    if not rows:
        raise ValueError("no sweep rows to emit")

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for row in sorted(rows, key=lambda r: r.key):
        writer.writerow([row.n, row.p, row.device, row.mitigation, _fmt(row.mean_ratio), _fmt(row.std_error),
                         _fmt(row.mean_fstar), _fmt(row.mean_success_prob), _fmt(row.mean_depth),
                         _fmt(row.mean_nonlocal)])
    return out.getvalue()

#--------------------------------------------------------------------------------------
# run_grid()
#
# grid_search_p1 with the gamma rows spread over the worker pool.

def run_grid(g: Graph, backend: Backend, spec: GridSpec = None, threads: int = 1) -> GridResult:

    if spec is None:
        spec = GridSpec()
    backend.check_size(g)
    solution = brute_force_maxcut(g)

    gammas, betas = spec.gammas, spec.betas
    jobs = [RcJob(RcActGridRow.ACTION_ID, {"graph": g, "backend": backend, "spec": spec,
                                            "index": i, "solution": solution})
            for i in range(gammas.size)]
    status: Dict[int, int] = run_jobs([RcActGridRow()], jobs, threads)

    expectation = np.empty((gammas.size, betas.size))
    success = np.empty((gammas.size, betas.size))
    for job in jobs:
        if status.get(job.job_id) != 0:
            raise ValueError(job.get("error", "grid row {} did not run".format(job.index)))
        expectation[job.index] = job.expectation
        success[job.index] = job.success_prob

    return GridResult(gammas, betas, expectation, success)
