#-----------------------------------------------------------------------------
# rc_qaoa.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file holds the variational loop: objective evaluation on a backend
# (noiseless exact, noisy exact or shot sampled), the COBYLA parameter search
# with restarts, the p=1 grid search and the analytic ring oracles.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-arguments, too-many-locals, too-many-instance-attributes
#
#-----------------------------------------------------------------------------
import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .rc_circuit import CircuitMetrics, QaoaParams, build_qaoa_ansatz, compact_qubits, metrics
from .rc_defines import BACKEND_MODES, BACKEND_NOISELESS, BACKEND_NOISY, BACKEND_SHOTS, COBYLA_RHOBEG, \
    COBYLA_TOL, DEFAULT_GRID_RESOLUTION, DEFAULT_MAX_EVALS, DEFAULT_RESTARTS, DEFAULT_SEED, PARAM_RANGES, \
    RANGE_REDUCED, RC_PRINT_LEVEL_DEBUG, TWO_PI, rc_print, verboseprint
from .rc_graph import Graph, MaxCutSolution, brute_force_maxcut, cut_values
from .rc_noise import DeviceProfile
from .rc_simulator import NoiseModel, probabilities, readout_for, run_density, \
    run_statevector, sample_counts, success_probability
from .tp.tp import PassConfig, transpile

#--------------------------------------------------------------------------------------
# Backend

@dataclass(frozen=True)
class Backend:
    mode: str = BACKEND_NOISELESS
    profile: Optional[DeviceProfile] = None
    transpile_cfg: Optional[PassConfig] = None
    shots: Optional[int] = None
    seed: int = DEFAULT_SEED
    noise: Optional[NoiseModel] = field(default=None, compare=False, repr=False)

    def __post_init__(self):

        if self.mode not in BACKEND_MODES:
            raise ValueError("unknown backend mode {!r}, expected one of {}".format(self.mode, list(BACKEND_MODES)))
        if self.mode in (BACKEND_NOISY, BACKEND_SHOTS) and self.profile is None:
            raise ValueError("{} backend needs a device profile".format(self.mode))
        if self.mode == BACKEND_SHOTS and (self.shots is None or self.shots < 1):
            raise ValueError("shots backend needs shots >= 1, got {}".format(self.shots))
        if self.transpile_cfg is not None and self.profile is None:
            raise ValueError("transpiling needs a device profile")

        if self.profile is not None and self.mode != BACKEND_NOISELESS and self.noise is None:
            object.__setattr__(self, "noise", NoiseModel(self.profile))

    @property
    def transpiles(self) -> bool:
        """Noisy modes always run device legal circuits."""
        return self.transpile_cfg is not None or self.mode != BACKEND_NOISELESS

    @property
    def pass_config(self) -> Optional[PassConfig]:
        if not self.transpiles:
            return None
        return self.transpile_cfg if self.transpile_cfg is not None else PassConfig()

    def check_size(self, g: Graph) -> None:
        if self.profile is not None and g.num_vertices > self.profile.num_qubits:
            raise ValueError("{} vertices do not fit {} ({} qubits)".format(
                g.num_vertices, self.profile.name, self.profile.num_qubits))

#--------------------------------------------------------------------------------------
# evaluate()
#
# One objective evaluation. `value` is what the optimizer sees (the shot
# estimate in shots mode), `exact` the exact expectation of the same circuit.
# Readout confusion only enters through sampled counts.

@dataclass(frozen=True)
class Evaluation:
    value: float
    exact: float
    success_prob: float
    metrics: CircuitMetrics

def evaluate(g: Graph, params: QaoaParams, backend: Backend, solution: MaxCutSolution = None,
             eval_index: int = 0) -> Evaluation:

    backend.check_size(g)
    if solution is None:
        solution = brute_force_maxcut(g)

    cfg = backend.pass_config
    c = build_qaoa_ansatz(g, params, decompose_rzz=cfg is not None, with_measurements=True)

    order: Sequence[int] = tuple(range(g.num_vertices))
    if cfg is not None:
        result = transpile(c, backend.profile, cfg)
        c, order = result.circuit, result.qubit_order

    if backend.mode == BACKEND_NOISELESS:
        small, labels = compact_qubits(c.without_measurements(), keep=order)
        state = run_statevector(small)
        position = {q: k for k, q in enumerate(labels)}
        probs = probabilities(state, [position[q] for q in order])
    else:
        state = run_density(c, backend.profile, backend.noise)
        probs = probabilities(state, order)

    values = cut_values(g)
    exact = float(probs @ values)
    success = float(sum(probs[i] for i in solution.optimal_indices))

    if backend.mode == BACKEND_SHOTS:
        seed = np.random.SeedSequence([backend.seed, eval_index])
        counts = sample_counts(state, backend.shots, readout=readout_for(backend.profile, order),
                               seed=seed, qubit_order=order)
        value = counts.expectation(g)
        success = success_probability(counts, solution)
    else:
        value = exact

    return Evaluation(value, exact, success, metrics(c))

def objective(g: Graph, params: QaoaParams, backend: Backend, eval_index: int = 0) -> float:
    """F_p(gamma, beta) of g on the backend."""
    return evaluate(g, params, backend, eval_index=eval_index).value

#--------------------------------------------------------------------------------------
# Analytic ring oracles

def analytic_f1(gamma: float, beta: float) -> float:
    """p=1 expectation of one ring edge, 1/2 (1 + sin 4b sin g cos g)."""
    return 0.5 * (1.0 + math.sin(4.0 * beta) * math.sin(gamma) * math.cos(gamma))

def analytic_ring_ratio(p: int) -> float:

    if p < 1:
        raise ValueError("p must be >= 1, got {}".format(p))
    return (2.0 * p + 1.0) / (2.0 * p + 2.0)

def analytic_ring_fstar(n: int, p: int) -> float:

    if n < 4 or n % 2:
        raise ValueError("the ring optimum formula holds for even n >= 4, got {}".format(n))
    return n * analytic_ring_ratio(p)

def _check_ring(g: Graph) -> None:
    if g.num_vertices < 4 or any(g.degree(v) != 2 for v in range(g.num_vertices)) \
            or any(w != 1.0 for _, _, w in g.edges) or g.num_edges != g.num_vertices:
        raise ValueError("analytic landscape needs a unit weight ring of at least 4 vertices")

#--------------------------------------------------------------------------------------
# Parameter symmetries
#
# exp(-i gamma C) repeats with period 2 pi / gcd of the cut values (pi on rings,
# whose cuts are all even), the mixer with period pi / 2, and
# F(-gamma, -beta) = F(gamma, beta) since C and B are real.

def cost_gamma_period(g: Graph) -> Optional[float]:
    """Period of the objective in every gamma_k, None for non integer cut values."""

    values = cut_values(g)
    if not np.allclose(values, np.round(values)):
        return None
    step = int(np.gcd.reduce(np.round(values).astype(np.int64)))
    return TWO_PI / step if step > 0 else None

def canonicalize(params: QaoaParams, gamma_period: Optional[float] = TWO_PI) -> QaoaParams:
    """Fold into gamma in [0, period/2], beta in [0, pi/2); the time reversal is
    applied to all layers when the first gamma lies in the upper half period."""

    gammas = list(params.gammas)
    betas = list(params.betas)

    if gamma_period is not None:
        gammas = [g % gamma_period for g in gammas]
        if gammas[0] > gamma_period / 2:
            gammas = [(-g) % gamma_period for g in gammas]
            betas = [-b for b in betas]

    half_pi = math.pi / 2
    betas = [b % half_pi for b in betas]
    return QaoaParams(tuple(gammas), tuple(betas))

#--------------------------------------------------------------------------------------
# optimize_params()

@dataclass
class QaoaResult:
    best_params: QaoaParams
    f_star: float
    f_exact: float
    c_max: float
    ratio: float
    success_prob: float
    evals: int
    history: List[Tuple[QaoaParams, float]]
    exhausted: bool = False
    metrics: CircuitMetrics = field(default_factory=CircuitMetrics)

    @property
    def ratio_exact(self) -> float:
        return self.f_exact / self.c_max

    def best_so_far(self) -> List[float]:
        out, best = [], -math.inf
        for _, value in self.history:
            best = max(best, value)
            out.append(best)
        return out

def start_schedule(p: int) -> np.ndarray:
    """First start: gamma ramps up to pi/4, beta ramps down to pi/8, over the layers."""

    k = np.arange(1, p + 1)
    gammas = (math.pi / 4) * 2 * k / (p + 1)
    betas = (math.pi / 8) * 2 * (p + 1 - k) / (p + 1)
    return np.concatenate([gammas, betas])

def wrap_params(vector) -> QaoaParams:
    """gamma mod 2 pi, beta mod pi."""
    v = np.asarray(vector, dtype=np.float64)
    p = v.size // 2
    return QaoaParams(tuple(np.mod(v[:p], TWO_PI)), tuple(np.mod(v[p:], math.pi)))

def optimize_params(g: Graph, p: int, backend: Backend, restarts: int = DEFAULT_RESTARTS,
                    max_evals: int = DEFAULT_MAX_EVALS, start: QaoaParams = None,
                    param_range: str = RANGE_REDUCED, solution: MaxCutSolution = None) -> QaoaResult:
    """Maximize F_p with COBYLA from `restarts` starts, max_evals evaluations each."""

    if p < 1:
        raise ValueError("p must be >= 1, got {}".format(p))
    if restarts < 1:
        raise ValueError("restarts must be >= 1, got {}".format(restarts))
    if max_evals < 1:
        raise ValueError("max_evals must be >= 1, got {}".format(max_evals))
    if param_range not in PARAM_RANGES:
        raise ValueError("unknown parameter range {!r}".format(param_range))
    if start is not None and start.p != p:
        raise ValueError("start has {} layers, expected {}".format(start.p, p))

    backend.check_size(g)
    if solution is None:
        solution = brute_force_maxcut(g)

    gamma_max, beta_max = PARAM_RANGES[param_range]
    rng = np.random.default_rng([backend.seed, p])

    history: List[Tuple[QaoaParams, float]] = []
    best: Optional[Tuple[QaoaParams, Evaluation]] = None
    exhausted = False

    for restart in range(restarts):
        if restart == 0:
            x0 = start.to_vector() if start is not None else start_schedule(p)
        else:
            x0 = np.concatenate([rng.uniform(0.0, gamma_max, p), rng.uniform(0.0, beta_max, p)])

        used = 0

        def negative_f(x):
            nonlocal best, used
            params = wrap_params(x)
            ev = evaluate(g, params, backend, solution, eval_index=len(history))
            history.append((params, ev.value))
            used += 1
            if best is None or ev.value > best[1].value:
                best = (params, ev)
            return -ev.value

        minimize(negative_f, x0, method="COBYLA", tol=COBYLA_TOL,
                 options={"rhobeg": COBYLA_RHOBEG, "maxiter": max_evals})

        if used >= max_evals:
            exhausted = True
        rc_print("\trestart {}: best so far {:.6f} after {} evaluations".format(
            restart, best[1].value, used), level=RC_PRINT_LEVEL_DEBUG)

    params, ev = best
    verboseprint("\tn={} p={} {}: F* {:.4f} r {:.4f} ({} evaluations)".format(
        g.num_vertices, p, backend.mode, ev.value, ev.value / solution.c_max, len(history)))

    return QaoaResult(params, ev.value, ev.exact, solution.c_max, ev.value / solution.c_max,
                      ev.success_prob, len(history), history, exhausted, ev.metrics)

def trace_to_csv(result: QaoaResult) -> str:
    """Optimizer trace: eval,gamma_1..gamma_p,beta_1..beta_p,value."""

    p = result.best_params.p
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["eval"] + ["gamma_{}".format(k) for k in range(1, p + 1)]
                    + ["beta_{}".format(k) for k in range(1, p + 1)] + ["value"])
    for i, (params, value) in enumerate(result.history):
        writer.writerow([i] + ["{:.6f}".format(v) for v in params.to_vector()] + ["{:.6f}".format(value)])
    return out.getvalue()

#--------------------------------------------------------------------------------------
# Grid search

@dataclass(frozen=True)
class GridSpec:
    gamma_range: Tuple[float, float] = (0.0, math.pi)
    beta_range: Tuple[float, float] = (0.0, math.pi / 2)
    resolution: float = DEFAULT_GRID_RESOLUTION

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValueError("grid resolution must be > 0, got {}".format(self.resolution))
        for name, (lo, hi) in (("gamma", self.gamma_range), ("beta", self.beta_range)):
            if not lo < hi:
                raise ValueError("{} range [{}, {}] is empty".format(name, lo, hi))

    @classmethod
    def from_preset(cls, param_range: str = RANGE_REDUCED,
                    resolution: float = DEFAULT_GRID_RESOLUTION) -> "GridSpec":
        if param_range not in PARAM_RANGES:
            raise ValueError("unknown parameter range {!r}".format(param_range))
        gamma_max, beta_max = PARAM_RANGES[param_range]
        return cls((0.0, gamma_max), (0.0, beta_max), resolution)

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> np.ndarray:
        # inclusive endpoints
        return np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)

    @property
    def gammas(self) -> np.ndarray:
        return self._axis(*self.gamma_range, self.resolution)

    @property
    def betas(self) -> np.ndarray:
        return self._axis(*self.beta_range, self.resolution)

@dataclass
class GridResult:
    gammas: np.ndarray
    betas: np.ndarray
    expectation: np.ndarray     # [gamma index, beta index]
    success_prob: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.expectation.shape

    def peak(self) -> Tuple[float, float, float]:
        i, j = np.unravel_index(int(np.argmax(self.expectation)), self.shape)
        return float(self.gammas[i]), float(self.betas[j]), float(self.expectation[i, j])

    def peak_success(self) -> Tuple[float, float, float]:
        i, j = np.unravel_index(int(np.argmax(self.success_prob)), self.shape)
        return float(self.gammas[i]), float(self.betas[j]), float(self.success_prob[i, j])

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["gamma", "beta", "expectation", "success_prob"])
        for i, gamma in enumerate(self.gammas):
            for j, beta in enumerate(self.betas):
                writer.writerow(["{:.6f}".format(gamma), "{:.6f}".format(beta),
                                 "{:.6f}".format(self.expectation[i, j]), "{:.6f}".format(self.success_prob[i, j])])
        return out.getvalue()

def grid_row(g: Graph, backend: Backend, spec: GridSpec, i: int,
             solution: MaxCutSolution = None) -> Tuple[np.ndarray, np.ndarray]:
    """(expectation, success_prob) along beta at the i-th gamma node."""

    if solution is None:
        solution = brute_force_maxcut(g)

    gamma = spec.gammas[i]
    betas = spec.betas
    expectation = np.empty(betas.size)
    success = np.empty(betas.size)
    for j, beta in enumerate(betas):
        ev = evaluate(g, QaoaParams((gamma,), (beta,)), backend, solution, eval_index=i * betas.size + j)
        expectation[j] = ev.value
        success[j] = ev.success_prob
    return expectation, success

def grid_search_p1(g: Graph, backend: Backend, spec: GridSpec = None,
                   solution: MaxCutSolution = None) -> GridResult:

    if spec is None:
        spec = GridSpec()
    backend.check_size(g)
    if solution is None:
        solution = brute_force_maxcut(g)

    gammas, betas = spec.gammas, spec.betas
    expectation = np.empty((gammas.size, betas.size))
    success = np.empty((gammas.size, betas.size))
    for i in range(gammas.size):
        expectation[i], success[i] = grid_row(g, backend, spec, i, solution)

    verboseprint("\tgrid {}x{} on {} vertices done".format(gammas.size, betas.size, g.num_vertices))
    return GridResult(gammas, betas, expectation, success)

def expectation_landscape(g: Graph, spec: GridSpec = None) -> GridResult:
    """The analytic p=1 surface m F_edge(gamma, beta) of a ring; success_prob is NaN."""

    _check_ring(g)
    if spec is None:
        spec = GridSpec()

    gammas, betas = spec.gammas, spec.betas
    g_mesh, b_mesh = np.meshgrid(gammas, betas, indexing="ij")
    surface = g.num_edges * 0.5 * (1.0 + np.sin(4.0 * b_mesh) * np.sin(g_mesh) * np.cos(g_mesh))
    return GridResult(gammas, betas, surface, np.full(surface.shape, np.nan))
