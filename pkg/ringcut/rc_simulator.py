#-----------------------------------------------------------------------------
# rc_simulator.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file implements the exact statevector engine, the density matrix
# engine with per gate depolarizing + thermal relaxation noise, the Kraus
# channel helpers, shot sampling with readout confusion and the cost
# expectation / success probability readouts.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-locals
#
#-----------------------------------------------------------------------------
import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .rc_circuit import Circuit, apply_matrix, gate_matrix, qubit_axes
from .rc_defines import ATOL_KRAUS, ATOL_NORM, DENSITY_MAX_QUBITS, GATES_2Q, \
    RC_PRINT_LEVEL_DEBUG, STATEVECTOR_MAX_QUBITS, rc_print
from .rc_graph import Graph, MaxCutSolution, bitstring_to_index, cut_values, index_to_bitstring
from .rc_noise import DeviceProfile

Readout = Sequence[Tuple[float, float]]

#--------------------------------------------------------------------------------------
# StateVector

@dataclass
class StateVector:
    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != 1 << self.num_qubits:
            raise ValueError("{} amplitudes for {} qubits".format(self.amplitudes.size, self.num_qubits))

    @property
    def qubits(self) -> Tuple[int, ...]:
        return tuple(range(self.num_qubits))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def diagonal(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @classmethod
    def basis_state(cls, bits: str) -> "StateVector":
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[bitstring_to_index(bits)] = 1.0
        return cls(amps, len(bits))

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.num_qubits)

#--------------------------------------------------------------------------------------
# DensityMatrix
#
# `qubits` are the labels of the register, in order: entry k is the physical
# qubit held by local qubit k. A noisy run keeps only the qubits it touches.

@dataclass
class DensityMatrix:
    matrix: np.ndarray
    num_qubits: int
    qubits: Tuple[int, ...] = field(default=None)

    def __post_init__(self):
        dim = 1 << self.num_qubits
        self.matrix = np.asarray(self.matrix, dtype=complex).reshape(dim, dim)
        if self.qubits is None:
            self.qubits = tuple(range(self.num_qubits))
        self.qubits = tuple(int(q) for q in self.qubits)
        if len(self.qubits) != self.num_qubits:
            raise ValueError("{} labels for {} qubits".format(len(self.qubits), self.num_qubits))

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def is_hermitian(self, atol: float = ATOL_NORM) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T)).min())

    def diagonal(self) -> np.ndarray:
        return np.clip(np.real(np.diag(self.matrix)), 0.0, None)

QuantumState = Union[StateVector, DensityMatrix]

#--------------------------------------------------------------------------------------
# KrausChannel

@dataclass(frozen=True, eq=False)
class KrausChannel:
    operators: Tuple[np.ndarray, ...]

    def __post_init__(self):

        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(k.shape != (dim, dim) for k in ops):
            raise ValueError("Kraus operators must share one square shape")
        object.__setattr__(self, "operators", ops)

        if not np.allclose(self.completeness(), np.eye(dim), atol=ATOL_NORM):
            raise ValueError("Kraus operators are not trace preserving")

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def num_qubits(self) -> int:
        return int(round(math.log2(self.dim)))

    def completeness(self) -> np.ndarray:
        return sum(k.conj().T @ k for k in self.operators)

    def superoperator(self) -> np.ndarray:
        """Row major vectorised action, rho_out[a,b] = S[(a,b),(c,d)] rho_in[c,d]."""
        return sum(np.kron(k, k.conj()) for k in self.operators)

    def process_fidelity(self) -> float:
        d = self.dim
        return float(sum(abs(np.trace(k)) ** 2 for k in self.operators) / (d * d))

    def average_gate_fidelity(self) -> float:
        d = self.dim
        return (d * self.process_fidelity() + 1.0) / (d + 1.0)

    def is_identity(self, atol: float = ATOL_KRAUS) -> bool:
        return abs(self.process_fidelity() - 1.0) <= atol

    def compose(self, after: "KrausChannel") -> "KrausChannel":
        """This channel, then `after`."""
        if after.dim != self.dim:
            raise ValueError("cannot compose channels of dimension {} and {}".format(self.dim, after.dim))
        return KrausChannel(_nonzero(b @ a for a in self.operators for b in after.operators))

    def tensor(self, other: "KrausChannel") -> "KrausChannel":
        """This channel on the leading qubit(s), other on the trailing ones."""
        return KrausChannel(tuple(np.kron(a, b) for a in self.operators for b in other.operators))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)

def _nonzero(ops) -> Tuple[np.ndarray, ...]:
    ops = tuple(ops)
    kept = tuple(k for k in ops if np.linalg.norm(k) > ATOL_KRAUS)
    return kept if kept else ops[:1]

#--------------------------------------------------------------------------------------
# Channels

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

def identity_channel(arity: int = 1) -> KrausChannel:
    return KrausChannel((np.eye(1 << arity, dtype=complex),))

def depolarizing_channel(lam: float, arity: int = 1) -> KrausChannel:
    """rho -> (1 - lam) rho + lam I / 2^arity, Kraus operators over the Pauli basis."""

    if not 0.0 <= lam <= 1.0:
        raise ValueError("depolarizing parameter {} outside [0, 1]".format(lam))
    if arity not in (1, 2):
        raise ValueError("depolarizing arity must be 1 or 2, got {}".format(arity))

    d2 = float(4 ** arity)
    ops = [math.sqrt(1.0 - lam * (d2 - 1.0) / d2) * np.eye(1 << arity, dtype=complex)]
    if lam > 0.0:
        for paulis in itertools.product(_PAULI, repeat=arity):
            if all(p is _PAULI[0] for p in paulis):
                continue
            op = paulis[0]
            for p in paulis[1:]:
                op = np.kron(op, p)
            ops.append(math.sqrt(lam / d2) * op)

    return KrausChannel(_nonzero(ops))

def thermal_relaxation_channel(t1: float, t2: float, duration: float) -> KrausChannel:
    """Amplitude damping over T1 followed by the extra dephasing that brings the
    off-diagonal decay to exp(-duration/T2). t1, t2 in us, duration in ns."""

    if not t1 > 0 or not t2 > 0:
        raise ValueError("T1 and T2 must be positive, got t1={} t2={}".format(t1, t2))
    if t2 > 2 * t1:
        raise ValueError("T2={} exceeds 2*T1={}".format(t2, 2 * t1))
    if duration < 0:
        raise ValueError("negative duration {}".format(duration))

    if duration == 0:
        return identity_channel(1)

    t = duration / 1000.0
    damp = 1.0 - math.exp(-t / t1)
    f = math.exp(-t / t2) / math.exp(-t / (2.0 * t1))
    dephase = max(0.0, 1.0 - f * f)

    amplitude = (np.array([[1, 0], [0, math.sqrt(1.0 - damp)]], dtype=complex),
                 np.array([[0, math.sqrt(damp)], [0, 0]], dtype=complex))
    phase = (np.array([[1, 0], [0, math.sqrt(1.0 - dephase)]], dtype=complex),
             np.array([[0, 0], [0, math.sqrt(dephase)]], dtype=complex))

    return KrausChannel(_nonzero(amplitude)).compose(KrausChannel(_nonzero(phase)))

def depolarizing_for_error(error: float, relaxation: KrausChannel) -> float:
    """The lambda for which relaxation after depolarizing has average gate
    infidelity `error`, clamped to [0, 1]."""

    d = relaxation.dim
    target = ((d + 1.0) * (1.0 - error) - 1.0) / d
    f_relax = relaxation.process_fidelity()
    if f_relax <= target:
        return 0.0

    # F_pro(R o D(lam)) = (1 - lam) F_pro(R) + lam / d^2
    lam = (f_relax - target) / (f_relax - 1.0 / (d * d))
    return min(1.0, max(0.0, lam))

#--------------------------------------------------------------------------------------
# GateNoise - the noise attached to one gate spec

@dataclass(frozen=True, eq=False)
class GateNoise:
    depolarizing: float
    relaxation: Tuple[KrausChannel, ...]
    superops: Tuple[Optional[np.ndarray], ...]

    @property
    def is_trivial(self) -> bool:
        return self.depolarizing == 0.0 and all(s is None for s in self.superops)

    def channel(self) -> KrausChannel:
        relax = self.relaxation[0]
        for ch in self.relaxation[1:]:
            relax = relax.tensor(ch)
        return depolarizing_channel(self.depolarizing, len(self.relaxation)).compose(relax)

class NoiseModel:
    """Per gate noise derived from a device profile, built once per gate site."""

    def __init__(self, profile: DeviceProfile):
        self.profile = profile
        self._cache: Dict[Tuple[str, Tuple[int, ...]], GateNoise] = {}

    def for_gate(self, kind: str, qubits: Sequence[int]) -> GateNoise:

        key = (kind, tuple(qubits))
        if key in self._cache:
            return self._cache[key]

        spec = self.profile.gate_spec(kind, qubits)
        if spec is None:
            raise ValueError("{} on {} has no gate spec in {}".format(kind, tuple(qubits), self.profile.name))

        channels = [thermal_relaxation_channel(self.profile.qubit_params[q].t1,
                                               self.profile.qubit_params[q].t2, spec.duration)
                    for q in qubits]
        relax = channels[0]
        for ch in channels[1:]:
            relax = relax.tensor(ch)

        lam = depolarizing_for_error(spec.error, relax) if spec.error > 0 else 0.0
        sups = tuple(None if ch.is_identity() else ch.superoperator() for ch in channels)

        noise = GateNoise(lam, tuple(channels), sups)
        self._cache[key] = noise
        rc_print("\tnoise {} {}: lambda {:.3e}".format(kind, tuple(qubits), lam), level=RC_PRINT_LEVEL_DEBUG)
        return noise

#--------------------------------------------------------------------------------------
# run_statevector()

def run_statevector(c: Circuit) -> StateVector:

    n = c.num_qubits
    if c.has_measurements:
        raise ValueError("run_statevector takes a measurement free circuit")
    if n > STATEVECTOR_MAX_QUBITS:
        raise ValueError("{} qubits exceeds the statevector bound of {}".format(n, STATEVECTOR_MAX_QUBITS))

    psi = np.zeros((2,) * n, dtype=complex)
    psi[(0,) * n] = 1.0
    for gate in c.gates:
        psi = apply_matrix(psi, gate_matrix(gate), qubit_axes(gate.qubits, n))

    return StateVector(np.exp(1j * c.global_phase) * psi.reshape(-1), n)

#--------------------------------------------------------------------------------------
# Density matrix kernels
#
# The density tensor has shape (2,)*2n: row axes first, column axes after.

def _row_axes(local: Sequence[int], n: int) -> List[int]:
    return [n - 1 - q for q in local]

def _col_axes(local: Sequence[int], n: int) -> List[int]:
    return [2 * n - 1 - q for q in local]

def _apply_unitary(rho: np.ndarray, u: np.ndarray, local: Sequence[int], n: int) -> np.ndarray:
    rho = apply_matrix(rho, u, _row_axes(local, n))
    return apply_matrix(rho, u.conj(), _col_axes(local, n))

def _apply_superop_1q(rho: np.ndarray, sup: np.ndarray, q: int, n: int) -> np.ndarray:
    return apply_matrix(rho, sup, [n - 1 - q, 2 * n - 1 - q])

def _apply_depolarizing(rho: np.ndarray, lam: float, local: Sequence[int], n: int) -> np.ndarray:

    k = len(local)
    axes = _row_axes(local, n) + _col_axes(local, n)
    moved = np.moveaxis(rho, axes, list(range(2 * k)))
    rest = moved.shape[2 * k:]
    block = moved.reshape((1 << k, 1 << k, -1))
    reduced = np.einsum("iij->j", block)

    mixed = np.einsum("ij,k->ijk", np.eye(1 << k) / (1 << k), reduced)
    mixed = np.moveaxis(mixed.reshape((2,) * (2 * k) + rest), list(range(2 * k)), axes)

    return (1.0 - lam) * rho + lam * mixed

#--------------------------------------------------------------------------------------
# run_density()
#
# Registers of up to DENSITY_MAX_QUBITS qubits are simulated whole. Wider
# (device sized) circuits are compacted to the qubits their gates touch.

def run_density(c: Circuit, profile: DeviceProfile, noise: NoiseModel = None) -> DensityMatrix:

    if noise is None:
        noise = NoiseModel(profile)

    gates = c.unitary_gates
    for gate in gates:
        for q in gate.qubits:
            if q >= profile.num_qubits:
                raise ValueError("qubit {} has no parameters in {}".format(q, profile.name))
        if gate.kind not in profile.basis:
            raise ValueError("untranspiled gate {}: {} is not in the {} basis".format(gate, gate.kind, profile.name))
        if gate.kind in GATES_2Q and not profile.coupling.is_coupled(*gate.qubits):
            raise ValueError("untranspiled gate {}: qubits not coupled on {}".format(gate, profile.name))

    if c.num_qubits <= DENSITY_MAX_QUBITS:
        labels = tuple(range(c.num_qubits))
    else:
        touched = set(c.measured_qubits)
        for gate in gates:
            touched.update(gate.qubits)
        labels = tuple(sorted(touched)) or (0,)

    n = len(labels)
    if n > DENSITY_MAX_QUBITS:
        raise ValueError("{} active qubits exceeds the density matrix bound of {}".format(n, DENSITY_MAX_QUBITS))

    local = {q: k for k, q in enumerate(labels)}

    rho = np.zeros((2,) * (2 * n), dtype=complex)
    rho[(0,) * (2 * n)] = 1.0

    for gate in gates:
        qubits = [local[q] for q in gate.qubits]
        rho = _apply_unitary(rho, gate_matrix(gate), qubits, n)

        gate_noise = noise.for_gate(gate.kind, gate.qubits)
        if gate_noise.is_trivial:
            continue
        if gate_noise.depolarizing > 0.0:
            rho = _apply_depolarizing(rho, gate_noise.depolarizing, qubits, n)
        for q, sup in zip(qubits, gate_noise.superops):
            if sup is not None:
                rho = _apply_superop_1q(rho, sup, q, n)

    # global phase cancels in rho
    return DensityMatrix(rho.reshape(1 << n, 1 << n), n, labels)

#--------------------------------------------------------------------------------------
# probabilities()
#
# Marginal distribution over `qubit_order` (labels of the state). Bit j of the
# returned index is qubit_order[j].

def probabilities(state: QuantumState, qubit_order: Sequence[int] = None) -> np.ndarray:

    n = state.num_qubits
    labels = state.qubits
    if qubit_order is None:
        qubit_order = labels

    position = {q: k for k, q in enumerate(labels)}
    try:
        locals_ = [position[q] for q in qubit_order]
    except KeyError as error:
        raise ValueError("qubit {} is not held by the state".format(error.args[0])) from error
    if len(set(locals_)) != len(locals_):
        raise ValueError("qubit order {} repeats a qubit".format(list(qubit_order)))

    diag = state.diagonal().reshape((2,) * n)
    keep = [n - 1 - k for k in locals_]
    dropped = tuple(a for a in range(n) if a not in keep)
    if dropped:
        diag = diag.sum(axis=dropped)
        # surviving axes keep their relative order
        survivors = [a for a in range(n) if a in keep]
        keep = [survivors.index(a) for a in keep]

    # most significant output bit first
    probs = np.transpose(diag, keep[::-1]).reshape(-1)
    total = probs.sum()
    return probs / total if total > 0 else probs

def _order_for(state: QuantumState, n: int, qubit_order: Optional[Sequence[int]]) -> Sequence[int]:
    if qubit_order is not None:
        if len(qubit_order) != n:
            raise ValueError("qubit order covers {} qubits, graph has {}".format(len(qubit_order), n))
        return qubit_order
    if state.num_qubits != n:
        raise ValueError("state holds {} qubits, graph has {} vertices".format(state.num_qubits, n))
    return state.qubits

def expectation_cost(state: QuantumState, g: Graph, qubit_order: Sequence[int] = None) -> float:
    """Exact <H_C>, qubit_order[k] being the qubit that holds vertex k."""

    order = _order_for(state, g.num_vertices, qubit_order)
    return float(probabilities(state, order) @ cut_values(g))

#--------------------------------------------------------------------------------------
# Counts

@dataclass
class Counts:
    counts: Dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts sum to {}, expected {} shots".format(sum(self.counts.values()), self.shots))

    def frequency(self, bits: str) -> float:
        return self.counts.get(bits, 0) / self.shots

    def expectation(self, g: Graph) -> float:
        values = cut_values(g)
        return float(sum(c * values[bitstring_to_index(b)] for b, c in self.counts.items()) / self.shots)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["bitstring", "count"])
        for bits in sorted(self.counts):
            writer.writerow([bits, self.counts[bits]])
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Counts":
        rows = list(csv.DictReader(io.StringIO(text)))
        counts = {row["bitstring"]: int(row["count"]) for row in rows}
        return cls(counts, sum(counts.values()))

#--------------------------------------------------------------------------------------
# sample_counts()

def sample_counts(state: QuantumState, shots: int, readout: Readout = None, seed=0,
                  qubit_order: Sequence[int] = None) -> Counts:
    """Draw `shots` outcomes over qubit_order; readout[j] = (p01, p10) of output bit j."""

    if shots < 1:
        raise ValueError("shots must be >= 1, got {}".format(shots))

    probs = probabilities(state, qubit_order)
    k = int(round(math.log2(probs.size)))
    rng = np.random.default_rng(seed)

    outcomes = rng.choice(probs.size, size=shots, p=probs)

    if readout is not None:
        if len(readout) != k:
            raise ValueError("{} readout pairs for {} measured bits".format(len(readout), k))
        bits = (outcomes[:, None] >> np.arange(k)) & 1
        p01 = np.array([r[0] for r in readout])
        p10 = np.array([r[1] for r in readout])
        flip = rng.random((shots, k)) < np.where(bits == 0, p01, p10)
        bits ^= flip.astype(bits.dtype)
        outcomes = bits @ (1 << np.arange(k))

    values, freq = np.unique(outcomes, return_counts=True)
    counts = {index_to_bitstring(int(v), k): int(f) for v, f in zip(values, freq)}
    return Counts(counts, shots)

def readout_for(profile: DeviceProfile, physical: Sequence[int]) -> List[Tuple[float, float]]:
    return [profile.qubit_params[q].readout for q in physical]

#--------------------------------------------------------------------------------------
def success_probability(state_or_counts, solution: MaxCutSolution,
                        qubit_order: Sequence[int] = None) -> float:
    """Probability mass (or empirical frequency) on the optimal bitstrings."""

    if isinstance(state_or_counts, Counts):
        return float(sum(state_or_counts.frequency(b) for b in solution.optimal_bitstrings))

    n = len(next(iter(solution.optimal_bitstrings)))
    order = _order_for(state_or_counts, n, qubit_order)
    probs = probabilities(state_or_counts, order)
    return float(sum(probs[i] for i in solution.optimal_indices))

def uniform_state(n: int) -> StateVector:
    return StateVector(np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=complex), n)
