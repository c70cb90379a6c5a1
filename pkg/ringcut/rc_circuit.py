#-----------------------------------------------------------------------------
# rc_circuit.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file defines the gate level circuit representation shared by the
# simulator and the transpiler, the QAOA ansatz builder and circuit metrics.
#
#    Gate - kind, qubit indices and an optional angle
#
#    Circuit - qubit count, ordered gates and a global phase
#
# Qubit k of an n qubit register is bit k of a basis index. In tensor form a
# register is shaped (2,)*n and qubit k lives on axis n-1-k.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-branches
#
#-----------------------------------------------------------------------------
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .rc_defines import GATE_CX, GATE_H, GATE_MEASURE, GATE_RX, GATE_RZ, GATE_RZZ, \
    GATE_SWAP, GATE_SX, GATE_X, GATES_2Q, GATES_ALL, GATES_PARAM, UNITARY_MAX_QUBITS
from .rc_graph import Graph

#--------------------------------------------------------------------------------------
# Gate

@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: Tuple[int, ...]
    param: Optional[float] = None

    def __post_init__(self):

        if self.kind not in GATES_ALL:
            raise ValueError("unknown gate kind {!r}".format(self.kind))

        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)

        arity = 2 if self.kind in GATES_2Q else 1
        if len(qubits) != arity:
            raise ValueError("{} acts on {} qubit(s), got {}".format(self.kind, arity, qubits))
        if len(set(qubits)) != len(qubits):
            raise ValueError("{} qubits must be distinct, got {}".format(self.kind, qubits))
        if min(qubits) < 0:
            raise ValueError("negative qubit index in {}".format(qubits))

        if self.kind in GATES_PARAM:
            if self.param is None:
                raise ValueError("{} needs an angle".format(self.kind))
            object.__setattr__(self, "param", float(self.param))
        elif self.param is not None:
            raise ValueError("{} takes no angle".format(self.kind))

    @property
    def is_unitary(self) -> bool:
        return self.kind != GATE_MEASURE

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in GATES_2Q

    def __str__(self):
        text = " ".join([self.kind] + [str(q) for q in self.qubits])
        if self.param is not None:
            text += " " + repr(self.param)
        return text

# shorthand constructors
def h(q):           return Gate(GATE_H, (q,))
def x(q):           return Gate(GATE_X, (q,))
def sx(q):          return Gate(GATE_SX, (q,))
def rx(theta, q):   return Gate(GATE_RX, (q,), theta)
def rz(theta, q):   return Gate(GATE_RZ, (q,), theta)
def rzz(theta, a, b): return Gate(GATE_RZZ, (a, b), theta)
def cx(c, t):       return Gate(GATE_CX, (c, t))
def swap(a, b):     return Gate(GATE_SWAP, (a, b))
def measure(q):     return Gate(GATE_MEASURE, (q,))

#--------------------------------------------------------------------------------------
# Circuit

@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: Tuple[Gate, ...] = ()
    global_phase: float = 0.0

    def __post_init__(self):

        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")

        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "global_phase", float(self.global_phase))

        measured = set()
        for gate in gates:
            if max(gate.qubits) >= self.num_qubits:
                raise ValueError("gate {} exceeds {} qubits".format(gate, self.num_qubits))
            if gate.kind == GATE_MEASURE:
                measured.add(gate.qubits[0])
            elif measured.intersection(gate.qubits):
                raise ValueError("gate {} follows a measurement on the same qubit".format(gate))

    def __len__(self):
        return len(self.gates)

    @property
    def unitary_gates(self) -> Tuple[Gate, ...]:
        return tuple(g for g in self.gates if g.is_unitary)

    @property
    def has_measurements(self) -> bool:
        return any(g.kind == GATE_MEASURE for g in self.gates)

    @property
    def measured_qubits(self) -> Tuple[int, ...]:
        return tuple(g.qubits[0] for g in self.gates if g.kind == GATE_MEASURE)

    def count_ops(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for gate in self.gates:
            counts[gate.kind] = counts.get(gate.kind, 0) + 1
        return counts

    def replace(self, gates: Iterable[Gate] = None, global_phase: float = None,
                num_qubits: int = None) -> "Circuit":
        return Circuit(self.num_qubits if num_qubits is None else num_qubits,
                       self.gates if gates is None else tuple(gates),
                       self.global_phase if global_phase is None else global_phase)

    def without_measurements(self) -> "Circuit":
        return self.replace(gates=self.unitary_gates)

    def with_measurements(self, qubits: Sequence[int] = None) -> "Circuit":
        if qubits is None:
            qubits = range(self.num_qubits)
        return self.replace(gates=self.unitary_gates + tuple(measure(q) for q in qubits))

def remap_qubits(c: Circuit, mapping: Sequence[int], num_qubits: int) -> Circuit:
    """Relabel qubit q as mapping[q] on a register of num_qubits."""

    if len(mapping) < c.num_qubits:
        raise ValueError("mapping covers {} of {} qubits".format(len(mapping), c.num_qubits))

    gates = [Gate(g.kind, tuple(mapping[q] for q in g.qubits), g.param) for g in c.gates]
    return Circuit(num_qubits, tuple(gates), c.global_phase)

def compact_qubits(c: Circuit, keep: Sequence[int] = ()) -> Tuple[Circuit, Tuple[int, ...]]:
    """Drop idle wires: (circuit on the touched qubits, their original labels in order)."""

    labels = sorted(set(keep).union(q for g in c.gates for q in g.qubits))
    if not labels:
        labels = [0]
    index = {q: k for k, q in enumerate(labels)}
    gates = [Gate(g.kind, tuple(index[q] for q in g.qubits), g.param) for g in c.gates]
    return Circuit(len(labels), tuple(gates), c.global_phase), tuple(labels)

#--------------------------------------------------------------------------------------
# QaoaParams

@dataclass(frozen=True)
class QaoaParams:
    gammas: Tuple[float, ...]
    betas: Tuple[float, ...]

    def __post_init__(self):
        gammas = tuple(float(v) for v in self.gammas)
        betas = tuple(float(v) for v in self.betas)
        if len(gammas) < 1:
            raise ValueError("QAOA needs at least one layer")
        if len(gammas) != len(betas):
            raise ValueError("got {} gammas but {} betas".format(len(gammas), len(betas)))
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "betas", betas)

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)

    @classmethod
    def from_vector(cls, vector) -> "QaoaParams":
        values = [float(v) for v in vector]
        if len(values) % 2:
            raise ValueError("parameter vector must hold 2p values")
        p = len(values) // 2
        return cls(tuple(values[:p]), tuple(values[p:]))

#--------------------------------------------------------------------------------------
# build_qaoa_ansatz()
#
# Per layer k the cost unitary exp(-i gamma_k C) is emitted edge by edge as
# RZZ(-w gamma_k), exp(-i w gamma_k / 2) of global phase per edge, then the
# mixer exp(-i beta_k B) as RX(2 beta_k) on every qubit.

def build_qaoa_ansatz(g: Graph, params: QaoaParams, decompose_rzz: bool = False,
                      with_measurements: bool = False) -> Circuit:

    n = g.num_vertices
    gates: List[Gate] = [h(q) for q in range(n)]
    phase = 0.0

    for gamma, beta in zip(params.gammas, params.betas):
        for i, j, w in g.edges:
            theta = -w * gamma
            if decompose_rzz:
                gates.extend([cx(i, j), rz(theta, j), cx(i, j)])
            else:
                gates.append(rzz(theta, i, j))
            phase -= w * gamma / 2.0

        gates.extend(rx(2.0 * beta, q) for q in range(n))

    if with_measurements:
        gates.extend(measure(q) for q in range(n))

    return Circuit(n, tuple(gates), phase)

#--------------------------------------------------------------------------------------
# CircuitMetrics

@dataclass(frozen=True)
class CircuitMetrics:
    depth: int = 0
    op_count: int = 0
    nonlocal_count: int = 0

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.depth, self.op_count, self.nonlocal_count)

    def dominated_by(self, other: "CircuitMetrics") -> bool:
        """True when every component is <= the same component of other."""
        return all(a <= b for a, b in zip(self.as_tuple(), other.as_tuple()))

def metrics(c: Circuit) -> CircuitMetrics:

    level = [0] * c.num_qubits
    depth = ops = nonlocal_count = 0

    for gate in c.gates:
        if not gate.is_unitary:
            continue
        ops += 1
        if gate.is_two_qubit:
            nonlocal_count += 1
        layer = 1 + max(level[q] for q in gate.qubits)
        for q in gate.qubits:
            level[q] = layer
        depth = max(depth, layer)

    return CircuitMetrics(depth, ops, nonlocal_count)

#--------------------------------------------------------------------------------------
# Gate matrices
#
# Two qubit matrices use the local ordering |q0 q1>, gate.qubits[0] being the
# most significant bit.

_SQ2 = 1.0 / math.sqrt(2.0)

_FIXED = {
    GATE_H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GATE_X: np.array([[0, 1], [1, 0]], dtype=complex),
    GATE_SX: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
    GATE_CX: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    GATE_SWAP: np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}

def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])

def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)

def rzz_matrix(theta: float) -> np.ndarray:
    a, b = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    return np.diag([a, b, b, a])

def gate_matrix(gate: Gate) -> np.ndarray:

    if gate.kind in _FIXED:
        return _FIXED[gate.kind]
    if gate.kind == GATE_RZ:
        return rz_matrix(gate.param)
    if gate.kind == GATE_RX:
        return rx_matrix(gate.param)
    if gate.kind == GATE_RZZ:
        return rzz_matrix(gate.param)

    raise ValueError("{} has no matrix".format(gate.kind))

#--------------------------------------------------------------------------------------
# apply_matrix()
#
# Contract a k qubit matrix into the given tensor axes of a register tensor and
# return a tensor with the original axis order.

def apply_matrix(tensor: np.ndarray, matrix: np.ndarray, axes: Sequence[int]) -> np.ndarray:

    k = len(axes)
    op = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))

def qubit_axes(qubits: Sequence[int], num_qubits: int) -> List[int]:
    return [num_qubits - 1 - q for q in qubits]

#--------------------------------------------------------------------------------------
def unitary_of(c: Circuit) -> np.ndarray:
    """Full 2^n x 2^n matrix of a measurement free circuit, global phase included."""

    n = c.num_qubits
    if c.has_measurements:
        raise ValueError("cannot form the unitary of a measured circuit")
    if n > UNITARY_MAX_QUBITS:
        raise ValueError("{} qubits exceeds the unitary bound of {}".format(n, UNITARY_MAX_QUBITS))

    dim = 1 << n
    # columns of the identity, register axes first
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for gate in c.gates:
        tensor = apply_matrix(tensor, gate_matrix(gate), qubit_axes(gate.qubits, n))

    return np.exp(1j * c.global_phase) * tensor.reshape(dim, dim)

def permutation_unitary(perm: Sequence[int]) -> np.ndarray:
    """Unitary that moves the content of qubit a onto qubit perm[a]."""

    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("{} is not a permutation".format(list(perm)))

    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for src in range(dim):
        dst = 0
        for a in range(n):
            if (src >> a) & 1:
                dst |= 1 << perm[a]
        out[dst, src] = 1.0
    return out

def unitary_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|tr(U^dagger V)| / d, 1 when equal up to global phase."""

    if u.shape != v.shape:
        raise ValueError("unitaries of shape {} and {} differ".format(u.shape, v.shape))
    return float(abs(np.trace(u.conj().T @ v)) / u.shape[0])

#--------------------------------------------------------------------------------------
# Circuit text format
#
#    qubits 3
#    phase -1.5
#    h 0
#    rz 1 -1.5707963
#    cx 0 1
#    measure all

def circuit_to_text(c: Circuit) -> str:

    lines = ["qubits {}".format(c.num_qubits), "phase {!r}".format(c.global_phase)]
    measured = c.measured_qubits
    for gate in c.unitary_gates:
        lines.append(str(gate))
    if measured and sorted(measured) == list(range(c.num_qubits)):
        lines.append("measure all")
    else:
        lines.extend(str(measure(q)) for q in measured)

    return "\n".join(lines) + "\n"

def circuit_from_text(text: str) -> Circuit:

    num_qubits = None
    phase = 0.0
    gates: List[Gate] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        head = fields[0].lower()
        try:
            if head == "qubits":
                num_qubits = int(fields[1])
            elif head == "phase":
                phase = float(fields[1])
            elif head == GATE_MEASURE and fields[1:] == ["all"]:
                if num_qubits is None:
                    raise ValueError("'measure all' before 'qubits'")
                gates.extend(measure(q) for q in range(num_qubits))
            else:
                arity = 2 if head in GATES_2Q else 1
                qubits = tuple(int(f) for f in fields[1:1 + arity])
                rest = fields[1 + arity:]
                param = float(rest[0]) if rest else None
                if len(rest) > 1:
                    raise ValueError("trailing fields")
                gates.append(Gate(head, qubits, param))
        except (IndexError, ValueError) as error:
            raise ValueError("line {}: {!r}: {}".format(lineno, raw, error)) from error

    if num_qubits is None:
        num_qubits = 1 + max((max(g.qubits) for g in gates), default=0)

    return Circuit(num_qubits, tuple(gates), phase)
