#-----------------------------------------------------------------------------
# tp_passes.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# Basis translation and the peephole optimization passes.
#
#    translate_to_basis - fixed decompositions, global phase tracked exactly
#
#    merge_1q_runs - resynthesize each run of single qubit gates in ZSX form,
#        a run is replaced only when the result is strictly shorter
#
#    cancel_cx_pairs - CX(c,t) .. CX(c,t) with nothing but RZ on c between
#
#    commute_rz_merge - RZ(a) [CX controls on q] RZ(b) -> RZ(a+b) [CX ...]
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-locals, too-many-branches
#
#-----------------------------------------------------------------------------
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..rc_circuit import Circuit, Gate, cx, gate_matrix, metrics, rz, sx, x
from ..rc_defines import GATE_CX, GATE_H, GATE_MEASURE, GATE_RX, GATE_RZ, GATE_RZZ, GATE_SWAP, \
    GATE_SX, GATE_X, RC_PRINT_LEVEL_DEBUG, TWO_PI, rc_print
from .tp_defines import TP_ATOL, TP_MAX_ROUNDS, TP_OPT_LEVEL_CANCEL_CX, TP_OPT_LEVEL_MAX, \
    TP_OPT_LEVEL_MERGE_1Q, TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_REMERGE

#--------------------------------------------------------------------------------------
# Small matrix helpers

def _product(gates: Sequence[Gate]) -> np.ndarray:
    """Matrix of a sequence of gates on one wire, first gate applied first."""
    out = np.eye(2, dtype=complex)
    for gate in gates:
        out = gate_matrix(gate) @ out
    return out

def _relative_phase(approx: np.ndarray, target: np.ndarray) -> Optional[float]:
    """phi with target = exp(i phi) approx, None when they differ beyond phase."""
    overlap = np.trace(approx.conj().T @ target)
    if abs(abs(overlap) / approx.shape[0] - 1.0) > TP_ATOL:
        return None
    return float(np.angle(overlap))

def _wrap(angle: float) -> float:
    """Angle folded into (-pi, pi]."""
    wrapped = math.remainder(angle, TWO_PI)
    return math.pi if wrapped == -math.pi else wrapped

#--------------------------------------------------------------------------------------
# translate_to_basis()

def _rule(gate: Gate, basis, previous: Optional[Gate]) -> List[Gate]:

    kind, q = gate.kind, gate.qubits

    if kind == GATE_H:
        return [rz(math.pi / 2, q[0]), sx(q[0]), rz(math.pi / 2, q[0])]
    if kind == GATE_RX:
        return [rz(math.pi / 2, q[0]), sx(q[0]), rz(gate.param + math.pi, q[0]),
                sx(q[0]), rz(math.pi / 2, q[0])]
    if kind == GATE_X:
        return [sx(q[0]), sx(q[0])]
    if kind == GATE_RZZ:
        return [cx(q[0], q[1]), rz(gate.param, q[1]), cx(q[0], q[1])]
    if kind == GATE_SWAP:
        a, b = q
        # start with the CX just emitted on this pair so the two can cancel
        if previous is not None and previous.kind == GATE_CX and set(previous.qubits) == {a, b}:
            a, b = previous.qubits
        return [cx(a, b), cx(b, a), cx(a, b)]

    raise ValueError("no translation of {} into basis {}".format(kind, sorted(basis)))

def translate_to_basis(c: Circuit, basis) -> Circuit:

    basis = frozenset(basis)
    out: List[Gate] = []
    last: Dict[int, int] = {}      # wire -> index in out of the latest gate on it
    phase = c.global_phase

    def emit(gate):
        for q in gate.qubits:
            last[q] = len(out)
        out.append(gate)

    for gate in c.gates:
        if gate.kind == GATE_MEASURE or gate.kind in basis:
            emit(gate)
            continue

        previous = None
        if gate.is_two_qubit:
            ia, ib = last.get(gate.qubits[0]), last.get(gate.qubits[1])
            if ia is not None and ia == ib:
                previous = out[ia]

        expansion = _rule(gate, basis, previous)
        for piece in expansion:
            if piece.kind not in basis:
                raise ValueError("translation of {} needs {}, not in basis {}".format(
                    gate.kind, piece.kind, sorted(basis)))

        if gate.kind in (GATE_H, GATE_RX, GATE_X):
            delta = _relative_phase(_product(expansion), gate_matrix(gate))
            if delta is None:
                raise ValueError("translation rule for {} is not equivalent".format(gate.kind))
            phase += delta

        for piece in expansion:
            emit(piece)

    return Circuit(c.num_qubits, tuple(out), phase)

#--------------------------------------------------------------------------------------
# ZSX Euler synthesis

def zyz_angles(v: np.ndarray) -> Tuple[float, float, float]:
    """(theta, phi, lam) with v proportional to RZ(phi) RY(theta) RZ(lam)."""

    w = v / np.sqrt(np.linalg.det(v))
    theta = 2.0 * math.atan2(abs(w[1, 0]), abs(w[0, 0]))
    phi = float(np.angle(w[1, 1]) + np.angle(w[1, 0]))
    lam = float(np.angle(w[1, 1]) - np.angle(w[1, 0]))
    return theta, phi, lam

def _drop_trivial_rz(gates: List[Gate]) -> List[Gate]:
    kept = []
    for gate in gates:
        if gate.kind == GATE_RZ:
            wrapped = _wrap(gate.param)
            if abs(wrapped) <= TP_ATOL:
                continue
            gate = rz(wrapped, gate.qubits[0])
        kept.append(gate)
    return kept

def synthesize_1q(v: np.ndarray, q: int, basis) -> Tuple[List[Gate], float]:
    """Shortest verified ZSX sequence for v and the phase it leaves behind."""

    candidates: List[List[Gate]] = []

    if GATE_RZ in basis:
        theta, phi, lam = zyz_angles(v)
        candidates.append(_drop_trivial_rz([rz(phi + lam, q)]))
        if GATE_SX in basis:
            candidates.append(_drop_trivial_rz([rz(lam - math.pi / 2, q), sx(q), rz(phi + math.pi / 2, q)]))
            candidates.append(_drop_trivial_rz([rz(lam, q), sx(q), rz(theta + math.pi, q),
                                                sx(q), rz(phi + math.pi, q)]))
    if GATE_SX in basis:
        candidates.append([sx(q)])
    if GATE_X in basis:
        candidates.append([x(q)])

    best = None
    for gates in sorted(candidates, key=len):
        delta = _relative_phase(_product(gates), v)
        if delta is not None:
            best = (gates, delta)
            break

    if best is None:
        raise ValueError("no ZSX form found for a single qubit run")
    return best

def _flush_run(run: List[Gate], q: int, basis, out: List[Gate]) -> float:

    if not run:
        return 0.0

    if all(g.kind == GATE_RZ for g in run):
        total = sum(g.param for g in run)
        if len(run) > 1:
            run = [rz(total, q)]
        if abs(_wrap(total)) <= TP_ATOL:
            # RZ(2 pi k) = (-1)^k I
            return float(np.angle(gate_matrix(rz(total, q))[0, 0]))
        out.extend(run)
        return 0.0

    v = _product(run)
    gates, delta = synthesize_1q(v, q, basis)
    if len(gates) < len(run):
        out.extend(gates)
        return delta

    out.extend(run)
    return 0.0

def merge_1q_runs(c: Circuit, basis=None) -> Circuit:

    if basis is None:
        basis = frozenset((GATE_RZ, GATE_SX, GATE_X))

    pending: Dict[int, List[Gate]] = {q: [] for q in range(c.num_qubits)}
    out: List[Gate] = []
    phase = c.global_phase

    for gate in c.gates:
        if gate.is_unitary and not gate.is_two_qubit:
            pending[gate.qubits[0]].append(gate)
            continue
        for q in gate.qubits:
            phase += _flush_run(pending[q], q, basis, out)
            pending[q] = []
        out.append(gate)

    for q in range(c.num_qubits):
        phase += _flush_run(pending[q], q, basis, out)

    return Circuit(c.num_qubits, tuple(out), phase)

#--------------------------------------------------------------------------------------
# cancel_cx_pairs()

def cancel_cx_pairs(c: Circuit) -> Circuit:

    gates = list(c.gates)
    removed = [False] * len(gates)

    for i, gate in enumerate(gates):
        if removed[i] or gate.kind != GATE_CX:
            continue
        control, target = gate.qubits
        for j in range(i + 1, len(gates)):
            if removed[j]:
                continue
            other = gates[j]
            if control not in other.qubits and target not in other.qubits:
                continue
            if other.kind == GATE_RZ and other.qubits == (control,):
                continue
            if other.kind == GATE_CX and other.qubits == (control, target):
                removed[i] = removed[j] = True
            break

    return c.replace(gates=[g for g, r in zip(gates, removed) if not r])

#--------------------------------------------------------------------------------------
# commute_rz_merge()

def commute_rz_merge(c: Circuit) -> Circuit:

    gates: List[Optional[Gate]] = list(c.gates)

    for i, gate in enumerate(gates):
        if gate is None or gate.kind != GATE_RZ:
            continue
        q = gate.qubits[0]
        crossed = 0
        for j in range(i + 1, len(gates)):
            other = gates[j]
            if other is None or q not in other.qubits:
                continue
            if other.kind == GATE_CX and other.qubits[0] == q:
                crossed += 1
                continue
            if other.kind == GATE_RZ and crossed:
                gates[i] = rz(gate.param + other.param, q)
                gates[j] = None
            break

    return c.replace(gates=[g for g in gates if g is not None])

#--------------------------------------------------------------------------------------
# optimize()
#
# Rounds of the level's passes are applied until a round no longer lowers
# (op_count, depth); a round that does not improve is discarded. Every level
# ends on a fixed point of its round.
#
#    level 1: merge_1q_runs
#    level 2: commute_rz_merge, cancel_cx_pairs, merge_1q_runs
#    level 3: as level 2 with merge_1q_runs also right after the commutation

def _round(c: Circuit, level: int, basis) -> Circuit:

    if level >= TP_OPT_LEVEL_CANCEL_CX:
        c = commute_rz_merge(c)
        if level >= TP_OPT_LEVEL_REMERGE:
            c = merge_1q_runs(c, basis)
        c = cancel_cx_pairs(c)
    if level >= TP_OPT_LEVEL_MERGE_1Q:
        c = merge_1q_runs(c, basis)
    return c

def optimize(c: Circuit, level: int, basis=None) -> Circuit:

    if not TP_OPT_LEVEL_MIN <= level <= TP_OPT_LEVEL_MAX:
        raise ValueError("optimization level must be {}..{}, got {}".format(
            TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_MAX, level))

    if level == TP_OPT_LEVEL_MIN:
        return c

    current = c
    score = (metrics(c).op_count, metrics(c).depth)
    for rounds in range(TP_MAX_ROUNDS):
        candidate = _round(current, level, basis)
        cand = metrics(candidate)
        if (cand.op_count, cand.depth) >= score:
            break
        current, score = candidate, (cand.op_count, cand.depth)

    rc_print("\toptimize level {}: {} -> {} ops after {} round(s)".format(
        level, metrics(c).op_count, score[0], rounds), level=RC_PRINT_LEVEL_DEBUG)
    return current
