#!/usr/bin/env python3
#-----------------------------------------------------------------------------
# tp.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# The transpile pipeline: layout -> swap routing -> basis translation ->
# optimization, plus the metric ladder and a small command line.
#
# example calling:
#   python -m ringcut.tp --n 12 --device kolkata-like --level all --layout embed
#   python -m ringcut.tp --in ring12.txt --level 3 --out ring12_l3.txt
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name
#
#-----------------------------------------------------------------------------
import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import List, Sequence

from ..rc_circuit import Circuit, CircuitMetrics, QaoaParams, build_qaoa_ansatz, circuit_from_text, \
    circuit_to_text, metrics, permutation_unitary, remap_qubits, unitary_fidelity, unitary_of
from ..rc_defines import RC_PRINT_LEVEL_ERROR, RC_PRINT_LEVEL_INFO, rc_print, rc_set_print_level, \
    verboseprint
from ..rc_graph import load_graph, make_ring
from ..rc_noise import PRESET_KOLKATA, DeviceProfile, resolve_device
from .tp_defines import TP_LAYOUT_EMBED, TP_LAYOUT_METHODS, TP_LAYOUT_TRIVIAL, TP_LEVEL_ALL, \
    TP_OPT_LEVEL_MAX, TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_NONE, TP_TRANSLATION_METHODS, \
    TP_TRANSLATION_RESYNTH1Q, TP_TRANSLATION_RULES, helpLayout, helpOptLevel, helpTranslation
from .tp_layout import Layout, find_cycle_embedding, route_swaps
from .tp_passes import merge_1q_runs, optimize, translate_to_basis

#--------------------------------------------------------------------------------------
# PassConfig

@dataclass(frozen=True)
class PassConfig:
    optimization_level: int = TP_OPT_LEVEL_NONE
    layout_method: str = TP_LAYOUT_TRIVIAL
    translation_method: str = TP_TRANSLATION_RULES

    def __post_init__(self):
        if not TP_OPT_LEVEL_MIN <= self.optimization_level <= TP_OPT_LEVEL_MAX:
            raise ValueError("optimization level must be {}..{}, got {}".format(
                TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_MAX, self.optimization_level))
        if self.layout_method not in TP_LAYOUT_METHODS:
            raise ValueError("unknown layout method {!r}, expected one of {}".format(
                self.layout_method, list(TP_LAYOUT_METHODS)))
        if self.translation_method not in TP_TRANSLATION_METHODS:
            raise ValueError("unknown translation method {!r}, expected one of {}".format(
                self.translation_method, list(TP_TRANSLATION_METHODS)))

#--------------------------------------------------------------------------------------
# TranspileResult

@dataclass(frozen=True)
class TranspileResult:
    circuit: Circuit
    layout: Layout
    final_layout: Layout
    permutation: tuple
    metrics_before: CircuitMetrics
    metrics_after: CircuitMetrics
    swap_count: int
    layout_method: str

    @property
    def qubit_order(self):
        """Physical qubit holding virtual qubit k at the end of the circuit."""
        return self.final_layout.physical

#--------------------------------------------------------------------------------------
# transpile()

def select_layout(c: Circuit, profile: DeviceProfile, method: str):
    """(Layout, method actually used); embed falls back to trivial."""

    n = c.num_qubits
    if method == TP_LAYOUT_EMBED and n >= 3:
        layout = find_cycle_embedding(profile.coupling, n)
        if layout is not None:
            return layout, TP_LAYOUT_EMBED
        verboseprint("\tno {}-cycle on {}, using the trivial layout".format(n, profile.name))

    return Layout.trivial(n), TP_LAYOUT_TRIVIAL

def transpile(c: Circuit, profile: DeviceProfile, cfg: PassConfig = None) -> TranspileResult:

    if cfg is None:
        cfg = PassConfig()
    if c.num_qubits > profile.num_qubits:
        raise ValueError("{} qubits do not fit {} ({} qubits)".format(c.num_qubits, profile.name, profile.num_qubits))

    layout, used = select_layout(c, profile, cfg.layout_method)
    routed = route_swaps(c, profile.coupling, layout)

    out = translate_to_basis(routed.circuit, profile.basis)
    if cfg.translation_method == TP_TRANSLATION_RESYNTH1Q:
        out = merge_1q_runs(out, profile.basis)
    out = optimize(out, cfg.optimization_level, profile.basis)

    result = TranspileResult(out, layout, routed.final_layout, routed.permutation,
                             metrics(c), metrics(out), routed.swap_count, used)

    verboseprint("\ttranspiled on {} (level {}, {} layout): depth {}, ops {}, nonlocal {}, swaps {}".format(
        profile.name, cfg.optimization_level, used, result.metrics_after.depth,
        result.metrics_after.op_count, result.metrics_after.nonlocal_count, result.swap_count))
    return result

def equivalence_fidelity(c: Circuit, result: TranspileResult) -> float:
    """Unitary fidelity of the transpiled circuit against c placed by the
    layout and followed by the routing permutation. Small devices only."""

    m = result.circuit.num_qubits
    placed = remap_qubits(c.without_measurements(), result.layout.physical, m)
    expected = permutation_unitary(result.permutation) @ unitary_of(placed)
    return unitary_fidelity(expected, unitary_of(result.circuit.without_measurements()))

#--------------------------------------------------------------------------------------
# metric_ladder()

LADDER_HEADER = ["level", "layout", "depth", "ops", "nonlocal", "swaps"]

def metric_ladder(c: Circuit, profile: DeviceProfile, layout_method: str = TP_LAYOUT_EMBED,
                  translation_method: str = TP_TRANSLATION_RULES,
                  levels: Sequence[int] = None) -> List[TranspileResult]:

    if levels is None:
        levels = range(TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_MAX + 1)
    return [transpile(c, profile, PassConfig(level, layout_method, translation_method)) for level in levels]

def ladder_to_csv(levels: Sequence[int], results: Sequence[TranspileResult]) -> str:

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(LADDER_HEADER)
    for level, result in zip(levels, results):
        m = result.metrics_after
        writer.writerow([level, result.layout_method, m.depth, m.op_count, m.nonlocal_count, result.swap_count])
    return out.getvalue()

#--------------------------------------------------------------------------------------
# Command line
#
# add_arguments() is shared with the `ringcut transpile` subcommand.

def _level_arg(text: str):
    if text == TP_LEVEL_ALL:
        return text
    try:
        level = int(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError("expected 0..3 or 'all', got {!r}".format(text)) from error
    if not TP_OPT_LEVEL_MIN <= level <= TP_OPT_LEVEL_MAX:
        raise argparse.ArgumentTypeError("expected 0..3 or 'all', got {!r}".format(text))
    return level

def add_arguments(parser: argparse.ArgumentParser, with_device: bool = True, with_out: bool = True) -> None:

    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--in', dest='infile', help='Circuit text file to transpile')
    source.add_argument('--n', dest='ring_size', type=int,
                        help='Transpile the p=1 ring ansatz of this size at (pi/4, pi/8) instead')
    source.add_argument('--graph', dest='graph',
                        help='Transpile the p=1 ansatz of this JSON graph at (pi/4, pi/8) instead')
    if with_device:
        parser.add_argument('--device', dest='device', default=PRESET_KOLKATA,
                            help='Device preset, profile file or name under $RINGCUT_DEVICE_DIR (default: %(default)s)')
    parser.add_argument('--level', dest='level', type=_level_arg, default=TP_LEVEL_ALL, help=helpOptLevel)
    parser.add_argument('--layout', dest='layout', choices=TP_LAYOUT_METHODS, default=TP_LAYOUT_EMBED, help=helpLayout)
    parser.add_argument('--translation', dest='translation', choices=TP_TRANSLATION_METHODS,
                        default=TP_TRANSLATION_RULES, help=helpTranslation)
    if with_out:
        parser.add_argument('--out', dest='circuit_out', default=None,
                            help='Write the transpiled circuit (highest level run) in circuit text form')

def input_circuit(args) -> Circuit:

    if args.infile:
        with open(args.infile, "r") as fin:
            return circuit_from_text(fin.read())

    g = load_graph(args.graph) if args.graph else make_ring(args.ring_size)
    params = QaoaParams((math.pi / 4,), (math.pi / 8,))
    return build_qaoa_ansatz(g, params, decompose_rzz=True, with_measurements=True)

def run(args, out=None) -> int:
    """Transpile per the parsed arguments, print the ladder CSV. Returns exit status."""

    if out is None:
        out = sys.stdout

    try:
        c = input_circuit(args)
        profile = resolve_device(args.device)

        levels = list(range(TP_OPT_LEVEL_MIN, TP_OPT_LEVEL_MAX + 1)) if args.level == TP_LEVEL_ALL else [args.level]
        results = metric_ladder(c, profile, args.layout, args.translation, levels)

        out.write(ladder_to_csv(levels, results))
        circuit_out = getattr(args, "circuit_out", None)
        if circuit_out:
            with open(circuit_out, "w", newline="\n") as fout:
                fout.write(circuit_to_text(results[-1].circuit))
            rc_print("wrote {}".format(circuit_out), level=RC_PRINT_LEVEL_INFO, file=sys.stderr)

    except (OSError, ValueError) as error:
        rc_print("error: {}".format(error), level=RC_PRINT_LEVEL_ERROR, file=sys.stderr)
        return 1

    return 0

def parse_arguments(argv=None):
    parser = argparse.ArgumentParser(description='Transpile a circuit onto a device profile and print the metric ladder '
                                     '(level, layout, depth, ops, nonlocal, swaps) as CSV.')
    add_arguments(parser)
    parser.add_argument('--loglevel', dest='loglevel', type=int, default=RC_PRINT_LEVEL_INFO,
                        help='Print level, 0 = silent .. 5 = debug (default: %(default)s)')
    return parser.parse_args(argv)

#******************************************************************************
#
# Main function.
#
#******************************************************************************

def main(argv=None) -> int:
    args = parse_arguments(argv)
    rc_set_print_level(args.loglevel)
    return run(args)


if __name__ == '__main__':
    sys.exit(main())
