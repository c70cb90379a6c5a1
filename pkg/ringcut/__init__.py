#-----------------------------------------------------------------------------
# __init__.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file defines this directory as the 'ringcut' package.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=missing-docstring, wrong-import-position
#
#-----------------------------------------------------------------------------
# init file to support ringcut as a package install

from .rc_circuit import Circuit, Gate, QaoaParams, build_qaoa_ansatz, metrics, unitary_of
from .rc_experiment import ExperimentConfig, RunRecord, SweepRow, aggregate, emit_table, run_grid, run_sweep
from .rc_graph import Graph, MaxCutSolution, brute_force_maxcut, make_ring
from .rc_noise import CouplingMap, DeviceProfile, list_devices, preset_profile, resolve_device
from .rc_qaoa import Backend, GridSpec, QaoaResult, analytic_ring_ratio, evaluate, grid_search_p1, \
    optimize_params
from .ringcut import cli_main, startRingcut
