#-----------------------------------------------------------------------------
# rc_defines.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file holds the shared constants of the package and the level gated
# console printing used by every module.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=global-statement, invalid-name
#
#-----------------------------------------------------------------------------
import math
import os
import sys

#-----------------------------------------------------------------------------
# Print levels

RC_PRINT_LEVEL_MIN     = 0
RC_PRINT_LEVEL_NONE    = RC_PRINT_LEVEL_MIN
RC_PRINT_LEVEL_ERROR   = 1
RC_PRINT_LEVEL_INFO    = 2
RC_PRINT_LEVEL_VERBOSE = 4
RC_PRINT_LEVEL_DEBUG   = 5
RC_PRINT_LEVEL_MAX     = RC_PRINT_LEVEL_DEBUG

# Default Print Level
RC_PRINT_VERBOSITY = RC_PRINT_LEVEL_INFO

def rc_set_print_level(level):
    global RC_PRINT_VERBOSITY
    RC_PRINT_VERBOSITY = max(RC_PRINT_LEVEL_MIN, min(RC_PRINT_LEVEL_MAX, level))

def rc_print(*args, level=RC_PRINT_LEVEL_INFO, **kwargs):
    if RC_PRINT_VERBOSITY >= level:
        print(*args, **kwargs)

def verboseprint(*args):

    if RC_PRINT_VERBOSITY < RC_PRINT_LEVEL_VERBOSE:
        return

    # Print each argument separately so caller doesn't need to
    # stuff everything to be printed into a single string
    for arg in args:
        print(arg, end='', flush=True)
    print()

#-----------------------------------------------------------------------------
# Gate kinds

GATE_H       = "h"
GATE_X       = "x"
GATE_SX      = "sx"
GATE_RX      = "rx"
GATE_RZ      = "rz"
GATE_RZZ     = "rzz"
GATE_CX      = "cx"
GATE_SWAP    = "swap"
GATE_MEASURE = "measure"

GATES_1Q = (GATE_H, GATE_X, GATE_SX, GATE_RX, GATE_RZ, GATE_MEASURE)
GATES_2Q = (GATE_RZZ, GATE_CX, GATE_SWAP)
GATES_PARAM = (GATE_RX, GATE_RZ, GATE_RZZ)
GATES_ALL = GATES_1Q + GATES_2Q

# the native gate set of the bundled device presets
DEVICE_BASIS = (GATE_RZ, GATE_SX, GATE_X, GATE_CX)

#-----------------------------------------------------------------------------
# Size bounds

MAXCUT_ENUM_MAX_VERTICES  = 24
UNITARY_MAX_QUBITS        = 6
STATEVECTOR_MAX_QUBITS    = 24
DENSITY_MAX_QUBITS        = 12

#-----------------------------------------------------------------------------
# Numerical tolerances

ATOL_NORM    = 1e-10
ATOL_KRAUS   = 1e-12

TWO_PI = 2.0 * math.pi

#-----------------------------------------------------------------------------
# Parameter ranges, (gamma_max, beta_max)

RANGE_REDUCED = "reduced"
RANGE_FULL    = "full"

PARAM_RANGES = {
    RANGE_REDUCED: (math.pi, math.pi / 2),
    RANGE_FULL:    (2 * math.pi, math.pi),
}

DEFAULT_GRID_RESOLUTION = math.pi / 30

#-----------------------------------------------------------------------------
# Objective backends

BACKEND_NOISELESS = "noiseless_exact"
BACKEND_NOISY     = "noisy_exact"
BACKEND_SHOTS     = "shots"
BACKEND_MODES = (BACKEND_NOISELESS, BACKEND_NOISY, BACKEND_SHOTS)

# COBYLA settings
DEFAULT_RESTARTS  = 5
DEFAULT_MAX_EVALS = 200
COBYLA_RHOBEG     = 0.25
COBYLA_TOL        = 1e-8

#-----------------------------------------------------------------------------
# Experiment defaults

DEFAULT_RUNS  = 10
DEFAULT_SHOTS = 50000
DEFAULT_SEED  = 19999

FAST_RUNS  = 3
FAST_SHOTS = 5000
FAST_P_MAX = 4

# environment variable naming a directory of <name>.json device profiles
DEVICE_DIR_ENV = "RINGCUT_DEVICE_DIR"

#-----------------------------------------------------------------------------
# resource_path()
#
# Runtime path of the bundled resource files, local checkout or frozen app.

_RESOURCE_DIRECTORY = "resource"

def resource_path(relative_path):
    """ Get absolute path to resource, works for dev and for PyInstaller """
    base_path = getattr(sys, '_MEIPASS', os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(base_path, _RESOURCE_DIRECTORY, relative_path)
