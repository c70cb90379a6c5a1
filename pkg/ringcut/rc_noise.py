#-----------------------------------------------------------------------------
# rc_noise.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file defines device profiles ("fake devices"): the coupling map, per
# qubit relaxation and readout parameters, per gate error and duration, and
# the bundled synthetic presets.
#
#    CouplingMap - undirected physical qubit pairs, connected
#
#    DeviceProfile - coupling map + QubitParams per qubit + GateSpec list
#
# Units: T1/T2 in microseconds, gate durations in nanoseconds.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=invalid-name, too-many-instance-attributes
#
#-----------------------------------------------------------------------------
import functools
import json
import math
import os
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .rc_defines import DEVICE_BASIS, DEVICE_DIR_ENV, GATE_RZ, GATES_2Q, \
    RC_PRINT_LEVEL_DEBUG, rc_print, resource_path, verboseprint

#--------------------------------------------------------------------------------------
# CouplingMap

@dataclass(frozen=True)
class CouplingMap:
    num_qubits: int
    pairs: FrozenSet[Tuple[int, int]]

    def __post_init__(self):

        if self.num_qubits < 1:
            raise ValueError("coupling map needs at least one qubit")

        pairs = set()
        for a, b in self.pairs:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError("self coupling on qubit {}".format(a))
            if not (0 <= a < self.num_qubits and 0 <= b < self.num_qubits):
                raise ValueError("pair ({}, {}) out of range for {} qubits".format(a, b, self.num_qubits))
            pairs.add((min(a, b), max(a, b)))
        object.__setattr__(self, "pairs", frozenset(pairs))

        if not nx.is_connected(self.graph):
            raise ValueError("coupling map is not connected")

    @classmethod
    def from_edges(cls, num_qubits: int, edges: Iterable[Sequence[int]]) -> "CouplingMap":
        return cls(num_qubits, frozenset((e[0], e[1]) for e in edges))

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.num_qubits))
        g.add_edges_from(self.pairs)
        return g

    def is_coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.pairs

    def neighbors(self, q: int) -> List[int]:
        return sorted(self.graph.neighbors(q))

    def max_degree(self) -> int:
        return max((d for _, d in self.graph.degree()), default=0)

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.pairs)

    def girth(self) -> float:
        """Length of the shortest cycle, inf for a tree."""
        return nx.girth(self.graph)

#--------------------------------------------------------------------------------------
# QubitParams

@dataclass(frozen=True)
class QubitParams:
    t1: float
    t2: float
    readout_p01: float = 0.0
    readout_p10: float = 0.0

    def __post_init__(self):

        if not self.t1 > 0 or not self.t2 > 0:
            raise ValueError("T1 and T2 must be positive, got t1={} t2={}".format(self.t1, self.t2))
        if self.t2 > 2 * self.t1:
            raise ValueError("T2={} exceeds 2*T1={}".format(self.t2, 2 * self.t1))
        for p in (self.readout_p01, self.readout_p10):
            if not 0.0 <= p <= 1.0:
                raise ValueError("readout probability {} outside [0, 1]".format(p))

    @property
    def readout(self) -> Tuple[float, float]:
        return (self.readout_p01, self.readout_p10)

#--------------------------------------------------------------------------------------
# GateSpec

@dataclass(frozen=True)
class GateSpec:
    kind: str
    qubits: Tuple[int, ...]
    error: float
    duration: float

    def __post_init__(self):

        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if not self.qubits or min(self.qubits) < 0:
            raise ValueError("{}: invalid qubits {}".format(self.kind, self.qubits))
        if not 0.0 <= self.error < 1.0:
            raise ValueError("{} on {}: error {} outside [0, 1)".format(self.kind, self.qubits, self.error))
        if not self.duration >= 0.0:
            raise ValueError("{} on {}: negative duration {}".format(self.kind, self.qubits, self.duration))

    @property
    def key(self) -> Tuple[str, Tuple[int, ...]]:
        return _spec_key(self.kind, self.qubits)

def _spec_key(kind: str, qubits: Sequence[int]) -> Tuple[str, Tuple[int, ...]]:
    # coupling is undirected, so 2q specs are looked up by sorted pair
    if kind in GATES_2Q:
        return (kind, tuple(sorted(qubits)))
    return (kind, tuple(qubits))

#--------------------------------------------------------------------------------------
# DeviceProfile

@dataclass(frozen=True)
class DeviceProfile:
    name: str
    coupling: CouplingMap
    qubit_params: Tuple[QubitParams, ...]
    gate_specs: Tuple[GateSpec, ...]
    basis: FrozenSet[str]

    def __post_init__(self):

        object.__setattr__(self, "qubit_params", tuple(self.qubit_params))
        object.__setattr__(self, "gate_specs", tuple(self.gate_specs))
        object.__setattr__(self, "basis", frozenset(self.basis))

        n = self.coupling.num_qubits
        if len(self.qubit_params) != n:
            raise ValueError("{}: {} qubit parameter sets for {} qubits".format(self.name, len(self.qubit_params), n))

        index = {}
        for spec in self.gate_specs:
            if spec.kind not in self.basis:
                raise ValueError("{}: gate spec {} is not in the basis".format(self.name, spec.kind))
            if max(spec.qubits) >= n:
                raise ValueError("{}: gate spec {} on {} out of range".format(self.name, spec.kind, spec.qubits))
            arity = 2 if spec.kind in GATES_2Q else 1
            if len(spec.qubits) != arity:
                raise ValueError("{}: gate spec {} needs {} qubit(s)".format(self.name, spec.kind, arity))
            if arity == 2 and not self.coupling.is_coupled(*spec.qubits):
                raise ValueError("{}: {} on uncoupled pair {}".format(self.name, spec.kind, spec.qubits))
            index[spec.key] = spec

        # every basis gate must be specified wherever it can act
        for kind in sorted(self.basis):
            if kind in GATES_2Q:
                sites = self.coupling.sorted_pairs()
            else:
                sites = [(q,) for q in range(n)]
            for site in sites:
                if _spec_key(kind, site) not in index:
                    raise ValueError("{}: no gate spec for {} on {}".format(self.name, kind, site))

        object.__setattr__(self, "_spec_index", index)

    @property
    def num_qubits(self) -> int:
        return self.coupling.num_qubits

    def gate_spec(self, kind: str, qubits: Sequence[int]) -> Optional[GateSpec]:
        return self._spec_index.get(_spec_key(kind, qubits))

    def readout(self) -> List[Tuple[float, float]]:
        return [q.readout for q in self.qubit_params]

#--------------------------------------------------------------------------------------
# Profile JSON documents
#
#   {"name": str, "num_qubits": int, "coupling": [[i, j], ...], "basis": [str, ...],
#    "qubits": [{"t1_us": f, "t2_us": f, "p01": f, "p10": f}, ...],
#    "gates": [{"kind": str, "qubits": [ints], "error": f, "duration_ns": f}, ...]}

def load_profile(document: str) -> DeviceProfile:

    try:
        doc = json.loads(document)
    except json.JSONDecodeError as error:
        raise ValueError("profile is not valid JSON: {}".format(error)) from error

    if not isinstance(doc, dict):
        raise ValueError("profile must be a JSON object")

    for key in ("name", "num_qubits", "coupling", "basis", "qubits", "gates"):
        if key not in doc:
            raise ValueError("profile is missing '{}'".format(key))

    name = str(doc["name"])
    try:
        coupling = CouplingMap.from_edges(int(doc["num_qubits"]), doc["coupling"])
    except (TypeError, IndexError) as error:
        raise ValueError("{}: malformed coupling list: {}".format(name, error)) from error

    params = []
    for k, item in enumerate(doc["qubits"]):
        try:
            params.append(QubitParams(float(item["t1_us"]), float(item["t2_us"]),
                                      float(item.get("p01", 0.0)), float(item.get("p10", 0.0))))
        except (KeyError, TypeError, ValueError) as error:
            raise ValueError("{}: qubit {}: {}".format(name, k, error)) from error

    specs = []
    for item in doc["gates"]:
        try:
            specs.append(GateSpec(str(item["kind"]), tuple(item["qubits"]),
                                  float(item["error"]), float(item["duration_ns"])))
        except (KeyError, TypeError) as error:
            raise ValueError("{}: malformed gate entry {}: {}".format(name, item, error)) from error

    return DeviceProfile(name, coupling, tuple(params), tuple(specs), frozenset(doc["basis"]))

def dump_profile(profile: DeviceProfile) -> str:

    doc = {
        "name": profile.name,
        "num_qubits": profile.num_qubits,
        "coupling": [list(p) for p in profile.coupling.sorted_pairs()],
        "basis": sorted(profile.basis),
        "qubits": [{"t1_us": q.t1, "t2_us": q.t2, "p01": q.readout_p01, "p10": q.readout_p10}
                   for q in profile.qubit_params],
        "gates": [{"kind": s.kind, "qubits": list(s.qubits), "error": s.error, "duration_ns": s.duration}
                  for s in profile.gate_specs],
    }
    return json.dumps(doc, indent=1)

def load_profile_file(path: str) -> DeviceProfile:
    with open(path, "r", encoding="utf-8") as fp:
        return load_profile(fp.read())

#--------------------------------------------------------------------------------------
# heavy_hex_map()
#
# Distance 3 is the 27 qubit layout with its usual device numbering. Larger
# distances d use d rows of 2d+1 columns (the first row drops its last column,
# the last row its first), joined by bridge qubits at every fourth column,
# offset by two on odd gaps. Numbering runs row by row, each row followed by
# the bridges below it. Distance 5 gives 65 qubits, distance 7 gives 127.

_HEAVY_HEX_27 = (
    (0, 1), (1, 2), (1, 4), (2, 3), (3, 5), (4, 7), (5, 8), (6, 7), (7, 10), (8, 9),
    (8, 11), (10, 12), (11, 14), (12, 13), (12, 15), (13, 14), (14, 16), (15, 18),
    (16, 19), (17, 18), (18, 21), (19, 20), (19, 22), (21, 23), (22, 25), (23, 24),
    (24, 25), (25, 26),
)

def heavy_hex_map(distance: int) -> CouplingMap:

    if distance < 3 or distance % 2 == 0:
        raise ValueError("heavy-hex distance must be odd and >= 3, got {}".format(distance))

    if distance == 3:
        return CouplingMap.from_edges(27, _HEAVY_HEX_27)

    rows = distance
    width = 2 * distance + 1

    def row_cols(r):
        if r == 0:
            return range(0, width - 1)
        if r == rows - 1:
            return range(1, width)
        return range(0, width)

    index = {}
    bridges = []
    edges = []
    count = 0
    for r in range(rows):
        cols = list(row_cols(r))
        for c in cols:
            index[(r, c)] = count
            count += 1
        edges.extend((index[(r, c)], index[(r, c + 1)]) for c in cols[:-1])

        if r == rows - 1:
            break

        start = 0 if r % 2 == 0 else 2
        for c in range(start, width, 4):
            edges.append((index[(r, c)], count))
            bridges.append((count, r + 1, c))
            count += 1

    # the row below a gap is numbered after its bridges
    edges.extend((bridge, index[(r, c)]) for bridge, r, c in bridges)

    return CouplingMap.from_edges(count, edges)

def line_map(n: int) -> CouplingMap:
    return CouplingMap.from_edges(n, [(k, k + 1) for k in range(n - 1)])

def ring_map(n: int) -> CouplingMap:
    return CouplingMap.from_edges(n, [(k, (k + 1) % n) for k in range(n)])

# 7 qubit H shape
_LAGOS_7 = ((0, 1), (1, 2), (1, 3), (3, 5), (4, 5), (5, 6))

def lagos_map() -> CouplingMap:
    return CouplingMap.from_edges(7, _LAGOS_7)

#--------------------------------------------------------------------------------------
# NoiseDefaults - the uniform error/timing set a synthetic profile is built from

@dataclass(frozen=True)
class NoiseDefaults:
    error_1q: float
    error_2q: float
    readout: float
    t1_us: float
    t2_us: float
    duration_1q_ns: float
    duration_2q_ns: float

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> "NoiseDefaults":
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if n not in values]
        if missing:
            raise ValueError("noise defaults are missing {}".format(", ".join(missing)))
        return cls(**{n: float(values[n]) for n in names})


NOISE_DEFAULTS_FILE = "noise_defaults.json"

def load_noise_defaults(path: str = None) -> NoiseDefaults:

    if path is None:
        path = resource_path(NOISE_DEFAULTS_FILE)
    with open(path, "r", encoding="utf-8") as fp:
        return NoiseDefaults.from_mapping(json.load(fp))

def zero_noise_defaults() -> NoiseDefaults:
    return NoiseDefaults(0.0, 0.0, 0.0, math.inf, math.inf, 0.0, 0.0)

#--------------------------------------------------------------------------------------
def synthetic_profile(coupling: CouplingMap, defaults, name: str = "synthetic",
                      basis: Sequence[str] = DEVICE_BASIS) -> DeviceProfile:
    """Uniform profile over a coupling map. RZ is virtual: no error, no duration."""

    if not isinstance(defaults, NoiseDefaults):
        defaults = NoiseDefaults.from_mapping(defaults)

    qubit = QubitParams(defaults.t1_us, defaults.t2_us, defaults.readout, defaults.readout)

    specs = []
    for kind in basis:
        if kind in GATES_2Q:
            specs.extend(GateSpec(kind, pair, defaults.error_2q, defaults.duration_2q_ns)
                         for pair in coupling.sorted_pairs())
        elif kind == GATE_RZ:
            specs.extend(GateSpec(kind, (q,), 0.0, 0.0) for q in range(coupling.num_qubits))
        else:
            specs.extend(GateSpec(kind, (q,), defaults.error_1q, defaults.duration_1q_ns)
                         for q in range(coupling.num_qubits))

    return DeviceProfile(name, coupling, (qubit,) * coupling.num_qubits, tuple(specs), frozenset(basis))

#--------------------------------------------------------------------------------------
# Bundled presets

PRESET_LAGOS      = "lagos-like"
PRESET_KOLKATA    = "kolkata-like"
PRESET_WASHINGTON = "washington-like"
PRESET_IDEAL      = "ideal-27"

_PRESETS = {
    PRESET_LAGOS:      ("7 qubit H-shaped tree", lagos_map),
    PRESET_KOLKATA:    ("27 qubit heavy-hex (distance 3)", lambda: heavy_hex_map(3)),
    PRESET_WASHINGTON: ("127 qubit heavy-hex (distance 7)", lambda: heavy_hex_map(7)),
    PRESET_IDEAL:      ("27 qubit heavy-hex without noise", lambda: heavy_hex_map(3)),
}

def preset_names() -> List[str]:
    return list(_PRESETS)

def preset_description(name: str) -> str:
    return _PRESETS[name][0]

@functools.lru_cache(maxsize=None)
def preset_profile(name: str) -> DeviceProfile:

    if name not in _PRESETS:
        raise ValueError("unknown device preset {!r}, choose from {}".format(name, ", ".join(_PRESETS)))

    coupling = _PRESETS[name][1]()
    defaults = zero_noise_defaults() if name == PRESET_IDEAL else load_noise_defaults()
    rc_print("\tbuilt preset {} ({} qubits)".format(name, coupling.num_qubits), level=RC_PRINT_LEVEL_DEBUG)

    return synthetic_profile(coupling, defaults, name=name)

#--------------------------------------------------------------------------------------
# resolve_device()
#
# Preset name, then a path to a profile document, then <name>.json in the
# directory named by the device directory environment variable.

def resolve_device(name_or_path: str) -> DeviceProfile:

    if name_or_path in _PRESETS:
        return preset_profile(name_or_path)

    if os.path.isfile(name_or_path):
        verboseprint("\tloading device profile ", name_or_path)
        return load_profile_file(name_or_path)

    device_dir = os.environ.get(DEVICE_DIR_ENV)
    if device_dir:
        candidate = os.path.join(device_dir, name_or_path + ".json")
        if os.path.isfile(candidate):
            verboseprint("\tloading device profile ", candidate)
            return load_profile_file(candidate)

    raise ValueError("unknown device {!r}: not a preset ({}), not a file, not in ${}".format(
        name_or_path, ", ".join(_PRESETS), DEVICE_DIR_ENV))

def list_devices() -> Dict[str, str]:
    """Preset names plus any profiles found in the device directory."""

    found = {name: preset_description(name) for name in _PRESETS}

    device_dir = os.environ.get(DEVICE_DIR_ENV)
    if device_dir and os.path.isdir(device_dir):
        for entry in sorted(os.listdir(device_dir)):
            if entry.endswith(".json"):
                found.setdefault(entry[:-5], os.path.join(device_dir, entry))

    return found
