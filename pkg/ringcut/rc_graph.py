#-----------------------------------------------------------------------------
# rc_graph.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This python package implements a noisy circuit simulation and transpilation
# toolkit for QAOA max-cut on ring graphs.
#
# This file defines the max-cut problem instance: the weighted graph, cut
# evaluation and the brute force oracle used as ground truth.
#
#    Graph - vertex count plus an ordered list of weighted, undirected edges
#
#    Bitstring - a str of '0'/'1', character k is the partition label of
#                vertex k ('0' <-> x_k = +1, '1' <-> x_k = -1)
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
import json
import math
from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

import numpy as np

from .rc_defines import MAXCUT_ENUM_MAX_VERTICES, verboseprint

Edge = Tuple[int, int, float]

#--------------------------------------------------------------------------------------
# Graph

@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):

        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")

        # normalise to a tuple of (int, int, float) so instances hash and compare
        edges = tuple((int(i), int(j), float(w)) for i, j, w in self.edges)
        object.__setattr__(self, "edges", edges)

        seen = set()
        for i, j, w in edges:
            if not (0 <= i < self.num_vertices and 0 <= j < self.num_vertices):
                raise ValueError("edge ({}, {}) out of range for {} vertices".format(i, j, self.num_vertices))
            if i == j:
                raise ValueError("self loop on vertex {}".format(i))
            if not math.isfinite(w):
                raise ValueError("edge ({}, {}) has non-finite weight".format(i, j))
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError("duplicate edge ({}, {})".format(i, j))
            seen.add(key)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for i, j, _ in self.edges if v in (i, j))

#--------------------------------------------------------------------------------------
def make_ring(n: int) -> Graph:
    """The ring of disagrees, edges in canonical order (0,1),(1,2),...,(n-1,0)."""

    if n < 3:
        raise ValueError("a ring needs at least 3 vertices, got {}".format(n))

    return Graph(n, tuple((k, (k + 1) % n, 1.0) for k in range(n)))

#--------------------------------------------------------------------------------------
def graph_from_json(text: str) -> Graph:

    try:
        doc = json.loads(text)
        n = int(doc["n"])
        edges = []
        for item in doc["edges"]:
            if len(item) == 2:
                edges.append((item[0], item[1], 1.0))
            else:
                edges.append((item[0], item[1], item[2]))
    except (KeyError, TypeError, json.JSONDecodeError) as error:
        raise ValueError("invalid graph document: {}".format(error)) from error

    return Graph(n, tuple(edges))

def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.num_vertices, "edges": [[i, j, w] for i, j, w in g.edges]})

def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fp:
        return graph_from_json(fp.read())

#--------------------------------------------------------------------------------------
# Bitstrings and basis indices
#
# Basis state index x encodes vertex k in bit k (little endian), so the bitstring
# character k equals (x >> k) & 1.

def index_to_bitstring(index: int, n: int) -> str:
    return "".join("1" if (index >> k) & 1 else "0" for k in range(n))

def bitstring_to_index(bits: str) -> int:
    index = 0
    for k, ch in enumerate(bits):
        if ch == "1":
            index |= 1 << k
        elif ch != "0":
            raise ValueError("bitstring may only hold 0/1, got {!r}".format(bits))
    return index

def complement(bits: str) -> str:
    return "".join("1" if ch == "0" else "0" for ch in bits)

#--------------------------------------------------------------------------------------
def cut_value(g: Graph, x: Sequence) -> float:
    """Sum of w_ij over the edges whose endpoints carry different labels."""

    bits = "".join(str(b) for b in x)
    if len(bits) != g.num_vertices:
        raise ValueError("bitstring length {} does not match {} vertices".format(len(bits), g.num_vertices))
    if set(bits) - {"0", "1"}:
        raise ValueError("bitstring may only hold 0/1, got {!r}".format(bits))

    return float(sum(w for i, j, w in g.edges if bits[i] != bits[j]))

def cut_values(g: Graph) -> np.ndarray:
    """C(x) for every basis index x, the diagonal of the cost Hamiltonian."""

    n = g.num_vertices
    if n > MAXCUT_ENUM_MAX_VERTICES:
        raise ValueError("{} vertices exceeds the enumeration bound of {}".format(n, MAXCUT_ENUM_MAX_VERTICES))

    index = np.arange(1 << n, dtype=np.int64)
    values = np.zeros(1 << n, dtype=np.float64)
    for i, j, w in g.edges:
        values += w * (((index >> i) ^ (index >> j)) & 1)

    return values

#--------------------------------------------------------------------------------------
# MaxCutSolution

@dataclass(frozen=True)
class MaxCutSolution:
    c_max: float
    optimal_bitstrings: FrozenSet[str]

    @property
    def optimal_indices(self) -> Tuple[int, ...]:
        return tuple(sorted(bitstring_to_index(b) for b in self.optimal_bitstrings))

def brute_force_maxcut(g: Graph, atol: float = 1e-9) -> MaxCutSolution:
    """Enumerate all 2^n labelings, return C_max and every maximizer."""

    values = cut_values(g)
    c_max = float(values.max())

    winners = np.flatnonzero(values >= c_max - atol)
    optimal = frozenset(index_to_bitstring(int(x), g.num_vertices) for x in winners)

    verboseprint("\tmax-cut of {} vertices: C_max {} with {} maximizers".format(g.num_vertices, c_max, len(optimal)))

    return MaxCutSolution(c_max, optimal)
