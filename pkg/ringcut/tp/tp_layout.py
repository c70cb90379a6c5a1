#-----------------------------------------------------------------------------
# tp_layout.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# Layout selection and swap routing.
#
#    Layout - virtual qubit k sits on physical qubit physical[k]
#
#    find_cycle_embedding - backtracking search for a simple n-cycle in the
#        coupling map, so a ring circuit needs no swaps at all
#
#    route_swaps - greedy router: the first qubit of an uncoupled 2q gate is
#        walked along a BFS shortest path (lowest index first) until the pair
#        is coupled. Routing is confined to the layout image, widened by
#        shortest paths when the image is not connected.
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
import functools
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..rc_circuit import Circuit, Gate, measure, swap
from ..rc_defines import GATE_MEASURE, verboseprint
from ..rc_noise import CouplingMap
from .tp_defines import TP_EMBED_NODE_BUDGET

#--------------------------------------------------------------------------------------
# Layout

@dataclass(frozen=True)
class Layout:
    physical: Tuple[int, ...]

    def __post_init__(self):
        physical = tuple(int(q) for q in self.physical)
        if len(set(physical)) != len(physical):
            raise ValueError("layout {} is not injective".format(list(physical)))
        if physical and min(physical) < 0:
            raise ValueError("layout {} has a negative qubit".format(list(physical)))
        object.__setattr__(self, "physical", physical)

    def __len__(self):
        return len(self.physical)

    def __getitem__(self, virtual: int) -> int:
        return self.physical[virtual]

    def validate(self, num_physical: int) -> None:
        if self.physical and max(self.physical) >= num_physical:
            raise ValueError("layout {} exceeds {} physical qubits".format(list(self.physical), num_physical))

    @classmethod
    def trivial(cls, n: int) -> "Layout":
        return cls(tuple(range(n)))

#--------------------------------------------------------------------------------------
# find_cycle_embedding()
#
# Memoized per (coupling, n).

@functools.lru_cache(maxsize=64)
def find_cycle_embedding(coupling: CouplingMap, n: int,
                         node_budget: int = TP_EMBED_NODE_BUDGET) -> Optional[Layout]:
    """Layout mapping ring vertex k to the k-th qubit of a simple n-cycle, or None."""

    if n < 3:
        raise ValueError("a ring needs at least 3 vertices, got {}".format(n))
    if n > coupling.num_qubits:
        return None

    graph = coupling.graph
    adjacency = {q: sorted(graph.neighbors(q)) for q in graph.nodes}
    expanded = 0

    # the smallest qubit of a cycle is its start, so every cycle is seen once
    for start in range(coupling.num_qubits):
        distance = nx.single_source_shortest_path_length(graph, start)
        path = [start]
        on_path = {start}

        # stack of neighbour iterators, one per path position
        stack = [iter(adjacency[start])]
        while stack:
            advanced = False
            for nxt in stack[-1]:
                expanded += 1
                if expanded > node_budget:
                    verboseprint("\tcycle search for n={} gave up after {} nodes".format(n, node_budget))
                    return None

                if len(path) == n:
                    if nxt == start:
                        verboseprint("\tfound {}-cycle {}".format(n, path))
                        return Layout(tuple(path))
                    continue
                if nxt <= start or nxt in on_path:
                    continue
                # edges left after stepping to nxt, closing edge included
                if distance.get(nxt, n + 1) > n - len(path):
                    continue

                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(adjacency[nxt]))
                advanced = True
                break

            if not advanced:
                stack.pop()
                on_path.discard(path.pop())

    return None

#--------------------------------------------------------------------------------------
# Routing region

def routing_region(coupling: CouplingMap, image: Sequence[int]) -> Set[int]:
    """The layout image plus the qubits on shortest paths joining its pieces."""

    graph = coupling.graph
    region = set(image)
    anchor = min(image)

    while True:
        joined = nx.node_connected_component(graph.subgraph(region), anchor)
        missing = sorted(set(image) - joined)
        if not missing:
            return region
        _, paths = nx.multi_source_dijkstra(graph, joined)
        target = min(missing, key=lambda q: (len(paths[q]), q))
        region.update(paths[target])

def _bfs_path(adjacency: Dict[int, List[int]], source: int, target: int) -> List[int]:
    parent = {source: None}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        for nxt in adjacency[node]:
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)

    if target not in parent:
        raise ValueError("no route from qubit {} to {}".format(source, target))

    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]

#--------------------------------------------------------------------------------------
# RoutedCircuit

@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit
    initial_layout: Layout
    final_layout: Layout
    swap_count: int
    # content that started on physical qubit a ends on permutation[a]
    permutation: Tuple[int, ...]

def route_swaps(c: Circuit, coupling: CouplingMap, layout: Layout) -> RoutedCircuit:

    n = c.num_qubits
    m = coupling.num_qubits
    if len(layout) < n:
        raise ValueError("layout places {} of {} qubits".format(len(layout), n))
    if n > m:
        raise ValueError("{} qubits do not fit a {} qubit device".format(n, m))
    layout.validate(m)

    image = list(layout.physical[:n])
    region = routing_region(coupling, image)
    adjacency = {q: sorted(p for p in coupling.graph.neighbors(q) if p in region) for q in region}

    pos = list(image)
    occupant: Dict[int, int] = {p: v for v, p in enumerate(pos)}
    holder = list(range(m))   # holder[p]: physical qubit whose initial content sits on p

    gates: List[Gate] = []
    measured: List[int] = []
    swaps = 0

    for gate in c.gates:
        # a measured qubit is idle afterwards but may still be swapped through
        if gate.kind == GATE_MEASURE:
            measured.append(gate.qubits[0])
            continue
        if not gate.is_two_qubit:
            gates.append(Gate(gate.kind, (pos[gate.qubits[0]],), gate.param))
            continue

        a, b = gate.qubits
        while not coupling.is_coupled(pos[a], pos[b]):
            step = _bfs_path(adjacency, pos[a], pos[b])[1]
            here = pos[a]
            gates.append(swap(here, step))
            swaps += 1

            other = occupant.pop(step, None)
            if other is not None:
                pos[other] = here
                occupant[here] = other
            else:
                occupant.pop(here, None)
            pos[a] = step
            occupant[step] = a
            holder[here], holder[step] = holder[step], holder[here]

        gates.append(Gate(gate.kind, (pos[a], pos[b]), gate.param))

    gates.extend(measure(pos[q]) for q in measured)

    permutation = [0] * m
    for p, origin in enumerate(holder):
        permutation[origin] = p

    if swaps:
        verboseprint("\trouted {} qubits with {} swaps".format(n, swaps))

    return RoutedCircuit(Circuit(m, tuple(gates), c.global_phase), layout,
                         Layout(tuple(pos)), swaps, tuple(permutation))
