import itertools

import numpy as np
import pytest

from ringcut.rc_graph import Graph, bitstring_to_index, brute_force_maxcut, complement, cut_value, cut_values, \
    graph_from_json, graph_to_json, index_to_bitstring, make_ring


def test_make_ring_canonical_edges():
    g = make_ring(4)
    assert g.num_vertices == 4
    assert g.edges == ((0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0))

    assert make_ring(3).edges == ((0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0))

    g12 = make_ring(12)
    assert g12.num_edges == 12
    assert all(g12.degree(v) == 2 for v in range(12))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_make_ring_rejects_small(n):
    with pytest.raises(ValueError):
        make_ring(n)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, ((0, 3, 1.0),))
    with pytest.raises(ValueError):
        Graph(3, ((1, 1, 1.0),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1, 1.0), (1, 0, 2.0)))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1, float("nan")),))


def test_cut_value_examples():
    assert cut_value(make_ring(4), "0101") == 4.0
    assert cut_value(make_ring(4), "0000") == 0.0
    assert cut_value(make_ring(5), "01010") == 4.0
    assert cut_value(make_ring(4), [0, 1, 0, 1]) == 4.0


def test_cut_value_length_mismatch():
    with pytest.raises(ValueError):
        cut_value(make_ring(4), "010")


def test_cut_value_complement_symmetry_and_bounds():
    g = Graph(5, ((0, 1, 1.0), (1, 2, 2.5), (2, 3, 0.5), (3, 4, 1.0), (0, 2, 3.0)))
    for bits in itertools.product("01", repeat=5):
        x = "".join(bits)
        value = cut_value(g, x)
        assert value == cut_value(g, complement(x))
        assert 0.0 <= value <= g.total_weight()


def test_cut_values_matches_cut_value():
    g = make_ring(6)
    values = cut_values(g)
    for index in range(1 << 6):
        assert values[index] == cut_value(g, index_to_bitstring(index, 6))


def test_bitstring_index_convention():
    # character k is vertex k, bit k of the basis index
    assert index_to_bitstring(1, 4) == "1000"
    assert bitstring_to_index("0001") == 8
    for index in range(16):
        assert bitstring_to_index(index_to_bitstring(index, 4)) == index


def test_brute_force_ring4():
    solution = brute_force_maxcut(make_ring(4))
    assert solution.c_max == 4.0
    assert solution.optimal_bitstrings == {"0101", "1010"}


def test_brute_force_ring12():
    solution = brute_force_maxcut(make_ring(12))
    assert solution.c_max == 12.0
    assert solution.optimal_bitstrings == {"010101010101", "101010101010"}


def test_brute_force_ring5():
    solution = brute_force_maxcut(make_ring(5))
    assert solution.c_max == 4.0
    assert len(solution.optimal_bitstrings) == 10


@pytest.mark.parametrize("n", range(3, 17))
def test_ring_maxcut_oracle(n):
    g = make_ring(n)
    solution = brute_force_maxcut(g)
    assert solution.c_max == (n if n % 2 == 0 else n - 1)

    if n % 2 == 0:
        alternating = "01" * (n // 2)
        assert solution.optimal_bitstrings == {alternating, complement(alternating)}

    values = cut_values(g)
    optimal = set(solution.optimal_indices)
    for index in range(1 << n):
        if index in optimal:
            assert values[index] == solution.c_max
        else:
            assert values[index] < solution.c_max


def test_optimal_set_closed_under_complement():
    g = Graph(6, ((0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (3, 4, 2.0), (4, 5, 1.0), (2, 3, 1.0)))
    solution = brute_force_maxcut(g)
    for bits in solution.optimal_bitstrings:
        assert complement(bits) in solution.optimal_bitstrings


def test_enumeration_bound():
    with pytest.raises(ValueError):
        brute_force_maxcut(make_ring(25))


def test_graph_json():
    g = Graph(3, ((0, 1, 2.0), (1, 2, 1.0)))
    assert graph_from_json(graph_to_json(g)) == g
    assert graph_from_json('{"n": 3, "edges": [[0, 1], [1, 2]]}').edges == ((0, 1, 1.0), (1, 2, 1.0))
    with pytest.raises(ValueError):
        graph_from_json('{"edges": []}')


def test_cut_values_dtype():
    values = cut_values(make_ring(4))
    assert values.dtype == np.float64
    assert values.shape == (16,)
