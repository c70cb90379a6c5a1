import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import unitary_group

from ringcut.rc_circuit import Circuit, Gate, QaoaParams, build_qaoa_ansatz, cx, h, measure, metrics, rx, rz, \
    rzz, swap, sx, unitary_of, x
from ringcut.rc_graph import make_ring
from ringcut.rc_noise import PRESET_KOLKATA, PRESET_LAGOS, PRESET_WASHINGTON, heavy_hex_map, lagos_map, line_map, \
    load_noise_defaults, preset_profile, ring_map, synthetic_profile
from ringcut.tp import tp
from ringcut.tp.tp import PassConfig, equivalence_fidelity, ladder_to_csv, metric_ladder, select_layout, transpile
from ringcut.tp.tp_layout import Layout, find_cycle_embedding, route_swaps
from ringcut.tp.tp_passes import cancel_cx_pairs, commute_rz_merge, merge_1q_runs, optimize, synthesize_1q, \
    translate_to_basis

BASIS = frozenset(("rz", "sx", "x", "cx"))
OPTIMUM = QaoaParams((math.pi / 4,), (math.pi / 8,))


def _ring12_ansatz():
    return build_qaoa_ansatz(make_ring(12), OPTIMUM, decompose_rzz=True, with_measurements=True)


def _random_circuit(rng, n, length):
    gates = []
    for _ in range(length):
        kind = str(rng.choice(["h", "x", "sx", "rx", "rz", "rzz", "cx", "swap"]))
        if kind in ("rzz", "cx", "swap"):
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(a), int(b)), rng.uniform(-math.pi, math.pi) if kind == "rzz" else None))
        else:
            q = int(rng.integers(n))
            gates.append(Gate(kind, (q,), rng.uniform(-math.pi, math.pi) if kind in ("rx", "rz") else None))
    return Circuit(n, tuple(gates), rng.uniform(-1, 1))


def _assert_device_legal(c, profile):
    for gate in c.gates:
        assert gate.kind == "measure" or gate.kind in profile.basis
        if gate.is_two_qubit:
            assert profile.coupling.is_coupled(*gate.qubits)


#--------------------------------------------------------------------------------------
# layout

def test_cycle_embedding_heavy_hex_12():
    cmap = heavy_hex_map(3)
    layout = find_cycle_embedding(cmap, 12)
    assert layout is not None
    assert len(set(layout.physical)) == 12
    for k in range(12):
        assert cmap.is_coupled(layout[k], layout[(k + 1) % 12])


def test_cycle_embedding_absent():
    assert find_cycle_embedding(lagos_map(), 4) is None
    # heavy-hex has no cycles shorter than 12
    assert find_cycle_embedding(heavy_hex_map(3), 6) is None
    assert find_cycle_embedding(ring_map(5), 6) is None
    assert find_cycle_embedding(ring_map(5), 5) == Layout((0, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        find_cycle_embedding(ring_map(5), 2)


def test_cycle_embedding_washington():
    cmap = heavy_hex_map(7)
    layout = find_cycle_embedding(cmap, 12)
    assert layout is not None
    for k in range(12):
        assert cmap.is_coupled(layout[k], layout[(k + 1) % 12])


def test_layout_validation():
    with pytest.raises(ValueError):
        Layout((0, 0))
    with pytest.raises(ValueError):
        Layout((0, 9)).validate(5)


def test_route_swaps_line():
    c = Circuit(4, (cx(0, 3), rz(0.3, 3), cx(1, 2)))
    routed = route_swaps(c, line_map(4), Layout.trivial(4))
    assert routed.swap_count == 2
    for gate in routed.circuit.gates:
        if gate.is_two_qubit:
            assert line_map(4).is_coupled(*gate.qubits)
    assert sorted(routed.permutation) == [0, 1, 2, 3]
    assert sorted(routed.final_layout.physical) == [0, 1, 2, 3]


def test_route_swaps_three_qubit_line():
    routed = route_swaps(Circuit(3, (cx(0, 2),)), line_map(3), Layout.trivial(3))
    assert routed.swap_count == 1
    assert routed.circuit.gates[0] == swap(0, 1)
    assert routed.final_layout == Layout((1, 0, 2))


def test_route_swaps_moves_measured_qubit():
    c = Circuit(3, (h(0), measure(1), cx(0, 2)))
    routed = route_swaps(c, line_map(3), Layout.trivial(3))
    # the measurement moves behind the swap that displaces qubit 1
    assert routed.circuit.gates[-1] == measure(routed.final_layout[1])

    result = transpile(c, synthetic_profile(line_map(3), load_noise_defaults()), PassConfig())
    assert result.circuit.measured_qubits == (result.qubit_order[1],)
    assert equivalence_fidelity(c, result) == pytest.approx(1.0, abs=1e-9)


def test_select_layout_falls_back():
    c = build_qaoa_ansatz(make_ring(4), OPTIMUM, decompose_rzz=True)
    layout, used = select_layout(c, preset_profile(PRESET_LAGOS), "embed")
    assert used == "trivial"
    assert layout == Layout.trivial(4)


#--------------------------------------------------------------------------------------
# passes

def test_translate_to_basis_preserves_unitary():
    c = Circuit(3, (h(0), rx(0.7, 1), x(2), rzz(-0.4, 0, 2), swap(1, 2), sx(0)), 0.2)
    out = translate_to_basis(c, BASIS)
    assert all(g.kind in BASIS for g in out.gates)
    assert_allclose(unitary_of(out), unitary_of(c), atol=1e-10)


def test_translate_keeps_measurements():
    c = Circuit(1, (h(0), measure(0)))
    out = translate_to_basis(c, BASIS)
    assert out.gates[-1] == measure(0)
    with pytest.raises(ValueError):
        translate_to_basis(Circuit(1, (h(0),)), frozenset(("cx",)))


def test_swap_orientation_follows_previous_cx():
    c = Circuit(2, (cx(1, 0), swap(0, 1)))
    out = translate_to_basis(c, BASIS)
    assert out.gates[1] == cx(1, 0)
    assert len(cancel_cx_pairs(out).gates) == 2


def test_synthesize_1q_random_unitaries():
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = unitary_group.rvs(2, random_state=rng)
        gates, delta = synthesize_1q(v, 0, BASIS)
        assert len(gates) <= 5
        u = unitary_of(Circuit(1, tuple(gates), delta))
        assert_allclose(u, v, atol=1e-9)


def test_merge_1q_runs():
    c = Circuit(1, (rz(0.2, 0), sx(0), rz(0.5, 0), sx(0), rz(-0.3, 0), sx(0), rz(1.0, 0), sx(0)))
    merged = merge_1q_runs(c, BASIS)
    assert len(merged.gates) < len(c.gates)
    assert_allclose(unitary_of(merged), unitary_of(c), atol=1e-10)

    # RZ(2 pi) is -I, the sign moves into the global phase
    c2 = Circuit(1, (rz(math.pi, 0), rz(math.pi, 0)))
    merged2 = merge_1q_runs(c2, BASIS)
    assert merged2.gates == ()
    assert_allclose(unitary_of(merged2), unitary_of(c2), atol=1e-12)


def test_cancel_cx_pairs():
    c = Circuit(2, (cx(0, 1), rz(0.4, 0), cx(0, 1), cx(1, 0), sx(1), cx(1, 0)))
    out = cancel_cx_pairs(c)
    # RZ on the control commutes, SX on the control does not
    assert out.gates == (rz(0.4, 0), cx(1, 0), sx(1), cx(1, 0))
    assert_allclose(unitary_of(out), unitary_of(c), atol=1e-12)


def test_commute_rz_merge():
    c = Circuit(2, (rz(0.3, 0), cx(0, 1), rz(0.5, 0), sx(1)))
    out = commute_rz_merge(c)
    assert out.gates == (rz(0.8, 0), cx(0, 1), sx(1))
    assert_allclose(unitary_of(out), unitary_of(c), atol=1e-12)


def test_commute_rz_runs_at_level_2():
    c = Circuit(2, (rz(0.3, 0), cx(0, 1), rz(0.5, 0), sx(1)))
    assert optimize(c, 1, BASIS) == c
    assert optimize(c, 2, BASIS).gates == (rz(0.8, 0), cx(0, 1), sx(1))


@pytest.mark.parametrize("level", [1, 2, 3])
def test_optimize_idempotent(level):
    c = translate_to_basis(build_qaoa_ansatz(make_ring(6), QaoaParams((0.4, 0.9), (0.7, 0.2)), decompose_rzz=True),
                           BASIS)
    routed = transpile(c, preset_profile(PRESET_KOLKATA), PassConfig(0, "trivial", "rules")).circuit
    for circuit in (c, routed):
        once = optimize(circuit, level, BASIS)
        assert optimize(once, level, BASIS) == once


def test_optimize_levels():
    c = translate_to_basis(Circuit(2, (h(0), h(0), cx(0, 1), cx(0, 1), rx(0.3, 1))), BASIS)
    counts = [metrics(optimize(c, level, BASIS)).op_count for level in range(4)]
    assert counts[0] == metrics(c).op_count
    assert counts[0] >= counts[1] >= counts[2] >= counts[3]
    for level in range(4):
        assert_allclose(unitary_of(optimize(c, level, BASIS)), unitary_of(c), atol=1e-9)
    with pytest.raises(ValueError):
        optimize(c, 4)


#--------------------------------------------------------------------------------------
# pipeline

def test_pass_config_validation():
    with pytest.raises(ValueError):
        PassConfig(5)
    with pytest.raises(ValueError):
        PassConfig(1, "sabre")
    with pytest.raises(ValueError):
        PassConfig(1, "embed", "kak")


@pytest.mark.parametrize("device", [PRESET_KOLKATA, PRESET_WASHINGTON])
@pytest.mark.parametrize("level", [1, 2, 3])
def test_ring12_embeds_without_swaps(device, level):
    result = transpile(_ring12_ansatz(), preset_profile(device), PassConfig(level, "embed", "rules"))
    assert result.layout_method == "embed"
    assert result.swap_count == 0
    assert result.metrics_after.nonlocal_count == 24
    assert result.metrics_before.op_count == 60
    _assert_device_legal(result.circuit, preset_profile(device))


@pytest.mark.parametrize("p", [2, 3])
def test_ring12_embedded_nonlocal_count_scales_with_p(p):
    params = QaoaParams((math.pi / 4,) * p, (math.pi / 8,) * p)
    c = build_qaoa_ansatz(make_ring(12), params, decompose_rzz=True, with_measurements=True)
    result = transpile(c, preset_profile(PRESET_KOLKATA), PassConfig(3, "embed", "resynth1q"))
    assert result.swap_count == 0
    assert result.metrics_after.nonlocal_count == 2 * 12 * p


@pytest.mark.parametrize("n", range(4, 13))
def test_ladder_monotone_on_rings(n):
    c = build_qaoa_ansatz(make_ring(n), OPTIMUM, decompose_rzz=True, with_measurements=True)
    ladder = [r.metrics_after for r in metric_ladder(c, preset_profile(PRESET_KOLKATA), "embed")]
    for level in range(1, 4):
        assert ladder[level].dominated_by(ladder[0])


def test_ring12_ladder_plateau():
    profile = preset_profile(PRESET_KOLKATA)
    ladder = metric_ladder(_ring12_ansatz(), profile, "embed")
    level0, level1, level2, level3 = (r.metrics_after for r in ladder)
    assert level3.dominated_by(level0)
    assert level1 == level3
    assert level2 == level3
    assert level0.nonlocal_count == 24

    csv_lines = ladder_to_csv(range(4), ladder).splitlines()
    assert csv_lines[0] == "level,layout,depth,ops,nonlocal,swaps"
    assert len(csv_lines) == 5
    assert csv_lines[1].startswith("0,embed,")


def test_ring12_trivial_layout_needs_swaps():
    profile = preset_profile(PRESET_KOLKATA)
    unmitigated = transpile(_ring12_ansatz(), profile, PassConfig(0, "trivial", "rules"))
    mitigated = transpile(_ring12_ansatz(), profile, PassConfig(3, "embed", "resynth1q"))
    assert unmitigated.swap_count > 0
    assert unmitigated.metrics_after.nonlocal_count > 100
    assert mitigated.metrics_after.dominated_by(unmitigated.metrics_after)
    _assert_device_legal(unmitigated.circuit, profile)


def test_transpile_rejects_oversized_circuit():
    c = build_qaoa_ansatz(make_ring(8), OPTIMUM, decompose_rzz=True)
    with pytest.raises(ValueError):
        transpile(c, preset_profile(PRESET_LAGOS))


def test_random_circuits_equivalent_and_legal():
    rng = np.random.default_rng(2026)
    defaults = load_noise_defaults()
    profiles = [synthetic_profile(line_map(5), defaults, name="line5"),
                synthetic_profile(ring_map(5), defaults, name="ring5")]

    for k in range(200):
        profile = profiles[k % 2]
        n = int(rng.integers(2, 6))
        c = _random_circuit(rng, n, int(rng.integers(4, 16)))
        for layout in ("trivial", "embed"):
            for level in range(4):
                translation = "resynth1q" if level % 2 else "rules"
                result = transpile(c, profile, PassConfig(level, layout, translation))
                assert equivalence_fidelity(c, result) == pytest.approx(1.0, abs=1e-9)
                _assert_device_legal(result.circuit, profile)


def test_measurements_follow_final_layout():
    c = Circuit(3, (cx(0, 2), measure(0), measure(1), measure(2)))
    result = transpile(c, synthetic_profile(line_map(3), load_noise_defaults()))
    measured = result.circuit.measured_qubits
    assert sorted(measured) == sorted(result.qubit_order)


#--------------------------------------------------------------------------------------
# command line

def test_tp_main_ladder(capsys):
    assert tp.main(["--n", "12", "--device", PRESET_KOLKATA, "--loglevel", "0"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "level,layout,depth,ops,nonlocal,swaps"
    assert len(lines) == 5
    assert all(line.split(",")[4] == "24" for line in lines[1:])


def test_tp_main_writes_circuit(tmp_path, capsys):
    path = tmp_path / "out.txt"
    source = tmp_path / "in.txt"
    source.write_text("qubits 2\nh 0\ncx 0 1\nmeasure all\n")
    assert tp.main(["--in", str(source), "--device", PRESET_LAGOS, "--level", "3", "--out", str(path),
                    "--loglevel", "0"]) == 0
    assert path.read_text().startswith("qubits 7\n")
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_tp_main_errors(tmp_path):
    assert tp.main(["--in", str(tmp_path / "missing.txt"), "--loglevel", "0"]) == 1
    assert tp.main(["--n", "12", "--device", "nowhere", "--loglevel", "0"]) == 1
    with pytest.raises(SystemExit):
        tp.main(["--n", "4", "--level", "7"])
