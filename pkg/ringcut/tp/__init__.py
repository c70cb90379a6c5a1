#
# Make a package out of the transpiler. Export the pipeline and main() from tp.py

from .tp import PassConfig, TranspileResult, equivalence_fidelity, ladder_to_csv, main, metric_ladder, \
    select_layout, transpile
from .tp_layout import Layout, RoutedCircuit, find_cycle_embedding, route_swaps
from .tp_passes import cancel_cx_pairs, commute_rz_merge, merge_1q_runs, optimize, synthesize_1q, \
    translate_to_basis
