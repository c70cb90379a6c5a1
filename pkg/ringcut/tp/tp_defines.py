#-----------------------------------------------------------------------------
# tp_defines.py
#
# Constants shared by the transpiler passes and the transpile command line.
#-----------------------------------------------------------------------------

# Optimization levels
TP_OPT_LEVEL_MIN = 0
TP_OPT_LEVEL_NONE = TP_OPT_LEVEL_MIN
TP_OPT_LEVEL_MERGE_1Q = 1
TP_OPT_LEVEL_CANCEL_CX = 2
TP_OPT_LEVEL_REMERGE = 3
TP_OPT_LEVEL_MAX = TP_OPT_LEVEL_REMERGE
# String constants
helpOptLevel = 'Optimization level (0 = none, 1 = merge 1q runs, 2 = + commute RZ through CX controls and cancel CX pairs, 3 = + re-merge 1q runs after commutation) or "all" for the ladder'

# Layout selection
TP_LAYOUT_TRIVIAL = "trivial"
TP_LAYOUT_EMBED = "embed"
TP_LAYOUT_METHODS = (TP_LAYOUT_TRIVIAL, TP_LAYOUT_EMBED)
# String constants
helpLayout = 'Layout method (trivial = qubit k on physical k, embed = map the ring onto a cycle of the device, falls back to trivial)'

# Basis translation
TP_TRANSLATION_RULES = "rules"
TP_TRANSLATION_RESYNTH1Q = "resynth1q"
TP_TRANSLATION_METHODS = (TP_TRANSLATION_RULES, TP_TRANSLATION_RESYNTH1Q)
# String constants
helpTranslation = 'Translation method (rules = fixed decompositions, resynth1q = rules then 1q Euler resynthesis)'

# Cycle embedding search, nodes expanded before giving up
TP_EMBED_NODE_BUDGET = 10 ** 7

# Optimizer loop guard
TP_MAX_ROUNDS = 64

# Numerical tolerance for unitary checks inside passes
TP_ATOL = 1e-9

# ladder argument
TP_LEVEL_ALL = "all"
