"""Named thresholds and interval endpoints, each with its exact expression."""
import math

_TABLE = {
    "classical_fidelity": ("2/3", 2.0 / 3.0),
    "werner_chsh_fw": ("(3+sqrt(2))/(4*sqrt(2))", (3.0 + math.sqrt(2.0)) / (4.0 * math.sqrt(2.0))),
    "werner_entangled_fw": ("1/2", 0.5),
    "werner_slin_max": ("8/9", 8.0 / 9.0),
    "mems_branch_c": ("2/3", 2.0 / 3.0),
    "mems_branch_slin": ("16/27", 16.0 / 27.0),
    "mems_useful_c": ("1/3", 1.0 / 3.0),
    "mems_useful_slin": ("22/27", 22.0 / 27.0),
    "mems_chsh_c": ("1/sqrt(2)", 1.0 / math.sqrt(2.0)),
    "mems_chsh_c_paper_variant": ("(sqrt(153)-3)/18", (math.sqrt(153.0) - 3.0) / 18.0),
    "new_useful_p": ("1/4", 0.25),
    "new_entangled_p": ("7-3*sqrt(5)", 7.0 - 3.0 * math.sqrt(5.0)),
    "new_case_split_p": ("1/2", 0.5),
    "new_slin_min": ("208/351", 208.0 / 351.0),
    "new_slin_max": ("2223/2808", 2223.0 / 2808.0),
    "crossover_fw_min": ("2/3", 2.0 / 3.0),
}

CLASSICAL_FIDELITY = _TABLE["classical_fidelity"][1]
WERNER_CHSH_FW = _TABLE["werner_chsh_fw"][1]
WERNER_SLIN_MAX = _TABLE["werner_slin_max"][1]
MEMS_BRANCH_C = _TABLE["mems_branch_c"][1]
MEMS_BRANCH_SLIN = _TABLE["mems_branch_slin"][1]
MEMS_USEFUL_C = _TABLE["mems_useful_c"][1]
MEMS_USEFUL_SLIN = _TABLE["mems_useful_slin"][1]
MEMS_CHSH_C = _TABLE["mems_chsh_c"][1]
MEMS_CHSH_C_PAPER = _TABLE["mems_chsh_c_paper_variant"][1]
NEW_USEFUL_P = _TABLE["new_useful_p"][1]
NEW_ENTANGLED_P = _TABLE["new_entangled_p"][1]
NEW_CASE_SPLIT_P = _TABLE["new_case_split_p"][1]
NEW_SLIN_MIN = _TABLE["new_slin_min"][1]
NEW_SLIN_MAX = _TABLE["new_slin_max"][1]
CROSSOVER_FW_MIN = _TABLE["crossover_fw_min"][1]


def as_dict():
    """``{name: {"expr": ..., "value": ...}}`` for JSON export."""
    return {k: {"expr": expr, "value": val} for k, (expr, val) in _TABLE.items()}
