"""
Subcommands Module
==================

Central table of the command-line subcommands.  Each entry names a short
description (used for ``--help``) and the ``ForgeCli`` method that handles
it, so adding a subcommand means one entry here plus one handler.
"""

SUBCOMMANDS = {
    "list": {
        "description": "List registered formulas (or integrands).",
        "handler": "_handle_list",
    },
    "eval": {
        "description": "Evaluate one formula with a fixed number of terms.",
        "handler": "_handle_eval",
    },
    "bench": {
        "description": "Convergence table over a terms schedule (CSV or JSON).",
        "handler": "_handle_bench",
    },
    "matrix": {
        "description": "Print the exact transformation matrix M_n.",
        "handler": "_handle_matrix",
    },
    "root": {
        "description": "Value of a periodic continued root of 2.",
        "handler": "_handle_root",
    },
    "dynamic": {
        "description": "Dynamic sum S_n and the zeta(3) estimate it gives.",
        "handler": "_handle_dynamic",
    },
    "accel": {
        "description": "Binomial-difference accelerations of zeta and eta.",
        "handler": "_handle_accel",
    },
    "integrate": {
        "description": "tanh-sinh quadrature of a registered integrand.",
        "handler": "_handle_integrate",
    },
    "revert": {
        "description": "pi from zeta(3) by series reversion.",
        "handler": "_handle_revert",
    },
    "system": {
        "description": "Truncated triangular system for alpha(3) or zeta(3).",
        "handler": "_handle_system",
    },
    "config": {
        "description": "Show the effective configuration.",
        "handler": "_handle_config",
    },
}
