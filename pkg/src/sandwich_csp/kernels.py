"""Chooses the compiled search kernel when available.

Set ``SANDWICH_CSP_PURE=1`` to force the pure-Python kernel.
"""

import os

import numpy as np

from . import _kernels_py

SAT, UNSAT, BUDGET = _kernels_py.SAT, _kernels_py.UNSAT, _kernels_py.BUDGET

_compiled = None
if not os.environ.get("SANDWICH_CSP_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def gac_search(n_vars, domains, rel_arity, rel_off, rel_count, rel_data,
               cons_rel, cons_off, cons_data, var_off, var_data, budget, backend=None):
    """Dispatch to a kernel; all array arguments are plain int lists."""
    use = backend or BACKEND
    if use == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not built")
        i64 = lambda a: np.ascontiguousarray(a, dtype=np.int64)
        return _compiled.gac_search(
            n_vars, np.ascontiguousarray(domains, dtype=np.uint64),
            i64(rel_arity), i64(rel_off), i64(rel_count), i64(rel_data),
            i64(cons_rel), i64(cons_off), i64(cons_data), i64(var_off), i64(var_data),
            budget,
        )
    return _kernels_py.gac_search(
        n_vars, domains, rel_arity, rel_off, rel_count, rel_data,
        cons_rel, cons_off, cons_data, var_off, var_data, budget,
    )
