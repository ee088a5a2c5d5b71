"""Backend selection for the 2-cell join kernel.

The compiled extension is used when it importable; otherwise the
pure-Python fallback takes over.  ``SQCAT_PURE=1`` in the environment
forces the fallback, which the benchmark and the backend-agreement tests
use.
"""

from __future__ import annotations

import os

import numpy as np

from . import _cellkernel_py

_forced_pure = os.environ.get("SQCAT_PURE", "") not in ("", "0")

if not _forced_pure:
    try:
        from . import _cellkernel  # type: ignore[attr-defined]
    except ImportError:
        _cellkernel = None
else:
    _cellkernel = None

BACKEND = "cython" if _cellkernel is not None else "python"


def join_cells(a_arrays, b_arrays, comp_e, ne, key_to_edge, km, enc_base, out,
               backend: str | None = None) -> int:
    """Dispatch the join to the selected backend.

    ``a_arrays``/``b_arrays`` are the grouped record columns
    ``(start, stop, composite, first_leg, last_leg, face_edge, s0, s1)``;
    see ``_cellkernel_py.join_cells`` for the full contract.  The compiled
    backend receives the outer-square lookup as sorted parallel arrays
    instead of the dict.
    """
    a_start, a_stop, a_fcomp, a_g0, a_g2, a_d2edge, a_s0, a_s1 = a_arrays
    b_start, b_stop, b_hcomp, b_e0, b_e2, b_d0edge, b_s0, b_s1 = b_arrays
    use = backend or BACKEND
    if use == "cython" and _cellkernel is not None:
        keys = np.fromiter(key_to_edge.keys(), dtype=np.int64, count=len(key_to_edge))
        vals = np.fromiter(key_to_edge.values(), dtype=np.int64, count=len(key_to_edge))
        order = np.argsort(keys, kind="stable")
        return _cellkernel.join_cells(
            a_start, a_stop, b_start, b_stop,
            a_fcomp, a_g0, a_g2, a_d2edge, a_s0, a_s1,
            b_hcomp, b_e0, b_e2, b_d0edge, b_s0, b_s1,
            comp_e, ne, np.ascontiguousarray(keys[order]),
            np.ascontiguousarray(vals[order]), km, enc_base, out)
    return _cellkernel_py.join_cells(
        a_start, a_stop, b_start, b_stop,
        a_fcomp, a_g0, a_g2, a_d2edge, a_s0, a_s1,
        b_hcomp, b_e0, b_e2, b_d0edge, b_s0, b_s1,
        comp_e, ne, key_to_edge, km, enc_base, out)
