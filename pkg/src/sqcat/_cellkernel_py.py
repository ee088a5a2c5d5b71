"""Pure-Python fallback for the diagonal 2-cell join.

Same contract as the compiled extension ``_cellkernel``: consume the
per-transformation records grouped by middle chain, emit one encoded
boundary triple per nondegenerate 2-simplex.  The inner loop is the hot
path of the whole package, so it sticks to local variables and flat
sequences.
"""

from __future__ import annotations

from array import array

import numpy as np

BACKEND = "python"


def join_cells(a_start, a_stop, b_start, b_stop,
               a_fcomp, a_g0, a_g2, a_d2edge, a_s0, a_s1,
               b_hcomp, b_e0, b_e2, b_d0edge, b_s0, b_s1,
               comp_e, ne, key_to_edge, km, enc_base, out):
    """Fill ``out`` with encoded (d2, d0, d1) triples; return the count.

    The outer-square lookup key is ``(fcomp*km + hcomp)*ne*ne + le*ne + re``
    with ``le``/``re`` the pasted vertical edges.  Returns ``-(k + 1)`` when
    candidate ``k`` pastes to a square that is not distinguished, meaning
    the input was not closed under pasting.
    """
    buf = array("q")
    emit = buf.append
    ne2 = ne * ne
    lookup = key_to_edge.get
    comp = comp_e.tolist()
    a_cols = [arr.tolist() for arr in
              (a_fcomp, a_g0, a_g2, a_d2edge, a_s0, a_s1)]
    b_cols = [arr.tolist() for arr in
              (b_hcomp, b_e0, b_e2, b_d0edge, b_s0, b_s1)]
    for g in range(len(a_start)):
        b_lo, b_hi = int(b_start[g]), int(b_stop[g])
        if b_lo == b_hi:
            continue
        b_records = [(b_cols[0][j], b_cols[1][j], b_cols[2][j],
                      b_cols[3][j] + 1, b_cols[4][j], b_cols[5][j])
                     for j in range(b_lo, b_hi)]
        for i in range(int(a_start[g]), int(a_stop[g])):
            fpart = a_cols[0][i] * km
            base_g0 = a_cols[1][i] * ne
            base_g2 = a_cols[2][i] * ne
            d2part = (a_cols[3][i] + 1) * enc_base
            as0 = a_cols[4][i]
            as1 = a_cols[5][i]
            for hcomp, e0, e2, d0e, bs0, bs1 in b_records:
                if (as0 and bs0) or (as1 and bs1):
                    continue
                le = comp[base_g0 + e0]
                re = comp[base_g2 + e2]
                d1e = lookup((fpart + hcomp) * ne2 + le * ne + re, -2)
                if d1e == -2:
                    return -(len(buf) + 1)
                emit((d2part + d0e) * enc_base + d1e + 1)
    n = len(buf)
    if n:
        out[:n] = np.frombuffer(buf, dtype=np.int64)
    return n
