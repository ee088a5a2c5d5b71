"""Independent reference computations used to check the fast paths.

Everything here favours obviousness over speed: grids are enumerated as raw
quadruples of squares (or as vertical column pairs), determinants use
fraction-free elimination, and nothing is shared with the join kernel or
the Smith normal form engine.
"""

from __future__ import annotations

from fractions import Fraction

from sqcat.core import SquaresCategory


def det_exact(rows) -> int:
    """Integer determinant by fraction-free Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            factor = a[i][col] / a[col][col]
            a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    assert det.denominator == 1
    return int(det)


def _grid_cell(sq: SquaresCategory, tl, tr, bl, br, edge_index):
    """Boundary triple of a grid, or None when the grid is a simultaneous
    degeneracy of a single square."""
    ids_e = sq.ecat.is_identity
    ids_m = sq.mcat.is_identity
    alpha_id = (tl.top == tl.bottom and tr.top == tr.bottom
                and ids_e(tl.left) and ids_e(tl.right) and ids_e(tr.right))
    beta_id = (bl.top == bl.bottom and br.top == br.bottom
               and ids_e(bl.left) and ids_e(bl.right) and ids_e(br.right))
    s0 = alpha_id and ids_m(tl.bottom) and ids_m(bl.bottom) and bl.left == bl.right
    s1 = beta_id and ids_m(tr.top) and ids_m(tr.bottom) and tr.left == tr.right
    if s0 or s1:
        return None
    outer = sq.paste_v(sq.paste_h(tl, tr), sq.paste_h(bl, br))
    assert outer is not None and outer in sq.distinguished
    return (edge_index.get(tl, -1), edge_index.get(br, -1),
            edge_index.get(outer, -1))


def grid_first_cells(sq: SquaresCategory):
    """Quadruple-loop enumeration: pick all four small squares directly."""
    squares = sq.squares_sorted()
    edges = [s for s in squares if not sq.is_total_identity(s)]
    edge_index = {s: i for i, s in enumerate(edges)}
    cells = set()
    candidates = 0
    for tl in squares:
        for tr in squares:
            if tl.right != tr.left:
                continue
            for bl in squares:
                if bl.top != tl.bottom:
                    continue
                for br in squares:
                    if br.top != tr.bottom or br.left != bl.right:
                        continue
                    candidates += 1
                    cell = _grid_cell(sq, tl, tr, bl, br, edge_index)
                    if cell is not None:
                        cells.add(cell)
    return edges, cells, candidates


def column_first_cells(sq: SquaresCategory):
    """Column-pair enumeration: vertical square pairs joined on their
    shared boundary chain."""
    squares = sq.squares_sorted()
    edges = [s for s in squares if not sq.is_total_identity(s)]
    edge_index = {s: i for i, s in enumerate(edges)}
    columns = [(s, t) for s in squares for t in squares if s.bottom == t.top]
    by_left: dict = {}
    for s, t in columns:
        by_left.setdefault((s.left, t.left), []).append((s, t))
    cells = set()
    candidates = 0
    for tl, bl in columns:
        for tr, br in by_left.get((tl.right, bl.right), ()):
            candidates += 1
            cell = _grid_cell(sq, tl, tr, bl, br, edge_index)
            if cell is not None:
                cells.add(cell)
    return edges, cells, candidates
