"""Exact integer linear algebra: Smith normal form and the presentation of
the square-relation group.

The group presented by a squares category is the free abelian group on the
objects modulo one relation per distinguished square, with the basepoint
class set to zero.  Its isomorphism class (free rank plus torsion chain) is
read off the Smith normal form of the relation matrix.  All arithmetic uses
Python integers, so torsion coefficients are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import SquaresCategory


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)))

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                    for row in self.entries)
        if not self.entries:
            out = ()
        return IntegerMatrix(self.rows, other.cols, out)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SNFResult:
    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class _SnfWorker:
    """Diagonalisation by unimodular row/column operations.

    Pivots are chosen with the smallest nonzero absolute value (ties by
    position), which keeps intermediate entries from exploding.  Witness
    tracking is optional so large relation matrices can skip it.
    """

    def __init__(self, rows: Sequence[Sequence[int]], cols: int, track: bool):
        self.a = [list(r) for r in rows]
        self.m = len(self.a)
        self.n = cols
        self.track = track
        self.u = [[int(i == j) for j in range(self.m)] for i in range(self.m)] if track else None
        self.v = [[int(i == j) for j in range(self.n)] for i in range(self.n)] if track else None

    def _swap_rows(self, i, j):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.track:
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def _swap_cols(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.v:
                row[i], row[j] = row[j], row[i]

    def _add_row(self, dst, src, factor):
        if factor == 0:
            return
        rd, rs = self.a[dst], self.a[src]
        for k in range(self.n):
            rd[k] += factor * rs[k]
        if self.track:
            ud, us = self.u[dst], self.u[src]
            for k in range(self.m):
                ud[k] += factor * us[k]

    def _add_col(self, dst, src, factor):
        if factor == 0:
            return
        for row in self.a:
            row[dst] += factor * row[src]
        if self.track:
            for row in self.v:
                row[dst] += factor * row[src]

    def _negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        if self.track:
            self.u[i] = [-x for x in self.u[i]]

    def _pivot(self, t):
        best = None
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    def _clear_cross(self, t):
        """Clear column and row ``t`` outside the pivot.  Whenever a
        division leaves a remainder, the smallest entry of the submatrix
        becomes the new pivot; the pivot's absolute value strictly shrinks,
        so this terminates."""
        while True:
            dirty = False
            p = self.a[t][t]
            for i in range(t + 1, self.m):
                x = self.a[i][t]
                if x:
                    self._add_row(i, t, -(x // p))
                    if self.a[i][t]:
                        dirty = True
            p = self.a[t][t]
            for j in range(t + 1, self.n):
                x = self.a[t][j]
                if x:
                    self._add_col(j, t, -(x // p))
                    if self.a[t][j]:
                        dirty = True
            if not dirty:
                return
            _, pi, pj = self._pivot(t)
            self._swap_rows(t, pi)
            self._swap_cols(t, pj)

    def run(self):
        t = 0
        while t < self.m and t < self.n:
            found = self._pivot(t)
            if found is None:
                break
            _, pi, pj = found
            self._swap_rows(t, pi)
            self._swap_cols(t, pj)
            while True:
                self._clear_cross(t)
                # The pivot must divide the trailing block for the
                # diagonal to form a divisibility chain; folding an
                # offending row into row t shrinks the pivot via gcd.
                # A unit pivot divides everything, which also keeps the
                # scan affordable on large torsion-free matrices.
                p = self.a[t][t]
                if p in (1, -1):
                    break
                bad = None
                for i in range(t + 1, self.m):
                    row = self.a[i]
                    if any(row[j] % p for j in range(t + 1, self.n)):
                        bad = i
                        break
                if bad is None:
                    break
                self._add_row(t, bad, 1)
            if self.a[t][t] < 0:
                self._negate_row(t)
            t += 1
        return self


def smith_normal_form(matrix: IntegerMatrix) -> SNFResult:
    """Exact Smith normal form with unimodular witnesses U, V and
    ``U * M * V == S``."""
    w = _SnfWorker(matrix.entries, matrix.cols, track=True).run()
    return SNFResult(
        IntegerMatrix.from_rows(w.a, matrix.cols),
        IntegerMatrix.from_rows(w.u, matrix.rows),
        IntegerMatrix.from_rows(w.v, matrix.cols),
    )


def snf_diagonal(rows: Sequence[Sequence[int]], cols: int) -> list[int]:
    """Diagonal of the Smith normal form, without witness matrices."""
    w = _SnfWorker(rows, cols, track=False).run()
    return [w.a[i][i] for i in range(min(w.m, w.n))]


def invariants_from_diagonal(diagonal: Iterable[int], generators: int) -> AbelianInvariants:
    diag = [d for d in diagonal if d != 0]
    torsion = tuple(d for d in diag if d >= 2)
    return AbelianInvariants(generators - len(diag), torsion)


class ZRowReducer:
    """Incremental reduced basis for the row lattice of a stream of integer
    vectors.

    Rows arrive as sparse ``{column: coefficient}`` dicts.  The basis keeps
    one row per pivot column; inserting a row that extends the lattice
    triggers a cheap Gauss-Jordan touch-up, so later reductions stay close
    to O(support size).  All operations are unimodular row combinations, so
    the lattice (and hence the presented abelian group) is preserved.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @staticmethod
    def _combine(a: int, ra: dict, b: int, rb: dict) -> dict:
        out = {}
        for c, v in ra.items():
            out[c] = a * v
        for c, v in rb.items():
            w = out.get(c, 0) + b * v
            if w:
                out[c] = w
            elif c in out:
                del out[c]
        return out

    def add(self, row: Mapping[int, int]) -> None:
        work = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        while work:
            c = min(work)
            piv = pivots.get(c)
            if piv is None:
                if work[c] < 0:
                    work = {k: -v for k, v in work.items()}
                pivots[c] = work
                self._normalize_column(c)
                return
            a = work[c]
            p = piv[c]
            q, r = divmod(a, p)
            if r == 0:
                # Hot path: subtract q * pivot row in place.
                get = work.get
                for col, v in piv.items():
                    w = get(col, 0) - q * v
                    if w:
                        work[col] = w
                    elif col in work:
                        del work[col]
            else:
                g, s, t = _xgcd(p, a)
                new_piv = self._combine(s, piv, t, work)
                work = self._combine(p // g, work, -(a // g), piv)
                pivots[c] = new_piv
                self._normalize_column(c)

    def _normalize_column(self, c: int) -> None:
        piv = self.pivots[c]
        p = piv[c]
        for c2, row in self.pivots.items():
            if c2 == c:
                continue
            v = row.get(c)
            if v:
                q = v // p
                if q:
                    self.pivots[c2] = self._combine(1, row, -q, piv)

    def rows(self) -> list[list[int]]:
        out = []
        for c in sorted(self.pivots):
            dense = [0] * self.ncols
            for col, v in self.pivots[c].items():
                dense[col] = v
            out.append(dense)
        return out

    def invariants(self, generators: int) -> AbelianInvariants:
        diag = snf_diagonal(self.rows(), self.ncols)
        return invariants_from_diagonal(diag, generators)


# -- the object-relation presentation ---------------------------------------

def _column_index(sq: SquaresCategory) -> dict[str, int]:
    cols = [o for o in sq.objects if o != sq.basepoint]
    return {o: i for i, o in enumerate(cols)}


def square_relation_row(sq: SquaresCategory, s, index: Mapping[str, int]) -> list[int]:
    """Row of the relation ``[TL] + [BR] - [TR] - [BL] = 0`` with the
    basepoint column removed; coincident corners accumulate."""
    row = [0] * len(index)
    tl, tr, bl, br = sq.corners(s)
    for obj, sign in ((tl, 1), (br, 1), (tr, -1), (bl, -1)):
        j = index.get(obj)
        if j is not None:
            row[j] += sign
    return row


def k0_presentation_matrix(sq: SquaresCategory) -> IntegerMatrix:
    """One relation row per distinguished square (identity squares give zero
    rows and are kept), columns indexed by the non-basepoint objects in
    canonical order."""
    index = _column_index(sq)
    rows = [square_relation_row(sq, s, index) for s in sq.squares_sorted()]
    return IntegerMatrix.from_rows(rows, len(index))


def k0_invariants(sq: SquaresCategory) -> AbelianInvariants:
    """Isomorphism class of the group presented by the square relations.

    Duplicate relation rows are removed before diagonalising; that is a
    unimodular-safe shortcut and does not change the invariants.
    """
    index = _column_index(sq)
    seen = set()
    rows = []
    for s in sq.squares_sorted():
        row = tuple(square_relation_row(sq, s, index))
        if any(row) and row not in seen:
            seen.add(row)
            rows.append(row)
    diag = snf_diagonal(rows, len(index))
    return invariants_from_diagonal(diag, len(index))


def valuation_defects(sq: SquaresCategory, valuation: Mapping[str, int]
                      ) -> list[tuple[tuple[str, str, str, str], int]]:
    """Squares on which an integer object-valuation fails to be additive.

    A valuation assigns an integer to every object, zero to the basepoint,
    and must satisfy v(TL) + v(BR) == v(TR) + v(BL) on every distinguished
    square; any valuation with no defects factors through the presented
    group.  Returns the offending squares with their residuals.
    """
    if valuation.get(sq.basepoint, 0) != 0:
        raise ValueError("valuation must vanish on the basepoint")
    bad = []
    for s in sq.squares_sorted():
        tl, tr, bl, br = sq.corners(s)
        r = valuation[tl] + valuation[br] - valuation[tr] - valuation[bl]
        if r:
            bad.append(((s.top, s.left, s.right, s.bottom), r))
    return bad
