"""The 2-truncated diagonal of the double nerve and its fundamental group.

Realising a squares category as a space, the vertices are the objects, the
1-simplices are the distinguished squares (a square is an edge from its
top-left to its bottom-right corner), and the 2-simplices are 3x3 grids of
distinguished squares.  A grid's faces are the upper-left small square
(d2), the lower-right small square (d0), and the pasted outer square (d1),
giving one relator ``d2 d0 d1^-1`` per grid.  The fundamental group at the
basepoint only depends on this 2-skeleton, and its abelianisation must
agree with the invariants computed from the square-relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernel
from .core import Square, SquaresCategory
from .errors import CapExceededError, DisconnectedError
from .k0 import AbelianInvariants, ZRowReducer, invariants_from_diagonal, snf_diagonal

DEFAULT_MAX_EDGES = 1_000_000
DEFAULT_MAX_GRIDS = 10_000_000


@dataclass(frozen=True)
class Chain:
    """A composable run of horizontal morphisms; length 0 is a bare object."""

    objects: tuple[str, ...]
    arrows: tuple[str, ...]

    def __post_init__(self):
        if len(self.objects) != len(self.arrows) + 1:
            raise ValueError("a chain of n arrows spans n + 1 objects")

    @property
    def length(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class VerticalTransformation:
    """A componentwise vertical map between equal-length chains; every
    component square over a chain arrow must be distinguished."""

    source: Chain
    target: Chain
    components: tuple[str, ...]

    def component_squares(self) -> tuple[Square, ...]:
        return tuple(
            Square(self.source.arrows[i], self.components[i],
                   self.components[i + 1], self.target.arrows[i])
            for i in range(len(self.source.arrows)))


def enumerate_chains(sq: SquaresCategory, n: int,
                     max_count: int = DEFAULT_MAX_EDGES) -> list[Chain]:
    """All length-``n`` chains of horizontal morphisms, in canonical order."""
    if n < 0:
        raise ValueError("chain length must be nonnegative")
    if n == 0:
        return [Chain((o,), ()) for o in sq.objects]
    by_src: dict[str, list[str]] = {o: [] for o in sq.objects}
    for m in sq.mcat.morphisms:
        by_src[m.src].append(m.id)
    out: list[Chain] = []

    def extend(objs: tuple[str, ...], arrows: tuple[str, ...]):
        if len(arrows) == n:
            out.append(Chain(objs, arrows))
            if len(out) > max_count:
                raise CapExceededError(f"more than {max_count} chains")
            return
        for mid in by_src[objs[-1]]:
            extend(objs + (sq.mcat.dst(mid),), arrows + (mid,))

    for o in sq.objects:
        extend((o,), ())
    return out


def _adjacent_square_pairs(sq: SquaresCategory) -> list[tuple[Square, Square]]:
    """Pairs of distinguished squares sharing a vertical edge (the right of
    the first is the left of the second)."""
    squares = sq.squares_sorted()
    by_left: dict[str, list[Square]] = {}
    for s in squares:
        by_left.setdefault(s.left, []).append(s)
    return [(s, t) for s in squares for t in by_left.get(s.right, ())]


def enumerate_chain_transformations(sq: SquaresCategory, n: int,
                                    max_count: int = DEFAULT_MAX_EDGES
                                    ) -> list[VerticalTransformation]:
    """All vertical transformations between length-``n`` chains.

    For n = 0 these are the vertical morphisms; for n = 1 they are exactly
    the distinguished squares.
    """
    if n < 0:
        raise ValueError("chain length must be nonnegative")
    if n == 0:
        return [VerticalTransformation(Chain((m.src,), ()), Chain((m.dst,), ()),
                                       (m.id,))
                for m in sorted(sq.ecat.morphisms)]
    squares = sq.squares_sorted()
    by_left: dict[str, list[Square]] = {}
    for s in squares:
        by_left.setdefault(s.left, []).append(s)
    out: list[VerticalTransformation] = []

    def emit(seq: tuple[Square, ...]):
        src_objs = [sq.mcat.src(seq[0].top)]
        tgt_objs = [sq.mcat.src(seq[0].bottom)]
        for s in seq:
            src_objs.append(sq.mcat.dst(s.top))
            tgt_objs.append(sq.mcat.dst(s.bottom))
        out.append(VerticalTransformation(
            Chain(tuple(src_objs), tuple(s.top for s in seq)),
            Chain(tuple(tgt_objs), tuple(s.bottom for s in seq)),
            (seq[0].left,) + tuple(s.right for s in seq)))
        if len(out) > max_count:
            raise CapExceededError(f"more than {max_count} transformations")

    def extend(seq: tuple[Square, ...]):
        if len(seq) == n:
            emit(seq)
            return
        for t in by_left.get(seq[-1].right, ()):
            extend(seq + (t,))

    for s in squares:
        extend((s,))
    return out


@dataclass(frozen=True)
class CW2:
    """Combinatorial 2-complex: oriented edges over the object set plus
    2-cells given by their boundary edge triples.

    ``cells`` holds the distinct boundary triples ``(d2, d0, d1)`` as edge
    indices, with -1 for a face that collapsed to a vertex; every grid whose
    boundary coincides is the same cell here, and ``simplex_count`` retains
    how many nondegenerate grids were found in total.
    """

    vertices: tuple[str, ...]
    edges: tuple[Square, ...]
    edge_endpoints: tuple[tuple[str, str], ...]
    cells: np.ndarray
    simplex_count: int
    candidate_count: int

    def cell_triples(self) -> list[tuple[int, int, int]]:
        return [tuple(int(x) for x in row) for row in self.cells]


def diagonal_2_skeleton(sq: SquaresCategory, *,
                        max_edges: int = DEFAULT_MAX_EDGES,
                        max_grids: int = DEFAULT_MAX_GRIDS,
                        backend: Optional[str] = None) -> CW2:
    """Vertices, edges and 2-cells of the diagonal nerve, truncated above
    dimension two.

    Edges are the distinguished squares other than the fully degenerate
    ones; 2-cells come from pairs of vertically stacked transformations of
    length two, excluding the grids that are simultaneous degeneracies of a
    single square.  Exceeding ``max_edges`` or ``max_grids`` raises rather
    than truncating.
    """
    squares = sq.squares_sorted()
    edges = [s for s in squares if not sq.is_total_identity(s)]
    if len(edges) > max_edges:
        raise CapExceededError(f"{len(edges)} edges exceed the cap {max_edges}")
    edge_index = {s: i for i, s in enumerate(edges)}
    edge_of = {s: edge_index.get(s, -1) for s in squares}

    m_ids = sorted(sq.mcat.morphism_ids())
    e_ids = sorted(sq.ecat.morphism_ids())
    mi = {m: i for i, m in enumerate(m_ids)}
    ei = {e: i for i, e in enumerate(e_ids)}
    km, ne = len(m_ids), len(e_ids)
    is_id_m = {m: sq.mcat.is_identity(m) for m in m_ids}
    is_id_e = {e: sq.ecat.is_identity(e) for e in e_ids}

    comp_e = np.full(ne * ne, -1, dtype=np.int64)
    for (f, g), h in sq.ecat.compose.items():
        comp_e[ei[f] * ne + ei[g]] = ei[h]

    key_to_edge = {
        (mi[s.top] * km + mi[s.bottom]) * ne * ne + ei[s.left] * ne + ei[s.right]:
        edge_of[s]
        for s in squares}

    # One pass over adjacent square pairs yields both the row records
    # (grouped by bottom chain) and the column records (grouped by top
    # chain) of the join.
    a_groups: dict[tuple[int, int], list[tuple]] = {}
    b_groups: dict[tuple[int, int], list[tuple]] = {}
    for s, t in _adjacent_square_pairs(sq):
        fcomp = sq.mcat.comp(s.top, t.top)
        hcomp = sq.mcat.comp(s.bottom, t.bottom)
        if fcomp is None or hcomp is None:
            raise ValueError("composition table is not total on chain arrows")
        alpha_id = (s.top == s.bottom and t.top == t.bottom
                    and is_id_e[s.left] and is_id_e[s.right] and is_id_e[t.right])
        a_groups.setdefault((mi[s.bottom], mi[t.bottom]), []).append((
            mi[fcomp], ei[s.left], ei[t.right], edge_of[s],
            int(alpha_id and is_id_m[s.bottom]),
            int(is_id_m[t.top] and is_id_m[t.bottom] and t.left == t.right)))
        b_groups.setdefault((mi[s.top], mi[t.top]), []).append((
            mi[hcomp], ei[s.left], ei[t.right], edge_of[t],
            int(is_id_m[s.bottom] and s.left == s.right),
            int(alpha_id)))

    shared = sorted(set(a_groups) & set(b_groups))
    candidates = sum(len(a_groups[k]) * len(b_groups[k]) for k in shared)
    if candidates > max_grids:
        raise CapExceededError(
            f"{candidates} candidate grids exceed the cap {max_grids}")

    def flatten(groups, keys):
        start = np.zeros(len(keys), dtype=np.int64)
        stop = np.zeros(len(keys), dtype=np.int64)
        rows = []
        pos = 0
        for i, k in enumerate(keys):
            bucket = groups[k]
            start[i] = pos
            pos += len(bucket)
            stop[i] = pos
            rows.extend(bucket)
        cols = np.array(rows, dtype=np.int64).reshape(len(rows), 6).T \
            if rows else np.zeros((6, 0), dtype=np.int64)
        return (start, stop) + tuple(np.ascontiguousarray(c) for c in cols)

    a_arrays = flatten(a_groups, shared)
    b_arrays = flatten(b_groups, shared)

    enc_base = len(edges) + 2
    out = np.empty(candidates, dtype=np.int64)
    n = kernel.join_cells(a_arrays, b_arrays, comp_e, ne, key_to_edge,
                          km, enc_base, out, backend=backend)
    if n < 0:
        raise ValueError("a grid pasted to a non-distinguished outer square; "
                         "the input is not closed under pasting")

    uniq = np.unique(out[:n])
    d1 = uniq % enc_base - 1
    rest = uniq // enc_base
    d0 = rest % enc_base - 1
    d2 = rest // enc_base - 1
    cells = np.stack([d2, d0, d1], axis=1).astype(np.int32) if len(uniq) \
        else np.zeros((0, 3), dtype=np.int32)
    cells.setflags(write=False)

    endpoints = tuple((sq.mcat.src(s.top), sq.mcat.dst(s.bottom)) for s in edges)
    return CW2(tuple(sq.objects), tuple(edges), endpoints, cells,
               simplex_count=int(n), candidate_count=int(candidates))


class GroupPresentation:
    """Finite presentation of the edge-path group of a :class:`CW2`.

    Generators are the non-tree edges of a breadth-first spanning tree;
    each 2-cell contributes the relator ``d2 d0 d1^-1`` with tree edges and
    collapsed faces reading as the empty word.  ``relators`` materialises
    the freely reduced, nonempty words; large complexes should go through
    :func:`abelianize`, which works on the compact cell table directly.
    """

    def __init__(self, generators: tuple[str, ...], generator_edges: tuple[int, ...],
                 tree_edges: tuple[int, ...], base: str,
                 letters: np.ndarray, cells: np.ndarray):
        self.generators = generators
        self.generator_edges = generator_edges
        self.tree_edges = tree_edges
        self.base = base
        self._letters = letters
        self._cells = cells

    @property
    def relators(self) -> list[tuple[int, ...]]:
        letters = self._letters
        out = []
        for d2, d0, d1 in self._cells:
            word = []
            for eidx, sign in ((int(d2), 1), (int(d0), 1), (int(d1), -1)):
                lt = int(letters[eidx + 1])
                if lt:
                    letter = sign * lt
                    if word and word[-1] == -letter:
                        word.pop()
                    else:
                        word.append(letter)
            if word:
                out.append(tuple(word))
        return out

    def relator_count(self) -> int:
        return int(len(self._cells))

    def exponent_rows(self) -> Iterable[dict[int, int]]:
        """Relator exponent rows as sparse ``{generator: coefficient}``
        dicts, deduplicated by letter content."""
        if not len(self._cells):
            return
        letters = self._letters
        c = self._cells
        l2 = letters[c[:, 0] + 1]
        l0 = letters[c[:, 1] + 1]
        l1 = -letters[c[:, 2] + 1]
        rows = np.stack([l2, l0, l1], axis=1)
        rows.sort(axis=1)
        off = len(self.generators) + 1
        base = 2 * off + 1
        enc = (rows[:, 0] + off) * base * base + (rows[:, 1] + off) * base \
            + (rows[:, 2] + off)
        for code in np.unique(enc):
            triple = (int(code) // (base * base) - off,
                      int(code) // base % base - off,
                      int(code) % base - off)
            row: dict[int, int] = {}
            for lt in triple:
                if lt:
                    g = abs(lt) - 1
                    row[g] = row.get(g, 0) + (1 if lt > 0 else -1)
            if any(row.values()):
                yield row


def pi1_presentation(cw: CW2, base: str,
                     edge_order: Optional[Sequence[int]] = None) -> GroupPresentation:
    """Edge-path presentation of the fundamental group of ``cw`` at ``base``.

    A breadth-first spanning tree rooted at the base is chosen following
    the canonical edge order (or the supplied permutation, which must not
    change the presented group's invariants); its edges read as empty words.
    """
    if base not in cw.vertices:
        raise DisconnectedError(f"base {base!r} is not a vertex")
    vindex = {v: i for i, v in enumerate(cw.vertices)}
    order = list(range(len(cw.edges))) if edge_order is None else list(edge_order)
    if sorted(order) != list(range(len(cw.edges))):
        raise ValueError("edge_order must be a permutation of the edge indices")

    adjacency: list[list[tuple[int, int, int]]] = [[] for _ in cw.vertices]
    for rank, eidx in enumerate(order):
        u, v = cw.edge_endpoints[eidx]
        adjacency[vindex[u]].append((rank, eidx, vindex[v]))
        adjacency[vindex[v]].append((rank, eidx, vindex[u]))
    for bucket in adjacency:
        bucket.sort()

    tree: set[int] = set()
    seen = {vindex[base]}
    frontier = [vindex[base]]
    while frontier:
        nxt = []
        for u in frontier:
            for _, eidx, w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    tree.add(eidx)
                    nxt.append(w)
        frontier = nxt
    if len(seen) != len(cw.vertices):
        missing = [v for v in cw.vertices if vindex[v] not in seen]
        raise DisconnectedError(f"vertices unreachable from the base: {missing}")

    generator_edges = tuple(e for e in range(len(cw.edges)) if e not in tree)
    letters = np.zeros(len(cw.edges) + 1, dtype=np.int64)
    for g, e in enumerate(generator_edges):
        letters[e + 1] = g + 1
    names = tuple(f"x{g}" for g in range(len(generator_edges)))
    return GroupPresentation(names, generator_edges, tuple(sorted(tree)),
                             base, letters, cw.cells)


def abelianize(presentation: GroupPresentation) -> AbelianInvariants:
    """Invariants of the abelianised presented group: exponent-sum the
    relators, reduce the resulting integer rows, and read rank and torsion
    off the diagonal form."""
    reducer = ZRowReducer(len(presentation.generators))
    cells = presentation._cells
    letters = presentation._letters
    add = reducer.add
    # Chunked so the letter columns of a many-million-cell complex never
    # materialise all at once.
    for lo in range(0, len(cells), 1 << 20):
        block = cells[lo:lo + (1 << 20)]
        l2 = letters[block[:, 0] + 1].tolist()
        l0 = letters[block[:, 1] + 1].tolist()
        l1 = letters[block[:, 2] + 1].tolist()
        for x, y, z in zip(l2, l0, l1):
            # Exponent row of the word d2 d0 d1^-1; letter 0 is silent.
            if x == z:
                if y:
                    add({y - 1: 1})
                continue
            row: dict[int, int] = {}
            if x:
                row[x - 1] = 1
            if y:
                g = y - 1
                row[g] = row.get(g, 0) + 1
            if z:
                g = z - 1
                w = row.get(g, 0) - 1
                if w:
                    row[g] = w
                else:
                    del row[g]
            if row:
                add(row)
    diag = snf_diagonal(reducer.rows(), len(presentation.generators))
    return invariants_from_diagonal(diag, len(presentation.generators))
