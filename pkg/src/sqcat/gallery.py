"""Deterministic constructors for small squares categories.

These are the fixtures the test-suite and the command line lean on: skeletal
finite sets with injections, unions of integer intervals on a bounded grid,
and low-dimensional vector spaces over the two-element field.  Each
constructor produces a category that passes ``validate_squares_category``.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .core import FiniteCategory, Square, SquaresCategory, identity_name
from .errors import BoundExceededError

FINSET_BOUND = 4
GRID_BOUND = 4
VECT_BOUND = 2


# -- skeletal finite sets with injections ------------------------------------

def _inj_name(a: int, b: int, images: tuple[int, ...]) -> str:
    if a == b and images == tuple(range(1, a + 1)):
        return identity_name(str(a))
    return f"inj{a}to{b}_" + "".join(map(str, images))


def _injections(a: int, b: int) -> list[tuple[int, ...]]:
    return sorted(itertools.permutations(range(1, b + 1), a))


def finset_category(n: int) -> SquaresCategory:
    """Skeletal finite sets 0..n with injections in both directions.

    A square is distinguished when it commutes and, inside its bottom-right
    corner, the images of the two middle corners intersect exactly in the
    image of the top-left corner and jointly cover everything.
    """
    if n < 1 or n > FINSET_BOUND:
        raise BoundExceededError(f"finset size {n} outside 1..{FINSET_BOUND}")
    objects = [str(k) for k in range(n + 1)]
    maps: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    arrows = []
    for a in range(n + 1):
        for b in range(a, n + 1):
            for images in _injections(a, b):
                name = _inj_name(a, b, images)
                maps[name] = (a, b, images)
                if not (a == b and images == tuple(range(1, a + 1))):
                    arrows.append((name, str(a), str(b)))

    def composed(f: str, g: str) -> str:
        a, b, fi = maps[f]
        b2, c, gi = maps[g]
        return _inj_name(a, c, tuple(gi[x - 1] for x in fi))

    compose = {}
    for f, (a, b, _) in maps.items():
        for g, (b2, c, _) in maps.items():
            if b == b2:
                compose[(f, g)] = composed(f, g)
    cat = FiniteCategory.build(objects, arrows, compose)

    squares = []
    for f, (a, b, fi) in maps.items():          # top: A -> B
        for g, (a2, c, gi) in maps.items():     # left: A -> C
            if a2 != a:
                continue
            for h, (c2, d, hi) in maps.items():  # bottom: C -> D
                if c2 != c:
                    continue
                for k, (b2, d2, ki) in maps.items():  # right: B -> D
                    if b2 != b or d2 != d:
                        continue
                    if composed(f, k) != composed(g, h):
                        continue
                    im_b = set(ki)
                    im_c = set(hi)
                    im_a = {ki[x - 1] for x in fi}
                    if im_b & im_c == im_a and im_b | im_c == set(range(1, d + 1)):
                        squares.append(Square(f, g, k, h))
    return SquaresCategory.build(cat, cat, squares, "0")


# -- unions of integer intervals on a grid -----------------------------------

def _grid_objects(n: int) -> list[frozenset]:
    """All closed subsets of [0, n] made of unit cells: points ('p', i) and
    open segments ('s', i) whose endpoints must come along."""
    points = [("p", i) for i in range(n + 1)]
    segs = [("s", i) for i in range(n)]
    out = []
    for pbits in itertools.product((0, 1), repeat=len(points)):
        for sbits in itertools.product((0, 1), repeat=len(segs)):
            if any(s and not (pbits[i] and pbits[i + 1])
                   for i, s in enumerate(sbits)):
                continue
            cells = {points[i] for i, b in enumerate(pbits) if b}
            cells |= {segs[i] for i, b in enumerate(sbits) if b}
            out.append(frozenset(cells))
    return out


def _grid_name(cells: frozenset, n: int) -> str:
    if not cells:
        return "empty"
    parts = []
    i = 0
    while i <= n:
        if ("p", i) not in cells:
            i += 1
            continue
        j = i
        while j < n and ("s", j) in cells:
            j += 1
        parts.append(f"{i}" if i == j else f"{i}to{j}")
        i = j + 1
    return "v" + "_".join(parts)


def grid_interval_category(n: int) -> SquaresCategory:
    """Unions of closed integer-endpoint intervals in [0, n], ordered by
    inclusion; a square is distinguished when its top-left corner is the
    intersection and its bottom-right corner the union of the two middle
    corners."""
    if n < 1 or n > GRID_BOUND:
        raise BoundExceededError(f"grid bound {n} outside 1..{GRID_BOUND}")
    cell_sets = _grid_objects(n)
    names = {cells: _grid_name(cells, n) for cells in cell_sets}
    by_name = {v: k for k, v in names.items()}
    objects = sorted(by_name)

    def incl(x: str, y: str) -> str:
        return identity_name(x) if x == y else f"sub_{x}_{y}"

    arrows = []
    compose = {}
    above = {y: [z for z in objects if by_name[y] <= by_name[z]]
             for y in objects}
    pairs = [(x, y) for x in objects for y in above[x]]
    for x, y in pairs:
        if x != y:
            arrows.append((incl(x, y), x, y))
    for x, y in pairs:
        for z in above[y]:
            compose[(incl(x, y), incl(y, z))] = incl(x, z)
    cat = FiniteCategory.build(objects, arrows, compose)

    squares = []
    for b in objects:
        for c in objects:
            meet = names[by_name[b] & by_name[c]]
            join = names[by_name[b] | by_name[c]]
            squares.append(Square(incl(meet, b), incl(meet, c),
                                  incl(b, join), incl(c, join)))
    return SquaresCategory.build(cat, cat, squares, "empty")


# -- vector spaces over the field with two elements ---------------------------

def _f2_mul(g: tuple, f: tuple, rows: int, inner: int, cols: int) -> tuple:
    """Matrix product g @ f over the two-element field; explicit dimensions
    because zero-row or zero-column matrices carry no shape of their own."""
    return tuple(tuple(sum(g[i][t] * f[t][j] for t in range(inner)) & 1
                       for j in range(cols))
                 for i in range(rows))


def _f2_rank(m: tuple) -> int:
    rows = [int("".join(map(str, r)), 2) if r else 0 for r in m]
    rank = 0
    for bit in range(max((len(r) for r in m), default=0) - 1, -1, -1):
        if rank == len(rows):
            break
        mask = 1 << bit
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def _f2_name(a: int, b: int, m: tuple) -> str:
    if a == b and all(m[i][j] == (i == j) for i in range(b) for j in range(a)):
        return identity_name(str(a))
    bits = "".join(str(m[i][j]) for i in range(b) for j in range(a)) or "e"
    return f"f{a}to{b}x{bits}"


def vect_f2_category(d: int) -> SquaresCategory:
    """Vector spaces of dimension 0..d over the two-element field: all
    linear maps vertically, injective ones horizontally.  A commuting square
    is distinguished when the map out of its pushout corner onto the
    bottom-right corner is an isomorphism, which over this field reduces to
    a dimension count plus one rank condition."""
    if d < 1 or d > VECT_BOUND:
        raise BoundExceededError(f"dimension bound {d} outside 1..{VECT_BOUND}")
    dims = list(range(d + 1))
    objects = [str(k) for k in dims]

    maps: dict[str, tuple[int, int, tuple]] = {}
    for a in dims:
        for b in dims:
            for bits in itertools.product((0, 1), repeat=a * b):
                m = tuple(tuple(bits[i * a + j] for j in range(a)) for i in range(b))
                maps[_f2_name(a, b, m)] = (a, b, m)

    def composed(f: str, g: str) -> str:
        a, b, mf = maps[f]
        _, c, mg = maps[g]
        return _f2_name(a, c, _f2_mul(mg, mf, c, b, a))

    def subcat(mids: Iterable[str]) -> FiniteCategory:
        mids = set(mids)
        arrows = [(i, str(maps[i][0]), str(maps[i][1]))
                  for i in mids if not i.startswith("id_")]
        compose = {(f, g): composed(f, g)
                   for f in mids for g in mids if maps[f][1] == maps[g][0]}
        return FiniteCategory.build(objects, arrows, compose)

    all_ids = list(maps)
    inj_ids = [i for i, (a, b, m) in maps.items() if _f2_rank(m) == a]
    ecat = subcat(all_ids)
    mcat = subcat(inj_ids)

    inj = {i: maps[i] for i in inj_ids}
    squares = []
    for f, (a, b, mf) in inj.items():            # top: A >-> B
        for g, (a2, c, mg) in maps.items():      # left: A ->> C
            if a2 != a:
                continue
            for h, (c2, dd, mh) in inj.items():  # bottom: C >-> D
                if c2 != c:
                    continue
                if dd != b + c - a:
                    continue
                for k, (b2, d2, mk) in maps.items():  # right: B ->> D
                    if b2 != b or d2 != dd:
                        continue
                    if _f2_mul(mk, mf, dd, b, a) != _f2_mul(mh, mg, dd, c, a):
                        continue
                    paired = tuple(mk[i] + mh[i] for i in range(dd))
                    if _f2_rank(paired) == dd:
                        squares.append(Square(f, g, k, h))
    return SquaresCategory.build(ecat, mcat, squares, "0")


# -- tiny hand-rolled categories ----------------------------------------------

def one_object_category() -> SquaresCategory:
    """A single object; the only distinguished square is fully degenerate."""
    cat = FiniteCategory.build(["O"])
    return SquaresCategory.build(cat, cat, [Square("id_O", "id_O", "id_O", "id_O")], "O")


def two_object_category(collapse: bool = True) -> SquaresCategory:
    """Two objects with one horizontal and one vertical arrow out of the
    basepoint.

    With ``collapse`` the square identifying the non-basepoint object with
    zero is distinguished; every pair of objects then has a common witness
    apex and the presented group is trivial.  Without it the distinguished
    set is just the mandatory identity squares and the group is infinite
    cyclic.
    """
    mcat = FiniteCategory.build(["A", "O"], [("m", "O", "A")])
    ecat = FiniteCategory.build(["A", "O"], [("e", "O", "A")])
    squares = [
        Square("id_O", "id_O", "id_O", "id_O"),
        Square("id_A", "id_A", "id_A", "id_A"),
        Square("m", "id_O", "id_A", "m"),
        Square("id_O", "e", "e", "id_A"),
    ]
    if collapse:
        squares.append(Square("m", "e", "id_A", "id_A"))
    return SquaresCategory.build(ecat, mcat, squares, "O")


# -- registry used by the command line ----------------------------------------

def example_names() -> list[str]:
    names = ["toy:one", "toy:two", "toy:two-free"]
    names += [f"finset:{k}" for k in range(1, FINSET_BOUND + 1)]
    names += [f"grid:{k}" for k in range(1, GRID_BOUND + 1)]
    names += [f"vect:{k}" for k in range(1, VECT_BOUND + 1)]
    return names


def example(name: str) -> SquaresCategory:
    """Look up a constructor by its command-line name."""
    if name == "toy:one":
        return one_object_category()
    if name == "toy:two":
        return two_object_category()
    if name == "toy:two-free":
        return two_object_category(collapse=False)
    kind, _, arg = name.partition(":")
    if arg.isdigit():
        k = int(arg)
        if kind == "finset":
            return finset_category(k)
        if kind == "grid":
            return grid_interval_category(k)
        if kind == "vect":
            return vect_f2_category(k)
    raise KeyError(f"unknown example {name!r}; known: {', '.join(example_names())}")
