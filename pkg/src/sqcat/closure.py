"""Closure of generating squares into a full squares category, and the
pairwise witness condition that forces the presented group to be abelian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import FiniteCategory, Square, SquaresCategory, identity_name
from .errors import BasepointNotInitialError, NoncommutingGeneratorError


@dataclass(frozen=True)
class GeneratingData:
    """An ambient finite category, a set of commuting squares inside it and
    a basepoint.  The squares' horizontal edges generate the horizontal
    category, the vertical edges the vertical one."""

    ambient: FiniteCategory
    gens: frozenset[Square]
    basepoint: str

    @classmethod
    def build(cls, ambient, gens, basepoint) -> "GeneratingData":
        return cls(ambient, frozenset(gens), basepoint)


def _generated_subcategory(ambient: FiniteCategory, seeds: set[str]) -> FiniteCategory:
    """Smallest subcategory of ``ambient`` containing ``seeds``: identities
    plus all composites, computed as a fixpoint."""
    mids = {identity_name(o) for o in ambient.objects}
    mids |= seeds
    changed = True
    while changed:
        changed = False
        current = sorted(mids)
        for f in current:
            for g in current:
                h = ambient.comp(f, g)
                if h is not None and h not in mids:
                    mids.add(h)
                    changed = True
    morphs = tuple(sorted(ambient.morphism(m) for m in mids))
    table = {(f, g): h for (f, g), h in ambient.compose.items()
             if f in mids and g in mids}
    return FiniteCategory(ambient.objects, morphs,
                          {o: identity_name(o) for o in ambient.objects}, table)


def generate_from_squares(data: GeneratingData) -> SquaresCategory:
    """The squares category generated by a set of commuting squares.

    The two morphism categories are the subcategories of the ambient
    generated by the horizontal (resp. vertical) edges of the generators;
    the distinguished set is the pasting closure of the generators together
    with all mandatory identity squares.  Errors out when a generator does
    not commute in the ambient or when the basepoint fails to be initial in
    either generated subcategory.
    """
    amb = data.ambient
    for s in sorted(data.gens):
        for mid in (s.top, s.left, s.right, s.bottom):
            if not amb.has_morphism(mid):
                raise NoncommutingGeneratorError(
                    f"generator references unknown morphism {mid}")
        if amb.comp(s.left, s.bottom) != amb.comp(s.top, s.right) \
                or amb.comp(s.top, s.right) is None:
            raise NoncommutingGeneratorError(
                f"generator ({s.top}, {s.left}, {s.right}, {s.bottom}) "
                "does not commute in the ambient category")

    mcat = _generated_subcategory(amb, {s.top for s in data.gens}
                                  | {s.bottom for s in data.gens})
    ecat = _generated_subcategory(amb, {s.left for s in data.gens}
                                  | {s.right for s in data.gens})

    for cat, label in ((ecat, "vertical"), (mcat, "horizontal")):
        for x in cat.objects:
            if len(cat.hom(data.basepoint, x)) != 1:
                raise BasepointNotInitialError(
                    f"basepoint {data.basepoint} is not initial in the "
                    f"generated {label} category (object {x})")

    sq = SquaresCategory.build(ecat, mcat, frozenset(), data.basepoint)
    squares: set[Square] = set(data.gens)
    squares.update(sq.h_identity(f) for f in mcat.morphism_ids())
    squares.update(sq.v_identity(g) for g in ecat.morphism_ids())

    # Pasting closure as a worklist fixpoint; finiteness bounds the loop.
    by_left: dict[str, set[Square]] = {}
    by_right: dict[str, set[Square]] = {}
    by_top: dict[str, set[Square]] = {}
    by_bottom: dict[str, set[Square]] = {}

    def index(p: Square):
        by_left.setdefault(p.left, set()).add(p)
        by_right.setdefault(p.right, set()).add(p)
        by_top.setdefault(p.top, set()).add(p)
        by_bottom.setdefault(p.bottom, set()).add(p)

    for s in squares:
        index(s)
    work = sorted(squares)

    def emit(p: Optional[Square]):
        if p is not None and p not in squares:
            squares.add(p)
            index(p)
            work.append(p)

    while work:
        s = work.pop()
        for t in sorted(by_left.get(s.right, ())):
            emit(sq.paste_h(s, t))
        for t in sorted(by_right.get(s.left, ())):
            emit(sq.paste_h(t, s))
        for t in sorted(by_top.get(s.bottom, ())):
            emit(sq.paste_v(s, t))
        for t in sorted(by_bottom.get(s.top, ())):
            emit(sq.paste_v(t, s))

    return SquaresCategory.build(ecat, mcat, frozenset(squares), data.basepoint)


@dataclass(frozen=True)
class StarWitness:
    apex: str
    first: Square
    second: Square


@dataclass(frozen=True)
class StarReport:
    """Outcome of the pairwise witness search.

    ``witnesses`` maps each ordered object pair (a, b) to the first apex x
    (in canonical order) carrying distinguished squares of the two shapes

        O >-> a          O >-> b
        v      v   and   v      v
        b >-> x          a >-> x

    ``failures`` lists the pairs with no witness; the condition holds iff
    that list is empty.
    """

    holds: bool
    witnesses: dict[tuple[str, str], Optional[StarWitness]]
    failures: tuple[tuple[str, str], ...]


def check_star_condition(sq: SquaresCategory) -> StarReport:
    """Search, for every ordered pair of objects, for a common apex with the
    two basepoint-cornered distinguished squares described in
    :class:`StarReport`.  Deterministic: smallest apex first, then smallest
    square tuples."""
    o = sq.basepoint
    # shape[(tr, bl)][apex] lists squares with top-left corner O.
    shape: dict[tuple[str, str], dict[str, list[Square]]] = {}
    for s in sorted(sq.distinguished):
        tl, tr, bl, br = sq.corners(s)
        if tl != o:
            continue
        shape.setdefault((tr, bl), {}).setdefault(br, []).append(s)

    witnesses: dict[tuple[str, str], Optional[StarWitness]] = {}
    failures = []
    for a in sq.objects:
        for b in sq.objects:
            firsts = shape.get((a, b), {})
            seconds = shape.get((b, a), {})
            found = None
            for x in sq.objects:
                if x in firsts and x in seconds:
                    found = StarWitness(x, firsts[x][0], seconds[x][0])
                    break
            witnesses[(a, b)] = found
            if found is None:
                failures.append((a, b))
    return StarReport(not failures, witnesses, tuple(failures))
