"""Data model for finite double categories with distinguished squares.

A category here is a finite set of objects, a finite set of morphisms and an
explicit composition table.  A squares category is a pair of such categories
on a shared object set (horizontal morphisms drawn ``>->``, vertical ones
``->>``), a set of distinguished squares and a basepoint that is initial in
both categories.  Everything is immutable after construction and all
enumerations follow the lexicographic order of identifier strings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import AmbientMismatchError, IllFormedSquareError


def identity_name(obj: str) -> str:
    """Canonical name of the identity morphism on ``obj``."""
    return f"id_{obj}"


@dataclass(frozen=True, order=True)
class Morphism:
    id: str
    src: str
    dst: str


@dataclass(frozen=True, order=True)
class Square:
    """Four morphism ids: ``top``/``bottom`` horizontal, ``left``/``right``
    vertical.  Field order doubles as the canonical sort key."""

    top: str
    left: str
    right: str
    bottom: str

    def label(self) -> str:
        """Compact rendering in statement order, for reports."""
        return f"({self.top} {self.left} {self.right} {self.bottom})"


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category with an explicit, total-on-composable composition
    table.  ``compose[(f, g)]`` is ``f`` followed by ``g``."""

    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identity: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]

    _by_id: dict = field(init=False, repr=False, compare=False, default=None)
    _by_src: dict = field(init=False, repr=False, compare=False, default=None)
    _hom: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        by_id = {m.id: m for m in self.morphisms}
        by_src: dict[str, list[str]] = {o: [] for o in self.objects}
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            if m.src in by_src:
                by_src[m.src].append(m.id)
            hom.setdefault((m.src, m.dst), []).append(m.id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_by_src", by_src)
        object.__setattr__(self, "_hom", hom)

    @classmethod
    def build(cls, objects: Iterable[str],
              arrows: Iterable[tuple[str, str, str]] = (),
              compose: Mapping[tuple[str, str], str] | None = None,
              ) -> "FiniteCategory":
        """Assemble a category from non-identity arrows ``(id, src, dst)``.

        Identities are added automatically and the composition table is
        completed with the unit laws wherever an entry is not already given,
        so callers only list composites of non-identity pairs.
        """
        objs = tuple(sorted(set(objects)))
        morphs = [Morphism(identity_name(o), o, o) for o in objs]
        morphs.extend(Morphism(i, s, d) for (i, s, d) in arrows)
        morphs.sort()
        table: dict[tuple[str, str], str] = dict(compose or {})
        ident = {o: identity_name(o) for o in objs}
        for m in morphs:
            if m.src in ident:
                table.setdefault((ident[m.src], m.id), m.id)
            if m.dst in ident:
                table.setdefault((m.id, ident[m.dst]), m.id)
        return cls(objs, tuple(morphs), ident, table)

    # -- lookups -----------------------------------------------------------

    def morphism(self, mid: str) -> Morphism:
        return self._by_id[mid]

    def has_morphism(self, mid: str) -> bool:
        return mid in self._by_id

    def src(self, mid: str) -> str:
        return self._by_id[mid].src

    def dst(self, mid: str) -> str:
        return self._by_id[mid].dst

    def comp(self, f: str, g: str) -> Optional[str]:
        """``f`` followed by ``g``, or None when the table has no entry."""
        return self.compose.get((f, g))

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return tuple(sorted(self._hom.get((a, b), ())))

    def is_identity(self, mid: str) -> bool:
        m = self._by_id.get(mid)
        return m is not None and self.identity.get(m.src) == mid

    def morphism_ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.morphisms)


@dataclass(frozen=True)
class SquaresCategory:
    """Two finite categories on one object set, a distinguished-square set
    and a basepoint."""

    objects: tuple[str, ...]
    ecat: FiniteCategory
    mcat: FiniteCategory
    distinguished: frozenset[Square]
    basepoint: str

    @classmethod
    def build(cls, ecat: FiniteCategory, mcat: FiniteCategory,
              squares: Iterable[Square], basepoint: str) -> "SquaresCategory":
        return cls(tuple(sorted(set(mcat.objects))), ecat, mcat,
                   frozenset(squares), basepoint)

    def squares_sorted(self) -> tuple[Square, ...]:
        return tuple(sorted(self.distinguished))

    # -- square geometry ---------------------------------------------------

    def corners(self, s: Square) -> tuple[str, str, str, str]:
        """Corner objects ``(top-left, top-right, bottom-left, bottom-right)``."""
        return (self.mcat.src(s.top), self.mcat.dst(s.top),
                self.mcat.src(s.bottom), self.mcat.dst(s.bottom))

    def square_is_well_formed(self, s: Square) -> bool:
        if not (self.mcat.has_morphism(s.top) and self.mcat.has_morphism(s.bottom)
                and self.ecat.has_morphism(s.left) and self.ecat.has_morphism(s.right)):
            return False
        return (self.mcat.src(s.top) == self.ecat.src(s.left)
                and self.mcat.dst(s.top) == self.ecat.src(s.right)
                and self.mcat.src(s.bottom) == self.ecat.dst(s.left)
                and self.mcat.dst(s.bottom) == self.ecat.dst(s.right))

    def h_identity(self, f: str) -> Square:
        """The mandatory square with ``f`` on top and bottom and identities
        on the sides."""
        return Square(f, identity_name(self.mcat.src(f)),
                      identity_name(self.mcat.dst(f)), f)

    def v_identity(self, g: str) -> Square:
        """The mandatory square with ``g`` on both sides and identities on
        top and bottom."""
        return Square(identity_name(self.ecat.src(g)), g, g,
                      identity_name(self.ecat.dst(g)))

    def paste_h(self, s: Square, t: Square) -> Optional[Square]:
        """Horizontal pasting ``[s | t]``; requires ``s.right == t.left``."""
        if s.right != t.left:
            return None
        top = self.mcat.comp(s.top, t.top)
        bottom = self.mcat.comp(s.bottom, t.bottom)
        if top is None or bottom is None:
            return None
        return Square(top, s.left, t.right, bottom)

    def paste_v(self, s: Square, t: Square) -> Optional[Square]:
        """Vertical pasting with ``s`` above ``t``; requires
        ``s.bottom == t.top``."""
        if s.bottom != t.top:
            return None
        left = self.ecat.comp(s.left, t.left)
        right = self.ecat.comp(s.right, t.right)
        if left is None or right is None:
            return None
        return Square(s.top, left, right, t.bottom)

    def is_total_identity(self, s: Square) -> bool:
        """True for the fully degenerate square on a single object."""
        return (self.mcat.is_identity(s.top) and self.mcat.is_identity(s.bottom)
                and self.ecat.is_identity(s.left) and self.ecat.is_identity(s.right)
                and self.mcat.src(s.top) == self.mcat.src(s.bottom))


@dataclass(frozen=True)
class Violation:
    rule: str
    subjects: tuple[str, ...]
    note: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> "ValidationReport":
        vs = tuple(violations)
        return cls(not vs, vs)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


def validate_category(cat: FiniteCategory) -> ValidationReport:
    """Check the category axioms exhaustively and report every failure."""
    out: list[Violation] = []
    ids = [m.id for m in cat.morphisms]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        out.append(Violation("duplicate-morphism", tuple(dup), "morphism ids repeat"))
        return ValidationReport.from_violations(out)

    objset = set(cat.objects)
    for m in cat.morphisms:
        if m.src not in objset or m.dst not in objset:
            out.append(Violation("unknown-object", (m.id,),
                                 f"endpoints {m.src}->{m.dst} not all declared"))

    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None or not cat.has_morphism(i):
            out.append(Violation("missing-identity", (o,), "no identity morphism"))
        else:
            m = cat.morphism(i)
            if m.src != o or m.dst != o:
                out.append(Violation("missing-identity", (o, i),
                                     "identity has wrong endpoints"))

    # Table entries must be typed correctly before laws are even checkable.
    for (f, g), h in sorted(cat.compose.items()):
        if not (cat.has_morphism(f) and cat.has_morphism(g) and cat.has_morphism(h)):
            out.append(Violation("ill-typed-composite", (f, g, h),
                                 "composite references unknown morphism"))
            continue
        if cat.dst(f) != cat.src(g):
            out.append(Violation("ill-typed-composite", (f, g, h),
                                 "pair is not composable"))
        elif cat.src(h) != cat.src(f) or cat.dst(h) != cat.dst(g):
            out.append(Violation("ill-typed-composite", (f, g, h),
                                 "composite has wrong endpoints"))

    for f, g in itertools.product(cat.morphisms, repeat=2):
        if f.dst != g.src:
            continue
        if (f.id, g.id) not in cat.compose:
            out.append(Violation("missing-composite", (f.id, g.id),
                                 "composable pair has no table entry"))

    if out:
        # Unit and associativity laws presume a well-typed total table.
        return ValidationReport.from_violations(out)

    for m in cat.morphisms:
        li = cat.identity[m.src]
        ri = cat.identity[m.dst]
        if cat.comp(li, m.id) != m.id or cat.comp(m.id, ri) != m.id:
            out.append(Violation("unit-law", (m.id,),
                                 "composition with an identity is not neutral"))

    for f, g, h in itertools.product(cat.morphisms, repeat=3):
        if f.dst != g.src or g.dst != h.src:
            continue
        left = cat.comp(cat.comp(f.id, g.id), h.id)
        right = cat.comp(f.id, cat.comp(g.id, h.id))
        if left != right:
            out.append(Violation("associativity", (f.id, g.id, h.id),
                                 f"(fg)h = {left} but f(gh) = {right}"))

    return ValidationReport.from_violations(out)


def validate_squares_category(sq: SquaresCategory) -> ValidationReport:
    """Check every axiom of a squares category, reporting all failures.

    Later phases (initiality, identity squares, pasting closure) are only
    run once the underlying categories and square shapes are sound, since
    they presuppose working composition tables.
    """
    out: list[Violation] = []
    if not sq.objects or sq.basepoint not in sq.objects:
        out.append(Violation("no-basepoint", (sq.basepoint or "?",),
                             "basepoint must be a declared object"))
        return ValidationReport.from_violations(out)

    rep_e = validate_category(sq.ecat)
    rep_m = validate_category(sq.mcat)
    for label, rep in (("ecat", rep_e), ("mcat", rep_m)):
        for v in rep.violations:
            out.append(Violation(v.rule, v.subjects, f"{label}: {v.note}"))

    if tuple(sorted(sq.ecat.objects)) != tuple(sorted(sq.mcat.objects)) \
            or tuple(sorted(sq.objects)) != tuple(sorted(sq.mcat.objects)):
        out.append(Violation("object-set-mismatch", (),
                             "the two categories must share the object set"))

    shape_ok = True
    for s in sq.squares_sorted():
        for mid, cat, label in ((s.top, sq.mcat, "top"), (s.bottom, sq.mcat, "bottom"),
                                (s.left, sq.ecat, "left"), (s.right, sq.ecat, "right")):
            if not cat.has_morphism(mid):
                out.append(Violation("unknown-morphism", (mid,),
                                     f"square {label} edge is not in its category"))
                shape_ok = False
        if not all(c.has_morphism(m) for c, m in
                   ((sq.mcat, s.top), (sq.mcat, s.bottom),
                    (sq.ecat, s.left), (sq.ecat, s.right))):
            continue
        if not sq.square_is_well_formed(s):
            out.append(Violation("corner-mismatch",
                                 (s.top, s.left, s.right, s.bottom),
                                 "square corners do not match"))
            shape_ok = False

    if out:
        return ValidationReport.from_violations(out)

    for cat, label in ((sq.ecat, "ecat"), (sq.mcat, "mcat")):
        for x in sq.objects:
            n = len(cat.hom(sq.basepoint, x))
            if n != 1:
                out.append(Violation("basepoint-not-initial", (x,),
                                     f"{label}: {n} morphisms from the basepoint"))

    for f in sq.mcat.morphism_ids():
        if sq.h_identity(f) not in sq.distinguished:
            out.append(Violation("missing-identity-square", (f,),
                                 "horizontal identity square is not distinguished"))
    for g in sq.ecat.morphism_ids():
        if sq.v_identity(g) not in sq.distinguished:
            out.append(Violation("missing-identity-square", (g,),
                                 "vertical identity square is not distinguished"))

    if not shape_ok:
        return ValidationReport.from_violations(out)

    by_left: dict[str, list[Square]] = {}
    by_top: dict[str, list[Square]] = {}
    for s in sq.squares_sorted():
        by_left.setdefault(s.left, []).append(s)
        by_top.setdefault(s.top, []).append(s)
    for s in sq.squares_sorted():
        for t in by_left.get(s.right, ()):
            pasted = sq.paste_h(s, t)
            if pasted is not None and pasted not in sq.distinguished:
                out.append(Violation("pasting-closure",
                                     (s.label(), t.label()),
                                     "horizontal pasting leaves the square set"))
        for t in by_top.get(s.bottom, ()):
            pasted = sq.paste_v(s, t)
            if pasted is not None and pasted not in sq.distinguished:
                out.append(Violation("pasting-closure",
                                     (s.label(), t.label()),
                                     "vertical pasting leaves the square set"))

    return ValidationReport.from_violations(out)


def is_distinguished(sq: SquaresCategory, s: Square) -> bool:
    """Membership test for the distinguished-square set.

    Raises :class:`IllFormedSquareError` when the four morphisms do not fit
    together into a square at all.
    """
    if not sq.square_is_well_formed(s):
        raise IllFormedSquareError(
            f"square ({s.top}, {s.left}, {s.right}, {s.bottom}) has mismatched corners")
    return s in sq.distinguished


@dataclass(frozen=True)
class Cocone:
    apex: str
    leg_b: str
    leg_c: str


def shared_ambient(sq: SquaresCategory) -> FiniteCategory:
    """The single ambient category, available when both morphism categories
    carry the same morphisms and composition."""
    e, m = sq.ecat, sq.mcat
    if set(e.morphism_ids()) != set(m.morphism_ids()) or dict(e.compose) != dict(m.compose):
        raise AmbientMismatchError(
            "operation needs one ambient category, but the horizontal and "
            "vertical categories differ")
    return m


def restricted_coproduct(sq: SquaresCategory, leg_b: str, leg_c: str) -> Optional[Cocone]:
    """Initial cocone under ``B <- A -> C`` whose completed square is a
    pullback, or None when no such cocone exists.

    The two legs must share their source.  Pullback and initiality are both
    checked by exhausting the ambient category, so the answer is exact.
    """
    cat = shared_ambient(sq)
    a = cat.src(leg_b)
    if cat.src(leg_c) != a:
        raise IllFormedSquareError("the two legs must share their source")
    b, c = cat.dst(leg_b), cat.dst(leg_c)

    def is_pullback(u: str, v: str) -> bool:
        # Square with apex a over legs, cocone (u: b -> d, v: c -> d).
        for w in cat.objects:
            for p in cat.hom(w, b):
                for q in cat.hom(w, c):
                    if cat.comp(p, u) != cat.comp(q, v):
                        continue
                    lifts = [h for h in cat.hom(w, a)
                             if cat.comp(h, leg_b) == p and cat.comp(h, leg_c) == q]
                    if len(lifts) != 1:
                        return False
        return True

    cocones: list[Cocone] = []
    for d in cat.objects:
        for u in cat.hom(b, d):
            for v in cat.hom(c, d):
                if cat.comp(leg_b, u) != cat.comp(leg_c, v):
                    continue
                if is_pullback(u, v):
                    cocones.append(Cocone(d, u, v))

    for cand in cocones:
        initial = True
        for other in cocones:
            mediating = [h for h in cat.hom(cand.apex, other.apex)
                         if cat.comp(cand.leg_b, h) == other.leg_b
                         and cat.comp(cand.leg_c, h) == other.leg_c]
            if len(mediating) != 1:
                initial = False
                break
        if initial:
            return cand
    return None
