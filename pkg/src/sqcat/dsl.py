"""Line-oriented text format for squares categories.

One statement per line::

    category NAME
    objects: ID ...
    basepoint: ID
    e-morph ID : SRC -> DST
    m-morph ID : SRC -> DST
    e-compose H = G . F          # G . F means F first
    m-compose H = G . F
    square TOP LEFT RIGHT BOTTOM # TOP/BOTTOM horizontal, LEFT/RIGHT vertical

Comments run from ``#`` to the end of the line.  Identities are implicit
and named ``id_<Object>``; composites with identities are filled in by the
unit laws unless a line overrides them.  Every id must be declared before
it is referenced.  Documents are normalised: declaration groups are kept
sorted, so serialising and re-parsing is the identity on documents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .closure import GeneratingData
from .core import FiniteCategory, Square, SquaresCategory, identity_name
from .errors import ParseError

_ID_RE = re.compile(r"[A-Za-z0-9_]+")
_KEYWORDS = ("category", "objects:", "basepoint:", "e-morph", "m-morph",
             "e-compose", "m-compose", "square")


@dataclass(frozen=True)
class SqcatDocument:
    name: str
    objects: tuple[str, ...]
    basepoint: str
    e_morphs: tuple[tuple[str, str, str], ...]
    m_morphs: tuple[tuple[str, str, str], ...]
    e_compose: tuple[tuple[str, str, str], ...]   # (f, g, h): f then g is h
    m_compose: tuple[tuple[str, str, str], ...]
    squares: tuple[Square, ...]


class _Cursor:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line = line_no
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def error(self, message: str, expected=()):
        raise ParseError(message, line=self.line, column=self.pos + 1,
                         expected=expected)

    def expect_id(self, what: str) -> str:
        self._skip_ws()
        m = _ID_RE.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}", expected=("identifier",))
        self.pos = m.end()
        return m.group(0)

    def expect_punct(self, punct: str):
        self._skip_ws()
        if not self.text.startswith(punct, self.pos):
            self.error(f"expected {punct!r}", expected=(punct,))
        self.pos += len(punct)

    def expect_end(self):
        self._skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input", expected=("end of line",))

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos == len(self.text)


def parse_sqcat(text: str) -> SqcatDocument:
    """Parse a document, reporting the position and expectation of the
    first offending token on failure."""
    name = None
    objects: list[str] = []
    basepoint = None
    basepoint_line = None
    morphs = {"e": [], "m": []}
    compose = {"e": {}, "m": {}}
    squares: list[Square] = []

    declared = set()
    morph_ids = {"e": {}, "m": {}}

    def check_fresh(ident: str, cur: _Cursor, kind: str | None = None):
        if ident in declared or (kind and ident in morph_ids[kind]) \
                or ident.startswith("id_"):
            raise ParseError(f"identifier {ident!r} already declared",
                             line=cur.line, column=cur.pos, code="duplicate-id")

    def check_object(ident: str, cur: _Cursor):
        if ident not in declared:
            raise ParseError(f"unknown object {ident!r}", line=cur.line,
                             column=cur.pos, code="unknown-id")

    def resolve_morph(ident: str, kind: str | None, cur: _Cursor) -> str:
        # kind None: any declared morphism will do (square statements are
        # checked against the right category by the validator, and closing
        # documents use one merged namespace anyway).
        pools = (morph_ids["e"], morph_ids["m"]) if kind is None \
            else (morph_ids[kind],)
        if any(ident in pool for pool in pools):
            return ident
        if ident.startswith("id_") and ident[3:] in declared:
            return ident
        label = "morphism" if kind is None else f"{kind}-morphism"
        raise ParseError(f"unknown {label} {ident!r}", line=cur.line,
                         column=cur.pos, code="unknown-id")

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split(None, 1)[0]
        if head not in _KEYWORDS:
            raise ParseError(f"unknown statement {head!r}", line=line_no,
                             column=len(line) - len(line.lstrip()) + 1,
                             expected=_KEYWORDS)
        cur = _Cursor(line, line_no)
        cur.pos = line.index(head) + len(head)

        if head == "category":
            if name is not None:
                cur.error("duplicate category statement")
            name = cur.expect_id("category name")
            cur.expect_end()
            continue
        if name is None:
            raise ParseError("the first statement must name the category",
                             line=line_no, column=1, expected=("category",))

        if head == "objects:":
            while not cur.at_end():
                ident = cur.expect_id("object id")
                check_fresh(ident, cur)
                declared.add(ident)
                objects.append(ident)
        elif head == "basepoint:":
            if basepoint is not None:
                cur.error("duplicate basepoint statement")
            basepoint = cur.expect_id("basepoint object")
            check_object(basepoint, cur)
            cur.expect_end()
            basepoint_line = line_no
        elif head in ("e-morph", "m-morph"):
            kind = head[0]
            ident = cur.expect_id("morphism id")
            check_fresh(ident, cur, kind)
            cur.expect_punct(":")
            src = cur.expect_id("source object")
            check_object(src, cur)
            cur.expect_punct("->")
            dst = cur.expect_id("target object")
            check_object(dst, cur)
            cur.expect_end()
            morph_ids[kind][ident] = (src, dst)
            morphs[kind].append((ident, src, dst))
        elif head in ("e-compose", "m-compose"):
            kind = head[0]
            h = cur.expect_id("composite id")
            cur.expect_punct("=")
            g = cur.expect_id("outer morphism")
            cur.expect_punct(".")
            f = cur.expect_id("inner morphism")
            cur.expect_end()
            h = resolve_morph(h, kind, cur)
            g = resolve_morph(g, kind, cur)
            f = resolve_morph(f, kind, cur)
            if (f, g) in compose[kind]:
                cur.error(f"duplicate composition entry for {g} . {f}")
            compose[kind][(f, g)] = h
        elif head == "square":
            top = resolve_morph(cur.expect_id("top morphism"), None, cur)
            left = resolve_morph(cur.expect_id("left morphism"), None, cur)
            right = resolve_morph(cur.expect_id("right morphism"), None, cur)
            bottom = resolve_morph(cur.expect_id("bottom morphism"), None, cur)
            cur.expect_end()
            squares.append(Square(top, left, right, bottom))

    if name is None:
        raise ParseError("empty document", line=1, column=1,
                         expected=("category",))
    if basepoint is None:
        raise ParseError("no basepoint declared", line=1, column=1,
                         code="missing-basepoint")
    return SqcatDocument(
        name=name,
        objects=tuple(sorted(objects)),
        basepoint=basepoint,
        e_morphs=tuple(sorted(morphs["e"])),
        m_morphs=tuple(sorted(morphs["m"])),
        e_compose=tuple(sorted((f, g, h) for (f, g), h in compose["e"].items())),
        m_compose=tuple(sorted((f, g, h) for (f, g), h in compose["m"].items())),
        squares=tuple(sorted(set(squares))),
    )


def serialize_document(doc: SqcatDocument) -> str:
    lines = [f"category {doc.name}"]
    if doc.objects:
        lines.append("objects: " + " ".join(doc.objects))
    lines.append(f"basepoint: {doc.basepoint}")
    for kind, morphs, compose in (("e", doc.e_morphs, doc.e_compose),
                                  ("m", doc.m_morphs, doc.m_compose)):
        lines.extend(f"{kind}-morph {i} : {s} -> {d}" for i, s, d in morphs)
        lines.extend(f"{kind}-compose {h} = {g} . {f}" for f, g, h in compose)
    lines.extend(f"square {s.top} {s.left} {s.right} {s.bottom}"
                 for s in doc.squares)
    return "\n".join(lines) + "\n"


def _category_from_parts(objects, morphs, compose_triples) -> FiniteCategory:
    explicit = {(f, g): h for f, g, h in compose_triples}
    return FiniteCategory.build(objects, morphs, explicit)


def elaborate_document(doc: SqcatDocument) -> SquaresCategory:
    """Build the squares category a document denotes.  Only referential
    integrity is enforced here; axiom checking is the validator's job."""
    ecat = _category_from_parts(doc.objects, doc.e_morphs, doc.e_compose)
    mcat = _category_from_parts(doc.objects, doc.m_morphs, doc.m_compose)
    return SquaresCategory.build(ecat, mcat, doc.squares, doc.basepoint)


def generating_from_document(doc: SqcatDocument) -> GeneratingData:
    """Read a document as generating data: one ambient category holding all
    declared morphisms (the two namespaces must not collide), with the
    square statements as the generating squares."""
    ids_e = {i for i, _, _ in doc.e_morphs}
    ids_m = {i for i, _, _ in doc.m_morphs}
    clash = sorted(ids_e & ids_m)
    if clash:
        raise ParseError(
            f"generating data needs one ambient namespace; {clash[0]!r} is "
            "declared as both e-morph and m-morph", code="duplicate-id")
    table: dict[tuple[str, str], str] = {}
    for f, g, h in doc.e_compose + doc.m_compose:
        if table.get((f, g), h) != h:
            raise ParseError(
                f"conflicting composition entries for {g} . {f}",
                code="parse-error")
        table[(f, g)] = h
    ambient = FiniteCategory.build(doc.objects, doc.e_morphs + doc.m_morphs,
                                   table)
    return GeneratingData.build(ambient, doc.squares, doc.basepoint)


def document_from_category(sq: SquaresCategory, name: str = "main") -> SqcatDocument:
    """Canonical document for an in-memory squares category."""
    for cat in (sq.ecat, sq.mcat):
        for o in cat.objects:
            if cat.identity.get(o) != identity_name(o):
                raise ValueError("only categories with canonical identity "
                                 "names are serialisable")

    def parts(cat: FiniteCategory):
        morphs = tuple(sorted((m.id, m.src, m.dst) for m in cat.morphisms
                              if not cat.is_identity(m.id)))
        triples = []
        for (f, g), h in cat.compose.items():
            if cat.is_identity(f) and h == g:
                continue
            if cat.is_identity(g) and h == f:
                continue
            triples.append((f, g, h))
        return morphs, tuple(sorted(triples))

    e_morphs, e_compose = parts(sq.ecat)
    m_morphs, m_compose = parts(sq.mcat)
    return SqcatDocument(
        name=name,
        objects=tuple(sorted(sq.objects)),
        basepoint=sq.basepoint,
        e_morphs=e_morphs,
        m_morphs=m_morphs,
        e_compose=e_compose,
        m_compose=m_compose,
        squares=tuple(sorted(sq.distinguished)),
    )


def serialize_category(sq: SquaresCategory, name: str = "main") -> str:
    return serialize_document(document_from_category(sq, name))
