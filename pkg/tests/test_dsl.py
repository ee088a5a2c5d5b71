import re

import pytest

from conftest import FIXTURES, fixture_text
from sqcat import dsl
from sqcat.closure import generate_from_squares
from sqcat.core import Square, validate_squares_category
from sqcat.errors import ParseError
from sqcat.gallery import example

ALL_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.sqcat"))


def test_minimal_document_parses():
    doc = dsl.parse_sqcat("category tiny\nobjects: O\nbasepoint: O\n"
                          "square id_O id_O id_O id_O\n")
    assert doc.name == "tiny"
    assert doc.objects == ("O",)
    assert doc.squares == (Square("id_O", "id_O", "id_O", "id_O"),)


def test_comments_and_blank_lines_are_ignored():
    doc = dsl.parse_sqcat("# heading\ncategory c\n\nobjects: O  # trailing\n"
                          "basepoint: O\n")
    assert doc.objects == ("O",)


def test_crlf_documents_are_accepted():
    doc = dsl.parse_sqcat("category c\r\nobjects: O\r\nbasepoint: O\r\n")
    assert doc.objects == ("O",)
    assert "\r" not in dsl.serialize_document(doc)


def test_missing_basepoint():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nobjects: O\n")
    assert err.value.code == "missing-basepoint"


def test_unknown_id():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nobjects: O\nbasepoint: O\n"
                        "e-morph e : O -> A\n")
    assert err.value.code == "unknown-id"
    assert err.value.line == 4


def test_duplicate_id():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nobjects: O A\nbasepoint: O\n"
                        "e-morph f : O -> A\ne-morph f : O -> A\n")
    assert err.value.code == "duplicate-id"


def test_reserved_identity_names():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nobjects: O A\nbasepoint: O\n"
                        "e-morph id_A : O -> A\n")
    assert err.value.code == "duplicate-id"


def test_parse_error_reports_position_and_expectation():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nobjects: O\nbasepoint O\n")
    assert err.value.code == "parse-error"
    assert err.value.line == 3
    assert err.value.column >= 1
    assert err.value.expected


def test_unknown_statement():
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat("category c\nwibble: O\n")
    assert "category" in err.value.expected


def test_category_must_come_first():
    with pytest.raises(ParseError):
        dsl.parse_sqcat("objects: O\ncategory c\nbasepoint: O\n")


def test_duplicate_composition_entry():
    text = ("category c\nobjects: A O\nbasepoint: O\n"
            "m-morph f : O -> A\nm-morph g : O -> A\n"
            "m-compose g = id_A . f\nm-compose g = id_A . f\n")
    with pytest.raises(ParseError) as err:
        dsl.parse_sqcat(text)
    assert err.value.code == "parse-error"


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_round_trip(name):
    doc = dsl.parse_sqcat(fixture_text(name))
    again = dsl.parse_sqcat(dsl.serialize_document(doc))
    assert again == doc


@pytest.mark.parametrize("name", ["toy:one", "toy:two", "toy:two-free",
                                  "finset:1", "finset:2", "grid:1", "grid:2",
                                  "vect:1", "vect:2"])
def test_serialized_constructors_round_trip(name):
    sq = example(name)
    text = dsl.serialize_category(sq, re.sub(r"[^A-Za-z0-9_]", "_", name))
    doc = dsl.parse_sqcat(text)
    assert dsl.serialize_document(doc) == text
    back = dsl.elaborate_document(doc)
    assert back.distinguished == sq.distinguished
    assert back.objects == sq.objects
    assert back.basepoint == sq.basepoint
    assert dict(back.ecat.compose) == dict(sq.ecat.compose)
    assert dict(back.mcat.compose) == dict(sq.mcat.compose)


def test_round_trip_preserves_the_validation_verdict():
    sq = example("grid:1")
    back = dsl.elaborate_document(dsl.parse_sqcat(dsl.serialize_category(sq)))
    assert validate_squares_category(back).ok
    assert validate_squares_category(back).ok == validate_squares_category(sq).ok


def test_elaborated_fixture_matches_constructor():
    doc = dsl.parse_sqcat(fixture_text("finset1.sqcat"))
    assert dsl.elaborate_document(doc).distinguished == \
        example("finset:1").distinguished


def test_generating_document_closes_to_finset1():
    doc = dsl.parse_sqcat(fixture_text("gen_finset1.sqcat"))
    closed = generate_from_squares(dsl.generating_from_document(doc))
    target = example("finset:1")
    relabel = {"iota": "inj0to1_", "jota": "inj0to1_"}

    def rename(s: Square) -> Square:
        return Square(*(relabel.get(x, x) for x in
                        (s.top, s.left, s.right, s.bottom)))

    assert {rename(s) for s in closed.distinguished} == set(target.distinguished)
    assert validate_squares_category(closed).ok


def test_generating_namespace_must_not_collide():
    text = ("category c\nobjects: A O\nbasepoint: O\n"
            "e-morph f : O -> A\nm-morph f : O -> A\n")
    doc = dsl.parse_sqcat(text)
    with pytest.raises(ParseError):
        dsl.generating_from_document(doc)
