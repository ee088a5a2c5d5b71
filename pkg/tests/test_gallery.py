import pytest

from sqcat.core import Square, is_distinguished, validate_squares_category
from sqcat.errors import BoundExceededError
from sqcat.gallery import (
    example,
    example_names,
    finset_category,
    grid_interval_category,
    one_object_category,
    two_object_category,
    vect_f2_category,
)


@pytest.mark.parametrize("name", ["toy:one", "toy:two", "toy:two-free",
                                  "finset:1", "finset:2", "finset:3",
                                  "grid:1", "grid:2", "vect:1", "vect:2"])
def test_every_constructor_output_validates(name):
    assert validate_squares_category(example(name)).ok


def test_example_registry_is_complete():
    names = example_names()
    assert {"toy:one", "toy:two", "toy:two-free", "finset:4", "grid:4",
            "vect:2"} <= set(names)
    for name in ["toy:one", "finset:1", "grid:1", "vect:1"]:
        sq = example(name)
        assert sq.basepoint in sq.objects
    with pytest.raises(KeyError):
        example("nonsense")


def test_bounds_are_enforced():
    with pytest.raises(BoundExceededError):
        finset_category(5)
    with pytest.raises(BoundExceededError):
        grid_interval_category(5)
    with pytest.raises(BoundExceededError):
        vect_f2_category(3)
    with pytest.raises(BoundExceededError):
        finset_category(0)


# -- finite sets ---------------------------------------------------------------

def test_finset1_shape():
    sq = finset_category(1)
    assert sq.objects == ("0", "1")
    assert sorted(sq.mcat.morphism_ids()) == ["id_0", "id_1", "inj0to1_"]
    assert len(sq.distinguished) == 4


def test_finset1_distinguished_are_exactly_the_mandatory_squares():
    sq = finset_category(1)
    expected = {sq.h_identity(m) for m in sq.mcat.morphism_ids()}
    expected |= {sq.v_identity(e) for e in sq.ecat.morphism_ids()}
    assert sq.distinguished == frozenset(expected)


def test_finset_complementary_images_are_distinguished():
    sq = finset_category(2)
    assert is_distinguished(
        sq, Square("inj0to1_", "inj0to1_", "inj1to2_1", "inj1to2_2"))
    assert is_distinguished(
        sq, Square("inj0to1_", "inj0to1_", "inj1to2_2", "inj1to2_1"))


def test_finset_overlapping_images_are_not_distinguished():
    sq = finset_category(2)
    assert not is_distinguished(
        sq, Square("inj0to1_", "inj0to1_", "inj1to2_2", "inj1to2_2"))


def test_finset2_square_count_regression():
    assert len(finset_category(2).distinguished) == 26


# -- grid intervals ------------------------------------------------------------

def test_grid1_has_five_objects():
    sq = grid_interval_category(1)
    assert sq.objects == ("empty", "v0", "v0_1", "v0to1", "v1")


def test_grid_point_pair_square_is_distinguished():
    sq = grid_interval_category(1)
    s = Square("sub_empty_v0", "sub_empty_v1", "sub_v0_v0_1", "sub_v1_v0_1")
    assert is_distinguished(sq, s)


def test_grid_segment_is_not_the_union_of_its_endpoints():
    sq = grid_interval_category(1)
    s = Square("sub_empty_v0", "sub_empty_v1", "sub_v0_v0to1", "sub_v1_v0to1")
    assert not is_distinguished(sq, s)


def test_grid_squares_are_meet_join_squares():
    sq = grid_interval_category(2)
    assert len(sq.distinguished) == len(sq.objects) ** 2


# -- two-element-field linear maps ----------------------------------------------

def test_vect_coordinate_embedding_square_is_distinguished():
    sq = vect_f2_category(2)
    # 0 -> 1 over 1 -> 2 via the two coordinate embeddings of the plane.
    s = Square("f0to1xe", "f0to1xe", "f1to2x10", "f1to2x01")
    assert is_distinguished(sq, s)


def test_vect_identity_square_on_every_injection_is_distinguished():
    sq = vect_f2_category(2)
    for f in sq.mcat.morphism_ids():
        assert is_distinguished(sq, sq.h_identity(f))


def test_vect_dimension_count_obstructs():
    sq = vect_f2_category(2)
    # Two lines over the origin cannot assemble into another line.
    for s in sq.squares_sorted():
        tl, tr, bl, br = sq.corners(s)
        if (tl, tr, bl) == ("0", "1", "1"):
            assert br == "2"


def test_vect2_square_count_regression():
    assert len(vect_f2_category(2).distinguished) == 693


def test_toy_categories():
    assert len(one_object_category().distinguished) == 1
    assert len(two_object_category().distinguished) == 5
    assert len(two_object_category(collapse=False).distinguished) == 4
