import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def build_torsion_category():
    """Two objects with retractions onto the basepoint.

    Every composite through the basepoint collapses (the non-basepoint
    endomorphisms form a rectangular band), and the single generating
    square has the basepoint in both diagonal corners, so the relation it
    imposes is 2[A] = 0 and the presented group is cyclic of order two.
    """
    from sqcat.closure import GeneratingData, generate_from_squares
    from sqcat.core import FiniteCategory, Square

    arrows = [("m", "O", "A"), ("e", "O", "A"), ("p", "A", "O"),
              ("r", "A", "O"), ("q", "A", "A"), ("w", "A", "A"),
              ("x", "A", "A"), ("u", "A", "A")]
    # q = p-then-m, w = p-then-e, x = r-then-m, u = r-then-e; any
    # (A -> O -> A) pair multiplies by keeping the outer factors.
    compose = {
        ("m", "p"): "id_O", ("m", "r"): "id_O",
        ("e", "p"): "id_O", ("e", "r"): "id_O",
        ("p", "m"): "q", ("p", "e"): "w", ("r", "m"): "x", ("r", "e"): "u",
        ("m", "q"): "m", ("m", "w"): "e", ("m", "x"): "m", ("m", "u"): "e",
        ("e", "q"): "m", ("e", "w"): "e", ("e", "x"): "m", ("e", "u"): "e",
        ("q", "p"): "p", ("q", "r"): "p", ("w", "p"): "p", ("w", "r"): "p",
        ("x", "p"): "r", ("x", "r"): "r", ("u", "p"): "r", ("u", "r"): "r",
        ("q", "q"): "q", ("q", "w"): "w", ("q", "x"): "q", ("q", "u"): "w",
        ("w", "q"): "q", ("w", "w"): "w", ("w", "x"): "q", ("w", "u"): "w",
        ("x", "q"): "x", ("x", "w"): "u", ("x", "x"): "x", ("x", "u"): "u",
        ("u", "q"): "x", ("u", "w"): "u", ("u", "x"): "x", ("u", "u"): "u",
    }
    ambient = FiniteCategory.build(["A", "O"], arrows, compose)
    gen = Square("m", "e", "r", "p")
    return generate_from_squares(GeneratingData.build(ambient, [gen], "O"))
