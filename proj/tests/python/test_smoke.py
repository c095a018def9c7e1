import os
import pathlib

import pytest

import knightmagic as km

FIXTURES = pathlib.Path(
    os.environ.get(
        "KNIGHTMAGIC_FIXTURES_DIR",
        pathlib.Path(__file__).resolve().parents[2] / "fixtures" / "corpus",
    )
)


def load(name):
    text = (FIXTURES / f"{name}.tour").read_text()
    grid = "\n".join(
        line for line in text.splitlines() if line[:1].isdigit() or line.startswith("board")
    )
    return km.parse_tour(grid + "\n")


def test_counts():
    assert km.count("4x5")["count"] == 41
    r = km.count("3x4", mode="geometric")
    assert r["count"] == 3
    assert km.count("6x4", cls="semi_long")["count"] == 16
    assert km.count("4x9", filter="distinct(long)=2")["count"] == 1682


def test_count_threads_agree():
    one = km.count("4x8", cls="semi_long", threads=1)
    two = km.count("4x8", cls="semi_long", threads=2)
    assert one["count"] == two["count"] == 136


def test_search_returns_canonical_tours():
    tours = km.search("4x8", cls="quasi_short")
    assert len(tours) == 4
    for t in tours:
        assert t.validate() == (True, "")
        assert t.canonical() == t
        assert km.classify(t)["class"] == "quasi_short"
    assert km.search("4x6", cls="magic") == []
    assert len(km.search("4x8", limit=3)) == 3


def test_classify_fixture():
    r = km.classify(load("fig43a"))
    assert r["class"] == "quasi_short"
    assert r["long_sums"] == [194, 194, 200, 200, 194, 194]
    assert r["off_direction_distinct_values"] == [194, 200]


def test_tour_from_rows():
    rows = [[1, 4, 7, 10], [12, 9, 2, 5], [3, 6, 11, 8]]
    t = km.Tour(rows)
    assert t.board == "3x4"
    assert t.width == 3 and t.height == 4
    assert t.reverse().reverse() == t
    assert km.parse_tour(t.format()) == t


def test_feasibility_and_constants():
    assert km.feasibility("6x10")["status"] == "InfeasibleSinglyEvenSides"
    assert km.feasibility("4x18")["status"] == "NotExcluded"
    assert km.magic_constants("4x18") == {"total": 2628, "short_mc": 146, "long_mc": 657}
    assert km.magic_constants("4x9")["long_mc"] is None


def test_emperor():
    assert km.emperor("4x6", cls="magic")["count"] == 3
    assert km.emperor("4x6", cls="quasi_long", mode="geometric")["count"] == 6


def test_verify():
    rep = km.verify_corpus(str(FIXTURES))
    assert rep["status"] == "all_passed"
    assert rep["failed"] == 0
    assert km.verify(str(FIXTURES / "fig54-mt1.tour"))["status"] == "pass"


def test_warnsdorf():
    t = km.warnsdorf("8x8")
    assert t is not None and t.validate()[0]
    assert km.warnsdorf("4x4") is None


def test_errors():
    with pytest.raises(ValueError):
        km.count("4x5", filter="distinct(up)=2")
    with pytest.raises(km.SearchAborted):
        km.count("6x6", max_nodes=1000)
    with pytest.raises(ValueError):
        km.parse_tour("board 3x4\n1 2\n")
