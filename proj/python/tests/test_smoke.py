import pathlib

import pytest

import alexq

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def load(stem):
    return alexq.Diagram.parse((FIXTURES / f"{stem}.lnk").read_text())


def test_parse_and_shape():
    d = load("trefoil")
    assert d.arcs == ["a1", "a2", "a3"]
    assert d.num_components == 1
    assert ("a1", "a2", "a3") in d.crossings
    assert alexq.Diagram.parse(d.to_native()) == d


def test_alexander_matrix_rows():
    rows = alexq.alexander_matrix(load("hopf"))
    assert rows[0] == ["-t2 + 1", "t1 - 1"]


def test_decompositions():
    assert alexq.decompose(load("fig5")) == {"free_rank": 2, "factors": ["t1 - 2", "2*t1 - 1"]}
    assert alexq.decompose(load("trefoil")) == {"free_rank": 1, "factors": ["t1^2 - t1 + 1"]}
    assert alexq.elementary_ideal(load("trefoil"), 1) == ["t1^2 - t1 + 1"]


def test_quandle_sizes():
    q = alexq.quandle(load("fig5"), 5, [2, 3])
    assert q["module_dimension"] == 3
    assert q["presentation_dimension"] == q["module_dimension"]
    assert len(q["orbit_sizes"]) == 2
    assert sum(q["orbit_sizes"]) == q["size"] <= 5 ** 3
    assert alexq.quandle(load("trefoil"), 5, [2])["size"] == 1


def test_unknot_diagrams_agree():
    for stem in ("unknot_r0", "unknot_r1", "unknot_r2", "unknot_r3"):
        d = load(stem)
        assert alexq.module_dimension(d, 7, [3]) == 1
        assert alexq.coloring_exponent(d, 7, [3]) == 1


def test_errors_map_to_exceptions():
    with pytest.raises(alexq.ParseError):
        alexq.Diagram.parse("crossing a b\n")
    with pytest.raises(alexq.UsageError):
        alexq.module_dimension(load("trefoil"), 5, [0])
    assert issubclass(alexq.ParseError, alexq.UsageError)
    assert issubclass(alexq.CapacityError, alexq.Error)


def test_cli_round_trip():
    code, doc = alexq.cli_json("decompose", FIXTURES / "fig6.lnk")
    assert code == 0
    assert doc["schema"] == "alexq/1"
    assert doc["factors"] == ["t1 + t2 - 1", "t1*t2 - t1 - t2"]
    code, doc = alexq.cli_json("parse", FIXTURES / "missing.lnk")
    assert code == 2
    assert "error" in doc
