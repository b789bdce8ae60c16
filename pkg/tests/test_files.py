import json

import pytest

from topomodal import files
from topomodal.errors import InputError, RegimeViolation
from topomodal.formula import Regime


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
    return path


def test_load_fixture_models(fixture_path):
    m = files.load_model(fixture_path("sierpinski_pc.json"))
    assert m.regime is Regime.PARACONSISTENT and m.name == "sierpinski_pc"
    k = files.load_model(fixture_path("fig2_m.json"))
    assert len(k.topology.opens) == 5


def test_subbasis_models(tmp_path):
    m = files.load_model(write(tmp_path, "s.json", {"points": ["a", "b"], "subbasis": [["b"]]}))
    assert m.regime is Regime.CLASSICAL and m.name == "s" and m.topology.opens == (0, 2, 3)


@pytest.mark.parametrize(
    "data",
    [
        "[1, 2]",
        "{not json",
        {"points": "ab", "opens": []},
        {"points": ["a"], "opens": [[], ["a"]], "subbasis": []},
        {"points": ["a"]},
        {"points": ["a"], "opens": [[], ["a"]], "regime": "fuzzy"},
        {"points": ["a"], "edges": [["a", "a"]], "regime": "paracomplete"},
        {"points": ["a"], "edges": [["a"]]},
        {"points": ["a"], "opens": [[], ["a"]], "valuation": []},
    ],
)
def test_malformed_models(tmp_path, data):
    with pytest.raises(files.FileFormatError):
        files.load_model(write(tmp_path, "bad.json", data))


def test_model_content_errors(tmp_path):
    with pytest.raises(RegimeViolation):
        files.load_model(write(tmp_path, "m.json", {
            "points": ["a", "b"], "opens": [[], ["b"], ["a", "b"]],
            "regime": "paraconsistent", "valuation": {"p": ["b"]},
        }))
    with pytest.raises(InputError):
        files.load_model(tmp_path / "missing.json")


def test_maps_and_chains(fixture_path, tmp_path):
    f = files.load_map(fixture_path("swap.json"))
    assert f.labels() == {"a": "b", "b": "a"}
    c = files.load_chain(fixture_path("perm_chain.json"))
    assert c.steps == 3
    src = fixture_path("sierpinski_pc.json")
    with pytest.raises(InputError):
        files.load_map(write(tmp_path, "partial.json", {"from": str(src), "to": str(src), "mapping": {"a": "a"}}))
    with pytest.raises(files.FileFormatError):
        files.load_chain(write(tmp_path, "empty.json", {"source": str(src), "target": str(src), "maps": []}))


def test_correspondence(tmp_path):
    assert files.load_correspondence(write(tmp_path, "c.json", {"mapping": {"a": "x"}})) == {"a": "x"}
    assert files.load_correspondence(write(tmp_path, "d.json", {"a": "x"})) == {"a": "x"}
