import json

import pytest

from conftest import DATA, load_json
from mucert import io
from mucert.criteria import certify_elliptic_curve
from mucert.errors import InputError
from mucert.iwasawa import module_invariants


def test_curve_round_trip():
    e = io.load_curve(DATA / "curves" / "11a2.json")
    assert e.ainvs == (0, -1, 1, -7820, -263580) and e.conductor == 11
    assert e.isogeny_degrees == frozenset({5})


@pytest.mark.parametrize("mutate, where", [
    (lambda d: d.pop("rank"), "<root>"),
    (lambda d: d.update(ainvs=[0, 1]), "ainvs"),
    (lambda d: d.update(conductor=0), "conductor"),
    (lambda d: d.update(minimal=False), "minimal"),
])
def test_curve_schema_errors(mutate, where):
    data = load_json("curves/11a2.json")
    mutate(data)
    with pytest.raises(InputError, match=f"at {where}"):
        io.curve_from_dict(data)


def test_curve_semantic_errors():
    data = load_json("curves/11a2.json")
    data["conductor"] = 13
    with pytest.raises(InputError, match="does not divide the discriminant"):
        io.curve_from_dict(data)
    data = load_json("curves/11a2.json")
    data["ainvs"] = [0, 0, 0, 0, 0]
    with pytest.raises(InputError, match="singular"):
        io.curve_from_dict(data)


def test_newform_loading():
    (delta,) = io.load_newforms(DATA / "newform_delta.json")
    assert delta.eigenvalues[2] == -24 and delta.eigenvalues[3] == 252
    assert 691 in delta.nonirreducible_primes
    with pytest.raises(InputError, match="eigenvalues"):
        io.newform_from_dict({"label": "x", "level": 1, "weight": 12, "eigenvalues": {"two": 1}})


def test_newform_list_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps([load_json("newform_26_2_a_a.json"), load_json("newform_26_2_a_b.json")]))
    assert [f.label for f in io.load_newforms(path)] == ["26.2.a.a", "26.2.a.b"]
    with pytest.raises(InputError, match="single newform"):
        io.load_newform(path)


def test_presentation_loading():
    pres = io.load_presentation(DATA / "presentation_diag.json")
    inv = module_invariants(pres)
    assert (inv.mu, inv.lam) == (2, 3)


def test_read_json_errors(tmp_path):
    with pytest.raises(InputError, match="no such file"):
        io.read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError, match="malformed JSON"):
        io.read_json(bad)


def test_class_group_crosscheck():
    report = io.crosscheck_class_group(load_json("classgroup_239.json"))
    assert report["match"] and report["computed"] == {"h": 15, "structure": [15]}
    wrong = io.crosscheck_class_group({"D": 239, "h": 13})
    assert not wrong["match"]
    assert not io.crosscheck_class_group({"D": 21, "h": 4, "structure": [4]})["match"]
    assert io.crosscheck_class_group({"D": 21, "h": 4, "structure": [2, 2]})["match"]


def test_certificate_schema_round_trip(curves):
    cert = certify_elliptic_curve(curves["11a2"], 7)
    data = json.loads(io.dumps(cert.to_dict(timestamp="2026-01-01T00:00:00+00:00")))
    assert io.certificate_from_dict(data) == cert
    data["extra"] = 1
    with pytest.raises(InputError):
        io.certificate_from_dict(data)


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": "∤"}) == '{\n  "a": "∤",\n  "b": 1\n}\n'
