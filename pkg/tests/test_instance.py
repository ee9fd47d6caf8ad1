from pathlib import Path

import pytest

from rees_ag.errors import InputError
from rees_ag.instance import instance_from_payload, load_instance, parse_local_generators, schema_errors
from rees_ag.polyring import RingDescriptor


def test_load_instance(write_instance):
    path = write_instance({"field": "Q", "vars": ["x", "y", "z"], "gens": ["x", "y^2", "z^2"], "split_i": 1})
    spec = load_instance(path)
    assert spec.variables == ("x", "y", "z")
    assert spec.characteristic == 0
    assert spec.split_i == 1
    assert [str(g) for g in spec.polynomials()] == ["x", "y^2", "z^2"]
    assert len(spec.ideal()) == 3
    oracle_instance = spec.to_oracle_instance()
    assert oracle_instance.label == "(x, y^2, z^2)"
    assert oracle_instance.split_i == 1


def test_prime_field_instance():
    spec = instance_from_payload({"field": {"Fp": 7}, "vars": ["x", "y"], "gens": ["x^2", "y"], "label": "demo"})
    assert spec.characteristic == 7
    assert spec.ring().field_label == "GF(7)"
    assert spec.to_oracle_instance().label == "demo"


def test_schema_errors_name_the_field():
    errors = schema_errors({"vars": ["x", "2y"], "gens": ["x"]})
    assert errors and errors[0].startswith("vars/1:")
    assert any(message.startswith("<root>:") for message in schema_errors({"vars": ["x"]}))
    assert schema_errors({"vars": ["x"], "gens": ["x"], "extra": 1})
    assert schema_errors({"vars": ["x", "x"], "gens": ["x"]})
    assert schema_errors({"vars": ["x"], "gens": ["x"], "field": "R"})
    assert schema_errors({"vars": ["x"], "gens": ["x"]}) == []


def test_invalid_payloads_raise_input_error():
    with pytest.raises(InputError, match="Invalid instance"):
        instance_from_payload({"vars": [], "gens": ["x"]})
    with pytest.raises(InputError, match="prime"):
        instance_from_payload({"field": {"Fp": 9}, "vars": ["x"], "gens": ["x"]})
    with pytest.raises(InputError):
        instance_from_payload(["x", "y"])


def test_load_instance_file_errors(tmp_path: Path):
    with pytest.raises(InputError, match="Cannot read"):
        load_instance(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError, match="not valid JSON"):
        load_instance(broken)


def test_generators_must_lie_in_the_maximal_ideal():
    spec = instance_from_payload({"vars": ["x", "y"], "gens": ["x", "y^2 - 3"]})
    with pytest.raises(InputError, match="'y\\^2 - 3' has constant term -3"):
        spec.ideal()
    with pytest.raises(InputError, match="constant term"):
        spec.to_oracle_instance()
    ring = RingDescriptor(("x", "y"), 5)
    assert [str(g) for g in parse_local_generators(["x + 5", "y"], ring)] == ["x", "y"]
