import json

import numpy as np
import pytest

from oracles import random_hermitian
from qcommunity import Partition, agglomerate, toy_hamiltonian
from qcommunity import io
from qcommunity.errors import HermiticityError, ParseError


def test_hamiltonian_round_trip_exact(tmp_path, rng):
    H = random_hermitian(rng, 14)
    io.save_hamiltonian(H, tmp_path / "h.json")
    np.testing.assert_array_equal(io.load_hamiltonian(tmp_path / "h.json"), H)


def test_real_hamiltonian_has_no_imag(tmp_path):
    io.save_hamiltonian(toy_hamiltonian("d"), tmp_path / "h.json")
    assert "imag" not in json.loads((tmp_path / "h.json").read_text())


@pytest.mark.parametrize("doc, match", [
    ({"real": [[0]]}, "'n'"),
    ({"n": 2, "real": [[0, 1], [1]]}, "row 1"),
    ({"n": 2, "real": [[0, 1], [1, "x"]]}, "row 1 column 1"),
    ({"n": 1, "real": [[0]], "hermiticity_tol": -1}, "hermiticity_tol"),
    ([1, 2], "object"),
])
def test_parse_errors_name_the_field(tmp_path, doc, match):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ParseError, match=match):
        io.load_hamiltonian(path)


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  \"n\": 2,\n  oops\n}")
    with pytest.raises(ParseError, match="line 3"):
        io.load_hamiltonian(path)


def test_hermiticity_tolerance_from_file(tmp_path):
    path = tmp_path / "h.json"
    doc = {"n": 2, "real": [[0, 1], [1.001, 0]]}
    path.write_text(json.dumps(doc))
    with pytest.raises(HermiticityError):
        io.load_hamiltonian(path)
    path.write_text(json.dumps(dict(doc, hermiticity_tol=0.01)))
    assert io.load_hamiltonian(path)[0, 1] == pytest.approx(1.0005)


def test_partition_round_trip(tmp_path):
    X = Partition((0, 1, 1, 2))
    io.save_partition(tmp_path / "p.json", X, modularity=0.25, measure="transport", regime="infinite", seed=3)
    assert io.load_partition(tmp_path / "p.json") == X
    doc = json.loads((tmp_path / "p.json").read_text())
    assert doc["modularity"] == 0.25 and doc["seed"] == 3


def test_partition_bad_labels(tmp_path):
    (tmp_path / "p.json").write_text(json.dumps({"labels": [0, 1.5]}))
    with pytest.raises(ParseError, match="label 1"):
        io.load_partition(tmp_path / "p.json")


def test_dendrogram_json_orders_merges():
    c = np.ones((3, 3))
    c[0, 1] = c[1, 0] = 2.0
    entries = io.dendrogram_to_json(agglomerate(c))
    assert [e["step"] for e in entries] == [0, 1]
    assert entries[0]["merged"] == [[0], [1]]
    assert entries[1]["merged"] == [[0, 1], [2]]
    assert entries[0]["closeness"] >= entries[1]["closeness"]


def test_matrix_csv(tmp_path):
    io.save_matrix_csv(tmp_path / "c.csv", np.eye(2) / 3, metadata={"measure": "transport"})
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert json.loads(lines[0][2:]) == {"measure": "transport"}
    assert lines[1] == "0,1"
    assert float(lines[2].split(",")[0]) == 1 / 3
