import json

import pytest

from congrkit.cli import main
from congrkit.groups import NormalSubgroupProduct, NormalSubgroupSk
from congrkit.landscape import DlockLandscape, DlockPart, landscape_to_json
from congrkit.transformations import parse_family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_principal_transformations(capsys):
    code, out, _ = run(capsys, "principal", "T3", "[1,1,3]", "[1,2,3]")
    assert code == 0 and out.splitlines() == ["universal", "classes: 1"]


def test_principal_product_json(capsys):
    code, out, _ = run(capsys, "principal", "T2xT2", "([1,1],[1,2])", "([2,2],[1,2])", "--json")
    data = json.loads(out)
    assert code == 0 and data["case"] == "eq-right" and data["classes"] == 12
    assert data["landscape"]["families"] == ["T2", "T2"]


def test_principal_matrix(capsys):
    code, out, _ = run(capsys, "principal", "F2@GF(3)", "1,0;0,1", "2,0;0,2", "--json")
    data = json.loads(out)
    assert code == 0 and data["parameters"]["mu"] == 0 and data["classes"] == 41


def test_principal_matrix_product(capsys):
    code, out, _ = run(capsys, "principal", "F1@GF(3)xF1@GF(3)", "([1],[1])", "([2],[2])")
    assert code == 0 and out.startswith("case: scalar-scalar") and "classes: 5" in out


@pytest.mark.parametrize("spec, count", [("T3", "7"), ("PT2", None), ("T2xT2", "75"), ("F2@GF(2)", "5"), ("F2@GF(3)", "9")])
def test_enumerate_count(capsys, spec, count):
    code, out, _ = run(capsys, "enumerate", spec, "--count")
    assert code == 0
    if count is not None:
        assert out.strip() == count


def test_enumerate_json_lists_parameters(capsys):
    code, out, _ = run(capsys, "enumerate", "F2@GF(2)", "--json")
    assert code == 0 and len(json.loads(out)) == 5


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "T3", "--lattice", "--principal-sweep")
    assert code == 0
    assert "0 mismatches" in out and "equal" in out


def test_verify_sampled_axioms(capsys):
    code, out, _ = run(capsys, "verify", "F2@GF(2)", "--axioms", "--samples", "30", "--seed", "4")
    assert code == 0 and "0 failures over 30" in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "T2", "[1,1]", "[2,2]", "--count")
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "oracle", "T2", "[1,1]", "[2,2]", "--json")
    assert ["[1,1]", "[2,2]"] in json.loads(out)


def test_render_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "principal", "T2xT2", "([1,1],[1,2])", "([2,2],[1,2])", "--json")
    path = tmp_path / "land.json"
    path.write_text(json.dumps(json.loads(out)["landscape"]))
    code, out, _ = run(capsys, "render", str(path))
    assert code == 0 and out.strip()


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "Q3"],
        ["enumerate", "T1"],
        ["enumerate", "F1@GF(2)xF1@GF(2)"],
        ["principal", "T3", "[1,1]", "[1,2,3]"],
        ["oracle", "T2", "[1,1]"],
        ["verify", "T2"],
        ["principal", "F1@GF(2)xF1@GF(3)", "([1],[1])", "([1],[1])"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error")


def test_invalid_landscape_exits_two(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "render", str(path))
    assert code == 2 and "landscape" in err


def test_render_rejects_condition_violation(capsys, tmp_path):
    t2 = parse_family("T2")
    trivial = NormalSubgroupProduct.trivial
    land = DlockLandscape((t2, t2), (
        DlockPart(((2, 1),), "HF", NormalSubgroupSk(2, "S")),
        DlockPart(((1, 1),), "ee", trivial(1, 1)),
        DlockPart(((1, 2),), "ee", trivial(1, 2)),
        DlockPart(((2, 2),), "ee", trivial(2, 2)),
    ))
    path = tmp_path / "bad.json"
    path.write_text(landscape_to_json(land))
    code, _, err = run(capsys, "render", str(path))
    assert code == 2 and "invalid landscape" in err
