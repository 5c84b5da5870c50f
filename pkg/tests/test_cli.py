"""CLI behaviour: output shapes, determinism, exit codes, golden files."""

import json
from pathlib import Path

import pytest

from cubetoric import manifolds
from cubetoric.cli import main
from cubetoric.cube import lambda_MI

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    data = json.loads(out) if out else None
    return code, data, err


# ---------------------------------------------------------------- commands --


def test_ring_text_output(capsys):
    code, out, _ = run(capsys, "ring", "--family", "mi", "--n", "3", "--basis", "t")
    assert code == 0
    assert "generators: t1 t2 t3" in out
    assert "t1^2" in out and "t1*t2 + t2^2" in out and "t2*t3 + t3^2" in out


def test_ring_single_generator(capsys):
    code, out, _ = run(capsys, "ring", "--family", "mi", "--n", "1", "--basis", "t")
    assert code == 0
    assert "generators: t1" in out
    assert out.count("t1^2") == 1


def test_ring_q_grouped_names(capsys):
    code, out, _ = run(capsys, "ring", "--family", "q", "--n", "5", "--basis", "t")
    assert code == 0
    assert "generators: t1_1 t1_2 t1_3 t1_4 t2_1" in out


def test_ring_u_basis_default(capsys):
    code, data, _ = run_json(capsys, "ring", "--family", "mi", "--n", "2", "--format", "json")
    assert code == 0
    assert data["ring"]["generators"] == ["u1", "u2"]
    assert [r["text"] for r in data["ring"]["relations"]] == ["u1^2", "u1*u2 + u2^2"]


def test_classes_mi4_json(capsys):
    code, data, _ = run_json(capsys, "classes", "--family", "mi", "--n", "4", "--format", "json")
    assert code == 0
    dual = {c["degree"]: c["text"] for c in data["dual_class"]["components"]}
    assert dual == {0: "1", 2: "t1 + t2 + t3", 4: "t1*t3", 6: "t1*t2*t3"}
    assert data["k_max"] == 6
    assert data["bounds"]["final"] == 29
    assert data["verification"] == {"unit_identity": True, "dual_path_agreement": True}


def test_classes_q6_bound(capsys):
    code, data, _ = run_json(capsys, "classes", "--family", "q", "--n", "6", "--format", "json")
    assert code == 0
    assert data["k_max"] == 8
    assert data["bounds"]["final"] == 41


def test_classes_custom_identity_matrix(capsys, tmp_path):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"n": 2, "columns": [[1, 0], [0, 1], [1, 0], [0, 1]]}))
    code, data, _ = run_json(
        capsys, "classes", "--family", "custom", "--n", "2", "--matrix", str(path), "--format", "json"
    )
    assert code == 0
    assert data["dual_class"]["components"] == [
        {"degree": 0, "terms": [[]], "text": "1"}
    ]
    assert data["bounds"]["final"] == 10


def test_sigma_rows_text(capsys):
    code, out, _ = run(capsys, "sigma", "--n", "8")
    assert code == 0
    body = [line for line in out.splitlines()[1:] if line]
    assert body == [
        "1",
        "1 1",
        "1 0 0",
        "1 1 1 1",
        "1 0 1 0 0",
        "1 1 0 0 0 0",
        "1 0 0 0 0 0 0",
        "1 1 1 1 1 1 1 1",
    ]


def test_sigma_single_row(capsys):
    code, out, _ = run(capsys, "sigma", "--n", "1")
    assert code == 0
    assert out.splitlines()[1] == "1"


def test_sigma_check_passes(capsys):
    code, data, _ = run_json(capsys, "sigma", "--n", "10", "--check", "--format", "json")
    assert code == 0
    assert data["check"]["ok"] is True
    assert data["check"]["disagreements"] == []


def test_verify_small(capsys):
    code, data, _ = run_json(capsys, "verify", "--n-max", "3", "--format", "json")
    assert code == 0
    assert data["ok"] is True and data["failed"] == 0
    names = {c["name"] for c in data["checks"]}
    assert "manifolds.unit_identity.mi" in names
    assert "oracle.sigma_cross_check" in names


# ------------------------------------------------------------- exit codes --


def test_missing_matrix_is_input_error(capsys):
    code, out, err = run(capsys, "classes", "--family", "custom", "--n", "2")
    assert code == 2 and "requires --matrix" in err


def test_matrix_with_builtin_family_is_input_error(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(lambda_MI(2).to_json_dict()))
    code, _, err = run(capsys, "classes", "--family", "mi", "--n", "2", "--matrix", str(path))
    assert code == 2


def test_invalid_matrix_is_input_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "columns": [[1, 0], [0, 1], [1, 1], [1, 1]]}))
    code, _, err = run(capsys, "classes", "--family", "custom", "--n", "2", "--matrix", str(path))
    assert code == 2 and "F'1 ∩ F'2" in err


def test_malformed_matrix_file_is_input_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "classes", "--family", "custom", "--n", "2", "--matrix", str(path))
    assert code == 2


def test_t_basis_for_custom_is_input_error(capsys, tmp_path):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"n": 2, "columns": [[1, 0], [0, 1], [1, 0], [0, 1]]}))
    code, _, err = run(
        capsys, "ring", "--family", "custom", "--n", "2", "--matrix", str(path), "--basis", "t"
    )
    assert code == 2 and "t basis" in err


def test_bad_n_is_input_error(capsys):
    code, _, err = run(capsys, "classes", "--family", "mi", "--n", "0")
    assert code == 2


def test_verify_over_cap_is_input_error(capsys):
    code, _, err = run(capsys, "verify", "--n-max", "15")
    assert code == 2 and "cap" in err


def test_unknown_family_rejected_by_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classes", "--family", "torus", "--n", "2"])
    assert exc.value.code == 2


def test_sigma_check_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(manifolds, "sigma_from_class", lambda n, **kw: tuple([0] * n))
    code, out, _ = run(capsys, "sigma", "--n", "3", "--check")
    assert code == 1 and "FAIL" in out


def test_verify_failure_exits_one(capsys, monkeypatch):
    from cubetoric import verify as verify_mod
    from cubetoric.verify import CheckResult

    monkeypatch.setattr(
        verify_mod,
        "run_all",
        lambda n_max, **kw: [CheckResult("stub.broken", "n=1", False, "boom")],
    )
    code, out, _ = run(capsys, "verify", "--n-max", "2")
    assert code == 1 and "stub.broken" in out


# ------------------------------------------------------------ determinism --


def test_identical_invocations_identical_output(capsys):
    _, first, _ = run(capsys, "classes", "--family", "q", "--n", "5")
    _, second, _ = run(capsys, "classes", "--family", "q", "--n", "5")
    assert first == second


def test_json_round_trips(capsys):
    code, out, _ = run(capsys, "classes", "--family", "mi", "--n", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data


def test_json_deterministic_modulo_timing(capsys):
    def payload():
        _, out, _ = run(capsys, "classes", "--family", "mi", "--n", "3", "--format", "json")
        data = json.loads(out)
        data.pop("timing_ms")
        return data

    assert payload() == payload()


# ------------------------------------------------------------ golden gates --


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_golden_dual_classes(capsys, n):
    code, data, _ = run_json(
        capsys, "classes", "--family", "mi", "--n", str(n), "--format", "json"
    )
    assert code == 0
    data.pop("timing_ms")
    expected = json.loads((GOLDEN / f"classes_mi_{n}.json").read_text())
    assert data == expected


def test_golden_sigma_table(capsys):
    code, data, _ = run_json(capsys, "sigma", "--n", "8", "--format", "json")
    assert code == 0
    data.pop("timing_ms")
    expected = json.loads((GOLDEN / "sigma_8.json").read_text())
    assert data == expected
