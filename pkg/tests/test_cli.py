import json

import pytest

from morsespec.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_homology_torus(capsys):
    code, rep, _ = run_json(
        capsys, "homology", "--complex", "torus:4:4", "--field", "expr:random:7"
    )
    assert code == 0
    assert rep["results"]["betti"] == [1, 2, 1]
    assert rep["results"]["d_squared_zero"] is True
    assert rep["inputs"] == {"complex": "torus:4:4", "field": "expr:random:7"}


def test_homology_tetra_and_cycle_files(capsys, tmp_path):
    tetra = tmp_path / "tetra.txt"
    tetra.write_text("0 1 2\n0 1 3\n0 2 3\n1 2 3\n")
    vals = tmp_path / "vals.txt"
    vals.write_text("0.0\n0.25\n0.5\n0.75\n")
    code, rep, _ = run_json(
        capsys, "homology", "--complex", f"file:{tetra}", "--field", str(vals)
    )
    assert code == 0 and rep["results"]["betti"] == [1, 0, 1]

    c4 = tmp_path / "c4.txt"
    c4.write_text("0 1\n1 2\n2 3\n3 0\n")
    vals4 = tmp_path / "vals4.txt"
    vals4.write_text("0\n1\n2\n1\n")
    code, rep, _ = run_json(
        capsys, "homology", "--complex", f"file:{c4}", "--field", str(vals4)
    )
    assert code == 0 and rep["results"]["betti"] == [1, 1]


def test_spectral_point_and_fundamental(capsys):
    code, rep, _ = run_json(
        capsys,
        "spectral", "--complex", "torus:3:3", "--field", "expr:random:3",
        "--class", "point",
    )
    assert code == 0
    (entry,) = rep["results"]
    assert entry["spectrum_member"] is True
    code2, rep2, _ = run_json(
        capsys,
        "spectral", "--complex", "torus:3:3", "--field", "expr:random:3",
        "--class", "fundamental",
    )
    assert code2 == 0
    assert rep2["results"][0]["sigma"] >= entry["sigma"]


def test_spectral_oracle_flag(capsys):
    code, rep, _ = run_json(
        capsys,
        "spectral", "--complex", "torus:3:3", "--field", "expr:twobump",
        "--class", "all", "--oracle",
    )
    assert code == 0
    assert len(rep["results"]) == 4  # 1 + 2 + 1 classes on the torus
    for entry in rep["results"]:
        assert entry["oracle_match"] is True
        assert entry["oracle_sigma"] == entry["sigma"]
    assert rep["pass_counts"] == {"passed": 4, "failed": 0}


def test_compare_fields_and_trials(capsys, tmp_path):
    base = tmp_path / "a.csv"
    base.write_text("0,0.25,0.5\n0.125,0.375,0.625\n0.75,0.875,1.0\n")
    shiftf = tmp_path / "b.csv"
    shiftf.write_text("0.5,0.75,1.0\n0.625,0.875,1.125\n1.25,1.375,1.5\n")
    code, rep, _ = run_json(
        capsys,
        "compare", "--complex", "torus:3:3",
        "--field-a", str(base), "--field-b", str(shiftf), "--class", "all",
    )
    assert code == 0
    for entry in rep["results"]:
        assert entry["pass"] is True
        assert entry["lower"] == entry["upper"] == 0.5
        assert entry["target_sigma"] - entry["source_sigma"] == 0.5

    code, rep, _ = run_json(
        capsys,
        "compare", "--complex", "torus:3:3", "--trials", "25", "--seed", "7",
    )
    assert code == 0
    assert rep["pass_counts"]["failed"] == 0
    assert rep["pass_counts"]["passed"] == 25 * 4


def test_compare_requires_fields_or_trials(capsys):
    code, _, err = run_cli(capsys, "compare", "--complex", "torus:3:3")
    assert code == 2
    assert "field-a" in json.loads(err)["error"]


def test_sweep_translate_constant(capsys):
    code, rep, _ = run_json(
        capsys,
        "sweep", "--complex", "torus:5:5", "--field", "expr:random:11",
        "--family", "translate:5", "--class", "all",
    )
    assert code == 0
    for entry in rep["results"]:
        assert entry["spectra_equal"] is True
        assert entry["constant"] is True
        assert all(m >= 0 for m in entry["lipschitz_margins"])


def test_sweep_perturbation_margins(capsys):
    code, rep, _ = run_json(
        capsys,
        "sweep", "--complex", "torus:4:4", "--field", "expr:bump",
        "--family", "perturb:0.2:6:3", "--class", "point",
    )
    assert code == 0
    (entry,) = rep["results"]
    assert all(m >= 0 for m in entry["lipschitz_margins"])


def test_sweep_constant_family(capsys):
    code, rep, _ = run_json(
        capsys,
        "sweep", "--complex", "torus:3:3", "--field", "expr:random:5",
        "--family", "constant:4", "--class", "point",
    )
    assert code == 0
    (entry,) = rep["results"]
    assert entry["constant"] is True and len(entry["rho_values"]) == 4


def test_bounds_iterate(capsys):
    code, rep, _ = run_json(
        capsys,
        "bounds", "iterate", "--x0", "1", "--alpha", "2", "--beta", "1", "--n", "3",
    )
    assert code == 0
    assert rep["results"]["value"] == 15.0
    assert rep["results"]["oracle"] == 15.0


def test_bounds_step_and_limit(capsys):
    code, rep, _ = run_json(
        capsys,
        "bounds", "step", "--delta", "0.5", "--d0", "0", "--d1", "0", "--sigma", "1",
    )
    assert code == 0 and rep["results"]["value"] == 1.0
    code, rep, _ = run_json(
        capsys,
        "bounds", "limit", "--delta", "0.5", "--d0", "0", "--d1", "0",
        "--d2", "0", "--sigma", "-3",
    )
    assert code == 0 and rep["results"]["value"] == 0.0


def test_bounds_limit_statement_variant(capsys):
    _, plain, _ = run_json(
        capsys,
        "bounds", "limit", "--delta", "0.5", "--d0", "0.1", "--d1", "0.2",
        "--d2", "0.05", "--sigma", "1",
    )
    _, stmt, _ = run_json(
        capsys,
        "bounds", "limit", "--delta", "0.5", "--d0", "0.1", "--d1", "0.2",
        "--d2", "0.05", "--sigma", "1", "--statement-variant",
    )
    assert stmt["results"]["value"] > plain["results"]["value"]


def test_bounds_chain_convergence(capsys):
    code, rep, _ = run_json(
        capsys,
        "bounds", "chain", "--delta", "0.5", "--d0", "0.1", "--d1", "0.2",
        "--d2", "0.05", "--sigma", "1", "--convergence",
    )
    assert code == 0
    table = rep["results"]["doubling_table"]
    assert rep["results"]["gap_monotone"] is True
    gaps = [row["gap"] for row in table]
    assert gaps == sorted(gaps, reverse=True)


def test_bounds_convergence_nonmonotone_exits_1(capsys):
    # at this point the chained bound crosses its limit, so the absolute gap
    # is not monotone under doubling; the command must report exit code 1
    code, rep, _ = run_json(
        capsys,
        "bounds", "chain", "--delta", "0.5", "--d0", "1.0", "--d1", "2.0",
        "--sigma", "-1", "--convergence",
    )
    assert code == 1
    assert rep["results"]["gap_monotone"] is False
    assert rep["pass_counts"]["failed"] == 1


def test_bounds_precondition_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        "bounds", "step", "--delta", "0.5", "--d1", "0.5", "--sigma", "0",
    )
    assert code == 2
    diag = json.loads(err)
    assert diag["kind"] == "PreconditionError"
    assert diag["threshold"] == pytest.approx(0.0075)


def test_bounds_chain_step_count_error(capsys):
    code, _, err = run_cli(
        capsys,
        "bounds", "chain", "--delta", "0.5", "--d1", "0.2", "--sigma", "1",
        "--n-steps", "10",
    )
    assert code == 2
    assert json.loads(err)["minimum"] == 54


def test_input_errors_exit_2(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "homology", "--complex", "moebius:3", "--field", "expr:bump"
    )
    assert code == 2 and "complex spec" in json.loads(err)["error"]
    code, _, err = run_cli(
        capsys, "homology", "--complex", "torus:1:4", "--field", "expr:bump"
    )
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 x\n")
    code, _, err = run_cli(
        capsys, "homology", "--complex", f"file:{bad}", "--field", "expr:bump"
    )
    assert code == 2 and json.loads(err)["line"] == 1
    code, _, err = run_cli(
        capsys, "spectral", "--complex", "torus:3:3", "--field", "expr:random:1",
        "--class", "grade:5:index:0",
    )
    assert code == 2


def test_determinism_under_seed(capsys):
    args = ["compare", "--complex", "torus:3:3", "--trials", "5", "--seed", "9"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_json_file_written_and_inputs_echo(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, rep, _ = run_json(
        capsys,
        "homology", "--complex", "torus:3:3", "--field", "expr:random:2",
        "--json", str(target),
    )
    assert code == 0
    on_disk = json.loads(target.read_text())
    assert on_disk == rep
    assert on_disk["inputs"]["complex"] == "torus:3:3"
    assert on_disk["inputs"]["field"] == "expr:random:2"
