"""CLI subcommands: envelope schema, determinism, exit codes."""

import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from boolebell.cli import main
from boolebell.datasets import DichotomicDataset, write_dataset_csv

SCHEMA = json.loads(resources.files("boolebell.schemas")
                    .joinpath("report.schema.json").read_text())


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 0
    envelope = json.loads(out)
    jsonschema.validate(envelope, SCHEMA)
    return envelope


class TestSubcommands:
    def test_dataset(self, capsys, tmp_path):
        rng = np.random.default_rng(0)
        path = tmp_path / "ds.csv"
        write_dataset_csv(DichotomicDataset(rng.choice([-1, 1], (20, 3))), path)
        env = run_json(capsys, ["dataset", "--input", str(path)])
        assert env["reports"]["boole_triple"]["all_satisfied"] is True

    def test_ebbi_check_names_violated_clause(self, capsys):
        env = run_json(capsys, ["ebbi", "check", "--e", "1", "-0.5", "0.5", "-0.5"])
        assert env["reports"]["ebbi"]["all_satisfied"] is True
        anti = env["reports"]["boole_anticorrelated"]
        assert anti["all_satisfied"] is False
        violated = [c for c in anti["clauses"] if not c["satisfied"]]
        assert violated and "F12" in violated[0]["description"]

    def test_theorem1(self, capsys):
        env = run_json(capsys, ["theorem", "--which", "1",
                                "--coeffs", "1", "0", "0", "-1.5"])
        assert env["reports"]["theorem1"]["all_satisfied"] is False

    def test_theorem_construct_rejects(self, capsys):
        code = main(["theorem", "--which", "construct",
                     "--coeffs", "1", "-1", "-1", "-1"])
        assert code == 2

    def test_theorem_reconstruct(self, capsys, tmp_path):
        from boolebell import ExpansionCoeffs2, synth2
        tabs = {name: synth2(ExpansionCoeffs2(1, 0, 0, e)).to_dict()
                for name, e in (("f", 0.5), ("fhat", 0.5), ("ftilde", 0.5))}
        path = tmp_path / "tabs.json"
        path.write_text(json.dumps(tabs))
        env = run_json(capsys, ["theorem", "--which", "reconstruct",
                                "--tables", str(path)])
        assert env["values"]["compatible"] is True
        assert "table" in env["values"]

    def test_quantum_singlet(self, capsys):
        env = run_json(capsys, ["quantum", "--scenario", "singlet",
                                "--a", "0", "0", "1", "--b", "1", "0", "0"])
        assert env["values"]["correlation"] == pytest.approx(0.0, abs=1e-12)

    def test_quantum_substitution_witness(self, capsys):
        env = run_json(capsys, ["quantum", "--scenario", "substitution",
                                "--angles", "0", "60", "120"])
        assert env["values"]["E"] == pytest.approx(-0.5, abs=1e-12)
        assert env["reports"]["boole_anticorrelated"]["all_satisfied"] is False

    def test_leggett_garg_closed_form(self, capsys):
        env = run_json(capsys, ["leggett-garg", "--omega", "1",
                                "--dt", "0", "0.5235987755982988",
                                "0.5235987755982988",
                                "--samples", "20000", "--seed", "7"])
        t = env["values"]["triple_correlations"]
        assert t["E12"] == pytest.approx(0.5, abs=1e-12)
        assert t["E13"] == pytest.approx(0.25, abs=1e-12)
        assert t["E23"] == pytest.approx(0.5, abs=1e-12)
        emp = env["values"]["empirical_correlations"]
        assert emp["E12"] == pytest.approx(0.5, abs=0.02)

    def test_extended_eprb_triple(self, capsys):
        env = run_json(capsys, ["extended-eprb", "--angles", "0", "60", "120"])
        assert env["values"]["coeffs"]["e12"] == pytest.approx(-0.5, abs=1e-12)
        assert env["reports"]["ebbi"]["all_satisfied"] is True

    def test_extended_eprb_quadruple(self, capsys):
        env = run_json(capsys, ["extended-eprb",
                                "--angles", "0", "45", "90", "135"])
        assert env["reports"]["chsh"]["all_satisfied"] is True

    def test_allergy_pairs(self, capsys):
        env = run_json(capsys, ["allergy", "--variant", "pairs"])
        assert env["values"]["gamma"] == -3.0

    def test_allergy_triples(self, capsys):
        env = run_json(capsys, ["allergy", "--variant", "triples", "--days", "7"])
        assert env["values"]["gamma"] == -1.0

    def test_factorizable(self, capsys):
        env = run_json(capsys, ["factorizable", "--mu", "opposite",
                                "--angles", "0", "0", "--samples", "40000",
                                "--seed", "3"])
        assert env["values"]["analytic"] == pytest.approx(4 / np.pi - 1)
        assert abs(env["values"]["empirical"] - env["values"]["analytic"]) \
            <= env["values"]["four_sigma"]

    def test_epr_pipeline(self, capsys, tmp_path):
        events = tmp_path / "events.csv"
        env = run_json(capsys, ["epr-pipeline", "--source", "singlet",
                                "--angles", "0", "60", "120",
                                "--window", "inf", "--samples", "9000",
                                "--seed", "5", "--events-out", str(events)])
        assert env["reports"]["boole_anticorrelated"]["all_satisfied"] is False
        assert env["values"]["verdict_anticorrelated"] == \
            "triples hypothesis rejected"
        assert events.read_text().startswith("alpha,station,s,t,setting_id,angle")

    def test_sweep_factorizable(self, capsys):
        env = run_json(capsys, ["sweep", "--what", "factorizable",
                                "--mu", "uniform",
                                "--grid", "0", "360", "45"])
        assert env["values"]["bell_violations"] == 0

    def test_sweep_leggett_garg(self, capsys):
        env = run_json(capsys, ["sweep", "--what", "leggett-garg",
                                "--points", "12"])
        assert env["values"]["violations"] == 0


class TestCliBehavior:
    def test_violation_is_not_an_error_exit(self, capsys):
        code = main(["ebbi", "check", "--e", "1", "-1", "-1", "-1"])
        assert code == 0
        env = json.loads(capsys.readouterr().out)
        assert env["reports"]["ebbi"]["all_satisfied"] is False

    def test_missing_file_exit_code(self, capsys):
        assert main(["dataset", "--input", "/nonexistent.csv"]) == 2

    def test_seed_required_for_random_scenarios(self, capsys):
        with pytest.raises(SystemExit):
            main(["factorizable", "--mu", "uniform", "--angles", "0", "1"])

    def test_determinism(self, capsys):
        argv = ["leggett-garg", "--omega", "1", "--dt", "0", "0.4", "0.9",
                "--samples", "5000", "--seed", "42"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_table_format(self, capsys):
        code = main(["ebbi", "check", "--e", "1", "0", "0", "0",
                     "--format", "table"])
        assert code == 0
        out = capsys.readouterr().out
        assert "scenario: ebbi" in out and "satisfied" in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = main(["allergy", "--variant", "pairs", "--out", str(path)])
        assert code == 0
        env = json.loads(path.read_text())
        jsonschema.validate(env, SCHEMA)

    def test_radians_flag(self, capsys):
        env = run_json(capsys, ["quantum", "--scenario", "substitution",
                                "--angles", "0", "1.0471975511965976",
                                "2.0943951023931953", "--radians"])
        assert env["values"]["E"] == pytest.approx(-0.5, abs=1e-12)

    def test_csv_rejected_for_reports(self, capsys):
        assert main(["ebbi", "check", "--e", "1", "0", "0", "0",
                     "--format", "csv"]) == 2

    def test_csv_sample_dump(self, capsys):
        code = main(["factorizable", "--mu", "equal", "--angles", "10", "10",
                     "--samples", "50", "--seed", "1", "--format", "csv"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "s1,s2"
        assert len(out.splitlines()) == 51
