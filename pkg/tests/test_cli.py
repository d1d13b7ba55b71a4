import json

import pytest

from hatsim.cli import main
from hatsim import profile_to_dict
from hatsim.sweeps import preset_profiles


@pytest.fixture()
def nm_file(tmp_path):
    path = tmp_path / "nm.json"
    path.write_text(json.dumps(profile_to_dict(preset_profiles()["NM"])))
    return str(path)


class TestSimulate:
    def test_deterministic_report_file(self, tmp_path, nm_file):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        for out in (out1, out2):
            code = main(["simulate", "--home", nm_file, "--away", nm_file,
                         "--trials", "500", "--seed", "42", "--out", str(out)])
            assert code == 0
        assert out1.read_text() == out2.read_text()
        doc = json.loads(out1.read_text())
        assert doc["seed"] == 42 and doc["trials"] == 500

    def test_missing_file_is_io_error(self, tmp_path, nm_file):
        code = main(["simulate", "--home", str(tmp_path / "nope.json"),
                     "--away", nm_file, "--trials", "10"])
        assert code == 2

    def test_invalid_profile_is_validation_error(self, tmp_path, nm_file):
        bad = tmp_path / "bad.json"
        doc = json.loads(open(nm_file).read())
        doc["midfield"] = 0
        bad.write_text(json.dumps(doc))
        code = main(["simulate", "--home", str(bad), "--away", nm_file,
                     "--trials", "10"])
        assert code == 1

    def test_unknown_flag_exits_one(self, nm_file, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["simulate", "--home", nm_file, "--away", nm_file, "--frobnicate"])
        assert exc.value.code == 1

    def test_preset_flag(self, tmp_path, nm_file):
        out = tmp_path / "r.json"
        code = main(["simulate", "--home", nm_file, "--away", nm_file,
                     "--trials", "200", "--seed", "1", "--preset", "kb-regression",
                     "--out", str(out)])
        assert code == 0

    def test_override_flag(self, tmp_path, nm_file):
        code = main(["simulate", "--home", nm_file, "--away", nm_file,
                     "--trials", "10", "--override", "pk_score=2.0",
                     "--out", str(tmp_path / "r.json")])
        assert code == 1


class TestSweep:
    def test_csv_output(self, tmp_path, nm_file):
        spec = {
            "base_home": json.loads(open(nm_file).read()),
            "base_away": json.loads(open(nm_file).read()),
            "vary": "midfield", "points": [14, 16],
            "trials_per_point": 200, "seed": 3,
        }
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(spec))
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--spec", str(spec_path), "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "value,p_win,p_draw,p_lose,mean_total_goals"
        assert len(lines) == 3


class TestDataAndLearning:
    def test_gen_learn_score_round_trip(self, tmp_path):
        data = tmp_path / "d.csv"
        assert main(["gen-data", "--n", "60", "--seed", "5",
                     "--out", str(data)]) == 0
        graph = tmp_path / "g.json"
        assert main(["learn", "--data", str(data), "--algo", "tabu",
                     "--max-indegree", "2", "--out", str(graph)]) == 0
        doc = json.loads(graph.read_text())
        assert "nodes" in doc and "edges" in doc and "bic" in doc

    def test_score_graph_output(self, tmp_path, capsys):
        g = {"nodes": ["A", "B"], "edges": [["A", "B"]], "undirected": []}
        for name in ("learned.json", "truth.json"):
            (tmp_path / name).write_text(json.dumps(g))
        code = main(["score-graph", "--learned", str(tmp_path / "learned.json"),
                     "--truth", str(tmp_path / "truth.json")])
        assert code == 0
        out = capsys.readouterr().out
        assert "F1  1.0000" in out and "BSF 1.0000" in out and "SHD 0.0" in out

    def test_score_forecasts(self, tmp_path, capsys):
        csv_path = tmp_path / "f.csv"
        csv_path.write_text("1,0,0,H\n0.75,0.25,0,H\n")
        assert main(["score-forecasts", "--csv", str(csv_path)]) == 0
        out = capsys.readouterr().out
        assert "mean RPS 0.01562" in out  # (0 + 0.03125) / 2

    def test_gen_data_with_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"columns": ["ratings", "hda"], "rating_bins": 3}))
        out = tmp_path / "d.csv"
        assert main(["gen-data", "--n", "10", "--seed", "2", "--config",
                     str(cfg), "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert "hda" in header and "home_midfield" in header
        assert "home_tactic" not in header
