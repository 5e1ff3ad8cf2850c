import json

import pytest

from src.cli import EXIT_BAD_ARGS, EXIT_OK, EXIT_VERIFY_FAILED, main
from src.estimate import COLUMNS


@pytest.fixture
def path_file(tmp_path):
    path = tmp_path / "path10.txt"
    assert main(["gen", "--kind", "path", "--n", "10", "--out", str(path)]) == EXIT_OK
    return path


class TestGenAndOracle:
    def test_oracle_on_path(self, tmp_path, capsys):
        path = tmp_path / "path5.txt"
        assert main(["gen", "--kind", "path", "--n", "5", "--out", str(path)]) == EXIT_OK
        assert "wrote metric n=5" in capsys.readouterr().out
        assert main(["oracle", str(path)]) == EXIT_OK
        lines = capsys.readouterr().out.split()
        assert lines == ["n=5", "violations=0", "mst=4", "tsp=8"]

    def test_default_output_name(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["gen", "--kind", "star", "--n", "6"]) == EXIT_OK
        assert (tmp_path / "star-n6.txt").exists()

    def test_oracle_on_graph(self, tmp_path):
        path = tmp_path / "graph.txt"
        out = tmp_path / "oracle.txt"
        assert main(["gen", "--kind", "graph", "--n", "8", "--seed", "3", "--out", str(path)]) == EXIT_OK
        assert main(["oracle", str(path), "--out", str(out)]) == EXIT_OK
        values = dict(line.split("=", 1) for line in out.read_text().split())
        assert values["connected"] == "True"
        assert values["mst_stream"] == values["mst"]

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("metric 3\n1\nx y\n")
        assert main(["oracle", str(path)]) == EXIT_BAD_ARGS

    def test_missing_file(self, tmp_path):
        assert main(["oracle", str(tmp_path / "absent.txt")]) == EXIT_BAD_ARGS

    def test_bad_config_file(self, tmp_path, path_file):
        config = tmp_path / "run.conf"
        config.write_text("profile = fast\n")
        assert main(["oracle", str(path_file), "--config", str(config)]) == EXIT_BAD_ARGS


class TestRunCommands:
    def test_query_g1_text(self, path_file, capsys):
        assert main(["run-query-g1", str(path_file)]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert "value=20.0" in lines
        assert "branch=degree1" in lines

    def test_query_g1_csv(self, path_file, tmp_path):
        out = tmp_path / "g1.csv"
        assert main(["run-query-g1", str(path_file), "--format", "csv", "--out", str(out)]) == EXIT_OK
        header, row = out.read_text().strip().splitlines()
        assert header.split(",") == COLUMNS
        assert row.startswith("path10,10,g1-connected,desk,")

    def test_stream_mst(self, path_file, capsys):
        assert main(["run-stream-mst", str(path_file), "--alpha", "2", "--order", "ascending"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert "branch=onepass" in lines
        assert "passes=1" in lines
        value = float(lines[0].split("=", 1)[1])
        assert value >= 9

    def test_stream_tsp_on_metric(self, path_file, capsys):
        assert main(["run-stream-tsp", str(path_file)]) == EXIT_OK
        assert "passes=2" in capsys.readouterr().out.splitlines()


class TestBenchAndVerify:
    def test_bench_to_file(self, tmp_path):
        out = tmp_path / "families.csv"
        assert main(["bench", "lowerbound-families", "--seeds", "2", "--out", str(out)]) == EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[0].split(",") == COLUMNS
        assert len(lines) == 11

    def test_verify_detects_injected_fault(self, capsys):
        code = main(["verify", "--suite", "single_edge_adv", "--seeds", "3", "--inject", "flip-adv-sign"])
        assert code == EXIT_VERIFY_FAILED
        out = capsys.readouterr().out
        assert "single_edge_adv: FAIL" in out
        assert "suite=single_edge_adv seed=" in out

    def test_verify_passes(self, tmp_path):
        out = tmp_path / "verify.json"
        code = main(["verify", "--suite", "cover_expectation", "--seeds", "3", "--out", str(out)])
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["passed"] is True
        assert [s["name"] for s in report["suites"]] == ["cover_expectation"]
