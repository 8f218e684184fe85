import json

import pytest
from click.testing import CliRunner

from pathnum.cli import main
from pathnum.core import parse_digraph, serialize_digraph
from pathnum.random_regular import gen_d0


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


DAG = "4 4\n0 1\n0 2\n1 3\n2 3\n"
K4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
TRIANGLE = "3 3\n0 1\n1 2\n2 0\n"


class TestDecompose:
    def test_dag_exit_zero(self, runner, tmp_path):
        result = runner.invoke(main, ["decompose", write(tmp_path, "g.txt", DAG)])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["verified"] is True
        assert len(payload["paths"]) == payload["excess"] == 2

    def test_gadget_rejected_in_no_zero_mode(self, runner, tmp_path):
        path = write(tmp_path, "d0.txt", serialize_digraph(gen_d0()))
        result = runner.invoke(main, ["decompose", path, "--mode", "no-zero"])
        assert result.exit_code == 3

    def test_parse_error_has_line(self, runner, tmp_path):
        result = runner.invoke(main, ["decompose", write(tmp_path, "bad.txt", "2 1\n0 0\n")])
        assert result.exit_code == 3
        assert "line 2" in result.output

    def test_failure_exit_two(self, runner, tmp_path):
        # Two directed triangles sharing a vertex, padded to kill zeros.
        edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
        pad = [(v, 5 + v) for v in range(5)]
        text = "10 11\n" + "".join(f"{u} {v}\n" for u, v in edges + pad)
        result = runner.invoke(
            main, ["decompose", write(tmp_path, "g.txt", text), "--mode", "discrete", "-p", "3"]
        )
        assert result.exit_code == 2
        payload = json.loads(result.output)
        assert payload["stage"] == "discreteness"
        assert "config" in payload and payload["config"]["retries"] == 32

    def test_determinism(self, runner, tmp_path):
        args = None
        out = []
        path = write(tmp_path, "g.txt", "20 20\n" + "".join(
            f"{i} {(i + 1) % 20}\n" for i in range(20)
        ))
        # A directed 20-cycle has excess zero, so use auto on a DAG instead.
        path = write(tmp_path, "h.txt", DAG)
        for _ in range(2):
            result = runner.invoke(main, ["decompose", path, "--seed", "5"])
            out.append(result.output)
        assert out[0] == out[1]

    def test_undirected_orientation(self, runner, tmp_path):
        path = write(tmp_path, "g.txt", "2 1\n0 1\n")
        result = runner.invoke(main, ["decompose", path, "--undirected", "--seed", "1"])
        assert result.exit_code == 0

    def test_verify_only(self, runner, tmp_path):
        result = runner.invoke(
            main, ["decompose", write(tmp_path, "g.txt", DAG), "--verify-only"]
        )
        assert result.exit_code == 0
        assert "verdict: perfect" in result.output


class TestExactAndScan:
    def test_exact_gadget_line(self, runner, tmp_path):
        path = write(tmp_path, "d0.txt", serialize_digraph(gen_d0()))
        result = runner.invoke(main, ["exact-pn", path])
        assert result.exit_code == 0
        assert result.output.strip() == "pn=4 ex=2 consistent=false"

    def test_exact_budget_exit(self, runner, tmp_path):
        edges = [(u, v) for u in range(6) for v in range(6) if u != v]
        text = f"6 {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges)
        result = runner.invoke(main, ["exact-pn", write(tmp_path, "big.txt", text)])
        assert result.exit_code == 4

    def test_scan_k4(self, runner, tmp_path):
        result = runner.invoke(main, ["scan-orientations", write(tmp_path, "k4.txt", K4)])
        assert result.exit_code == 0
        assert "strongly_consistent=true" in result.output

    def test_scan_triangle_witness(self, runner, tmp_path):
        result = runner.invoke(main, ["scan-orientations", write(tmp_path, "k3.txt", TRIANGLE)])
        assert "strongly_consistent=false" in result.output
        witness = parse_digraph("\n".join(result.output.splitlines()[2:]))
        assert witness.m == 3


class TestCheck:
    def test_good_decomposition(self, runner, tmp_path):
        g = write(tmp_path, "g.txt", DAG)
        dec = write(tmp_path, "dec.json", json.dumps(
            {"paths": [[0, 1, 3], [0, 2, 3]], "excess": 2, "verified": True}
        ))
        result = runner.invoke(main, ["check", g, dec])
        assert result.exit_code == 0
        assert "verdict: perfect" in result.output

    def test_tampered_decomposition(self, runner, tmp_path):
        g = write(tmp_path, "g.txt", DAG)
        dec = write(tmp_path, "dec.json", json.dumps(
            {"paths": [[0, 1, 3]], "excess": 2, "verified": True}
        ))
        result = runner.invoke(main, ["check", g, dec])
        assert result.exit_code == 2
        assert "missing edges" in result.output
        assert "(0, 2)" in result.output


class TestGenerators:
    def test_gen_d0_roundtrip(self, runner):
        result = runner.invoke(main, ["gen", "d0"])
        assert result.exit_code == 0
        assert parse_digraph(result.output) == gen_d0()

    def test_gen_regular_simple(self, runner):
        result = runner.invoke(main, ["gen", "regular", "-n", "10", "-d", "3",
                                      "--seed", "2", "--simple"])
        assert result.exit_code == 0
        assert "10 15" in result.output

    def test_gen_regular_odd_product(self, runner):
        result = runner.invoke(main, ["gen", "regular", "-n", "3", "-d", "3"])
        assert result.exit_code == 3

    def test_gen_counterexample_metadata(self, runner):
        result = runner.invoke(main, ["gen", "counterexample", "-k", "2"])
        assert result.exit_code == 0
        assert "# pn_lower_bound=31" in result.output
        assert "# excess=25" in result.output
        D = parse_digraph(result.output)
        assert D.n == 50

    def test_stats_cycles_json(self, runner):
        result = runner.invoke(main, ["stats", "cycles", "-n", "30", "-d", "3",
                                      "--max-len", "4", "--samples", "3", "--seed", "1"])
        assert result.exit_code == 0
        table = json.loads(result.output)
        assert table["3"]["theoretical_mean"] == pytest.approx(4 / 3)

    def test_discrete_check_exit_codes(self, runner, tmp_path):
        good = write(tmp_path, "forest.txt", "4 3\n0 1\n1 2\n2 3\n")
        result = runner.invoke(main, ["discrete-check", good, "-p", "3"])
        assert result.exit_code == 0
        shared = write(
            tmp_path, "shared.txt",
            "5 6\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n",
        )
        result = runner.invoke(main, ["discrete-check", shared, "-p", "3"])
        assert result.exit_code == 2
        assert json.loads(result.output)["disjoint_ok"] is False


class TestExperimentAndManifest:
    def test_experiment_table(self, runner):
        result = runner.invoke(main, ["experiment", "--n", "20", "--d", "3",
                                      "--samples", "5", "--seed", "3"])
        assert result.exit_code == 0
        assert "success" in result.output.splitlines()[0]

    def test_even_degree_warning(self, runner):
        result = runner.invoke(main, ["experiment", "--n", "10", "--d", "2",
                                      "--samples", "2", "--seed", "3"])
        assert "warning" in result.output

    def test_manifest_logging(self, runner, tmp_path):
        log = tmp_path / "runs.jsonl"
        g = write(tmp_path, "g.txt", DAG)
        runner.invoke(main, ["--log", str(log), "decompose", g])
        runner.invoke(main, ["--log", str(log), "exact-pn", g])
        lines = log.read_text().splitlines()
        assert len(lines) == 2
        records = [json.loads(line) for line in lines]
        assert records[0]["outcome"] == "success"
        assert records[0]["input_digest"] == records[1]["input_digest"]
        assert all("wall_time_s" in r and "command" in r for r in records)
