import json

import pytest

from mkdv_cells.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestGenerate:
    def test_symbolic(self, capsys):
        code, doc = run(capsys, "generate", "--n", "2", "--J", "1,2")
        assert code == 0
        assert doc["y"] == ["1", "x + c1", "x^3 + 3*c1*x^2 + 3*c1^2*x + c2"]
        assert doc["eps"] == [-1, -3]

    def test_specialized(self, capsys):
        code, doc = run(capsys, "generate", "--n", "2", "--J", "1",
                        "--c", "1/2")
        assert code == 0
        assert doc["c"] == ["1/2"]
        assert doc["y"][1] == "x + 1/2"

    def test_bad_word_exits_nonzero(self, capsys):
        code, doc = run(capsys, "generate", "--n", "2", "--J", "1,1")
        assert code == 1
        assert doc["error"] == "NotDegreeIncreasingError"


class TestVerifyCritical:
    def test_reports_residuals(self, capsys):
        code, doc = run(capsys, "verify-critical", "--n", "2", "--J", "1,2",
                        "--c", "2/5,-1/3")
        assert code == 0
        assert doc["fertile"] == [True, True, True]
        assert doc["max_residual"] < 1e-8
        assert len(doc["residuals"]) == sum(doc["k"])


class TestMiura:
    def test_symbolic(self, capsys):
        code, doc = run(capsys, "miura", "--n", "2", "--J", "1")
        assert code == 0
        assert doc["v"] == ["(1)/(x + c1)", "(-1)/(x + c1)"]

    def test_specialized(self, capsys):
        code, doc = run(capsys, "miura", "--n", "2", "--J", "1",
                        "--c", "1/2")
        assert code == 0
        assert doc["v"] == ["(1)/(x + 1/2)", "(-1)/(x + 1/2)"]


class TestFlow:
    def test_field_values(self, capsys):
        code, doc = run(capsys, "flow", "--n", "2", "--J", "1", "--r", "1",
                        "--c", "1/2")
        assert code == 0
        assert len(doc["field"]) == 4
        assert any(v != "0" for v in doc["field"])

    def test_even_index_gives_zero_field(self, capsys):
        code, doc = run(capsys, "flow", "--n", "2", "--J", "1", "--r", "2",
                        "--c", "1/2")
        assert code == 0
        assert doc["field"] == ["0", "0", "0", "0"]

    def test_nonpositive_index_rejected(self, capsys):
        code, doc = run(capsys, "flow", "--n", "2", "--J", "1", "--r", "0",
                        "--c", "1/2")
        assert code == 1
        assert doc["error"] == "ValueError"


class TestCheckFlows:
    def test_single_parameter_first_flow(self, capsys):
        code, doc = run(capsys, "check-flows", "--n", "2", "--J", "1",
                        "--r", "1", "--samples", "3")
        assert code == 0
        assert doc["gamma"] == ["-1"]
        assert doc["verified"] and not doc["zero_field"]

    def test_vanishing_branch(self, capsys):
        code, doc = run(capsys, "check-flows", "--n", "2", "--J", "1",
                        "--r", "3", "--samples", "3")
        assert code == 0
        assert doc["zero_field"]


class TestKdvCheck:
    def test_match(self, capsys):
        code, doc = run(capsys, "kdv-check", "--n", "2", "--J", "1",
                        "--r", "1", "--i", "1", "--c", "3/7")
        assert code == 0
        assert doc["match"]
        assert doc["scalar_flow"]["order"] == 2

    def test_cut_out_of_range(self, capsys):
        code, doc = run(capsys, "kdv-check", "--n", "2", "--J", "1",
                        "--r", "1", "--i", "9", "--c", "3/7")
        assert code == 1
        assert doc["error"] == "ValueError"


class TestDumpMatrices:
    def test_lambda(self, capsys):
        code, doc = run(capsys, "dump-matrices", "--n", "1",
                        "--what", "lambda")
        assert code == 0
        assert doc["matrix"]["size"] == 2
        assert len(doc["matrix"]["cells"]) == 2

    def test_generators(self, capsys):
        code, doc = run(capsys, "dump-matrices", "--n", "2",
                        "--what", "generators")
        assert code == 0
        assert set(doc["generators"]) == {"e", "f", "h"}
        assert len(doc["generators"]["e"]) == 3


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
