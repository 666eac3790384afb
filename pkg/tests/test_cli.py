import json

import pytest
from gmpy2 import mpq

from exact_sumset.algebra import parse_rational
from exact_sumset.cli import main

FAST = ["--restriction-constant", "6"]


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "A": write(tmp_path, "A.txt", "0\n1\n"),
        "B": write(tmp_path, "B.txt", "# a comment\n0 2\n"),
        "F": write(tmp_path, "F.txt", "0 2\n1 1/2\n"),
        "G": write(tmp_path, "G.txt", "5 3\n"),
        "X": write(tmp_path, "X.txt", "1 2 4\n"),
    }


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSubcommands:
    def test_sumset(self, capsys, files):
        code, out, _ = run(capsys, FAST + ["sumset", files["A"], files["B"]])
        assert code == 0
        assert out == "0\n1\n2\n3\n"

    def test_size(self, capsys, files):
        code, out, _ = run(capsys, ["size", files["A"], files["B"]])
        assert (code, out) == (0, "4\n")

    def test_convolve(self, capsys, files):
        code, out, _ = run(capsys, FAST + ["convolve", files["F"], files["G"]])
        assert code == 0
        assert out == "5 6\n6 3/2\n"

    def test_constellation(self, capsys, tmp_path):
        a = write(tmp_path, "ca.txt", "0 1\n")
        b = write(tmp_path, "cb.txt", "0 1 2 5 6\n")
        code, out, _ = run(capsys, ["constellation", a, b])
        assert (code, out) == (0, "0\n1\n5\n")

    def test_prefix_and_interval(self, capsys, files):
        code, out, _ = run(capsys, FAST + ["prefix", files["A"], files["B"],
                                           "--max", "2"])
        assert (code, out) == (0, "0\n1\n2\n")
        code, out, _ = run(capsys, FAST + ["interval", files["A"], files["B"],
                                           "--min", "1", "--max", "5/2"])
        assert (code, out) == (0, "1\n2\n")

    def test_subsetsum(self, capsys, files):
        code, out, _ = run(capsys, FAST + ["subsetsum", files["X"],
                                           "--target", "5",
                                           "--boost-exponent", "3"])
        assert (code, out) == (0, "0\n1\n2\n3\n4\n5\n")
        code, out, _ = run(capsys, FAST + ["subsetsum", files["X"]])
        assert (code, out) == (0, "0\n1\n2\n3\n4\n5\n6\n7\n")

    def test_threesum(self, capsys, tmp_path, files):
        c = write(tmp_path, "C.txt", "3\n")
        code, out, _ = run(capsys, FAST + ["threesum", files["A"], files["B"], c,
                                           "--query", files["A"], files["B"], c])
        assert (code, out) == (0, "true\n")

    def test_bench_micro(self, capsys):
        code, out, _ = run(capsys, FAST + ["bench", "micro", "--sizes", "4,8"])
        assert code == 0 and "minpoly" in out


class TestOutputContracts:
    def test_byte_identical_for_fixed_seed(self, capsys, files):
        runs = [run(capsys, FAST + ["--seed", "5", "sumset",
                                    files["A"], files["B"]])
                for _ in range(2)]
        assert runs[0] == runs[1]

    def test_round_trip(self, capsys, files):
        _, out, _ = run(capsys, FAST + ["sumset", files["A"], files["B"]])
        values = [parse_rational(line) for line in out.splitlines()]
        assert values == [0, 1, 2, 3]

    def test_json_format(self, capsys, files):
        code, out, err = run(capsys, FAST + ["--format", "json", "--stats",
                                             "sumset", files["A"], files["B"]])
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["values"] == ["0", "1", "2", "3"]
        assert payload["report"]["operation"] == "sumset"
        assert payload["report"]["output_size"] == 4
        assert payload["report"]["seed"] == 0
        assert "retries" in err

    def test_env_seed(self, capsys, files, monkeypatch):
        monkeypatch.setenv("EXACT_SUMSET_SEED", "123")
        _, _, err = run(capsys, FAST + ["--stats", "sumset",
                                        files["A"], files["B"]])
        assert "seed: 123" in err

    def test_canonical_rationals(self, capsys, tmp_path):
        a = write(tmp_path, "ra.txt", "1/2 0.25\n")
        b = write(tmp_path, "rb.txt", "1/4\n")
        _, out, _ = run(capsys, FAST + ["sumset", a, b])
        assert out == "1/2\n3/4\n"


class TestExitCodes:
    def test_parse_error_names_file_and_line(self, capsys, tmp_path, files):
        bad = write(tmp_path, "bad.txt", "1\nxyz\n")
        code, _, err = run(capsys, ["sumset", bad, files["A"]])
        assert code == 2
        assert "bad.txt:2" in err

    def test_contract_violation(self, capsys, tmp_path):
        neg = write(tmp_path, "neg.txt", "-1 2\n")
        code, _, err = run(capsys, FAST + ["subsetsum", neg])
        assert code == 3
        assert "contract" in err

    def test_bad_convolve_values(self, capsys, tmp_path, files):
        negf = write(tmp_path, "negf.txt", "0 -2\n")
        code, _, _ = run(capsys, FAST + ["convolve", negf, files["G"]])
        assert code == 3
