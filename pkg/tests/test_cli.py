import json

import pytest

from qro_app.cli import EXIT_INCOMPLETE, EXIT_OK, EXIT_USAGE, main
from qro_app.data import read_graph, write_graph
from qro_app.generators import directed_cycle, random_tournament, transitive_tournament


@pytest.fixture
def tt3_file(tmp_path):
    return write_graph(transitive_tournament(3), tmp_path / "tt3.poag")


@pytest.fixture
def c4_file(tmp_path):
    return write_graph(directed_cycle(4), tmp_path / "c4.poag")


def test_census(tt3_file, capsys):
    assert main(["census", str(tt3_file)]) == EXIT_OK
    assert "census (0, 0, 4, 14, 18)" in capsys.readouterr().out


def test_census_json(c4_file, capsys):
    assert main(["census", str(c4_file), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["hom_i"] == "8"
    assert data["quadruple_sum"] == "32"
    assert data["c_plus"] == "32"


def test_verify_passes_on_directed_cycle(c4_file, capsys):
    assert main(["verify", str(c4_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "failed" not in out
    assert "census: 8 hom_IV >= hom_C4" in out


def test_analyze_json(c4_file, capsys):
    assert main(["analyze", str(c4_file), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["schema_version"] == "qro-report/1"
    assert data["parameters"]["epsilon"] == {"num": "3", "den": "16"}


def test_heuristic_analysis_is_incomplete(tmp_path, capsys):
    path = write_graph(transitive_tournament(8), tmp_path / "tt8.poag")
    assert main(["verify", str(path), "--exact-limit", "6"]) == EXIT_INCOMPLETE
    assert "skipped" in capsys.readouterr().out


def test_duplicate_edge_is_rejected(tmp_path, capsys):
    path = tmp_path / "bad.poag"
    path.write_text("poag 1\nn 3\na 0 1\na 1 0\n")
    assert main(["census", str(path)]) == EXIT_USAGE
    assert "line 4" in capsys.readouterr().err


def test_unoriented_input_is_rejected(tmp_path, capsys):
    path = tmp_path / "mixed.poag"
    path.write_text("poag 1\nn 3\na 0 1\nu 1 2\n")
    assert main(["disc", str(path)]) == EXIT_USAGE
    assert "unoriented" in capsys.readouterr().err


def test_usage_errors(tt3_file, tmp_path, capsys):
    assert main(["census", str(tt3_file), "--bogus"]) == EXIT_USAGE
    assert main(["bias", str(tt3_file), "--nu", "3/2"]) == EXIT_USAGE
    assert main(["gen", "--model", "tournament", "--seed", "1", "-o", str(tmp_path / "x.poag")]) == EXIT_USAGE
    assert main(["census", str(tmp_path / "missing.poag")]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    capsys.readouterr()


def test_disc_json(tt3_file, capsys):
    assert main(["disc", str(tt3_file), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == "3"
    assert data["gamma"] == {"num": "1", "den": "3"}
    assert data["witness"] == {"A": [0, 1], "B": [1, 2]}
    assert data["exact"] is True


def test_disc_heuristic(c4_file, capsys):
    assert main(["disc", str(c4_file), "--heuristic", "--restarts", "4", "--seed", "7"]) == EXIT_OK
    assert "heuristic lower bound" in capsys.readouterr().out


def test_exact_cap_from_environment(c4_file, monkeypatch, capsys):
    monkeypatch.setenv("QRO_EXACT_DISC_LIMIT", "3")
    assert main(["disc", str(c4_file), "--exact"]) == EXIT_INCOMPLETE
    assert "incomplete" in capsys.readouterr().err


def test_bias(c4_file, capsys):
    assert main(["bias", str(c4_file), "--nu", "0", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == "2"
    assert main(["bias", str(c4_file), "--nu", "0.5"]) == EXIT_OK
    assert "(exact)" in capsys.readouterr().out


def test_hom(c4_file, tt3_file, capsys):
    assert main(["hom", "--pattern", str(c4_file), "--target", str(c4_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "hom = 4\n" in out
    assert "hom(underlying) = 32\n" in out
    assert "deviation = 2\n" in out
    assert main(["hom", "--pattern", str(c4_file), "--target", str(tt3_file), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["hom"] == "0"
    assert data["underlying_hom"] == "18"


def test_spectrum(c4_file, capsys):
    assert main(["spectrum", str(c4_file), "--full", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["full"] is True
    assert data["sum_lambda4"] == "32"
    assert data["magnitudes"] == pytest.approx([2.0, 2.0, 0.0, 0.0], abs=1e-9)


def test_gen_is_deterministic(tmp_path):
    first, second = tmp_path / "a.poag", tmp_path / "b.poag"
    for path in (first, second):
        assert main(["gen", "--model", "gnp-oriented", "--n", "12", "--p", "1/3", "--seed", "5", "-o", str(path)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_gen_models(c4_file, tmp_path):
    out = tmp_path / "t.poag"
    assert main(["gen", "--model", "tournament", "--n", "5", "--seed", "3", "-o", str(out)]) == EXIT_OK
    assert read_graph(out).e_oriented == 10

    out = tmp_path / "blowup.poag"
    assert main(["gen", "--model", "blowup", "--base", str(c4_file), "--m", "2", "--seed", "0", "-o", str(out)]) == EXIT_OK
    graph = read_graph(out)
    assert (graph.n, graph.e) == (8, 16)



def test_pattern_directory_adds_to_the_library(tmp_path, capsys):
    patterns = tmp_path / "patterns"
    patterns.mkdir()
    (patterns / "mixed.poag").write_text("poag 1\nn 4\na 0 1\nu 1 2\na 3 2\nu 0 3\n")
    (patterns / "relabelled.poag").write_text("poag 1\nn 4\na 0 2\na 2 1\na 1 3\na 3 0\n")
    (patterns / "path5.poag").write_text("poag 1\nn 5\na 0 1\na 2 1\na 2 3\nu 3 4\n")
    graph = write_graph(random_tournament(8, 0x59824C5A), tmp_path / "t8.poag")

    assert main(["analyze", str(graph), "--patterns", str(patterns), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    names = [row["name"] for row in data["patterns"]]
    assert {"mixed", "relabelled", "path5", "c4[><><]", "c4[<><>]"} <= set(names)
    assert len(names) == len(set(names)) == 56 + 3
    assert all(v["status"] == "passed" for v in data["verdicts"])
    rows = {row["name"]: row for row in data["patterns"]}
    assert rows["mixed"]["arcs"] == 2
    assert rows["path5"]["k"] == 5
