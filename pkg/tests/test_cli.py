import json

import pytest

import eigencliques as ec
from eigencliques.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_graph(tmp_path, name, g):
    p = tmp_path / name
    ec.write_edge_list(g, str(p))
    return str(p)


def test_spectrum_k5(tmp_path, capsys):
    path = write_graph(tmp_path, "k5.txt", ec.complete(5))
    code, out, _ = run(capsys, "spectrum", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda_min"] == pytest.approx(-1.0, abs=1e-9)
    assert doc["main_inequality"]["verdict"] == "holds"
    assert doc["version"] == ec.__version__
    assert doc["config"]["command"] == "spectrum"


def test_spectrum_gnp_holds(tmp_path, capsys):
    path = write_graph(tmp_path, "g.txt", ec.gnp(100, 0.5, 9))
    code, out, _ = run(capsys, "spectrum", "--input", path)
    assert code == 0
    assert json.loads(out)["main_inequality"]["verdict"] == "holds"


def test_spectrum_empty_file(tmp_path, capsys):
    p = tmp_path / "empty.txt"
    p.write_text("")
    code, _, err = run(capsys, "spectrum", "--input", str(p))
    assert code == 1
    assert "line 1" in err


def test_reports_byte_identical(tmp_path):
    path = write_graph(tmp_path, "g.txt", ec.gnp(30, 0.4, 2))
    out = tmp_path / "a.json"
    assert main(["spectrum", "--input", path, "--output", str(out)]) == 0
    first = out.read_bytes()
    assert main(["spectrum", "--input", path, "--output", str(out)]) == 0
    assert out.read_bytes() == first


def test_clique_planted(tmp_path, capsys):
    path = write_graph(tmp_path, "cu.txt", ec.clique_union([16, 16, 16]))
    code, out, _ = run(capsys, "clique", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 16 and doc["verified"]
    assert doc["phases"][0]["phase"] in (0, 1)


def test_clique_edgeless(tmp_path, capsys):
    path = write_graph(tmp_path, "e.txt", ec.from_edge_list(10, []))
    code, out, _ = run(capsys, "clique", "--input", path)
    assert code == 0
    assert json.loads(out)["clique"] == [0]


def test_chowla_singleton(capsys):
    code, out, _ = run(capsys, "chowla", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda_min"] == pytest.approx(-1.618, abs=1e-3)


def test_chowla_pair_value(capsys):
    code, out, _ = run(capsys, "chowla", "1,2")
    assert code == 0
    assert json.loads(out)["grid_min"]["f"] == pytest.approx(-1.125, abs=1e-9)


def test_chowla_rejects_nonpositive(capsys):
    code, _, err = run(capsys, "chowla", "0,1")
    assert code == 1
    assert "positive" in err


def test_exit_code_two_on_failed_verification(capsys):
    # tol 0 makes the (tiny) residual a verdict failure: computation fine, check red
    code, out, _ = run(capsys, "chowla", "1,2", "--tol", "0")
    assert code == 2
    assert json.loads(out)["residual"] > 0


def test_maxcut(tmp_path, capsys):
    path = write_graph(tmp_path, "c5.txt", ec.cycle(5))
    code, out, _ = run(capsys, "maxcut", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 4 and doc["surplus"] == pytest.approx(1.5)


def test_decompose(tmp_path, capsys):
    path = write_graph(tmp_path, "cu.txt", ec.clique_union([8, 5]))
    code, out, _ = run(capsys, "decompose", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["edit_distance"] == 0 and doc["cherries"] == 0


def test_bisect(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", ec.cycle(4))
    code, out, _ = run(capsys, "bisect", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["bw"] == 2
    assert doc["dfc"] == pytest.approx(2 / 3)
    assert doc["disc_plus"] == pytest.approx(1 / 3)


def test_gen_roundtrip(tmp_path, capsys):
    out = tmp_path / "gen.txt"
    code, _, _ = run(capsys, "gen", "--params", "family=Gnp,n=20,p=0.5", "--seed", "3", "--output", str(out))
    assert code == 0
    assert ec.read_edge_list(str(out)) == ec.gnp(20, 0.5, 3)
    code, _, _ = run(capsys, "gen", "--params", "family=CliqueUnion,sizes=3:2", "--output", str(tmp_path / "cu.txt"))
    assert code == 0
    assert ec.read_edge_list(str(tmp_path / "cu.txt")) == ec.clique_union([3, 2])


def test_unknown_param_rejected(tmp_path, capsys):
    path = write_graph(tmp_path, "g.txt", ec.cycle(4))
    code, _, err = run(capsys, "maxcut", "--input", path, "--params", "bogus=1")
    assert code == 1
    assert "unknown parameter" in err


def test_text_format(tmp_path, capsys):
    path = write_graph(tmp_path, "g.txt", ec.cycle(4))
    code, out, _ = run(capsys, "maxcut", "--input", path, "--format", "text")
    assert code == 0
    assert "value = 4" in out


def test_missing_input(capsys):
    code, _, err = run(capsys, "maxcut")
    assert code == 1 and "requires --input" in err


@pytest.mark.parametrize(
    "command,graph,golden",
    [
        ("maxcut", ec.cycle(5), "maxcut_c5.json"),
        ("decompose", ec.clique_union([5, 3]), "decompose_cu53.json"),
    ],
)
def test_golden_reports(tmp_path, command, graph, golden):
    from pathlib import Path

    path = write_graph(tmp_path, "g.txt", graph)
    out = tmp_path / "out.json"
    assert main([command, "--input", path, "--output", str(out)]) == 0
    text = out.read_text().replace(path, "GRAPH").replace(str(out), "OUT")
    expected = (Path(__file__).parent / "golden" / golden).read_text()
    assert text == expected
