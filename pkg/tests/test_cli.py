import json

import pytest

from hiernet.cli import main
from hiernet.core import deserialize, validate

DEMO_TEXT = (
    "BHNET 1\n"
    "p=4 gamma=2 n=9\n"
    "L2: 3\n"
    "L1: 3 4 2\n"
    "B2.1: 100\n"
    "B1.1: 011\n"
    "B1.2: 100110\n"
    "B1.3: 1\n"
)


@pytest.fixture
def demo_file(tmp_path):
    path = tmp_path / "demo.bhnet"
    path.write_text(DEMO_TEXT)
    return path


def test_generate_writes_valid_file(tmp_path, capsys):
    out = tmp_path / "net.bhnet"
    rc = main(["generate", "--nodes", "30", "--p", "3", "--mu", "0.5",
               "--seed", "7", "--out", str(out)])
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("n=30 gamma=") and "edges=" in line
    model = deserialize(out.read_text())
    assert validate(model) == [] and model.shape.n == 30


def test_generate_regular_node_count(tmp_path, capsys):
    out = tmp_path / "reg.bhnet"
    rc = main(["generate", "--regular", "4", "--p", "3", "--mu", "0.1",
               "--seed", "7", "--out", str(out)])
    assert rc == 0
    assert deserialize(out.read_text()).shape.n == 81


def test_generate_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.bhnet", tmp_path / "b.bhnet"
    flags = ["--levels", "5", "--p", "4", "--mu", "0.7", "--seed", "123"]
    assert main(["generate", *flags, "--out", str(a)]) == 0
    assert main(["generate", *flags, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_usage_errors(tmp_path):
    out = str(tmp_path / "x.bhnet")
    # missing mode flag
    assert main(["generate", "--p", "3", "--mu", "0.5", "--seed", "1", "--out", out]) == 2
    # two mode flags at once
    assert main(["generate", "--nodes", "5", "--regular", "2", "--p", "3",
                 "--mu", "0.5", "--seed", "1", "--out", out]) == 2
    # bad parameter value
    assert main(["generate", "--nodes", "5", "--p", "1", "--mu", "0.5",
                 "--seed", "1", "--out", out]) == 2


def test_analyze_scalar_props(demo_file, capsys):
    rc = main(["analyze", "--input", str(demo_file), "--props", "edges,c3,c4,wedges"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"edges": 18, "c3": 17, "c4": 43, "wedges": 68}


def test_analyze_distributions(demo_file, capsys):
    rc = main(["analyze", "--input", str(demo_file),
               "--props", "degree-dist,distance-dist,components,diameter"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["degree-dist"] == {"1": 2, "4": 3, "5": 2, "6": 2}
    assert doc["distance-dist"] == {"1": 18, "2": 4, "unreachable": 14}
    assert doc["components"] == {"2": 1, "7": 1}
    assert doc["diameter"] == 2


def test_analyze_per_node(demo_file, capsys):
    rc = main(["analyze", "--input", str(demo_file), "--props",
               "degree,c3,clustering", "--node", "5"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["degree"] == 6 and doc["c3"] == 11
    assert doc["clustering"] == pytest.approx(22 / 30)


def test_analyze_csv_format(demo_file, capsys):
    rc = main(["analyze", "--input", str(demo_file), "--props", "edges,degree-dist",
               "--format", "csv"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "copy,property,value"
    assert lines[1] == "1,edges,18"
    assert lines[2] == "1,degree-dist,1:2;4:3;5:2;6:2"


def test_analyze_unknown_prop(demo_file):
    assert main(["analyze", "--input", str(demo_file), "--props", "edges,girth"]) == 2
    assert main(["analyze", "--input", str(demo_file), "--props", "edges",
                 "--node", "3"]) == 2


def test_analyze_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.bhnet"
    bad.write_text("BHNET 1\np=4 gamma=2 n=9\nL2: 5\n")
    rc = main(["analyze", "--input", str(bad), "--props", "edges"])
    assert rc == 1
    assert "line 3" in capsys.readouterr().err
    assert main(["analyze", "--input", str(tmp_path / "absent.bhnet"),
                 "--props", "edges"]) == 1


def test_export(demo_file, tmp_path, capsys):
    out = tmp_path / "edges.txt"
    rc = main(["export", "--input", str(demo_file), "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "edges=18"
    lines = out.read_text().splitlines()
    assert len(lines) == 18 and lines[0] == "1 3"


def test_export_cap(demo_file, tmp_path, capsys):
    rc = main(["export", "--input", str(demo_file), "--out",
               str(tmp_path / "e.txt"), "--cap", "5"])
    assert rc == 1
    assert "cap" in capsys.readouterr().err


def test_ensemble_json_report(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["ensemble", "--nodes", "25", "--p", "3", "--mu", "0.5", "--seed", "99",
               "--copies", "4", "--props", "edges,c3,degree-dist", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["copies"] == 4 and doc["seed"] == 99
    assert len(doc["results"]["edges"]) == 4
    assert set(doc["summary"]["edges"]) == {"mean", "std", "min", "max"}


def test_ensemble_csv_writes_summary_sidecar(tmp_path):
    out = tmp_path / "report.csv"
    args = ["ensemble", "--nodes", "25", "--p", "3", "--mu", "0.5", "--seed", "99",
            "--copies", "4", "--props", "edges,c4", "--format", "csv", "--out", str(out)]
    assert main(args) == 0
    assert out.read_text().splitlines()[0] == "copy,property,value"
    side = json.loads((tmp_path / "report.csv.summary.json").read_text())
    assert side["copies"] == 4 and "c4" in side["summary"]


def test_ensemble_reruns_are_byte_identical(tmp_path):
    outs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        main(["ensemble", "--levels", "4", "--p", "4", "--mu", "0.3", "--seed", "5",
              "--copies", "3", "--props", "edges,distance-dist", "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_ensemble_workers_flag_is_transparent(tmp_path):
    base = ["ensemble", "--nodes", "30", "--p", "3", "--mu", "0.4", "--seed", "8",
            "--copies", "6", "--props", "edges,c3"]
    o1, o2 = tmp_path / "w1.json", tmp_path / "w2.json"
    assert main([*base, "--out", str(o1)]) == 0
    assert main([*base, "--workers", "3", "--out", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()


def test_ensemble_unknown_prop():
    assert main(["ensemble", "--nodes", "10", "--p", "3", "--mu", "0.5", "--seed", "1",
                 "--copies", "2", "--props", "edges,girth"]) == 2


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert "hiernet" in capsys.readouterr().out
