import io
import subprocess
import sys

import pytest

from hullprep.cli import main
from hullprep.harness.bench import CSV_FIELDS, parse_csv


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_reduce_on_generator():
    code, text = run("reduce", "--generator", "uniform-box", "--n", "200000", "--p", "500")
    assert code == 0
    fields = dict(line.split() for line in text.splitlines())
    assert int(fields["n"]) == 200000
    assert int(fields["s"]) <= 1000
    assert float(fields["reduction_pct"]) >= 0.995


def test_reduce_dump_array(tmp_path):
    path = tmp_path / "pts.txt"
    path.write_text("1 1\n1 4\n3 2\n3 5\n5 2\n5 3\n1 2\n")
    code, text = run("reduce", "--input", str(path), "--dump-array")
    assert code == 0
    assert text.splitlines()[3:] == ["1 1 4", "2 6 -1", "3 2 5", "4 6 -1", "5 2 3"]


@pytest.mark.parametrize("method", ["none", "at", "tztm"])
def test_reduce_other_methods(method):
    code, text = run("reduce", "--generator", "disc", "--n", "5000", "--method", method)
    assert code == 0 and text.startswith("n 5000\n")


def test_hull_matches_across_algorithms(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text("# square\n0,0\n4,0\n4,4\n0,4\n2,2\n")
    outputs = set()
    for algo in ("quickhull", "graham", "jarvis", "melkman"):
        code, text = run("hull", "--input", str(path), "--algo", algo)
        assert code == 0
        outputs.add(text)
    assert outputs == {"0 0\n4 0\n4 4\n0 4\n"}


def test_melkman_needs_proposed(tmp_path):
    code, _ = run("hull", "--generator", "disc", "--n", "100", "--method", "at", "--algo", "melkman")
    assert code == 1


def test_bad_input_reports_failure(tmp_path, caplog):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n3 four\n")
    code, _ = run("reduce", "--input", str(path))
    assert code == 1
    assert "line 2" in caplog.text


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, text = run("bench", "--generator", "uniform-density", "--density", "0.4",
                     "--n", "5000", "10000", "--method", "none", "proposed", "at",
                     "--algo", "quickhull", "melkman", "--reps", "1",
                     "--output", str(out), "--report")
    assert code == 0 and text == ""
    records = parse_csv(out.read_text())
    assert out.read_text().splitlines()[0] == ",".join(CSV_FIELDS)
    # none and at skip melkman: 2 sizes x (1 + 2 + 1)
    assert len(records) == 8
    assert "reduction time vs n" in capsys.readouterr().err


def test_extract_bench_stdout():
    code, text = run("extract-bench", "--p", "4096", "--densities", "5", "85", "--w", "32")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("p,density") and len(lines) == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hullprep.cli", "reduce", "--generator", "circle",
                           "--n", "40"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "s 40" in proc.stdout


def test_missing_source_is_usage_error():
    with pytest.raises(SystemExit):
        main(["reduce"])
