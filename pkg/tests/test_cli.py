import io
import json
import subprocess
import sys

import pytest

from pmcoh.cli import run
from pmcoh.planar_map import format_diagram, generate_family, parse_diagram


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bracket_theta():
    assert call("bracket", "--family", "theta") == (0, "z^-2 + 1\n", "")


def test_bracket_variants():
    assert call("bracket", "--family", "dumbbell", "--two-factor")[1] == "z^-1 - 1 + z - z^2\n"
    assert call("bracket", "--family", "theta", "--four-color") == (0, "z^-2 + 2z^-1 + 2 + z\n", "")
    assert call("bracket", "--family", "theta", "--general", "1", "-z", "z^-1 + z")[1] == "z^-2 + 1\n"
    assert call("bracket", "--family", "theta", "--normalize")[1] == "z^-1\n"


def test_bracket_json_schema():
    code, out, _ = call("bracket", "--family", "K4", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"schemaVersion": 1, "polynomial": [[-1, 1], [0, -1], [1, 1], [4, 1]]}


def test_cohomology_k4_grid():
    code, out, _ = call("cohomology", "--family", "K4")
    assert code == 0
    assert out.splitlines()[0].split() == ["j\\i", "0", "1", "2"]
    rows = {int(line.split()[0]): line.split()[1:] for line in out.splitlines()[1:]}
    assert rows[4] == [".", ".", "1"] and rows[-1] == ["1", ".", "."]


def test_cohomology_json_and_tsv():
    obj = json.loads(call("cohomology", "--family", "theta", "--format", "json")[1])
    assert obj["schemaVersion"] == 1
    assert obj["cohomology"] == [{"i": 0, "j": -2, "dim": 1}, {"i": 0, "j": 0, "dim": 1}]
    assert call("cohomology", "--family", "theta", "--format", "tsv")[1].startswith("i\tj\tdim\n")


def test_tait_per_matching():
    code, out, _ = call("tait", "--family", "theta", "--per-matching", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["polynomial"] == [[-2, 3], [0, 3]] and len(obj["perMatching"]) == 3


def test_hypercube_dump():
    code, out, _ = call("hypercube", "--family", "K4", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and len(obj["states"]) == 4 and len(obj["edges"]) == 4
    assert sorted(e["kind"] for e in obj["edges"]) == ["cross", "cross", "split", "split"]
    text = call("hypercube", "--family", "K4")[1]
    assert text.startswith("matching order: s1 t2\nstate 00: k = 1\n") and "10 -> 11: split" in text


def test_flip_prints_valid_graph():
    code, out, _ = call("flip", "--family", "theta", "--m", "2", "--inside", "u1,v1")
    assert code == 0
    flipped = parse_diagram(out)
    assert flipped != generate_family("theta", 2)


def test_oracles():
    found = json.loads(call("oracle", "matchings", "--family", "prism-L", "--m", "3", "--format", "json")[1])
    assert found["count"] == 4 and ["r1", "r2", "r3"] in found["matchings"]
    assert json.loads(call("oracle", "two-factors", "--family", "prism-L", "--m", "4", "--format", "json")[1])["count"] == 4
    assert call("oracle", "tait-colorings", "--family", "K4")[1] == "count: 6\n"
    assert call("oracle", "even", "--family", "prism-L", "--m", "3")[1] == "even: false\n"


def test_input_file_and_stdin(data_dir, monkeypatch):
    assert call("bracket", "--input", str(data_dir / "theta.graph"))[1] == "z^-2 + 1\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO(format_diagram(generate_family("K4"))))
    assert call("bracket", "--input", "-")[1] == "z^-1 - 1 + z + z^4\n"


@pytest.mark.parametrize(
    "argv",
    [
        ("bracket",),
        ("bracket", "--family", "cube"),
        ("bracket", "--family", "theta", "--m", "0"),
        ("flip", "--family", "K4", "--inside", "nowhere"),
        ("nonsense",),
    ],
)
def test_input_errors_exit_one(argv):
    assert call(*argv)[0] == 1


def test_invalid_file_exits_one(data_dir):
    code, _, err = call("cohomology", "--input", str(data_dir / "unmatched_vertex.graph"))
    assert code == 1 and "matching not perfect" in err
    assert call("bracket", "--input", str(data_dir / "missing.graph"))[0] == 1


def test_verify_passes_on_families():
    for family, m in [("theta", 2), ("K4", 1), ("dumbbell", 2)]:
        code, out, _ = call("verify", "--family", family, "--m", str(m))
        assert code == 0, out
        assert "FAIL" not in out


def test_verify_failure_exits_two(monkeypatch):
    import pmcoh.verify as ver

    monkeypatch.setattr(ver, "verify_d_squared", lambda c: False)
    code, out, _ = call("verify", "--family", "theta", "--suite", "dsq")
    assert code == 2 and "FAIL" in out


def test_thread_cap_is_deterministic(monkeypatch):
    outputs = set()
    for threads in ("1", "3"):
        monkeypatch.setenv("PMCOH_THREADS", threads)
        outputs.add(call("cohomology", "--family", "prism-L", "--m", "5", "--format", "json")[1])
    assert len(outputs) == 1


def test_console_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "pmcoh", "bracket", "--family", "theta"], capture_output=True, text=True, check=False
    )
    assert done.returncode == 0 and done.stdout == "z^-2 + 1\n"
