import io
import json
import subprocess
import sys

import pytest

from pathcov.cli import (
    EXIT_INVALID,
    EXIT_NOT_SESE,
    EXIT_OK,
    EXIT_TRUNCATED,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    main,
)
from pathcov.generators import diamond_chain
from pathcov.io import GraphDocument


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue().splitlines(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "d4": write("d4.json", GraphDocument.from_sese(diamond_chain(4)).to_json()),
        "d30": write("d30.json", GraphDocument.from_sese(diamond_chain(30)).to_json()),
        "loop": write("loop.dot", "digraph { s -> a -> b -> a; b -> t }"),
        "chain": write("chain.json", '{"vertices":["s","a","t"],"edges":[["s","a"],["a","t"]],"entry":"s","exit":"t"}'),
        "bad": write("bad.json", '{"vertices":["a"],"edges":[["a","b"]]}'),
        "open": write("open.json", '{"vertices":["s","a","t","u"],"edges":[["s","a"],["a","t"]],"entry":"s","exit":"t"}'),
        "dir": str(tmp_path),
    }


def test_enumerate_diamond(files):
    code, lines, _ = run("enumerate", "prime-paths", "--input", files["d4"])
    assert code == EXIT_OK
    assert len(lines) == len(set(lines)) == 16
    assert all(line.startswith("s,") and line.endswith(",t") for line in lines)


def test_enumerate_truncates(files):
    code, lines, err = run("enumerate", "prime-paths", "--input", files["d30"], "--max-items", "1000", "--stats")
    assert code == EXIT_TRUNCATED
    assert len(lines) == 1000
    stats = json.loads(err)
    assert stats["status"] == "truncated" and stats["items_emitted"] == 1000
    assert stats["peak_retained_paths"] <= 91 + 2


def test_enumerate_timeout(files):
    code, lines, err = run("enumerate", "prime-paths", "--input", files["d30"], "--timeout-secs", "0.2", "--stats")
    assert code == EXIT_TRUNCATED
    assert json.loads(err)["status"] == "timeout"
    assert lines


def test_simple_cycles_of_dag(files):
    code, lines, _ = run("enumerate", "simple-cycles", "--input", files["d4"])
    assert (code, lines) == (EXIT_OK, [])


def test_enumerate_ndjson(files):
    code, lines, _ = run("enumerate", "non-extendable-simple-paths", "--input", files["loop"], "--format", "ndjson")
    assert code == EXIT_OK
    assert [json.loads(x) for x in lines] == [{"path": ["s", "a", "b", "t"]}]


def test_cover_examples(files):
    code, lines, _ = run("cover", "prime-path", "--input", files["loop"], "--entry", "s", "--exit", "t", "--k", "10")
    assert (code, lines) == (EXIT_OK, ["s,a,b,a,b,a,b,t", "s,a,b,t"])
    code, lines, _ = run("cover", "prime-path", "--input", files["d4"], "--k", "1")
    assert code == EXIT_OK and len(lines) == 16
    code, lines, _ = run("cover", "e-acyclic", "--input", files["chain"])
    assert (code, lines) == (EXIT_OK, ["s,a,t"])


@pytest.mark.parametrize("criterion", ["prime-path", "simple-cycle", "simple-path", "e-acyclic"])
def test_cover_verify(files, criterion):
    code, _, err = run("cover", criterion, "--input", files["loop"], "--entry", "s", "--exit", "t", "--k", "2", "--verify")
    assert code == EXIT_OK and "verify: ok" in err


def test_cover_verify_cap(files):
    code, _, err = run("cover", "prime-path", "--input", files["d4"], "--verify", "--verify-cap", "3")
    assert code == EXIT_VERIFY_FAILED and "not run" in err


def test_cover_rejects(files):
    assert run("cover", "prime-path", "--input", files["open"])[0] == EXIT_NOT_SESE
    assert run("cover", "prime-path", "--input", files["loop"])[0] == EXIT_NOT_SESE
    assert run("cover", "prime-path", "--input", files["d4"], "--double-cycle")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        run("cover", "prime-path", "--input", files["d4"], "--k", "0")
    assert e.value.code == EXIT_USAGE


def test_check(files):
    code, lines, _ = run("check", "--input", files["chain"])
    assert code == EXIT_OK and lines[0].startswith("ok")
    code, lines, _ = run("check", "--input", files["open"])
    assert code == EXIT_NOT_SESE
    assert any("'u'" in line for line in lines)
    code, lines, _ = run("check", "--input", files["loop"], "--entry", "a", "--exit", "t")
    assert code == EXIT_NOT_SESE


def test_invalid_input(files):
    assert run("check", "--input", files["bad"])[0] == EXIT_INVALID
    assert run("check", "--input", files["dir"] + "/missing.json")[0] == EXIT_INVALID
    assert run("enumerate", "prime-paths", "--input", files["dir"])[0] == EXIT_INVALID


def test_bench(files, tmp_path):
    out = tmp_path / "stats.json"
    code, lines, _ = run("bench", "--input", files["d4"], "--stats-out", str(out))
    assert code == EXIT_OK
    assert lines[0].split()[0] == "engine"
    runs = json.loads(out.read_text())["runs"]
    assert [r["items_emitted"] for r in runs] == [16, 16]
    assert all(r["status"] == "completed" for r in runs)
    assert runs[0]["avg_period"] == pytest.approx(runs[0]["elapsed"] / 16)


def test_bench_preset(files, tmp_path):
    out = tmp_path / "stats.json"
    code, _, _ = run("bench", "--input", files["d4"], "--engines", "stream", "--preset", "paper", "--scale", "0.001", "--stats-out", str(out))
    doc = json.loads(out.read_text())
    assert code == EXIT_OK
    assert doc["max_items"] == 10_000_000 and doc["timeout_secs"] == pytest.approx(3.6)


def test_bench_unknown_engine(files):
    assert run("bench", "--input", files["d4"], "--engines", "stream,fast")[0] == EXIT_USAGE


def test_stdin_and_subprocess(files):
    text = open(files["chain"]).read()
    proc = subprocess.run(
        [sys.executable, "-m", "pathcov", "enumerate", "prime-paths", "--input", "-"],
        input=text, capture_output=True, text=True, check=False,
    )  # fmt: skip
    assert proc.returncode == EXIT_OK
    assert proc.stdout == "s,a,t\n"


def test_closed_pipe_is_clean(files):
    cmd = f"{sys.executable} -m pathcov enumerate prime-paths --input {files['d30']} | head -n 2"
    proc = subprocess.run(["bash", "-o", "pipefail", "-c", cmd], capture_output=True, text=True, timeout=60)
    assert len(proc.stdout.splitlines()) == 2
    assert proc.returncode == EXIT_TRUNCATED
    assert "Traceback" not in proc.stderr
