import io
import json
import subprocess
import sys

import pytest

from chssrigid.cache import CACHE_SCHEMA, ENV_VAR, DecompositionCache, cache_key
from chssrigid.cli import EXIT_OK, EXIT_USAGE, main
from chssrigid.models import build_model
from chssrigid.orchestrator import sk_decomposition


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_json(tmp_path):
    code, text = run("verify", "G(2,5)", "--format", "json", "--cache", str(tmp_path))
    assert code == EXIT_OK
    (rep,) = json.loads(text)
    assert rep["model"] == "G(2,5)" and rep["verdict"] == "RIGID"


def test_verify_markdown():
    code, text = run("verify", "S10")
    assert code == EXIT_OK
    assert text.startswith("# S10: RIGID")
    assert "## order 3" in text


def test_quadric_is_a_usage_error(capsys):
    code, _ = run("verify", "quadric")
    assert code == EXIT_USAGE
    assert "quadric" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["verify"], ["verify", "G(2,5)", "--seed", "-1"], ["bogus"],
                                  ["decompose", "G(2,5)", "S T"], ["tables", "P7"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_decompose_and_tables():
    code, text = run("decompose", "G(2,5)", "S3 T* ⊗ N")
    assert code == EXIT_OK and "total dimension 168 (expected 168)" in text
    code, text = run("tables", "G(2,5)")
    assert code == EXIT_OK and "S⁴T*⊗N" in text


def test_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, text = run("verify", "G(2,5)", "--format", "json", "-o", str(path))
    assert code == EXIT_OK and text == ""
    assert json.loads(path.read_text())[0]["verdict"] == "RIGID"


def test_cold_and_warm_cache_agree(tmp_path):
    cold = run("verify", "G(2,5)", "S10", "--format", "json", "--cache", str(tmp_path))[1]
    assert list(tmp_path.glob("*.json"))
    warm = run("verify", "G(2,5)", "S10", "--format", "json", "--cache", str(tmp_path))[1]
    nocache = run("verify", "G(2,5)", "S10", "--format", "json")[1]
    assert cold == warm == nocache


def test_cache_hits(tmp_path):
    m = build_model("G(2,5)")
    c1 = DecompositionCache(tmp_path)
    d = sk_decomposition(m, 3, c1)
    assert c1.misses == 1
    c2 = DecompositionCache(tmp_path)
    assert sk_decomposition(m, 3, c2) == d
    assert (c2.hits, c2.misses) == (1, 0)


def test_corrupt_entry_is_recomputed(tmp_path, caplog):
    m = build_model("G(2,5)")
    d = sk_decomposition(m, 3, DecompositionCache(tmp_path))
    key = cache_key(m.rank, ("SkT*xN", 3))
    (tmp_path / f"{key}.json").write_text("{not json")
    c = DecompositionCache(tmp_path)
    assert sk_decomposition(m, 3, c) == d
    assert c.misses == 1
    assert "corrupt" in caplog.text
    # the recomputed value was written back
    assert json.loads((tmp_path / f"{key}.json").read_text())["schema"] == CACHE_SCHEMA


def test_wrong_rank_entry_ignored(tmp_path):
    m = build_model("G(2,5)")
    c = DecompositionCache(tmp_path)
    c.put(m.rank, ("SkT*xN", 3), [[[1], ["0"], "1"]])
    assert c.get_irrsum(m.rank, ("SkT*xN", 3)) is None


def test_unusable_directory_degrades(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    c = DecompositionCache(blocker / "sub")
    assert c.directory is None
    c.put(build_model("G(2,5)").rank, "op", [1])
    assert c.get(build_model("G(2,5)").rank, "op") == [1]


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert DecompositionCache().directory == tmp_path


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "chssrigid", "decompose", "S10", "T"], capture_output=True, text=True)
    assert r.returncode == 0 and "total dimension 10" in r.stdout
