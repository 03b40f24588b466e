import json
import os
import pathlib
import subprocess
import sys

import pytest

from comax.cli import main, run

sys.path.insert(0, str(pathlib.Path(__file__).parent / "fixtures"))
from make_golden import capture, invocations  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parent.parent
JOBS = ROOT / "tests" / "fixtures" / "jobs"
EXPECTED = json.loads((ROOT / "tests" / "fixtures" / "golden" / "exit_codes.json").read_text())


@pytest.fixture(autouse=True)
def _repo_cwd(monkeypatch):
    monkeypatch.chdir(ROOT)


@pytest.mark.parametrize("name,argv", list(invocations()), ids=[n for n, _ in invocations()])
def test_fixture_exit_codes(name, argv):
    code, out = capture(argv)
    assert code == EXPECTED[name]
    if name.endswith(".json"):
        report = json.loads(out)
        reports = report if isinstance(report, list) else [report]
        for r in reports:
            assert r["tool"]["name"] == "comax"
            assert r["exit_code"] in range(6)
        if not isinstance(report, list):
            assert report["exit_code"] == code


def test_report_shape_for_decompose():
    job = json.loads((JOBS / "decompose_z2_z3.json").read_text())
    code, report = run(job)
    assert code == 0 and report["status"] == "ok"
    parts = report["result"]["parts"]
    assert [p["component"]["invariants"]["order"] for p in parts] == [2, 3, 1]
    assert report["result"]["witness"]["sum_is_one"]
    assert report["oracle"]["status"] == "agree"


def test_command_mismatch_is_an_input_error():
    job = json.loads((JOBS / "crt_z4_z6.json").read_text())
    code, report = run(job, command="decompose")
    assert code == 1 and report["status"] == "input_error"


def test_max_exponent_flag(capsys):
    code = main(["decompose", "--input", str(JOBS / "pcomp_z12_z18.json"), "--max-exponent", "1"])
    capsys.readouterr()
    assert code == 1  # a pcomp job under the decompose command
    job = {"command": "decompose", "ring": {"type": "Z"},
           "module": {"generators": 1, "relations": [[4]]}, "ideals": [{"gen": 2}]}
    path = pathlib.Path(os.environ.get("TMPDIR", "/tmp")) / "comax_exp_job.json"
    path.write_text(json.dumps(job))
    assert main(["decompose", "--input", str(path), "--max-exponent", "1"]) == 2
    assert main(["decompose", "--input", str(path)]) == 0
    capsys.readouterr()


def test_missing_file(capsys):
    assert main(["crt", "--input", "does/not/exist.json"]) == 1
    assert json.loads(capsys.readouterr().out)["status"] == "input_error"


def test_batch_runs_every_job(capsys):
    code = main(["crt", "--jobs", str(JOBS / "batch.json"), "--workers", "2"])
    reports = json.loads(capsys.readouterr().out)
    assert code == 0 and len(reports) == 3
    assert all(r["status"] == "ok" for r in reports)


def test_text_output(capsys):
    assert main(["decompose", "--input", str(JOBS / "decompose_z2_z3.json"), "--output", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("decompose: ok (exit 0)")
    assert "part 2" in out and "zero" in out


def test_budget_env_var(monkeypatch, capsys):
    def job(m):
        return {"command": "check-stability", "ring": {"type": "Zmod", "modulus": m},
                "ideals": [{"div": 2}, {"div": m // 2}]}
    assert run(job(14))[0] == 0
    # ring tables are cached once built, so the capped run uses a fresh ring
    monkeypatch.setenv("COMAX_BUDGET", "10")
    code, report = run(job(22))
    assert code == 4 and report["status"] == "budget_exceeded"


def _subprocess(args, **env):
    full = dict(os.environ, **env)
    return subprocess.run(args, cwd=ROOT, env=full, capture_output=True, text=True, timeout=300)


def test_console_script():
    exe = pathlib.Path(sys.executable).with_name("comax")
    cmd = [str(exe)] if exe.exists() else [sys.executable, "-m", "comax.cli"]
    proc = _subprocess(cmd + ["crt", "--input", "tests/fixtures/jobs/crt_z4_z6.json"])
    assert proc.returncode == 0
    golden = (ROOT / "tests" / "fixtures" / "golden" / "crt_z4_z6.json").read_text()
    assert proc.stdout == golden
    proc = _subprocess(cmd + ["--version"])
    assert proc.returncode == 0 and proc.stdout.startswith("comax ")


def test_pure_python_fallback_gives_identical_reports():
    probe = _subprocess([sys.executable, "-c", "from comax import linalg; print(linalg.HAVE_EXTENSION)"],
                        COMAX_PURE_PYTHON="1")
    assert probe.stdout.strip() == "False"
    for name in ("crt_t2_z4.json", "pcomp_z12_z18.json", "stability_t2_z2.json"):
        data = json.loads((JOBS / name).read_text())
        proc = _subprocess([sys.executable, "-m", "comax.cli", data["command"], "--input", f"tests/fixtures/jobs/{name}"],
                           COMAX_PURE_PYTHON="1")
        assert proc.stdout == (ROOT / "tests" / "fixtures" / "golden" / name).read_text()
