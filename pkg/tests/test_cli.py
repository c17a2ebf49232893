import io
import json
import subprocess
import sys

import pytest

from keyvar import cli
from keyvar.registry import Check, Registry, RunConfig, default_registry, exit_code, run_checks
from keyvar.results import CheckResult


def _run(argv, registry=None):
    out = io.StringIO()
    code = cli.main(argv, registry=registry, out=out)
    return code, out.getvalue()


def test_list_has_at_least_thirty_ids():
    code, out = _run(["list"])
    ids = out.split()
    assert code == 0 and len(ids) >= 30 and ids == sorted(ids)
    for prefix in ("typeR.", "typeIR.general.", "typeIR.special.", "intersection.", "core."):
        assert any(i.startswith(prefix) for i in ids)


def test_glob_selection():
    _, out = _run(["list", "typeR.mq*"])
    assert out.split() == ["typeR.mq.minors3", "typeR.mq.minors4", "typeR.mq.rank0", "typeR.mq.rank1",
                           "typeR.mq.rank3"]


def test_unknown_pattern_is_empty():
    code, out = _run(["list", "nothing.*"])
    assert code == 0 and out == ""
    code, out = _run(["run", "nothing.*", "--format", "machine"])
    assert code == 0 and out == ""


def test_intersection_report_values():
    code, out = _run(["run", "intersection.typeR"])
    assert code == 0
    assert "deg C = 12" in out and "-138" in out and "p_g(C) = 7" in out


def test_whitelisted_discrepancy_exits_zero():
    code, out = _run(["run", "intersection.*", "--format", "machine"])
    rows = [json.loads(line) for line in out.splitlines()]
    disc = [r for r in rows if r["status"] == "discrepancy"]
    assert code == 0 and [r["id"] for r in disc] == ["intersection.typeIR.k2l"]
    assert "5*m*k = 22" in disc[0]["notes"] and "5*m*k = 54" in disc[0]["notes"]


def test_machine_schema():
    code, out = _run(["run", "core.*", "--format", "machine", "--timings"])
    for line in out.splitlines():
        obj = json.loads(line)
        assert list(obj) == ["id", "status", "witness", "elapsed", "notes"]
        assert obj["status"] in ("pass", "fail", "inconclusive", "discrepancy")
        assert isinstance(obj["elapsed"], float)
    _, out = _run(["run", "core.*", "--format", "machine"])
    assert all(json.loads(line)["elapsed"] is None for line in out.splitlines())


def _failing_registry():
    reg = Registry()
    reg.register(Check("a.ok", lambda cfg: CheckResult("a.ok", "pass")))
    reg.register(Check("b.bad", lambda cfg: CheckResult("b.bad", "fail", witness="w")))
    reg.register(Check("c.later", lambda cfg: CheckResult("c.later", "pass")))
    return reg


def test_fail_fast_stops_at_first_failure():
    code, out = _run(["run", "--fail-fast", "--format", "machine"], registry=_failing_registry())
    ids = [json.loads(line)["id"] for line in out.splitlines()]
    assert code == 1 and ids == ["a.ok", "b.bad"]
    code, out = _run(["run", "--format", "machine"], registry=_failing_registry())
    assert code == 1 and len(out.splitlines()) == 3


def test_crashing_check_is_a_failure():
    reg = Registry([Check("boom", lambda cfg: 1 / 0)])
    results = run_checks(reg, RunConfig())
    assert results[0].status == "fail" and "ZeroDivisionError" in results[0].witness
    assert exit_code(results) == 1


def test_unlisted_discrepancy_fails():
    reg = Registry([Check("x.new", lambda cfg: CheckResult("x.new", "discrepancy"))])
    assert exit_code(run_checks(reg, RunConfig())) == 1


def test_config_errors(monkeypatch, tmp_path):
    assert _run(["run", "--trials", "0"])[0] == 2
    assert _run(["run", "--format", "xml"])[0] == 2
    assert _run(["bogus"])[0] == 2
    assert _run(["run", "--lforms", str(tmp_path / "missing.json")])[0] == 2
    monkeypatch.setenv("KEYVAR_SEED", "not-a-number")
    assert _run(["run", "core.*"])[0] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("KEYVAR_SEED", "5")
    _, env_out = _run(["run", "core.*", "--format", "machine"])
    monkeypatch.delenv("KEYVAR_SEED")
    _, flag_out = _run(["run", "core.*", "--format", "machine", "--seed", "5"])
    assert env_out == flag_out
    assert cli.resolve_seed(None, {}) == 0


def test_seed_changes_samples():
    a = run_checks(default_registry(), RunConfig(patterns=("typeIR.general.fibers",), seed=1))
    b = run_checks(default_registry(), RunConfig(patterns=("typeIR.general.fibers",), seed=2))
    assert a[0].status == b[0].status == "pass"


def test_lforms_flag(tmp_path):
    path = tmp_path / "forms.json"
    forms = [{"r12": 1, "r34": -2, "r15": 1}, {"r13": 1, "rt25": 3}, {"r14": 1, "r23": 1, "r45": -1},
             {"r24": 2, "r35": 1}, {"r25": 1, "r12": -1, "r45": 1}, {"r45": 1, "r13": 2, "r34": 1}]
    path.write_text(json.dumps({"case": "special", "forms": forms}))
    code, out = _run(["run", "--lforms", str(path), "*.lforms", "--format", "machine"])
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["id"] for r in rows] == ["typeIR.special.lforms"]
    assert rows[0]["status"] == "pass"
    _, out = _run(["list", "*.lforms"])
    assert out == ""


def test_parallel_matches_serial():
    serial = run_checks(default_registry(), RunConfig(patterns=("core.*", "intersection.*")))
    parallel = run_checks(default_registry(), RunConfig(patterns=("core.*", "intersection.*"), jobs=2))
    assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "keyvar", "list", "core.*"], capture_output=True, text=True)
    assert proc.returncode == 0 and "core.poly.roundtrip" in proc.stdout


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(trials=0)
    with pytest.raises(ValueError):
        RunConfig(seed=2 ** 64)
