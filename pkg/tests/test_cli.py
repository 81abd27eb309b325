import json
import os
import subprocess
import sys
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden_queries.jsonl"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("SPINNERLAB_SEED", None)
    env.update(env_extra or {})
    proc = subprocess.run([sys.executable, "-m", "spinnerlab", *args],
                          capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def load_golden():
    with GOLDEN.open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def test_golden_queries_match_and_are_deterministic():
    entries = load_golden()
    assert len(entries) == 25
    for entry in entries:
        first = run_cli(*entry["argv"])
        second = run_cli(*entry["argv"])
        assert first == second, f"nondeterministic output for {entry['argv']}"
        code, out, err = first
        assert code == entry["exit"], (entry["argv"], err)
        assert out == entry["stdout"], (entry["argv"], out)
        assert err == entry["stderr"], (entry["argv"], err)


def test_golden_queries_cover_models_and_error_paths():
    entries = load_golden()
    text = " ".join(e["argv"][-1] for e in entries)
    for model in ("minimal:", "grid:", "cantor:", "coinflip:", "lottery:"):
        assert model in text
    failures = [e for e in entries if e["exit"] != 0]
    kinds = " ".join(e["stderr"] for e in failures)
    assert "syntax error" in kinds
    assert "unknown model" in kinds
    assert "cylinder" in kinds          # type mismatch
    assert "translate" in kinds         # type mismatch, other direction
    assert "null event" in kinds        # domain error


def test_compare_subcommand():
    code, out, err = run_cli("compare", "coinflip: P(allheads)",
                             "coinflip: P(allheads>1)")
    assert code == 0
    assert out == "ordering: Less\nratio: 1/2\ndifference: -h\n"


def test_compare_generator_mismatch_is_an_error():
    code, out, err = run_cli("compare", "grid: P({1/3})",
                             "coinflip: P(allheads)")
    assert code == 1
    assert "error:" in err and "generators" in err


def test_compare_across_minimal_and_grid():
    code, out, err = run_cli("compare", "minimal: P([0,1/2))",
                             "grid: P([0,1/2))")
    assert code == 0
    assert "ordering: Equal" in out


def test_suite_healthy_exit_zero_and_json_shape():
    code, out, err = run_cli("suite", "--json")
    assert code == 0, err
    lines = [json.loads(l) for l in out.splitlines()]
    assert len(lines) == 10
    assert [l["suite"] for l in lines] == [
        "spinner-regularity", "spinner-totality", "spinner-count-uniformity",
        "spinner-length-agreement", "spinner-rational-rotation-invariance",
        "spinner-half-open-uniformity", "cantor-conditional-coherence",
        "sigma-additivity-probe", "finite-grid-stabilizer",
        "archimedean-overflow-witness"]
    for l in lines:
        assert set(l) == {"suite", "verdict", "cases", "counterexamples",
                          "witnesses", "duration_ms"}
        assert l["verdict"] == "pass"


def test_suite_json_deterministic_modulo_duration(tmp_path):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("seed = 11\ncases = 30\nmax_grid_size = 8\n")

    def stripped():
        code, out, err = run_cli("suite", "--config", str(cfg), "--json")
        assert code == 0
        rows = [json.loads(l) for l in out.splitlines()]
        for r in rows:
            r.pop("duration_ms")
        return rows

    assert stripped() == stripped()


def test_suite_corrupt_oracle_exits_one():
    code, out, err = run_cli("suite", "--json", "--corrupt-oracle")
    assert code == 1
    rows = [json.loads(l) for l in out.splitlines()]
    bad = [r for r in rows if r["verdict"] == "fail"]
    assert bad and bad[0]["counterexamples"]


def test_suite_config_file_and_seed_env(tmp_path):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("seed = 5\ncases = 25\nmax_denominator = 12\n"
                   "max_grid_size = 6\n")
    code, out, _ = run_cli("suite", "--config", str(cfg), "--json")
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert rows[0]["cases"] == 25
    # env var overrides the config seed but keeps everything green
    code, out2, _ = run_cli("suite", "--config", str(cfg), "--json",
                            env_extra={"SPINNERLAB_SEED": "99"})
    assert code == 0


def test_suite_unreadable_config_exits_two(tmp_path):
    code, out, err = run_cli("suite", "--config",
                             str(tmp_path / "missing.cfg"))
    assert code == 2
    assert "cannot read config" in err


def test_suite_degenerate_config_warns(tmp_path):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("max_denominator = 1\ncases = 5\nmax_grid_size = 3\n")
    code, out, err = run_cli("suite", "--config", str(cfg), "--json")
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert any(any("low-coverage" in w for w in r["witnesses"])
               for r in rows)


def test_witness_subcommand():
    code, out, _ = run_cli("witness", "--prop", "4.1", "--eps", "1/10")
    assert code == 0
    assert json.loads(out) == {"n": 11, "product": "11/10"}
    code, out, _ = run_cli("witness", "--prop", "4.2", "--eps", "1/10")
    data = json.loads(out)
    assert data["n"] == 11 and len(data["points"]) == 11
    code, _, err = run_cli("witness", "--prop", "4.1", "--eps", "0")
    assert code == 1 and "positive" in err
    code, _, err = run_cli("witness", "--prop", "4.1", "--eps", "0.1")
    assert code == 1 and "exact rational" in err


def test_stabilizer_subcommand():
    code, out, _ = run_cli("stabilizer", "--grid", "uniform:12")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 12 and data["generator_rotation"] == "1/12"
    assert data["witness_rotation"] == "1/13"
    code, out, _ = run_cli("stabilizer", "--grid", "0,1/4,1/3")
    assert json.loads(out)["order"] == 1
    code, _, err = run_cli("stabilizer", "--grid", "3/2")
    assert code == 1 and "error:" in err
