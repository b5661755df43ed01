"""Command-line interface: byte-exact output, exit codes, cache plumbing."""

import json

import pytest

from guesswho.cli import main
from guesswho.tables import cache_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_single_state_prints_bare_value(self, capsys):
        code, out, err = run(capsys, "solve", "--mode", "bi", "--state", "5,2")
        assert (code, out, err) == (0, "2/5\n", "")

    def test_single_state_via_n_and_m(self, capsys):
        code, out, _ = run(capsys, "solve", "--mode", "bi", "--n", "1", "--m", "5")
        assert (code, out) == (0, "1\n")

    def test_tripartite_state(self, capsys):
        code, out, _ = run(capsys, "solve", "--mode", "tri", "--state", "2,5")
        assert (code, out) == (0, "4/5\n")

    def test_half_specified_state_is_usage_error(self, capsys):
        code, _, err = run(capsys, "solve", "--mode", "bi", "--n", "4")
        assert code == 2
        assert "together" in err

    def test_nonpositive_state_is_usage_error(self, capsys):
        code, _, err = run(capsys, "solve", "--mode", "bi", "--state", "0,4")
        assert code == 2

    def test_json_table_output(self, capsys):
        code, out, _ = run(capsys, "solve", "--mode", "bi", "--n-max", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["mode"] == "bi"
        assert payload["n_max"] == 3
        assert len(payload["entries"]) == 9

    def test_csv_table_output(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--mode", "bi", "--n-max", "3", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,m,p,optimal"
        assert "2,2,1/2,\"[0,1]\"" in lines
        assert "3,3,5/9,[1]" in lines

    def test_csv_and_json_agree(self, capsys):
        _, json_out, _ = run(capsys, "solve", "--mode", "tri", "--n-max", "4")
        _, csv_out, _ = run(
            capsys, "solve", "--mode", "tri", "--n-max", "4", "--format", "csv"
        )
        payload = json.loads(json_out)
        by_state = {(e["n"], e["m"]): e for e in payload["entries"]}
        rows = csv_out.splitlines()[1:]
        assert len(rows) == len(by_state)
        for row in rows:
            n, m, p, rest = row.split(",", 3)
            entry = by_state[(int(n), int(m))]
            assert entry["p"] == p
            assert entry["optimal"] == json.loads(rest.strip('"').replace('""', '"'))

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "table.json"
        code, out, _ = run(
            capsys, "solve", "--mode", "bi", "--n-max", "2", "--out", str(target)
        )
        assert code == 0
        assert out == f"wrote {target}\n"
        assert json.loads(target.read_text())["n_max"] == 2

    def test_unwritable_out_fails_cleanly(self, capsys, tmp_path):
        target = tmp_path / "missing" / "table.json"
        code, _, err = run(
            capsys, "solve", "--mode", "bi", "--n-max", "2", "--out", str(target)
        )
        assert code == 1
        assert "error" in err

    def test_identical_invocations_identical_bytes(self, capsys):
        _, first, _ = run(capsys, "solve", "--mode", "bi", "--n-max", "5")
        _, second, _ = run(capsys, "solve", "--mode", "bi", "--n-max", "5")
        assert first == second


class TestCache:
    def test_round_trip_through_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("GW_TABLE_CACHE", str(tmp_path))
        _, first, _ = run(capsys, "solve", "--mode", "bi", "--n-max", "6")
        cached = cache_path(tmp_path, "bi", 6)
        assert cached.exists()
        stamp = cached.stat().st_mtime_ns
        _, second, _ = run(capsys, "solve", "--mode", "bi", "--n-max", "6")
        assert second == first
        assert cached.stat().st_mtime_ns == stamp  # reused, not rewritten

    def test_corrupt_cache_is_not_trusted(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("GW_TABLE_CACHE", str(tmp_path))
        target = cache_path(tmp_path, "bi", 4)
        run(capsys, "solve", "--mode", "bi", "--n-max", "4")
        payload = json.loads(target.read_text())
        payload["mode"] = "tri"
        target.write_text(json.dumps(payload))
        code, out, _ = run(capsys, "solve", "--mode", "bi", "--state", "4,4")
        assert (code, out) == (0, "9/16\n")


class TestVerify:
    def test_default_passes_with_known_mismatches(self, capsys):
        code, out, _ = run(capsys, "verify", "--mode", "all", "--n-max", "12")
        assert code == 0
        assert "[FAIL]" not in out
        assert out.count("[pass]") == 6
        assert "known mismatch(es)" in out

    def test_strict_promotes_mismatches(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--mode", "all", "--n-max", "12", "--strict"
        )
        assert code == 1
        assert "[FAIL]" in out

    def test_bi_only_runs_four_verifiers(self, capsys):
        code, out, _ = run(capsys, "verify", "--mode", "bi", "--n-max", "8")
        assert code == 0
        statuses = [line for line in out.splitlines() if line.startswith("[")]
        assert len(statuses) == 4
        assert all(line.startswith("[pass]") for line in statuses)

    def test_report_file(self, capsys, tmp_path):
        target = tmp_path / "verify.json"
        code, _, _ = run(
            capsys, "verify", "--mode", "tri", "--n-max", "8", "--out", str(target)
        )
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["n_max"] == 8
        assert payload["strict"] is False
        assert len(payload["reports"]) == 2


class TestAdvise:
    def test_exceptional_state(self, capsys):
        code, out, _ = run(capsys, "advise", "--mode", "bi", "--state", "6,4")
        assert (code, out) == (0, "value 1/2\noptimal [3]\n")

    def test_forced_guess(self, capsys):
        code, out, _ = run(capsys, "advise", "--mode", "bi", "--state", "5,1")
        assert (code, out) == (0, "value 1/5\noptimal [0]\n")

    def test_tripartite_advice(self, capsys):
        code, out, _ = run(capsys, "advise", "--mode", "tri", "--state", "5,5")
        assert (code, out) == (0, "value 3/5\noptimal [[1, 1, 3]]\n")

    def test_state_beyond_n_max_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "advise", "--mode", "bi", "--state", "30,4", "--n-max", "24"
        )
        assert code == 2
        assert "usage error" in err

    def test_missing_state_is_parse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "advise", "--mode", "bi")
        assert exc.value.code == 2


class TestMatch:
    def test_deterministic_payload(self, capsys):
        code, first, _ = run(
            capsys, "match", "--mode", "bi", "--start", "4,4",
            "--trials", "60", "--seed", "9",
        )
        assert code == 0
        payload = json.loads(first)
        assert payload["trials"] == 60
        assert payload["exact_value"] == "9/16"
        _, second, _ = run(
            capsys, "match", "--mode", "bi", "--start", "4,4",
            "--trials", "60", "--seed", "9",
        )
        assert second == first

    def test_out_mirrors_stdout(self, capsys, tmp_path):
        target = tmp_path / "match.json"
        _, out, _ = run(
            capsys, "match", "--mode", "bi", "--start", "3,3",
            "--trials", "20", "--seed", "1", "--out", str(target),
        )
        assert target.read_text() == out

    def test_zero_trials_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "match", "--mode", "bi", "--start", "3,3", "--trials", "0"
        )
        assert code == 2


class TestParsing:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["dance"])
        assert exc.value.code == 2

    def test_bad_mode(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--mode", "quad"])
        assert exc.value.code == 2

    def test_bad_state_syntax(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--state", "five"])
        assert exc.value.code == 2


class TestReport:
    def test_writes_figures_and_tables(self, capsys, tmp_path):
        outdir = tmp_path / "report"
        code, out, _ = run(capsys, "report", "--out", str(outdir), "--n-max", "10")
        assert code == 0
        written = [line.split(" ", 1)[1] for line in out.splitlines()]
        assert len(written) == 10
        names = {p.rsplit("/", 1)[-1] for p in written}
        assert any(name.endswith(".png") for name in names)
        assert any(name.endswith(".csv") for name in names)
        assert any(name.endswith(".json") for name in names)
        assert any(name.endswith(".md") for name in names)
        for path in written:
            assert outdir / path.rsplit("/", 1)[-1]


def test_console_script_is_installed():
    import shutil

    assert shutil.which("guesswho")
