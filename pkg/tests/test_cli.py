"""
Tests for the cyclicweights command-line interface
"""

import json
from pathlib import Path

import pytest

from cyclicweights import classify, cli
from cyclicweights.cli import EXIT_BUDGET, EXIT_CONFIG, EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK, main
from cyclicweights.errors import InternalConsistencyError
from cyclicweights.gf2m import get_field

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    """No CYCLICWEIGHTS_* leakage; caches go to a temporary directory"""
    for name in ("M", "MODULUS", "THREADS", "FORMAT", "ALLOW_EXPENSIVE"):
        monkeypatch.delenv(f"CYCLICWEIGHTS_{name}", raising=False)
    monkeypatch.setenv("CYCLICWEIGHTS_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTables:
    """cyclicweights tables"""

    def test_csv_matches_golden(self, capsys):
        code, out, _ = run(capsys, "tables", "--format", "csv")
        assert code == EXIT_OK
        assert out == (GOLDEN / "tables.csv").read_text()

    def test_markdown_matches_golden(self, capsys):
        code, out, _ = run(capsys, "tables", "--format", "markdown")
        assert code == EXIT_OK
        assert out == (GOLDEN / "tables.md").read_text()

    def test_json(self, capsys):
        code, out, _ = run(capsys, "tables")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["status"] == "PASSED"
        assert [row["m"] for row in document["rows"]] == list(range(6, 13))
        assert document["rows"][1]["extras"] == [46, 82, 84]
        assert len(document["checks"]) == 7

    def test_repeated_runs_identical(self, capsys):
        _, first, _ = run(capsys, "tables")
        _, second, _ = run(capsys, "tables")
        assert first == second

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        monkeypatch.setitem(classify.EXPECTED_TABLE_ROWS, 6, ((16, 47), (19, 44), (18,)))
        code, out, err = run(capsys, "tables")
        assert code == EXIT_MISMATCH
        assert json.loads(out)["status"] == "FAILED"
        assert "mismatch: q=2^6" in err


class TestEnumerationCommands:
    """mindist, dual-weights and families"""

    def test_mindist(self, capsys):
        code, out, _ = run(capsys, "mindist", "--m", "6")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["d"] == 7
        assert document["good_count"] == 0
        assert set(document) - {"status", "checks"} == {"m", "d", "method", "good_count"}
        assert document["method"] == "macwilliams+xpoints"

    def test_internal_error_exit_code(self, capsys, monkeypatch):
        def broken(*args, **kwargs):
            raise InternalConsistencyError("weight 7 missing from the dual")

        monkeypatch.setattr(cli, "min_distance_C", broken)
        code, out, err = run(capsys, "mindist", "--m", "6")
        assert code == EXIT_INTERNAL
        assert out == ""
        assert "internal error: weight 7 missing from the dual" in err

    def test_mindist_cold_and_warm_cache(self, capsys, tmp_path):
        cache = tmp_path / "explicit"
        _, cold, _ = run(capsys, "mindist", "--m", "7", "--cache-dir", str(cache))
        assert list(cache.glob("weights-m7-*.jsonl"))
        _, warm, _ = run(capsys, "mindist", "--m", "7", "--cache-dir", str(cache))
        assert cold == warm
        assert json.loads(warm)["d"] == 7

    def test_dual_weights_predict(self, capsys):
        code, out, _ = run(capsys, "dual-weights", "--m", "7")
        assert code == EXIT_OK
        assert json.loads(out)["extras"] == [46, 82, 84]

    def test_dual_weights_compare(self, capsys):
        code, out, _ = run(capsys, "dual-weights", "--m", "6", "--compare")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["mismatches"] == []
        assert document["provenance"] == "both"

    def test_dual_weights_brute(self, capsys):
        code, out, _ = run(capsys, "dual-weights", "--m", "5", "--brute")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["modulus_hex"] == "0x25"
        assert document["distribution"]["total"] == 1 << 15
        assert all(w % 2 == 0 for w in document["weights"])

    def test_dual_weights_brute_budget(self, capsys):
        code, _, err = run(capsys, "dual-weights", "--m", "9", "--brute")
        assert code == EXIT_BUDGET
        assert "--allow-expensive" in err

    def test_dual_weights_csv(self, capsys):
        code, out, _ = run(capsys, "dual-weights", "--m", "6", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "m,weight,status,a1,a2,delta,witness_prime"

    def test_families(self, capsys):
        code, out, _ = run(capsys, "families", "--m", "5")
        assert code == EXIT_OK
        assert json.loads(out)["families"] == {"hamming": 3, "B": 5, "M": 5, "C": 5}


class TestMNCheck:
    """cyclicweights mn-check"""

    def test_split_and_simple(self, capsys):
        code, out, _ = run(capsys, "mn-check", "--m", "7", "--a1", "35")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["weight"] == 46
        assert document["simple"]["a2"] == 544
        assert document["split"]["s"] == 16
        assert "interval_lemma" not in document

    def test_even_m_reports_interval_lemma(self, capsys):
        code, out, _ = run(capsys, "mn-check", "--m", "6", "--a1", "31")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["simple"] is None
        assert document["split"] is None
        assert document["interval_lemma"] is None

    def test_even_a1(self, capsys):
        code, _, err = run(capsys, "mn-check", "--m", "7", "--a1", "34")
        assert code == EXIT_CONFIG
        assert "odd" in err


class TestXCommands:
    """cyclicweights x"""

    def test_weil(self, capsys):
        code, out, _ = run(capsys, "x", "weil", "--m", "6")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["bound"] == 1760
        assert document["ok"] is True
        assert document["modulus_hash"] == get_field(6).modulus_hash

    def test_points(self, capsys):
        code, out, _ = run(capsys, "x", "points", "--m", "5")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["N"] == len(document["points"])
        assert document["good_count"] > 0
        assert document["modulus_hash"] == get_field(5).modulus_hash

    def test_singular(self, capsys):
        code, out, _ = run(capsys, "x", "singular", "--m", "6")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["equal"] is True
        assert ["0x0", "0x0", "0x1"] in document["singular"]
        assert document["modulus_hex"] == "0x43"
        assert document["modulus_hash"] == get_field(6).modulus_hash

    def test_singular_alternate_modulus(self, capsys):
        code, out, _ = run(capsys, "x", "singular", "--m", "6", "--modulus", "0x61")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["modulus_hash"] == get_field(6, 0x61).modulus_hash
        assert document["modulus_hash"] != get_field(6).modulus_hash


class TestCache:
    """cyclicweights cache"""

    def test_stats_and_clear(self, capsys, tmp_path):
        cache = str(tmp_path / "c")
        run(capsys, "dual-weights", "--m", "5", "--brute", "--cache-dir", cache)
        _, out, _ = run(capsys, "cache", "stats", "--cache-dir", cache)
        assert json.loads(out)["files"] == 1
        _, out, _ = run(capsys, "cache", "clear", "--cache-dir", cache)
        assert json.loads(out)["removed"] == 1


class TestConfiguration:
    """Flags, environment and configuration errors"""

    def test_m_out_of_range(self, capsys):
        code, _, err = run(capsys, "mindist", "--m", "2")
        assert code == EXIT_CONFIG
        assert "error:" in err

    def test_non_primitive_modulus(self, capsys):
        code, _, _ = run(capsys, "mindist", "--m", "6", "--modulus", "0x41")
        assert code == EXIT_CONFIG

    def test_modulus_without_m(self, capsys):
        code, _, err = run(capsys, "families", "--modulus", "0x43")
        assert code == EXIT_CONFIG
        assert "--modulus requires --m" in err

    def test_missing_m(self, capsys):
        code, _, err = run(capsys, "mindist")
        assert code == EXIT_CONFIG
        assert "needs --m" in err

    def test_usage_error(self, capsys):
        assert run(capsys)[0] == EXIT_CONFIG
        assert run(capsys, "tables", "--format", "xml")[0] == EXIT_CONFIG

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == EXIT_OK
        assert out.startswith("cyclicweights ")

    def test_alternative_modulus(self, capsys):
        code, out, _ = run(capsys, "dual-weights", "--m", "6", "--modulus", "0x61", "--brute")
        assert code == EXIT_OK
        assert json.loads(out)["modulus_hex"] == "0x61"

    def test_environment_m(self, capsys, monkeypatch):
        monkeypatch.setenv("CYCLICWEIGHTS_M", "6")
        _, out, _ = run(capsys, "families")
        assert json.loads(out)["m"] == 6

    def test_flag_beats_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("CYCLICWEIGHTS_M", "6")
        _, out, _ = run(capsys, "families", "--m", "5")
        assert json.loads(out)["m"] == 5

    def test_options_before_subcommand(self, capsys):
        _, out, _ = run(capsys, "--m", "5", "families")
        assert json.loads(out)["m"] == 5

    def test_environment_format(self, capsys, monkeypatch):
        monkeypatch.setenv("CYCLICWEIGHTS_FORMAT", "csv")
        _, out, _ = run(capsys, "tables")
        assert out == (GOLDEN / "tables.csv").read_text()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
