import json
from pathlib import Path

import pytest

from gapsets import invariants, validate_gapset
from gapsets.cli import main

GOLDEN = Path(__file__).parent / "golden" / "table3_g19.md"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestEnumerate:
    def test_text(self, capsys):
        code, out = run(capsys, "enumerate", "--genus", "3", "--format", "text")
        assert code == 0
        assert out.splitlines() == ["1,2,3", "1,2,4", "1,2,5", "1,3,5"]

    def test_pure_filter(self, capsys):
        code, out = run(
            capsys, "enumerate", "--genus", "6", "--kappa", "4", "--pure"
        )
        assert code == 0
        assert len(out.splitlines()) == 5

    def test_impossible_kappa_is_empty_success(self, capsys):
        code, out = run(
            capsys, "enumerate", "--genus", "3", "--kappa", "9", "--pure"
        )
        assert code == 0
        assert out == ""

    def test_json_round_trip(self, capsys):
        code, out = run(capsys, "enumerate", "--genus", "4", "--format", "json")
        assert code == 0
        for line in out.splitlines():
            record = json.loads(line)
            g = validate_gapset(record["gaps"])
            rec = invariants(g)
            assert record["genus"] == rec.genus
            assert record["multiplicity"] == rec.multiplicity
            assert record["conductor"] == rec.conductor
            assert record["frobenius"] == rec.frobenius
            assert record["depth"] == rec.depth
            assert record["kappa"] == rec.kappa
            assert record["alpha"] == rec.alpha

    def test_json_alpha_null_for_small_genus(self, capsys):
        _, out = run(capsys, "enumerate", "--genus", "1", "--format", "json")
        assert json.loads(out)["alpha"] is None

    def test_csv_round_trip(self, capsys):
        code, out = run(capsys, "enumerate", "--genus", "4", "--format", "csv")
        lines = out.splitlines()
        header = lines[0].split(",")
        assert header[0] == "gaps" and header[-1] == "alpha"
        for line in lines[1:]:
            fields = dict(zip(header, line.split(",")))
            g = validate_gapset(int(v) for v in fields["gaps"].split())
            rec = invariants(g)
            assert int(fields["genus"]) == rec.genus
            assert int(fields["kappa"]) == rec.kappa
            alpha = None if fields["alpha"] == "" else int(fields["alpha"])
            assert alpha == rec.alpha

    def test_bad_flags_exit_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["enumerate", "--genus", "3", "--format", "yaml"])
        assert err.value.code == 2
        with pytest.raises(SystemExit) as err:
            main(["enumerate", "--genus", "3", "--pure"])
        assert err.value.code == 2

    def test_resource_limit_exit_3(self, capsys):
        assert main(["enumerate", "--genus", "99"]) == 3

    def test_cache_dir_flag_and_env(self, capsys, tmp_path, monkeypatch):
        env_dir = tmp_path / "env"
        flag_dir = tmp_path / "flag"
        monkeypatch.setenv("GAPSET_CACHE_DIR", str(env_dir))
        run(capsys, "enumerate", "--genus", "3")
        assert (env_dir / "gapsets-g3.txt").exists()
        run(capsys, "enumerate", "--genus", "3", "--cache-dir", str(flag_dir))
        assert (flag_dir / "gapsets-g3.txt").exists()

    def test_corrupt_cache_fails_loudly(self, capsys, tmp_path):
        run(capsys, "enumerate", "--genus", "3", "--cache-dir", str(tmp_path))
        path = tmp_path / "gapsets-g3.txt"
        path.write_bytes(path.read_bytes().replace(b"1,2,3", b"1,2,9", 1))
        code, _ = run(capsys, "enumerate", "--genus", "3", "--cache-dir", str(tmp_path))
        assert code == 1

    def test_depth_filter(self, capsys):
        from gapsets import enumerate_gapsets, invariants

        code, out = run(capsys, "enumerate", "--genus", "6", "--depth", "2")
        expected = sum(1 for g in enumerate_gapsets(6) if invariants(g).depth == 2)
        assert code == 0
        assert len(out.splitlines()) == expected > 0


class TestTable:
    def test_csv_row(self, capsys):
        code, out = run(capsys, "table", "--max-genus", "10", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "g," + ",".join(map(str, range(11))) + ",n_g"
        row10 = lines[-1].split(",")
        assert row10[0] == "10"
        assert row10[3] == "27"  # kappa = 2 column
        assert row10[-1] == "204"

    def test_max_genus_zero(self, capsys):
        code, out = run(capsys, "table", "--max-genus", "0", "--format", "csv")
        assert out.splitlines()[1] == "0,1,1"

    def test_csv_row_19(self, capsys):
        _, out = run(capsys, "table", "--max-genus", "19", "--format", "csv")
        row19 = out.splitlines()[-1]
        assert row19.startswith("19,,1,413,2448,4464,")
        assert row19.endswith(",2,1,22464")

    def test_markdown_marks_diagonal(self, capsys):
        _, out = run(capsys, "table", "--max-genus", "6", "--format", "markdown")
        row6 = out.splitlines()[-1]
        assert "5*" in row6

    def test_markdown_matches_golden(self, capsys):
        code, out = run(capsys, "table", "--max-genus", "19", "--format", "markdown")
        assert code == 0
        assert out == GOLDEN.read_text()


class TestSequence:
    def test_ng(self, capsys):
        code, out = run(capsys, "sequence", "ng", "--max-genus", "9")
        assert code == 0
        assert out.strip() == "1,1,2,4,7,12,23,39,67,118"

    def test_gw(self, capsys):
        code, out = run(capsys, "sequence", "gw", "--max-w", "6")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "w,g_w,ratio,cumulative"
        assert lines[1] == "0,1,-,1"
        assert lines[-1] == "6,167,2.386,1.719"

    def test_missing_bound_exit_2(self):
        with pytest.raises(SystemExit) as err:
            main(["sequence", "gw"])
        assert err.value.code == 2


class TestMap:
    def test_widen(self, capsys):
        code, out = run(capsys, "map", "--gapset", "1,3,5", "--op", "phi")
        assert code == 0
        assert "phi: 1,2,4,7" in out
        assert "classification: gapset" in out
        assert "sigma:" in out

    def test_not_an_m_set_report(self, capsys):
        code, out = run(
            capsys, "map", "--gapset", "1,2,3,4,6,7,9,11,14", "--op", "phi"
        )
        assert code == 0
        assert "classification: not-m-set" in out

    def test_invalid_input_exit_4(self, capsys):
        code, out = run(capsys, "map", "--gapset", "1,4", "--op", "phi")
        assert code == 4
        assert "(4, 2, 2)" in out

    def test_shift_blocks(self, capsys):
        code, out = run(capsys, "map", "--gapset", "1,2,3,4,5,6,7,8,9,11,19,21", "--op", "sigma")
        assert code == 0
        assert "sigma: 1,2,3,4,5,6,7,8,9,10,12,20,23" in out

    def test_narrow(self, capsys):
        code, out = run(
            capsys, "map", "--gapset", "1,2,4,7", "--op", "phi-inverse", "--kappa", "3"
        )
        assert code == 0
        assert "phi-inverse: 1,3,5" in out

    def test_narrow_out_of_regime_exit_4(self, capsys):
        code, _ = run(
            capsys, "map", "--gapset", "1,3,5", "--op", "phi-inverse", "--kappa", "2"
        )
        assert code == 4


class TestVerify:
    def test_core_suite_coverage(self, capsys):
        code, out = run(capsys, "verify", "--max-genus", "3", "--suite", "core")
        assert code == 0
        assert "gapsets=8" in out
        assert "violations=0" in out

    def test_all_suites_pass(self, capsys):
        code, out = run(capsys, "verify", "--max-genus", "6", "--suite", "all")
        assert code == 0
        assert out.count("violations=0") >= 4

    def test_violations_exit_1_with_witness(self, capsys, monkeypatch):
        from gapsets import cli
        from gapsets.verification import SuiteReport, Violation

        def fake(names, max_genus, cache_dir=None, workers=1):
            report = SuiteReport("core", max_genus, gapsets_covered=1, checks_run=1)
            report.violations.append(
                Violation("core", "planted", (1, 4), "for the exit-code contract")
            )
            return [report]

        monkeypatch.setattr(cli, "run_suites", fake)
        code, out = run(capsys, "verify", "--max-genus", "2")
        assert code == 1
        assert "VIOLATION planted: 1,4" in out
