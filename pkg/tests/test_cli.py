"""CLI contract: subcommands, exit codes, output formats, determinism."""

import json

import pytest

from wordwait.cli import run

FAST_REPS = ["--reps", "300", "--seed", "7"]


def read(path):
    return path.read_text()


class TestAnalyticTables:
    def test_table1_values_present(self, capsys):
        assert run(["table1"]) == 0
        out = capsys.readouterr().out
        assert "4420.57" in out and "69104.2" in out

    def test_table2_category_rows(self, capsys):
        assert run(["table2"]) == 0
        out = capsys.readouterr().out
        assert "2+4" in out and "0.1328125" in out

    def test_table3_word_rows(self, capsys):
        assert run(["table3"]) == 0
        out = capsys.readouterr().out
        assert "AACCGT" in out and "ACACACAC" in out

    def test_table6_both_lengths(self, capsys):
        assert run(["table6"]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 2 + 5 + 7  # comment + column row + data rows

    def test_table7_triangular(self, capsys):
        assert run(["table7", "--W", "8"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        data = [l for l in lines if not l.startswith("#")][1:]
        assert len(data) == 8
        assert float(data[0].split(",")[1]) == pytest.approx(69104.23, abs=0.005)
        assert float(data[7].split(",")[1]) == pytest.approx(65535.0, abs=1e-6)
        assert data[7].split(",")[2] == ""  # below the diagonal

    def test_table8_columns(self, capsys):
        assert run(["table8"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        data = [l.split(",") for l in lines if not l.startswith("#")][1:]
        by_x = {int(r[0]): (float(r[1]), float(r[2])) for r in data}
        assert by_x[7][0] == pytest.approx(2.156068, abs=5e-7)
        assert by_x[0][0] == pytest.approx(47.229002, abs=5e-7)

    def test_approx3_summary(self, capsys):
        assert run(["approx3", "--W", "6"]) == 0
        out = capsys.readouterr().out
        assert "steps_rounded=214" in out and "years_billion=89.2" in out

    def test_scan_row_count(self, capsys):
        assert run(["scan", "--W", "4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert sum(1 for l in lines if not l.startswith("#")) == 1 + 4**4


class TestSimulationCommands:
    def test_table4_runs_small(self, tmp_path):
        out = tmp_path / "t4.csv"
        code = run(["table4", "--W", "6", *FAST_REPS, "--out", str(out)])
        assert code == 0
        text = read(out)
        assert "reps=300" in text and "seed=7" in text
        assert text.count("\n") == 2 + 6

    def test_table5_runs_small(self, tmp_path):
        out = tmp_path / "t5.csv"
        assert run(["table5", *FAST_REPS, "--out", str(out)]) == 0
        assert "ACAGCTGT" in read(out)

    def test_fig_commands(self, tmp_path):
        for name in ("fig1", "fig2", "fig3", "fig4"):
            out = tmp_path / f"{name}.csv"
            assert run([name, *FAST_REPS, "--out", str(out)]) == 0
            text = read(out)
            assert "bin_start,count" in text
            assert "atom_at_zero=" in text

    def test_words_override(self, capsys):
        assert run(["table4", "--words", "ACGTAC", "--reps", "200",
                    "--seed", "2"]) == 0
        out = capsys.readouterr().out
        data = [l for l in out.splitlines() if not l.startswith("#")][1:]
        assert len(data) == 1 and data[0].startswith("ACGTAC")

    def test_headline_contains_reference_years(self, capsys):
        assert run(["headline", "--reps", "200", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "107697.84" in out
        assert "61559.5" in out
        assert "375000" in out


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["table1"],
            ["table4", "--W", "6", "--reps", "300", "--seed", "11"],
            ["table5", "--reps", "200", "--seed", "11"],
            ["fig1", "--reps", "300", "--seed", "11"],
            ["scan", "--W", "5"],
        ],
    )
    def test_byte_identical_across_threads(self, argv, tmp_path):
        a = tmp_path / "a.out"
        b = tmp_path / "b.out"
        assert run([*argv, "--threads", "1", "--out", str(a)]) == 0
        assert run([*argv, "--threads", "4", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_and_csv_agree_numerically(self, tmp_path):
        c = tmp_path / "t.csv"
        j = tmp_path / "t.json"
        run(["table3", "--out", str(c), "--format", "csv"])
        run(["table3", "--out", str(j), "--format", "json"])
        payload = json.loads(read(j))
        csv_rows = [
            l.split(",") for l in read(c).splitlines() if not l.startswith("#")
        ][1:]
        assert len(csv_rows) == len(payload["rows"])
        for crow, jrow in zip(csv_rows, payload["rows"]):
            assert crow[0] == jrow[0]
            for cval, jval in zip(crow[1:], jrow[1:]):
                assert float(cval) == jval


class TestConfigAndErrors:
    def test_config_provides_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("W=8\n")
        assert run(["approx3", "--config", str(cfg)]) == 0
        assert "steps_rounded=2300" in capsys.readouterr().out

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("W=8\n")
        assert run(["approx3", "--config", str(cfg), "--W", "6"]) == 0
        assert "steps_rounded=214" in capsys.readouterr().out

    def test_unknown_config_key_exits_one(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("frobnicate=1\n")
        assert run(["approx3", "--config", str(cfg)]) == 1

    def test_bad_flag_exits_one(self):
        with pytest.raises(SystemExit) as err:
            run(["table1", "--nonsense"])
        assert err.value.code == 1

    def test_bad_subcommand_exits_one(self):
        with pytest.raises(SystemExit) as err:
            run(["frobnicate"])
        assert err.value.code == 1

    def test_step_cap_exit_code(self, capsys):
        code = run(["fig1", "--word", "ACGTAC", "--L", "64", "--reps", "5",
                    "--seed", "3", "--step-cap", "2"])
        assert code == 3
        assert "replication" in capsys.readouterr().err

    def test_selftest_passes(self, capsys):
        assert run(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and "PASS" in out
