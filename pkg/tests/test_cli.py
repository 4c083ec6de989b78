import json

import pytest

from dnacode.cli import main
from dnacode import (
    ConstraintSpec,
    DesignConfig,
    SSParams,
    SimilarityModel,
    enumerate_constrained,
    export_mfe_pairs,
    read_sequence_file,
    search,
)
from dnacode.design import Code


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestEnumerate:
    def test_default_n4_to_stdout(self, capsys):
        status, out, err = run(capsys, "enumerate", "--n", "4")
        assert status == 0
        lines = out.splitlines()
        assert len(lines) == 96
        assert "96 sequences" in err

    def test_n1_unconstrained(self, capsys):
        status, out, _ = run(
            capsys, "enumerate", "--n", "1", "--gc-low", "0", "--gc-high", "1",
            "--run-max", "1",
        )
        assert status == 0
        assert out.splitlines() == ["A", "C", "G", "T"]

    def test_to_file_round_trips(self, tmp_path, capsys):
        out_path = tmp_path / "seqs.txt"
        status, out, _ = run(capsys, "enumerate", "--n", "4", "--out", str(out_path))
        assert status == 0 and out == ""
        assert read_sequence_file(out_path) == enumerate_constrained(ConstraintSpec(n=4))

    def test_cap_exceeded_is_usage_error(self, capsys):
        status, _, err = run(capsys, "enumerate", "--n", "15")
        assert status == 2
        assert "cap" in err


class TestDesign:
    def test_writes_code_and_report(self, tmp_path, capsys):
        out_path = tmp_path / "code.txt"
        status, _, _ = run(
            capsys, "design", "--n", "6", "--model", "ss", "--t-th", "0.5",
            "--out", str(out_path),
        )
        assert status == 0
        words = read_sequence_file(out_path)
        cfg = DesignConfig(
            spec=ConstraintSpec(n=6), model=SimilarityModel("ss", SSParams()), t_th=0.5
        )
        assert words == search(cfg).words
        report = json.loads((tmp_path / "code.txt.report.json").read_text())
        assert report["schema_version"] == 1
        assert report["violations"] == []
        assert report["code"] == words
        assert report["config"]["t_th"] == 0.5
        assert "delta" not in report

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (a, b):
            status, _, _ = run(
                capsys, "design", "--n", "6", "--model", "ss", "--t-th", str(1 - 4 / 6),
                "--out", str(path),
            )
            assert status == 0
        assert a.read_bytes() == b.read_bytes()
        assert (tmp_path / "a.txt.report.json").read_bytes() == \
            (tmp_path / "b.txt.report.json").read_bytes()

    def test_zero_threshold_caps_at_one_word(self, tmp_path, capsys):
        out_path = tmp_path / "code.txt"
        status, _, _ = run(
            capsys, "design", "--n", "4", "--model", "ss", "--t-th", "0",
            "--out", str(out_path),
        )
        assert status == 0
        assert len(read_sequence_file(out_path)) <= 1

    def test_distance_model(self, tmp_path, capsys):
        out_path = tmp_path / "code.txt"
        status, _, _ = run(
            capsys, "design", "--n", "6", "--model", "hamming", "--d-th", "3",
            "--out", str(out_path),
        )
        assert status == 0
        assert read_sequence_file(out_path)

    def test_unwritable_out_is_io_error(self, capsys, tmp_path):
        status, _, err = run(
            capsys, "design", "--n", "4", "--model", "ss", "--t-th", "0.5",
            "--out", str(tmp_path / "missing" / "code.txt"),
        )
        assert status == 3
        assert "I/O error" in err

    def test_mismatched_threshold_is_usage_error(self, capsys, tmp_path):
        status, _, err = run(
            capsys, "design", "--n", "4", "--model", "ss", "--d-th", "2",
            "--out", str(tmp_path / "c.txt"),
        )
        assert status == 2 and "t-th" in err


class TestEval:
    def design_small(self, tmp_path, capsys):
        out_path = tmp_path / "code.txt"
        status, _, _ = run(
            capsys, "design", "--n", "6", "--model", "ss", "--t-th", "0.5",
            "--out", str(out_path),
        )
        assert status == 0
        return out_path

    def test_valid_code(self, tmp_path, capsys):
        code_path = self.design_small(tmp_path, capsys)
        status, out, _ = run(
            capsys, "eval", str(code_path), "--model", "ss", "--t-th", "0.5",
        )
        assert status == 0
        doc = json.loads(out)
        assert doc["violations"] == [] and "delta" not in doc
        assert doc["config"]["n"] == 6  # inferred from the file

    def test_duplicate_word_fails_validation(self, tmp_path, capsys):
        code_path = self.design_small(tmp_path, capsys)
        words = read_sequence_file(code_path)
        bad = tmp_path / "bad.txt"
        bad.write_text("\n".join(words + [words[0]]) + "\n")
        status, out, _ = run(capsys, "eval", str(bad), "--model", "ss", "--t-th", "0.5")
        assert status == 1
        doc = json.loads(out)
        assert any(v["clause"] == "SSSS" and v["value"] == 1.0 for v in doc["violations"])

    def test_bad_base_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("ACGTAA\nACGTAX\n")
        status, _, err = run(capsys, "eval", str(bad), "--model", "ss", "--t-th", "0.5")
        assert status == 2
        assert "line 2" in err

    def test_mixed_lengths_rejected(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("ACGTAA\nACGTA\n")
        status, _, err = run(capsys, "eval", str(bad), "--model", "ss", "--t-th", "0.5")
        assert status == 2 and "lengths" in err

    def test_n_flag_must_match_file(self, tmp_path, capsys):
        code_path = self.design_small(tmp_path, capsys)
        status, _, err = run(
            capsys, "eval", str(code_path), "--n", "7", "--model", "ss", "--t-th", "0.5",
        )
        assert status == 2 and "does not match" in err

    def test_missing_file_is_io_error(self, capsys, tmp_path):
        status, _, err = run(
            capsys, "eval", str(tmp_path / "nope.txt"), "--model", "ss", "--t-th", "0.5",
        )
        assert status == 3

    def test_delta_from_hand_built_table(self, tmp_path, capsys):
        cfg = DesignConfig(
            spec=ConstraintSpec(n=4, gc_low=0.0, gc_high=1.0),
            model=SimilarityModel("ss", SSParams()),
            t_th=1.0,
        )
        words = ["AACC", "ATCG"]
        code_path = tmp_path / "toy.txt"
        code_path.write_text("\n".join(words) + "\n")
        table_path = tmp_path / "mfe.tsv"
        rows = []
        for p in export_mfe_pairs(Code(words=words, config=cfg)):
            value = -9.0 if p.role == "PERFECT" else -2.0
            rows.append(f"{p.seq1}\t{p.seq2}\t{value}")
        table_path.write_text("\n".join(rows) + "\n")
        status, out, _ = run(
            capsys, "eval", str(code_path), "--model", "ss", "--t-th", "1.0",
            "--gc-low", "0", "--gc-high", "1", "--mfe-table", str(table_path),
        )
        assert status == 0
        doc = json.loads(out)
        assert doc["delta"] == pytest.approx(7.0)  # -2 - (-9)

    def test_missing_mfe_entries_listed(self, tmp_path, capsys):
        code_path = tmp_path / "toy.txt"
        code_path.write_text("AACC\n")
        table_path = tmp_path / "mfe.tsv"
        table_path.write_text("AACC\tAACC\t-1.0\n")  # PERFECT entry absent
        status, _, err = run(
            capsys, "eval", str(code_path), "--model", "ss", "--t-th", "1.0",
            "--gc-low", "0", "--gc-high", "1", "--mfe-table", str(table_path),
        )
        assert status == 2
        assert "GGTT" in err  # the missing desirable duplex is named

    def test_report_to_file(self, tmp_path, capsys):
        code_path = self.design_small(tmp_path, capsys)
        report_path = tmp_path / "report.json"
        status, out, _ = run(
            capsys, "eval", str(code_path), "--model", "ss", "--t-th", "0.5",
            "--out", str(report_path),
        )
        assert status == 0 and out == ""
        assert json.loads(report_path.read_text())["violations"] == []


class TestConfigFile:
    def test_file_supplies_parameters(self, tmp_path, capsys):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text(
            "# demo config\nn = 6\nmodel = ss\nt_th = 0.5\nrun_max = 3\n"
        )
        out_path = tmp_path / "code.txt"
        status, _, _ = run(
            capsys, "design", "--config", str(cfg_path), "--out", str(out_path),
        )
        assert status == 0
        direct = search(
            DesignConfig(spec=ConstraintSpec(n=6), model=SimilarityModel("ss", SSParams()),
                         t_th=0.5)
        )
        assert read_sequence_file(out_path) == direct.words

    def test_flags_override_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text("n = 6\nmodel = ss\nt_th = 0.5\n")
        status, out, _ = run(
            capsys, "enumerate", "--config", str(cfg_path), "--n", "4",
        )
        assert status == 0
        assert len(out.splitlines()) == 96  # n=4 wins over the file's n=6

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text("frobnicate = 7\n")
        status, _, err = run(capsys, "enumerate", "--config", str(cfg_path))
        assert status == 2 and "unknown key" in err

    def test_bad_value_rejected(self, tmp_path, capsys):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text("n = six\n")
        status, _, err = run(capsys, "enumerate", "--config", str(cfg_path))
        assert status == 2 and "bad value" in err

    def test_missing_config_file_is_io_error(self, capsys, tmp_path):
        status, _, _ = run(
            capsys, "enumerate", "--config", str(tmp_path / "nope.cfg"),
        )
        assert status == 3


class TestCompare:
    def write_cfg(self, path, text):
        path.write_text(text)
        return str(path)

    def test_two_model_comparison(self, tmp_path, capsys):
        ham = self.write_cfg(tmp_path / "ham.cfg", "n = 6\nmodel = hamming\nd_th = 3\n")
        sscfg = self.write_cfg(tmp_path / "ss.cfg", "n = 6\nmodel = ss\nt_th = 0.5\n")
        outdir = tmp_path / "cmp"
        status, out, _ = run(
            capsys, "compare", "--config", ham, "--config", sscfg, "--out", str(outdir),
        )
        assert status == 0
        lines = out.splitlines()
        assert lines[0].split("\t") == [
            "cell", "model", "threshold", "raw_size", "size", "measure", "t_gap", "delta",
        ]
        assert len(lines) == 3
        assert (outdir / "comparison.tsv").read_text() == out
        for stem in ("cell01", "cell02"):
            assert (outdir / f"{stem}.code.txt").exists()
            assert (outdir / f"{stem}.report.json").exists()
            manifest = (outdir / f"{stem}.pairs.tsv").read_text()
            assert manifest.startswith("# temperature=37C\n")
        assert lines[1].split("\t")[7] == "-"  # no table given: delta blank

    def test_match_sizes(self, tmp_path, capsys):
        strict = self.write_cfg(tmp_path / "a.cfg", "n = 6\nmodel = ss\nt_th = 0.34\n")
        loose = self.write_cfg(tmp_path / "b.cfg", "n = 6\nmodel = ss\nt_th = 0.5\n")
        outdir = tmp_path / "cmp"
        status, out, _ = run(
            capsys, "compare", "--config", strict, "--config", loose,
            "--match-sizes", "--out", str(outdir),
        )
        assert status == 0
        rows = [line.split("\t") for line in out.splitlines()[1:]]
        sizes = {int(r[4]) for r in rows}
        assert len(sizes) == 1

    def test_requires_config(self, capsys, tmp_path):
        status, _, err = run(capsys, "compare", "--out", str(tmp_path / "cmp"))
        assert status == 2 and "config" in err

    def test_mismatched_n_rejected(self, tmp_path, capsys):
        a = self.write_cfg(tmp_path / "a.cfg", "n = 6\nmodel = ss\nt_th = 0.5\n")
        b = self.write_cfg(tmp_path / "b.cfg", "n = 7\nmodel = ss\nt_th = 0.5\n")
        status, _, err = run(
            capsys, "compare", "--config", a, "--config", b, "--out", str(tmp_path / "o"),
        )
        assert status == 2 and "share n" in err


class TestOracle:
    def test_reports_sizes_and_ratio(self, capsys):
        status, out, _ = run(
            capsys, "oracle", "--n", "4", "--model", "ss", "--t-th", "0.5",
        )
        assert status == 0
        fields = dict(line.split("\t") for line in out.splitlines())
        oracle_size = int(fields["oracle_size"])
        search_size = int(fields["search_size"])
        assert oracle_size >= search_size >= 1
        assert float(fields["ratio"]) == pytest.approx(search_size / oracle_size)

    def test_empty_instance_reports_zeroes(self, capsys):
        status, out, _ = run(
            capsys, "oracle", "--n", "2", "--gc-low", "0.7", "--gc-high", "0.8",
            "--model", "ss", "--t-th", "0.5",
        )
        assert status == 0
        fields = dict(line.split("\t") for line in out.splitlines())
        assert fields["oracle_size"] == "0" and fields["search_size"] == "0"
        assert fields["ratio"] == "-"


def test_module_entry_point(capsys):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "dnacode", "enumerate", "--n", "1",
         "--gc-low", "0", "--gc-high", "1", "--run-max", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["A", "C", "G", "T"]
