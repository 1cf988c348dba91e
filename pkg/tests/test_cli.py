"""CLI surface: verbs, exit codes, byte-stable output, file round-trips."""

import pytest

from permsum.cli import main
from permsum.families import family_from_text, read_family
from permsum.verify import verify_family


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_t5_table(self, capsys):
        code, out, _ = run(capsys, "bounds", "5", "t")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split()[:5] == [
            "quantity",
            "lower",
            "upper_exact",
            "upper_float",
            "exact_if_known",
        ]
        row = lines[1].split()
        assert row[0] == "t(5)"
        assert row[1] == "8"
        assert row[2] == "12"

    def test_s5_reports_both_integer_forms(self, capsys):
        code, out, _ = run(capsys, "bounds", "5", "s")
        assert code == 0
        row = out.splitlines()[1]
        assert row.split()[1:4] == ["10", "20", "25.464791"]
        assert "alt_upper=10" in row

    def test_byte_stable(self, capsys):
        _, first, _ = run(capsys, "bounds", "9", "t")
        _, second, _ = run(capsys, "bounds", "9", "t")
        assert first == second


class TestConstructVerify:
    def test_roundtrip_exits_zero(self, capsys, tmp_path):
        out_file = str(tmp_path / "fam.txt")
        code, out, _ = run(capsys, "construct", "p1", "9", "-o", out_file)
        assert code == 0
        assert "count=27" in out
        code, out, _ = run(capsys, "verify", out_file)
        assert code == 0
        assert "ok=true" in out
        assert "pairs_checked=351" in out

    @pytest.mark.parametrize("prop,n", [("p1", 3), ("p1", 15), ("p2", 5), ("p2", 7), ("p3", 5), ("p3", 7)])
    def test_roundtrip_all_constructions(self, capsys, tmp_path, prop, n):
        out_file = str(tmp_path / "fam.txt")
        assert run(capsys, "construct", prop, str(n), "-o", out_file)[0] == 0
        assert run(capsys, "verify", out_file)[0] == 0

    def test_construct_to_stdout_parses_back(self, capsys):
        code, out, _ = run(capsys, "construct", "p2", "5")
        assert code == 0
        fam = family_from_text(out)
        assert len(fam.members) == 8
        assert verify_family(fam).ok

    def test_verify_failure_exits_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("permfam v1\nn=3 prop=P1 count=2\n0 1 2\n1 0 2\n")
        code, out, _ = run(capsys, "verify", str(bad))
        assert code == 1
        assert "ok=false" in out
        assert "violation pair=0,1" in out

    def test_malformed_file_exits_two(self, capsys, tmp_path):
        bad = tmp_path / "junk.txt"
        bad.write_text("not a family file\n")
        code, _, err = run(capsys, "verify", str(bad))
        assert code == 2
        assert "error:" in err

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_construct_even_n_exits_two(self, capsys):
        code, _, err = run(capsys, "construct", "p1", "6")
        assert code == 2
        code, _, err = run(capsys, "construct", "p3", "9")
        assert code == 2


class TestSearch:
    def test_s3(self, capsys):
        code, out, _ = run(capsys, "search", "s", "3", "--serial")
        assert code == 0
        assert "value=3" in out
        assert "status=exact" in out

    def test_byte_stable_and_certificate(self, capsys, tmp_path):
        cert = str(tmp_path / "cert.txt")
        code, first, _ = run(capsys, "search", "t", "5", "--serial", "-o", cert)
        assert code == 0
        fam = read_family(cert)
        assert len(fam.members) == 12
        assert verify_family(fam).ok
        code, second, _ = run(capsys, "search", "t", "5", "--serial", "-o", cert)
        assert first == second

    def test_threads_flag_same_output(self, capsys):
        _, serial, _ = run(capsys, "search", "t", "5", "--serial")
        _, threaded, _ = run(capsys, "search", "t", "5", "--threads", "3")
        assert serial == threaded

    def test_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMSUM_THREADS", "2")
        _, out, _ = run(capsys, "search", "s", "5")
        assert "value=10" in out
        monkeypatch.setenv("PERMSUM_THREADS", "banana")
        code, _, err = run(capsys, "search", "s", "5")
        assert code == 2

    def test_log_goes_to_stderr(self, capsys):
        _, out, err = run(capsys, "search", "s", "5", "--serial", "--log")
        assert "elapsed=" in err
        assert "elapsed" not in out

    def test_budget_guard_exits_three(self, capsys):
        code, _, err = run(capsys, "search", "s", "9")
        assert code == 3
        assert "error:" in err


class TestClassesOracle:
    def test_classes_5(self, capsys):
        code, out, _ = run(capsys, "classes", "5")
        assert code == 0
        assert "class_count=6" in out
        assert "size=20 count=6" in out

    def test_classes_guard(self, capsys):
        assert run(capsys, "classes", "9")[0] == 3

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "oracle", "s", "3")
        assert code == 0
        assert "value=3" in out

    def test_oracle_guard(self, capsys):
        assert run(capsys, "oracle", "t", "7")[0] == 3


class TestUsage:
    def test_unknown_verb(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_bad_quantity(self, capsys):
        assert run(capsys, "bounds", "5", "x")[0] == 2

    def test_no_args(self, capsys):
        assert run(capsys)[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
