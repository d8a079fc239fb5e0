from pathlib import Path

import pytest

from finalg.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_PRECONDITION,
    run,
)
from finalg.loaders import dump_algebra

DATA = str(Path(__file__).parent.parent / "demos" / "data")


def invoke(*argv):
    report, status, fmt = run(list(argv))
    return report, status


class TestExitCodes:
    def test_pierce_z6_ok(self):
        report, status = invoke("pierce", f"{DATA}/z6.alg")
        assert status == EXIT_OK
        assert report.data["atoms"] == [[3], [4]]
        assert report.data["stalk_sizes"] == [2, 3]

    def test_center_m3_connected(self):
        report, status = invoke("center", f"{DATA}/m3.alg")
        assert status == EXIT_OK
        assert report.data["central_tuples"] == [[0], [4]]
        assert report.data["connected"] is True

    def test_hom_sc_violation(self):
        report, status = invoke("hom", f"{DATA}/lat2x2_into_m3.hom")
        assert status == EXIT_CHECK_FAILED
        failing = {c.name for c in report.checks if not c.passed}
        assert "sc_central_elements_preserved" in failing

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.alg"
        bad.write_text("algebra broken\nsize x\n")
        report, status = invoke("con", str(bad))
        assert status == EXIT_PARSE_ERROR

    def test_missing_file(self):
        report, status = invoke("con", "no_such_file.alg")
        assert status == EXIT_PARSE_ERROR

    def test_out_of_range_entry(self, tmp_path):
        bad = tmp_path / "bad.alg"
        bad.write_text(
            "algebra a\nsize 6\ntuple-length 1\nop f 1\n0 1 2 3 4 7\n"
            "op c 0\n0\nop d 0\n1\nzero c\none d\n"
        )
        report, status = invoke("con", str(bad))
        assert status == EXIT_PARSE_ERROR

    def test_size_cap_precondition(self):
        report, status = invoke("--max-size", "4", "con", f"{DATA}/z6.alg")
        assert status == EXIT_PRECONDITION

    def test_degenerate_constants_precondition(self, tmp_path):
        text = (
            "algebra d\nsize 2\ntuple-length 1\nop f 1\n0 1\nop c 0\n0\n"
            "zero c\none c\n"
        )
        (tmp_path / "d.alg").write_text(text)
        report, status = invoke("center", str(tmp_path / "d.alg"))
        assert status == EXIT_PRECONDITION


class TestCommands:
    def test_con_with_oracle(self):
        report, status = invoke("--oracle", "con", f"{DATA}/z6.alg")
        assert status == EXIT_OK
        assert report.data["congruence_count"] == 4
        names = {c.name for c in report.checks}
        assert "oracle_all_congruences" in names

    def test_fc(self):
        report, status = invoke("fc", f"{DATA}/z6.alg")
        assert status == EXIT_OK
        assert len(report.data["factor_pairs"]) == 4

    def test_certify(self):
        report, status = invoke("certify", f"{DATA}/z6.alg", "--gen", "1,3")
        assert status == EXIT_OK
        assert all(c.passed for c in report.checks)

    def test_certify_unrelated_pair(self):
        report, status = invoke(
            "certify", f"{DATA}/z6.alg", "--gen", "1,3", "--pair", "0,1"
        )
        assert status == EXIT_CHECK_FAILED

    def test_defines(self):
        report, status = invoke(
            "defines",
            f"{DATA}/ring_theta1.fol",
            f"{DATA}/z2.alg", f"{DATA}/z3.alg",
            f"{DATA}/z2.alg", f"{DATA}/z2.alg",
            f"{DATA}/z3.alg", f"{DATA}/z3.alg",
            f"{DATA}/z6.alg", f"{DATA}/z2.alg",
        )
        assert status == EXIT_OK

    def test_defines_odd_count_rejected(self):
        report, status = invoke(
            "defines", f"{DATA}/ring_theta1.fol", f"{DATA}/z2.alg", f"{DATA}/z3.alg",
            f"{DATA}/z6.alg",
        )
        assert status == EXIT_PARSE_ERROR

    def test_sigma_pair(self):
        report, status = invoke(
            "sigma", f"{DATA}/z6.alg", f"{DATA}/ring_theta1.fol", "--e", "3", "--f", "4"
        )
        assert status == EXIT_OK
        assert report.data["axioms_hold"] is True

    def test_sigma_connected(self):
        report, status = invoke(
            "sigma", f"{DATA}/m3.alg", f"{DATA}/lattice_theta1.fol", "--connected"
        )
        assert status == EXIT_OK
        assert report.data["connected_axioms"] is True

    def test_sheaf_lattice(self):
        report, status = invoke("sheaf", f"{DATA}/lat2x2.lat")
        assert status == EXIT_OK
        assert report.data["partition_object_sizes"] == [1, 2, 2, 4]

    def test_sheaf_pierce(self):
        report, status = invoke("sheaf", "--pierce", f"{DATA}/z6.alg")
        assert status == EXIT_OK

    def test_sheaf_constant_rejected(self):
        report, status = invoke(
            "sheaf", f"{DATA}/chain2.lat", "--constant", f"{DATA}/z6.alg"
        )
        assert status == EXIT_CHECK_FAILED


class TestDeterminism:
    def test_structured_output_byte_identical(self, capsys):
        from finalg.cli import main

        args = ["--format", "structured", "pierce", f"{DATA}/z6.alg"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        second = capsys.readouterr().out
        assert first == second
        assert first.startswith("{")

    def test_text_output_byte_identical(self, capsys):
        from finalg.cli import main

        args = ["center", f"{DATA}/lat2x2.alg"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        second = capsys.readouterr().out
        assert first == second

    def test_structured_has_sorted_keys(self):
        report, status = invoke("fc", f"{DATA}/z2.alg")
        doc = report.to_structured()
        import json

        parsed = json.loads(doc)
        assert list(parsed) == sorted(parsed)
