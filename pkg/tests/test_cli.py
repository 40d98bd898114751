"""Tests for the command line front end: output formats, round-trips, exit codes."""

import os
import tempfile
from fractions import Fraction

import pytest

from thetasing import cli
from thetasing.pipeline import set_boundary_relations_path
from thetasing.tautring import set_normalizations_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def record_lines(text):
    return [l for l in text.splitlines() if l and not l.startswith("#")]


def test_compactified_genus4_records_roundtrip(capsys):
    code, out = run(
        capsys, "--command", "compactified-class", "--genus", "4",
        "--format", "records",
    )
    assert code == 0
    lines = record_lines(out)
    assert len(lines) == 17
    for line in lines:
        rec = cli.parse_record_line(line)
        assert rec["prov"] == "paper"
        rebuilt = cli._record(
            4, rec["lambda"], rec["word"], rec["value"], rec["prov"]
        )
        assert rebuilt == line


def test_compactified_genus5_has_one_derived_row(capsys):
    code, out = run(
        capsys, "--command", "compactified-class", "--genus", "5",
        "--format", "records",
    )
    assert code == 0
    lines = record_lines(out)
    assert len(lines) == 35
    derived = [l for l in lines if cli.parse_record_line(l)["prov"] == "derived"]
    assert len(derived) == 1
    rec = cli.parse_record_line(derived[0])
    assert rec["lambda"] == (2, 0, 0, 0, 0)
    assert rec["word"] == ("beta3",)
    assert rec["value"] == Fraction(-15, 4)


def test_compactified_genus2_reports_vanishing(capsys):
    code, out = run(capsys, "--command", "compactified-class", "--genus", "2")
    assert code == 0
    assert out.splitlines()[-1] == "# after the genus-2 word relations the class is 0"


def test_open_class_zero_is_pinned(capsys):
    code, out = run(
        capsys, "--command", "open-class", "--genus", "2", "--format", "records"
    )
    assert code == 0
    assert out == "0 prov=paper\n"


def test_taut_projection_text(capsys):
    code, out = run(capsys, "--command", "taut-projection", "--genus", "4")
    assert code == 0
    assert out == "45 * lam1^4  [paper]\n"


def test_taut_projection_unpinned_genus(capsys):
    code, out = run(
        capsys, "--command", "taut-projection", "--genus", "3",
        "--format", "records",
    )
    assert code == 0
    lines = record_lines(out)
    assert len(lines) == 2
    assert all(cli.parse_record_line(l)["prov"] == "derived" for l in lines)


def test_ij_taut_records(capsys):
    code, out = run(capsys, "--command", "ij-taut", "--format", "records")
    assert code == 0
    recs = [cli.parse_record_line(l) for l in record_lines(out)]
    values = {r["lambda"]: r["value"] for r in recs}
    assert values == {
        (5, 0, 0, 0, 0): Fraction(140),
        (2, 0, 1, 0, 0): Fraction(-376),
        (0, 0, 0, 0, 1): Fraction(848),
    }
    assert all(r["prov"] == "paper" for r in recs)


def test_verify_identities_custom_file(capsys):
    fd, path = tempfile.mkstemp(suffix=".txt")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("quartic-sum-split: sigma4 - beta4 = "
                     "cfg(1,1,1,1; 1 2 3 4) + cfg(1,1,1,1; 1 2 3)\n")
            fh.write("y-sigma1: Y*sigma1 = A3 + A5 + B2\n")
        code, out = run(
            capsys, "--command", "verify-identities", "--genus", "2",
            "--data", f"identities={path}",
        )
    finally:
        os.unlink(path)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("ok quartic-sum-split")
    assert lines[1].startswith("ok y-sigma1")
    assert lines[-1] == "# checked 2 identities at genus 2"


def test_verify_identities_failure_exit_code(capsys):
    fd, path = tempfile.mkstemp(suffix=".txt")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("bogus-double: sigma2 = 2*sigma2\n")
        code, out = run(
            capsys, "--command", "verify-identities", "--genus", "2",
            "--data", f"identities={path}",
        )
    finally:
        os.unlink(path)
    assert code == 2
    assert out.splitlines()[0].startswith("FAIL bogus-double")


def test_verify_identities_genus_restriction(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--command", "verify-identities", "--genus", "4"])
    capsys.readouterr()


def test_verify_counts_exhaustive(capsys):
    code, out = run(capsys, "--command", "verify-counts", "--genus", "2")
    assert code == 0
    assert out == "ok genus=2 mode=exhaustive tuples=76 mismatches=0\n"


def test_verify_counts_sampled(capsys):
    code, out = run(
        capsys, "--command", "verify-counts", "--genus", "4",
        "--samples", "200", "--seed", "11",
    )
    assert code == 0
    assert out == "ok genus=4 mode=sampled(200) tuples=201 mismatches=0\n"


def test_byte_stability(capsys):
    args = ("--command", "compactified-class", "--genus", "3", "--format", "records")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second


def test_ring_info(capsys):
    code, out = run(capsys, "--command", "ring-info", "--genus", "3")
    assert code == 0
    assert "total=8" in out
    assert "normalization=1/181440" in out
    code, out = run(capsys, "--command", "ring-info", "--genus", "3", "--open")
    assert code == 0
    assert "total=4" in out


def test_ring_info_needs_genus(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--command", "ring-info"])
    capsys.readouterr()


def test_bad_data_override(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--command", "ring-info", "--genus", "2", "--data", "bogus=x"])
    capsys.readouterr()


def test_normalization_override_changes_provenance(capsys):
    fd, path = tempfile.mkstemp(suffix=".txt")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("genus=1 value=1/24 source=t\n")
            fh.write("genus=3 value=1/181440 source=t\n")
            fh.write("genus=4 value=1/3628800 source=t\n")
        code, out = run(
            capsys, "--command", "product-taut", "--genus", "4",
            "--format", "records", "--data", f"normalizations={path}",
        )
        # halving the top normalization doubles the solved class, so the
        # output no longer matches the pinned value
        assert code == 0
        recs = [cli.parse_record_line(l) for l in record_lines(out)]
        assert recs[0]["value"] == Fraction(40)
        assert recs[0]["prov"] == "derived"
    finally:
        set_normalizations_path(None)
        set_boundary_relations_path(None)
        os.unlink(path)
