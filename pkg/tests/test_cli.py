"""Command-line surface: subcommands, exit codes, deterministic output."""

import pytest
from click.testing import CliRunner

from dgdeform.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _family_file(runner, tmp_path, n, variant, extra=()):
    path = tmp_path / f"{variant}{n}.dgm"
    result = runner.invoke(
        main, ["paper-family", "--n", str(n), "--variant", variant, "--out", str(path), *extra]
    )
    assert result.exit_code == 0, result.output
    return path


def test_check_ok(runner, tmp_path):
    path = _family_file(runner, tmp_path, 2, "polynomial")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 0
    assert "d^2 = 0" in result.output


def test_check_malformed_file_exits_2(runner, tmp_path):
    path = tmp_path / "broken.dgm"
    path.write_text("field Q\nmodule V { basis x1 : ; }\n")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 2


def test_check_non_differential_exits_1(runner, tmp_path):
    path = tmp_path / "bad.dgm"
    path.write_text(
        "field Q\n"
        "module V {\n  basis x4 : 2, x6 : 3, x8 : 4;\n}\n"
        "map d degree -1 {\n  x6 -> x4;\n  x8 -> x6;\n}\n"
    )
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 1


def test_missing_file_exits_2(runner):
    result = runner.invoke(main, ["check", "/no/such/file.dgm"])
    assert result.exit_code == 2


def test_usage_error_exits_2(runner):
    result = runner.invoke(main, ["cohomology"])  # missing required args
    assert result.exit_code == 2


def test_cohomology_output(runner, tmp_path):
    path = tmp_path / "tiny.dgm"
    path.write_text(
        "field Q\nmodule V {\n  basis y1 : 1, y2 : 2;\n}\nmap d degree -1 {\n  y2 -> y1;\n}\n"
    )
    result = runner.invoke(main, ["cohomology", str(path), "--p", "0", "--p", "1"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "H^0 dim=0"
    assert "H^1 dim=0" in result.output


def test_obstruction_output(runner, tmp_path):
    path = _family_file(runner, tmp_path, 2, "obstructed")
    result = runner.invoke(main, ["obstruction", str(path), "--order", "2"])
    assert result.exit_code == 0
    assert result.output == "O_2 = -x4 d/d x8\n"


def test_obstruction_needs_deformation_block(runner, tmp_path):
    path = tmp_path / "nodef.dgm"
    path.write_text("field Q\nmodule V { basis x1 : 1, x3 : 2; }\nmap d degree -1 { x3 -> x1; }\n")
    result = runner.invoke(main, ["obstruction", str(path), "--order", "1"])
    assert result.exit_code == 2


def test_deform_obstructed_exits_1(runner, tmp_path):
    path = _family_file(runner, tmp_path, 2, "obstructed")
    result = runner.invoke(main, ["deform", str(path), "--order", "5"])
    assert result.exit_code == 1
    assert "obstructed at order 2" in result.output
    assert "O_2 = -x4 d/d x8" in result.output


def test_deform_canonical_lifts_escape_the_file_obstruction(runner, tmp_path):
    # re-solving from d_1 alone picks lifts whose ladder keeps extending
    path = _family_file(runner, tmp_path, 2, "obstructed")
    result = runner.invoke(main, ["deform", str(path), "--order", "5", "--lifts", "canonical"])
    assert result.exit_code == 0
    assert "status: extended to order 5" in result.output


def test_deform_polynomial_extends(runner, tmp_path):
    path = _family_file(runner, tmp_path, 3, "polynomial")
    result = runner.invoke(main, ["deform", str(path), "--order", "6"])
    assert result.exit_code == 0
    assert "status: extended to order 6" in result.output


def test_trivialize_family_stuck(runner, tmp_path):
    path = _family_file(runner, tmp_path, 2, "polynomial")
    result = runner.invoke(main, ["trivialize", str(path), "--order", "4"])
    assert result.exit_code == 1
    assert "stuck at order 1" in result.output
    assert "definitive non-triviality: yes" in result.output


def test_trivialize_trivial_case(runner, tmp_path):
    path = tmp_path / "tiny.dgm"
    path.write_text(
        "field Q\nmodule V {\n  basis y1 : 1, y2 : 2;\n}\nmap d degree -1 {\n  y2 -> y1;\n}\n"
    )
    result = runner.invoke(main, ["trivialize", str(path), "--order", "3"])
    assert result.exit_code == 0
    assert "trivialized through order 3" in result.output


def test_paper_family_stdout_round_trips(runner):
    result = runner.invoke(
        main, ["paper-family", "--n", "2", "--variant", "polynomial", "--out", "-"]
    )
    assert result.exit_code == 0
    from dgdeform.dsl import parse, render

    doc = parse(result.output)
    assert render(doc) == result.output


def test_verify_paper_reports_obstruction_value(runner):
    result = runner.invoke(main, ["verify-paper", "--n", "3"])
    assert result.exit_code == 0
    assert "O_3 = -x10 d/d x14" in result.output
    assert "all checks passed" in result.output


def test_verify_paper_gf_field(runner):
    result = runner.invoke(
        main, ["verify-paper", "--n", "2", "--variant", "obstructed", "--field", "GF:5"]
    )
    assert result.exit_code == 0
    assert "over GF(5)" in result.output


def test_verify_paper_bad_field_usage(runner):
    result = runner.invoke(main, ["verify-paper", "--n", "2", "--field", "R"])
    assert result.exit_code == 2


def test_output_is_deterministic(runner, tmp_path):
    path = _family_file(runner, tmp_path, 3, "obstructed")
    outs = set()
    for _ in range(2):
        outs.add(runner.invoke(main, ["deform", str(path), "--order", "5"]).output)
        outs.add(runner.invoke(main, ["verify-paper", "--n", "3"]).output)
    assert len(outs) == 2
    files = set()
    for name in ("a.dgm", "b.dgm"):
        p = tmp_path / name
        runner.invoke(main, ["paper-family", "--n", "4", "--variant", "infinite", "--out", str(p)])
        files.add(p.read_bytes())
    assert len(files) == 1
