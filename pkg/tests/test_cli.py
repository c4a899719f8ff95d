import json

import pytest

from orbivol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestVerifyCommand:
    def test_quaternionic_rank2_passes(self, capsys):
        code, payload = run_json(capsys, "verify", "--field", "h", "--n", "2",
                                 "--trials", "25")
        assert code == 0
        assert payload["passed"] is True
        names = {c["name"] for c in payload["checks"]}
        assert "printed_identity_families" in names
        assert "killing_closed_form" in names
        assert "curvature_dual_path" in names

    def test_real_rank4_passes(self, capsys):
        code, payload = run_json(capsys, "verify", "--field", "r", "--n", "4",
                                 "--trials", "25")
        assert code == 0
        assert payload["passed"] is True

    def test_rank_zero_is_usage_error(self, capsys):
        code, _ = run(capsys, "verify", "--field", "h", "--n", "0")
        assert code == 2

    def test_unknown_field_is_usage_error(self, capsys):
        code, _ = run(capsys, "verify", "--field", "x", "--n", "1")
        assert code == 2


class TestBoundsCommand:
    def test_check_table_passes_by_default(self, capsys):
        code, payload = run_json(capsys, "bounds", "--field", "h",
                                 "--n-range", "1..2", "--check-table")
        assert code == 0
        assert payload["table_check_passed"] is True
        mantissas = {r["n"]: r["mantissa"] for r in payload["rows"]}
        assert abs(mantissas[1] - 3.62212) < 5e-4  # published 3.6221e-11
        assert len(payload["table_check"]) == 15

    def test_strict_table_fails_on_documented_deviations(self, capsys):
        code, payload = run_json(capsys, "bounds", "--field", "h",
                                 "--n-range", "1..2", "--check-table",
                                 "--strict-table")
        assert code == 1
        assert payload["table_check_passed"] is False

    def test_complex_original_column(self, capsys):
        code, payload = run_json(capsys, "bounds", "--field", "c",
                                 "--variant", "original", "--n-range", "1..4")
        assert code == 0
        got = {r["n"]: r["mantissa"] * 10.0 ** r["exp10"]
               for r in payload["rows"]}
        printed = {1: 0.00168, 2: 2.9180e-9, 3: 3.6324e-18, 4: 2.2347e-30}
        for n, cell in printed.items():
            assert abs(got[n] - cell) <= 2e-3 * cell

    def test_csv_has_eight_rows(self, capsys):
        code, out = run(capsys, "bounds", "--field", "h",
                        "--n-range", "1..8", "--format", "csv")
        assert code == 0
        lines = [ln for ln in out.strip().splitlines() if ln]
        assert len(lines) == 9  # header + 8 rows
        assert lines[0].split(",")[:3] == ["field", "variant", "n"]

    def test_markdown_table_layout(self, capsys):
        code, out = run(capsys, "bounds", "--field", "h",
                        "--n-range", "1..1", "--format", "md")
        assert code == 0
        assert out.splitlines()[0].startswith("| n |")

    def test_bad_range_is_usage_error(self, capsys):
        code, _ = run(capsys, "bounds", "--field", "h", "--n-range", "0..3")
        assert code == 2
        code, _ = run(capsys, "bounds", "--field", "h", "--n-range", "1..99")
        assert code == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "bounds.json"
        code, out = run(capsys, "bounds", "--field", "h", "--n-range", "1..1",
                        "--output", str(target))
        assert code == 0
        assert out == ""
        payload = json.loads(target.read_text())
        assert payload["rows"][0]["n"] == 1

    def test_deterministic_output(self, capsys):
        _, first = run(capsys, "bounds", "--field", "r", "--n-range", "2..5",
                       "--mode", "published")
        _, second = run(capsys, "bounds", "--field", "r", "--n-range", "2..5",
                        "--mode", "published")
        assert first == second


class TestCurvatureScanCommand:
    def test_quaternionic_rank1(self, capsys):
        code, payload = run_json(capsys, "curvature-scan", "--field", "h",
                                 "--n", "1", "--samples", "400",
                                 "--ascent-iters", "15", "--seed", "7",
                                 "--tol", "1e-6")
        assert code == 0
        assert payload["bound_respected"] is True
        assert payload["empirical_max"] <= payload["bound"] + 1e-6

    def test_real_rank2_bound_quarter(self, capsys):
        code, payload = run_json(capsys, "curvature-scan", "--field", "r",
                                 "--n", "2", "--samples", "300",
                                 "--ascent-iters", "15", "--tol", "1e-6")
        assert code == 0
        assert abs(payload["bound"] - 0.25) < 1e-12

    def test_same_seed_byte_identical(self, capsys):
        args = ("curvature-scan", "--field", "h", "--n", "1", "--samples",
                "200", "--ascent-iters", "10", "--seed", "11")
        _, first = run(capsys, *args)
        _, second = run(capsys, *args)
        assert first == second


class TestWangRootCommand:
    def test_reports_root_and_disagreement_flag(self, capsys):
        code, payload = run_json(capsys, "wang-root", "--c1", "1",
                                 "--c2", "1.41421356")
        assert code == 0
        assert set(payload) >= {"root", "residual", "paper_claim", "agrees"}
        assert payload["paper_claim"] == 0.228
        assert payload["agrees"] is False
        assert abs(payload["residual"]) <= 1e-10

    def test_degenerate_c2_not_found(self, capsys):
        code, _ = run(capsys, "wang-root", "--c1", "1", "--c2", "0",
                      "--t-max", "0.5")
        assert code == 3

    def test_negative_c1_usage_error(self, capsys):
        code, _ = run(capsys, "wang-root", "--c1", "-1", "--c2", "1")
        assert code == 2


class TestHurwitzCommand:
    def test_unit_volume(self, capsys):
        code, payload = run_json(capsys, "hurwitz", "--volume", "1", "--n", "1")
        assert code == 0
        assert abs(float(payload["ratio"]["value"]) - 2.76081e10) < 1e6

    def test_volume_at_bound(self, capsys):
        code, payload = run_json(capsys, "hurwitz", "--volume", "3.6221e-11",
                                 "--n", "1")
        assert code == 0
        assert abs(float(payload["ratio"]["value"]) - 1.0) < 1e-3

    def test_zero_volume_usage_error(self, capsys):
        code, _ = run(capsys, "hurwitz", "--volume", "0", "--n", "1")
        assert code == 2


def test_usage_error_exit_code_from_argparse():
    with pytest.raises(SystemExit) as err:
        main(["bounds"])  # missing required --field
    assert err.value.code == 2
