import json

import pytest

from radonrange import moments
from radonrange.cli import main


def _write_body(tmp_path, doc, name="body.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


ELLIPSE = {"kind": "ellipse", "a": 2, "b": 1, "tilt": 0.5, "densities": [1]}
PERTURBED = {
    "kind": "perturbed",
    "base": {"kind": "ellipse", "a": 1, "b": 1},
    "eps": 0.05,
    "frequency": 4,
    "densities": [1],
}


class TestDemoDisk:
    def test_passes_with_small_grid(self, tmp_path, capsys):
        code = main(["demo-disk", "--grid", "64", "--K", "4", "--out", str(tmp_path / "out")])
        out = capsys.readouterr()
        assert code == 0
        assert "PASS" in out.out
        assert "skipped 2 tangent line offsets" in out.err
        assert (tmp_path / "out" / "sinogram.csv").exists()
        assert (tmp_path / "out" / "moment_check.csv").exists()
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["checks_passed"] is True
        assert summary["max_deviation_inside"] <= 1e-8

    def test_grid_too_small_is_config_error(self, capsys):
        assert main(["demo-disk", "--grid", "8"]) == 64
        assert main(["demo-disk", "--grid", "100"]) == 64  # not a power of two

    def test_outputs_are_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["demo-disk", "--grid", "64", "--K", "2", "--out", str(a)]) == 0
        assert main(["demo-disk", "--grid", "64", "--K", "2", "--out", str(b)]) == 0
        for name in ("sinogram.csv", "moment_check.csv", "summary.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestVerifyIdentities:
    def test_all_pass(self, tmp_path, capsys):
        code = main(["verify-identities", "--m", "3", "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "FAIL" not in out
        payload = json.loads((tmp_path / "identities.json").read_text())
        assert all(row["passed"] for row in payload["results"])
        assert payload["disk_certificate"]["verdict"] == "pass"

    def test_corrupted_coefficient_table_detected(self, monkeypatch, capsys):
        real = moments.falling_factorial

        def corrupted(k, j):
            value = real(k, j)
            return value + 1 if (k, j) == (6, 2) else value

        monkeypatch.setattr(moments, "falling_factorial", corrupted)
        assert main(["verify-identities", "--m", "3"]) == 1
        assert "FAIL" in capsys.readouterr().out


class TestRangeCheck:
    def test_ellipse_passes(self, tmp_path, capsys):
        body = _write_body(tmp_path, ELLIPSE)
        code = main(["range-check", "--body", body, "--K", "6", "--out", str(tmp_path / "o")])
        assert code == 0
        reports = json.loads((tmp_path / "o" / "range_reports.json").read_text())
        assert len(reports) == 7
        assert all(r["verdict"] == "pass" for r in reports)
        moments_csv = (tmp_path / "o" / "moments.csv").read_text().splitlines()
        assert moments_csv[0] == "k,theta,value"

    def test_perturbed_fails(self, tmp_path):
        body = _write_body(tmp_path, PERTURBED)
        assert main(["range-check", "--body", body, "--K", "6"]) == 1

    def test_missing_body_is_config_error(self):
        assert main(["range-check"]) == 64

    def test_unreadable_body_is_config_error(self, tmp_path):
        assert main(["range-check", "--body", str(tmp_path / "nope.json")]) == 64


class TestReconstructCommand:
    def test_ellipse_certified(self, tmp_path, capsys):
        body = _write_body(tmp_path, ELLIPSE)
        code = main(["reconstruct", "--body", body, "--out", str(tmp_path / "o")])
        assert code == 0
        report = json.loads((tmp_path / "o" / "reconstruction.json").read_text())
        assert report["verdict"] == "ellipse"
        matrix = report["ellipse_matrix"]
        assert matrix[0][1] == pytest.approx(matrix[1][0])
        rho2_csv = (tmp_path / "o" / "rho2.csv").read_text().splitlines()
        assert rho2_csv[0] == "theta,rho2,relative_residual"
        assert len(rho2_csv) == 513

    def test_perturbed_is_non_quadratic(self, tmp_path):
        body = _write_body(tmp_path, PERTURBED)
        assert main(["reconstruct", "--body", body]) == 1

    def test_m_mismatch_is_config_error(self, tmp_path):
        body = _write_body(tmp_path, {**ELLIPSE, "m": 3})
        assert main(["reconstruct", "--body", body]) == 64

    def test_window_mode(self, tmp_path):
        body = _write_body(tmp_path, ELLIPSE)
        code = main(
            ["reconstruct", "--body", body, "--window=-0.3926990816987241:0.3926990816987241",
             "--out", str(tmp_path / "o")]
        )
        assert code == 0
        report = json.loads((tmp_path / "o" / "reconstruction.json").read_text())
        assert report["verdict"] == "window-only"
        assert report["membership_note"] == "not-locally-testable"
        assert report["quadratic_verdict"] is None

    def test_bad_window_is_config_error(self, tmp_path):
        body = _write_body(tmp_path, ELLIPSE)
        assert main(["reconstruct", "--body", body, "--window", "oops"]) == 64

    def test_exact_mode_rejects_float_bodies(self, tmp_path):
        body = _write_body(tmp_path, ELLIPSE)
        assert main(["reconstruct", "--body", body, "--exact"]) == 64

    def test_exact_mode_accepts_rational_disk(self, tmp_path):
        body = _write_body(
            tmp_path, {"kind": "trig", "rho2": {"cos": ["9/4"], "sin": [0]}, "densities": [1]}
        )
        assert main(["reconstruct", "--body", body, "--exact", "--grid", "64"]) == 0

    def test_excess_degeneracy_exits_two(self, tmp_path):
        # p_0 = q_0 vanishes on a quarter of the grid: over the 5% budget
        density = ["1", "0", "1", "1", "1", "0", "1", "1"]
        body = _write_body(
            tmp_path,
            {
                "kind": "sampled",
                "values": ["1"] * 8,
                "densities": [density],
            },
        )
        assert main(["reconstruct", "--body", body]) == 2

    def test_grid_flag_controls_sample_count(self, tmp_path):
        body = _write_body(tmp_path, ELLIPSE)
        code = main(
            ["reconstruct", "--body", body, "--grid", "128", "--out", str(tmp_path / "o")]
        )
        assert code == 0
        report = json.loads((tmp_path / "o" / "reconstruction.json").read_text())
        assert report["grid_size"] == 128


class TestPerturbationStudy:
    def test_separation_holds(self, tmp_path, capsys):
        code = main(["perturbation-study", "--grid", "64", "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out
        rows = (tmp_path / "perturbation.csv").read_text().splitlines()
        assert rows[0] == "eps,frequency,forbidden_ratio,membership,relative_residual"
        assert len(rows) == 4
        assert all("fail" in row for row in rows[1:])


class TestUsageErrors:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 64

    def test_bad_tolerance(self):
        assert main(["demo-disk", "--tol", "-1"]) == 64

    def test_bad_m(self):
        assert main(["verify-identities", "--m", "0"]) == 64
