"""Command-line interface tests, run in-process through main(argv)."""

import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from enumgeo import cli, invariants as inv, lattice as lat, modforms as mf
from enumgeo.invariants import BiSeries
from enumgeo.series import QSeries, product_family


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestExpandText(object):
    def test_eta_quotient_minus12(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "eta-quotient",
                             "--exponent", "-12", "--order", "5")
        assert rc == 0
        assert "shift=-1/2" in out.splitlines()[0]
        assert out.splitlines()[1] == "1, 12, 90, 520, 2535, 10908"

    def test_goettsche_per_power_lines(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "goettsche",
                             "--surface", "p2", "--order", "2")
        assert rc == 0
        lines = out.splitlines()
        assert lines[1] == "q^0: 1"
        assert lines[2] == "q^1: 1 + t^2 + t^4"
        assert lines[3] == "q^2: 1 + 2*t^2 + 3*t^4 + 2*t^6 + t^8"

    def test_half_k3_z1(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "half-k3-z1", "--order", "5")
        assert rc == 0
        assert out.splitlines()[1] == "1, 252, 5130, 54760, 419895, 2587788"


class TestExpandJson(object):
    def decode(self, out):
        return QSeries.from_json_dict(json.loads(out))

    def test_eta_quotient(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "eta-quotient",
                             "--exponent", "24", "--order", "6",
                             "--format", "json")
        assert rc == 0
        assert self.decode(out) == mf.eta_quotient(24, 6)

    def test_eisenstein_all_weights(self, capsys):
        for w in ("2", "4", "6"):
            rc, out, _ = run_cli(capsys, "expand", "eisenstein",
                                 "--weight", w, "--order", "8",
                                 "--format", "json")
            assert rc == 0
            assert self.decode(out) == mf.eisenstein(int(w), 8)

    def test_theta_both_methods(self, capsys):
        for method in ("eisenstein", "lattice"):
            rc, out, _ = run_cli(capsys, "expand", "theta-e8",
                                 "--method", method, "--order", "6",
                                 "--format", "json")
            assert rc == 0
            assert self.decode(out) == mf.theta_e8(6, method)

    def test_hilb_euler_surfaces(self, capsys):
        surfaces = {"p2": inv.SurfaceData.projective_plane(),
                    "k3": inv.SurfaceData.k3(),
                    "b9": inv.SurfaceData.half_k3()}
        for name, surface in surfaces.items():
            rc, out, _ = run_cli(capsys, "expand", "hilb-euler",
                                 "--surface", name, "--order", "7",
                                 "--format", "json")
            assert rc == 0
            assert self.decode(out) == inv.hilb_euler_series(surface, 7)

    def test_goettsche_biseries(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "goettsche",
                             "--surface", "k3", "--order", "4",
                             "--format", "json")
        assert rc == 0
        decoded = BiSeries.from_json_dict(json.loads(out))
        assert decoded == inv.goettsche_series(inv.SurfaceData.k3(), 4)

    def test_bryan_leung(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "bryan-leung",
                             "--genus", "2", "--order", "6",
                             "--format", "json")
        assert rc == 0
        assert self.decode(out) == inv.bryan_leung_series(2, 6)

    def test_half_k3_z1(self, capsys):
        rc, out, _ = run_cli(capsys, "expand", "half-k3-z1",
                             "--order", "5", "--format", "json")
        assert rc == 0
        assert self.decode(out) == inv.half_k3_z1(5)


class TestVerify(object):
    def test_all_passes_with_one_flag(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "all", "--order", "12")
        assert rc == 0
        lines = out.splitlines()
        assert any(l.startswith("FLAGGED") for l in lines)
        assert not any(l.startswith("FAIL") for l in lines)
        assert lines[-1].startswith("#") and "0 failed" in lines[-1]

    def test_single_suite(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "lattice-relations")
        assert rc == 0
        assert "0 failed" in out.splitlines()[-1]

    def test_json_format(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "ramanujan",
                             "--order", "10", "--format", "json")
        assert rc == 0
        reports = json.loads(out)["reports"]
        assert all(r["status"] == "pass" for r in reports)
        assert all("citation" in r for r in reports)

    def test_unknown_suite(self, capsys):
        # the suite argument is choices-constrained, so argparse exits
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "no-such-suite"])
        assert exc.value.code == 2
        capsys.readouterr()


class TestLattice(object):
    def test_pair_named(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "pair", "--u", "F",
                             "--v", "B")
        assert rc == 0 and out.strip() == "1"

    def test_pair_coordinates(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "pair",
                             "--u", "3,-1,-1,-1,-1,-1,-1,-1,-1,-1",
                             "--v", "0,0,0,0,0,0,0,0,0,1")
        assert rc == 0 and out.strip() == "1"

    def test_genus(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "genus", "--beta", "F")
        assert rc == 0 and out.strip() == "1"
        rc, out, _ = run_cli(capsys, "lattice", "genus",
                             "--beta", "6,-2,-2,-2,-2,-2,-2,-2,-2,-1")
        assert rc == 0 and out.strip() == "2"

    def test_signatures(self, capsys):
        expected = {"full": "(1, 9)", "fiber-section": "(1, 1)",
                    "e8": "(0, 8)"}
        for name, sig in expected.items():
            rc, out, _ = run_cli(capsys, "lattice", "signature",
                                 "--sublattice", name)
            assert rc == 0 and out.strip() == sig

    def test_enumerate(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "enumerate",
                             "--norm-max", "8", "--format", "json")
        assert rc == 0
        counts = json.loads(out)["counts"]
        assert counts["2"] == 240 and counts["4"] == 2160
        assert counts["6"] == 6720 and counts["8"] == 17520

    def test_exceptional_count_240(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "exceptional", "--k", "8",
                             "--format", "json")
        assert rc == 0
        data = json.loads(out)
        assert data["count"] == 240
        assert len(data["classes"]) == 240

    def test_exceptional_text(self, capsys):
        rc, out, _ = run_cli(capsys, "lattice", "exceptional", "--k", "2")
        assert rc == 0
        lines = out.splitlines()
        assert lines[0].startswith("# 3 exceptional classes")
        assert set(lines[1:]) == {"e2", "e1", "e0 - e1 - e2"}

    def test_bad_vector(self, capsys):
        rc, _, err = run_cli(capsys, "lattice", "pair", "--u", "B+2F",
                             "--v", "F")
        assert rc == 2 and "error" in err


class TestSW(object):
    def test_p2(self, capsys):
        rc, out, _ = run_cli(capsys, "sw", "p2", "--c", "3",
                             "--chamber", "+")
        assert rc == 0 and out.strip() == "1"
        rc, out, _ = run_cli(capsys, "sw", "p2", "--c", "-5",
                             "--chamber", "-")
        assert rc == 0 and out.strip() == "-1"

    def test_p2_even_class(self, capsys):
        rc, _, err = run_cli(capsys, "sw", "p2", "--c", "2",
                             "--chamber", "+")
        assert rc == 2

    def test_closed_form(self, capsys):
        rc, out, _ = run_cli(capsys, "sw", "closed-form", "--d", "1",
                             "--pg", "3")
        assert rc == 0 and out.strip() == "-2"

    def test_dimension(self, capsys):
        rc, out, _ = run_cli(capsys, "sw", "dimension", "--c-sq", "9",
                             "--chi-top", "3", "--sigma", "1")
        assert rc == 0 and out.strip() == "0"

    def mochizuki_payload(self, **extra):
        data = {
            "v": {"r": 2, "a_h": 5, "a_K": 0, "a_sq": 1, "n": [1, 1]},
            "chi_v": [4, 1],
            "decomps": [
                {"a1_h": 1, "a2_h": 4, "sw": 1, "A": [3, 2]},
                {"a1_h": 2, "a2_h": 3, "sw": -1, "A": [7, 1]},
            ],
        }
        data.update(extra)
        return data

    def test_mochizuki_from_file(self, capsys, tmp_path):
        path = tmp_path / "wall.json"
        path.write_text(json.dumps(self.mochizuki_payload()))
        rc, out, err = run_cli(capsys, "sw", "mochizuki", "--file",
                               str(path))
        assert rc == 0
        # -(1 * (1/8) * 3/2 + (-1) * (1/8) * 7) = 11/16
        assert out.strip() == "11/16"
        assert err == ""

    def test_mochizuki_warnings_on_stderr(self, capsys, tmp_path):
        path = tmp_path / "wall.json"
        path.write_text(json.dumps(self.mochizuki_payload(k_dot_h=3)))
        rc, out, err = run_cli(capsys, "sw", "mochizuki", "--file",
                               str(path), "--format", "json")
        assert rc == 0
        data = json.loads(out)
        assert Fraction(int(data["result"][0]), int(data["result"][1])) == \
            Fraction(11, 16)
        assert data["hypothesis_warnings"]
        assert "warning" in err

    def test_mochizuki_missing_file(self, capsys, tmp_path):
        rc, _, err = run_cli(capsys, "sw", "mochizuki", "--file",
                             str(tmp_path / "nope.json"))
        assert rc == 2


class TestFit(object):
    ARGS = ("fit", "--weight", "10", "--eta-exponent", "-24",
            "--target", "0=-1/8", "--target", "1=18441/2",
            "--target", "2=673760", "--target", "3=82133595/4")

    def test_rank2_text(self, capsys):
        rc, out, _ = run_cli(capsys, *self.ARGS)
        assert rc == 0
        head = out.splitlines()[0]
        assert "consistent=True" in head and "nullspace-dimension=1" in head
        assert any(l.startswith("nullspace[0]:") and "E2^5: 1" in l
                   for l in out.splitlines())

    def test_rank2_json(self, capsys):
        rc, out, _ = run_cli(capsys, *self.ARGS, "--format", "json")
        assert rc == 0
        data = json.loads(out)
        assert data["consistent"] is True
        assert len(data["nullspace"]) == 1

    def test_inconsistent_targets_still_exit_zero(self, capsys):
        rc, out, _ = run_cli(capsys, "fit", "--weight", "4",
                             "--eta-exponent", "0",
                             "--target", "0=1", "--target", "1=1",
                             "--target", "2=1", "--target", "3=1")
        assert rc == 0
        assert "consistent=False" in out.splitlines()[0]

    def test_malformed_target(self, capsys):
        rc, _, err = run_cli(capsys, "fit", "--weight", "4",
                             "--eta-exponent", "0", "--target", "abc")
        assert rc == 2


class TestOrderResolution(object):
    def test_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ENUMGEO_ORDER", "3")
        rc, out, _ = run_cli(capsys, "expand", "eta-quotient",
                             "--exponent", "-12")
        assert rc == 0
        assert out.splitlines()[1] == "1, 12, 90, 520"

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("ENUMGEO_ORDER", "3")
        rc, out, _ = run_cli(capsys, "expand", "eta-quotient",
                             "--exponent", "-12", "--order", "2")
        assert rc == 0
        assert out.splitlines()[1] == "1, 12, 90"

    def test_bad_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("ENUMGEO_ORDER", "zebra")
        rc, _, err = run_cli(capsys, "expand", "eta-quotient")
        assert rc == 2


class TestDeterminism(object):
    def test_repeat_runs_identical(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "all", "--order", "10",
                              "--format", "json")
        _, second, _ = run_cli(capsys, "verify", "all", "--order", "10",
                               "--format", "json")
        assert first == second


class TestEntryPoints(object):
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "enumgeo.cli", "expand", "eta-quotient",
             "--exponent", "-12", "--order", "3"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[1] == "1, 12, 90, 520"

    @pytest.mark.skipif(shutil.which("enumgeo") is None,
                        reason="console script not on PATH")
    def test_console_script(self):
        proc = subprocess.run(["enumgeo", "verify", "ramanujan"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
