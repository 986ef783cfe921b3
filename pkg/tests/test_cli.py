import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from motfilt import cli
from motfilt.filtration import CinfReport
from motfilt.hodge import HodgeDiamond
from motfilt.numring import load_ring
from motfilt.zeta import load_curve

ROOT = Path(__file__).resolve().parent.parent
RINGS, CURVES, DIAMONDS = ROOT / "rings", ROOT / "curves", ROOT / "diamonds"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


class TestExamples:
    def test_thh_z(self):
        r = report("thh-z", "--degree", 5)
        assert r["results"] == {"group": "Z/3"} and "pass" not in r

    def test_verify_cinf(self):
        r = report("verify-cinf", "--ring", RINGS / "gauss.json", "--n", 4)
        assert r["results"]["product_side"] == r["results"]["closed_form"] == "1/36"
        assert r["pass"] is True

    def test_verify_fe(self):
        r = report("verify-fe", "--curve", CURVES / "p1.json", "--n", 0)
        assert (r["results"]["lhs"], r["results"]["rhs"], r["pass"]) == (-2, -2, True)


class TestSubcommands:
    def test_thh_of(self):
        r = report("thh-of", "--ring", RINGS / "gauss.json", "--degree", 5)
        assert r["results"]["order"] == 36 and r["results"]["group"] == "Z/6 + Z/6"

    def test_lambda(self):
        assert report("lambda", "--ring", RINGS / "cubic23.json", "--n", 1)["results"]["order"] == 23

    def test_lomega2(self):
        r = report("lomega2", "--ring", RINGS / "gauss.json")["results"]
        assert (r["h0"], r["h1"]) == ("Z^2", "Z/2")

    def test_fp_euler(self):
        assert report("fp-euler", "--p", 2, "--n", 3)["results"]["euler"] == 8

    def test_cinf_ring_and_diamond(self):
        r = report("cinf", "--ring", RINGS / "cbrt2.json", "--n", 4)["results"]
        assert r == {"c_infinity": "216", "c_inverse": "1/216"}
        r = report("cinf", "--diamond", DIAMONDS / "elliptic_q.json", "--n", 2)["results"]
        assert r["c_infinity"] == "1"

    def test_milne(self):
        assert report("milne", "--diamond", DIAMONDS / "point_f7.json", "--n", 6)["results"]["exponent"] == 6
        assert report("milne", "--curve", CURVES / "genus2_f5.json", "--n", 3)["results"]["exponent"] == -5

    def test_graded(self):
        r = report("graded", "--theory", "TCplus", "--n", 4, "--j", 2)["results"]
        assert r["expression"] == "LΩ^{<2} ⊗ Z/2 [7]"

    def test_zeta_special_conductor(self):
        assert report("zeta", "--curve", CURVES / "ell_f5.json")["results"]["P"] == [1, -2, 5]
        assert report("zeta", "--curve", CURVES / "ell_f2.json")["results"]["P"] == [1, 2, 2]
        sv = report("special", "--curve", CURVES / "p1.json", "--n", 0)["results"]
        assert (sv["order"], sv["coeff"]) == (-1, "-1/4")
        c = report("conductor", "--curve", CURVES / "genus2_f5.json")["results"]
        assert (c["base"], c["exponent"]) == (5, 2)

    def test_verify_fe_with_diamond(self):
        r = report("verify-fe", "--curve", CURVES / "genus2_f5.json", "--diamond", DIAMONDS / "genus2_f5.json", "--n", 3)
        assert r["results"]["lhs"] == -10 and r["pass"]

    def test_tsv(self):
        code, out, _ = run("thh-z", "--degree", 7, "--format", "tsv")
        assert code == 0
        assert 'results.group\t"Z/4"' in out.splitlines()


class TestExitCodes:
    def test_unknown_subcommand(self):
        code, out, err = run("frobnicate")
        assert code == 2 and out == "" and "usage:" in err

    def test_unknown_flag(self):
        code, _, err = run("thh-z", "--degree", 1, "--bogus")
        assert code == 2 and "usage:" in err

    def test_missing_flag(self):
        code, _, err = run("thh-of", "--degree", 1)
        assert code == 2 and "usage:" in err

    def test_bad_inputs(self, tmp_path):
        assert run("thh-of", "--ring", tmp_path / "missing.json", "--degree", 1)[0] == 2
        (tmp_path / "red.json").write_text('{"poly": [-1, 0, 1]}')
        assert run("thh-of", "--ring", tmp_path / "red.json", "--degree", 1)[0] == 2
        (tmp_path / "junk.json").write_text("{not json")
        assert run("zeta", "--curve", tmp_path / "junk.json")[0] == 2
        assert run("fp-euler", "--p", 4, "--n", 2)[0] == 2
        assert run("milne", "--diamond", DIAMONDS / "elliptic_q.json", "--n", 2)[0] == 2

    @pytest.mark.parametrize("seed", ["-1", str(2**64)])
    def test_seed_range(self, seed):
        assert run("selftest", "--only", "milne", "--seed", seed)[0] == 2

    def test_verifier_failure(self, monkeypatch):
        monkeypatch.setattr(cli, "verify_cinf_fiber_seq", lambda h, n, rng: CinfReport(1, 2, 2, False))
        code, out, _ = run("verify-cinf", "--ring", RINGS / "z.json", "--n", 3)
        assert code == 1 and json.loads(out)["pass"] is False


class TestDeterminismAndEcho:
    ARGVS = [
        ("thh-of", "--ring", RINGS / "cyclotomic5.toml", "--degree", 3),
        ("lambda", "--ring", RINGS / "gauss.json", "--n", 2),
        ("lomega2", "--ring", RINGS / "sqrt2.json"),
        ("cinf", "--ring", RINGS / "gauss.json", "--n", 4),
        ("milne", "--diamond", DIAMONDS / "genus2_f5.json", "--n", 2),
        ("graded", "--theory", "THH", "--n", 3, "--j", 1, "--ring", RINGS / "gauss.json"),
        ("verify-cinf", "--diamond", DIAMONDS / "elliptic_q.json", "--n", 5, "--seed", 99),
        ("zeta", "--curve", CURVES / "genus3_f5.json"),
        ("special", "--curve", CURVES / "ell_f5.json", "--n", 1),
        ("conductor", "--curve", CURVES / "p1.json"),
        ("verify-fe", "--curve", CURVES / "genus2_f5.json", "--n", -2),
    ]

    @pytest.mark.parametrize("argv", ARGVS, ids=lambda a: a[0])
    def test_byte_identical(self, argv):
        a, b = run(*argv), run(*argv)
        assert a == b and a[0] == 0

    @pytest.mark.parametrize("argv", ARGVS, ids=lambda a: a[0])
    def test_input_echo_roundtrip(self, argv):
        r = json.loads(run(*argv)[1])
        parsed = cli.parse_inputs(r["command"], r["inputs"])
        args = dict(zip(argv[1::2], argv[2::2]))
        if "--ring" in args:
            assert parsed["ring"] == load_ring(args["--ring"])
            assert parsed["ring"].to_json() == r["inputs"]["ring"]
        if "--curve" in args:
            assert parsed["curve"] == load_curve(args["--curve"])
            assert parsed["curve"].to_json() == r["inputs"]["curve"]
        if "--diamond" in args:
            assert parsed["diamond"] == HodgeDiamond.from_json(json.loads(Path(args["--diamond"]).read_text()))
            assert parsed["diamond"].to_json() == r["inputs"]["diamond"]
        for flag in ("--n", "--degree", "--j", "--seed"):
            if flag in args:
                assert r["inputs"][flag[2:]] == args[flag]

    def test_sorted_keys(self):
        out = run("verify-fe", "--curve", CURVES / "p1.json", "--n", 0)[1]
        assert out == json.dumps(json.loads(out), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class TestSelftest:
    def test_only_lemma_seeded(self, monkeypatch):
        monkeypatch.setenv("MOTFILT_NO_COLOR", "1")
        a = run("selftest", "--only", "lemma", "--seed", 7)
        b = run("selftest", "--only", "lemma", "--seed", 7)
        assert a[0] == 0 and a[1] == b[1]
        r = json.loads(a[1])
        assert list(r["results"]) == ["lemma"] and r["pass"] is True
        assert "\x1b[" not in a[2] and "PASS" in a[2]

    def test_color_default(self, monkeypatch):
        monkeypatch.delenv("MOTFILT_NO_COLOR", raising=False)
        _, _, err = run("selftest", "--only", "milne")
        assert "\x1b[32m" in err

    def test_full_suite(self, monkeypatch):
        monkeypatch.setenv("MOTFILT_NO_COLOR", "1")
        code, out, err = run("selftest")
        r = json.loads(out)
        assert code == 0 and r["pass"] is True
        assert len(r["results"]) == 8
        assert all("budget_s" in v for v in r["results"].values())
        assert len(err.strip().splitlines()) == 8


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "motfilt", "thh-z", "--degree", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["group"] == "Z/2"
