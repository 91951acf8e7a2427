import json
import os

import pytest

from pvkit.cli import main
from pvkit.services.report_formatter import JSON_MARKER

from tests.conftest import DATA_DIR, GOLDEN_DIR


def data(name):
    return str(DATA_DIR / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def json_block(out):
    return json.loads(out.split(JSON_MARKER + "\n", 1)[1])


# argument lists shared by the golden and determinism tests
COMMANDS = {
    "rank1-classify": ["rank1-classify", "--expr", "1/(2*x)"],
    "diag-group": ["diag-group", "--expr", "1/(2*x)", "--expr", "1/(3*x)"],
    "gauge-check": ["gauge-check", "--input", data("gauge_A.json"), "--input", data("gauge_B.json"), "--input", data("gauge_P.json")],
    "gauge-check-singular": [
        "gauge-check", "--input", data("gauge_A.json"), "--input", data("gauge_B.json"), "--input", data("singular_P.json"),
    ],
    "torsor-iso": ["torsor-iso", "--input", data("gauge_A.json"), "--input", data("gauge_B.json"), "--input", data("gauge_P.json")],
    "split-report": ["split-report", "--input", data("split_diag.json")],
    "hopf-check": ["hopf-check", "--fixture", "kummer-2"],
    "descent-roundtrip": ["descent-roundtrip", "--fixture", "kummer-2", "--input", data("phi_object.json")],
    "h1-enumerate": ["h1-enumerate", "--fixture", "mu3-gm"],
    "h1-check": ["h1-check", "--fixture", "mu2-gm", "--input", data("cocycle_minus.json"), "--input", data("cocycle_one.json")],
    "h1-twist": ["h1-twist", "--input", data("twist.json")],
    "h1-untwist": ["h1-untwist", "--input", data("untwist.json")],
    "dcsa-check-iso": [
        "dcsa-check-iso", "--input", data("dcsa_zero.json"), "--input", data("dcsa_sqrt_x.json"), "--input", data("gauge_P.json"),
    ],
    "dcsa-adjoint": ["dcsa-adjoint", "--input", data("dcsa_half.json")],
    "dcsa-split-degree": ["dcsa-split-degree", "--input", data("dcsa_fourth_root.json")],
}


# golden files: PVKIT_UPDATE_GOLDEN=1 records missing or changed snapshots


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_golden_output(capsys, name):
    _, out = run(capsys, *COMMANDS[name])
    path = GOLDEN_DIR / f"{name}.txt"
    if os.getenv("PVKIT_UPDATE_GOLDEN") == "1":
        path.write_text(out, encoding="utf-8")
    assert path.exists(), f"no golden file for {name}"
    assert out == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_output_is_deterministic(capsys, name):
    first = run(capsys, *COMMANDS[name])
    second = run(capsys, *COMMANDS[name])
    assert first == second


# per-command behaviour


def test_rank1_classify(capsys):
    code, out = run(capsys, "rank1-classify", "--expr", "1/(2*x)")
    assert code == 0
    assert out.startswith("mu(2), splitting degree 0\n")

    code, out = run(capsys, "rank1-classify", "--input", data("rank1.json"))
    assert code == 0
    assert "mu(3), splitting degree 0" in out


def test_rank1_classify_rational_solution(capsys):
    code, out = run(capsys, "rank1-classify", "--expr", "2/x", "--json")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["group"]["description"] == "trivial"
    assert result["rational_solution"] == "(x^2)"


def test_gauge_check_exit_codes(capsys):
    code, _ = run(capsys, *COMMANDS["gauge-check"])
    assert code == 0
    code, out = run(capsys, "gauge-check", "--input", data("gauge_B.json"), "--input", data("gauge_A.json"), "--input", data("gauge_P.json"))
    assert code == 1
    assert "does not transform" in out
    code, out = run(capsys, *COMMANDS["gauge-check-singular"])
    assert code == 2
    assert "witness not invertible" in out


def test_hopf_check(capsys):
    code, out = run(capsys, *COMMANDS["hopf-check"])
    assert code == 0
    assert out.startswith("kummer-2: Hopf-Galois of degree 2 for a group of order 2\n")
    assert json_block(out)["result"]["can_rank"] == 4

    code, out = run(capsys, "hopf-check", "--fixture", "kummer-2-trivial-coaction")
    assert code == 1
    assert "not Hopf-Galois" in out
    assert "canonical map is singular (rank 2 of 4)" in out


def test_descent_roundtrip(capsys):
    code, out = run(capsys, *COMMANDS["descent-roundtrip"])
    assert code == 0
    assert "descended dimension: 2" in out
    result = json_block(out)["result"]
    assert result["iso_ok"] is True
    assert result["multiplication_bijective"] is True


def test_h1_enumerate(capsys):
    code, out = run(capsys, *COMMANDS["h1-enumerate"])
    assert code == 0
    assert out.startswith("3 classes in H^1 for the trivial action of a group of order 3 on G_m\n")
    assert json_block(out)["result"]["count"] == 3

    code, out = run(capsys, "h1-enumerate", "--input", data("action_mu2_gm.json"), "--json")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["count"] == 2
    assert result["classes"][1] == [[["(1)"]], [["(-1)"]]]


def test_h1_check(capsys):
    code, out = run(capsys, *COMMANDS["h1-check"])
    assert code == 1
    assert "equivalent: no" in out

    code, out = run(capsys, "h1-check", "--fixture", "mu2-gm", "--input", data("cocycle_minus.json"), "--input", data("cocycle_minus.json"))
    assert code == 0
    assert "equivalent: yes" in out
    assert "witness c = (1)" in out


def test_h1_twist(capsys):
    code, out = run(capsys, *COMMANDS["h1-twist"])
    assert code == 0
    assert "  [(-1/2)/(x)]" in out
    result = json_block(out)["result"]
    assert result["iso"] == [["(0)", "(x)"], ["(1)", "(0)"]]
    assert result["roundtrip_equivalent"] is True


def test_h1_untwist(capsys):
    code, out = run(capsys, *COMMANDS["h1-untwist"])
    assert code == 0
    assert "cocycle over kummer-2: 0 -> (1), 1 -> (-1)" in out
    assert "equivalent to the trivial class: no" in out
    assert "fixed points recover the twisted form: yes" in out


def test_dcsa_check_iso(capsys):
    code, out = run(capsys, *COMMANDS["dcsa-check-iso"])
    assert code == 0
    assert out.startswith("u intertwines delta_P and delta_Q\nadjoint torsor isomorphism: yes\n")
    assert json_block(out)["result"]["target_Q"] == [["(1/2)/(x)", "(0)"], ["(0)", "(-1/2)/(x)"]]

    code, out = run(
        capsys, "dcsa-check-iso", "--input", data("dcsa_zero.json"), "--input", data("dcsa_zero.json"), "--input", data("gauge_P.json")
    )
    assert code == 1
    assert "does not intertwine" in out


def test_dcsa_split_degree(capsys):
    code, out = run(capsys, "dcsa-split-degree", "--input", data("dcsa_half.json"))
    assert code == 0
    assert "splitting degree exactly 1 (dim PGL_2 = 3)" in out
    assert "split: no" in out
    code, out = run(capsys, "dcsa-split-degree", "--input", data("dcsa_sqrt_x.json"))
    assert "split: yes" in out


def test_traceless_flag_is_checked(capsys):
    code, out = run(capsys, "dcsa-adjoint", "--input", data("dcsa_not_traceless.json"))
    assert code == 2
    error = json_block(out)["error"]
    assert error["kind"] == "InputError"
    assert error["reason"] == "matrix flagged traceless has trace (1)"
    assert error["file"].endswith("dcsa_not_traceless.json")


# input errors


def test_missing_inputs(capsys):
    code, out = run(capsys, "gauge-check", "--input", data("gauge_A.json"))
    assert code == 2
    assert "error: gauge-check needs at least 3 --input file(s), got 1" in out


def test_options_not_accepted(capsys):
    code, out = run(capsys, "gauge-check", "--expr", "x")
    assert code == 2
    assert "gauge-check does not accept --expr" in out
    code, out = run(capsys, "rank1-classify", "--expr", "x", "--expr", "1")
    assert code == 2
    assert "rank1-classify takes exactly one --expr" in out


def test_zeta_level_mismatch(capsys):
    code, out = run(capsys, "gauge-check", "--input", data("gauge_A.json"), "--input", data("level2_scalar.json"), "--input", data("gauge_P.json"))
    assert code == 2
    assert "zeta level mismatch" in out
    code, out = run(capsys, "gauge-check", "--zeta-level", "3", *COMMANDS["gauge-check"][1:])
    assert code == 2
    assert "zeta level mismatch" in out


def test_parse_error_reports_position(capsys):
    code, out = run(capsys, "rank1-classify", "--expr", "1/(2*x", "--json")
    assert code == 2
    error = json.loads(out)["error"]
    assert error["kind"] == "ParseError"
    assert error["file"] == "--expr"
    assert isinstance(error["position"], int)


def test_malformed_json(capsys):
    code, out = run(capsys, "split-report", "--input", data("malformed.json"))
    assert code == 2
    error = json_block(out)["error"]
    assert error["kind"] == "ParseError"
    assert error["reason"].startswith("invalid JSON")


def test_missing_file(capsys):
    code, out = run(capsys, "split-report", "--input", data("does_not_exist.json"))
    assert code == 2
    assert json_block(out)["error"]["kind"] == "OSError"


def test_unknown_fixture(capsys):
    code, out = run(capsys, "hopf-check", "--fixture", "nope")
    assert code == 2
    assert "unknown fixture 'nope'" in out


def test_unknown_command():
    with pytest.raises(SystemExit) as excinfo:
        main(["not-a-command"])
    assert excinfo.value.code == 2


def test_json_only(capsys):
    code, out = run(capsys, *COMMANDS["torsor-iso"], "--json")
    assert code == 0
    assert JSON_MARKER not in out
    assert json.loads(out) == {"command": "torsor-iso", "exit_code": 0, "result": {"isomorphic": True}}
