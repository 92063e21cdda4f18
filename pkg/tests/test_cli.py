import json

import pytest

from pathcenters.cli import run


@pytest.fixture
def c1_file(tmp_path):
    doc = {
        "T": "1",
        "segments": [
            {"len": "1/2", "coeffs": {"1": "1"}},
            {"len": "1/2", "coeffs": {"1": "-1"}},
        ],
    }
    target = tmp_path / "C1.json"
    target.write_text(json.dumps(doc))
    return str(target)


@pytest.fixture
def p2_file(tmp_path):
    doc = {
        "T": "1",
        "segments": [
            {"len": "1/2", "coeffs": {"1": "1"}},
            {"len": "1/2", "coeffs": {"2": "1"}},
        ],
    }
    target = tmp_path / "P2.json"
    target.write_text(json.dumps(doc))
    return str(target)


@pytest.fixture
def moment_file(tmp_path):
    target = tmp_path / "m.json"
    target.write_text(json.dumps({"factors": [{"powers": [[1, 1]], "coeff": 2}]}))
    return str(target)


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_center_c1(capsys, c1_file):
    code, report = capture(capsys, ["center", "--input", c1_file, "--order", "8"])
    assert code == 0
    assert report["result"] == {
        "center_to_order": 8,
        "first_failing_degree": None,
        "verdict": True,
    }
    assert report["exact"] is True
    assert report["order"] == 8


def test_center_not_center(capsys, p2_file):
    code, report = capture(capsys, ["center", "--input", p2_file])
    assert code == 0
    assert report["result"]["verdict"] is False
    assert report["result"]["first_failing_degree"] == 1


def test_lie_dims(capsys):
    code, report = capture(capsys, ["lie", "dims", "--n", "6"])
    assert code == 0
    assert report["result"] == {"dim": 9}


def test_lie_abel_count(capsys):
    code, report = capture(capsys, ["lie", "abel-count", "--n", "8"])
    assert code == 0
    assert report["result"] == {"count": 4}


def test_lie_lyndon(capsys):
    code, report = capture(capsys, ["lie", "lyndon", "--max-index", "2", "--weight", "5"])
    assert code == 0
    assert report["result"]["words"] == ["1,1,1,2", "1,2,2"]


def test_lie_bch(capsys):
    code, report = capture(capsys, ["lie", "bch", "--a", "1", "--b", "0,1", "--order", "3"])
    assert code == 0
    text = report["result"]["log_product"]["text"]
    assert "1/2*X[1]X[2]" in text and "-1/2*X[2]X[1]" in text


def test_oracle_compare(capsys, p2_file):
    code, report = capture(capsys, ["oracle-compare", "--input", p2_file, "--order", "6"])
    assert code == 0
    assert report["result"]["equal"] is True
    assert report["result"]["via_ode"] == report["result"]["via_signature"]
    assert report["result"]["via_ode"][:3] == ["1/2", "3/4", "7/8"]


def test_integrals_and_monodromy(capsys, p2_file):
    code, report = capture(capsys, ["integrals", "--input", p2_file, "--order", "3"])
    assert code == 0
    table = dict(report["result"]["integrals"])
    assert table["1"] == "1/2" and table["2,1"] == "1/4" and table["1,2"] == "0"
    code, report = capture(capsys, ["monodromy", "--input", p2_file, "--order", "2"])
    assert code == 0
    assert "1/2*X[1]" in report["result"]["monodromy"]["text"]


def test_universal(capsys, c1_file, p2_file):
    code, report = capture(capsys, ["universal", "--input", c1_file, "--order", "8"])
    assert code == 0
    assert report["result"] == {"triviality_order": 9, "universal_to_order": True}
    code, report = capture(capsys, ["universal", "--input", p2_file, "--order", "8"])
    assert report["result"]["triviality_order"] == 0


def test_return_map(capsys, p2_file):
    code, report = capture(capsys, ["return-map", "--input", p2_file, "--order", "3"])
    assert code == 0
    assert report["result"]["coefficients"] == ["1/2", "3/4", "7/8"]


def test_moments(capsys, p2_file, moment_file):
    code, report = capture(
        capsys, ["moments", "--input", p2_file, "--moment", moment_file]
    )
    assert code == 0
    assert report["result"] == {"value": "1/4", "order": 1, "degree": 3}


def test_metric(capsys, p2_file, c1_file):
    code, report = capture(
        capsys, ["metric", "--input", p2_file, "--other", c1_file, "--order", "2"]
    )
    assert code == 0
    assert report["result"]["distance"] == "1/9"
    code, report = capture(capsys, ["metric", "--input", p2_file, "--order", "2"])
    assert report["result"]["distance"] == "1/9"  # C1's signature is the unit


def test_decompose_and_factorize(capsys, p2_file):
    code, report = capture(capsys, ["decompose", "--input", p2_file, "--order", "4"])
    assert code == 0
    assert set(report["result"]) == {"log", "kernel_part", "two_letter_part"}
    code, report = capture(capsys, ["factorize", "--input", p2_file, "--order", "4"])
    assert code == 0
    assert report["result"]["reassembles"] is True


def test_pl_center(capsys):
    code, report = capture(
        capsys, ["pl-center", "--a", "1", "--b", "0,1", "--order", "4"]
    )
    assert code == 0
    assert report["result"]["is_center_element"] is True
    assert report["result"]["operator_image_trivial"] is True
    assert report["result"]["return_map"] == "r"


def test_gamma(capsys):
    code, report = capture(capsys, ["gamma", "--word", "1,1,2"])
    assert code == 0
    assert report["result"] == {
        "agree": False,
        "bracket_recursion": "2",
        "product_formula": "-2",
    }
    code, report = capture(capsys, ["gamma", "--word", "1,4"])
    assert report["result"]["agree"] is True


def test_deterministic_output(capsys, p2_file):
    argv = ["monodromy", "--input", p2_file, "--order", "5"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_text_format(capsys, c1_file):
    code = run(["center", "--input", c1_file, "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "command: center" in out and "verdict: True" in out


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["center", "--input", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err
    assert run(["center", "--input", str(tmp_path / "missing.json")]) == 2


def test_exit_code_precondition(capsys):
    assert run(["lie", "abel-count", "--n", "3"]) == 1
    assert "n >= 5" in capsys.readouterr().err


def test_exit_code_bad_usage(capsys):
    assert run(["no-such-command"]) == 2
    capsys.readouterr()


def test_malformed_segment_positions(capsys, tmp_path):
    bad = tmp_path / "bad_segment.json"
    bad.write_text(
        json.dumps({"T": "1", "segments": [{"len": "1", "coeffs": {"1": "zz"}}]})
    )
    assert run(["center", "--input", str(bad)]) == 2
    assert "position" in capsys.readouterr().err
