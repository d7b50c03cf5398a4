import io
import json

import pytest

from cremona.cli import run

SIGMA = "[x*z : y*z : x^2+y^2]"
SIGMA_STD = "[y*z : x*z : x*y]"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_classify_sigma_std():
    code, out = call("classify", SIGMA_STD, "--format", "json-lines")
    assert code == 0
    assert records(out)[0]["class"] == "GStarOnly"


def test_compose_involution():
    code, out = call("compose", SIGMA, SIGMA, "--format", "json-lines")
    assert code == 0 and records(out) == [{"degree": 1, "identity": True, "map": "[x : y : z]"}]


def test_invalid_map_exit_code():
    code, _ = call("analyze", "[x : x : z]")
    assert code == 1


def test_syntax_error_exit_code():
    code, _ = call("analyze", "[x : y")
    assert code == 1


def test_phi_of_quintic_file(tmp_path):
    from cremona.sampling import quintic_pool
    from cremona.abelianization import psi_element
    q = quintic_pool(1)[0]
    path = tmp_path / "quintic.txt"
    path.write_text(str(q))
    code, out = call("phi", "--input", str(path), "--format", "json-lines")
    assert code == 0
    assert records(out) == [psi_element(q).to_json()]


def test_structured_output_is_deterministic():
    a = call("analyze", SIGMA, SIGMA_STD, "--format", "json-lines")
    b = call("analyze", SIGMA, SIGMA_STD, "--format", "json-lines")
    assert a == b
    for line in a[1].splitlines():
        assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))


def test_decompose_sigma_std():
    code, out = call("decompose", SIGMA_STD, "--format", "json-lines")
    assert code == 0 and records(out)[0]["kinds"] == ["I", "II", "II", "III"]


@pytest.mark.parametrize("sid,verdict", [("D1", "closes"), ("D5", "closes"), ("D3", "symbolic")])
def test_verify_disc(sid, verdict):
    code, out = call("verify-disc", "--schema", sid, "--seed", "4", "--format", "json-lines")
    assert code == 0 and records(out)[0]["verdict"] == verdict


def test_verify_disc_needs_schema():
    assert call("verify-disc")[0] == 1


def test_amalgam_reduce_cancels_sigma():
    code, out = call("amalgam-reduce", SIGMA, SIGMA, "--format", "json-lines")
    assert code == 0 and records(out)[0]["reduced_length"] == 0


def test_coset_separate_summary():
    code, out = call("coset-separate", "--count", "3", "--format", "json-lines")
    assert code == 0 and records(out)[-1] == {"pairs": 3, "separated": 3, "translations": 3}


def test_ball():
    code, out = call("ball", "--format", "json-lines")
    rec = records(out)[0]
    assert code == 0 and rec["is_tree"] and rec["vertices"] == rec["edges"] + 1
    assert rec["sigma_fixes"] == ["GStar", "GCirc"]


def test_human_format():
    code, out = call("classify", SIGMA)
    assert code == 0 and "class: InH" in out
