import json
import subprocess
import sys
from pathlib import Path

import pytest

from bifrobenius import fixtures
from bifrobenius.algebrafile import ParseError, parse, render
from bifrobenius.cli import emit_fixture, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="f.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def b4_doc():
    return json.loads(emit_fixture("b4"))


# -- parsing -----------------------------------------------------------------

@pytest.mark.parametrize("name", fixtures.fixture_names())
def test_emitted_fixture_round_trips(name):
    data = emit_fixture(name)
    af = parse(data)
    assert parse(render(af)) == af
    assert render(af) == data


def test_index_out_of_range():
    doc = b4_doc()
    doc["mul"].append([0, 0, 9, "1"])
    with pytest.raises(ParseError, match=r"mul\[\d+\]: index 9 out of range"):
        parse(json.dumps(doc))


def test_zero_denominator():
    doc = b4_doc()
    doc["unit"][0] = "1/0"
    with pytest.raises(ParseError, match=r"unit\[0\]"):
        parse(json.dumps(doc))


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d.update(extra=1), "unknown keys: extra"),
    (lambda d: d.pop("comul"), "missing keys: comul"),
    (lambda d: d["mul"].append(list(d["mul"][0])), "duplicate entry"),
    (lambda d: d.update(characteristic=4), "characteristic"),
    (lambda d: d["counit"].__setitem__(0, 1), "scalars must be strings"),
    (lambda d: d["counit"].__setitem__(0, "0.5"), r"counit\[0\]"),
    (lambda d: d.update(basis=["a", "a", "b", "c"]), "distinct"),
])
def test_strict_parse_errors(mutate, msg):
    doc = b4_doc()
    mutate(doc)
    with pytest.raises(ParseError, match=msg):
        parse(json.dumps(doc))


def test_malformed_json_has_position():
    with pytest.raises(ParseError, match="line 1 column"):
        parse("{oops")


def test_scalars_canonicalised():
    doc = b4_doc()
    doc["unit"][0] = "2/2"
    assert parse(json.dumps(doc)).unit[0] == "1"


# -- commands ----------------------------------------------------------------

def test_report_golden_b4(capsys):
    code, out, _ = run(capsys, "report", str(GOLDEN / "b4.json"), "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "b4.report.json").read_text()
    doc = json.loads(out)
    s = doc["summary"]
    assert s["is_bf"] is True and s["is_sbf"] is False
    assert doc["derived"]["S"] == [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    assert doc["traces"]["tr_S2"] == "4"


def test_report_golden_c3(capsys):
    code, out, _ = run(capsys, "report", str(GOLDEN / "c3.json"), "--format", "json")
    assert out == (GOLDEN / "c3.report.json").read_text()


def test_report_is_deterministic(capsys):
    outs = {run(capsys, "report", "s3", "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_text_report(capsys):
    code, out, _ = run(capsys, "report", "obs1")
    assert code == 0
    assert "S(x) = 1*y" in out
    assert "SKIP" in out and "not applicable" in out


def test_conv_inverse_obs1(capsys):
    code, out, _ = run(capsys, "conv-inverse", str(GOLDEN / "obs1.json"))
    assert code == 0
    assert out == (GOLDEN / "obs1.conv_inverse.txt").read_text()
    assert "Sigma(x) = -2/3*1 + -2/3*x + 2*y" in out


def test_conv_inverse_json(capsys):
    code, out, _ = run(capsys, "conv-inverse", "obs1", "--format", "json")
    doc = json.loads(out)
    assert [r[1] for r in doc["convolution_inverse"]] == ["-2/3", "-2/3", "2"]
    assert doc["diagnostics"]["two_sided"] is True


def test_check_c3_exit_zero(capsys):
    assert run(capsys, "check", str(GOLDEN / "c3.json"))[0] == 0


def test_check_parse_error_exit_one(tmp_path, capsys):
    code, out, err = run(capsys, "check", write(tmp_path, "{"))
    assert code == 1
    assert "error:" in err and out == ""


def test_check_missing_file_exit_one(capsys):
    assert run(capsys, "check", "/nonexistent/file.json")[0] == 1


def test_check_broken_structure_exit_two(tmp_path, capsys):
    doc = b4_doc()
    doc["counit"][1] = "1"
    code, out, err = run(capsys, "check", write(tmp_path, doc))
    assert code == 2
    assert "failed:" in err


def test_check_bad_integral_names_step(tmp_path, capsys):
    doc = b4_doc()
    doc["integral"] = ["1", "0", "0", "0"]
    code, out, err = run(capsys, "check", write(tmp_path, doc))
    assert code == 2
    assert "right integral invalid" in err


def test_report_exits_zero_on_broken_structure(tmp_path, capsys):
    doc = b4_doc()
    doc["integral"] = ["1", "0", "0", "0"]
    code, out, _ = run(capsys, "report", write(tmp_path, doc), "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["is_bf"] is False
    build = [c for c in rep["checks"] if c["id"] == "build"][0]
    assert build["status"] == "fail" and "witness" in build


def test_quiet(capsys):
    code, out, err = run(capsys, "check", "c2", "--quiet")
    assert (code, out, err) == (0, "", "")


def test_field_override(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "c3", "--field-override", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["field"]["name"] == "GF(5)"
    assert doc["traces"]["dim_in_field"] == "3"
    code, out, _ = run(capsys, "report", "c3", "--field-override", "3", "--format", "json")
    assert json.loads(out)["traces"]["phi_id_conv_Sbar_t"] == "0"


def test_field_override_rejects_denominator(capsys):
    # obs1 has halves
    code, _, err = run(capsys, "check", "obs1", "--field-override", "2")
    assert code == 1
    assert "denominator" in err or "divis" in err or "zero" in err


def test_field_override_not_prime(capsys):
    assert run(capsys, "check", "c3", "--field-override", "6")[0] == 1


def test_fixtures_list(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == fixtures.fixture_names()


def test_fixtures_emit(tmp_path, capsys):
    out_path = tmp_path / "b4.json"
    assert run(capsys, "fixtures", "emit", "b4", "-o", str(out_path))[0] == 0
    assert out_path.read_bytes() == (GOLDEN / "b4.json").read_bytes()
    code, out, _ = run(capsys, "fixtures", "emit", "c3", "--char", "7")
    assert json.loads(out)["characteristic"] == 7


def test_fixtures_emit_errors(capsys):
    assert run(capsys, "fixtures", "emit", "nope")[0] == 1
    assert run(capsys, "fixtures", "emit")[0] == 1
    assert run(capsys, "fixtures", "emit", "obs1", "--char", "3")[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bifrobenius", "check", "c2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.strip() == "ok"
