import io
import json

import pytest

from packetforge.classical import GenSteinberg, tempered
from packetforge.cli import run
from packetforge.core import Segment

EXAMPLE = ["--alpha", "5/2", "--blocks", "(6,1)+,(1,2)-"]


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def report(*argv):
    code, text = invoke(*argv)
    return code, json.loads(text)


def test_mstar_lists_every_term():
    code, rep = report("mstar", "--delta", "0,1")
    assert code == 0
    assert rep["pass"] is True
    assert rep["command"] == "mstar"
    assert len(rep["results"]["terms"]) == 6
    assert all(t["coeff"] == 1 for t in rep["results"]["terms"])


def test_mstar_variants():
    assert len(report("mstar", "--delta", "0,1", "--which", "m")[1]["results"]["terms"]) == 3
    code, rep = report("mstar", "--zeta=-1,1", "--check")
    assert code == 0 and rep["results"]["closed_form_equal"] is True
    assert invoke("mstar", "--delta", "0,1", "--zeta", "2", "--check")[0] == 2
    assert invoke("mstar")[0] == 2


def test_mustar_over_sigma():
    code, rep = report("mustar", "--delta", "2")
    assert code == 0
    assert rep["results"]["total"] == 2
    assert {t["string"] for t in rep["results"]["terms"]} == {"(2)", "(-2)"}


def test_packet_example():
    code, rep = report("packet", *EXAMPLE)
    assert code == 0
    assert rep["results"]["result"] == "δ([5/2];σ)"
    assert rep["results"]["certified"] is True
    assert rep["inputs"]["alpha"] == "5/2"


def test_packet_expectation():
    good = json.dumps(tempered(GenSteinberg(Segment.of("5/2"))).to_json())
    assert invoke("packet", *EXAMPLE, "--expect", good)[0] == 0
    bad = json.dumps(tempered(GenSteinberg(Segment.of("5/2", "7/2"))).to_json())
    code, rep = report("packet", *EXAMPLE, "--expect", bad)
    assert code == 1
    assert rep["pass"] is False


def test_dual_swaps_the_parameter():
    code, rep = report("dual", *EXAMPLE)
    assert code == 0
    assert rep["results"]["dual"] == "L([5/2];σ)"


def test_jac_chain():
    steinberg = json.dumps(tempered(GenSteinberg(Segment.of(2))).to_json())
    code, rep = report("jac", "--alpha", "2", "--datum", steinberg, "--x", "2")
    assert code == 0
    assert rep["results"]["steps"] == [{"x": "2", "result": "σ"}]
    code, rep = report("jac", "--alpha", "2", "--datum", steinberg, "--x", "0")
    assert code == 1
    assert rep["results"]["steps"][0]["result"] == "Undecidable"


@pytest.mark.parametrize(
    "argv",
    [
        ["packet", "--alpha", "1/3", "--blocks", "(6,1)+"],
        ["packet", "--blocks", "(6,1)+,(1,2)-"],
        ["packet", "--alpha", "5/2", "--blocks", "(6,1)+,(1,2)+"],
        ["packet", "--alpha", "5/2", "--blocks", "(6,1)"],
        ["critical", "--alpha", "2", "--case", "0,1"],
        ["critical", "check", "--alpha", "2"],
        ["no-such-command"],
    ],
)
def test_configuration_errors_exit_with_two(argv):
    assert invoke(*argv)[0] == 2


def test_error_reports_are_still_written():
    code, rep = report("packet", "--alpha", "1/3", "--blocks", "(6,1)+")
    assert code == 2
    assert rep["pass"] is False
    assert "error" in rep["results"]


def test_config_file(tmp_path):
    path = tmp_path / "base.json"
    path.write_text(json.dumps({"lines": [{"alpha": "5/2"}], "blocks": ["(4,1)+,(2,1)-"]}), encoding="utf-8")
    code, rep = report("packet", "--config", str(path), "--blocks", "(6,1)+,(1,2)-")
    assert code == 0
    assert rep["results"]["result"] == "δ([5/2];σ)"
    assert invoke("packet", "--config", str(path), "--alpha", "2", "--blocks", "(6,1)+,(1,2)-")[0] == 2


@pytest.mark.parametrize(
    "content",
    [
        "{not json",
        json.dumps({"lines": []}),
        json.dumps({"lines": [{"alpha": "5/2"}], "blocks": ["(4,1)+,(2,1)+"]}),
    ],
)
def test_bad_config_files(tmp_path, content):
    path = tmp_path / "base.json"
    path.write_text(content, encoding="utf-8")
    assert invoke("packet", "--config", str(path), "--blocks", "(6,1)+")[0] == 2


def test_missing_config_file(tmp_path):
    assert invoke("packet", "--config", str(tmp_path / "absent.json"), "--blocks", "(6,1)+")[0] == 2


def test_reports_are_deterministic():
    first = invoke("packet", *EXAMPLE)
    second = invoke("packet", *EXAMPLE)
    assert first == second


def test_text_format():
    code, text = invoke("packet", *EXAMPLE, "--format", "text")
    assert code == 0
    assert text.splitlines()[0] == "packet: pass"


def test_critical_list_and_check():
    code, rep = report("critical", "list", "--alpha", "2")
    assert code == 0
    assert [c["case"] for c in rep["results"]] == ["a-1,a", "a-1,a,a+1", "a-1,a,a", "0,1,2"]
    code, rep = report("critical", "check", "--alpha", "2", "--exponents", "1,2,2")
    assert code == 0
    assert rep["results"]["critical"] is True


def test_critical_verify_one_case():
    code, rep = report("critical", "verify", "--alpha", "2", "--case", "a-1,a")
    assert code == 0
    assert rep["results"][0]["pass"] is True


def test_family_single_case():
    code, rep = report("family", "--alpha", "3/2", "--m", "0", "--n", "1")
    assert code == 0
    assert rep["results"]["checks"][0]["equal"] is True


def test_appendix_single_point():
    code, rep = report("appendix", "--alpha", "2", "--x", "1")
    assert code == 0
    assert rep["results"][0]["route_a"] == "L([1];σ)"


@pytest.mark.parametrize("alpha", ["1", "1/2"])
def test_verify_all_passes_on_the_reducible_lines(alpha):
    code, rep = report("verify-all", "--alpha", alpha, "--grid", "3")
    failing = [s for s in rep["results"]["suites"] if not s["pass"]]
    assert code == 0, failing
    assert rep["pass"] is True
