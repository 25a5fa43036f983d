import itertools
import json

import pytest
from fastapi.testclient import TestClient

from modchat.compliance import (
    ComplianceRequest,
    ComplianceService,
    EthicalViolation,
    LegalViolation,
    RequestValidationError,
    RulebaseConfigError,
    Verdict,
    create_app,
    default_rulebases,
    jurisdiction_facts,
    normalize_location,
    parse_verdict,
    render,
)
from modchat.compliance.cli import main as cli_main


@pytest.fixture(scope="module")
def svc():
    return ComplianceService()


def req(location="gr", age=34, context="adults_only", score=5, hol="hol_denial"):
    return ComplianceRequest(
        user_location=location,
        user_age=age,
        chat_context=context,
        hate_speech_score=score,
        hol=hol,
    )


# -- request validation --------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        {"location": "GR"},
        {"location": "greece"},
        {"age": -1},
        {"age": 151},
        {"context": "family"},
        {"score": 6},
        {"score": -1},
        {"hol": "maybe"},
        {"hol": "hol_denial", "score": 4},
    ],
)
def test_invalid_requests_rejected(kwargs):
    with pytest.raises(RequestValidationError):
        req(**kwargs)


def test_compound_location_normalizes_to_country():
    assert normalize_location("us-ca") == "us"
    assert normalize_location("de") == "de"


# -- verdicts -------------------------------------------------------------------


def test_denial_in_covered_jurisdiction_is_legal_and_ethical(svc):
    v = svc.check(req("gr"))
    assert v.legal == LegalViolation(reason="Holocaust Denial")
    assert v.ethical == EthicalViolation(reason="Holocaust Denial", score=5)


def test_denial_outside_jurisdiction_is_ethical_only(svc):
    v = svc.check(req("us"))
    assert v.legal is None
    assert v.ethical == EthicalViolation(reason="Holocaust Denial", score=5)


def test_us_ca_uses_us_jurisdiction(svc):
    assert svc.check(req("us-ca")) == svc.check(req("us"))


def test_plain_hate_at_threshold_is_ethical_violation(svc):
    v = svc.check(req("gr", score=3, hol="none"))
    assert v.legal is None
    assert v.ethical == EthicalViolation(reason="hate speech", score=3)


def test_hate_below_threshold_is_clean(svc):
    assert svc.check(req("gr", score=2, hol="none")) == Verdict()
    assert svc.check(req("gr", score=0, hol="none")) == Verdict()


def test_every_jurisdiction_fact_triggers_legal_violation(svc):
    legal_rb, _ = svc.rulebases
    countries = jurisdiction_facts(legal_rb)
    assert countries >= {"de", "gr"}
    for c in countries:
        assert svc.check(req(c)).legal is not None
    for c in ["us", "br", "jp", "se"]:
        assert c not in countries
        assert svc.check(req(c)).legal is None


def test_ethical_verdict_is_location_independent(svc):
    for score, hol in [(5, "hol_denial"), (4, "none"), (2, "none")]:
        verdicts = {svc.check(req(c, score=score, hol=hol)).ethical for c in ["gr", "us", "jp"]}
        assert len(verdicts) == 1


def test_threshold_is_configurable():
    strict = ComplianceService(ethical_threshold=1)
    lax = ComplianceService(ethical_threshold=5)
    assert strict.check(req("us", score=1, hol="none")).ethical is not None
    assert lax.check(req("us", score=4, hol="none")).ethical is None
    # denial bypasses the threshold entirely
    assert lax.check(req("us", score=5, hol="hol_denial")).ethical is not None


def test_exhaustive_decision_table(svc):
    """The verdict is a pure function of (jurisdiction membership, score, hol)."""
    legal_rb, _ = svc.rulebases
    countries = jurisdiction_facts(legal_rb)
    for location, score in itertools.product(["gr", "us"], range(0, 6)):
        for hol in ["hol_denial", "none"]:
            if hol == "hol_denial" and score != 5:
                continue
            v = svc.check(req(location, score=score, hol=hol))
            assert (v.legal is not None) == (hol == "hol_denial" and location in countries)
            if hol == "hol_denial":
                assert v.ethical == EthicalViolation("Holocaust Denial", 5)
            elif score >= 3:
                assert v.ethical == EthicalViolation("hate speech", score)
            else:
                assert v.ethical is None


# -- rendering -------------------------------------------------------------------


def test_render_both_violations_is_byte_exact(svc):
    assert render(svc.check(req("gr"))) == (
        b'{"response":{"legal_violation":{"reason":"Holocaust Denial"},'
        b'"ethical_violation":{"reason":"Holocaust Denial","score":5}}}'
    )


def test_render_ethical_only(svc):
    assert render(svc.check(req("us", score=4, hol="none"))) == (
        b'{"response":{"ethical_violation":{"reason":"hate speech","score":4}}}'
    )


def test_render_clean(svc):
    assert render(svc.check(req("us", score=1, hol="none"))) == b'{"response":{}}'


def test_render_key_order_is_fixed(svc):
    raw = render(svc.check(req("gr"))).decode()
    assert raw.index("legal_violation") < raw.index("ethical_violation")


def test_render_parse_roundtrip(svc):
    for r in [req("gr"), req("us"), req("us", score=4, hol="none"), req("us", score=1, hol="none")]:
        v = svc.check(r)
        assert parse_verdict(render(v)) == v
        assert parse_verdict(render(v, pretty=True)) == v


def test_pretty_render_is_same_document(svc):
    v = svc.check(req("gr"))
    assert json.loads(render(v, pretty=True)) == json.loads(render(v))


# -- rulebase loading ---------------------------------------------------------


def test_missing_rulebase_dir_is_fatal():
    with pytest.raises(RulebaseConfigError):
        default_rulebases(rulebase_dir="/nonexistent")


def test_broken_override_is_fatal(tmp_path):
    (tmp_path / "legal.rules").write_text("this is not a rulebase")
    (tmp_path / "ethical.rules").write_text("")
    with pytest.raises(RulebaseConfigError):
        default_rulebases(rulebase_dir=str(tmp_path))


def test_reload_swaps_rulebases(tmp_path):
    svc = ComplianceService()
    (tmp_path / "legal.rules").write_text(
        'legalChecker() :- rcvMult(X, P, F, executionRequest, {hol -> H}),'
        ' spawn(X, service, resume).\n'
    )
    (tmp_path / "ethical.rules").write_text(
        'ethicalThreshold(3).\n'
        'ethicalChecker() :- rcvMult(X, P, F, executionRequest, {hol -> H}),'
        ' spawn(X, service, resume).\n'
    )
    svc.reload(rulebase_dir=str(tmp_path))
    assert svc.check(req("gr")) == Verdict()  # permissive override: nothing fires


# -- CLI ------------------------------------------------------------------------


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_golden_output(capsys):
    code, out, err = run_cli(
        capsys, "--location", "gr", "--age", "34", "--context", "adults_only",
        "--score", "5", "--hol", "hol_denial",
    )
    assert code == 0 and err == ""
    assert out == (
        '{"response":{"legal_violation":{"reason":"Holocaust Denial"},'
        '"ethical_violation":{"reason":"Holocaust Denial","score":5}}}\n'
    )


def test_cli_clean_output(capsys):
    code, out, _ = run_cli(
        capsys, "--location", "us", "--age", "40", "--context", "adults_only",
        "--score", "1", "--hol", "none",
    )
    assert code == 0
    assert out == '{"response":{}}\n'


def test_cli_threshold_flag(capsys):
    code, out, _ = run_cli(
        capsys, "--location", "us", "--age", "40", "--context", "adults_only",
        "--score", "4", "--hol", "none", "--ethical-threshold", "5",
    )
    assert code == 0
    assert out == '{"response":{}}\n'


def test_cli_invalid_request_exits_2(capsys):
    code, out, err = run_cli(
        capsys, "--location", "GREECE", "--age", "34", "--context", "adults_only",
        "--score", "5", "--hol", "hol_denial",
    )
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_cli_pretty_flag(capsys):
    code, out, _ = run_cli(
        capsys, "--location", "gr", "--age", "34", "--context", "adults_only",
        "--score", "5", "--hol", "hol_denial", "--pretty",
    )
    assert code == 0
    assert json.loads(out)["response"]["legal_violation"]["reason"] == "Holocaust Denial"
    assert "\n   " in out


# -- HTTP surface ------------------------------------------------------------------


@pytest.fixture
def client():
    return TestClient(create_app())


def test_http_check_wire_form(client):
    r = client.post(
        "/compliance/check",
        json={
            "user_location": "gr",
            "user_age": 34,
            "chat_context": "adults_only",
            "hate_speech_score": 5,
            "hol": "hol_denial",
        },
    )
    assert r.status_code == 200
    assert r.content == (
        b'{"response":{"legal_violation":{"reason":"Holocaust Denial"},'
        b'"ethical_violation":{"reason":"Holocaust Denial","score":5}}}'
    )


def test_http_check_invalid_request(client):
    r = client.post(
        "/compliance/check",
        json={
            "user_location": "gr",
            "user_age": 34,
            "chat_context": "adults_only",
            "hate_speech_score": 4,
            "hol": "hol_denial",
        },
    )
    assert r.status_code == 422
