import dataclasses
import json

import pytest

from qunimodal.certify import (
    EXCEPTIONS,
    Certificate,
    CertificationFailure,
    Coverage,
    DirectCheck,
    certificate_from_json,
    certify,
    growth_constants,
    scan_exceptions,
    staircase_strict_interval,
    verify_certificate,
    verify_growth,
)
from qunimodal.koh import Family
from qunimodal.polyring import multiply, shift, staircase
from qunimodal.qbinomial import qbinom
from qunimodal.unimodality import first_strict_failure


def expected_strict(a, b):
    return (a, b) == (2, 2) or (b >= 5 and (a, b) not in EXCEPTIONS)


def staircase_oracle(sh, s1, s2):
    cs = shift(multiply(staircase(s1), staircase(s2)), sh).coeffs
    return [i for i in range(sh + 1, len(cs)) if cs[i - 1] < cs[i]]


@pytest.mark.parametrize("sh,s1,s2", [(0, 2, 4), (3, 0, 5), (8, 72, 112), (5, 7, 7), (1, 1, 9)])
def test_staircase_interval_matches_expansion(sh, s1, s2):
    lo, hi = staircase_strict_interval(sh, s1, s2)
    assert staircase_oracle(sh, s1, s2) == list(range(lo, hi + 1))


def test_staircase_examples():
    assert staircase_strict_interval(0, 2, 4) == (1, 2)
    assert list(multiply(staircase(2), staircase(4))) == [1, 2, 3, 3, 3, 2, 1]
    lo, hi = staircase_strict_interval(3, 0, 5)
    assert lo > hi
    # b=10, a=20 even base: [b-1, ab/2-a]
    assert staircase_strict_interval(8, 72, 112) == (9, 80)


def test_scan_small():
    reports = scan_exceptions(20, 7)
    pairs = [(r.a, r.b) for r in reports]
    assert pairs == [(a, b) for b in range(2, 8) for a in range(b, 21)]
    bad = {(r.a, r.b) for r in reports if not r.strict and r.b >= 5}
    assert bad == {p for p in EXCEPTIONS if p[0] <= 20 and p[1] <= 7}
    by = {(r.a, r.b): r for r in reports}
    assert by[2, 2].strict
    assert all(not by[a, 2].strict for a in range(3, 21))
    assert all(not by[a, b].strict for b in (3, 4) for a in range(b, 21))


def test_scan_parallel_order():
    assert scan_exceptions(14, 6, jobs=2) == scan_exceptions(14, 6, jobs=1)


def test_certify_2_2():
    cert = certify(2, 2)
    assert isinstance(cert.root, DirectCheck)
    assert verify_certificate(cert, "both").ok


def test_certify_exception_gives_witness():
    fail = certify(6, 5)
    assert isinstance(fail, CertificationFailure)
    assert 2 <= fail.witness <= 15
    cs = qbinom(6, 5).coeffs
    assert cs[fail.witness - 1] >= cs[fail.witness]


def test_certify_40_15_structure():
    cert = certify(40, 15)
    root = cert.root
    assert isinstance(root, Coverage)
    # b = 15 is odd
    assert root.base.parity == "odd"
    assert root.base.partition.parts == (2,) * 7 + (1,)
    assert root.step.family is Family.MOD3_ZERO
    assert (root.step.child.a, root.step.child.b) == (96, 5)
    chain = cert.chain()
    assert chain[1] == (96, 5, "single-row")
    assert chain[2] == (88, 5, "single-row")
    assert chain[-1][2] == "direct"
    assert verify_certificate(cert, "both").ok


def test_certify_23_9_falls_back_to_direct():
    cert = certify(23, 9)
    assert isinstance(cert.root, DirectCheck)
    assert verify_certificate(cert, "both").ok


@pytest.mark.parametrize("a,b,family", [
    (19, 19, Family.MOD3_ONE),
    (20, 20, Family.MOD3_TWO),
    (45, 31, Family.MOD3_ONE),
    (60, 32, Family.MOD3_TWO),
    (70, 16, Family.SINGLE_ROW),
    (33, 18, Family.MOD3_ZERO),
])
def test_structural_families(a, b, family):
    cert = certify(a, b)
    assert cert.root.step.family is family
    for mode in ("symbolic", "numeric", "both"):
        assert verify_certificate(cert, mode).ok, mode


def test_base_intervals():
    even = certify(40, 18).root.base
    assert even.ambient == (1, 16)
    assert even.term_interval == (17, 40 * 18 // 2 - 40)
    odd = certify(40, 15).root.base
    assert odd.ambient == (1, 14)
    assert odd.term_interval == (15, 40 * 7)


def _tamper(cert, **step_changes):
    step = dataclasses.replace(cert.root.step, **step_changes)
    return Certificate(cert.a, cert.b, Coverage(cert.root.base, step))


def test_widened_claim_is_rejected():
    cert = certify(40, 15)
    lo, hi = cert.root.step.claimed
    bad = _tamper(cert, claimed=(lo - 1, hi))
    for mode in ("symbolic", "numeric"):
        res = verify_certificate(bad, mode)
        assert not res.ok
        assert any("/step" in node for node, _ in res.failures)


def test_widened_base_term_interval_is_rejected():
    cert = certify(70, 16)
    base = cert.root.base
    lo, hi = base.term_interval
    wide = dataclasses.replace(base, term_interval=(lo, hi + 1))
    bad = Certificate(cert.a, cert.b, Coverage(wide, cert.root.step))
    res = verify_certificate(bad, "both")
    assert not res.ok
    assert any("base" in node and "term interval" in cond for node, cond in res.failures)
    numeric = verify_certificate(bad, "numeric")
    assert any("not strictly increasing" in cond for _, cond in numeric.failures)


def test_wrong_child_is_rejected():
    cert = certify(70, 16)
    bad = _tamper(cert, child=certify(40, 15))
    res = verify_certificate(bad, "symbolic")
    assert not res.ok


def test_direct_check_on_exception_is_rejected():
    res = verify_certificate(Certificate(6, 5, DirectCheck(6, 5)), "both")
    assert not res.ok
    assert "degree 15" in res.failures[0][1]


def test_inapplicable_family_is_rejected():
    cert = certify(70, 16)
    bad = _tamper(cert, family=Family.MOD3_ZERO)
    res = verify_certificate(bad, "symbolic")
    assert not res.ok
    assert any("not applicable" in c for _, c in res.failures)


def test_certificate_json_round_trip():
    for a, b in [(2, 2), (40, 15), (45, 31), (60, 32)]:
        cert = certify(a, b)
        text = json.dumps(cert.to_json())
        back = certificate_from_json(json.loads(text))
        assert back == cert
        assert verify_certificate(back, "symbolic").ok


def test_side_conditions_recorded_true():
    step = certify(45, 31).root.step
    assert step.lemma2 == (3 * 45 - 62 + 8, 9, 4 * 45 - 62 + 8)
    assert all(c.holds for c in step.side_conditions)
    assert len(step.side_conditions) >= 4


def test_certify_precondition():
    with pytest.raises(ValueError):
        certify(3, 5)
    with pytest.raises(ValueError):
        certify(5, 1)


def test_modes_agree_and_complete_up_to_30():
    for b in range(2, 31):
        for a in range(b, 31):
            cert = certify(a, b)
            if expected_strict(a, b):
                assert isinstance(cert, Certificate), (a, b)
                sym = verify_certificate(cert, "symbolic")
                num = verify_certificate(cert, "numeric")
                assert sym.ok and num.ok, (a, b, sym.failures, num.failures)
            else:
                assert isinstance(cert, CertificationFailure), (a, b)


def test_cited_terms_never_decrease_below_middle():
    from qunimodal.koh import expand, koh_term

    for a, b in [(40, 15), (45, 31), (70, 16)]:
        root = certify(a, b).root
        for lam in (root.base.partition, root.step.partition):
            cs = expand(koh_term(a, lam)).coeffs
            assert all(cs[i - 1] <= cs[i] for i in range(1, a * b // 2 + 1))


def test_growth_constants():
    assert growth_constants(2) == (8, 26, 43)
    assert growth_constants(3) == (10, 36, 73)


def test_growth_examples():
    r = verify_growth(2, 26)
    assert r.verified and r.failures == []
    assert (r.b, r.a0, r.L) == (8, 26, 43)
    assert all(s["lemma2_applies"] and s["inner_strict"] for s in r.structural)
    assert verify_growth(3, 36).verified
    with pytest.raises(ValueError):
        verify_growth(2, 25)
    with pytest.raises(ValueError):
        verify_growth(1, 100)


def test_growth_default_a():
    r = verify_growth(2)
    assert r.a == 26 and r.verified
    cs = qbinom(26, 8).coeffs
    assert first_strict_failure(cs, 2, 26 * 8 // 2) is None
