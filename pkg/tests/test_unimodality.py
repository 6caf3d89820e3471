import pytest
from hypothesis import given
from hypothesis import strategies as st

from qunimodal.polyring import ZERO, IntPolynomial
from qunimodal.qbinomial import qbinom
from qunimodal.unimodality import (
    StrictnessReport,
    difference_profile,
    is_strict_all_degrees,
    is_strictly_unimodal_qbinom,
    is_symmetric,
    is_unimodal,
    lemma2_applies,
    lemma2_product,
)

P = IntPolynomial


def naive_unimodal(cs):
    # no strict decrease followed later by a strict increase
    for i in range(len(cs) - 1):
        if cs[i] > cs[i + 1]:
            if any(cs[j] < cs[j + 1] for j in range(i + 1, len(cs) - 1)):
                return False
    return True


def naive_strict_witness(cs, mid):
    for i in range(2, mid + 1):
        if not cs[i - 1] < cs[i]:
            return i
    return None


def test_symmetry_examples():
    assert is_symmetric(P([1, 1, 2, 1, 1]))
    assert not is_symmetric(P([1, 2]))
    assert is_symmetric(P([1]))
    with pytest.raises(ValueError):
        is_symmetric(ZERO)


def test_unimodal_examples():
    assert is_unimodal(P([1, 1, 2, 1, 1]))
    assert not is_unimodal(P([1, 0, 1]))
    assert is_unimodal(P([3, 3, 3]))
    with pytest.raises(ValueError):
        is_unimodal(ZERO)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=10).filter(any))
def test_unimodal_matches_naive(cs):
    p = P(cs)
    assert is_unimodal(p) == naive_unimodal(list(p.coeffs))


def test_strict_qbinom_examples():
    assert is_strictly_unimodal_qbinom(2, 2).strict
    r = is_strictly_unimodal_qbinom(6, 5)
    assert not r.strict and r.verdict == "non-strict"
    # c_14 = c_15 = 32 by box enumeration
    assert r.witness == 15
    r = is_strictly_unimodal_qbinom(3, 3)
    assert not r.strict and r.witness == 4
    assert is_strictly_unimodal_qbinom(5, 5).strict


def test_strict_matches_naive_scan_up_to_25():
    for a in range(1, 26):
        for b in range(1, a + 1):
            cs = qbinom(a, b).coeffs
            w = naive_strict_witness(cs, a * b // 2)
            r = is_strictly_unimodal_qbinom(a, b)
            assert r.witness == w, (a, b)
            assert r.strict == (w is None)
            if w is not None:
                assert cs[w - 1] >= cs[w]
                assert all(cs[i - 1] < cs[i] for i in range(2, w))


def test_report_json():
    r = is_strictly_unimodal_qbinom(6, 5)
    assert r.to_json() == {"a": 6, "b": 5, "verdict": "non-strict", "witness": 15}
    assert StrictnessReport.from_json(r.to_json()) == r
    s = is_strictly_unimodal_qbinom(2, 2)
    assert s.to_json() == {"a": 2, "b": 2, "verdict": "strict"}
    assert StrictnessReport.from_json(s.to_json()) == s


def test_strict_all_degrees_examples():
    assert is_strict_all_degrees(P([1, 2, 3, 3, 2, 1]))
    assert not is_strict_all_degrees(P([1, 2, 4, 4, 4, 2, 1]))
    assert is_strict_all_degrees(P([1]))
    with pytest.raises(ValueError):
        is_strict_all_degrees(P([1, 2]))


def test_lemma2_examples():
    assert lemma2_applies(2, 2, 1)
    assert list(lemma2_product(2, 2, 1)) == [1, 2, 3, 3, 2, 1]
    assert is_strict_all_degrees(lemma2_product(2, 2, 1))
    assert not lemma2_applies(2, 2, 2)
    assert not lemma2_applies(2, 2, 5)
    assert not lemma2_applies(2, 2, 0)


def test_lemma2_excluded_case_fails():
    p = lemma2_product(2, 2, 2)
    assert list(p) == [1, 2, 4, 4, 4, 2, 1]
    assert not is_strict_all_degrees(p)


def test_lemma2_sweep():
    for c in range(2, 7):
        for d in range(2, c + 1):
            if not is_strictly_unimodal_qbinom(c, d).strict:
                continue
            for t in range(1, c * d + 1):
                if lemma2_applies(c, d, t):
                    assert is_strict_all_degrees(lemma2_product(c, d, t)), (c, d, t)


def test_difference_profile_examples():
    assert difference_profile(P([1, 1, 2, 1, 1])).diffs == (0, 1)
    assert difference_profile(P([1, 2, 3])).diffs == (1,)
    prof = difference_profile(qbinom(6, 5))
    assert prof.diffs[15 - 1] == 0


def test_profile_reconstructs_prefix_and_sign():
    for a, b in [(6, 5), (9, 7), (4, 4), (12, 3)]:
        p = qbinom(a, b)
        prof = difference_profile(p)
        assert prof.prefix() == list(p.coeffs[: p.degree // 2 + 1])
        assert is_unimodal(p) == all(d >= 0 for d in prof.diffs)
