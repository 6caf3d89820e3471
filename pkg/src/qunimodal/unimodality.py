"""Symmetry, unimodality and strict-unimodality predicates.

Two strictness notions are kept apart on purpose:

* :func:`is_strictly_unimodal_qbinom` asks for ``c_1 < c_2 < ... < c_m``
  with ``m = floor(ab/2)``.  The constant term is excluded because every
  q-binomial starts ``1 + q + ...``.
* :func:`is_strict_all_degrees` asks for ``c_0 < c_1 < ... < c_m``.  This is
  what a product with a staircase ``1 + q + ... + q^t`` achieves.

In both, equality of the two central coefficients of an odd-degree
symmetric polynomial is forced and never counts as a failure, since the
scan stops at ``floor(D/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import IntPolynomial, multiply, staircase
from .qbinomial import qbinom

__all__ = [
    "DifferenceProfile",
    "StrictnessReport",
    "difference_profile",
    "first_strict_failure",
    "is_strict_all_degrees",
    "is_strictly_unimodal_qbinom",
    "is_symmetric",
    "is_unimodal",
    "lemma2_applies",
    "lemma2_product",
    "strictness_report",
]


def _require_nonzero(p: IntPolynomial) -> None:
    if p.is_zero():
        raise ValueError("predicate undefined on the zero polynomial")


def is_symmetric(p: IntPolynomial) -> bool:
    _require_nonzero(p)
    cs = p.coeffs
    return cs == cs[::-1]


def is_unimodal(p: IntPolynomial) -> bool:
    """No strict increase anywhere after a strict decrease."""
    _require_nonzero(p)
    cs = p.coeffs
    fell = False
    for x, y in zip(cs, cs[1:]):
        if y < x:
            fell = True
        elif y > x and fell:
            return False
    return True


def first_strict_failure(coeffs, lo: int, hi: int) -> int | None:
    """Smallest ``i`` in ``[lo, hi]`` with ``coeffs[i-1] >= coeffs[i]``."""
    for i in range(max(lo, 1), hi + 1):
        if coeffs[i - 1] >= coeffs[i]:
            return i
    return None


@dataclass(frozen=True)
class StrictnessReport:
    a: int
    b: int
    degree: int
    strict: bool
    witness: int | None = None

    @property
    def verdict(self) -> str:
        return "strict" if self.strict else "non-strict"

    def to_json(self) -> dict:
        out = {"a": self.a, "b": self.b, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    @classmethod
    def from_json(cls, obj: dict) -> StrictnessReport:
        a, b = obj["a"], obj["b"]
        strict = obj["verdict"] == "strict"
        witness = obj.get("witness")
        if strict != (witness is None):
            raise ValueError("witness must be present exactly for non-strict reports")
        return cls(a, b, a * b, strict, witness)


def strictness_report(a: int, b: int, p: IntPolynomial) -> StrictnessReport:
    """Classify an already-expanded ``qbinom(a, b)``."""
    mid = (a * b) // 2
    witness = first_strict_failure(p.coeffs, 2, mid)
    return StrictnessReport(a, b, a * b, witness is None, witness)


def is_strictly_unimodal_qbinom(a: int, b: int) -> StrictnessReport:
    """Is ``c_1 < ... < c_{floor(ab/2)}`` for ``qbinom(a, b)``?

    >>> is_strictly_unimodal_qbinom(6, 5).to_json()["verdict"]
    'non-strict'
    """
    if a < 1 or b < 1:
        raise ValueError("need a >= 1 and b >= 1")
    return strictness_report(a, b, qbinom(a, b))


def is_strict_all_degrees(p: IntPolynomial) -> bool:
    _require_nonzero(p)
    if not is_symmetric(p):
        raise ValueError("is_strict_all_degrees expects a symmetric polynomial")
    return first_strict_failure(p.coeffs, 1, p.degree // 2) is None


def lemma2_applies(c: int, d: int, t: int) -> bool:
    """Side condition for strictness of ``qbinom(c, d) * (1 + ... + q^t)``.

    Holds when ``1 <= t <= c*d`` and ``t != c*d - 2``; the caller is
    responsible for ``qbinom(c, d)`` itself being strictly unimodal.
    """
    if c < 1 or d < 1:
        return False
    return 1 <= t <= c * d and t != c * d - 2


def lemma2_product(c: int, d: int, t: int) -> IntPolynomial:
    return multiply(qbinom(c, d), staircase(t))


@dataclass(frozen=True)
class DifferenceProfile:
    """``diffs[i-1] = c_i - c_{i-1}`` for ``1 <= i <= floor(D/2)``."""

    c0: int
    diffs: tuple

    def prefix(self) -> list:
        out = [self.c0]
        for d in self.diffs:
            out.append(out[-1] + d)
        return out

    def to_json(self) -> dict:
        return {"c0": str(self.c0), "diffs": [str(d) for d in self.diffs]}


def difference_profile(p: IntPolynomial) -> DifferenceProfile:
    _require_nonzero(p)
    cs = p.coeffs
    mid = p.degree // 2
    return DifferenceProfile(cs[0], tuple(cs[i] - cs[i - 1] for i in range(1, mid + 1)))
