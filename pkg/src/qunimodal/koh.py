"""KOH decomposition of Gaussian binomial coefficients.

For ``a >= b >= 2``, ``qbinom(a, b)`` is the sum over partitions ``lam`` of
``b`` of

    q^(2 * sum C(lam_i, 2)) * prod_j [ j(a+2) - Y_{j-1} - Y_{j+1}  choose  lam_j - lam_{j+1} ]_q

where ``Y_i`` are the prefix sums of ``lam``.  Each summand has
nonnegative coefficients and is symmetric and unimodal about ``ab/2``.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce

from .partitions import Partition, iter_partitions
from .polyring import ONE, ZERO, IntPolynomial, add, multiply, shift
from .qbinomial import qbinom_top

__all__ = [
    "Family",
    "FamilyNotApplicableError",
    "KohTerm",
    "UnsupportedRegimeError",
    "expand",
    "family_closed_form",
    "family_partition",
    "koh_sum",
    "koh_term",
    "koh_term_for_family",
    "koh_terms",
]

log = logging.getLogger(__name__)


class UnsupportedRegimeError(ValueError):
    pass


class FamilyNotApplicableError(ValueError):
    pass


class Family(str, enum.Enum):
    EVEN_BASE = "even-base"
    ODD_BASE = "odd-base"
    MOD3_ZERO = "mod-3-zero"
    MOD3_ONE = "mod-3-one"
    MOD3_TWO = "mod-3-two"
    SINGLE_ROW = "single-row"
    GROWTH = "growth"


@dataclass(frozen=True)
class KohTerm:
    a: int
    lam: Partition
    shift: int
    factors: tuple  # ((top, bottom), ...) for j = 1..len(lam)

    @property
    def b(self) -> int:
        return self.lam.weight

    @property
    def vanishes(self) -> bool:
        return any(top < bottom for top, bottom in self.factors)

    def expand(self) -> IntPolynomial:
        return expand(self)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam.parts),
            "shift": self.shift,
            "factors": [[t, k] for t, k in self.factors],
        }


def koh_term(a: int, lam: Partition) -> KohTerm:
    """Descriptor of the summand indexed by ``lam`` in the expansion of ``qbinom(a, |lam|)``."""
    b = lam.weight
    if not a >= b >= 2:
        raise UnsupportedRegimeError(f"unsupported regime: need a >= b >= 2, got a={a}, b={b}")
    shift_ = 2 * sum(p * (p - 1) // 2 for p in lam.parts)
    factors = []
    for j in range(1, lam.length + 1):
        top = j * (a + 2) - lam.y(j - 1) - lam.y(j + 1)
        bottom = lam.part(j) - lam.part(j + 1)
        # never observed for a >= b >= 2; a zero-bottom factor would then
        # silently become 0 under the qbinom_top convention
        assert top >= 0, f"negative top {top} at j={j} for a={a}, lambda={lam}"
        if top < bottom:
            log.debug("factor j=%d of lambda=%s at a=%d vanishes: top %d < bottom %d",
                      j, lam, a, top, bottom)
        factors.append((top, bottom))
    return KohTerm(a, lam, shift_, tuple(factors))


def koh_terms(a: int, b: int) -> list:
    if not a >= b >= 2:
        raise UnsupportedRegimeError(f"unsupported regime: need a >= b >= 2, got a={a}, b={b}")
    return [koh_term(a, lam) for lam in iter_partitions(b)]


def expand(term: KohTerm) -> IntPolynomial:
    if term.vanishes:
        return ZERO
    polys = [qbinom_top(t, k) for t, k in term.factors if k > 0]
    # small factors first keeps the running product short
    polys.sort(key=len)
    return shift(reduce(multiply, polys, ONE), term.shift)


def koh_sum(a: int, b: int, jobs: int = 1) -> IntPolynomial:
    """Sum of all KOH terms; equals ``qbinom(a, b)``.

    Terms are expanded one at a time and folded into the running total.
    With ``jobs > 1`` expansions run on a thread pool; addition is exact,
    so the result does not depend on scheduling.
    """
    if not a >= b >= 2:
        raise UnsupportedRegimeError(f"unsupported regime: need a >= b >= 2, got a={a}, b={b}")
    terms = (koh_term(a, lam) for lam in iter_partitions(b))
    if jobs <= 1:
        return reduce(add, map(expand, terms), ZERO)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return reduce(add, pool.map(expand, terms), ZERO)


def family_partition(b: int, family: Family | str, k: int | None = None) -> Partition:
    """Partition of ``b`` singled out by a proof family.

    Raises :class:`FamilyNotApplicableError` when ``b`` has the wrong
    parity or residue, or is too small for the shape to exist.
    """
    family = Family(family)

    def need(cond: bool, why: str) -> None:
        if not cond:
            raise FamilyNotApplicableError(f"family not applicable: {family.value} {why} (b={b})")

    if family is Family.EVEN_BASE:
        need(b >= 2 and b % 2 == 0, "needs even b >= 2")
        m = b // 2
        parts = (2,) * (m - 1) + (1, 1)
    elif family is Family.ODD_BASE:
        need(b >= 3 and b % 2 == 1, "needs odd b >= 3")
        parts = (2,) * (b // 2) + (1,)
    elif family is Family.MOD3_ZERO:
        need(b >= 3 and b % 3 == 0, "needs b divisible by 3")
        parts = (b // 3,) * 3
    elif family is Family.MOD3_ONE:
        need(b >= 4 and b % 3 == 1, "needs b = 1 mod 3, b >= 4")
        parts = ((b - 1) // 3,) * 3 + (1,)
    elif family is Family.MOD3_TWO:
        need(b >= 5 and b % 3 == 2, "needs b = 2 mod 3, b >= 5")
        parts = ((b - 2) // 3,) * 3 + (1, 1)
    elif family is Family.SINGLE_ROW:
        need(b >= 1, "needs b >= 1")
        parts = (b,)
    else:
        need(k is not None and k >= 1 and b - k >= 1, f"needs 1 <= k <= b-1, got k={k}")
        parts = (b - k,) + (1,) * k
    return Partition(parts)


def koh_term_for_family(a: int, b: int, family: Family | str, k: int | None = None) -> KohTerm:
    return koh_term(a, family_partition(b, family, k))


def _linear(n: int) -> IntPolynomial:
    return qbinom_top(n, 1)


def family_closed_form(a: int, b: int, family: Family | str, k: int | None = None) -> IntPolynomial:
    """Closed form of a family's term, assembled directly from q-binomials.

    Independent of :func:`koh_term`: used to cross-check the generic
    expansion.  The odd-base form is obtained by evaluating the generic
    formula at ``(2^m, 1)`` by hand.
    """
    family = Family(family)
    family_partition(b, family, k)  # applicability
    if family is Family.EVEN_BASE:
        return shift(multiply(_linear(a * b // 2 - a - b + 3), _linear(a * b // 2 + a - b + 3)), b - 2)
    if family is Family.ODD_BASE:
        m = (b - 1) // 2
        return shift(multiply(_linear(m * a - 2 * m + 1), _linear((m + 1) * a - 2 * m + 1)), b - 1)
    if family is Family.MOD3_ZERO:
        return shift(qbinom_top((3 * a - 2 * b + 6) + b // 3, b // 3), b * (b - 3) // 3)
    if family is Family.MOD3_ONE:
        inner = qbinom_top(3 * a - 2 * b + 8 + (b - 4) // 3, (b - 4) // 3)
        return shift(multiply(inner, _linear(4 * a - 2 * b + 9)), (b - 1) * (b - 4) // 3)
    if family is Family.MOD3_TWO:
        inner = qbinom_top(3 * a - 2 * b + 10 + (b - 5) // 3, (b - 5) // 3)
        return shift(multiply(inner, _linear(5 * a - 2 * b + 11)), (b - 2) * (b - 5) // 3)
    if family is Family.SINGLE_ROW:
        return shift(qbinom_top((a - 2 * b + 2) + b, b), b * (b - 1))
    inner = qbinom_top(a - 2 * b + 2 * k + 2 + (b - k - 1), b - k - 1)
    return shift(multiply(inner, _linear((k + 1) * (a + 2) - 2 * b + 1)), (b - k) * (b - k - 1))
