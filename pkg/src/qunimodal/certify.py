"""Strict-unimodality certificates, exception scans and the gap-growth check.

A certificate for ``(a, b)`` is either a :class:`DirectCheck` leaf (the
polynomial is expanded and scanned) or a :class:`Coverage` node pairing

* a :class:`BaseCoverage`, which covers low degrees with the
  ``(2, ..., 2, 1, 1)`` or ``(2, ..., 2, 1)`` KOH term, and
* an :class:`InductiveStep`, which covers the remaining degrees up to
  ``floor(ab/2)`` with a KOH term whose inner q-binomial is itself
  certified by a child certificate.

Since every KOH term is symmetric and unimodal about ``ab/2``, each term is
nondecreasing below the middle; one strictly increasing term at a degree
makes the whole sum strictly increase there.

The generator (:func:`certify`) reads factor parameters off the generic
KOH descriptors.  The verifier (:func:`verify_certificate`) recomputes
every endpoint from closed-form arithmetic and shares no interval code
with the generator.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .koh import Family, KohTerm, expand, koh_term, koh_term_for_family
from .partitions import Partition
from .polyring import IntPolynomial
from .qbinomial import qbinom
from .unimodality import (
    StrictnessReport,
    first_strict_failure,
    is_strictly_unimodal_qbinom,
    lemma2_applies,
    strictness_report,
)

__all__ = [
    "BaseCoverage",
    "Certificate",
    "CertificationFailure",
    "Coverage",
    "DirectCheck",
    "GrowthReport",
    "InductiveStep",
    "Mode",
    "SideCondition",
    "VerificationResult",
    "certificate_from_json",
    "certify",
    "growth_constants",
    "scan_exceptions",
    "staircase_strict_interval",
    "verify_certificate",
    "verify_growth",
]

EXCEPTIONS = frozenset(
    [(6, 5), (10, 5), (14, 5), (6, 6), (7, 6), (9, 6), (11, 6), (13, 6), (10, 7)]
)


class Mode(str, enum.Enum):
    SYMBOLIC = "symbolic"
    NUMERIC = "numeric"
    BOTH = "both"


# ---------------------------------------------------------------- nodes


@dataclass(frozen=True)
class SideCondition:
    name: str
    holds: bool

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds}


@dataclass(frozen=True)
class DirectCheck:
    a: int
    b: int

    def to_json(self) -> dict:
        return {"type": "direct", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class BaseCoverage:
    a: int
    b: int
    parity: str
    ambient: tuple
    partition: Partition
    term_interval: tuple
    combined: tuple

    def to_json(self) -> dict:
        return {
            "type": "base",
            "a": self.a,
            "b": self.b,
            "parity": self.parity,
            "ambient_interval": list(self.ambient),
            "partition": list(self.partition.parts),
            "term_interval": list(self.term_interval),
            "combined_interval": list(self.combined),
        }


@dataclass(frozen=True)
class InductiveStep:
    a: int
    b: int
    family: Family
    partition: Partition
    shift: int
    child: "Certificate"
    claimed: tuple
    linear_factor: int | None = None
    lemma2: tuple | None = None
    side_conditions: tuple = ()

    def to_json(self) -> dict:
        return {
            "type": "step",
            "a": self.a,
            "b": self.b,
            "family": self.family.value,
            "partition": list(self.partition.parts),
            "shift": self.shift,
            "linear_factor": self.linear_factor,
            "lemma2": list(self.lemma2) if self.lemma2 else None,
            "claimed_interval": list(self.claimed),
            "side_conditions": [c.to_json() for c in self.side_conditions],
            "child": self.child.to_json(),
        }


@dataclass(frozen=True)
class Coverage:
    base: BaseCoverage
    step: InductiveStep

    def to_json(self) -> dict:
        return {"type": "cover", "base": self.base.to_json(), "step": self.step.to_json()}


CertNode = Union[DirectCheck, Coverage]


@dataclass(frozen=True)
class Certificate:
    a: int
    b: int
    root: CertNode

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "root": self.root.to_json()}

    def depth(self) -> int:
        if isinstance(self.root, DirectCheck):
            return 1
        return 1 + self.root.step.child.depth()

    def chain(self) -> list:
        """``(a, b, node kind)`` from the root down to the leaf."""
        out, cert = [], self
        while True:
            if isinstance(cert.root, DirectCheck):
                out.append((cert.a, cert.b, "direct"))
                return out
            out.append((cert.a, cert.b, cert.root.step.family.value))
            cert = cert.root.step.child


@dataclass(frozen=True)
class CertificationFailure:
    a: int
    b: int
    witness: int
    reason: str = "not strictly unimodal"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "failure": self.reason, "witness": self.witness}


def _interval(obj) -> tuple:
    return (int(obj[0]), int(obj[1]))


def certificate_from_json(obj: dict) -> Certificate:
    root = obj["root"]
    if root["type"] == "direct":
        node = DirectCheck(root["a"], root["b"])
    elif root["type"] == "cover":
        bj, sj = root["base"], root["step"]
        base = BaseCoverage(
            bj["a"], bj["b"], bj["parity"], _interval(bj["ambient_interval"]),
            Partition(tuple(bj["partition"])), _interval(bj["term_interval"]),
            _interval(bj["combined_interval"]),
        )
        step = InductiveStep(
            sj["a"], sj["b"], Family(sj["family"]), Partition(tuple(sj["partition"])),
            sj["shift"], certificate_from_json(sj["child"]), _interval(sj["claimed_interval"]),
            sj["linear_factor"], tuple(sj["lemma2"]) if sj["lemma2"] else None,
            tuple(SideCondition(c["name"], c["holds"]) for c in sj["side_conditions"]),
        )
        node = Coverage(base, step)
    else:
        raise ValueError(f"unknown node type {root['type']!r}")
    return Certificate(obj["a"], obj["b"], node)


# ------------------------------------------------------------ generator


def staircase_strict_interval(shift: int, s1: int, s2: int) -> tuple:
    """Degrees into which ``q^shift (1+...+q^s1)(1+...+q^s2)`` strictly increases.

    The product's coefficients climb by one from degree ``shift`` until
    the shorter staircase runs out.  An empty interval has ``lo > hi``.
    """
    if s1 < 0 or s2 < 0:
        raise ValueError("staircase lengths must be nonnegative")
    return (shift + 1, shift + min(s1, s2))


def _nontrivial(term: KohTerm) -> list:
    return [(t, k) for t, k in term.factors if k > 0]


def _base(a: int, b: int) -> BaseCoverage:
    fam = Family.EVEN_BASE if b % 2 == 0 else Family.ODD_BASE
    term = koh_term_for_family(a, b, fam)
    stairs = [t - 1 for t, k in _nontrivial(term)]
    stairs += [0] * (2 - len(stairs))
    ti = staircase_strict_interval(term.shift, *stairs)
    # c_n = p(n) for n <= b, strictly increasing into every degree >= 2;
    # the base term starts one degree past the ambient range
    ambient = (1, term.shift)
    return BaseCoverage(a, b, "even" if b % 2 == 0 else "odd", ambient, term.lam, ti, (1, ti[1]))


def _family_for(a: int, b: int) -> Family | None:
    if b % 3 == 0 and b >= 15:
        return Family.MOD3_ZERO
    if b % 3 == 1 and b >= 19:
        return Family.MOD3_ONE
    if b % 3 == 2 and b >= 20:
        return Family.MOD3_TWO
    if 5 <= b <= 17 and b != 15 and a >= 2 * b + 13:
        return Family.SINGLE_ROW
    return None


def _step_conditions(a: int, b: int, fam: Family, shift: int, inner_a: int,
                     lemma2: tuple | None) -> tuple:
    half_gap = Fraction(a * b, 2) - a
    conds = [SideCondition(f"shift {shift} < ab/2 - a = {half_gap}", shift < half_gap),
             SideCondition(f"inner width {inner_a} >= 15", inner_a >= 15)]
    if fam is Family.SINGLE_ROW:
        conds.append(SideCondition(f"a = {a} >= 2b+13 = {2 * b + 13}", a >= 2 * b + 13))
    if fam is Family.MOD3_ONE:
        lhs = (3 * a - 2 * b + 8) * (b - 4) // 3
        rhs = (4 * a - 2 * b + 8) + 3
        conds.append(SideCondition(f"(3a-2b+8)(b-4)/3 = {lhs} >= (4a-2b+8)+3 = {rhs}", lhs >= rhs))
    if lemma2 is not None:
        conds.append(SideCondition(f"lemma2{lemma2}", lemma2_applies(*lemma2)))
    return tuple(conds)


def _step(a: int, b: int, fam: Family, depth: int, cap: int):
    term = koh_term_for_family(a, b, fam)
    inner = [(t, k) for t, k in _nontrivial(term) if k > 1]
    linear = [t for t, k in _nontrivial(term) if k == 1]
    if len(inner) != 1 or len(linear) > 1:
        return None
    top, bottom = inner[0]
    inner_a = top - bottom
    t = linear[0] - 1 if linear else None
    lemma2 = (inner_a, bottom, t) if t is not None else None
    conds = _step_conditions(a, b, fam, term.shift, inner_a, lemma2)
    if not all(c.holds for c in conds):
        return None
    ca, cb = max(inner_a, bottom), min(inner_a, bottom)
    child = _certify(ca, cb, depth + 1, cap)
    if not isinstance(child, Certificate):
        return None
    lo = term.shift + (1 if t is not None else 2)
    return InductiveStep(a, b, fam, term.lam, term.shift, child, (lo, a * b // 2),
                         t, lemma2, conds)


def _certify(a: int, b: int, depth: int, cap: int):
    if depth > cap:
        raise RecursionError(f"certificate depth exceeded {cap}")
    fam = _family_for(a, b)
    if fam is not None:
        step = _step(a, b, fam, depth, cap)
        if step is not None:
            return Certificate(a, b, Coverage(_base(a, b), step))
    report = is_strictly_unimodal_qbinom(a, b)
    if report.strict:
        return Certificate(a, b, DirectCheck(a, b))
    return CertificationFailure(a, b, report.witness)


def certify(a: int, b: int) -> Certificate | CertificationFailure:
    """Certificate of strict unimodality for ``qbinom(a, b)``, or a failure report.

    Families are tried in the order mod-3 (by residue of ``b``), then
    single-row; anything whose thresholds fail is checked directly.

    >>> certify(40, 15).chain()[:3]
    [(40, 15, 'mod-3-zero'), (96, 5, 'single-row'), (88, 5, 'single-row')]
    """
    if not a >= b >= 2:
        raise ValueError(f"certify needs a >= b >= 2, got ({a}, {b})")
    return _certify(a, b, 0, 10 * (a + b))


# ------------------------------------------------------------- verifier


@dataclass
class VerificationResult:
    ok: bool = True
    failures: list = field(default_factory=list)
    checked_nodes: int = 0

    def fail(self, path: str, condition: str) -> None:
        self.ok = False
        self.failures.append((path, condition))

    def to_json(self) -> dict:
        return {
            "verified": self.ok,
            "nodes": self.checked_nodes,
            "failures": [{"node": p, "condition": c} for p, c in self.failures],
        }


def _expected_step(a: int, b: int, fam: Family) -> dict:
    """Closed-form parameters of an inductive step, straight from the algebra."""
    if fam is Family.MOD3_ZERO:
        ok = b % 3 == 0 and b >= 15
        return dict(ok=ok, parts=(b // 3,) * 3, shift=b * (b - 3) // 3,
                    child=(3 * a - 2 * b + 6, b // 3), t=None)
    if fam is Family.MOD3_ONE:
        ok = b % 3 == 1 and b >= 19
        return dict(ok=ok, parts=((b - 1) // 3,) * 3 + (1,), shift=(b - 1) * (b - 4) // 3,
                    child=(3 * a - 2 * b + 8, (b - 4) // 3), t=4 * a - 2 * b + 8)
    if fam is Family.MOD3_TWO:
        ok = b % 3 == 2 and b >= 20
        return dict(ok=ok, parts=((b - 2) // 3,) * 3 + (1, 1), shift=(b - 2) * (b - 5) // 3,
                    child=(3 * a - 2 * b + 10, (b - 5) // 3), t=5 * a - 2 * b + 10)
    if fam is Family.SINGLE_ROW:
        ok = 5 <= b <= 17 and b != 15
        return dict(ok=ok, parts=(b,), shift=b * (b - 1), child=(a - 2 * b + 2, b), t=None)
    return dict(ok=False)


def _symbolic_base(base: BaseCoverage, a: int, b: int, path: str, res: VerificationResult):
    if (base.a, base.b) != (a, b):
        res.fail(path, f"base parameters {(base.a, base.b)} != {(a, b)}")
    even = b % 2 == 0
    if base.parity != ("even" if even else "odd"):
        res.fail(path, f"parity tag {base.parity!r} wrong for b={b}")
    if even:
        m = b // 2
        parts = (2,) * (m - 1) + (1, 1)
        term = (b - 1, a * b // 2 - a)
    else:
        m = (b - 1) // 2
        parts = (2,) * m + (1,)
        term = (b, a * (b - 1) // 2)
    if base.partition.parts != parts:
        res.fail(path, f"base partition {base.partition} is not {parts}")
    if base.term_interval != term:
        res.fail(path, f"term interval {base.term_interval} != {term}")
    lo, hi = base.ambient
    if a < b or lo < 1 or hi > b:
        res.fail(path, f"ambient interval {base.ambient} not within [1, b] (coefficients there are partition numbers)")
    if hi + 1 < term[0]:
        res.fail(path, f"gap between ambient {base.ambient} and term {term}")
    if base.combined != (1, term[1]):
        res.fail(path, f"combined interval {base.combined} != {(1, term[1])}")


def _symbolic_step(step: InductiveStep, a: int, b: int, base_hi: int, path: str,
                   res: VerificationResult):
    exp = _expected_step(a, b, step.family)
    if not exp["ok"]:
        res.fail(path, f"family {step.family.value} not applicable to b={b}")
        return
    if (step.a, step.b) != (a, b):
        res.fail(path, f"step parameters {(step.a, step.b)} != {(a, b)}")
    if step.partition.parts != exp["parts"]:
        res.fail(path, f"partition {step.partition} is not {exp['parts']}")
    s = exp["shift"]
    if step.shift != s:
        res.fail(path, f"shift {step.shift} != {s}")
    ca, cb = exp["child"]
    t = exp["t"]
    if step.linear_factor != t:
        res.fail(path, f"linear factor {step.linear_factor} != {t}")

    # recomputed side conditions
    if not 2 * s < a * b - 2 * a:
        res.fail(path, f"shift {s} < ab/2 - a fails")
    if not ca >= 15:
        res.fail(path, f"inner width {ca} >= 15 fails")
    if step.family is Family.SINGLE_ROW and not a >= 2 * b + 13:
        res.fail(path, f"a >= 2b+13 fails for a={a}, b={b}")
    if step.family is Family.MOD3_ONE and not (3 * a - 2 * b + 8) * (b - 4) // 3 >= (4 * a - 2 * b + 8) + 3:
        res.fail(path, "(3a-2b+8)(b-4)/3 >= (4a-2b+8)+3 fails")
    if t is not None:
        if step.lemma2 != (ca, cb, t):
            res.fail(path, f"lemma2 obligation {step.lemma2} != {(ca, cb, t)}")
        if not lemma2_applies(ca, cb, t):
            res.fail(path, f"lemma2_applies{(ca, cb, t)} is false")
    for cond in step.side_conditions:
        if not cond.holds:
            res.fail(path, f"recorded side condition false: {cond.name}")

    # a staircase factor makes the term strict from its first degree;
    # a bare q-binomial repeats its constant coefficient once
    claimed = (s + 1 if t is not None else s + 2, a * b // 2)
    if step.claimed != claimed:
        res.fail(path, f"claimed interval {step.claimed} != {claimed}")
    if claimed[0] > base_hi + 1:
        res.fail(path, f"gap: step starts at {claimed[0]}, base ends at {base_hi}")

    child = step.child
    norm = (max(ca, cb), min(ca, cb))
    if (child.a, child.b) != norm:
        res.fail(path, f"child {(child.a, child.b)} != {norm}")


def _covered(intervals, hi: int) -> int | None:
    """First degree in ``[1, hi]`` missed by ``intervals``."""
    marks = bytearray(hi + 2)
    for lo, up in intervals:
        for i in range(max(lo, 1), min(up, hi) + 1):
            marks[i] = 1
    for i in range(1, hi + 1):
        if not marks[i]:
            return i
    return None


def _check_term(term: IntPolynomial, interval: tuple, mid: int, path: str, what: str,
                res: VerificationResult):
    cs = term.coeffs
    lo, hi = interval
    bad = first_strict_failure(cs, lo, hi)
    if bad is not None:
        res.fail(path, f"{what}: not strictly increasing into degree {bad}")
    for i in range(1, mid + 1):
        if (cs[i] if i < len(cs) else 0) < (cs[i - 1] if i - 1 < len(cs) else 0):
            res.fail(path, f"{what}: decreases into degree {i} <= floor(ab/2)")
            break


def _verify(cert: Certificate, symbolic: bool, numeric: bool, path: str,
            res: VerificationResult):
    a, b = cert.a, cert.b
    res.checked_nodes += 1
    mid = a * b // 2
    node = cert.root
    if isinstance(node, DirectCheck):
        if (node.a, node.b) != (a, b):
            res.fail(path, f"direct check parameters {(node.a, node.b)} != {(a, b)}")
        report = is_strictly_unimodal_qbinom(a, b)
        if not report.strict:
            res.fail(path, f"direct check: coefficients fail to increase into degree {report.witness}")
        return
    if not isinstance(node, Coverage):
        res.fail(path, f"unknown node {type(node).__name__}")
        return

    base, step = node.base, node.step
    if symbolic:
        _symbolic_base(base, a, b, path + "/base", res)
        _symbolic_step(step, a, b, base.combined[1], path + "/step", res)
        gap = _covered([base.ambient, base.term_interval, step.claimed], mid)
        if gap is not None:
            res.fail(path, f"degree {gap} not covered")
    if numeric:
        ambient = qbinom(a, b)
        bad = first_strict_failure(ambient.coeffs, max(base.ambient[0], 2), base.ambient[1])
        if bad is not None:
            res.fail(path + "/base", f"ambient not strictly increasing into degree {bad}")
        _check_term(expand(koh_term(a, base.partition)), base.term_interval, mid,
                    path + "/base", "base term", res)
        _check_term(expand(koh_term(a, step.partition)), step.claimed, mid,
                    path + "/step", f"{step.family.value} term", res)
        report = strictness_report(a, b, ambient)
        if not report.strict:
            res.fail(path, f"ambient polynomial fails to increase into degree {report.witness}")
    child = step.child
    _verify(child, symbolic, numeric, f"{path}/step/child({child.a},{child.b})", res)


def verify_certificate(cert: Certificate, mode: Mode | str = Mode.BOTH) -> VerificationResult:
    """Check a certificate; failures name the node path and the broken condition.

    ``symbolic`` re-derives all endpoints and side conditions without
    expanding any ambient q-binomial (``DirectCheck`` leaves are still
    computed, being finite checks by definition).  ``numeric`` expands
    every cited KOH term and ambient polynomial.  ``both`` runs the two
    and requires both to pass.
    """
    mode = Mode(mode)
    res = VerificationResult()
    path = f"({cert.a},{cert.b})"
    if not cert.a >= cert.b >= 2:
        res.fail(path, "certificate parameters outside a >= b >= 2")
        return res
    _verify(cert, mode is not Mode.NUMERIC, mode is not Mode.SYMBOLIC, path, res)
    return res


# ---------------------------------------------------------------- scans


def _classify(pair: tuple) -> StrictnessReport:
    return is_strictly_unimodal_qbinom(*pair)


def scan_exceptions(a_max: int, b_max: int, jobs: int = 1) -> list:
    """Strictness reports for all ``2 <= b <= a <= a_max`` with ``b <= b_max``.

    Ordered by ``b`` then ``a`` whatever the number of workers.
    """
    if not a_max >= b_max >= 2:
        raise ValueError("need a_max >= b_max >= 2")
    pairs = [(a, b) for b in range(2, b_max + 1) for a in range(b, a_max + 1)]
    if jobs <= 1:
        return [_classify(p) for p in pairs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_classify, pairs, chunksize=8))


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


# --------------------------------------------------------------- growth


def growth_constants(d: int) -> tuple:
    """``(b, a0, L)`` for a target gap ``d``."""
    b = 2 * d + 4
    a0 = (d + 2) * (d + 3) + 6
    L = (b - 1) * (b - 2) + 1
    assert L == 4 * d * d + 10 * d + 7
    return b, a0, L


@dataclass
class GrowthReport:
    d: int
    b: int
    a0: int
    L: int
    a: int
    verified: bool
    failures: list
    structural: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "d": self.d, "b": self.b, "a0": self.a0, "L": self.L, "a": self.a,
            "verified": self.verified, "failures": self.failures,
            "structural": self.structural,
        }


def verify_growth(d: int, a: int | None = None) -> GrowthReport:
    """Check ``c_i - c_{i-1} >= d`` for ``L <= i <= floor(ab/2)``, ``b = 2d+4``.

    The brute-force scan decides ``verified``.  The per-``k`` entries in
    ``structural`` record the Lemma-2 side condition and inner strictness
    for each ``(b-k, 1^k)`` term, ``1 <= k <= d``.
    """
    if d < 2:
        raise ValueError("growth check needs d >= 2")
    b, a0, L = growth_constants(d)
    if a is None:
        a = a0
    if a < a0:
        raise ValueError(f"precondition a >= a0 = {a0} violated (a = {a})")
    cs = qbinom(a, b).coeffs
    mid = a * b // 2
    failures = [i for i in range(L, mid + 1) if cs[i] - cs[i - 1] < d]

    structural = []
    for k in range(1, d + 1):
        term = koh_term_for_family(a, b, Family.GROWTH, k)
        top, bottom = term.factors[0]
        lin_top, _ = term.factors[k]
        c, dd, t = top - bottom, bottom, lin_top - 1
        inner = is_strictly_unimodal_qbinom(max(c, dd), min(c, dd))
        structural.append({
            "k": k, "shift": term.shift, "lemma2": [c, dd, t],
            "lemma2_applies": lemma2_applies(c, dd, t), "inner_strict": inner.strict,
        })
    return GrowthReport(d, b, a0, L, a, not failures, failures, structural)
