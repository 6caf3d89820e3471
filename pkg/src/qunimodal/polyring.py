"""Dense polynomials with nonnegative arbitrary-precision integer coefficients.

Coefficients are stored as a tuple indexed by degree, trimmed of trailing
zeros.  Values are immutable; every operation returns a new polynomial.

Large products go through Kronecker substitution on GMP integers.  The
result is identical to schoolbook convolution, which stays available as
:func:`multiply_schoolbook` and is what the tests compare against.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import gmpy2

__all__ = [
    "IntPolynomial",
    "NegativeCoefficientError",
    "NotDivisibleError",
    "ONE",
    "ZERO",
    "add",
    "divide_one_minus_power",
    "eval_at_one",
    "exact_divide",
    "exact_divide_signed",
    "multiply",
    "multiply_schoolbook",
    "shift",
    "staircase",
]

# below this many coefficients in the shorter factor, schoolbook wins
KRONECKER_THRESHOLD = 24


class NegativeCoefficientError(ValueError):
    """A result would carry a negative coefficient."""


class NotDivisibleError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class IntPolynomial:
    """Polynomial in q with nonnegative integer coefficients.

    >>> p = IntPolynomial([1, 1, 2, 1, 1])
    >>> p.degree, p[2], p[9]
    (4, 2, 0)
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        for i, c in enumerate(cs):
            if c < 0:
                raise NegativeCoefficientError(f"coefficient of q^{i} is {c}")
        self._coeffs = tuple(cs)

    @classmethod
    def _trusted(cls, coeffs: tuple) -> IntPolynomial:
        # caller guarantees canonical, nonnegative python ints
        p = object.__new__(cls)
        p._coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int | None:
        """Highest degree with a nonzero coefficient, ``None`` for zero."""
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return add(self, other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return multiply(self, other)

    def __repr__(self) -> str:
        if len(self._coeffs) > 12:
            head = ", ".join(str(c) for c in self._coeffs[:6])
            return f"IntPolynomial([{head}, ...], degree={self.degree})"
        return f"IntPolynomial({list(self._coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict | str) -> IntPolynomial:
        if isinstance(obj, str):
            obj = json.loads(obj)
        raw = obj["coeffs"]
        if raw and str(raw[-1]) == "0":
            raise ValueError("non-canonical encoding: trailing zero")
        return cls(int(c) for c in raw)


ZERO = IntPolynomial()
ONE = IntPolynomial([1])


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return IntPolynomial._trusted(tuple(out))


def shift(p: IntPolynomial, k: int) -> IntPolynomial:
    """Multiply by ``q**k``."""
    if k < 0:
        raise ValueError("shift must be nonnegative")
    if p.is_zero() or k == 0:
        return p
    return IntPolynomial._trusted((0,) * k + p.coeffs)


def eval_at_one(p: IntPolynomial) -> int:
    return sum(p.coeffs)


def staircase(t: int) -> IntPolynomial:
    """``1 + q + ... + q^t``; zero for negative ``t``."""
    return IntPolynomial._trusted((1,) * (t + 1)) if t >= 0 else ZERO


def multiply_schoolbook(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return IntPolynomial._trusted(tuple(out))


def _slot_bytes(p: IntPolynomial, q: IntPolynomial) -> int:
    bits = (
        max(p.coeffs).bit_length()
        + max(q.coeffs).bit_length()
        + min(len(p), len(q)).bit_length()
    )
    return bits // 8 + 1


def pack(coeffs: Sequence[int], nbytes: int):
    """Evaluate at ``2**(8*nbytes)``; coefficients must fit in a slot."""
    raw = b"".join(int(c).to_bytes(nbytes, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(raw, "little"))


def unpack(value, nbytes: int, length: int) -> tuple:
    raw = int(value).to_bytes(length * nbytes, "little")
    return tuple(
        int.from_bytes(raw[i : i + nbytes], "little")
        for i in range(0, length * nbytes, nbytes)
    )


def _multiply_kronecker(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    nbytes = _slot_bytes(p, q)
    prod = pack(p.coeffs, nbytes) * pack(q.coeffs, nbytes)
    return IntPolynomial._trusted(unpack(prod, nbytes, len(p) + len(q) - 1))


def multiply(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if p.is_zero() or q.is_zero():
        return ZERO
    if len(p) == 1:
        c = p[0]
        return q if c == 1 else IntPolynomial._trusted(tuple(c * x for x in q.coeffs))
    if len(q) == 1:
        return multiply(q, p)
    if min(len(p), len(q)) < KRONECKER_THRESHOLD:
        return multiply_schoolbook(p, q)
    return _multiply_kronecker(p, q)


def _trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def divide_one_minus_power(coeffs: Sequence[int], i: int) -> list:
    """Synthetic division of a signed coefficient list by ``1 - q^i``.

    Linear time: the quotient satisfies ``r[n] = c[n] + r[n - i]``.
    """
    if i < 1:
        raise ValueError("need i >= 1")
    cs = _trim(list(coeffs))
    if not cs:
        return []
    n = len(cs) - 1 - i
    if n < 0:
        raise NotDivisibleError(f"degree {len(cs) - 1} below divisor degree {i}")
    r = [0] * (n + 1)
    for k in range(n + 1):
        r[k] = cs[k] + (r[k - i] if k >= i else 0)
    # remaining degrees must cancel exactly
    for k in range(n + 1, len(cs)):
        if cs[k] + (r[k - i] if k - i <= n else 0) != 0:
            raise NotDivisibleError(f"nonzero remainder dividing by 1 - q^{i}")
    return r


def _one_minus_power_exponent(den: list) -> int | None:
    if len(den) >= 2 and den[0] == 1 and den[-1] == -1 and not any(den[1:-1]):
        return len(den) - 1
    return None


def exact_divide_signed(num: Sequence[int], den: Sequence[int]) -> list:
    """Exact quotient of signed coefficient lists, trailing zeros trimmed.

    Raises :class:`NotDivisibleError` on a nonzero remainder.
    """
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = _trim(list(num))
    if not num:
        return []
    i = _one_minus_power_exponent(den)
    if i is not None:
        return divide_one_minus_power(num, i)
    i = _one_minus_power_exponent([-c for c in den])
    if i is not None:
        # q^i - 1 = -(1 - q^i)
        return [-c for c in divide_one_minus_power(num, i)]

    dd = len(den) - 1
    lead = den[-1]
    work = list(num)
    if len(work) - 1 < dd:
        raise NotDivisibleError("dividend degree below divisor degree")
    quot = [0] * (len(work) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c, rem = divmod(work[k + dd], lead)
        if rem:
            raise NotDivisibleError("leading coefficient does not divide")
        quot[k] = c
        if c:
            for j, dc in enumerate(den):
                work[k + j] -= c * dc
    if any(work[:dd]):
        raise NotDivisibleError("nonzero remainder")
    return _trim(quot)


def exact_divide(p, d) -> IntPolynomial:
    """Exact quotient ``p / d`` as an :class:`IntPolynomial`.

    Either argument may be an ``IntPolynomial`` or a plain list of signed
    integers (so that divisors such as ``1 - q^i`` can be written down).
    Signed values are allowed in the working buffer only; a negative
    coefficient in the quotient raises :class:`NegativeCoefficientError`.

    >>> exact_divide(IntPolynomial([1, 2, 1]), IntPolynomial([1, 1]))
    IntPolynomial([1, 1])
    >>> exact_divide([-1, 0, 0, 0, 1], [-1, 1])
    IntPolynomial([1, 1, 1, 1])
    """
    num = p.coeffs if isinstance(p, IntPolynomial) else p
    den = d.coeffs if isinstance(d, IntPolynomial) else d
    return IntPolynomial(exact_divide_signed(num, den))
