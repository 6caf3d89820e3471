"""Gaussian binomial coefficients.

``qbinom(a, b)`` is the product of ``(1 - q^(a+i)) / (1 - q^i)`` for
``i = 1..b``; its coefficient of ``q^n`` counts partitions of ``n`` that fit
in a ``b x a`` box.  Two routes are provided:

* :func:`qbinom` evaluates numerator and denominator at a large power of
  two (Kronecker substitution) and performs one exact big-integer
  division.  Every coefficient of the quotient is bounded by the ordinary
  binomial ``C(a+b, b)``, which fixes the slot width.
* :func:`qbinom_oracle` counts box partitions by dynamic programming and
  never divides.
"""

from __future__ import annotations

from functools import lru_cache

import gmpy2

from .polyring import ONE, ZERO, IntPolynomial, exact_divide_signed, unpack

__all__ = [
    "qbinom",
    "qbinom_oracle",
    "qbinom_q1",
    "qbinom_synthetic",
    "qbinom_top",
]


def _check(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise ValueError(f"q-binomial parameters must be nonnegative, got ({a}, {b})")


@lru_cache(maxsize=2048)
def qbinom(a: int, b: int) -> IntPolynomial:
    """Expanded Gaussian binomial ``[a+b choose b]_q``, degree ``a*b``.

    >>> list(qbinom(2, 2))
    [1, 1, 2, 1, 1]
    """
    _check(a, b)
    if a < b:
        a, b = b, a
    if b == 0:
        return ONE
    if b == 1:
        return IntPolynomial._trusted((1,) * (a + 1))

    bound = qbinom_q1(a, b)
    nbytes = (bound.bit_length() + 1) // 8 + 1
    w = 8 * nbytes
    num = gmpy2.mpz(1)
    den = gmpy2.mpz(1)
    for i in range(1, b + 1):
        num -= num << (w * (a + i))
        den -= den << (w * i)
    quot = gmpy2.divexact(num, den)
    coeffs = unpack(quot, nbytes, a * b + 1)
    return IntPolynomial._trusted(coeffs)


def qbinom_synthetic(a: int, b: int) -> IntPolynomial:
    """Same polynomial via coefficient lists and synthetic division.

    Multiplies in one numerator factor, then divides out one denominator
    factor, so every intermediate is itself a q-binomial.  Quadratic-ish
    in Python; used as a cross-check on small and moderate sizes.
    """
    _check(a, b)
    if a < b:
        a, b = b, a
    cs = [1]
    for i in range(1, b + 1):
        k = a + i
        nxt = cs + [0] * k
        for n, c in enumerate(cs):
            nxt[n + k] -= c
        cs = exact_divide_signed(nxt, [1] + [0] * (i - 1) + [-1])
    return IntPolynomial(cs)


def qbinom_oracle(a: int, b: int) -> IntPolynomial:
    """Count partitions of each ``n`` with at most ``b`` parts, each at most ``a``.

    ``table[j][n]`` holds partitions of ``n`` into exactly ``j`` parts using
    the part sizes admitted so far; admitting size ``s`` is an unbounded
    knapsack step.
    """
    _check(a, b)
    deg = a * b
    table = [[0] * (deg + 1) for _ in range(b + 1)]
    table[0][0] = 1
    for s in range(1, a + 1):
        for j in range(1, b + 1):
            row, prev = table[j], table[j - 1]
            for n in range(s, deg + 1):
                row[n] += prev[n - s]
    return IntPolynomial(sum(col) for col in zip(*table))


def qbinom_q1(a: int, b: int) -> int:
    """Ordinary binomial ``C(a+b, b)`` by the multiplicative formula."""
    _check(a, b)
    r = 1
    for i in range(1, min(a, b) + 1):
        r = r * (max(a, b) + i) // i
    return r


def qbinom_top(n: int, k: int) -> IntPolynomial:
    """``[n choose k]_q`` in top/bottom form.

    Zero when ``k < 0``, ``n < 0`` or ``k > n``; one when ``k == 0 <= n``.
    """
    if n < 0 or k < 0 or k > n:
        return ZERO
    if k == 0:
        return ONE
    return qbinom(n - k, k)
