"""Exact irreducibility certification for monic integer polynomials.

Fast path: irreducibility modulo one of up to three small primes proves
irreducibility over Q outright.  Full path: Kronecker factor
reconstruction — a degree-d factor g is pinned down by its values at d+1
consecutive integer sample points, each of which must divide f's value
there; every admissible divisor tuple is interpolated and test-divided.
Monic f only has monic factors up to sign, so the d-th finite difference
over consecutive points fixes the last value, and tuples violating
g(a) == g(b) (mod a - b) cannot come from an integer polynomial; both
constraints shrink the tuple space without losing completeness.  A
factor-degree pre-prune from mod-p factorization patterns often empties
the search entirely.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .gf import fp_factor_degree_pattern, fp_is_irreducible, fpreduce
from .intpoly import IntPolynomial, divides

DEGREE_CAP = 12
_CERTIFICATE_PRIMES = (2, 3, 5)
_PATTERN_PRIMES = (2, 3, 5, 7, 11, 13)


class DegreeCapError(ValueError):
    def __init__(self, degree: int):
        super().__init__(
            f"degree {degree} exceeds the exact-certification cap {DEGREE_CAP}; "
            "use external certification for larger inputs"
        )


def _signed_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    out.sort()
    return [s * d for d in out for s in (1, -1)]


@lru_cache(maxsize=None)
def _binomials(d: int) -> tuple[int, ...]:
    return tuple(math.comb(d, j) for j in range(d + 1))


def _subset_sums(pattern: tuple[int, ...]) -> frozenset[int]:
    sums = {0}
    for part in pattern:
        sums |= {s + part for s in sums}
    return frozenset(sums)


def _interpolate_int(xs: list[int], ys: list[int]) -> IntPolynomial | None:
    """Integer polynomial through the points, or None (Newton form)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form to power basis
    poly = [Fraction(0)] * n
    acc = [Fraction(1)]  # running product (x - x_0)...(x - x_{j-1})
    for j in range(n):
        for k, c in enumerate(acc):
            poly[k] += coef[j] * c
        nxt = [Fraction(0)] * (len(acc) + 1)
        for k, c in enumerate(acc):
            nxt[k + 1] += c
            nxt[k] -= c * xs[j]
        acc = nxt
    if any(c.denominator != 1 for c in poly):
        return None
    return IntPolynomial([int(c) for c in poly])


def _kronecker_has_factor(f: IntPolynomial, d: int) -> bool:
    """Exhaustive search for a monic degree-d factor of monic f."""
    xs = [-(d // 2) + i for i in range(d + 1)]
    vals = [f(x) for x in xs]
    assert all(vals), "integer roots must be excluded before Kronecker"
    divisor_lists = [_signed_divisors(v) for v in vals[:-1]]
    binom = _binomials(d)
    dfact = math.factorial(d)

    tuple_stack: list[int] = []

    def consistent(j: int, w: int) -> bool:
        for i in range(j):
            if (w - tuple_stack[i]) % (xs[j] - xs[i]) != 0:
                return False
        return True

    def rec(j: int) -> bool:
        if j == d:
            # monic constraint: sum_j (-1)^(d-j) C(d,j) v_j = d!
            acc = dfact
            for i in range(d):
                sign = -1 if (d - i) % 2 else 1
                acc -= sign * binom[i] * tuple_stack[i]
            v_last = acc  # coefficient of v_d is +1
            if v_last == 0 or vals[d] % v_last != 0:
                return False
            if not consistent(d, v_last):
                return False
            g = _interpolate_int(xs, tuple_stack + [v_last])
            if g is None or g.degree != d or not g.is_monic:
                return False
            return divides(g, f)
        for w in divisor_lists[j]:
            if not consistent(j, w):
                continue
            tuple_stack.append(w)
            if rec(j + 1):
                return True
            tuple_stack.pop()
        return False

    return rec(0)


def certify_irreducible(f: IntPolynomial, *, degree_cap: int = DEGREE_CAP) -> bool:
    """Exact decision of irreducibility over Q for monic f, deg <= cap."""
    if f.degree < 1:
        raise ValueError("constant polynomials are neither")
    if not f.is_monic:
        raise ValueError("certification expects a monic polynomial")
    n = f.degree
    if n > degree_cap:
        raise DegreeCapError(n)
    if n == 1:
        return True
    if f[0] == 0:
        return False  # x divides
    # monic: every rational root is an integer dividing the constant term
    for r in _signed_divisors(f[0]):
        if f(r) == 0:
            return False
    if n <= 3:
        return True  # no linear factor is enough for degrees 2 and 3

    for p in _CERTIFICATE_PRIMES:
        if fp_is_irreducible(fpreduce(f.coeffs, p), p):
            return True

    # factor degrees must be subset-sums of every mod-p degree pattern
    allowed = set(range(2, n // 2 + 1))
    for p in _PATTERN_PRIMES:
        if not allowed:
            break
        pattern = fp_factor_degree_pattern(f.coeffs, p)
        sums = _subset_sums(pattern)
        allowed &= {d for d in allowed if d in sums}
    for d in sorted(allowed):
        if _kronecker_has_factor(f, d):
            return False
    return True
