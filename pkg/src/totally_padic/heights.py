"""Certified absolute logarithmic Weil heights and pairwise root statistics.

Everything is in natural-log units.  The height of an algebraic number
with primitive minimal polynomial f of degree n and complex roots a_i is

    h = (1/n) (log|lc(f)| + sum_i log^+ |a_i|),

the log of the Mahler measure over n.  The archimedean part comes from
certified root approximations; the finite part equals (1/n) log|lc(f)|
and is recomputed independently as a sum of exact prime contributions,
which gives the two-path consistency check used throughout the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .counting import pairwise_root_valuation_sum
from .intpoly import IntPolynomial, discriminant, gcd_q
from .padic import vp_int
from .places import LocalFieldSpec
from .roots import RootSet, find_roots

DEFAULT_H_TOLERANCE = 1e-10
DEFAULT_ROOT_EPS = 1e-12


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class HeightReport:
    """Certified Weil height with its decomposition.

    h = arch_contrib + nonarch_contrib within h_err; mahler = exp(n h).
    ``leading_factors`` holds the exact prime exponents behind the
    nonarchimedean part.
    """

    h: float
    h_err: float
    n: int
    mahler: float
    mahler_err: float
    arch_contrib: float
    nonarch_contrib: float
    leading_factors: dict[int, int]

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "error_radius": self.h_err,
            "degree": self.n,
            "mahler": self.mahler,
            "mahler_error": self.mahler_err,
            "arch_contrib": self.arch_contrib,
            "nonarch_contrib": self.nonarch_contrib,
            "leading_factors": {str(p): e for p, e in self.leading_factors.items()},
        }


def _logplus_with_error(z: complex, r: float) -> tuple[float, float]:
    m = abs(z)
    val = math.log(m) if m > 1.0 else 0.0
    hi = math.log(m + r) if m + r > 1.0 else 0.0
    lo_arg = max(m - r, 0.0)
    lo = math.log(lo_arg) if lo_arg > 1.0 else 0.0
    return val, max(hi - val, val - lo)


def weil_height(
    f: IntPolynomial,
    *,
    eps: float = DEFAULT_ROOT_EPS,
    tol: float = DEFAULT_H_TOLERANCE,
    rootset: RootSet | None = None,
) -> HeightReport:
    """Height of the algebraic number(s) defined by f.

    Interpreting the result as *the* height of one number needs f
    irreducible, which the caller certifies (see the search pipeline);
    the computation itself only needs f squarefree, and the content is
    stripped first since minimal polynomials are primitive.  Pass a
    precomputed ``rootset`` for f to skip the root iteration.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no height")
    if f.degree < 1:
        raise ValueError("constant polynomial defines no algebraic number")
    f = f.primitive()
    n = f.degree
    rs = rootset if rootset is not None else find_roots(f, eps=eps)
    if rs.degree != n:
        raise ValueError("rootset degree does not match the polynomial")

    terms = []
    errs = []
    for z in rs.roots:
        v, e = _logplus_with_error(z, rs.radius)
        terms.append(v)
        errs.append(e)
    arch = math.fsum(terms) / n
    arch_err = math.fsum(errs) / n + 8e-16

    lead = abs(f.leading)
    lead_factors = factorize(lead) if lead > 1 else {}
    # independent finite route: sum of exact prime exponents
    nonarch = math.fsum(e * math.log(p) for p, e in sorted(lead_factors.items())) / n

    # primary route: Mahler measure as a product
    mah = float(lead)
    for z in rs.roots:
        m = abs(z)
        if m > 1.0:
            mah *= m
    h = math.log(mah) / n
    h_err = arch_err + 4e-16 * n
    if h_err > tol:
        raise ArithmeticError(
            f"could not certify height to {tol}: error radius {h_err:.3e}"
        )
    mah_err = mah * math.expm1(n * h_err)
    return HeightReport(
        h=h,
        h_err=h_err,
        n=n,
        mahler=mah,
        mahler_err=mah_err,
        arch_contrib=arch,
        nonarch_contrib=nonarch,
        leading_factors=lead_factors,
    )


def height_two_paths(f: IntPolynomial, *, eps: float = DEFAULT_ROOT_EPS) -> tuple[float, float]:
    """(h via Mahler product, h via local log-sums); equal within roundoff.

    Works for any squarefree polynomial; used as a consistency oracle."""
    rep = weil_height(f, eps=eps, tol=1.0)
    return rep.h, rep.arch_contrib + rep.nonarch_contrib


# -- pairwise quantities -------------------------------------------------------


def pairwise_g_sum(roots: RootSet, n: int) -> float:
    """(1/(n(n-1))) sum over ordered pairs of
    log^+|x| + log^+|y| - log|x - y| at the archimedean place."""
    if n < 2:
        raise ValueError("need at least two roots")
    if len(roots.roots) != n:
        raise ValueError("root count does not match n")
    if roots.min_separation() <= 2 * roots.radius:
        raise ArithmeticError(
            "roots coincide within the certified radius; log distance undefined"
        )
    lp = [math.log(abs(z)) if abs(z) > 1 else 0.0 for z in roots.roots]
    terms = []
    for i in range(n):
        for j in range(n):
            if i != j:
                terms.append(lp[i] + lp[j] - math.log(abs(roots.roots[i] - roots.roots[j])))
    return math.fsum(terms) / (n * (n - 1))


def archimedean_pairwise_sum(roots: RootSet, n: int) -> float:
    """(1/(n(n-1))) sum over ordered pairs of log|x - y|."""
    if n < 2:
        raise ValueError("need at least two roots")
    if roots.min_separation() <= 2 * roots.radius:
        raise ArithmeticError("roots coincide within the certified radius")
    terms = []
    for i in range(n):
        for j in range(n):
            if i != j:
                terms.append(math.log(abs(roots.roots[i] - roots.roots[j])))
    return math.fsum(terms) / (n * (n - 1))


def baker_mahler_bound(n: int) -> float:
    """Archimedean lower bound -log(n)/(n-1) for the normalized g-sum."""
    if n < 2:
        raise ValueError("need n >= 2")
    return -math.log(n) / (n - 1)


def baker_mahler_holds(roots: RootSet, n: int, tol: float = 1e-9) -> bool:
    return pairwise_g_sum(roots, n) >= baker_mahler_bound(n) - tol


# -- finite places -------------------------------------------------------------


@dataclass(frozen=True)
class PlacePairwiseSum:
    """(1/(n(n-1))) sum over ordered root pairs of log|a_i - a_j|_p,
    as the exact rational ``coeff`` times log(prime)."""

    place: LocalFieldSpec
    prime: int
    coeff: Fraction
    method: str  # "splitting_tree" or "discriminant"

    @property
    def value(self) -> float:
        return float(self.coeff) * math.log(self.prime)

    def to_json(self) -> dict:
        return {
            "place": self.place.to_json(),
            "coeff": f"{self.coeff.numerator}/{self.coeff.denominator}",
            "log_of": self.prime,
            "value": self.value,
            "method": self.method,
        }


def discriminant_valuations(
    f: IntPolynomial, places: Sequence[LocalFieldSpec]
) -> list[PlacePairwiseSum]:
    """Per-place pairwise log-distance sums of the roots of f.

    f must be monic and squarefree (callers pass minimal polynomials of
    integers).  Where f splits completely in the place's field, the sum is
    read off the branching depths of the root-counting tree; elsewhere it
    falls back to the discriminant valuation, which the tree reproduces
    whenever both apply — that agreement is a standing cross-check.
    """
    if not f.is_monic:
        raise ValueError("integrality needed: polynomial must be monic")
    if gcd_q(f, f.derivative()).degree != 0:
        raise ValueError("polynomial must be squarefree")
    n = f.degree
    if n < 2:
        return [
            PlacePairwiseSum(place=pl, prime=pl.p, coeff=Fraction(0), method="trivial")
            for pl in places
        ]
    disc = discriminant(f)
    denom = n * (n - 1)
    out = []
    for pl in places:
        tree = None
        if pl.decidable:
            tree = pairwise_root_valuation_sum(f, pl.p, pl.f)
        if tree is not None:
            out.append(
                PlacePairwiseSum(
                    place=pl,
                    prime=pl.p,
                    coeff=Fraction(-tree, denom),
                    method="splitting_tree",
                )
            )
        else:
            out.append(
                PlacePairwiseSum(
                    place=pl,
                    prime=pl.p,
                    coeff=Fraction(-vp_int(disc, pl.p), denom),
                    method="discriminant",
                )
            )
    return out


def all_finite_pairwise_sums(f: IntPolynomial) -> dict[int, Fraction]:
    """Exact coefficients of log p for every prime with a nonzero pairwise
    sum (the primes dividing the discriminant); f monic squarefree."""
    if not f.is_monic:
        raise ValueError("integrality needed: polynomial must be monic")
    n = f.degree
    if n < 2:
        return {}
    disc = discriminant(f)
    if disc == 0:
        raise ValueError("polynomial must be squarefree")
    denom = n * (n - 1)
    return {p: Fraction(-e, denom) for p, e in sorted(factorize(disc).items())}


def product_formula_defect(f: IntPolynomial, *, eps: float = DEFAULT_ROOT_EPS) -> float:
    """Archimedean pairwise sum plus all finite pairwise sums; zero for any
    monic squarefree integer polynomial, up to the certified root error."""
    rs = find_roots(f, eps=eps)
    arch = archimedean_pairwise_sum(rs, f.degree)
    finite = math.fsum(
        float(c) * math.log(p) for p, c in all_finite_pairwise_sums(f).items()
    )
    return arch + finite


# -- roots of unity ------------------------------------------------------------


def is_root_of_unity_minpoly(f: IntPolynomial) -> bool:
    """Exact check that every root of f is a root of unity: f monic,
    f(0) != 0, and f | x^k - 1 for some k (order bound 2 deg^2 + 2 suffices
    for the degrees handled here)."""
    if f.degree < 1 or not f.is_monic or f[0] == 0:
        return False
    n = f.degree
    # iterate x^k mod f exactly (f monic, so remainders stay integral),
    # representing x^k mod f as a length-n coefficient list
    cur = [0] * n
    if n == 1:
        cur[0] = -f[0]  # x = -a0 mod (x + a0)
    else:
        cur[1] = 1
    one = [1] + [0] * (n - 1)
    for _ in range(2 * n * n + 2):
        if cur == one:
            return True
        # multiply by x modulo f
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * f[i]
    return cur == one
