"""Simultaneous root finding with certified inclusion radii.

Aberth-Ehrlich iteration from a deterministic initial configuration
(Cauchy-bound circle with a fixed angular offset).  Certification uses
the Weierstrass corrections W_i = f(z_i) / (a_n prod_{j!=i} (z_i - z_j)):
every root of f lies in the union of the discs D(z_i, n |W_i|), and when
those discs are pairwise disjoint each contains exactly one root.  The
iteration runs in hardware floats first and escalates automatically to
fixed-precision mpmath when the requested radius is out of hardware
reach; both paths are deterministic (fixed starting points, fixed
iteration order, no randomness), so repeated runs report identical
digits.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import mpmath

from .intpoly import IntPolynomial, gcd_q


class NotSquarefreeError(ValueError):
    """Simultaneous iteration needs simple roots; deflate with the exact
    squarefree part first (intpoly.squarefree_part)."""


class RootIterationError(RuntimeError):
    def __init__(self, msg: str, best_radius: float):
        super().__init__(f"{msg} (best certified radius {best_radius:.3e})")
        self.best_radius = best_radius


@dataclass(frozen=True)
class RootSet:
    """All complex roots of a squarefree integer polynomial, each within
    ``radius`` of the reported approximation."""

    roots: tuple[complex, ...]
    radius: float
    iterations: int
    residual: float  # max_i |W_i| at termination
    degree: int

    def min_separation(self) -> float:
        n = len(self.roots)
        if n < 2:
            return float("inf")
        return min(
            abs(self.roots[i] - self.roots[j])
            for i in range(n)
            for j in range(i + 1, n)
        )


_FLOAT_LIMIT = 1e-13  # below this, hardware certification is hopeless
_ANGLE_OFFSET = 0.4  # radians; avoids real-axis symmetry traps


def _initial_points(coeffs: list[float], n: int) -> list[complex]:
    an = coeffs[-1]
    r = 1.0 + max(abs(c / an) for c in coeffs[:-1]) if n > 0 else 1.0
    return [
        r * cmath.exp(2j * cmath.pi * (k + _ANGLE_OFFSET) / n) for k in range(n)
    ]


def _horner2(coeffs, z):
    """(f(z), f'(z)) in one pass."""
    p = coeffs[-1]
    dp = 0.0 * z
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _weierstrass_residual(coeffs, zs, an):
    worst = 0.0
    for i, zi in enumerate(zs):
        num = _horner2(coeffs, zi)[0]
        den = an
        for j, zj in enumerate(zs):
            if j != i:
                den *= zi - zj
        if den == 0:
            return float("inf")
        w = abs(num / den)
        if w > worst:
            worst = w
    return worst


def _aberth_float(coeffs: list[float], n: int, eps: float, maxiter: int):
    zs = _initial_points(coeffs, n)
    an = coeffs[-1]
    best = float("inf")
    stall = 0
    for it in range(1, maxiter + 1):
        converged = True
        for i in range(n):
            zi = zs[i]
            f, df = _horner2(coeffs, zi)
            if f == 0:
                continue
            ratio = f / df if df != 0 else f
            s = 0j
            for j in range(n):
                if j != i:
                    s += 1.0 / (zi - zs[j])
            denom = 1.0 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            zs[i] = zi - step
            if abs(step) > 1e-15 * (1.0 + abs(zi)):
                converged = False
        res = _weierstrass_residual(coeffs, zs, an)
        if res < best - best * 1e-3:
            best = res
            stall = 0
        else:
            stall += 1
        if n * res < eps:
            return zs, it, res
        if converged or stall >= 6:
            return zs, it, res  # caller decides whether to escalate
    return zs, maxiter, _weierstrass_residual(coeffs, zs, an)


def _aberth_mp(int_coeffs, n: int, eps: float, maxiter: int, dps: int):
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in int_coeffs]
        an = coeffs[-1]
        r = 1 + max(abs(c / an) for c in coeffs[:-1])
        zs = [
            r * mpmath.exp(2j * mpmath.pi * (k + mpmath.mpf("0.4")) / n)
            for k in range(n)
        ]
        target = mpmath.mpf(eps) / n / 4

        def wres(points):
            worst = mpmath.mpf(0)
            for i, zi in enumerate(points):
                num = mpmath.polyval(list(reversed(coeffs)), zi)
                den = an
                for j, zj in enumerate(points):
                    if j != i:
                        den *= zi - zj
                if den == 0:
                    return mpmath.inf
                w = abs(num / den)
                if w > worst:
                    worst = w
            return worst

        res = wres(zs)
        for it in range(1, maxiter + 1):
            for i in range(n):
                zi = zs[i]
                num = mpmath.polyval(list(reversed(coeffs)), zi)
                dnum = mpmath.polyval(
                    list(reversed([k * coeffs[k] for k in range(1, n + 1)])), zi
                )
                if num == 0:
                    continue
                ratio = num / dnum if dnum != 0 else num
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - zs[j])
                denom = 1 - ratio * s
                step = ratio / denom if denom != 0 else ratio
                zs[i] = zi - step
            res = wres(zs)
            if res < target:
                return zs, it, float(res)
        return zs, maxiter, float(res)


def find_roots(f: IntPolynomial, eps: float = 1e-12, maxiter: int = 120) -> RootSet:
    """All complex roots of a squarefree f, certified within eps.

    The common certified radius is n * max_i |W_i| plus the float
    round-off of the reported values; termination requires that bound to
    be below eps.  Raises RootIterationError (with the best radius
    achieved) if the iteration cap is hit even at extended precision.
    """
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    if gcd_q(f, f.derivative()).degree != 0:
        raise NotSquarefreeError(
            "polynomial has repeated roots; deflate to the squarefree part first"
        )
    n = f.degree
    if n == 1:
        a0, a1 = f.coeffs
        root = complex(-a0 / a1)
        err = abs(root) * 2.0**-50 + 1e-300
        return RootSet(roots=(root,), radius=err, iterations=0, residual=0.0, degree=1)

    fl = [float(c) for c in f.coeffs]
    zs: list[complex] | None = None
    its = 0
    res = float("inf")
    if eps >= _FLOAT_LIMIT:
        zs, its, res = _aberth_float(fl, n, eps, maxiter)
    if zs is None or n * res >= eps:
        # extended precision path, fixed decimal precision from the target
        dps = max(30, int(-mpmath.log10(eps)) + 20)
        mp_zs, mp_its, res = _aberth_mp(list(f.coeffs), n, eps, 4 * maxiter, dps)
        its += mp_its
        zs = [complex(z) for z in mp_zs]
        # downcast to hardware floats costs at most one ulp per coordinate
        res = res + max(abs(z) for z in zs) * 2.0**-52
        if n * res >= eps:
            raise RootIterationError("root iteration cap hit", n * res)
    zs_sorted = tuple(sorted(zs, key=lambda z: (z.real, z.imag)))
    return RootSet(
        roots=zs_sorted,
        radius=n * res,
        iterations=its,
        residual=res,
        degree=n,
    )
