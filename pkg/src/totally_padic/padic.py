"""p-adic valuations, Newton polygons, truncated unramified arithmetic and
Hensel lifting.

The unramified extension of Z_p of degree f is modelled as Z_p[t]/(h(t)),
where h is the fixed integer lift (coefficients in [0, p)) of the
deterministic irreducible polynomial chosen by
``gf.unramified_modulus_modp``; see ``unramified_modulus``.  An element of
that ring known to absolute precision m is a residue vector of length f
with entries in [0, p^m).  Because the extension is unramified, the
valuation of an element is the minimum of the p-adic valuations of its
coordinates, and the value group is Z.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .gf import GFq, unramified_modulus_modp
from .intpoly import IntPolynomial


class InfiniteValuationError(ArithmeticError):
    """Raised when the valuation of 0 is requested: v_p(0) = +infinity is a
    distinguished signal, not a number."""


class NotLiftableError(ArithmeticError):
    """Hensel's criterion fails at the available precision; the caller must
    refine the approximation, this does not mean 'no root'."""


class NoRootsError(ValueError):
    """Operation needs a polynomial with roots (degree >= 1)."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any input used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def vp_int(n: int, p: int) -> int:
    """v_p of a nonzero integer; no primality check (internal hot path)."""
    if n == 0:
        raise InfiniteValuationError("v_p(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero rational; |x|_p = p^(-vp(x, p))."""
    _check_prime(p)
    if isinstance(x, int):
        return vp_int(x, p)
    if isinstance(x, Fraction):
        if x == 0:
            raise InfiniteValuationError("v_p(0) is infinite")
        return vp_int(x.numerator, p) - vp_int(x.denominator, p)
    raise TypeError(f"rational expected, got {type(x).__name__}")


# -- Newton polygons ----------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of {(i, v_p(a_i)) : a_i != 0}.

    Slopes increase strictly left to right; the roots of valuation -slope
    number exactly the segment length (both sign conventions exist in the
    literature, so: root valuation = MINUS the slope here).  Factors of x
    are stripped first and reported in ``ord_at_zero``.
    """

    p: int
    vertices: tuple[tuple[int, int], ...]
    segments: tuple[Segment, ...]
    ord_at_zero: int

    @classmethod
    def of(cls, f: IntPolynomial, p: int) -> "NewtonPolygon":
        _check_prime(p)
        if f.is_zero:
            raise NoRootsError("zero polynomial")
        g, k = f.strip_zero_roots()
        if g.degree < 1:
            raise NoRootsError("constant polynomial has no roots")
        pts = [(i, vp_int(c, p)) for i, c in enumerate(g.coeffs) if c != 0]
        hull = _lower_hull(pts)
        segs = []
        for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
            segs.append(Segment(Fraction(v1 - v0, i1 - i0), i1 - i0))
        return cls(p=p, vertices=tuple(hull), segments=tuple(segs), ord_at_zero=k)

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """(valuation, multiplicity) pairs for the nonzero roots."""
        return [(-s.slope, s.length) for s in self.segments]

    def to_json(self) -> dict:
        return {
            "vertices": [[i, v] for i, v in self.vertices],
            "segments": [
                {"slope": f"{s.slope.numerator}/{s.slope.denominator}", "length": s.length}
                for s in self.segments
            ],
        }


def _lower_hull(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    # monotone chain on points already sorted by abscissa
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it turns strictly left of segment hull[-2]->pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


# -- unramified extensions ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def unramified_modulus(p: int, f: int) -> IntPolynomial:
    """The fixed monic integer lift of the degree-f defining polynomial;
    coefficients in [0, p).  Recorded in reprs so runs are reproducible."""
    _check_prime(p)
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    return IntPolynomial(list(unramified_modulus_modp(p, f)))


def _vec_val(rep: tuple[int, ...], p: int, prec: int) -> int:
    """min_i v_p(rep_i), capped at prec (a lower bound when all entries
    vanish mod p^prec)."""
    best = prec
    for c in rep:
        if c == 0:
            continue
        v = vp_int(c, p)
        if v < best:
            best = v
            if best == 0:
                return 0
    return best


def _poly_mulmod(a: list[int], b: list[int], h: tuple[int, ...], p_pow: int) -> list[int]:
    """Product in Z[t]/(h) with coefficients reduced mod p_pow; h monic."""
    f = len(h) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    # reduce by monic h
    for i in range(len(out) - 1, f - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(f):
                out[i - f + j] -= c * h[j]
    out = out[:f] + [0] * max(0, f - len(out))
    return [c % p_pow for c in out]


class PAdicElement:
    """Truncated element of the unramified extension Q_{p^f} of degree f.

    Known modulo p^prec; ``val`` is a certified lower bound on the
    valuation (min over coordinate valuations, capped at prec).  Sums and
    differences carry the minimum of the operand precisions; products gain
    the partner's valuation.  Precision never silently increases.
    """

    __slots__ = ("p", "fdeg", "prec", "rep")

    def __init__(self, p: int, fdeg: int, prec: int, rep):
        _check_prime(p)
        if fdeg < 1 or prec < 1:
            raise ValueError("need fdeg >= 1 and prec >= 1")
        self.p = p
        self.fdeg = fdeg
        self.prec = prec
        pk = p**prec
        rep = tuple(int(c) % pk for c in rep)
        if len(rep) != fdeg:
            raise ValueError("residue vector length must equal fdeg")
        self.rep = rep

    @classmethod
    def from_int(cls, n: int, p: int, prec: int, fdeg: int = 1) -> "PAdicElement":
        return cls(p, fdeg, prec, (n,) + (0,) * (fdeg - 1))

    @property
    def val(self) -> int:
        return _vec_val(self.rep, self.p, self.prec)

    @property
    def is_exactly_known_valuation(self) -> bool:
        """True when some coordinate is a unit times p^val below precision."""
        return self.val < self.prec

    def _check_compatible(self, other: "PAdicElement") -> None:
        if (self.p, self.fdeg) != (other.p, other.fdeg):
            raise ValueError("elements live in different fields")

    def __add__(self, other):
        if isinstance(other, int):
            other = PAdicElement.from_int(other, self.p, self.prec, self.fdeg)
        self._check_compatible(other)
        prec = min(self.prec, other.prec)
        pk = self.p**prec
        return PAdicElement(
            self.p, self.fdeg, prec, tuple((a + b) % pk for a, b in zip(self.rep, other.rep))
        )

    __radd__ = __add__

    def __neg__(self):
        pk = self.p**self.prec
        return PAdicElement(self.p, self.fdeg, self.prec, tuple((-a) % pk for a in self.rep))

    def __sub__(self, other):
        if isinstance(other, int):
            other = PAdicElement.from_int(other, self.p, self.prec, self.fdeg)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = PAdicElement.from_int(other, self.p, self.prec, self.fdeg)
        self._check_compatible(other)
        # absolute precision of a product: min(prec_a + val_b, prec_b + val_a)
        prec = min(self.prec + other.val, other.prec + self.val)
        prec = max(1, min(prec, self.prec + other.prec))
        h = tuple(unramified_modulus(self.p, self.fdeg).coeffs)
        rep = _poly_mulmod(list(self.rep), list(other.rep), h, self.p**prec)
        return PAdicElement(self.p, self.fdeg, prec, rep)

    __rmul__ = __mul__

    def congruent_to(self, other: "PAdicElement", k: int) -> bool:
        """Agreement modulo p^k (k must not exceed either precision)."""
        self._check_compatible(other)
        if k > min(self.prec, other.prec):
            raise ValueError("precision too low for requested congruence check")
        pk = self.p**k
        return all((a - b) % pk == 0 for a, b in zip(self.rep, other.rep))

    def unit_inverse(self) -> "PAdicElement":
        """Inverse of a unit (val = 0), to the same precision."""
        if self.val != 0:
            raise ZeroDivisionError("inverse requires a unit (valuation 0)")
        inv = _invert_unit_vec(list(self.rep), self.p, self.fdeg, self.prec)
        return PAdicElement(self.p, self.fdeg, self.prec, inv)

    def __repr__(self):
        h = unramified_modulus(self.p, self.fdeg)
        where = f"Z_{self.p}" if self.fdeg == 1 else f"Z_{self.p}[t]/({h})"
        return f"PAdicElement({list(self.rep)} in {where} mod {self.p}^{self.prec})"


def _invert_unit_vec(rep: list[int], p: int, fdeg: int, prec: int) -> list[int]:
    """Invert a unit of Z_p[t]/(h) mod p^prec: invert in the residue field,
    then Newton-double x <- x(2 - ax)."""
    h = tuple(unramified_modulus(p, fdeg).coeffs)
    ctx = GFq(p, fdeg)
    x0 = ctx.inv(tuple(c % p for c in rep))
    x = list(x0)
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        pk = p**k
        ax = _poly_mulmod(rep, x, h, pk)
        two_minus = [(-c) % pk for c in ax]
        two_minus[0] = (two_minus[0] + 2) % pk
        x = _poly_mulmod(x, two_minus, h, pk)
    return x


def _eval_poly_vec(f: IntPolynomial, rep: list[int], p: int, fdeg: int, modulus_pow: int):
    """f(a) for a in Z[t]/(h), coefficients mod p^modulus_pow."""
    h = tuple(unramified_modulus(p, fdeg).coeffs)
    pk = p**modulus_pow
    acc = [0] * fdeg
    for c in reversed(f.coeffs):
        acc = _poly_mulmod(acc, rep, h, pk)
        acc[0] = (acc[0] + c) % pk
    return acc


def hensel_lift(f: IntPolynomial, a0: PAdicElement, target_prec: int) -> PAdicElement:
    """Lift an approximate simple root of f to absolute precision target_prec.

    Requires v(f(a0)) > 2 v(f'(a0)) certified at a0's precision, with
    v(f'(a0)) exactly determined; raises NotLiftableError otherwise.  The
    result r satisfies v(f(r)) >= target_prec and r == a0 mod
    p^(v(f'(a0)) + 1); Newton doubling needs at most
    ceil(log2(target_prec)) + O(1) iterations.
    """
    if f.degree < 1:
        raise NoRootsError("need degree >= 1")
    if target_prec < 1:
        raise ValueError("target_prec must be >= 1")
    p, fdeg = a0.p, a0.fdeg

    fa = _eval_poly_vec(f, list(a0.rep), p, fdeg, a0.prec)
    fpa = _eval_poly_vec(f.derivative(), list(a0.rep), p, fdeg, a0.prec)
    vf = _vec_val(tuple(fa), p, a0.prec)
    k = _vec_val(tuple(fpa), p, a0.prec)
    if k >= a0.prec:
        raise NotLiftableError(
            f"v(f'(a0)) not determined at precision {a0.prec}; refine a0"
        )
    if vf <= 2 * k:
        raise NotLiftableError(
            f"Hensel criterion v(f(a0)) > 2 v(f'(a0)) fails at precision "
            f"{a0.prec}: {vf} <= {2 * k}"
        )

    # work precision: enough slack that the final check is honest
    M = target_prec + 2 * k + 2
    pM = p**M
    h = tuple(unramified_modulus(p, fdeg).coeffs)
    r = [c % pM for c in a0.rep]
    pk = p**k
    for _ in range(target_prec.bit_length() + 4):
        fr = _eval_poly_vec(f, r, p, fdeg, M)
        if _vec_val(tuple(fr), p, target_prec) >= target_prec:
            break
        fpr = _eval_poly_vec(f.derivative(), r, p, fdeg, M)
        # f'(r) = p^k * unit; divide out p^k exactly
        unit = [c // pk for c in fpr]
        if _vec_val(tuple(unit), p, 1) != 0:
            raise NotLiftableError("derivative valuation rose during iteration")
        inv = _invert_unit_vec(unit, p, fdeg, M)
        fr_over = [c // pk for c in fr]
        step = _poly_mulmod(fr_over, inv, h, pM)
        r = [(a - b) % pM for a, b in zip(r, step)]
    else:
        raise NotLiftableError("Newton iteration failed to reach target precision")

    result = PAdicElement(p, fdeg, target_prec, tuple(c % p**target_prec for c in r))
    kk = min(k + 1, a0.prec, target_prec)
    assert result.congruent_to(PAdicElement(p, fdeg, kk, a0.rep), kk)
    return result
