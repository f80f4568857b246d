"""Integer polynomials with exact arithmetic.

Coefficients are arbitrary-precision integers stored in ascending order:
index i holds the coefficient of x^i.  The zero polynomial has an empty
coefficient tuple and degree -1.  Rational intermediates (gcd, squarefree
decomposition) use fractions.Fraction and are returned as primitive
integer polynomials; resultants use the subresultant pseudo-remainder
sequence, so everything here is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    """Dense integer polynomial, immutable and hashable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
            cs.append(c)
        object.__setattr__(self, "coeffs", _trim(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                xe = "x" if i == 1 else f"x^{i}"
                term = xe if abs(c) == 1 else f"{abs(c)}*{xe}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    # -- evaluation and calculus -----------------------------------------

    def __call__(self, x):
        """Evaluate by Horner's rule; works for int, Fraction, complex, ..."""
        acc = 0 * x  # zero of the argument's type
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def reverse(self) -> "IntPolynomial":
        """x^deg * f(1/x): coefficient sequence reversed."""
        if self.is_zero:
            return self
        return IntPolynomial(list(reversed(self.coeffs)))

    def ord_at_zero(self) -> int:
        """Multiplicity of the root 0 (number of trailing zero coefficients)."""
        if self.is_zero:
            raise ValueError("zero polynomial")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def strip_zero_roots(self) -> tuple["IntPolynomial", int]:
        k = self.ord_at_zero()
        return IntPolynomial(self.coeffs[k:]), k

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])


# -- division ---------------------------------------------------------------


def divmod_exact(f: IntPolynomial, g: IntPolynomial):
    """Quotient and remainder over Q, returned as Fraction coefficient lists."""
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in f.coeffs]
    q = [Fraction(0)] * max(0, len(r) - len(g.coeffs) + 1)
    glead = Fraction(g.leading)
    dg = g.degree
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        k = len(r) - 1 - dg
        c = r[-1] / glead
        q[k] = c
        for i, gc in enumerate(g.coeffs):
            r[k + i] -= c * gc
        r.pop()
    return q, r


def divides(g: IntPolynomial, f: IntPolynomial) -> bool:
    """True iff g divides f exactly in Q[x] with an integer quotient times f."""
    if g.is_zero:
        return f.is_zero
    q, r = divmod_exact(f, g)
    if any(r):
        return False
    return all(c.denominator == 1 for c in q)


def exact_quotient(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """f / g when the division is exact over the integers."""
    q, r = divmod_exact(f, g)
    if any(r) or any(c.denominator != 1 for c in q):
        raise ValueError("division is not exact")
    return IntPolynomial([int(c) for c in q])


# -- gcd, resultants, squarefree decomposition -------------------------------


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # plain Euclid over Q; inputs are trimmed coefficient lists
    while b:
        # remainder of a by b
        r = list(a)
        db = len(b) - 1
        lead = b[-1]
        while len(r) - 1 >= db:
            c = r[-1] / lead
            k = len(r) - 1 - db
            for i, bc in enumerate(b):
                r[k + i] -= c * bc
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return a


def gcd_q(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Monic gcd over Q, returned as a primitive integer polynomial."""
    if f.is_zero:
        return g.primitive()
    if g.is_zero:
        return f.primitive()
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    d = _frac_gcd(a, b)
    den = math.lcm(*[c.denominator for c in d])
    ints = [int(c * den) for c in d]
    return IntPolynomial(ints).primitive()


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """prem(A, B) = remainder of lc(B)^(deg A - deg B + 1) * A by B."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        if len(r) - 1 < db:
            r = [lead * c for c in r]
            continue
        top = r[-1]
        r = [lead * c for c in r[:-1]]
        k = len(r) - db
        for i in range(db):
            r[k + i] -= top * b[i]
        while r and r[-1] == 0:
            r.pop()
    return r


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) via the subresultant pseudo-remainder sequence.

    Fraction-free; quadratic in the degree with mild coefficient growth.
    Cross-checked against Sylvester/Bareiss in the test suite.
    """
    if f.is_zero or g.is_zero:
        return 0
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    if f.degree < g.degree:
        sign = -1 if (f.degree % 2 and g.degree % 2) else 1
        return sign * resultant(g, f)

    ca, cb = f.content(), g.content()
    A = [c // ca for c in f.coeffs]
    B = [c // cb for c in g.coeffs]
    t = ca ** (len(B) - 1) * cb ** (len(A) - 1)
    s = 1
    gg, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _pseudo_rem(A, B)
        if not R:
            return 0
        denom = gg * h**delta
        A, B = B, [c // denom for c in R]
        gg = A[-1]
        if delta == 1:
            h = gg
        elif delta > 1:
            h = gg**delta // h ** (delta - 1)
        if len(B) - 1 == 0:
            da = len(A) - 1
            hfin = B[0] ** da // h ** (da - 1) if da > 1 else B[0] ** da
            return s * t * hfin


def resultant_sylvester(f: IntPolynomial, g: IntPolynomial) -> int:
    """Resultant via fraction-free Bareiss elimination of the Sylvester matrix.

    O((m+n)^3); used as an independent check of the PRS route.
    """
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    mat = [[0] * size for _ in range(size)]
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        for j, c in enumerate(fc):
            mat[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(gc):
            mat[n + i][i + j] = c
    # Bareiss
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, size):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f); integer for integer f."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant requires degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val = sign * r
    q, rem = divmod(val, f.leading)
    if rem != 0:
        raise AssertionError("resultant not divisible by leading coefficient")
    return q


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """Primitive squarefree polynomial with the same roots as f."""
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    d = gcd_q(f, f.derivative())
    if d.degree == 0:
        return f.primitive()
    return exact_quotient(f, d).primitive()


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: return [(g, m)] with f = +-content * prod g^m,
    g primitive squarefree and pairwise coprime, m >= 1 increasing."""
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    fp = f.primitive()
    out: list[tuple[IntPolynomial, int]] = []
    a = gcd_q(fp, fp.derivative())
    if a.degree == 0:
        return [(fp, 1)]
    b = exact_quotient(fp, a)
    c = exact_quotient(fp.derivative(), a) - b.derivative()
    i = 1
    while b.degree > 0:
        d = gcd_q(b, c)
        if d.degree > 0:
            out.append((d.primitive(), i))
        b2 = exact_quotient(b, d) if d.degree > 0 else b
        c = (exact_quotient(c, d) if d.degree > 0 else c) - b2.derivative()
        b = b2
        i += 1
    return out


def from_roots(roots: Iterable[int]) -> IntPolynomial:
    """Monic polynomial with the given integer roots."""
    f = IntPolynomial([1])
    for r in roots:
        f = f * IntPolynomial([-r, 1])
    return f
