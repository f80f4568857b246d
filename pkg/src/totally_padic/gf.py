"""Polynomial arithmetic over GF(p) and its small extensions GF(p^f).

Polynomials over GF(p) are tuples of ints in [0, p), ascending powers,
trailing zeros trimmed.  Elements of GF(p^f) are tuples of length f over
[0, p) reduced modulo the fixed defining polynomial returned by
``unramified_modulus_modp``: the lexicographically smallest monic
irreducible of degree f (lex order on the coefficient tuple
(c_0, ..., c_{f-1})).  That choice is deterministic, so computations in
the extension are reproducible across runs and platforms.
"""

from __future__ import annotations

import functools
from itertools import product


# -- GF(p)[x] -----------------------------------------------------------------


def fptrim(a: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def fpreduce(coeffs, p) -> tuple[int, ...]:
    return fptrim(tuple(c % p for c in coeffs))


def fpadd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return fptrim(tuple(out))


def fpmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fptrim(tuple(c % p for c in out))


def fpdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    r = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        while r and r[-1] % p == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        c = (r[-1] * inv_lead) % p
        k = len(r) - 1 - db
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] = (r[k + i] - c * bc) % p
        r.pop()
    return fptrim(tuple(q)), fptrim(tuple(r))


def fprem(a, b, p):
    return fpdivmod(a, b, p)[1]


def fpgcd(a, b, p):
    a, b = fptrim(tuple(c % p for c in a)), fptrim(tuple(c % p for c in b))
    while b:
        a, b = b, fprem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def fpderiv(a, p):
    return fptrim(tuple((i * c) % p for i, c in enumerate(a)))[1:] if len(a) > 1 else ()


def fppowmod(base, e: int, mod, p):
    """base^e modulo mod over GF(p), by square and multiply."""
    result = (1,)
    b = fprem(base, mod, p)
    while e:
        if e & 1:
            result = fprem(fpmul(result, b, p), mod, p)
        b = fprem(fpmul(b, b, p), mod, p)
        e >>= 1
    return result


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fp_is_irreducible(f, p) -> bool:
    """Irreducibility over GF(p) by the Frobenius criterion:
    x^(p^d) == x mod f and gcd(x^(p^(d/l)) - x, f) = 1 for primes l | d."""
    f = fpreduce(f, p)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    # iterated Frobenius: frob[k] = x^(p^k) mod f
    t = x
    frob = [x]
    for _ in range(d):
        t = fppowmod(t, p, f, p)
        frob.append(t)
    if frob[d] != fprem(x, f, p):
        return False
    for ell in _prime_divisors(d):
        u = frob[d // ell]
        diff = fpadd(u, tuple((-c) % p for c in x), p)
        if len(fpgcd(diff, f, p)) - 1 != 0:
            return False
    return True


def fp_factor_degree_pattern(f, p) -> tuple[int, ...]:
    """Sorted degrees (with multiplicity) of the irreducible factors of f
    over GF(p).  Handles repeated factors and the char-p derivative-zero
    case f = g(x^p) = g(x)^p."""
    f = fpreduce(f, p)
    if len(f) - 1 < 1:
        return ()
    inv = pow(f[-1], p - 2, p)
    f = tuple((c * inv) % p for c in f)
    degs: list[int] = []
    _pattern_rec(f, p, 1, degs)
    return tuple(sorted(degs))


def _pattern_rec(f, p, mult, out):
    d = len(f) - 1
    if d == 0:
        return
    df = fpderiv(f, p)
    if not df:
        # f = g(x^p), hence f = g(x)^p over GF(p)
        g = fptrim(tuple(f[i * p] for i in range(d // p + 1)))
        _pattern_rec(g, p, mult * p, out)
        return
    g = fpgcd(f, df, p)
    if len(g) - 1 > 0:
        sf = fpdivmod(f, g, p)[0]
        _pattern_rec(sf, p, mult, out)
        _pattern_rec(g, p, mult, out)
        return
    # squarefree: distinct-degree factorization
    x = (0, 1)
    t = x
    rem = f
    k = 1
    while len(rem) - 1 >= 2 * k:
        t = fppowmod(t, p, rem, p)
        diff = fpadd(t, tuple((-c) % p for c in x), p)
        gk = fpgcd(diff, rem, p)
        dk = len(gk) - 1
        if dk > 0:
            out.extend([k] * ((dk // k) * mult))
            rem = fpdivmod(rem, gk, p)[0]
            t = fprem(t, rem, p)
        k += 1
    if len(rem) - 1 > 0:
        out.extend([len(rem) - 1] * mult)


@functools.lru_cache(maxsize=None)
def unramified_modulus_modp(p: int, f: int) -> tuple[int, ...]:
    """Defining polynomial for GF(p^f): the lexicographically smallest monic
    irreducible of degree f over GF(p) (lex on (c_0, ..., c_{f-1}))."""
    if f == 1:
        return (0, 1)
    for tail in product(range(p), repeat=f):
        cand = tuple(tail) + (1,)
        if fp_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # cannot happen


# -- GF(q) = GF(p^f) elements -------------------------------------------------
#
# Elements are tuples of length f (not trimmed), entries in [0, p).


class GFq:
    """Lightweight GF(p^f) context; elements are fixed-length int tuples."""

    def __init__(self, p: int, f: int):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = unramified_modulus_modp(p, f)
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def element(self, coeffs) -> tuple[int, ...]:
        t = fpreduce(coeffs, self.p)
        t = fprem(t, self.modulus, self.p) if len(t) > self.f else t
        return tuple(t) + (0,) * (self.f - len(t))

    def elements(self):
        """All field elements in a fixed deterministic order."""
        for tup in product(range(self.p), repeat=self.f):
            yield tup

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        t = fprem(fpmul(fptrim(a), fptrim(b), self.p), self.modulus, self.p)
        return tuple(t) + (0,) * (self.f - len(t))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in GF(q)")
        t = fppowmod(fptrim(a), self.q - 2, self.modulus, self.p)
        return tuple(t) + (0,) * (self.f - len(t))

    def is_zero(self, a) -> bool:
        return not any(a)


def gfq_poly_eval(ctx: GFq, coeffs, x):
    acc = ctx.zero
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def gfq_poly_roots(ctx: GFq, coeffs) -> list[tuple[tuple[int, ...], int]]:
    """Distinct roots of a polynomial over GF(q), with multiplicities,
    found by exhaustive evaluation and synthetic deflation.

    coeffs: list of GF(q) elements, ascending, leading entry nonzero.
    Exhaustive search is fine here: q stays small in every supported use.
    """
    work = list(coeffs)
    while work and ctx.is_zero(work[-1]):
        work.pop()
    out = []
    for x in ctx.elements():
        if len(work) <= 1:
            break
        if ctx.is_zero(gfq_poly_eval(ctx, work, x)):
            mult = 0
            while True:
                # synthetic division by (X - x)
                quot = []
                acc = ctx.zero
                for c in reversed(work):
                    acc = ctx.add(ctx.mul(acc, x), c)
                    quot.append(acc)
                rem = quot.pop()
                quot.reverse()
                if not ctx.is_zero(rem):
                    break
                work = quot
                mult += 1
                if len(work) <= 1:
                    break
            out.append((x, mult))
    return out
