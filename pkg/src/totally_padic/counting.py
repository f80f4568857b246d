"""Counting roots of integer polynomials in unramified p-adic fields.

The decision procedure is a residue-root recursion: normalize away the
p-content, reduce modulo p, and for every residue root either apply
Hensel's lemma (simple root: exactly one p-adic root above it) or
substitute x <- r + p*y and recurse.  Coefficients stay exact integers
(integer vectors for extensions), so a returned count is always
correct; what is bounded is the substitution depth.  The depth budget is
the "absolute precision" of a decision: two roots agreeing modulo
p^budget cannot be told apart, and exceeding the budget raises
``UndecidedError`` rather than ever returning a wrong count.  Callers
start at ``DEFAULT_START_PRECISION`` and double up to a cap.

The same recursion, run on a monic polynomial that splits completely,
yields the exact sum over ordered root pairs of v_p(root_i - root_j):
two roots diverge at the substitution depth equal to their difference's
valuation, so the pair count accumulated along the tree is that sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import GFq, gfq_poly_roots
from .intpoly import IntPolynomial, gcd_q, squarefree_decomposition
from .padic import NoRootsError, _check_prime, unramified_modulus, vp_int

DEFAULT_START_PRECISION = 32
DEFAULT_PRECISION_CAP = 2048


class UndecidedError(Exception):
    """Decision not reachable within the precision budget.

    Never coerced to a yes/no answer; carries the budget that was
    exhausted."""

    def __init__(self, precision: int):
        super().__init__(f"undecided at precision {precision}")
        self.precision = precision


@dataclass(frozen=True)
class RootCountResult:
    count: int
    precision_used: int


# -- base field Z_p (fast integer path) ---------------------------------------


def _fp_roots_with_mult(rbar: list[int], p: int) -> list[tuple[int, int]]:
    """Distinct roots in GF(p) with multiplicities, by deflation."""
    work = [c % p for c in rbar]
    while work and work[-1] == 0:
        work.pop()
    out = []
    for r in range(p):
        if len(work) <= 1:
            break
        acc = 0
        for c in reversed(work):
            acc = (acc * r + c) % p
        if acc:
            continue
        mult = 0
        while len(work) > 1:
            quot = []
            acc = 0
            for c in reversed(work):
                acc = (acc * r + c) % p
                quot.append(acc)
            rem = quot.pop()
            if rem:
                break
            quot.reverse()
            work = quot
            mult += 1
        out.append((r, mult))
    return out


def _shift_scale_int(coeffs: list[int], r: int, p: int) -> list[int]:
    """Coefficients of f(r + p*y) from those of f, exactly."""
    b = list(coeffs)
    n = len(b) - 1
    if r:
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                b[j] += r * b[j + 1]
    pk = 1
    for k in range(1, n + 1):
        pk *= p
        b[k] *= pk
    return b


def _branch_int(coeffs: list[int], p: int, depth: int, budget: int) -> tuple[int, int]:
    """(roots in Z_p, ordered-pair valuation sum) for one branch.

    coeffs must be a squarefree branch polynomial, not identically zero.
    """
    v = min(vp_int(c, p) for c in coeffs if c)
    if v:
        pv = p**v
        coeffs = [c // pv for c in coeffs]
    rbar = [c % p for c in coeffs]
    total = 0
    pairs = 0
    for r, mult in _fp_roots_with_mult(rbar, p):
        if mult == 1:
            total += 1  # Hensel: exactly one root above a simple residue root
            continue
        if depth + 1 > budget:
            raise UndecidedError(budget)
        child = _shift_scale_int(coeffs, r, p)
        c, d = _branch_int(child, p, depth + 1, budget)
        total += c
        pairs += c * (c - 1) + d
    return total, pairs


# -- unramified extension (integer-vector path) --------------------------------


def _vec_mul_exact(a, b, h):
    """Multiply in Z[t]/(h), h monic; operands are fixed-length int tuples."""
    f = len(h) - 1
    out = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    for i in range(len(out) - 1, f - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(f):
                out[i - f + j] -= c * h[j]
    return tuple(out[:f])


def _branch_vec(coeffs, p, ctx: GFq, h, depth: int, budget: int) -> tuple[int, int]:
    """Extension-field analogue of _branch_int; coefficients are tuples."""
    v = min(vp_int(c, p) for vec in coeffs for c in vec if c)
    if v:
        pv = p**v
        coeffs = [tuple(c // pv for c in vec) for vec in coeffs]
    rbar = [tuple(c % p for c in vec) for vec in coeffs]
    total = 0
    pairs = 0
    for r, mult in gfq_poly_roots(ctx, rbar):
        if mult == 1:
            total += 1
            continue
        if depth + 1 > budget:
            raise UndecidedError(budget)
        # Taylor shift by the canonical lift of r, then y -> p*y
        b = list(coeffs)
        n = len(b) - 1
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                b[j] = tuple(x + y for x, y in zip(b[j], _vec_mul_exact(r, b[j + 1], h)))
        pk = 1
        for k in range(1, n + 1):
            pk *= p
            b[k] = tuple(c * pk for c in b[k])
        c, d = _branch_vec(b, p, ctx, h, depth + 1, budget)
        total += c
        pairs += c * (c - 1) + d
    return total, pairs


# -- field-level counting (integral and negative-valuation roots) --------------


def _count_field_squarefree(g: IntPolynomial, p: int, fdeg: int, budget: int) -> tuple[int, int]:
    """(#roots of squarefree g in Q_{p^fdeg}, ordered-pair valuation sum of
    the integral roots).  g must be squarefree with g(0) != 0 allowed; zero
    roots are handled by the caller."""
    if fdeg == 1:
        integral, pairs = _branch_int(list(g.coeffs), p, 0, budget)
        rev = list(reversed(g.coeffs))
        neg, _ = _branch_int(_shift_scale_int(rev, 0, p), p, 1, budget)
    else:
        ctx = GFq(p, fdeg)
        h = tuple(unramified_modulus(p, fdeg).coeffs)
        vecs = [(c,) + (0,) * (fdeg - 1) for c in g.coeffs]
        integral, pairs = _branch_vec(vecs, p, ctx, h, 0, budget)
        rev = list(reversed(vecs))
        pk = 1
        scaled = [rev[0]]
        for k in range(1, len(rev)):
            pk *= p
            scaled.append(tuple(c * pk for c in rev[k]))
        neg, _ = _branch_vec(scaled, p, ctx, h, 1, budget)
    return integral + neg, pairs


def count_roots_squarefree(
    f: IntPolynomial,
    p: int,
    fdeg: int = 1,
    *,
    start_prec: int = DEFAULT_START_PRECISION,
    prec_cap: int = DEFAULT_PRECISION_CAP,
) -> RootCountResult:
    """Root count for a polynomial the caller guarantees squarefree.

    Skips the squarefree decomposition, which dominates the cost on bulk
    enumeration; everything else matches count_roots_in_unramified."""
    g, k0 = f.strip_zero_roots()
    budget = start_prec
    while True:
        try:
            n = k0
            if g.degree >= 1:
                n += _count_field_squarefree(g, p, fdeg, budget)[0]
            return RootCountResult(count=n, precision_used=budget)
        except UndecidedError:
            if budget >= prec_cap:
                raise UndecidedError(prec_cap)
            budget = min(2 * budget, prec_cap)


def count_roots_in_unramified(
    f: IntPolynomial,
    p: int,
    fdeg: int = 1,
    *,
    start_prec: int = DEFAULT_START_PRECISION,
    prec_cap: int = DEFAULT_PRECISION_CAP,
) -> RootCountResult:
    """Number of roots of f in Q_{p^fdeg}, counted with multiplicity.

    Zero roots count (0 lies in every ring of integers); roots of
    negative valuation count (the field, not just its integers).  Runs
    on the squarefree decomposition, so repeated roots never trip the
    recursion; raises UndecidedError only if the precision cap is
    exhausted, never returning a wrong count.
    """
    _check_prime(p)
    if fdeg < 1:
        raise ValueError("fdeg must be >= 1")
    if f.is_zero:
        raise NoRootsError("zero polynomial")
    if f.degree < 1:
        raise NoRootsError("constant polynomial has no roots")

    parts = []
    for g, mult in squarefree_decomposition(f):
        gg, k0 = g.strip_zero_roots()
        parts.append((gg, mult, k0))

    budget = start_prec
    while True:
        try:
            total = 0
            for gg, mult, k0 in parts:
                n = k0
                if gg.degree >= 1:
                    n += _count_field_squarefree(gg, p, fdeg, budget)[0]
                total += mult * n
            return RootCountResult(count=total, precision_used=budget)
        except UndecidedError:
            if budget >= prec_cap:
                raise UndecidedError(prec_cap)
            budget = min(2 * budget, prec_cap)


def pairwise_root_valuation_sum(
    f: IntPolynomial,
    p: int,
    fdeg: int = 1,
    *,
    start_prec: int = DEFAULT_START_PRECISION,
    prec_cap: int = DEFAULT_PRECISION_CAP,
) -> int | None:
    """Sum over ordered pairs i != j of v_p(root_i - root_j), read off the
    branching depths of the counting recursion.

    Requires f monic and squarefree.  Returns None when f does not split
    completely in Q_{p^fdeg} (the tree then does not see every pair); the
    discriminant valuation is the independent cross-check either way.
    """
    _check_prime(p)
    if not f.is_monic:
        raise ValueError("pairwise valuation sums require a monic polynomial")
    if f.degree < 1:
        raise NoRootsError("constant polynomial has no roots")
    if gcd_q(f, f.derivative()).degree != 0:
        raise ValueError("pairwise valuation sums require a squarefree polynomial")
    g, k0 = f.strip_zero_roots()
    budget = start_prec
    while True:
        try:
            if g.degree == 0:
                count, pairs = 0, 0
            else:
                count, pairs = _count_field_squarefree(g, p, fdeg, budget)
            break
        except UndecidedError:
            if budget >= prec_cap:
                raise UndecidedError(prec_cap)
            budget = min(2 * budget, prec_cap)
    if count + k0 != f.degree:
        return None
    if k0:
        # pairs involving the single zero root of a squarefree polynomial:
        # v(alpha - 0) summed twice; the product of the nonzero roots is
        # +-g(0), so that sum is v_p(g(0))
        return pairs + 2 * vp_int(g.coeffs[0], p)
    return pairs
