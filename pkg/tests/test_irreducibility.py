import itertools

import pytest

from totally_padic.intpoly import IntPolynomial, divides, from_roots
from totally_padic.irreducibility import (
    DegreeCapError,
    certify_irreducible,
    _kronecker_has_factor,
)


def test_examples():
    assert certify_irreducible(IntPolynomial([-1, -1, 1]))
    assert not certify_irreducible(IntPolynomial([4, 0, 0, 0, 1]))  # x^4 + 4
    assert certify_irreducible(IntPolynomial([-1, -1, 0, 1]))


def test_sophie_germain_factors_found_by_kronecker():
    f = IntPolynomial([4, 0, 0, 0, 1])
    assert _kronecker_has_factor(f, 2)
    g = IntPolynomial([2, -2, 1])
    h = IntPolynomial([2, 2, 1])
    assert g * h == f and divides(g, f) and divides(h, f)


def test_linear_and_small_degrees():
    assert certify_irreducible(IntPolynomial([5, 1]))
    assert not certify_irreducible(IntPolynomial([-4, 0, 1]))  # (x-2)(x+2)
    assert certify_irreducible(IntPolynomial([-2, 0, 1]))
    assert not certify_irreducible(IntPolynomial([0, 0, 1]))  # x^2
    assert not certify_irreducible(IntPolynomial([-8, 0, 0, 1]))  # root 2
    assert certify_irreducible(IntPolynomial([-4, 0, 0, 1]))  # no rational root


def test_preconditions():
    with pytest.raises(ValueError):
        certify_irreducible(IntPolynomial([1, 2]))  # not monic
    with pytest.raises(ValueError):
        certify_irreducible(IntPolynomial([3]))
    with pytest.raises(DegreeCapError):
        certify_irreducible(from_roots(range(1, 14)))


def test_known_irreducibles():
    # Eisenstein at 2
    assert certify_irreducible(IntPolynomial([-2, 0, 0, 0, 0, 0, 1]))
    # x^6 + x + 1 (irreducible mod 2: fast path)
    assert certify_irreducible(IntPolynomial([1, 1, 0, 0, 0, 0, 1]))
    # cyclotomic of degree 4
    assert certify_irreducible(IntPolynomial([1, 0, 0, 0, 1]))
    # x^6 + 1 = (x^2+1)(x^4-x^2+1)
    assert not certify_irreducible(IntPolynomial([1, 0, 0, 0, 0, 0, 1]))


def test_random_products_detected(rng):
    for _ in range(250):
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        a = IntPolynomial([rng.randint(-6, 6) for _ in range(d1)] + [1])
        b = IntPolynomial([rng.randint(-6, 6) for _ in range(d2)] + [1])
        f = a * b
        assert not certify_irreducible(f), f


def test_against_direct_factor_search(rng):
    # independent oracle for degree <= 5: any factorization has a factor of
    # degree <= 2, and a monic factor's coefficients obey |g_i| <= C(2,i) M(f)
    # with M(f) <= l2 norm (Landau); enumerate that finite box directly
    import math

    def oracle_reducible(f):
        n = f.degree
        a0 = f[0]
        if a0 == 0:
            return True
        for r in range(1, abs(a0) + 1):
            if a0 % r == 0 and (f(r) == 0 or f(-r) == 0):
                return True
        if n <= 3:
            return False
        m = math.sqrt(sum(c * c for c in f.coeffs))
        cb = int(2 * m) + 1
        c0 = int(m) + 1
        for b in range(-cb, cb + 1):
            for c in range(-c0, c0 + 1):
                g = IntPolynomial([c, b, 1])
                if divides(g, f):
                    return True
        return False

    done = 0
    while done < 150:
        d = rng.randint(2, 5)
        coeffs = [rng.randint(-7, 7) for _ in range(d)] + [1]
        if coeffs[0] == 0:
            continue
        f = IntPolynomial(coeffs)
        done += 1
        assert certify_irreducible(f) == (not oracle_reducible(f)), coeffs


def test_full_quartic_box_consistency():
    # every monic quartic with small coefficients: certificate against the
    # multiplication table of its claimed factors
    count_irr = 0
    for c in itertools.product(range(-2, 3), repeat=4):
        if c[0] == 0:
            continue
        f = IntPolynomial(list(c) + [1])
        if certify_irreducible(f):
            count_irr += 1
    assert count_irr == 350  # frozen: stable across runs
