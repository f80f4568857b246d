import math

import pytest

from totally_padic.intpoly import IntPolynomial
from totally_padic.roots import (
    NotSquarefreeError,
    RootIterationError,
    RootSet,
    find_roots,
)

PHI = (1 + math.sqrt(5)) / 2


def test_golden_ratio_roots():
    rs = find_roots(IntPolynomial([-1, -1, 1]), eps=1e-12)
    assert rs.radius < 1e-12
    got = sorted(z.real for z in rs.roots)
    assert abs(got[0] - (1 - PHI)) < 1e-12
    assert abs(got[1] - PHI) < 1e-12
    assert all(abs(z.imag) < 1e-12 for z in rs.roots)


def test_conjugate_pair():
    rs = find_roots(IntPolynomial([1, 0, 1]))
    assert sorted((round(z.real, 10), round(z.imag, 10)) for z in rs.roots) == [
        (0.0, -1.0),
        (0.0, 1.0),
    ]


def test_cube_root_of_two_moduli():
    rs = find_roots(IntPolynomial([-2, 0, 0, 1]))
    for z in rs.roots:
        assert abs(abs(z) - 2 ** (1 / 3)) < 1e-12


def test_linear():
    rs = find_roots(IntPolynomial([-6, 3]))
    assert rs.roots == (2 + 0j,)
    assert rs.degree == 1


def test_residual_certificate():
    # recompute the Weierstrass corrections from the reported roots
    f = IntPolynomial([3, -1, 2, -1, 0, 1])
    rs = find_roots(f, eps=1e-12)
    n = f.degree
    worst = 0.0
    for i, zi in enumerate(rs.roots):
        den = f.leading
        for j, zj in enumerate(rs.roots):
            if i != j:
                den *= zi - zj
        worst = max(worst, abs(f(zi) / den))
    assert n * worst < 1e-12
    assert rs.radius < 1e-12
    assert rs.residual <= rs.radius


def test_determinism():
    f = IntPolynomial([5, -3, 0, 2, 1])
    a = find_roots(f)
    b = find_roots(f)
    assert a.roots == b.roots and a.radius == b.radius and a.iterations == b.iterations


def test_roots_sorted():
    rs = find_roots(IntPolynomial([-1, -1, 0, 1]))
    keys = [(z.real, z.imag) for z in rs.roots]
    assert keys == sorted(keys)


def test_not_squarefree_error():
    f = IntPolynomial([1, 1]) * IntPolynomial([1, 1])
    with pytest.raises(NotSquarefreeError):
        find_roots(f)


def test_extended_precision_path():
    rs = find_roots(IntPolynomial([-1, -1, 1]), eps=5e-14)
    assert rs.radius < 5e-14


def test_unreachable_eps_raises():
    with pytest.raises(RootIterationError) as exc:
        find_roots(IntPolynomial([-1, -1, 1]), eps=1e-300)
    assert exc.value.best_radius > 0


def test_min_separation():
    rs = find_roots(IntPolynomial([1, 0, 1]))
    assert abs(rs.min_separation() - 2.0) < 1e-12
    one = find_roots(IntPolynomial([-2, 1]))
    assert one.min_separation() == float("inf")


def test_initial_configuration_in_cauchy_bound():
    # all roots lie within 1 + max|a_i/a_n| of the origin
    f = IntPolynomial([30, -7, 2, 1])
    rs = find_roots(f)
    bound = 1 + max(abs(c / f.leading) for c in f.coeffs[:-1])
    assert all(abs(z) <= bound + 1e-9 for z in rs.roots)


def test_close_roots_certified():
    # (x - 10^6)(x - 10^6 - 1)(x + 1) scaled: clustered relative to magnitude
    big = 10**6
    f = IntPolynomial([1])
    for r in (big, big + 1, -1):
        f = f * IntPolynomial([-r, 1])
    rs = find_roots(f, eps=1e-9)
    assert rs.radius < 1e-9
    got = sorted(z.real for z in rs.roots)
    assert abs(got[1] - big) < 1e-6 and abs(got[2] - (big + 1)) < 1e-6
