import pytest

from totally_padic.counting import (
    RootCountResult,
    UndecidedError,
    count_roots_in_unramified,
    count_roots_squarefree,
    pairwise_root_valuation_sum,
)
from totally_padic.intpoly import IntPolynomial, discriminant, from_roots, gcd_q
from totally_padic.padic import NoRootsError, vp_int


def count(coeffs, p, fdeg=1, **kw):
    return count_roots_in_unramified(IntPolynomial(coeffs), p, fdeg, **kw).count


def test_examples():
    assert count([-17, 0, 1], 2) == 2
    assert count([1, 0, 1], 3, 1) == 0
    assert count([1, 0, 1], 3, 2) == 2
    for fdeg in (1, 2, 3, 4):
        assert count([-2, 0, 1], 2, fdeg) == 0


def test_field_not_just_integers():
    # 1/2 lies in Q_2 though not in Z_2
    assert count([-1, 2], 2) == 1
    assert count([-1, 2], 3) == 1
    # x(2x-1)(x-3) has roots 0, 1/2, 3
    f = IntPolynomial([0, 1]) * IntPolynomial([-1, 2]) * IntPolynomial([-3, 1])
    assert count(list(f.coeffs), 2) == 3


def test_multiplicity():
    f = IntPolynomial([-17, 0, 1])
    g = f * f * IntPolynomial([-1, 2])
    assert count(list(g.coeffs), 2) == 5
    assert count(list(g.coeffs), 5) == 1  # 17 is not a square mod 5


def test_zero_roots_count_everywhere():
    f = IntPolynomial([0, 0, 1]) * IntPolynomial([-2, 0, 1])  # x^2 (x^2 - 2)
    # the double zero root counts at every place; sqrt(2) exists in Q_7 only
    assert count(list(f.coeffs), 2) == 2
    assert count(list(f.coeffs), 3) == 2
    assert count(list(f.coeffs), 7) == 4


def test_errors():
    with pytest.raises(NoRootsError):
        count([5], 2)
    with pytest.raises(NoRootsError):
        count([], 3)
    with pytest.raises(ValueError):
        count([1, 1], 4)  # 4 not prime


def test_additivity_under_multiplication(rng):
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        f = IntPolynomial([rng.randint(-9, 9) for _ in range(rng.randint(1, 3))] + [1])
        g = IntPolynomial([rng.randint(-9, 9) for _ in range(rng.randint(1, 3))] + [1])
        if f.degree < 1 or g.degree < 1 or gcd_q(f, g).degree != 0:
            continue
        assert count(list((f * g).coeffs), p) == count(list(f.coeffs), p) + count(
            list(g.coeffs), p
        )


def test_monotone_in_extension_degree(rng):
    # containment Q_{p^f} <= Q_{p^(kf)} can only add roots
    for _ in range(100):
        f = IntPolynomial([rng.randint(-9, 9) for _ in range(3)] + [1])
        if f.degree != 3:
            continue
        p = rng.choice([2, 3, 5])
        c1 = count(list(f.coeffs), p, 1)
        c2 = count(list(f.coeffs), p, 2)
        c4 = count(list(f.coeffs), p, 4)
        c3 = count(list(f.coeffs), p, 3)
        assert c1 <= c2 <= c4 <= f.degree
        assert c1 <= c3 <= f.degree


def test_count_bounded_by_degree(rng):
    for _ in range(80):
        coeffs = [rng.randint(-20, 20) for _ in range(rng.randint(2, 5))] + [1]
        f = IntPolynomial(coeffs)
        if f.degree < 1:
            continue
        assert count(coeffs, 2) <= f.degree


def test_budget_doubling_and_undecided():
    # roots 1 and 1 + 2^45 agree to depth 45: the default 32 budget must
    # double (to 64) rather than answer wrongly; a hard cap of 40 must
    # surface an explicit undecided, never a count
    f = from_roots([1, 1 + 2**45])
    res = count_roots_in_unramified(f, 2)
    assert res.count == 2
    assert res.precision_used == 64
    with pytest.raises(UndecidedError) as exc:
        count_roots_in_unramified(f, 2, prec_cap=40)
    assert exc.value.precision == 40
    assert "undecided at precision 40" in str(exc.value)


def test_squarefree_fast_path_matches():
    for coeffs in [(-17, 0, 1), (1, 0, 1), (-1, 2), (2, -1, 1), (-4, -1, -4, 1)]:
        f = IntPolynomial(list(coeffs))
        for p in (2, 3):
            a = count_roots_in_unramified(f, p)
            b = count_roots_squarefree(f, p)
            assert (a.count, a.precision_used) == (b.count, b.precision_used)


# -- pairwise valuation sums ----------------------------------------------------


def test_pairwise_sum_example():
    assert pairwise_root_valuation_sum(IntPolynomial([-17, 0, 1]), 2) == 2


def test_pairwise_sum_from_integer_roots(rng):
    # split products of linear factors: the tree must reproduce both the
    # direct pair sum and the discriminant valuation
    for _ in range(40):
        roots = rng.sample([1, 2, 3, 4, 5, 7, 9, 12, 16, -1, -3, -8, 27], k=rng.randint(2, 4))
        f = from_roots(roots)
        for p in (2, 3):
            got = pairwise_root_valuation_sum(f, p)
            direct = sum(
                vp_int(a - b, p) for a in roots for b in roots if a != b
            )
            assert got == direct == vp_int(discriminant(f), p)


def test_pairwise_sum_with_zero_root():
    f = from_roots([0, 2])
    assert pairwise_root_valuation_sum(f, 2) == 2 == vp_int(discriminant(f), 2)


def test_pairwise_sum_none_when_not_split():
    assert pairwise_root_valuation_sum(IntPolynomial([-2, 0, 1]), 2) is None
    assert pairwise_root_valuation_sum(IntPolynomial([1, 0, 1]), 3) is None


def test_pairwise_sum_preconditions():
    with pytest.raises(ValueError):
        pairwise_root_valuation_sum(IntPolynomial([-1, 2]), 2)  # not monic
    sq = IntPolynomial([1, 1]) * IntPolynomial([1, 1])
    with pytest.raises(ValueError):
        pairwise_root_valuation_sum(sq, 2)  # not squarefree
