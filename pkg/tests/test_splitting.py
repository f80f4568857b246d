import itertools

import pytest

from totally_padic.intpoly import IntPolynomial, from_roots
from totally_padic.places import LocalFieldSpec, s_key
from totally_padic.splitting import (
    PREC_CAP_ENV,
    SplitReport,
    UnsupportedPlaceError,
    discriminant_square_in_qp,
    is_totally_LS,
    precision_cap,
    splits_completely,
)

P2 = LocalFieldSpec(2)


def test_examples():
    assert splits_completely(IntPolynomial([-17, 0, 1]), P2).splits is True
    assert splits_completely(IntPolynomial([1, 0, 1]), LocalFieldSpec(3, 1, 2)).splits is True
    assert splits_completely(IntPolynomial([-2, 0, 1]), P2).splits is False


def test_is_totally_ls_examples():
    assert is_totally_LS(IntPolynomial([-17, 0, 1]), [P2])[0] is True
    # disc(x^2-x-1) = 5 has odd 5-adic valuation: not a square in Q_5
    assert is_totally_LS(IntPolynomial([-1, -1, 1]), [LocalFieldSpec(5)])[0] is False
    # F_7 contains the cube roots of unity (3 | 6)
    assert is_totally_LS(IntPolynomial([-1, 0, 0, 1]), [LocalFieldSpec(7)])[0] is True


def test_report_invariant():
    rep = splits_completely(IntPolynomial([-17, 0, 1]), P2)
    assert isinstance(rep, SplitReport)
    assert rep.splits == (rep.roots_found == rep.degree)
    assert rep.precision_used >= 32
    assert rep.to_json()["place"]["p"] == 2


def test_unsupported_places():
    with pytest.raises(UnsupportedPlaceError):
        splits_completely(IntPolynomial([-1, 0, 1]), LocalFieldSpec(2, e=2))
    with pytest.raises(UnsupportedPlaceError):
        splits_completely(IntPolynomial([-1, 0, 1]), LocalFieldSpec(2, q0=4, N=1))


def test_processing_order_and_short_circuit():
    # x^2 - 7 splits at 3 (28 is a square in Q_3) but not at 2 (7 != 1 mod 8):
    # places run in input order and stop at the first definite failure
    f = IntPolynomial([-7, 0, 1])
    verdict, reports = is_totally_LS(f, [LocalFieldSpec(3), P2, LocalFieldSpec(5)])
    assert verdict is False
    assert [r.place.p for r in reports] == [3, 2]
    assert reports[0].splits is True and reports[1].splits is False


def test_undecided_is_not_false():
    f = from_roots([1, 1 + 2**50])
    rep = splits_completely(f, P2, prec_cap=40)
    assert rep.splits is None
    verdict, reports = is_totally_LS(f, [P2], prec_cap=40)
    assert verdict is None
    # an undecided place must not be reported as a non-splitting one
    assert all(r.splits is not False for r in reports)


def test_verdict_false_beats_undecided():
    f = from_roots([1, 1 + 2**50])
    # fails at 7 (disc is 2^100, a unit square? check: it IS a square mod 7
    # only if 2^100 is; 2^100 = (2^50)^2 so it splits at 7!) -> use x^2-2
    g = IntPolynomial([-2, 0, 1])
    verdict, _ = is_totally_LS(g, [P2], prec_cap=40)
    assert verdict is False


def test_env_precision_cap(monkeypatch):
    monkeypatch.setenv(PREC_CAP_ENV, "128")
    assert precision_cap() == 128
    monkeypatch.setenv(PREC_CAP_ENV, "0")
    with pytest.raises(ValueError):
        precision_cap()
    monkeypatch.delenv(PREC_CAP_ENV)
    assert precision_cap() == 2048


def test_quadratic_oracle_small_sweep():
    # independent classical criterion vs the recursion, small box
    for p in (2, 3, 5, 7):
        for a, b, c in itertools.product(range(-4, 5), repeat=3):
            if a == 0:
                continue
            f = IntPolynomial([c, b, a])
            rep = splits_completely(f, LocalFieldSpec(p))
            assert rep.splits is not None
            assert rep.splits == discriminant_square_in_qp(b * b - 4 * a * c, p)


def test_oracle_disc_square_basics():
    assert discriminant_square_in_qp(0, 2)
    assert discriminant_square_in_qp(17, 2)  # 17 = 1 mod 8
    assert not discriminant_square_in_qp(5, 2)
    assert not discriminant_square_in_qp(2, 2)
    assert discriminant_square_in_qp(4, 2)
    assert discriminant_square_in_qp(-1, 5)
    assert not discriminant_square_in_qp(5, 5)


def test_galois_set_consistency(rng):
    # f, g totally split at S => f*g totally split; a failing factor sinks the product
    S = [P2, LocalFieldSpec(7)]
    f = IntPolynomial([-17, 0, 1])
    g = from_roots([3, 10])
    f_ok = is_totally_LS(f, S)[0]
    g_ok = is_totally_LS(g, S)[0]
    assert g_ok is True
    if f_ok:
        assert is_totally_LS(f * g, S)[0] is True
    bad = IntPolynomial([-2, 0, 1])
    assert is_totally_LS(bad * g, S)[0] is False


def test_degree_monotonicity_in_f(rng):
    # splitting at (p,1,f) implies splitting at (p,1,kf): corpus of 100 cubics
    checked = 0
    while checked < 100:
        f = IntPolynomial([rng.randint(-9, 9) for _ in range(3)] + [1])
        if f.degree != 3:
            continue
        checked += 1
        for p in (2, 3):
            r1 = splits_completely(f, LocalFieldSpec(p, 1, 1))
            r2 = splits_completely(f, LocalFieldSpec(p, 1, 2))
            r6 = splits_completely(f, LocalFieldSpec(p, 1, 6))
            if r1.splits:
                assert r2.splits and r6.splits
            if r2.splits:
                assert r6.splits
            assert r1.roots_found <= r2.roots_found <= r6.roots_found


def test_s_key_labels():
    assert s_key([P2, LocalFieldSpec(3, 1, 2)]) == "2-1-1_3-1-2"
    assert LocalFieldSpec(2, 2, 1, 4).label() == "2-2-1-4-1"
