import math
from fractions import Fraction

import pytest

from totally_padic.bounds import (
    AdelicCheckReport,
    AdelicRadiusError,
    AdelicSetSpec,
    BoundSpec,
    LogSum,
    all_bounds,
    bound_value,
    brute_force_pair_sum,
    capacity_ring_of_integers,
    check_adelic_set,
    even_split_pair_sum,
    finite_degree_lower_bound,
    theorem2_log_radius,
    transfinite_diameter,
)
from totally_padic.places import LocalFieldSpec

P2 = LocalFieldSpec(2)
P3 = LocalFieldSpec(3)
P312 = LocalFieldSpec(3, 1, 2)


def test_logsum_algebra():
    a = LogSum.of(Fraction(1, 2), 2)
    b = LogSum.of(Fraction(1, 2), 2)
    assert (a + b) == LogSum.of(1, 2)
    assert (a - b).is_zero
    assert a.scale(2) == LogSum.of(1, 2)
    assert LogSum.of(1, 12) == LogSum.of(2, 2) + LogSum.of(1, 3)  # factored bases
    assert abs(LogSum.of(1, 12).value() - math.log(12)) < 1e-14
    assert LogSum.of(Fraction(1, 2), 2).decimal(10) == "0.3465735903"
    j = a.to_json()
    assert j["terms"] == [{"coeff": "1/2", "log_of": 2}]


def test_capacity_examples():
    assert capacity_ring_of_integers(P2) == LogSum.of(-1, 2)
    assert capacity_ring_of_integers(P312) == LogSum.of(Fraction(-1, 8), 3)
    assert capacity_ring_of_integers(LocalFieldSpec(2, 2, 1)) == LogSum.of(
        Fraction(-1, 2), 2
    )
    # strictly below the closed unit disc's 0
    for pl in (P2, P3, P312, LocalFieldSpec(5, 2, 3)):
        assert capacity_ring_of_integers(pl).value() < 0


def test_bound_values_ten_digits():
    assert abs(bound_value(BoundSpec((P2,), "lower_integers")).value() - 0.3465735903) < 1e-10
    assert abs(bound_value(BoundSpec((P2,), "upper")).value() - 0.6931471806) < 1e-10
    assert abs(bound_value(BoundSpec((P2,), "bz_lower_all")).value() - 0.1155245301) < 1e-10
    assert abs(bound_value(BoundSpec((P2, P3), "bz_upper")).value() - 1.2424533249) < 1e-10
    assert bound_value(BoundSpec((P2,), "conjecture")) == bound_value(BoundSpec((P2,), "upper"))


def test_factor_of_two_identity_exact():
    for places in [(P2,), (P2, P3), (P312,), (P2, LocalFieldSpec(7, 2, 3))]:
        up = bound_value(BoundSpec(places, "upper"))
        lo = bound_value(BoundSpec(places, "lower_integers"))
        assert up == lo.scale(2)


def test_bz_preconditions():
    general = LocalFieldSpec(3, 1, 1, 9, Fraction(1, 2))
    with pytest.raises(ValueError):
        bound_value(BoundSpec((general,), "bz_lower_all"))
    with pytest.raises(ValueError):
        bound_value(BoundSpec((P312,), "bz_upper"))  # needs L_p = Q_p
    out = all_bounds((P312,))
    assert out["bz_upper"] is None and out["upper"] is not None


def test_bound_spec_validation():
    with pytest.raises(ValueError):
        BoundSpec((), "upper")
    with pytest.raises(ValueError):
        BoundSpec((P2,), "nonsense")


def test_general_base_field_value():
    # a place of a quadratic base field lying over 3 with residue field F_9
    pl = LocalFieldSpec(3, 1, 1, 9, Fraction(1, 2))
    cap = capacity_ring_of_integers(pl)
    assert cap == LogSum.of(Fraction(-1, 16), 3)


# -- diameters -------------------------------------------------------------------


def test_even_split_values():
    assert even_split_pair_sum(2, 2) == 0
    assert even_split_pair_sum(3, 2) == 2
    assert even_split_pair_sum(4, 2) == 4
    assert even_split_pair_sum(8, 2) == 32
    assert even_split_pair_sum(16, 2) == 176
    assert even_split_pair_sum(1, 5) == 0
    # closed form on exact powers of 2: T(2^k) = 4^k - (k+1) 2^k
    for k in range(1, 12):
        assert even_split_pair_sum(2**k, 2) == 4**k - (k + 1) * 2**k


def test_diameter_examples():
    assert transfinite_diameter(P2, 2).coeff == 0
    assert transfinite_diameter(P2, 3).coeff == Fraction(-1, 3)
    assert transfinite_diameter(P2, 4).coeff == Fraction(-1, 3)
    assert transfinite_diameter(P2, 16).coeff == Fraction(-11, 15)
    bf = transfinite_diameter(P2, 4, method="brute_force", depth=3)
    assert bf.coeff == Fraction(-1, 3) and bf.method == "brute_force"
    j = transfinite_diameter(P2, 16).to_json()
    assert j["coeff"] == "-11/15" and j["log_of"] == 2


def test_diameter_scaling_with_place_data():
    # q = q0^f enters the splitting alphabet; N/e scale the value
    d = transfinite_diameter(P312, 9)
    assert d.prime == 3
    assert d.coeff == Fraction(-even_split_pair_sum(9, 9), 9 * 8)
    ram = transfinite_diameter(LocalFieldSpec(2, 2, 1), 4)
    assert ram.coeff == Fraction(-even_split_pair_sum(4, 2), 12) / 2


def test_formula_matches_brute_force_all_small():
    # the load-bearing oracle: even-split optimality for n <= 6, q in {2,3,4}
    for q in (2, 3, 4):
        for n in range(2, 7):
            assert brute_force_pair_sum(n, q, 3) == even_split_pair_sum(n, q), (n, q)


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_pair_sum(9, 2, 3)
    with pytest.raises(ValueError):
        brute_force_pair_sum(4, 2, 5)
    with pytest.raises(ValueError):
        brute_force_pair_sum(1, 2, 3)
    with pytest.raises(ValueError):
        transfinite_diameter(P2, 1)
    with pytest.raises(ValueError):
        transfinite_diameter(P2, 4, method="nonsense")


def test_diameter_monotone_and_convergent():
    # -log d_n nondecreasing on exact powers, strictly increasing for q = 2
    prev = Fraction(1)
    for k in range(1, 21):
        c = transfinite_diameter(P2, 2**k).coeff
        assert c <= prev
        prev = c
    # |log d_n - log capacity| <= C/n empirically with C = 14 on powers k <= 20
    cap = capacity_ring_of_integers(P2).value()
    for k in range(1, 21):
        n = 2**k
        diff = abs(transfinite_diameter(P2, n).value - cap)
        assert diff <= 14 / n
    # the exact gap at n = 2^k is k log2/(n-1): the documented obstruction
    # to any tolerance tighter than ~1.33e-5 at n = 2^20
    n = 2**20
    gap = abs(transfinite_diameter(P2, n).value - cap)
    assert abs(gap - 20 * math.log(2) / (n - 1)) < 1e-18
    assert gap > 1e-6  # does NOT reach 1e-6 at 2^20 ...
    n24 = 2**24
    assert abs(transfinite_diameter(P2, n24).value - cap) < 1e-6  # ... but does at 2^24


def test_finite_degree_lower_bound_examples():
    assert finite_degree_lower_bound(4, [P2]) == pytest.approx(-math.log(2) / 6, abs=1e-15)
    assert finite_degree_lower_bound(16, [P2]) == pytest.approx(
        0.5 * (Fraction(11, 15) * math.log(2) - math.log(16) / 15), abs=1e-12
    )
    assert finite_degree_lower_bound(16, [P2]) == pytest.approx(0.1617, abs=5e-5)


def test_finite_degree_lower_bound_below_asymptotic():
    thm1 = bound_value(BoundSpec((P2,), "lower_integers")).value()
    for n in [2, 3, 4, 8, 16, 64, 512, 2**14, 2**20]:
        assert finite_degree_lower_bound(n, [P2]) <= thm1 + 1e-15
    # approaches the asymptotic bound from below
    assert thm1 - finite_degree_lower_bound(2**20, [P2]) < 2e-5


# -- adelic set ------------------------------------------------------------------


def test_adelic_set_examples():
    rep = check_adelic_set(AdelicSetSpec(places=(P2,)))
    assert isinstance(rep, AdelicCheckReport)
    assert rep.log_capacity_product.is_zero
    assert rep.galois_stable and rep.hypothesis_ok

    spec = AdelicSetSpec(places=(P2, P3))
    assert spec.log_radius == LogSum.of(1, 2) + LogSum.of(Fraction(1, 2), 3)
    assert check_adelic_set(spec).log_capacity_product.is_zero

    rep_eps = check_adelic_set(AdelicSetSpec(places=(P2,), epsilon=0.01))
    assert rep_eps.to_json()["log_capacity_product_with_epsilon"] == pytest.approx(0.01)
    assert rep_eps.hypothesis_ok


def test_adelic_radius_mismatch():
    with pytest.raises(AdelicRadiusError, match="radius does not match"):
        AdelicSetSpec(places=(P2,), log_radius=LogSum.of(1, 3))


def test_adelic_entries_shape():
    spec = AdelicSetSpec(places=(P2, P312), epsilon=0.5)
    ent = spec.entries()
    assert len(ent["finite_in_S"]) == 2
    assert ent["archimedean"]["epsilon"] == 0.5
    assert theorem2_log_radius((P2, P312)) == spec.log_radius
