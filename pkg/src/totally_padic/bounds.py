"""Closed-form capacities, transfinite diameters and height bound constants.

All constants are finite sums of rational multiples of log p, so they are
carried symbolically (``LogSum``) end to end and only rendered to decimal
at the edges; this keeps comparisons near the conjectured value free of
float drift and makes identities like "upper bound = 2 x integer lower
bound" exact, not approximate.

Diameters come in two independent flavours: a recursion that splits n
points as evenly as possible over the residue classes at every level
(claimed optimal; validated against the oracle), and a brute-force
maximizer over residue representatives that is exhaustive for small n.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

import mpmath
import numpy as np

from .heights import factorize
from .places import LocalFieldSpec


class LogSum:
    """An exact finite sum  sum_p c_p * log(p)  with rational c_p, prime p."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        for base, c in (terms or {}).items():
            if c:
                clean[base] = clean.get(base, Fraction(0)) + Fraction(c)
        self.terms = {b: c for b, c in sorted(clean.items()) if c}

    @classmethod
    def of(cls, coeff: Fraction | int, base: int) -> "LogSum":
        """coeff * log(base); base is factored so terms stay on primes."""
        out: dict[int, Fraction] = {}
        if base <= 0:
            raise ValueError("log base must be positive")
        if base > 1:
            for p, e in factorize(base).items():
                out[p] = out.get(p, Fraction(0)) + Fraction(coeff) * e
        return cls(out)

    def __add__(self, other: "LogSum") -> "LogSum":
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, Fraction(0)) + c
        return LogSum(out)

    def __sub__(self, other: "LogSum") -> "LogSum":
        return self + other.scale(-1)

    def scale(self, k: Fraction | int) -> "LogSum":
        return LogSum({b: c * Fraction(k) for b, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LogSum) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def value(self) -> float:
        return math.fsum(float(c) * math.log(b) for b, c in self.terms.items())

    def decimal(self, digits: int = 12) -> str:
        """Decimal rendering at well over display precision."""
        with mpmath.workdps(digits + 15):
            total = mpmath.mpf(0)
            for b, c in self.terms.items():
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(b)
            return mpmath.nstr(total, digits, strip_zeros=False)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": f"{c.numerator}/{c.denominator}", "log_of": b}
                for b, c in self.terms.items()
            ],
            "value": self.value(),
            "decimal": self.decimal(),
        }

    def __repr__(self):
        if self.is_zero:
            return "LogSum(0)"
        return "LogSum(" + " + ".join(f"({c})*log {b}" for b, c in self.terms.items()) + ")"


# -- capacities and bound constants --------------------------------------------

BoundKind = Literal["lower_integers", "upper", "bz_lower_all", "bz_upper", "conjecture"]

BOUND_KINDS: tuple[str, ...] = (
    "lower_integers",
    "upper",
    "bz_lower_all",
    "bz_upper",
    "conjecture",
)


def capacity_ring_of_integers(place: LocalFieldSpec) -> LogSum:
    """Logarithmic capacity (relative to infinity) of the ring of integers
    of the local extension, in height normalization:
    -N log p / (e (q0^f - 1)).  Strictly negative: the integers sit
    strictly inside the closed unit disc, whose capacity is 0."""
    coeff = -place.N / (place.e * (place.q - 1))
    out = LogSum.of(coeff, place.p)
    assert out.value() < 0
    return out


@dataclass(frozen=True)
class BoundSpec:
    places: tuple[LocalFieldSpec, ...]
    kind: str

    def __post_init__(self):
        if not self.places:
            raise ValueError("need at least one place")
        if self.kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")


def bound_value(spec: BoundSpec) -> LogSum:
    """The bound constant for the requested kind, as an exact LogSum.

    lower_integers : (1/2) sum N log p / (e (q0^f - 1))   [integers]
    upper          :       sum N log p / (e (q0^f - 1))
    conjecture     : equal to ``upper`` (conjecturally sharp for integers)
    bz_lower_all   : (1/2) sum   log p / (e (p^f + 1))    [all numbers, base Q]
    bz_upper       :       sum   log p / (p - 1)          [L_p = Q_p, base Q]
    """
    kind = spec.kind
    total = LogSum()
    for pl in spec.places:
        if kind in ("lower_integers", "upper", "conjecture"):
            total = total + LogSum.of(pl.N / (pl.e * (pl.q - 1)), pl.p)
        elif kind == "bz_lower_all":
            if pl.N != 1 or pl.q0 != pl.p:
                raise ValueError("bz_lower_all requires base-Q places (N = 1, q0 = p)")
            total = total + LogSum.of(Fraction(1, pl.e * (pl.p**pl.f + 1)), pl.p)
        elif kind == "bz_upper":
            if pl.N != 1 or pl.q0 != pl.p or pl.e != 1 or pl.f != 1:
                raise ValueError("bz_upper requires places with L_p = Q_p over base Q")
            total = total + LogSum.of(Fraction(1, pl.p - 1), pl.p)
    if kind in ("lower_integers", "bz_lower_all"):
        total = total.scale(Fraction(1, 2))
    return total


def all_bounds(places: Sequence[LocalFieldSpec]) -> dict[str, LogSum | None]:
    """Every kind that applies to the given places (None when a kind's
    preconditions fail, e.g. Bombieri-Zannier kinds over a general base)."""
    out: dict[str, LogSum | None] = {}
    for kind in BOUND_KINDS:
        try:
            out[kind] = bound_value(BoundSpec(places=tuple(places), kind=kind))
        except ValueError:
            out[kind] = None
    return out


# -- transfinite diameters ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def even_split_pair_sum(n: int, q: int) -> int:
    """T(n, q): ordered same-class pair count accumulated by splitting n
    points as evenly as possible into q residue classes at every level.

    T(0) = T(1) = 0;  T(n) = sum_c n_c (n_c - 1) + sum_c T(n_c)  over the
    even split (n mod q classes of size ceil(n/q), the rest floor(n/q)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 1:
        return 0
    lo, r = divmod(n, q)
    total = 0
    if r:
        total += r * ((lo + 1) * lo + even_split_pair_sum(lo + 1, q))
    if lo and q - r:
        total += (q - r) * (lo * (lo - 1) + even_split_pair_sum(lo, q))
    return total


BRUTE_FORCE_MAX_N = 8
BRUTE_FORCE_MAX_DEPTH = 4


def brute_force_pair_sum(n: int, q: int, depth: int) -> int:
    """Minimum over n distinct residue representatives (depth digits over an
    alphabet of size q) of the ordered-pair sum of common-prefix lengths.

    Minimizing the summed valuations maximizes the product of pairwise
    distances, which is the diameter's supremum.  Exhaustive over
    configurations with one point pinned at 0 (the objective is
    translation invariant); deterministic; exact whenever
    depth >= ceil(log_q n), since an optimal configuration separates all
    points within that many digits.  Pair values are nonnegative, so
    partial sums give an admissible branch-and-bound cut.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n > BRUTE_FORCE_MAX_N or depth > BRUTE_FORCE_MAX_DEPTH:
        raise ValueError(
            f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, depth <= {BRUTE_FORCE_MAX_DEPTH}"
        )
    Q = q**depth
    if n > Q:
        raise ValueError("more points than representatives; increase depth")
    # pairwise common-prefix matrix, digits least significant first
    digits = np.zeros((Q, depth), dtype=np.int64)
    for x in range(Q):
        v = x
        for d in range(depth):
            digits[x, d] = v % q
            v //= q
    M = np.zeros((Q, Q), dtype=np.int64)
    for a in range(Q):
        eq = digits == digits[a]
        for b in range(Q):
            cp = 0
            while cp < depth and eq[b, cp]:
                cp += 1
            M[a, b] = cp
    np.fill_diagonal(M, 0)

    best = depth * n * n  # loose upper start
    colsum = M[0].copy()  # pair values between each candidate and the chosen set

    def rec(start: int, remaining: int, acc: int):
        nonlocal best, colsum
        if remaining == 1:
            tail = colsum[start:]
            if tail.size:
                cand = acc + int(tail.min())
                if cand < best:
                    best = cand
            return
        for x in range(start, Q - remaining + 1):
            nxt = acc + int(colsum[x])
            if nxt >= best:
                continue
            colsum += M[x]
            rec(x + 1, remaining - 1, nxt)
            colsum -= M[x]

    rec(1, n - 1, 0)
    return 2 * best  # ordered pairs


@dataclass(frozen=True)
class DiameterResult:
    """log d_n as an exact rational multiple of log p."""

    n: int
    prime: int
    coeff: Fraction
    method: str

    @property
    def value(self) -> float:
        return float(self.coeff) * math.log(self.prime)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeff": f"{self.coeff.numerator}/{self.coeff.denominator}",
            "log_of": self.prime,
            "value": self.value,
            "method": self.method,
        }


def transfinite_diameter(
    place: LocalFieldSpec,
    n: int,
    method: str = "equidistribution_formula",
    depth: int = 3,
) -> DiameterResult:
    """n-point diameter log d_n of the ring of integers at the place.

    Nonpositive, nonincreasing in n, converging to the log-capacity
    -N log p / (e (q0^f - 1)).  The formula path evaluates the even-split
    recursion; the brute-force path maximizes over representatives modulo
    the depth-th power of the maximal ideal and must agree whenever it is
    exhaustive."""
    if n < 2:
        raise ValueError("diameters need n >= 2")
    a = place.residue_power
    if method == "equidistribution_formula":
        pairs = even_split_pair_sum(n, place.q)
    elif method == "brute_force":
        pairs = brute_force_pair_sum(n, place.q, depth)
    else:
        raise ValueError(f"unknown method {method!r}")
    coeff = Fraction(-pairs, n * (n - 1)) * place.N / place.e
    return DiameterResult(n=n, prime=place.p, coeff=coeff, method=method)


def finite_degree_lower_bound(n: int, places: Sequence[LocalFieldSpec]) -> float:
    """Height lower bound for monic integral degree-n witnesses:
    (1/2) [ - sum_v log d_n(O_v) - log(n)/(n-1) ].

    Approaches the asymptotic integer lower bound from below as n grows;
    may be vacuous (negative) at small n."""
    if n < 2:
        raise ValueError("need n >= 2")
    diam = LogSum()
    for pl in places:
        d = transfinite_diameter(pl, n)
        diam = diam + LogSum.of(d.coeff, d.prime)
    return 0.5 * (-diam.value() - math.log(n) / (n - 1))


# -- the adelic set of the upper-bound construction ----------------------------


class AdelicRadiusError(ValueError):
    pass


@dataclass(frozen=True)
class AdelicSetSpec:
    """Adelic set: ring of integers at each chosen place, unit disc at the
    other finite places, and the disc of exact radius
    prod_v q_v^(N_v / (e_v (q_v^{f_v} - 1))) at infinity, optionally
    enlarged by epsilon in log units."""

    places: tuple[LocalFieldSpec, ...]
    epsilon: float = 0.0
    log_radius: LogSum = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not self.places:
            raise ValueError("need at least one place")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        expected = theorem2_log_radius(self.places)
        if self.log_radius is None:
            object.__setattr__(self, "log_radius", expected)
        elif self.log_radius != expected:
            raise AdelicRadiusError("radius does not match Theorem 2 construction")

    def entries(self) -> dict:
        return {
            "finite_in_S": [
                {"place": pl.to_json(), "set": "ring_of_integers"} for pl in self.places
            ],
            "finite_outside_S": {"set": "closed_unit_disc"},
            "archimedean": {
                "set": "disc",
                "log_radius": self.log_radius.to_json(),
                "epsilon": self.epsilon,
            },
        }


def theorem2_log_radius(places: Sequence[LocalFieldSpec]) -> LogSum:
    total = LogSum()
    for pl in places:
        total = total + LogSum.of(pl.N / (pl.e * (pl.q - 1)), pl.q0)
    return total


@dataclass(frozen=True)
class AdelicCheckReport:
    log_capacity_product: LogSum  # exact part, epsilon excluded
    epsilon: float
    galois_stable: bool
    hypothesis_ok: bool

    def to_json(self) -> dict:
        return {
            "log_capacity_product_exact": self.log_capacity_product.to_json(),
            "epsilon": self.epsilon,
            "log_capacity_product_with_epsilon": self.log_capacity_product.value()
            + self.epsilon,
            "galois_stable": self.galois_stable,
            "hypothesis_ok": self.hypothesis_ok,
        }


def check_adelic_set(spec: AdelicSetSpec) -> AdelicCheckReport:
    """Verify the hypotheses the upper-bound construction hands to the
    Fekete-Szego theorem with splitting conditions: the normalized
    capacity product is 1 (log 0) before enlargement, strictly above 1
    after, and the set is stable under local Galois action by
    construction (rings of integers and centered discs).  The existence
    statement this feeds is cited, not re-proved, here."""
    total = LogSum()
    for pl in spec.places:
        total = total + capacity_ring_of_integers(pl)
    total = total + spec.log_radius
    exact_val = 0.0 if total.is_zero else total.value()
    ok = (exact_val + spec.epsilon > 0) if spec.epsilon > 0 else (exact_val >= 0)
    return AdelicCheckReport(
        log_capacity_product=total,
        epsilon=spec.epsilon,
        galois_stable=True,
        hypothesis_ok=ok,
    )
