"""Local place data: everything a bound formula consumes about one place."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .padic import is_prime


@dataclass(frozen=True)
class LocalFieldSpec:
    """One nonarchimedean place: residue characteristic p, ramification e,
    inertial degree f of the chosen local extension, residue field order q0
    of the base completion, and the degree weight N.

    Over Q these default to e = 1, f = 1, q0 = p, N = 1; general values are
    accepted by the bound calculators only (the splitting decision requires
    an unramified extension of a completion of Q).
    """

    p: int
    e: int = 1
    f: int = 1
    q0: int | None = None
    N: Fraction = field(default_factory=lambda: Fraction(1))

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"residue characteristic {self.p} is not prime")
        if self.e < 1 or self.f < 1:
            raise ValueError("ramification and inertial degrees must be >= 1")
        if self.q0 is None:
            object.__setattr__(self, "q0", self.p)
        m, k = self.q0, 0
        while m > 1 and m % self.p == 0:
            m //= self.p
            k += 1
        if m != 1 or k < 1:
            raise ValueError(f"q0 = {self.q0} is not a power of p = {self.p}")
        N = self.N
        if not isinstance(N, Fraction):
            object.__setattr__(self, "N", Fraction(N))
            N = self.N
        if not (0 < N <= 1):
            raise ValueError("the weight N must satisfy 0 < N <= 1")

    @property
    def q(self) -> int:
        """Residue field order of the local extension: q0^f."""
        return self.q0**self.f

    @property
    def residue_power(self) -> int:
        """a with q0 = p^a."""
        a = 0
        m = self.q0
        while m % self.p == 0:
            m //= self.p
            a += 1
        return a

    @property
    def decidable(self) -> bool:
        """Whether the splitting decision procedure supports this place."""
        return self.e == 1 and self.q0 == self.p

    def label(self) -> str:
        if self.q0 == self.p and self.N == 1:
            return f"{self.p}-{self.e}-{self.f}"
        return f"{self.p}-{self.e}-{self.f}-{self.q0}-{self.N}"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "q0": self.q0,
            "N": str(self.N),
        }


def s_key(places) -> str:
    """Canonical string key for a set of places (order preserved)."""
    return "_".join(pl.label() for pl in places)
