"""Decide whether a polynomial splits completely in chosen local fields.

An algebraic number has all of its conjugates inside every chosen L_v
exactly when its minimal polynomial factors into linear factors over each
L_v, so the decision reduces to root counting with multiplicity.  The
verdict is three-valued: True, False, or None ("undecided", the precision
cap was exhausted).  Undecided is never reported as False: misclassifying
would silently corrupt every empirical table built on top of this.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .counting import (
    DEFAULT_PRECISION_CAP,
    DEFAULT_START_PRECISION,
    UndecidedError,
    count_roots_in_unramified,
)
from .intpoly import IntPolynomial
from .places import LocalFieldSpec

PREC_CAP_ENV = "TOTALLY_PADIC_PREC_CAP"


class UnsupportedPlaceError(ValueError):
    """The splitting decision handles unramified extensions of completions
    of Q only; everything else is calculator-only territory."""


def precision_cap(default: int = DEFAULT_PRECISION_CAP) -> int:
    """Precision cap, overridable through the environment."""
    raw = os.environ.get(PREC_CAP_ENV)
    if raw is None:
        return default
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{PREC_CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class SplitReport:
    place: LocalFieldSpec
    roots_found: int
    degree: int
    splits: Optional[bool]  # None = undecided at the precision cap
    precision_used: int

    def to_json(self) -> dict:
        return {
            "place": self.place.to_json(),
            "roots_found": self.roots_found,
            "degree": self.degree,
            "splits": self.splits,
            "precision_used": self.precision_used,
        }


def splits_completely(
    f: IntPolynomial,
    place: LocalFieldSpec,
    *,
    start_prec: int = DEFAULT_START_PRECISION,
    prec_cap: int | None = None,
) -> SplitReport:
    """Does f factor into linear factors over the unramified extension of
    Q_p of degree place.f?  Counted with multiplicity on the squarefree
    decomposition, so reducible and non-squarefree inputs are fine."""
    if f.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if not place.decidable:
        raise UnsupportedPlaceError(
            f"unsupported place for splitting decision: {place.label()} "
            "(need e = 1 and q0 = p)"
        )
    cap = precision_cap() if prec_cap is None else prec_cap
    try:
        res = count_roots_in_unramified(
            f, place.p, place.f, start_prec=start_prec, prec_cap=cap
        )
        return SplitReport(
            place=place,
            roots_found=res.count,
            degree=f.degree,
            splits=(res.count == f.degree),
            precision_used=res.precision_used,
        )
    except UndecidedError as exc:
        return SplitReport(
            place=place,
            roots_found=-1,
            degree=f.degree,
            splits=None,
            precision_used=exc.precision,
        )


def is_totally_LS(
    f: IntPolynomial,
    places: Sequence[LocalFieldSpec],
    *,
    start_prec: int = DEFAULT_START_PRECISION,
    prec_cap: int | None = None,
) -> tuple[Optional[bool], list[SplitReport]]:
    """True iff every conjugate of every root of f lies in the chosen local
    field at each place.  Places are processed in input order; the first
    definite failure short-circuits.  An undecided place makes the overall
    verdict None (never False)."""
    if not places:
        raise ValueError("need at least one place")
    reports: list[SplitReport] = []
    saw_undecided = False
    for place in places:
        rep = splits_completely(f, place, start_prec=start_prec, prec_cap=prec_cap)
        reports.append(rep)
        if rep.splits is False:
            return False, reports
        if rep.splits is None:
            saw_undecided = True
    return (None if saw_undecided else True), reports


def discriminant_square_in_qp(disc: int, p: int) -> bool:
    """Classical criterion: a nonzero rational integer is a square in Q_p
    iff its valuation is even and the unit part is a square mod p (odd p)
    or 1 mod 8 (p = 2).  disc = 0 counts as a square.

    Independent oracle for quadratics: ax^2+bx+c splits in Q_p exactly when
    b^2-4ac is a square there.
    """
    if disc == 0:
        return True
    v = 0
    u = disc
    while u % p == 0:
        u //= p
        v += 1
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1
