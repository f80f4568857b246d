"""Totally p-adic numbers: splitting decisions, certified Weil heights,
capacity bound constants, and exhaustive small-height searches."""

from .bounds import (
    AdelicSetSpec,
    BoundSpec,
    DiameterResult,
    LogSum,
    bound_value,
    capacity_ring_of_integers,
    check_adelic_set,
    finite_degree_lower_bound,
    transfinite_diameter,
)
from .counting import RootCountResult, UndecidedError, count_roots_in_unramified
from .heights import (
    HeightReport,
    discriminant_valuations,
    pairwise_g_sum,
    product_formula_defect,
    weil_height,
)
from .intpoly import IntPolynomial
from .irreducibility import certify_irreducible
from .padic import (
    InfiniteValuationError,
    NewtonPolygon,
    NotLiftableError,
    PAdicElement,
    hensel_lift,
    unramified_modulus,
    vp,
)
from .places import LocalFieldSpec
from .roots import RootSet, find_roots
from .search import SearchConfig, audit_records, run_search
from .splitting import SplitReport, is_totally_LS, splits_completely

__version__ = "0.1.0"

__all__ = [
    "AdelicSetSpec",
    "BoundSpec",
    "DiameterResult",
    "HeightReport",
    "InfiniteValuationError",
    "IntPolynomial",
    "LocalFieldSpec",
    "LogSum",
    "NewtonPolygon",
    "NotLiftableError",
    "PAdicElement",
    "RootCountResult",
    "RootSet",
    "SearchConfig",
    "SplitReport",
    "UndecidedError",
    "audit_records",
    "bound_value",
    "capacity_ring_of_integers",
    "certify_irreducible",
    "check_adelic_set",
    "count_roots_in_unramified",
    "discriminant_valuations",
    "find_roots",
    "finite_degree_lower_bound",
    "hensel_lift",
    "is_totally_LS",
    "pairwise_g_sum",
    "product_formula_defect",
    "run_search",
    "splits_completely",
    "transfinite_diameter",
    "unramified_modulus",
    "vp",
    "weil_height",
]
