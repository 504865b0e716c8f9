"""Upper characteristic rank tables and cup-length bounds.

The rank of a space is reported either exactly or as a closed interval,
together with the case label of the decision ladder that produced it.
Interval upper ends are capped by the manifold dimension, the only bound
guaranteed in general.  Inputs outside every ladder are reported as
"uncovered" rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameters, TopoinvError
from .gralg import CupMode, CupResult, cup_length
from .parity import IndexFamily, binom_parity, n_index
from .spaces import Family, SpaceId, dimension, presentation

__all__ = [
    "CupReport",
    "DIM_MINUS_INDEX_BOUND",
    "RankResult",
    "cup_bound_dim_minus_index",
    "cup_bound_korbas",
    "cup_bound_nt",
    "cup_report",
    "ucharrank_projective_CH",
    "ucharrank_projective_real",
    "ucharrank_stiefel",
]


@dataclass(frozen=True)
class RankResult:
    """Exact value, interval, or uncovered verdict for an upper rank."""

    kind: str  # "exact" | "interval" | "uncovered"
    case_label: str
    value: int | None = None
    lo: int | None = None
    hi: int | None = None
    n_index_used: int | None = None
    advisory: str | None = None
    reason: str | None = None

    @staticmethod
    def exact(value: int, case: str, n_index_used: int | None = None,
              advisory: str | None = None) -> "RankResult":
        return RankResult("exact", case, value=value, n_index_used=n_index_used,
                          advisory=advisory)

    @staticmethod
    def interval(lo: int, hi: int, case: str, n_index_used: int | None = None,
                 advisory: str | None = None) -> "RankResult":
        if lo > hi:
            raise InvalidParameters(f"empty interval [{lo}, {hi}]")
        return RankResult("interval", case, lo=lo, hi=hi, n_index_used=n_index_used,
                          advisory=advisory)

    @staticmethod
    def uncovered(reason: str) -> "RankResult":
        return RankResult("uncovered", "uncovered", reason=reason)


def ucharrank_stiefel(field: str, n: int, k: int) -> RankResult:
    """Upper characteristic rank of the Stiefel manifold of k-frames in F^n.

    The real table is exact except for the frame gaps 4 (with k > 2) and 8,
    which give the intervals [3, 4] and [7, 8]; the complex and quaternionic
    values are closed formulas in n - k.
    """
    field = field.upper()
    if field == "R":
        if not 1 < k < n:
            raise InvalidParameters(f"real Stiefel table needs 1 < k < n, got ({n}, {k})")
        m = n - k
        if m not in (1, 2, 4, 8):
            return RankResult.exact(m - 1, "R.generic")
        if m == 1:
            if n >= 4:
                return RankResult.exact(2, "R.gap1")
            return RankResult.uncovered("RV:3,2 lies outside the table")
        if m == 2:
            return RankResult.exact(2, "R.gap2")
        if m == 4:
            if k == 2:
                return RankResult.exact(4, "R.gap4.k2")
            return RankResult.interval(3, 4, "R.gap4")
        return RankResult.interval(7, 8, "R.gap8")
    if field in ("C", "H"):
        if not 1 <= k <= n:
            raise InvalidParameters(f"table needs 1 <= k <= n, got ({n}, {k})")
        if k == 1:
            return RankResult.uncovered(f"{field}V:{n},1 is a sphere, outside the table")
        if field == "C":
            if k == n:
                return RankResult.exact(2, "C.group")
            return RankResult.exact(2 * (n - k), "C.generic")
        return RankResult.exact(4 * (n - k) + 2, "H.generic")
    raise InvalidParameters(f"unknown field {field!r}")


def _is_power_of_two(x: int) -> bool:
    return x > 0 and (x & (x - 1)) == 0


def ucharrank_projective_real(family: Family | str, n: int, k: int) -> RankResult:
    """Case ladder for the real projective and flip Stiefel quotients.

    The case is a function of (family, m, N) with m the first possibly
    nontrivial degree of the fiber and N the truncation index.  Interval
    upper ends are capped at the manifold dimension.
    """
    family = Family(family) if not isinstance(family, Family) else family
    if family not in (Family.RX, Family.FV):
        raise InvalidParameters(f"{family} is not a real quotient family")
    space = SpaceId(family, n, k)
    c = 1 if family is Family.RX else 2
    idx_family = IndexFamily.REAL if family is Family.RX else IndexFamily.FLIP
    m = n - c * k
    N = n_index(idx_family, n, k).value
    dim = dimension(space)

    if m not in (1, 2, 4, 8):
        if N == m + 1:
            if m % 2 == 0 or not _is_power_of_two(m + 1):
                return RankResult.exact(m, "a1", N)
            return RankResult.interval(m, dim, "a1.lower", N)
        return RankResult.exact(m - 1, "a2", N)
    if m == 1:
        if N == 2:
            if family is Family.RX:
                return RankResult.exact(2, "b1", N)
            advisory = (
                f"keyed on truncation index 2; the congruence form of this case "
                f"has no solutions for odd n = {n}"
            )
            return RankResult.interval(2, dim, "b2", N, advisory=advisory)
        return RankResult.exact(0, "b3", N)
    if m == 2:
        if N == 3:
            return RankResult.exact(2, "c1", N)
        if N == 4:
            return RankResult.interval(1, min(4, dim), "c2", N)
        return RankResult.interval(1, min(2, dim), "c1", N)
    if m == 4:
        if N == 5:
            return RankResult.exact(4, "d1", N)
        if N == 6:
            return RankResult.interval(3, min(6, dim), "d2", N)
        return RankResult.interval(3, min(4, dim), "d1", N)
    if N == 9:
        return RankResult.exact(8, "e1", N)
    if N == 10:
        return RankResult.interval(7, min(10, dim), "e2", N)
    return RankResult.interval(7, min(8, dim), "e1", N)


def ucharrank_projective_CH(field: str, n: int, k: int) -> RankResult:
    """Closed formulas for the complex and quaternionic projective quotients,
    selected by the parity of binom(n, n-k+1)."""
    field = field.upper()
    if field not in ("C", "H"):
        raise InvalidParameters(f"field must be C or H, got {field!r}")
    if not 1 <= k <= n:
        raise InvalidParameters(f"needs 1 <= k <= n, got ({n}, {k})")
    if k == n:
        return RankResult.uncovered(f"{field}X:{n},{n} lies outside the formulas")
    N = n_index(IndexFamily.CQ, n, k).value
    odd = binom_parity(n, n - k + 1)
    if field == "C":
        if odd:
            return RankResult.exact(2 * (n - k) + 2, "C.odd", N)
        return RankResult.exact(2 * (n - k), "C.even", N)
    if odd:
        return RankResult.exact(4 * (n - k) + 6, "H.odd", N)
    return RankResult.exact(4 * (n - k) + 2, "H.even", N)


# -- cup-length bounds ---------------------------------------------------------


def cup_bound_nt(d: int, j: int, r_y: int) -> int:
    """1 + floor((d-j-1)/r_y): bound from all top-dimensional monomials in
    low characteristic classes vanishing."""
    if r_y < 1 or d < j + 1:
        raise InvalidParameters(f"cup_bound_nt needs r_y >= 1 and d >= j+1, got ({d}, {j}, {r_y})")
    return 1 + (d - j - 1) // r_y


def cup_bound_korbas(d: int, k: int, charrank: int) -> int:
    """1 + floor((d-1-charrank)/k) for a d-manifold whose first nontrivial
    reduced cohomology sits in degree k."""
    if k < 1 or charrank > d - 2:
        raise InvalidParameters(
            f"cup_bound_korbas needs k >= 1 and charrank <= d-2, got ({d}, {k}, {charrank})"
        )
    return 1 + (d - 1 - charrank) // k


DIM_MINUS_INDEX_BOUND = "dim-minus-index"


def cup_bound_dim_minus_index(space: SpaceId) -> int | None:
    """Dimension-minus-index cup bound for the quotient families; absent when
    the hypotheses fail (k > 1 and the governing binomial odd)."""
    fam, n, k = space.family, space.n, space.k
    d = dimension(space)
    if fam is Family.RX:
        if k > 1 and binom_parity(n, n - k + 1):
            return d - (n - k + 1)
        return None
    if fam is Family.FV:
        if k > 1 and binom_parity(n - k, n - 2 * k + 1):
            return d - (n - 2 * k + 1)
        return None
    if fam is Family.CX:
        if k > 1 and binom_parity(n, n - k + 1):
            return d - 2 * (n - k + 1) + 1
        return None
    if fam is Family.HX:
        if k > 1 and binom_parity(n, n - k + 1):
            return d - 4 * (n - k + 1) + 1
        return None
    return None


@dataclass(frozen=True)
class CupReport:
    space: SpaceId
    exact: CupResult
    bounds: tuple[tuple[str, int], ...]
    violations: tuple[str, ...]


def cup_report(space: SpaceId, *, oracle_cross_check_dim: int = 1 << 10) -> CupReport:
    """Exact cup length with the catalog bound and any violations.

    The exact value comes from the generator search; when the algebra is
    small enough the exhaustive oracle re-derives it (a disagreement is an
    internal error, not a report).  A bound smaller than the exact value is
    recorded as a violation, never suppressed.
    """
    p = presentation(space)
    exact = cup_length(p, CupMode.GENERATOR_SEARCH)
    if p.total_dimension <= oracle_cross_check_dim:
        oracle = cup_length(p, CupMode.EXHAUSTIVE_ORACLE)
        if oracle.value != exact.value:
            raise TopoinvError(
                f"{space}: generator search gave {exact.value} but the oracle gave {oracle.value}"
            )
    bounds: list[tuple[str, int]] = []
    catalog_bound = cup_bound_dim_minus_index(space)
    if catalog_bound is not None:
        bounds.append((DIM_MINUS_INDEX_BOUND, catalog_bound))
    violations = tuple(name for name, value in bounds if value < exact.value)
    return CupReport(space, exact, tuple(bounds), violations)
