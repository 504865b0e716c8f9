"""Catalog of Stiefel-type manifolds and their mod-2 cohomology rings.

Seven families are supported, written FAMILY:n,k throughout:

  RV, CV, HV   real / complex / quaternionic Stiefel manifolds of k-frames
  RX, CX, HX   their projective quotients by the unit scalars
  FV           flip Stiefel manifolds, the quotient of RV_{n,2k} by the
               pairwise flip (k is the half-width: FV:n,k is the manifold
               built from 2k-frames)

Each projective ring is a truncated polynomial generator coming from the
classifying space of the quotient group, tensored with the simple system
of the fiber minus one omitted generator; the truncation order is the
least index with an odd governing binomial (see the parity module).
serre_verify rebuilds the ring independently from the transgression
differentials of the Borel fibration and compares graded dimensions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .config import DEFAULT_SS_WORK_CAP, resolve_cap
from .errors import InvalidParameters, WorkCapExceeded
from .gralg import (
    SQ_UNDETERMINED,
    SQ_ZERO,
    AlgebraPresentation,
    SimpleGenerator,
    Trunc,
    poincare,
)
from .parity import IndexFamily, binom_parity, n_index

__all__ = [
    "Family",
    "SSReport",
    "SpaceId",
    "catalog",
    "dimension",
    "presentation",
    "serre_verify",
]


class Family(enum.Enum):
    RV = "RV"
    CV = "CV"
    HV = "HV"
    RX = "RX"
    FV = "FV"
    CX = "CX"
    HX = "HX"

    @property
    def is_projective(self) -> bool:
        return self in (Family.RX, Family.FV, Family.CX, Family.HX)

    @property
    def base_degree(self) -> int:
        """Degree of the polynomial generator of the quotient's classifying space."""
        return {Family.RX: 1, Family.FV: 1, Family.CX: 2, Family.HX: 4}[self]


_SYMBOLS = {
    Family.RV: ("z", "y"),
    Family.CV: ("z'", "y"),
    Family.HV: ("z''", "y"),
    Family.RX: ("y", "y"),
    Family.FV: ("y", "y"),
    Family.CX: ("y'", "y'"),
    Family.HX: ("y''", "y''"),
}


@dataclass(frozen=True)
class SpaceId:
    """One manifold: family plus parameters (n, k).

    For FV, k is the half-width: SpaceId(FV, n, k) is the flip quotient of
    RV_{n,2k} and requires 2k < n.
    """

    family: Family
    n: int
    k: int

    def __post_init__(self):
        fam, n, k = self.family, self.n, self.k
        if not isinstance(fam, Family):
            object.__setattr__(self, "family", Family(fam))
            fam = self.family
        if n < 1 or k < 1:
            raise InvalidParameters(f"{self}: n and k must be positive")
        ok = {
            Family.RV: 1 <= k < n,
            Family.CV: 1 <= k <= n,
            Family.HV: 1 <= k <= n,
            Family.RX: 1 < k < n,
            Family.FV: 2 * k < n,
            Family.CX: 1 <= k < n,
            Family.HX: 1 <= k < n,
        }[fam]
        if not ok:
            raise InvalidParameters(f"parameters out of range for {self}")

    def __str__(self) -> str:
        return f"{self.family.value}:{self.n},{self.k}"

    @staticmethod
    def parse(spec: str) -> "SpaceId":
        try:
            fam, rest = spec.split(":", 1)
            n, k = rest.split(",", 1)
            return SpaceId(Family(fam.strip()), int(n), int(k))
        except (ValueError, KeyError) as exc:
            raise InvalidParameters(f"cannot parse space spec {spec!r}") from exc


def dimension(space: SpaceId) -> int:
    n, k = space.n, space.k
    return {
        Family.RV: n * k - k * (k + 1) // 2,
        Family.RX: n * k - k * (k + 1) // 2,
        Family.FV: 2 * n * k - k * (2 * k + 1),
        Family.CV: 2 * n * k - k * k,
        Family.CX: 2 * n * k - k * k - 1,
        Family.HV: 4 * n * k - 2 * k * k + k,
        Family.HX: 4 * n * k - 2 * k * k + k - 3,
    }[space.family]


def _real_square(j: int, bound: int, omitted: int | None) -> int | str:
    """Square rule z_j^2 = z_{2j} below the ambient bound, else zero."""
    if 2 * j > bound:
        return SQ_ZERO
    if omitted is not None and 2 * j == omitted:
        return SQ_UNDETERMINED
    return 2 * j


def presentation(space: SpaceId) -> AlgebraPresentation:
    fam, n, k = space.family, space.n, space.k
    symbol, y_symbol = _SYMBOLS[fam]

    if fam is Family.RV:
        gens = tuple(
            SimpleGenerator(j, j, _real_square(j, n - 1, None)) for j in range(n - k, n)
        )
        return AlgebraPresentation(
            None, gens, ambient_bound=n - 1, metadata=space, symbol=symbol,
            y_symbol=y_symbol, steenrod_rule="borel",
        )
    if fam is Family.CV:
        gens = tuple(SimpleGenerator(j, 2 * j - 1) for j in range(n - k + 1, n + 1))
        return AlgebraPresentation(
            None, gens, ambient_bound=n - 1, metadata=space, symbol=symbol, y_symbol=y_symbol
        )
    if fam is Family.HV:
        gens = tuple(SimpleGenerator(j, 4 * j - 1) for j in range(n - k + 1, n + 1))
        return AlgebraPresentation(
            None, gens, ambient_bound=n - 1, metadata=space, symbol=symbol, y_symbol=y_symbol
        )

    if fam in (Family.RX, Family.FV):
        c = 1 if fam is Family.RX else 2
        idx_family = IndexFamily.REAL if fam is Family.RX else IndexFamily.FLIP
        order = n_index(idx_family, n, k).value
        omitted = order - 1
        gens = tuple(
            SimpleGenerator(j, j, _real_square(j, n - 1, omitted))
            for j in range(n - c * k, n)
            if j != omitted
        )
        return AlgebraPresentation(
            Trunc(1, order), gens, ambient_bound=n - 1, metadata=space,
            symbol=symbol, y_symbol=y_symbol,
        )

    order = n_index(IndexFamily.CQ, n, k).value
    d = 2 if fam is Family.CX else 4
    gens = tuple(
        SimpleGenerator(j, d * j - 1)
        for j in range(n - k + 1, n + 1)
        if j != order
    )
    return AlgebraPresentation(
        Trunc(d, order), gens, ambient_bound=n - 1, metadata=space,
        symbol=symbol, y_symbol=y_symbol,
    )


# -- spectral-sequence verification -------------------------------------------


@dataclass(frozen=True)
class SSReport:
    space: SpaceId
    window: int
    first_nonzero_differential_page: int
    e_infinity_series: tuple[int, ...]
    presentation_series: tuple[int, ...]
    match: bool


def _fiber_data(space: SpaceId) -> list[tuple[int, int, int]]:
    """(fiber degree, target base exponent, coefficient parity) per fiber generator.

    A fiber generator transgresses onto the power of the base generator one
    degree up; the coefficient is the corresponding coefficient of the total
    characteristic class of the classifying bundle.
    """
    fam, n, k = space.family, space.n, space.k
    if fam is Family.RX:
        return [(q, q + 1, binom_parity(n, q + 1)) for q in range(n - k, n)]
    if fam is Family.FV:
        return [(q, q + 1, binom_parity(k + q, q + 1)) for q in range(n - 2 * k, n)]
    if fam is Family.CX:
        return [(2 * j - 1, j, binom_parity(n, j)) for j in range(n - k + 1, n + 1)]
    if fam is Family.HX:
        return [(4 * j - 1, j, binom_parity(n, j)) for j in range(n - k + 1, n + 1)]
    raise InvalidParameters(f"{space} is not a quotient family")


def _gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            p = row.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = row
                rank += 1
                break
            row ^= other
    return rank


def serre_verify(
    space: SpaceId, window: int | None = None, *, work_cap: int | None = None
) -> SSReport:
    """Check a quotient presentation against its transgression differentials.

    Builds the window of the fiber-times-base bigraded Z2 vector space, lets
    every fiber generator transgress with its binomial coefficient, extends
    by the Leibniz rule, and computes graded dimensions of the limit by rank
    computations over Z2 (bit-parallel Gaussian elimination).  With a bounded
    filtration the limit's total series equals the homology series of the
    assembled differential, which is what is computed degree by degree.
    """
    if not space.family.is_projective:
        raise InvalidParameters(f"serre_verify applies to quotient families, not {space}")
    fiber = _fiber_data(space)
    t = space.family.base_degree
    w = dimension(space) if window is None else window
    if w < 0:
        raise InvalidParameters("window must be nonnegative")
    amb = w + 1

    cap = resolve_cap(work_cap, DEFAULT_SS_WORK_CAP)
    estimate = (1 << len(fiber)) * (amb // t + 1)
    if estimate > cap:
        raise WorkCapExceeded(f"{space}: estimated work {estimate} exceeds cap {cap}")

    fdeg = [d for d, _, _ in fiber]
    # monomials per total degree: (fiber subset mask, base exponent)
    by_degree: list[list[tuple[int, int]]] = [[] for _ in range(amb + 1)]
    for mask in range(1 << len(fiber)):
        d0 = 0
        m = mask
        while m:
            low = m & -m
            d0 += fdeg[low.bit_length() - 1]
            m ^= low
        if d0 > amb:
            continue
        for s in range((amb - d0) // t + 1):
            by_degree[d0 + t * s].append((mask, s))
    index: list[dict[tuple[int, int], int]] = [
        {mono: i for i, mono in enumerate(level)} for level in by_degree
    ]

    odd = [(i, m, 1 << i) for i, (_, m, c) in enumerate(fiber) if c]
    ranks = [0] * (amb + 1)
    for d in range(amb):
        target = index[d + 1]
        rows = []
        for mask, s in by_degree[d]:
            row = 0
            for i, m, bit in odd:
                if mask & bit:
                    row ^= 1 << target[(mask ^ bit, s + m)]
            if row:
                rows.append(row)
        ranks[d] = _gf2_rank(rows)

    betti = tuple(
        len(by_degree[d]) - ranks[d] - (ranks[d - 1] if d else 0) for d in range(w + 1)
    )

    visible_pages = [t * m for _, m, _ in odd if t * m <= amb]
    first_page = min(visible_pages) if visible_pages else 0

    series = poincare(presentation(space))
    pres = tuple(series[d] if d < len(series) else 0 for d in range(w + 1))

    return SSReport(
        space=space,
        window=w,
        first_nonzero_differential_page=first_page,
        e_infinity_series=betti,
        presentation_series=pres,
        match=betti == pres,
    )


def catalog(
    families: Iterable[Family | str],
    n_values: Iterable[int],
    k_values: Iterable[int] | None = None,
) -> tuple[list[SpaceId], int]:
    """Expand a parameter grid, silently skipping invalid combinations.

    Returns the valid spaces in (family, n, k) order and the number of
    explicitly requested combinations that were skipped.  When k_values is
    omitted, all valid k for each n are generated (nothing counts as
    skipped).
    """
    spaces: list[SpaceId] = []
    skipped = 0
    n_list = list(n_values)
    k_list = None if k_values is None else list(k_values)
    for fam in families:
        fam = Family(fam) if not isinstance(fam, Family) else fam
        for n in n_list:
            ks = k_list if k_list is not None else list(range(1, max(n, 1) + 1))
            for k in ks:
                try:
                    spaces.append(SpaceId(fam, n, k))
                except InvalidParameters:
                    if k_list is not None:
                        skipped += 1
    return spaces, skipped
