"""Index ideals for unit-quaternion actions and map-feasibility verdicts.

The mod-2 index of each space here is a principal ideal in a polynomial
ring on one degree-4 generator, so it is stored as the exponent alone;
containment of ideals is then a single integer comparison.  Exponents are
in units of the generator: the sphere S^{4n-1} has exponent n (total
degree 4n).  Verdicts distinguish exact characterizations ("possible" /
"impossible") from necessary-condition screens ("not-ruled-out").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DegreeMismatch, InvalidParameters
from .parity import IndexFamily, binom_divides, n_index

__all__ = [
    "FeasibilityVerdict",
    "GSpace",
    "IndexIdeal",
    "IntegralIndexComponent",
    "Sphere",
    "StiefelH",
    "SymplecticGroup",
    "feasibility",
    "ideal_contains",
    "index_sphere",
    "index_stiefel_integral_component",
    "index_stiefel_mod2",
    "parse_gspace",
]


@dataclass(frozen=True)
class IndexIdeal:
    """Principal ideal <alpha^exponent>, |alpha| = generator_degree."""

    generator_degree: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1 or self.generator_degree < 1:
            raise InvalidParameters(f"bad index ideal {self}")

    @property
    def total_degree(self) -> int:
        return self.generator_degree * self.exponent


@dataclass(frozen=True)
class IntegralIndexComponent:
    """The single computed integral degree: Z * multiplier * k^(degree/4)."""

    degree: int
    multiplier: int


@dataclass(frozen=True)
class Sphere:
    """S^{4n-1} with the unit-quaternion action; written S4n-1:n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameters(f"sphere parameter must be positive, got {self.n}")

    def __str__(self) -> str:
        return f"S4n-1:{self.n}"


@dataclass(frozen=True)
class StiefelH:
    """Quaternionic Stiefel manifold of k-frames in H^n."""

    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise InvalidParameters(f"needs 1 <= k <= n, got ({self.n}, {self.k})")

    def __str__(self) -> str:
        return f"HV:{self.n},{self.k}"


@dataclass(frozen=True)
class SymplecticGroup:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameters(f"group parameter must be positive, got {self.n}")

    def __str__(self) -> str:
        return f"Sp:{self.n}"


GSpace = Union[Sphere, StiefelH, SymplecticGroup]


def parse_gspace(spec: str) -> GSpace:
    try:
        head, rest = spec.split(":", 1)
        head = head.strip()
        if head == "S4n-1":
            return Sphere(int(rest))
        if head == "Sp":
            return SymplecticGroup(int(rest))
        if head == "HV":
            n, k = rest.split(",", 1)
            return StiefelH(int(n), int(k))
    except (ValueError, InvalidParameters) as exc:
        raise InvalidParameters(f"cannot parse G-space spec {spec!r}") from exc
    raise InvalidParameters(f"unknown G-space kind in {spec!r} (use S4n-1:, HV:, Sp:)")


def index_sphere(n: int) -> IndexIdeal:
    """Index of the free action on S^{4n-1}: <alpha^n> in units of |alpha| = 4."""
    if n < 1:
        raise InvalidParameters(f"needs n >= 1, got {n}")
    return IndexIdeal(4, n)


def index_stiefel_mod2(n: int, k: int) -> IndexIdeal:
    """Mod-2 index of the k-frame space: exponent is the truncation index N."""
    if not 1 <= k <= n:
        raise InvalidParameters(f"needs 1 <= k <= n, got ({n}, {k})")
    return IndexIdeal(4, n_index(IndexFamily.CQ, n, k).value)


def index_stiefel_integral_component(n: int, k: int) -> IntegralIndexComponent:
    """Integral index in degree 4(n-k+1): the bottom fiber class transgresses
    onto binom(n, n-k+1) times the corresponding power of the generator."""
    if not 1 <= k <= n:
        raise InvalidParameters(f"needs 1 <= k <= n, got ({n}, {k})")
    return IntegralIndexComponent(4 * (n - k + 1), math.comb(n, n - k + 1))


def ideal_contains(a: IndexIdeal, b: IndexIdeal) -> bool:
    """Whether <alpha^a> contains <alpha^b> (true iff a.exponent <= b.exponent)."""
    if a.generator_degree != b.generator_degree:
        raise DegreeMismatch(
            f"generator degrees differ: {a.generator_degree} vs {b.generator_degree}"
        )
    return a.exponent <= b.exponent


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Verdict on the existence of an equivariant map.

    status is one of "possible", "possible-iff", "not-ruled-out",
    "impossible"; impossible verdicts always carry the violated necessary
    condition in detail.
    """

    status: str
    rule: str
    detail: str = ""

    def __post_init__(self):
        if self.status not in ("possible", "possible-iff", "not-ruled-out", "impossible"):
            raise InvalidParameters(f"bad verdict status {self.status!r}")
        if self.status == "impossible" and not self.detail:
            raise InvalidParameters("impossible verdicts must state the violated condition")


def feasibility(source: GSpace, target: GSpace) -> FeasibilityVerdict:
    """Existence screen for unit-quaternion equivariant maps source -> target.

    Sphere-to-sphere and group-to-group cases are exact characterizations
    (index containment, and block-diagonal embeddings for the converse);
    everything else applies necessary conditions only, with the symplectic
    group treated as the full frame space of its own rank.
    """
    if isinstance(source, SymplecticGroup) and isinstance(target, SymplecticGroup):
        if target.n % source.n == 0:
            return FeasibilityVerdict("possible", "group-divisibility",
                                      f"{source.n} divides {target.n}")
        return FeasibilityVerdict("impossible", "group-divisibility",
                                  f"{source.n} does not divide {target.n}")
    if isinstance(source, Sphere) and isinstance(target, Sphere):
        if source.n <= target.n:
            return FeasibilityVerdict("possible", "sphere-sphere",
                                      f"{source.n} <= {target.n}")
        return FeasibilityVerdict(
            "impossible", "sphere-sphere",
            f"index containment fails: exponent {source.n} > {target.n}",
        )

    src = StiefelH(source.n, source.n) if isinstance(source, SymplecticGroup) else source
    tgt = StiefelH(target.n, target.n) if isinstance(target, SymplecticGroup) else target

    if isinstance(src, StiefelH) and isinstance(tgt, StiefelH):
        n, k, m, l = src.n, src.k, tgt.n, tgt.k
        if n - k > m - l:
            return FeasibilityVerdict("impossible", "frame-gap",
                                      f"n-k={n - k} > m-l={m - l}")
        if n - k == m - l and not binom_divides(n, k, m, l):
            return FeasibilityVerdict(
                "impossible", "frame-divisibility",
                f"binom({n},{n - k + 1}) does not divide binom({m},{m - l + 1})",
            )
        return FeasibilityVerdict("not-ruled-out", "frame-gap")
    if isinstance(src, Sphere) and isinstance(tgt, StiefelH):
        m, l = tgt.n, tgt.k
        if src.n > m - l + 1:
            return FeasibilityVerdict("impossible", "sphere-to-stiefel",
                                      f"n={src.n} > m-l+1={m - l + 1}")
        return FeasibilityVerdict("not-ruled-out", "sphere-to-stiefel")
    if isinstance(src, StiefelH) and isinstance(tgt, Sphere):
        n, k = src.n, src.k
        if tgt.n < n - k + 1:
            return FeasibilityVerdict("impossible", "stiefel-to-sphere",
                                      f"m={tgt.n} < n-k+1={n - k + 1}")
        return FeasibilityVerdict("not-ruled-out", "stiefel-to-sphere")
    raise InvalidParameters(f"unsupported G-space pair ({source}, {target})")
