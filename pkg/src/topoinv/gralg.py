"""Finite graded-commutative Z2-algebras with square-free monomial bases.

A presentation is an optional truncated polynomial generator y (y^N = 0)
tensored with a simple system of generators: a basis of square-free
products where squaring a generator either vanishes, lands on another
generator of twice the degree, or is left undetermined by the catalog.
Monomials are packed into single ints, a generator-subset bitmask shifted
over the y-exponent, so that products, cup-length search and Steenrod
squares all run on machine words.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from functools import cached_property
from heapq import heappush, heappop
from typing import Any, Iterable, Iterator

from .config import DEFAULT_ORACLE_DIMENSION_CAP, resolve_cap
from .errors import (
    DimensionCapExceeded,
    InvalidParameters,
    MixedPresentations,
    UndeterminedSquare,
    UnsupportedPresentation,
)

__all__ = [
    "SQ_UNDETERMINED",
    "SQ_ZERO",
    "AlgebraPresentation",
    "CupMode",
    "CupResult",
    "Element",
    "SimpleGenerator",
    "Trunc",
    "cup_length",
    "element_from_dict",
    "element_to_dict",
    "mul",
    "poincare",
    "presentation_from_dict",
    "presentation_to_dict",
    "steenrod_sq",
    "top_degree",
]

SQ_ZERO = "zero"
SQ_UNDETERMINED = "undetermined"

# Monomial code layout: (generator bitmask << _Y_BITS) | y_exponent.
_Y_BITS = 9
_Y_MASK = (1 << _Y_BITS) - 1

# Internal square-rule encoding per generator bit.
_RULE_ZERO = -1
_RULE_UNDET = -2


@dataclass(frozen=True)
class SimpleGenerator:
    """One simple-system generator: label j, its degree, and its square.

    ``square`` is the label of the generator equal to the square, or
    SQ_ZERO, or SQ_UNDETERMINED when the catalog leaves the square open
    (only possible when the squared degree is the omitted index of a
    projective presentation).
    """

    label: int
    degree: int
    square: int | str = SQ_ZERO


@dataclass(frozen=True)
class Trunc:
    """Truncated polynomial part: one generator y with y**order = 0."""

    degree: int
    order: int


@dataclass(frozen=True)
class AlgebraPresentation:
    trunc: Trunc | None
    simple_gens: tuple[SimpleGenerator, ...]
    ambient_bound: int | None = None
    metadata: Any = "custom"
    symbol: str = "g"
    y_symbol: str = "y"
    # "borel": the full generator rule Sq^i(z_q) = binom(q, i) z_{q+i} applies
    # (labels equal degrees).  "endpoints": only Sq^0, the top square and the
    # vanishing range are defined on generators.
    steenrod_rule: str = "endpoints"

    def __post_init__(self):
        if self.trunc is not None:
            if self.trunc.degree < 1 or self.trunc.order < 1:
                raise InvalidParameters(f"bad truncation {self.trunc}")
            if self.trunc.order > _Y_MASK:
                raise InvalidParameters(f"truncation order {self.trunc.order} too large")
        labels = [g.label for g in self.simple_gens]
        if labels != sorted(set(labels)):
            raise InvalidParameters("generator labels must be strictly increasing")
        label_set = set(labels)
        for g in self.simple_gens:
            if g.degree < 1:
                raise InvalidParameters(f"generator {g.label} must have positive degree")
            if isinstance(g.square, int):
                if g.square not in label_set or g.square <= g.label:
                    raise InvalidParameters(
                        f"square target {g.square} of generator {g.label} is not a later generator"
                    )
                target = next(h for h in self.simple_gens if h.label == g.square)
                if target.degree != 2 * g.degree:
                    raise InvalidParameters(
                        f"square of generator {g.label} must double the degree"
                    )
            elif g.square == SQ_UNDETERMINED:
                if self.trunc is None:
                    raise InvalidParameters(
                        "undetermined squares only occur in truncated (projective) presentations"
                    )
            elif g.square != SQ_ZERO:
                raise InvalidParameters(f"bad square rule {g.square!r}")
        if self.steenrod_rule not in ("borel", "endpoints"):
            raise InvalidParameters(f"unknown steenrod rule {self.steenrod_rule!r}")
        if self.steenrod_rule == "borel":
            for g in self.simple_gens:
                if g.degree != g.label:
                    raise InvalidParameters("borel rule requires degree == label")

    # -- structure ---------------------------------------------------------

    @cached_property
    def order(self) -> int:
        return self.trunc.order if self.trunc is not None else 1

    @cached_property
    def y_degree(self) -> int:
        return self.trunc.degree if self.trunc is not None else 0

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(g.label for g in self.simple_gens)

    @cached_property
    def num_gens(self) -> int:
        return len(self.simple_gens)

    @cached_property
    def _bit_of_label(self) -> dict[int, int]:
        return {g.label: i for i, g in enumerate(self.simple_gens)}

    @cached_property
    def _degree_of_bit(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.simple_gens)

    @cached_property
    def _rule_of_bit(self) -> tuple[int, ...]:
        rules = []
        for g in self.simple_gens:
            if g.square == SQ_ZERO:
                rules.append(_RULE_ZERO)
            elif g.square == SQ_UNDETERMINED:
                rules.append(_RULE_UNDET)
            else:
                rules.append(self._bit_of_label[g.square])
        return tuple(rules)

    @cached_property
    def total_dimension(self) -> int:
        return self.order * (1 << self.num_gens)

    @cached_property
    def top_degree(self) -> int:
        top = (self.order - 1) * self.y_degree
        return top + sum(self._degree_of_bit)

    # -- monomials ---------------------------------------------------------

    def pack(self, y_exp: int, mask: int) -> int:
        return (mask << _Y_BITS) | y_exp

    def unpack(self, code: int) -> tuple[int, tuple[int, ...]]:
        """Return (y_exp, generator labels) of a monomial code."""
        y_exp = code & _Y_MASK
        mask = code >> _Y_BITS
        labels = []
        while mask:
            low = mask & -mask
            labels.append(self.labels[low.bit_length() - 1])
            mask ^= low
        return y_exp, tuple(labels)

    def monomial_degree(self, code: int) -> int:
        deg = (code & _Y_MASK) * self.y_degree
        mask = code >> _Y_BITS
        cache = self._mask_degree_cache
        got = cache.get(mask)
        if got is None:
            got = 0
            m = mask
            degs = self._degree_of_bit
            while m:
                low = m & -m
                got += degs[low.bit_length() - 1]
                m ^= low
            cache[mask] = got
        return deg + got

    @cached_property
    def _mask_degree_cache(self) -> dict[int, int]:
        return {0: 0}

    def monomial_name(self, code: int) -> str:
        y_exp, labels = self.unpack(code)
        parts = []
        if y_exp == 1:
            parts.append(self.y_symbol)
        elif y_exp > 1:
            parts.append(f"{self.y_symbol}^{y_exp}")
        parts.extend(f"{self.symbol}{j}" for j in labels)
        return "*".join(parts) if parts else "1"

    def mul_codes(self, a: int, b: int) -> int | None:
        """Product of two monomial codes; None when the product vanishes.

        Repeated generators rewrite through their square rule, cascading
        until the result is square-free again; y-exponents at or above the
        truncation order kill the monomial.
        """
        y = (a & _Y_MASK) + (b & _Y_MASK)
        if self.trunc is not None and y >= self.order:
            return None
        ma = a >> _Y_BITS
        mb = b >> _Y_BITS
        mask = ma ^ mb
        dup = ma & mb
        if dup:
            rules = self._rule_of_bit
            queue: list[int] = []
            while dup:
                low = dup & -dup
                queue.append(low.bit_length() - 1)
                dup ^= low
            # ascending bit order: square targets always sit at higher bits
            while queue:
                i = heappop(queue)
                rule = rules[i]
                if rule == _RULE_ZERO:
                    return None
                if rule == _RULE_UNDET:
                    raise UndeterminedSquare(self.labels[i])
                bit = 1 << rule
                if mask & bit:
                    mask ^= bit
                    heappush(queue, rule)
                else:
                    mask |= bit
        return (mask << _Y_BITS) | y

    def basis_codes(self) -> Iterator[int]:
        for mask in range(1 << self.num_gens):
            base = mask << _Y_BITS
            for e in range(self.order):
                yield base | e

    # -- element constructors ----------------------------------------------

    def zero(self) -> "Element":
        return Element(self, frozenset())

    def one(self) -> "Element":
        return Element(self, frozenset((0,)))

    def y_power(self, e: int) -> "Element":
        if self.trunc is None:
            raise InvalidParameters("presentation has no truncated polynomial generator")
        if e < 0:
            raise InvalidParameters("negative exponent")
        if e >= self.order:
            return self.zero()
        return Element(self, frozenset((self.pack(e, 0),)))

    def gen(self, label: int) -> "Element":
        bit = self._bit_of_label.get(label)
        if bit is None:
            raise InvalidParameters(f"no generator labelled {label}")
        return Element(self, frozenset((self.pack(0, 1 << bit),)))

    def monomial(self, y_exp: int = 0, labels: Iterable[int] = ()) -> "Element":
        if y_exp < 0:
            raise InvalidParameters("negative exponent")
        if y_exp:
            if self.trunc is None:
                raise InvalidParameters("presentation has no truncated polynomial generator")
            if y_exp >= self.order:
                return self.zero()
        mask = 0
        for j in labels:
            bit = self._bit_of_label.get(j)
            if bit is None:
                raise InvalidParameters(f"no generator labelled {j}")
            if mask & (1 << bit):
                raise InvalidParameters(f"generator {j} repeated in monomial")
            mask |= 1 << bit
        return Element(self, frozenset((self.pack(y_exp, mask),)))


class Element:
    """Z2-linear combination of basis monomials of one presentation."""

    __slots__ = ("presentation", "codes")

    def __init__(self, presentation: AlgebraPresentation, codes: frozenset[int]):
        self.presentation = presentation
        self.codes = codes

    def is_zero(self) -> bool:
        return not self.codes

    def degrees(self) -> tuple[int, ...]:
        p = self.presentation
        return tuple(sorted({p.monomial_degree(c) for c in self.codes}))

    def degree(self) -> int:
        """Degree of a homogeneous element (the unit has degree 0)."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise InvalidParameters(f"element is not homogeneous (degrees {degs})")
        return degs[0]

    def monomials(self) -> list[tuple[int, tuple[int, ...]]]:
        p = self.presentation
        return sorted(p.unpack(c) for c in self.codes)

    def _check(self, other: "Element") -> None:
        if self.presentation != other.presentation:
            raise MixedPresentations("elements belong to different presentations")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.presentation, self.codes ^ other.codes)

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        p = self.presentation
        acc: set[int] = set()
        mul_codes = p.mul_codes
        for a in self.codes:
            for b in other.codes:
                c = mul_codes(a, b)
                if c is not None:
                    if c in acc:
                        acc.discard(c)
                    else:
                        acc.add(c)
        return Element(p, frozenset(acc))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Element)
            and self.presentation == other.presentation
            and self.codes == other.codes
        )

    def __hash__(self) -> int:
        return hash(self.codes)

    def __repr__(self) -> str:
        if not self.codes:
            return "<0>"
        p = self.presentation
        names = [p.monomial_name(c) for c in sorted(self.codes)]
        return "<" + " + ".join(names) + ">"


# -- ring operations ---------------------------------------------------------


def mul(p: AlgebraPresentation, a: Element, b: Element) -> Element:
    if a.presentation != p or b.presentation != p:
        raise MixedPresentations("operands do not belong to the given presentation")
    return a * b


def top_degree(p: AlgebraPresentation) -> int:
    return p.top_degree


def poincare(p: AlgebraPresentation) -> list[int]:
    """Dimension of each graded piece, indexed by degree up to the top."""
    coeffs = [0] * (p.top_degree + 1)
    if p.trunc is not None:
        for e in range(p.order):
            coeffs[e * p.trunc.degree] = 1
    else:
        coeffs[0] = 1
    for g in p.simple_gens:
        for d in range(len(coeffs) - 1, g.degree - 1, -1):
            coeffs[d] += coeffs[d - g.degree]
    return coeffs


# -- Steenrod squares --------------------------------------------------------


def _factor_options(
    p: AlgebraPresentation, kind: str, value: int, budget: int
) -> tuple[list[tuple[int, int]], range]:
    """Determined Steenrod options (t, resulting code) for a single factor.

    Returns the option list sorted by t and the range of t values whose
    action on this factor is undetermined.
    """
    if kind == "y":
        e = value
        d = p.trunc.degree
        options = []
        for s in range(0, budget // d + 1):
            if s and not ((e & s) == s):
                continue
            if e + s >= p.order:
                continue
            options.append((s * d, p.pack(e + s, 0)))
        return options, range(0)
    bit = value
    deg = p._degree_of_bit[bit]
    if p.steenrod_rule == "borel":
        q = p.labels[bit]
        options = [(0, p.pack(0, 1 << bit))]
        bit_of = p._bit_of_label
        for t in range(1, min(budget, q) + 1):
            if (q & t) != t:
                continue
            target = bit_of.get(q + t)
            if target is not None:
                options.append((t, p.pack(0, 1 << target)))
        return options, range(0)
    # endpoints rule: only Sq^0 and the top square are defined on a generator
    options = [(0, p.pack(0, 1 << bit))]
    rule = p._rule_of_bit[bit]
    if deg <= budget and rule >= 0:
        options.append((deg, p.pack(0, 1 << rule)))
    return options, range(1, min(budget, deg - 1) + 1)


def _sq_monomial_cartan(p: AlgebraPresentation, i: int, code: int) -> set[int]:
    """Cartan expansion of Sq^i over the factors of one monomial, 0 < i < deg.

    dp tracks mod-2 sums over fully determined splittings.  live_clean and
    live_undet track (without cancellation) the nonzero products of the
    determined factors along splittings that are respectively fully
    determined and tainted by an undetermined factor; a tainted splitting
    surviving to the full budget makes the answer undetermined.
    """
    y_exp = code & _Y_MASK
    mask = code >> _Y_BITS
    factors: list[tuple[str, int]] = []
    if y_exp:
        factors.append(("y", y_exp))
    m = mask
    while m:
        low = m & -m
        factors.append(("g", low.bit_length() - 1))
        m ^= low

    dp: list[set[int]] = [set() for _ in range(i + 1)]
    live_clean: list[set[int]] = [set() for _ in range(i + 1)]
    live_undet: list[set[int]] = [set() for _ in range(i + 1)]
    dp[0].add(0)
    live_clean[0].add(0)

    mul_codes = p.mul_codes
    for kind, value in factors:
        options, undet_ts = _factor_options(p, kind, value, i)
        ndp: list[set[int]] = [set() for _ in range(i + 1)]
        nlc: list[set[int]] = [set() for _ in range(i + 1)]
        nlu: list[set[int]] = [set() for _ in range(i + 1)]
        for b in range(i + 1):
            cur, lc, lu = dp[b], live_clean[b], live_undet[b]
            if not (cur or lc or lu):
                continue
            for t, piece in options:
                nb = b + t
                if nb > i:
                    break
                out = ndp[nb]
                for pc in cur:
                    prod = mul_codes(pc, piece)
                    if prod is not None:
                        if prod in out:
                            out.discard(prod)
                        else:
                            out.add(prod)
                for pc in lc:
                    prod = mul_codes(pc, piece)
                    if prod is not None:
                        nlc[nb].add(prod)
                for pc in lu:
                    prod = mul_codes(pc, piece)
                    if prod is not None:
                        nlu[nb].add(prod)
            if lc or lu:
                for t in undet_ts:
                    nb = b + t
                    if nb > i:
                        break
                    nlu[nb] |= lc
                    nlu[nb] |= lu
        dp, live_clean, live_undet = ndp, nlc, nlu

    if live_undet[i]:
        raise UnsupportedPresentation(
            f"Sq^{i} on {p.monomial_name(code)} involves an undetermined generator action"
        )
    return dp[i]


def steenrod_sq(p: AlgebraPresentation, i: int, a: Element) -> Element:
    """Sq^i on an element: Sq^0 = id, vanishing above the degree, squaring
    at the degree, and the Cartan formula across monomial factors.

    Full generator action is available on presentations carrying the
    "borel" rule; elsewhere only the degreewise-forced values exist and
    anything touching an undetermined intermediate action is refused.
    Elements of truncated presentations must be pure y-powers.
    """
    if a.presentation != p:
        raise MixedPresentations("element does not belong to the given presentation")
    if i < 0:
        raise InvalidParameters("Sq index must be nonnegative")
    if i == 0:
        return a
    acc: set[int] = set()
    for code in sorted(a.codes):
        if p.trunc is not None and (code >> _Y_BITS):
            raise UnsupportedPresentation(
                "Steenrod squares on truncated presentations are only defined on pure powers of y"
            )
        deg = p.monomial_degree(code)
        if i > deg:
            continue
        if i == deg:
            prod = p.mul_codes(code, code)
            pieces = set() if prod is None else {prod}
        else:
            pieces = _sq_monomial_cartan(p, i, code)
        acc ^= pieces
    return Element(p, frozenset(acc))


# -- cup length --------------------------------------------------------------


class CupMode(enum.Enum):
    GENERATOR_SEARCH = "generators"
    EXHAUSTIVE_ORACLE = "oracle"


@dataclass(frozen=True)
class CupResult:
    value: int
    witness: tuple[str, ...]
    caveat: bool = False


def _cup_generator_search(p: AlgebraPresentation) -> CupResult:
    gens: list[tuple[str, int, int]] = []
    if p.trunc is not None and p.order >= 2:
        gens.append((p.y_symbol, p.pack(1, 0), p.trunc.degree))
    for bit, g in enumerate(p.simple_gens):
        gens.append((f"{p.symbol}{g.label}", p.pack(0, 1 << bit), g.degree))
    if not gens:
        return CupResult(0, (), False)
    min_deg = min(d for _, _, d in gens)
    top = p.top_degree
    mul_codes = p.mul_codes
    best = 0
    best_path: tuple[str, ...] = ()
    caveat = False
    path: list[str] = []

    limit = top // min_deg + 64
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit + 1000)

    def extend(code: int, start: int, count: int, deg: int) -> None:
        nonlocal best, best_path, caveat
        if count > best:
            best = count
            best_path = tuple(path)
        # degree budget: every further factor costs at least min_deg
        if count + (top - deg) // min_deg <= best:
            return
        for idx in range(start, len(gens)):
            name, gcode, gdeg = gens[idx]
            try:
                nxt = mul_codes(code, gcode)
            except UndeterminedSquare:
                caveat = True
                continue
            if nxt is None:
                continue
            path.append(name)
            extend(nxt, idx, count + 1, deg + gdeg)
            path.pop()

    extend(0, 0, 0, 0)
    return CupResult(best, best_path, caveat)


def _cup_oracle(p: AlgebraPresentation, cap: int) -> CupResult:
    if p.total_dimension > cap:
        raise DimensionCapExceeded(
            f"total dimension {p.total_dimension} exceeds oracle cap {cap}"
        )
    top = p.top_degree
    deg_of = p.monomial_degree
    monos = sorted((deg_of(c), c) for c in p.basis_codes())
    positives = [(d, c) for d, c in monos if d > 0]
    if not positives:
        return CupResult(0, (), False)
    caveat = False
    mul_codes = p.mul_codes
    # factors[m] = most positive-degree monomial factors in a nonzero
    # factorization of m.  A prefix of a nonzero product is nonzero, so
    # peeling one factor (degree-ascending sweep) sees every factorization.
    factors = {c: 1 for _, c in positives}
    parent: dict[int, tuple[int, int]] = {}
    for da, a in monos:
        fa = factors.get(a)
        if fa is None:
            continue
        for db, b in positives:
            if da + db > top:
                break
            try:
                m = mul_codes(a, b)
            except UndeterminedSquare:
                caveat = True
                continue
            if m is not None and factors.get(m, 0) < fa + 1:
                factors[m] = fa + 1
                parent[m] = (a, b)
    best = max(factors.values())
    tail = min(c for c, f in factors.items() if f == best)
    chain: list[int] = []
    while tail in parent:
        prev, factor = parent[tail]
        chain.append(factor)
        tail = prev
    chain.append(tail)
    witness = tuple(p.monomial_name(c) for c in reversed(chain))
    return CupResult(best, witness, caveat)


def cup_length(
    p: AlgebraPresentation,
    mode: CupMode | str = CupMode.GENERATOR_SEARCH,
    *,
    dimension_cap: int | None = None,
) -> CupResult:
    """Largest number of positive-degree classes with nonzero product.

    GENERATOR_SEARCH multiplies algebra generators (repetitions allowed)
    depth-first with degree pruning.  EXHAUSTIVE_ORACLE maximizes the
    factor count over all nonzero products of positive-degree basis
    monomials by a degree-ascending sweep; expanding arbitrary homogeneous
    factors monomial by monomial shows a product of elements is nonzero
    only if some product of support monomials is, so the maximum over
    monomials is the true cup length.

    The caveat flag is set when an undetermined square was conservatively
    treated as zero during the search.
    """
    mode = CupMode(mode)
    if mode is CupMode.GENERATOR_SEARCH:
        return _cup_generator_search(p)
    cap = resolve_cap(dimension_cap, DEFAULT_ORACLE_DIMENSION_CAP)
    return _cup_oracle(p, cap)


# -- serialization -----------------------------------------------------------


def presentation_to_dict(p: AlgebraPresentation) -> dict:
    return {
        "trunc": (
            {"deg": p.trunc.degree, "N": p.trunc.order} if p.trunc is not None else None
        ),
        "gens": [
            {"j": g.label, "deg": g.degree, "square": g.square} for g in p.simple_gens
        ],
    }


def presentation_from_dict(data: dict, **kwargs: Any) -> AlgebraPresentation:
    trunc = data.get("trunc")
    return AlgebraPresentation(
        trunc=Trunc(trunc["deg"], trunc["N"]) if trunc else None,
        simple_gens=tuple(
            SimpleGenerator(g["j"], g["deg"], g["square"]) for g in data["gens"]
        ),
        **kwargs,
    )


def element_to_dict(e: Element) -> dict:
    return {"monomials": [[y, list(labels)] for y, labels in e.monomials()]}


def element_from_dict(p: AlgebraPresentation, data: dict) -> Element:
    acc = p.zero()
    for y_exp, labels in data["monomials"]:
        acc = acc + p.monomial(y_exp, labels)
    return acc
