"""Command-line front end.

Single queries print one deterministic JSON document (sorted keys, no
timestamps; --meta wraps the payload instead of polluting it).  Grids
stream through `table` as CSV or JSON, and `verify` runs the consistency
suites.  Exit codes: 0 success, 1 verification failure, 2 invalid
parameters, 3 input not covered by the decision tables.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import click

from . import __version__
from .errors import (
    DimensionCapExceeded,
    InvalidParameters,
    NoIndex,
    WorkCapExceeded,
)
from .gralg import (
    CupMode,
    Element,
    cup_length,
    mul,
    poincare,
    presentation_to_dict,
    steenrod_sq,
    top_degree,
)
from .invariants import (
    DIM_MINUS_INDEX_BOUND,
    RankResult,
    cup_report,
    ucharrank_projective_CH,
    ucharrank_projective_real,
    ucharrank_stiefel,
)
from .equivariant import feasibility, index_sphere, index_stiefel_mod2, parse_gspace
from .parity import binom_parity, parity_row
from .spaces import Family, SpaceId, catalog, dimension, presentation, serre_verify

SCHEMA = "topoinv/1"

_STIEFEL_FIELD = {Family.RV: "R", Family.CV: "C", Family.HV: "H"}
_PROJECTIVE_CH_FIELD = {Family.CX: "C", Family.HX: "H"}


def _cli_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (InvalidParameters, NoIndex, DimensionCapExceeded, WorkCapExceeded) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _emit(ctx: click.Context, payload: dict) -> None:
    if ctx.obj and ctx.obj.get("meta"):
        payload = {
            "meta": {
                "generated_at": datetime.now(timezone.utc).isoformat(),
                "version": __version__,
            },
            "payload": payload,
        }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _rank_to_dict(r: RankResult) -> dict:
    out: dict = {"kind": r.kind, "case": r.case_label}
    if r.value is not None:
        out["value"] = r.value
    if r.lo is not None:
        out["lo"] = r.lo
        out["hi"] = r.hi
    if r.n_index_used is not None:
        out["N"] = r.n_index_used
    if r.advisory:
        out["advisory"] = r.advisory
    if r.reason:
        out["reason"] = r.reason
    return out


def _ucharrank_for(space: SpaceId) -> RankResult:
    fam = space.family
    if fam in _STIEFEL_FIELD:
        return ucharrank_stiefel(_STIEFEL_FIELD[fam], space.n, space.k)
    if fam in (Family.RX, Family.FV):
        return ucharrank_projective_real(fam, space.n, space.k)
    return ucharrank_projective_CH(_PROJECTIVE_CH_FIELD[fam], space.n, space.k)


@click.group()
@click.version_option(version=__version__, prog_name="topoinv")
@click.option("--meta", is_flag=True, help="Wrap output with a timestamped meta envelope.")
@click.pass_context
def main(ctx: click.Context, meta: bool) -> None:
    """Cohomology rings and rank/cup/index invariants of Stiefel-type manifolds.

    Space specs are FAMILY:n,k with families RV, CV, HV (Stiefel), RX, CX,
    HX (projective quotients) and FV (flip; k is the half-width).  G-space
    specs for s3map are S4n-1:n (the sphere S^{4n-1}), HV:n,k and Sp:n.
    """
    ctx.ensure_object(dict)
    ctx.obj["meta"] = meta


@main.command()
@click.argument("space_spec")
@click.pass_context
@_cli_errors
def ucharrank(ctx: click.Context, space_spec: str) -> None:
    """Upper characteristic rank of SPACE_SPEC (exact or interval)."""
    space = SpaceId.parse(space_spec)
    result = _ucharrank_for(space)
    payload = {
        "schema": SCHEMA,
        "query": {"command": "ucharrank", "space": str(space)},
        "result": _rank_to_dict(result),
        "provenance": [result.case_label],
        "warnings": [result.advisory] if result.advisory else [],
    }
    _emit(ctx, payload)
    if result.kind == "uncovered":
        sys.exit(3)


@main.command()
@click.argument("space_spec")
@click.option("--max-deg", type=int, default=None, help="Truncate/pad the series at this degree.")
@click.option("--emit-presentation", is_flag=True,
              help="Dump the ring in its canonical serialization instead of a summary.")
@click.pass_context
@_cli_errors
def cohomology(ctx: click.Context, space_spec: str, max_deg: int | None,
               emit_presentation: bool) -> None:
    """Generators, truncation and mod-2 Betti series of SPACE_SPEC."""
    space = SpaceId.parse(space_spec)
    p = presentation(space)
    if emit_presentation:
        result = presentation_to_dict(p)
        result["space"] = str(space)
    else:
        series = poincare(p)
        if max_deg is not None:
            if max_deg < 0:
                raise InvalidParameters("--max-deg must be nonnegative")
            series = [series[d] if d < len(series) else 0 for d in range(max_deg + 1)]
        result = {
            "trunc": presentation_to_dict(p)["trunc"],
            "gens": presentation_to_dict(p)["gens"],
            "series": series,
            "top_degree": top_degree(p),
            "dimension": dimension(space),
        }
    payload = {
        "schema": SCHEMA,
        "query": {"command": "cohomology", "space": str(space), "max_deg": max_deg},
        "result": result,
        "provenance": [],
        "warnings": [],
    }
    _emit(ctx, payload)


@main.command()
@click.argument("space_spec")
@click.option("--mode", type=click.Choice(["generators", "oracle"]), default="generators")
@click.option("--with-bounds", is_flag=True, help="Include catalog bounds and violations.")
@click.pass_context
@_cli_errors
def cuplength(ctx: click.Context, space_spec: str, mode: str, with_bounds: bool) -> None:
    """Exact mod-2 cup length of SPACE_SPEC by brute-force search."""
    space = SpaceId.parse(space_spec)
    p = presentation(space)
    res = cup_length(p, CupMode(mode))
    warnings: list[str] = []
    result: dict = {"value": res.value, "witness": list(res.witness), "caveat": res.caveat}
    if res.caveat:
        warnings.append("an undetermined square was treated as zero during the search")
    if with_bounds:
        report = cup_report(space)
        result["bounds"] = [{"name": name, "value": value} for name, value in report.bounds]
        result["violations"] = list(report.violations)
        for name in report.violations:
            bound = dict(report.bounds)[name]
            warnings.append(
                f"bound {name}={bound} exceeded by exact value {report.exact.value}"
            )
    payload = {
        "schema": SCHEMA,
        "query": {"command": "cuplength", "space": str(space), "mode": mode},
        "result": result,
        "provenance": [],
        "warnings": warnings,
    }
    _emit(ctx, payload)


@main.command()
@click.option("--from", "source_spec", required=True, help="Source G-space spec.")
@click.option("--to", "target_spec", required=True, help="Target G-space spec.")
@click.pass_context
@_cli_errors
def s3map(ctx: click.Context, source_spec: str, target_spec: str) -> None:
    """Feasibility of an equivariant map between unit-quaternion spaces."""
    source = parse_gspace(source_spec)
    target = parse_gspace(target_spec)
    verdict = feasibility(source, target)
    payload = {
        "schema": SCHEMA,
        "query": {"command": "s3map", "from": str(source), "to": str(target)},
        "result": {"status": verdict.status, "detail": verdict.detail},
        "provenance": [verdict.rule],
        "warnings": [],
    }
    _emit(ctx, payload)


def _parse_range(spec: str) -> list[int]:
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


_TABLE_COLUMNS = ("family", "n", "k", "kind", "value", "lo", "hi", "case", "N")


def _table_row(invariant: str, space: SpaceId) -> dict:
    row = {"family": space.family.value, "n": space.n, "k": space.k,
           "kind": "", "value": "", "lo": "", "hi": "", "case": "", "N": ""}
    if invariant == "ucharrank":
        r = _ucharrank_for(space)
        row["kind"] = r.kind
        row["case"] = r.case_label
        if r.value is not None:
            row["value"] = r.value
        if r.lo is not None:
            row["lo"], row["hi"] = r.lo, r.hi
        if r.n_index_used is not None:
            row["N"] = r.n_index_used
    else:
        report = cup_report(space)
        row["kind"] = "exact"
        row["value"] = report.exact.value
    return row


@main.command()
@click.argument("invariant", type=click.Choice(["ucharrank", "cuplength"]))
@click.argument("family", type=click.Choice([f.value for f in Family]))
@click.option("--n", "n_spec", required=True, help="Range of n, e.g. 3..16 or 7.")
@click.option("--k", "k_spec", default=None, help="Range of k (default: all valid).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--jobs", type=int, default=1, help="Parallel workers for the grid.")
@click.pass_context
@_cli_errors
def table(ctx: click.Context, invariant: str, family: str, n_spec: str,
          k_spec: str | None, fmt: str, jobs: int) -> None:
    """One row per valid (n, k) of FAMILY, in deterministic order."""
    n_values = _parse_range(n_spec)
    if any(n > 128 for n in n_values):
        raise InvalidParameters("n ranges are limited to n <= 128")
    k_values = _parse_range(k_spec) if k_spec is not None else None
    spaces, _skipped = catalog([family], n_values, k_values)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(functools.partial(_table_row, invariant), spaces))
    else:
        rows = [_table_row(invariant, s) for s in spaces]
    if fmt == "csv":
        lines = [",".join(_TABLE_COLUMNS)]
        lines += [",".join(str(row[c]) for c in _TABLE_COLUMNS) for row in rows]
        click.echo("\n".join(lines))
    else:
        click.echo(json.dumps(rows, indent=2, sort_keys=True))


# -- verification suites -------------------------------------------------------


def _grid(families: list[Family], max_n: int) -> list[SpaceId]:
    spaces, _ = catalog(families, range(2, max_n + 1))
    return spaces


def _check_palindrome(space: SpaceId) -> str | None:
    p = presentation(space)
    series = poincare(p)
    if top_degree(p) != dimension(space):
        return f"{space}: top degree {top_degree(p)} != dimension {dimension(space)}"
    if series != series[::-1]:
        return f"{space}: series is not palindromic"
    return None


def _check_spectral(space: SpaceId) -> str | None:
    report = serre_verify(space)
    if not report.match:
        return (
            f"{space}: spectral series {report.e_infinity_series} "
            f"!= presentation series {report.presentation_series}"
        )
    return None


def _check_steenrod(space: SpaceId) -> str | None:
    p = presentation(space)
    rng = random.Random(hash((space.n, space.k)) & 0xFFFF)
    for g in p.simple_gens:
        z = p.gen(g.label)
        if steenrod_sq(p, g.degree, z) != mul(p, z, z):
            return f"{space}: top square rule fails on generator {g.label}"
        for i in range(0, g.degree + 2):
            got = steenrod_sq(p, i, z)
            expect_label = g.label + i
            if i == 0:
                ok = got == z
            elif i <= g.degree and binom_parity(g.degree, i) and expect_label in p.labels:
                ok = got == p.gen(expect_label)
            else:
                ok = got.is_zero()
            if not ok:
                return f"{space}: generator rule fails at Sq^{i} on {g.label}"
    codes = list(p.basis_codes())
    for _ in range(4):
        a = p.zero()
        b = p.zero()
        for c in rng.sample(codes, min(3, len(codes))):
            a = a + Element(p, frozenset((c,)))
        for c in rng.sample(codes, min(3, len(codes))):
            b = b + Element(p, frozenset((c,)))
        if steenrod_sq(p, 0, a) != a:
            return f"{space}: Sq^0 is not the identity"
        i = rng.randrange(0, p.top_degree + 2)
        lhs = steenrod_sq(p, i, mul(p, a, b))
        rhs = p.zero()
        for s in range(i + 1):
            rhs = rhs + mul(p, steenrod_sq(p, s, a), steenrod_sq(p, i - s, b))
        if lhs != rhs:
            return f"{space}: Cartan formula fails at Sq^{i}"
    return None


def _check_cup(space: SpaceId) -> tuple[str | None, list[str]]:
    p = presentation(space)
    report = cup_report(space)
    search = report.exact
    oracle = cup_length(p, CupMode.EXHAUSTIVE_ORACLE)
    if search.value != oracle.value:
        return (f"{space}: generator search {search.value} != oracle {oracle.value}", [])
    if p.trunc is not None:
        floor = (p.order - 1) + p.num_gens
        if search.value < floor:
            return (f"{space}: cup length {search.value} below floor {floor}", [])
    warnings = []
    for name in report.violations:
        bound = dict(report.bounds)[name]
        if name == DIM_MINUS_INDEX_BOUND:
            warnings.append(
                f"{space}: bound {name}={bound} < exact {search.value} (expected discrepancy)"
            )
        else:
            return (f"{space}: unexpected violation of bound {name}", warnings)
    return (None, warnings)


def _check_parity() -> str | None:
    import math

    for n in range(65):
        for j in range(n + 1):
            if binom_parity(n, j) != math.comb(n, j) % 2:
                return f"parity mismatch at ({n}, {j})"
        row = parity_row(n)
        if row.ones() != 1 << bin(n).count("1"):
            return f"parity row weight wrong at n={n}"
        if row.bits[0] != 1 or row.bits[n] != 1:
            return f"parity row endpoints wrong at n={n}"
    return None


def _check_equivariant() -> str | None:
    from .equivariant import Sphere, StiefelH, SymplecticGroup

    for n in range(1, 65):
        if index_stiefel_mod2(n, 1) != index_sphere(n):
            return f"sphere/frame index disagreement at n={n}"
    for n in range(1, 33):
        for m in range(1, 33):
            sp = feasibility(SymplecticGroup(n), SymplecticGroup(m))
            if (sp.status == "possible") != (m % n == 0):
                return f"group verdict wrong at ({n}, {m})"
            sph = feasibility(Sphere(n), Sphere(m))
            if (sph.status == "possible") != (n <= m):
                return f"sphere verdict wrong at ({n}, {m})"
    for n in range(1, 17):
        for k in range(1, n + 1):
            if feasibility(StiefelH(n, k), StiefelH(n, k)).status == "impossible":
                return f"identity map ruled out on HV:{n},{k}"
    return None


@main.command()
@click.option("--suite", type=click.Choice(["spectral", "palindrome", "steenrod", "all"]),
              default="all")
@click.option("--max-n", type=int, default=8, help="Largest n in the verification grids.")
@click.option("--jobs", type=int, default=1, help="Parallel workers for grid suites.")
@click.pass_context
@_cli_errors
def verify(ctx: click.Context, suite: str, max_n: int, jobs: int) -> None:
    """Run consistency suites; exit 1 on any unexpected failure.

    Documented discrepancies (the dimension-minus-index cup bound falling
    below the exact cup length) are listed as expected warnings and do not
    fail the run.
    """
    failures: list[str] = []
    warnings: list[str] = []
    checks = 0

    def run_grid(name: str, spaces: list[SpaceId], check) -> None:
        nonlocal checks
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(check, spaces))
        else:
            results = [check(s) for s in spaces]
        bad = [r for r in results if r is not None]
        checks += len(spaces)
        failures.extend(bad)
        click.echo(f"{name}: {len(spaces)} spaces, {len(bad)} failures")

    if suite in ("palindrome", "all"):
        run_grid("palindrome", _grid(list(Family), max_n), _check_palindrome)
    if suite in ("spectral", "all"):
        projective = [Family.RX, Family.FV, Family.CX, Family.HX]
        run_grid("spectral", _grid(projective, max_n), _check_spectral)
    if suite in ("steenrod", "all"):
        run_grid("steenrod", _grid([Family.RV], max_n), _check_steenrod)
    if suite == "all":
        cup_spaces = [
            s for s in _grid(list(Family), max_n)
            if presentation(s).total_dimension <= 1 << 10
        ]
        results = [_check_cup(s) for s in cup_spaces]
        checks += len(cup_spaces)
        for failure, warns in results:
            if failure:
                failures.append(failure)
            warnings.extend(warns)
        click.echo(f"cup: {len(cup_spaces)} spaces, "
                   f"{sum(1 for f, _ in results if f)} failures")
        for name, check in (("parity", _check_parity), ("equivariant", _check_equivariant)):
            checks += 1
            failure = check()
            if failure:
                failures.append(failure)
            click.echo(f"{name}: {'ok' if not failure else 'FAILED'}")

    for w in warnings:
        click.echo(f"expected warning: {w}")
    for f in failures:
        click.echo(f"FAIL: {f}", err=True)
    if failures:
        click.echo(f"verify: FAIL ({checks} checks, {len(failures)} failures)")
        sys.exit(1)
    click.echo(f"verify: PASS ({checks} checks, {len(warnings)} expected warnings)")


if __name__ == "__main__":
    main()
