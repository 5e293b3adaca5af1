"""Command line front end: dimension tables, B matrices, units, spectra, verification.

All numeric JSON output is printed with 12 significant digits and sorted
keys, so a fixed configuration produces identical bytes across runs on one
platform.  CSV output rounds to 6 decimals.  Exit codes: 0 success, 1
verification failure, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass

import click
import numpy as np

from .checks import SUITES, run_suite
from .errors import ResourceLimitError
from .ideal_units import B_matrix, G_sub, G_top, singularity_condition, sub_row_labels, top_row_labels
from .partitions import Partition, dim_irrep, enumerate_partitions, multiplicity
from .spectra import analytic_overlaps, spectrum_table

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    p: int
    d: int
    fmt: str
    tol: float | None


def f12(x) -> float:
    """Round-trip a float through 12 significant digits."""
    return float(f"{float(x):.12g}")


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("[]()")
    if not text:
        return Partition(())
    try:
        return Partition(tuple(int(v) for v in text.replace(" ", "").split(",")))
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def emit_json(doc: dict):
    click.echo(json.dumps(doc, sort_keys=True))


def emit_csv(header: list[str], rows: list[list]):
    click.echo(",".join(header))
    for row in rows:
        cells = [f"{v:.6f}" if isinstance(v, float) else str(v) for v in row]
        click.echo(",".join(cells))


def emit_matrix_market(matrix: np.ndarray, comment: str = ""):
    rows, cols = matrix.shape
    entries = [
        (i + 1, j + 1, matrix[i, j])
        for i in range(rows)
        for j in range(cols)
        if abs(matrix[i, j]) > 1e-14
    ]
    click.echo("%%MatrixMarket matrix coordinate real general")
    if comment:
        click.echo(f"% {comment}")
    click.echo(f"{rows} {cols} {len(entries)}")
    for i, j, v in entries:
        click.echo(f"{i} {j} {f12(v):.12g}")


def guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ResourceLimitError as exc:
            click.echo(f"resource guard: {exc}", err=True)
            sys.exit(3)

    return wrapper


@click.group()
@click.option("--p", type=int, default=3, show_default=True, help="number of registers per wall side")
@click.option("--d", type=int, default=3, show_default=True, help="local dimension")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv", "mm"]),
    default="json",
    show_default=True,
    help="output format (mm dumps operators in Matrix Market coordinate form)",
)
@click.option("--tol", type=float, default=None, help="override verification tolerances")
@click.pass_context
def main(ctx, p, d, fmt, tol):
    """Matrix units of partially transposed permutation operators and their twirled spectra."""
    if p < 1 or d < 1:
        raise click.UsageError("p and d must be positive")
    ctx.obj = RunConfig(p, d, fmt, tol)


@main.command()
@click.pass_obj
@guarded
def dims(cfg: RunConfig):
    """Irrep dimensions and multiplicities for all shapes, with the dimension sum check."""
    rows = []
    total = 0
    for mu in enumerate_partitions(cfg.p):
        dm, m = dim_irrep(mu), multiplicity(mu, cfg.d)
        total += dm * m
        rows.append({"partition": mu.to_json(), "height": mu.height, "dim": dm, "multiplicity": m})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": cfg.p,
        "d": cfg.d,
        "shapes": rows,
        "dimension_sum": total,
        "d_to_the_p": cfg.d**cfg.p,
        "sum_matches": total == cfg.d**cfg.p,
    }
    if cfg.fmt == "csv":
        emit_csv(
            ["partition", "height", "dim", "multiplicity"],
            [["|".join(map(str, r["partition"])), r["height"], r["dim"], r["multiplicity"]] for r in rows],
        )
    else:
        emit_json(doc)


@main.command()
@click.option("--mu", required=True, help="row shape, e.g. 2,1")
@click.option("--nu", default=None, help="column shape; defaults to --mu")
@click.pass_obj
@guarded
def bmatrix(cfg: RunConfig, mu, nu):
    """Coefficient matrix entries, eigenvalues, diagonalizer, and singularity verdict."""
    mu_p = parse_partition(mu)
    nu_p = parse_partition(nu) if nu else mu_p
    if mu_p.total != cfg.p or nu_p.total != cfg.p:
        raise click.UsageError(f"shapes must be partitions of p = {cfg.p}")
    b = B_matrix(mu_p, nu_p, cfg.d)
    det = b.determinant()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": cfg.p,
        "d": cfg.d,
        "mu": mu_p.to_json(),
        "nu": nu_p.to_json(),
        "alphas": [a.to_json() for a in b.alphas],
        "entries": [[str(v) for v in row] for row in b.entries],
        "entries_float": [[f12(v) for v in row] for row in b.entries],
        "eigenvalues": [f12(v) for v in b.eigenvalues],
        "diagonalizer": [[f12(v) for v in row] for row in b.diagonalizer],
        "determinant": str(det),
        "determinant_float": f12(det),
        "nullity": b.nullity,
        "singular": b.singular,
        "vanishing": b.vanishing,
        "integer_condition": singularity_condition(mu_p, cfg.d) if mu_p == nu_p else None,
    }
    if cfg.fmt == "mm":
        emit_matrix_market(b.entry_float(), f"B matrix mu={mu_p} nu={nu_p} d={cfg.d}")
    elif cfg.fmt == "csv":
        emit_csv(
            ["alpha"] + ["|".join(map(str, a.to_json())) for a in b.alphas],
            [
                ["|".join(map(str, a.to_json()))] + [float(v) for v in row]
                for a, row in zip(b.alphas, b.entries)
            ],
        )
    else:
        emit_json(doc)


@main.command()
@click.option("--ideal", type=click.Choice(["top", "sub", "both"]), default="both", show_default=True)
@click.option("--dump", is_flag=True, help="include dense operator entries (json) or emit mm blocks")
@click.pass_obj
@guarded
def units(cfg: RunConfig, ideal, dump):
    """Structured records for every constructed matrix unit at (p, d)."""
    p, d = cfg.p, cfg.d
    records = []
    ops = []
    if ideal in ("top", "both"):
        for (mu, i, j) in top_row_labels(p, d):
            for (nu, ip, jp) in top_row_labels(p, d):
                u = G_top(mu, i, j, nu, ip, jp, p, d)
                records.append(
                    {
                        "ideal": p,
                        "labels": [mu.to_json(), nu.to_json()],
                        "indices": [i, j, ip, jp],
                        "interior": None,
                        "trace": f12(u.trace()),
                    }
                )
                ops.append(u)
    if ideal in ("sub", "both") and p >= 2:
        for (mu, nu, i, j, beta) in sub_row_labels(p, d):
            for (mup, nup, ip, jp, betap) in sub_row_labels(p, d):
                u = G_sub(mu, nu, mup, nup, i, j, ip, jp, beta, betap, p, d)
                records.append(
                    {
                        "ideal": p - 1,
                        "labels": [mu.to_json(), nu.to_json(), mup.to_json(), nup.to_json()],
                        "indices": [i, j, ip, jp],
                        "interior": [beta, betap],
                        "trace": f12(u.trace()),
                    }
                )
                ops.append(u)
    if cfg.fmt == "mm" and dump:
        for rec, u in zip(records, ops):
            emit_matrix_market(u.to_dense(), json.dumps(rec, sort_keys=True))
        return
    if dump:
        for rec, u in zip(records, ops):
            rec["operator"] = [[f12(v) for v in row] for row in u.to_dense()]
    doc = {"schema_version": SCHEMA_VERSION, "p": p, "d": d, "units": records}
    if cfg.fmt == "csv":
        emit_csv(
            ["ideal", "labels", "indices", "interior", "trace"],
            [
                [
                    r["ideal"],
                    ";".join("|".join(map(str, lab)) for lab in r["labels"]),
                    "|".join(map(str, r["indices"])),
                    "|".join(map(str, r["interior"])) if r["interior"] else "",
                    float(r["trace"]),
                ]
                for r in records
            ],
        )
    else:
        emit_json(doc)


def _fig_layout(p: int, d: int, level: int) -> str:
    """Text rendering of the block-diagonal layout of the twirled generator."""
    lines = [f"block layout of the twirled generator, level {level}, p={p}, d={d}"]
    recs = [r for r in analytic_overlaps(p, d) if r.rho_level == level]
    top = [r for r in recs if r.ideal == p]
    sub = [r for r in recs if r.ideal == p - 1]
    lines.append(f"  ideal {p} (rank-one units):")
    for r in top:
        lines.append(
            f"    [{r.mu} x {r.nu}]  {r.unit_count} diagonal units   eigenvalue {r.eigenvalue:.4f} x{r.eigen_multiplicity}"
        )
    if sub:
        lines.append(f"  ideal {p - 1} (units of trace {d * d - 1}):")
        for r in sub:
            lines.append(
                f"    [{r.mu} x {r.nu}] interior mode {r.interior}  {r.unit_count} diagonal units   eigenvalue {r.eigenvalue:.4f} x{r.eigen_multiplicity}"
            )
    lines.append("  off-diagonal blocks between different label pairs vanish")
    return "\n".join(lines)


@main.command()
@click.option("--level", type=int, default=None, help="generator level k of V^(k); defaults to p-1")
@click.option("--method", type=click.Choice(["analytic", "brute"]), default="analytic", show_default=True)
@click.option("--fig7", is_flag=True, help="print the block-diagonal unit layout as text")
@click.pass_obj
@guarded
def spectrum(cfg: RunConfig, level, method, fig7):
    """Nonzero spectrum of the twirled generator rho(level)."""
    p, d = cfg.p, cfg.d
    if level is None:
        level = p - 1
    if not 0 <= level <= p:
        raise click.UsageError(f"level must lie in 0..{p}")
    if method == "analytic" and level not in (p, p - 1):
        raise click.UsageError("analytic method covers level in {p, p-1}; use --method brute")
    table = spectrum_table(p, d, level, method)
    if fig7 and (level == p or (p >= 2 and level == p - 1)):
        click.echo(_fig_layout(p, d, level))
    rows = [
        {
            "value": f12(r.value),
            "multiplicity": r.multiplicity,
            "ideal": r.ideal,
            "mu": r.mu.to_json() if r.mu else None,
            "nu": r.nu.to_json() if r.nu else None,
            "interior": r.interior,
        }
        for r in table.rows
    ]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": p,
        "d": d,
        "level": level,
        "method": method,
        "rows": sorted(rows, key=lambda r: (r["value"], str(r["mu"]))),
        "merged": [[f12(v), m] for v, m in table.merged()],
        "kernel_dim": table.kernel_dim,
        "dimension": table.dim,
    }
    if cfg.fmt == "csv":
        emit_csv(
            ["value", "multiplicity"],
            [[float(v), m] for v, m in table.merged()],
        )
    else:
        emit_json(doc)


@main.command()
@click.option(
    "--suite",
    default="all",
    show_default=True,
    help=f"one of {', '.join(sorted(SUITES))}, or 'all'",
)
@click.pass_obj
@guarded
def verify(cfg: RunConfig, suite):
    """Run a named invariant suite; exit 0 iff every check passes."""
    try:
        results = run_suite(suite, cfg.p, cfg.d, cfg.tol)
    except (KeyError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": cfg.p,
        "d": cfg.d,
        "suite": suite,
        "checks": [
            {**r.to_json(), "residual": f12(r.residual), "tolerance": f12(r.tolerance)}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    emit_json(doc)
    if not doc["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
